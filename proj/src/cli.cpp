/**
 * @file cli.cpp
 * @brief Script parser, command execution, report cache and fuzz harness.
 *
 * Reports never contain timing, so a (script, config) pair renders
 * byte-identically on every run, warm or cold cache.  Cache entries store
 * the rendered report plus its exit contribution and are written with a
 * temp-file rename so concurrent runs never see partial entries.
 *
 * @copyright Apache License 2.0
 */
#include "sgmod/cli.hpp"

#include "sgmod/errors.hpp"
#include "sgmod/finite_ring.hpp"
#include "sgmod/gorenstein.hpp"
#include "sgmod/groebner.hpp"
#include "sgmod/homological.hpp"
#include "sgmod/howell.hpp"
#include "sgmod/module_ops.hpp"
#include "sgmod/polynomial.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include <unistd.h>

namespace sgmod {

namespace {

using ojson = nlohmann::ordered_json;

// ---------------------------------------------------------------- tokens --

struct Token {
    enum Kind { Ident, Int, Punct, End } kind;
    std::string text;
    std::uint64_t value = 0;
    std::size_t line = 1;
    std::size_t col = 1;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1;
    std::size_t i = 0;
    const std::string punct = "=;/*()[],+-^";
    while (i < text.size()) {
        char c = text[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++col;
            ++i;
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            t.kind = Token::Ident;
            t.text = text.substr(i, j - i);
            col += j - i;
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            std::uint64_t v = 0;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
                std::uint64_t d = static_cast<std::uint64_t>(text[j] - '0');
                if (v > (UINT64_MAX - d) / 10)
                    throw ScriptError("integer literal overflows", static_cast<int>(line),
                                      static_cast<int>(col));
                v = v * 10 + d;
                ++j;
            }
            t.kind = Token::Int;
            t.text = text.substr(i, j - i);
            t.value = v;
            col += j - i;
            i = j;
        } else if (punct.find(c) != std::string::npos) {
            t.kind = Token::Punct;
            t.text = std::string(1, c);
            ++col;
            ++i;
        } else {
            throw ScriptError(std::string("unexpected character '") + c + "'",
                              static_cast<int>(line), static_cast<int>(col));
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = Token::End;
    end.line = line;
    end.col = col;
    out.push_back(end);
    return out;
}

} // namespace

// ------------------------------------------------------------------- AST --

struct RingExprNode {
    enum Kind { Zmod, Quotient, Product } kind = Zmod;
    std::uint64_t n = 0;                    // Zmod
    std::uint64_t p = 0;                    // Quotient
    std::vector<std::string> vars;          // Quotient
    std::vector<std::string> polys;         // Quotient, raw text
    std::string left, right;                // Product operand names
    std::string display;                    // source text for reports
};

struct ModExprNode {
    enum Kind { Coker, Free, Dual, Sum, Ideal } kind = Coker;
    std::vector<std::vector<std::string>> entries; // Coker, raw text
    std::uint64_t rank = 0;                        // Free
    std::string a, b;                              // Dual / Sum operands
    std::string poly;                              // Ideal, raw text
};

struct CommandNode {
    std::string name;
    std::vector<std::string> args;      // module or ring names
    std::vector<std::uint64_t> nums;    // numeric arguments
    std::optional<RingExprNode> inline_ring; // qf with a literal ring
};

struct DeclNode {
    enum Kind { Ring, Module, Command } kind = Command;
    std::string name;  // bound name for ring/module
    std::string over;  // module: ring name
    RingExprNode ring;
    ModExprNode mod;
    CommandNode cmd;
    std::size_t line = 1, col = 1;
};

struct ScriptAst {
    std::vector<DeclNode> decls;
};

namespace {

// ---------------------------------------------------------------- parser --

class Parser {
  public:
    explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

    ScriptAst parse() {
        ScriptAst ast;
        while (peek().kind != Token::End) ast.decls.push_back(decl());
        return ast;
    }

  private:
    [[noreturn]] void fail(const std::string& msg, const Token& t) const {
        throw ScriptError(msg, static_cast<int>(t.line), static_cast<int>(t.col));
    }
    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
    Token expect_punct(const std::string& p) {
        Token t = next();
        if (t.kind != Token::Punct || t.text != p) fail("expected '" + p + "'", t);
        return t;
    }
    Token expect_ident() {
        Token t = next();
        if (t.kind != Token::Ident) fail("expected a name", t);
        return t;
    }
    Token expect_int() {
        Token t = next();
        if (t.kind != Token::Int) fail("expected an integer", t);
        return t;
    }
    bool at_punct(const std::string& p) const {
        return peek().kind == Token::Punct && peek().text == p;
    }

    void declare(const std::string& name, char kind, const Token& at) {
        if (names_.count(name)) fail("name '" + name + "' is already defined", at);
        names_[name] = kind;
    }
    void require(const std::string& name, char kind, const Token& at) {
        auto it = names_.find(name);
        if (it == names_.end()) fail("undefined name '" + name + "'", at);
        if (kind != '?' && it->second != kind)
            fail(std::string("'") + name + "' is not a " +
                     (kind == 'r' ? "ring" : "module"),
                 at);
    }

    /// Raw expression text: identifiers, integers and + - * ^ glued back
    /// together until one of the stop punctuation marks.
    std::string raw_expr(const std::string& stops) {
        std::string out;
        while (true) {
            const Token& t = peek();
            if (t.kind == Token::Punct && stops.find(t.text[0]) != std::string::npos) break;
            if (t.kind == Token::End) fail("unterminated expression", t);
            if (t.kind == Token::Punct && std::string("+-*^").find(t.text[0]) ==
                                              std::string::npos)
                fail("unexpected '" + t.text + "' in expression", t);
            out += next().text;
        }
        if (out.empty()) fail("empty expression", peek());
        return out;
    }

    RingExprNode ring_expr() {
        RingExprNode e;
        Token head = expect_ident();
        if (head.text == "Z") {
            expect_punct("/");
            Token n = expect_int();
            e.kind = RingExprNode::Zmod;
            e.n = n.value;
            e.display = "Z/" + n.text;
            return e;
        }
        if (head.text == "GF") {
            e.kind = RingExprNode::Quotient;
            expect_punct("(");
            Token p = expect_int();
            e.p = p.value;
            expect_punct(")");
            expect_punct("[");
            e.vars.push_back(expect_ident().text);
            while (at_punct(",")) {
                next();
                e.vars.push_back(expect_ident().text);
            }
            expect_punct("]");
            expect_punct("/");
            expect_punct("(");
            e.polys.push_back(raw_expr(",)"));
            while (at_punct(",")) {
                next();
                e.polys.push_back(raw_expr(",)"));
            }
            expect_punct(")");
            std::string vars, polys;
            for (std::size_t i = 0; i < e.vars.size(); ++i)
                vars += (i ? "," : "") + e.vars[i];
            for (std::size_t i = 0; i < e.polys.size(); ++i)
                polys += (i ? ", " : "") + e.polys[i];
            e.display = "GF(" + p.text + ")[" + vars + "]/(" + polys + ")";
            return e;
        }
        // NAME * NAME
        require(head.text, 'r', head);
        expect_punct("*");
        Token rhs = expect_ident();
        require(rhs.text, 'r', rhs);
        e.kind = RingExprNode::Product;
        e.left = head.text;
        e.right = rhs.text;
        e.display = head.text + " * " + rhs.text;
        return e;
    }

    ModExprNode mod_expr() {
        ModExprNode e;
        Token head = next();
        if (head.kind == Token::Ident && head.text == "coker") {
            e.kind = ModExprNode::Coker;
            expect_punct("[");
            do {
                expect_punct("[");
                std::vector<std::string> row;
                row.push_back(raw_expr(",]"));
                while (at_punct(",")) {
                    next();
                    row.push_back(raw_expr(",]"));
                }
                expect_punct("]");
                if (!e.entries.empty() && row.size() != e.entries[0].size())
                    fail("matrix rows have different lengths", head);
                e.entries.push_back(std::move(row));
            } while (at_punct(",") && (next(), true));
            expect_punct("]");
            return e;
        }
        if (head.kind == Token::Ident && head.text == "free") {
            e.kind = ModExprNode::Free;
            Token n = expect_int();
            if (n.value > 64) fail("free rank larger than 64", n);
            e.rank = n.value;
            return e;
        }
        if (head.kind == Token::Ident && head.text == "dual") {
            e.kind = ModExprNode::Dual;
            Token n = expect_ident();
            require(n.text, 'm', n);
            e.a = n.text;
            return e;
        }
        if (head.kind == Token::Ident && head.text == "ideal") {
            e.kind = ModExprNode::Ideal;
            expect_punct("(");
            e.poly = raw_expr(")");
            expect_punct(")");
            return e;
        }
        if (head.kind == Token::Ident) {
            // NAME (+) NAME
            require(head.text, 'm', head);
            expect_punct("(");
            expect_punct("+");
            expect_punct(")");
            Token rhs = expect_ident();
            require(rhs.text, 'm', rhs);
            e.kind = ModExprNode::Sum;
            e.a = head.text;
            e.b = rhs.text;
            return e;
        }
        fail("expected a module expression", head);
    }

    DeclNode decl() {
        Token head = expect_ident();
        DeclNode d;
        d.line = head.line;
        d.col = head.col;
        if (head.text == "ring") {
            d.kind = DeclNode::Ring;
            Token name = expect_ident();
            expect_punct("=");
            d.ring = ring_expr();
            expect_punct(";");
            declare(name.text, 'r', name);
            d.name = name.text;
            return d;
        }
        if (head.text == "module") {
            d.kind = DeclNode::Module;
            Token name = expect_ident();
            Token over = expect_ident();
            if (over.text != "over") fail("expected 'over'", over);
            Token rname = expect_ident();
            require(rname.text, 'r', rname);
            expect_punct("=");
            d.over = rname.text;
            d.mod = mod_expr();
            expect_punct(";");
            declare(name.text, 'm', name);
            d.name = name.text;
            return d;
        }
        d.kind = DeclNode::Command;
        d.cmd.name = head.text;
        if (head.text == "classify" || head.text == "witness" || head.text == "resolve") {
            Token m = expect_ident();
            require(m.text, 'm', m);
            d.cmd.args.push_back(m.text);
            if (head.text == "resolve") d.cmd.nums.push_back(expect_int().value);
        } else if (head.text == "ext" || head.text == "tor") {
            Token a = expect_ident();
            require(a.text, '?', a);
            Token b = expect_ident();
            require(b.text, '?', b);
            d.cmd.args.push_back(a.text);
            d.cmd.args.push_back(b.text);
            d.cmd.nums.push_back(expect_int().value);
        } else if (head.text == "qf") {
            if (peek().kind == Token::Ident &&
                (peek().text == "GF" || (peek().text == "Z" && peek(1).kind == Token::Punct &&
                                         peek(1).text == "/"))) {
                d.cmd.inline_ring = ring_expr();
            } else {
                Token r = expect_ident();
                require(r.text, 'r', r);
                d.cmd.args.push_back(r.text);
            }
        } else if (head.text == "decompose") {
            Token r = expect_ident();
            require(r.text, 'r', r);
            d.cmd.args.push_back(r.text);
        } else if (head.text == "fuzz") {
            Token n = expect_int();
            if (n.value == 0 || n.value > 10000) fail("fuzz count must be in 1..10000", n);
            d.cmd.nums.push_back(n.value);
        } else {
            fail("unknown command '" + head.text + "'", head);
        }
        expect_punct(";");
        return d;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::map<std::string, char> names_;
};

// ------------------------------------------------------------- evaluator --

struct RingCtx {
    RingPtr ring;
    std::optional<GroebnerBasis> gb;
    std::string display;
};

struct ModuleCtx {
    ModulePtr mod;
    std::string ring_name;
};

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

[[noreturn]] void efail(const std::string& msg, const DeclNode& d) {
    throw ScriptError(msg, static_cast<int>(d.line), static_cast<int>(d.col));
}

RingCtx eval_ring(const RingExprNode& e, const DeclNode& d,
                  const std::map<std::string, RingCtx>& rings) {
    RingCtx out;
    out.display = e.display;
    try {
        switch (e.kind) {
        case RingExprNode::Zmod:
            if (e.n < 2) efail("Z/n needs n >= 2", d);
            out.ring = ring_from_modulus(e.n);
            return out;
        case RingExprNode::Quotient: {
            if (!is_prime(e.p)) efail("GF(p) needs a prime p", d);
            std::vector<Polynomial> gens;
            for (const auto& s : e.polys) gens.push_back(parse_polynomial(s, e.p, e.vars));
            GroebnerBasis gb = buchberger(gens);
            out.ring = build_ring(gb);
            out.gb = std::move(gb);
            return out;
        }
        case RingExprNode::Product: {
            const RingCtx& a = rings.at(e.left);
            const RingCtx& b = rings.at(e.right);
            out.ring = ring_product(a.ring, b.ring);
            return out;
        }
        }
    } catch (const ScriptError&) {
        throw;
    } catch (const InvalidInput& ex) {
        efail(ex.what(), d);
    }
    efail("unreachable ring expression", d);
}

/// Ring coordinates of a raw entry: a polynomial for quotient rings, an
/// integer multiple of the identity otherwise.
Row entry_coords(const RingCtx& rc, const std::string& text, const DeclNode& d) {
    if (rc.gb) {
        Polynomial f = parse_polynomial(text, rc.gb->p, rc.gb->vars);
        Polynomial nf = normal_form(f, *rc.gb);
        Row coords(rc.ring->rank(), 0);
        for (const auto& [mono, c] : nf.terms()) {
            bool found = false;
            for (std::size_t i = 0; i < rc.gb->std_monomials.size(); ++i)
                if (rc.gb->std_monomials[i] == mono) {
                    coords[i] = c;
                    found = true;
                    break;
                }
            if (!found) efail("normal form left a non-basis monomial", d);
        }
        return coords;
    }
    bool neg = !text.empty() && text[0] == '-';
    const std::string digits = neg ? text.substr(1) : text;
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        efail("entries over this ring must be integers, got '" + text + "'", d);
    const std::uint64_t m = rc.ring->characteristic();
    std::uint64_t v = 0;
    for (char c : digits) v = (v * 10 + static_cast<std::uint64_t>(c - '0')) % m;
    if (neg) v = (m - v) % m;
    Row coords = rc.ring->identity();
    for (auto& x : coords) x = (x * v) % m;
    return coords;
}

ModulePtr eval_module(const ModExprNode& e, const DeclNode& d, const RingCtx& rc,
                      const std::map<std::string, ModuleCtx>& modules) {
    try {
        switch (e.kind) {
        case ModExprNode::Coker: {
            std::vector<std::vector<Row>> rels;
            for (const auto& row : e.entries) {
                std::vector<Row> chunks;
                for (const auto& cell : row) chunks.push_back(entry_coords(rc, cell, d));
                rels.push_back(std::move(chunks));
            }
            return FiniteModule::from_presentation(rc.ring, rels, e.entries[0].size());
        }
        case ModExprNode::Free:
            return FiniteModule::free(rc.ring, e.rank);
        case ModExprNode::Dual: {
            const ModuleCtx& a = modules.at(e.a);
            if (a.mod->ring().get() != rc.ring.get())
                efail("dual operand lives over a different ring", d);
            return matlis_dual(a.mod).mod;
        }
        case ModExprNode::Sum: {
            const ModuleCtx& a = modules.at(e.a);
            const ModuleCtx& b = modules.at(e.b);
            if (a.mod->ring().get() != rc.ring.get() || b.mod->ring().get() != rc.ring.get())
                efail("sum operands live over a different ring", d);
            return direct_sum({a.mod, b.mod}).mod;
        }
        case ModExprNode::Ideal: {
            Row c = entry_coords(rc, e.poly, d);
            ModulePtr f1 = FiniteModule::free(rc.ring, 1);
            ModuleMap mult(f1, f1, f1->action_matrix(c));
            return image_of(mult).mod;
        }
        }
    } catch (const ScriptError&) {
        throw;
    } catch (const InvalidInput& ex) {
        efail(ex.what(), d);
    }
    efail("unreachable module expression", d);
}

// ------------------------------------------------------------ serializers --

ojson mat_json(const ResidueMatrix& a) {
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        ojson row = ojson::array();
        for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(a.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

ojson order_json(const OrderCount& o) {
    if (o.fits_u64()) return o.as_u64();
    return o.str();
}

ojson module_json(const ModulePtr& m) {
    ojson j;
    j["generators"] = m->generators();
    j["relations"] = mat_json(m->relations());
    return j;
}

std::string status_str(Verdict v) {
    switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "unknown";
    }
}

ojson sg_witness_json(const SGWitness& w) {
    ojson j;
    j["flavor"] = to_string(w.flavor);
    j["modulus"] = w.m->mod();
    j["module"] = module_json(w.m);
    j["middle"] = module_json(w.middle);
    j["injection"] = mat_json(w.inj.matrix());
    j["surjection"] = mat_json(w.proj.matrix());
    j["middle_reason"] = w.middle_reason;
    j["vanishing"] = w.vanishing;
    if (w.complex) {
        ojson cx;
        cx["period"] = w.complex->period();
        ojson diffs = ojson::array();
        for (const auto& dd : w.complex->differentials) diffs.push_back(mat_json(dd.matrix()));
        cx["differentials"] = std::move(diffs);
        j["complex"] = std::move(cx);
    }
    return j;
}

ojson g_witness_json(const GWitness& w) {
    ojson j;
    j["modulus"] = w.m->mod();
    j["period"] = w.complex.period();
    ojson mods = ojson::array();
    for (const auto& p : w.complex.modules) mods.push_back(module_json(p));
    j["modules"] = std::move(mods);
    ojson diffs = ojson::array();
    for (const auto& dd : w.complex.differentials) diffs.push_back(mat_json(dd.matrix()));
    j["differentials"] = std::move(diffs);
    j["iso"] = mat_json(w.iso.matrix());
    j["image"] = module_json(w.iso.target());
    return j;
}

bool caps_reason(const std::string& reason) {
    return reason.rfind("cap exceeded", 0) == 0;
}

template <typename Cert>
ojson verdict_json(const Cert& c, const ojson* witness) {
    ojson j;
    j["status"] = status_str(c.verdict);
    if (c.verdict == Verdict::Yes) {
        if (witness)
            j["witness"] = *witness;
        else
            j["witness"] = c.reason;
    } else if (c.verdict == Verdict::No) {
        j["disproof"] = c.reason;
    } else {
        j["reason"] = c.reason;
    }
    return j;
}

// ------------------------------------------------------------------ cache --

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string caps_key(const Caps& c) {
    std::ostringstream os;
    os << c.ring_elements << "," << c.ext_classes << "," << c.hom_enumeration << ","
       << c.depth << "," << c.seed;
    return os.str();
}

std::string module_key(const ModulePtr& m) {
    std::ostringstream os;
    os << m->ring()->canonical_key() << "|t" << m->generators() << "|";
    const ResidueMatrix& u = m->relations();
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t j = 0; j < u.cols(); ++j) os << u.at(i, j) << ",";
    return os.str();
}

struct CacheEntry {
    int exit_code;
    std::string text;
};

std::optional<CacheEntry> cache_load(const std::string& dir, std::uint64_t key) {
    if (dir.empty()) return std::nullopt;
    std::ostringstream name;
    name << dir << "/sg" << std::hex << key << ".rpt";
    std::ifstream in(name.str(), std::ios::binary);
    if (!in) return std::nullopt;
    std::string header;
    if (!std::getline(in, header) || header.rfind("exit ", 0) != 0) return std::nullopt;
    CacheEntry e;
    e.exit_code = std::stoi(header.substr(5));
    std::ostringstream body;
    body << in.rdbuf();
    e.text = body.str();
    return e;
}

void cache_store(const std::string& dir, std::uint64_t key, const CacheEntry& e) {
    if (dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) return;
    std::ostringstream name;
    name << dir << "/sg" << std::hex << key << ".rpt";
    const std::string tmp = name.str() + ".tmp" + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) return;
        out << "exit " << e.exit_code << "\n" << e.text;
    }
    std::rename(tmp.c_str(), name.str().c_str());
}

// ------------------------------------------------------------------- fuzz --

struct CatalogEntry {
    std::string text;
    RingPtr ring;
};

std::vector<CatalogEntry> make_catalog() {
    auto quot = [](std::uint64_t p, const std::vector<std::string>& vars,
                   const std::vector<std::string>& gens) {
        std::vector<Polynomial> ps;
        for (const auto& s : gens) ps.push_back(parse_polynomial(s, p, vars));
        return build_ring(buchberger(ps));
    };
    std::vector<CatalogEntry> cat;
    cat.push_back({"Z/4", ring_from_modulus(4)});
    cat.push_back({"Z/8", ring_from_modulus(8)});
    cat.push_back({"GF(2)[x]/(x^2)", quot(2, {"x"}, {"x^2"})});
    cat.push_back({"GF(2)[x]/(x^4)", quot(2, {"x"}, {"x^4"})});
    cat.push_back({"GF(2)[x,y]/(x^2, x*y, y^2)", quot(2, {"x", "y"}, {"x^2", "x*y", "y^2"})});
    return cat;
}

Row label_row(const RingPtr& r, const std::string& label) {
    Row out(r->rank(), 0);
    for (std::size_t i = 0; i < r->rank(); ++i)
        if (r->labels()[i] == label) {
            out[i] = 1;
            return out;
        }
    throw InvalidInput("no basis label " + label);
}

std::vector<ModulePtr> corpus_over(const std::vector<CatalogEntry>& cat, std::uint64_t seed,
                                   std::size_t count) {
    std::vector<ModulePtr> out;
    // fixed fixtures first: the residue-type cyclic over every catalog ring
    for (const auto& c : cat) {
        if (out.size() == count) return out;
        if (c.ring->rank() == 1) {
            std::uint64_t m = c.ring->characteristic();
            std::uint64_t q = m;
            for (std::uint64_t d = 2; d * d <= m; ++d)
                if (m % d == 0) {
                    q = d;
                    break;
                }
            out.push_back(FiniteModule::from_presentation(c.ring, {{Row{q}}}, 1));
        } else {
            std::vector<std::vector<Row>> rels;
            for (const auto& lab : c.ring->labels())
                if (lab != "1" && lab.find('^') == std::string::npos &&
                    lab.find('*') == std::string::npos)
                    rels.push_back({label_row(c.ring, lab)});
            out.push_back(FiniteModule::from_presentation(c.ring, rels, 1));
        }
    }
    std::mt19937_64 rng(seed);
    while (out.size() < count) {
        const CatalogEntry& c = cat[out.size() % cat.size()];
        const std::size_t k = c.ring->rank();
        const std::uint64_t m = c.ring->characteristic();
        const std::size_t t = 1 + static_cast<std::size_t>(rng() % 2);
        const std::size_t nrows = 1 + static_cast<std::size_t>(rng() % 3);
        std::vector<std::vector<Row>> rels;
        for (std::size_t i = 0; i < nrows; ++i) {
            std::vector<Row> chunks;
            for (std::size_t g = 0; g < t; ++g) {
                Row chunk(k, 0);
                for (std::size_t j = 0; j < k; ++j) chunk[j] = rng() % m;
                chunks.push_back(std::move(chunk));
            }
            rels.push_back(std::move(chunks));
        }
        out.push_back(FiniteModule::from_presentation(c.ring, rels, t));
    }
    return out;
}

std::string entry_text(const RingPtr& r, const Row& coords) {
    std::string out;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (coords[i] == 0) continue;
        std::string term;
        const std::string& lab = r->labels()[i];
        if (lab == "1")
            term = std::to_string(coords[i]);
        else if (coords[i] == 1)
            term = lab;
        else
            term = std::to_string(coords[i]) + "*" + lab;
        out += (out.empty() ? "" : "+") + term;
    }
    return out.empty() ? "0" : out;
}

std::string module_decl_text(const std::string& name, const std::string& ring_text,
                             const ModulePtr& m) {
    (void)ring_text;
    std::ostringstream os;
    os << "module " << name << " over R = ";
    auto rows = m->presentation_rows();
    if (rows.empty()) {
        os << "free " << m->generators() << ";";
        return os.str();
    }
    os << "coker [";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t g = 0; g < rows[i].size(); ++g)
            os << (g ? ", " : "") << entry_text(m->ring(), rows[i][g]);
        os << "]";
    }
    os << "];";
    return os.str();
}

std::string repro_script(const std::string& ring_text,
                         const std::vector<std::pair<std::string, ModulePtr>>& mods,
                         const std::string& command) {
    std::ostringstream os;
    os << "ring R = " << ring_text << ";\n";
    for (const auto& [n, m] : mods) os << module_decl_text(n, ring_text, m) << "\n";
    os << command << "\n";
    return os.str();
}

std::string catalog_text_for(const std::vector<CatalogEntry>& cat, const RingPtr& r) {
    for (const auto& c : cat)
        if (c.ring->characteristic() == r->characteristic() && c.ring->rank() == r->rank())
            return c.text;
    return "Z/" + std::to_string(r->characteristic());
}

ojson run_fuzz(std::uint64_t seed, std::size_t count, const Caps& caps, bool& violation) {
    std::vector<CatalogEntry> cat = make_catalog();
    std::vector<ModulePtr> corpus = corpus_over(cat, seed, count);

    struct Tally {
        std::uint64_t checked = 0;
        std::uint64_t failed = 0;
    };
    Tally duality, agreement, involution, symmetry, closure, qf_eq;
    std::uint64_t unknown_pairs = 0;
    std::uint64_t census_proj = 0, census_sg = 0, census_sg_no = 0, census_g_not_sg = 0,
                  census_unknown = 0;
    ojson failures = ojson::array();
    std::map<const FiniteRing*, ModulePtr> partner;
    std::map<const FiniteRing*, std::pair<Verdict, bool>> partner_sgp;

    auto record_failure = [&](const std::string& check, std::size_t idx,
                              const std::string& script) {
        ojson f;
        f["check"] = check;
        f["module"] = idx;
        f["script"] = script;
        failures.push_back(std::move(f));
    };

    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const ModulePtr& m = corpus[i];
        const std::string ring_text = catalog_text_for(cat, m->ring());

        // duality identity
        ++duality.checked;
        DualityReport rep = duality_check(m, caps);
        if (!rep.agrees) {
            ++duality.failed;
            record_failure("duality", i,
                           repro_script(ring_text, {{"M", m}}, "classify M;"));
        }

        // SG projective vs SG flat agreement
        ++agreement.checked;
        SGCertificate sgp = is_sg_projective_fg(m, caps);
        SGCertificate sgf = is_sg_flat_fg(m, caps);
        if (sgp.verdict == Verdict::Unknown || sgf.verdict == Verdict::Unknown) {
            ++unknown_pairs;
        } else if (sgp.verdict != sgf.verdict) {
            ++agreement.failed;
            record_failure("sg_agreement", i,
                           repro_script(ring_text, {{"M", m}}, "classify M;"));
        }

        // dual involution
        ++involution.checked;
        DualModule dm = matlis_dual(m);
        DualModule ddm = matlis_dual(dm.mod);
        bool inv_ok = dm.mod->order() == m->order();
        if (inv_ok) inv_ok = is_bijective_map(bidual_map(m, dm, ddm));
        if (!inv_ok) {
            ++involution.failed;
            record_failure("dual_involution", i,
                           repro_script(ring_text, {{"M", m}}, "classify M;"));
        }

        // QF equivalence: projective and injective verdicts agree over QF rings
        const bool ring_qf = m->ring()->is_quasi_frobenius(caps.ring_elements);
        if (ring_qf) {
            ++qf_eq.checked;
            Verdict pv = is_projective(m, caps).verdict;
            Verdict iv = is_injective(m, caps).verdict;
            if (pv != iv) {
                ++qf_eq.failed;
                record_failure("qf_equivalence", i,
                               repro_script(ring_text, {{"M", m}}, "classify M;"));
            }
        }

        // pairwise checks against the previous module over the same ring
        auto it = partner.find(m->ring().get());
        if (it != partner.end()) {
            const ModulePtr& n = it->second;
            ++symmetry.checked;
            OrderCount ab = tor(m, n, 1, caps)->order();
            OrderCount ba = tor(n, m, 1, caps)->order();
            if (!(ab == ba)) {
                ++symmetry.failed;
                record_failure("tor_symmetry", i,
                               repro_script(ring_text, {{"A", m}, {"B", n}},
                                            "tor A B 1;\ntor B A 1;"));
            }
            auto ps = partner_sgp[m->ring().get()];
            if (sgp.verdict == Verdict::Yes && ps.second && ps.first == Verdict::Yes) {
                ++closure.checked;
                ModulePtr s = direct_sum({m, n}).mod;
                if (is_sg_projective_fg(s, caps).verdict != Verdict::Yes) {
                    ++closure.failed;
                    record_failure("sum_closure", i,
                                   repro_script(ring_text, {{"A", m}, {"B", n}},
                                                "classify A;\nclassify B;"));
                }
            }
        }
        partner[m->ring().get()] = m;
        partner_sgp[m->ring().get()] = {sgp.verdict, true};

        // hierarchy census
        Verdict pv = is_projective(m, caps).verdict;
        if (pv == Verdict::Yes) ++census_proj;
        if (sgp.verdict == Verdict::Yes) ++census_sg;
        if (sgp.verdict == Verdict::No) {
            ++census_sg_no;
            GCertificate g = certify_g_projective(m, 2, 2, caps);
            if (g.verdict == Verdict::Yes) ++census_g_not_sg;
        }
        if (sgp.verdict == Verdict::Unknown) ++census_unknown;
    }

    // the regular module over the non-QF catalog ring separates the classes
    ++qf_eq.checked;
    ModulePtr reg = FiniteModule::free(cat[4].ring, 1);
    Verdict reg_p = is_projective(reg, caps).verdict;
    Verdict reg_i = is_injective(reg, caps).verdict;
    if (!(reg_p == Verdict::Yes && reg_i == Verdict::No)) {
        ++qf_eq.failed;
        record_failure("qf_equivalence", corpus.size(),
                       repro_script(cat[4].text, {{"M", reg}}, "classify M;"));
    }

    auto tally_json = [](const Tally& t) {
        ojson j;
        j["checked"] = t.checked;
        j["failed"] = t.failed;
        return j;
    };
    ojson j;
    j["command"] = "fuzz";
    j["count"] = count;
    j["seed"] = seed;
    ojson checks;
    checks["duality"] = tally_json(duality);
    ojson agr = tally_json(agreement);
    agr["unknown_pairs"] = unknown_pairs;
    checks["sg_agreement"] = std::move(agr);
    checks["dual_involution"] = tally_json(involution);
    checks["tor_symmetry"] = tally_json(symmetry);
    checks["sum_closure"] = tally_json(closure);
    checks["qf_equivalence"] = tally_json(qf_eq);
    j["checks"] = std::move(checks);
    ojson census;
    census["modules"] = corpus.size();
    census["projective"] = census_proj;
    census["sg_projective"] = census_sg;
    census["sg_projective_no"] = census_sg_no;
    census["g_certified_not_sg"] = census_g_not_sg;
    census["unknown"] = census_unknown;
    j["census"] = std::move(census);
    ojson sep;
    sep["ring"] = cat[4].text;
    sep["projective"] = status_str(reg_p);
    sep["injective"] = status_str(reg_i);
    j["qf_separator"] = std::move(sep);
    j["failures"] = failures;
    violation = !failures.empty();
    return j;
}

// --------------------------------------------------------------- commands --

struct Session {
    std::map<std::string, RingCtx> rings;
    std::map<std::string, ModuleCtx> modules;
    const RunConfig* config = nullptr;
};

ModulePtr command_module(const Session& s, const std::string& name) {
    auto it = s.modules.find(name);
    if (it != s.modules.end()) return it->second.mod;
    return FiniteModule::free(s.rings.at(name).ring, 1);
}

std::string module_ring_name(const Session& s, const std::string& name) {
    auto it = s.modules.find(name);
    if (it != s.modules.end()) return it->second.ring_name;
    return name;
}

ojson cmd_classify(const Session& s, const CommandNode& c, bool& unknown, bool& violation) {
    const ModulePtr m = command_module(s, c.args[0]);
    Classification cl = classify(m, s.config->caps);
    ojson j;
    j["command"] = "classify";
    j["module"] = c.args[0];
    j["ring"] = module_ring_name(s, c.args[0]);
    ojson verdicts;
    verdicts["projective"] = verdict_json(cl.projective, nullptr);
    verdicts["injective"] = verdict_json(cl.injective, nullptr);
    verdicts["flat"] = verdict_json(cl.flat, nullptr);
    verdicts["free"] = verdict_json(cl.free_module, nullptr);
    auto sg = [&](const SGCertificate& cert) {
        if (cert.verdict == Verdict::Yes && cert.witness) {
            ojson w = sg_witness_json(*cert.witness);
            ojson v = verdict_json(cert, &w);
            v["reason"] = cert.reason;
            return v;
        }
        return verdict_json(cert, nullptr);
    };
    verdicts["sg_projective"] = sg(cl.sg_projective);
    verdicts["sg_injective"] = sg(cl.sg_injective);
    verdicts["sg_flat"] = sg(cl.sg_flat);
    if (cl.g_projective_certified.verdict == Verdict::Yes && cl.g_projective_certified.witness) {
        ojson w = g_witness_json(*cl.g_projective_certified.witness);
        ojson v = verdict_json(cl.g_projective_certified, &w);
        v["reason"] = cl.g_projective_certified.reason;
        verdicts["g_projective_certified"] = std::move(v);
    } else {
        verdicts["g_projective_certified"] = verdict_json(cl.g_projective_certified, nullptr);
    }
    ojson caps_hit = ojson::array();
    auto note_caps = [&](const char* name, Verdict v, const std::string& reason) {
        if (v == Verdict::Unknown) {
            unknown = true;
            if (caps_reason(reason)) caps_hit.push_back(name);
        }
    };
    note_caps("projective", cl.projective.verdict, cl.projective.reason);
    note_caps("injective", cl.injective.verdict, cl.injective.reason);
    note_caps("flat", cl.flat.verdict, cl.flat.reason);
    note_caps("free", cl.free_module.verdict, cl.free_module.reason);
    note_caps("sg_projective", cl.sg_projective.verdict, cl.sg_projective.reason);
    note_caps("sg_injective", cl.sg_injective.verdict, cl.sg_injective.reason);
    note_caps("sg_flat", cl.sg_flat.verdict, cl.sg_flat.reason);
    note_caps("g_projective_certified", cl.g_projective_certified.verdict,
              cl.g_projective_certified.reason);
    j["verdicts"] = std::move(verdicts);
    j["caps_hit"] = std::move(caps_hit);
    if (!cl.violations.empty()) {
        violation = true;
        j["violations"] = cl.violations;
    }
    return j;
}

ojson cmd_resolve(const Session& s, const CommandNode& c) {
    const ModulePtr m = command_module(s, c.args[0]);
    ModulePtr syz = syzygy(m, c.nums[0], s.config->caps);
    ojson j;
    j["command"] = "resolve";
    j["module"] = c.args[0];
    j["degree"] = c.nums[0];
    j["order"] = order_json(syz->order());
    j["generators"] = syz->generators();
    j["vanishes"] = syz->is_zero();
    return j;
}

ojson cmd_ext_tor(const Session& s, const CommandNode& c, bool is_ext) {
    const ModulePtr a = command_module(s, c.args[0]);
    const ModulePtr b = command_module(s, c.args[1]);
    const std::uint64_t i = c.nums[0];
    ModulePtr r;
    if (i == 0)
        r = is_ext ? hom_module(a, b).mod : tensor(a, b).mod;
    else
        r = is_ext ? ext(a, b, i, s.config->caps) : tor(a, b, i, s.config->caps);
    ojson j;
    j["command"] = is_ext ? "ext" : "tor";
    j["module"] = c.args[0];
    j["with"] = c.args[1];
    j["degree"] = i;
    j["order"] = order_json(r->order());
    j["generators"] = r->generators();
    j["vanishes"] = r->is_zero();
    return j;
}

ojson cmd_witness(const Session& s, const CommandNode& c, bool& unknown) {
    const ModulePtr m = command_module(s, c.args[0]);
    SGCertificate cert = is_sg_projective_fg(m, s.config->caps);
    ojson j;
    j["command"] = "witness";
    j["module"] = c.args[0];
    j["ring"] = module_ring_name(s, c.args[0]);
    j["status"] = status_str(cert.verdict);
    j["reason"] = cert.reason;
    if (cert.verdict == Verdict::Unknown) unknown = true;
    if (cert.witness) j["witness"] = sg_witness_json(*cert.witness);
    return j;
}

ojson cmd_qf(const Session& s, const DeclNode& d) {
    RingCtx rc;
    std::string label;
    if (d.cmd.inline_ring) {
        rc = eval_ring(*d.cmd.inline_ring, d, s.rings);
        label = rc.display;
    } else {
        rc = s.rings.at(d.cmd.args[0]);
        label = d.cmd.args[0];
    }
    ojson j;
    j["command"] = "qf";
    j["ring"] = label;
    j["quasi_frobenius"] = rc.ring->is_quasi_frobenius(s.config->caps.ring_elements);
    return j;
}

ojson cmd_decompose(const Session& s, const CommandNode& c) {
    const RingCtx& rc = s.rings.at(c.args[0]);
    const RingDecomposition& dec = rc.ring->local_decomposition(s.config->caps.ring_elements);
    ojson j;
    j["command"] = "decompose";
    j["ring"] = c.args[0];
    j["characteristic"] = rc.ring->characteristic();
    j["rank"] = rc.ring->rank();
    ojson factors = ojson::array();
    for (const auto& f : dec.factors) {
        ojson fj;
        fj["rank"] = f.ring->rank();
        fj["order"] = order_json(f.ring->order());
        fj["characteristic"] = f.ring->characteristic();
        factors.push_back(std::move(fj));
    }
    j["factors"] = std::move(factors);
    return j;
}

// ---------------------------------------------------------------- render --

void flatten_text(const ojson& j, const std::string& prefix, std::vector<std::string>& lines) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
            if ((it.key() == "witness" || it.key() == "complex") && it.value().is_object()) {
                lines.push_back(key + ": (structured, use json format)");
                continue;
            }
            flatten_text(it.value(), key, lines);
        }
        return;
    }
    if (j.is_array()) {
        bool scalars = std::all_of(j.begin(), j.end(),
                                   [](const ojson& v) { return !v.is_structured(); });
        if (scalars) {
            lines.push_back(prefix + ": " + j.dump());
            return;
        }
        std::size_t i = 0;
        for (const auto& v : j) {
            flatten_text(v, prefix + "[" + std::to_string(i) + "]", lines);
            ++i;
        }
        return;
    }
    if (j.is_string())
        lines.push_back(prefix + ": " + j.get<std::string>());
    else
        lines.push_back(prefix + ": " + j.dump());
}

std::string render_text(const ojson& j) {
    std::vector<std::string> lines;
    if (j.contains("verdicts")) {
        lines.push_back("command: " + j["command"].get<std::string>());
        lines.push_back("module: " + j["module"].get<std::string>());
        lines.push_back("ring: " + j["ring"].get<std::string>());
        for (auto it = j["verdicts"].begin(); it != j["verdicts"].end(); ++it) {
            std::string line = it.key() + ": " + (*it)["status"].get<std::string>();
            const ojson& v = it.value();
            if (v.contains("disproof"))
                line += " (" + v["disproof"].get<std::string>() + ")";
            else if (v.contains("reason"))
                line += " (" + v["reason"].get<std::string>() + ")";
            else if (v.contains("witness") && v["witness"].is_string())
                line += " (" + v["witness"].get<std::string>() + ")";
            lines.push_back(std::move(line));
        }
        if (j.contains("caps_hit") && !j["caps_hit"].empty())
            lines.push_back("caps_hit: " + j["caps_hit"].dump());
        if (j.contains("violations")) lines.push_back("violations: " + j["violations"].dump());
    } else {
        flatten_text(j, "", lines);
    }
    std::string out;
    for (const auto& l : lines) out += l + "\n";
    return out;
}

} // namespace

// ------------------------------------------------------------ public API --

SessionScript parse_script(const std::string& text) {
    Parser p(text);
    auto ast = std::make_shared<ScriptAst>(p.parse());
    SessionScript s;
    for (const auto& d : ast->decls) {
        SessionScript::DeclInfo info;
        info.kind = d.kind == DeclNode::Ring     ? "ring"
                    : d.kind == DeclNode::Module ? "module"
                                                 : d.cmd.name;
        info.name = d.name;
        info.line = d.line;
        info.col = d.col;
        s.decls.push_back(std::move(info));
    }
    s.ast = std::move(ast);
    return s;
}

ScriptResult run_script(const SessionScript& script, const RunConfig& config) {
    Session session;
    session.config = &config;
    std::vector<std::string> blocks;
    int exit_code = 0;

    for (const auto& d : script.ast->decls) {
        if (d.kind == DeclNode::Ring) {
            session.rings[d.name] = eval_ring(d.ring, d, session.rings);
            continue;
        }
        if (d.kind == DeclNode::Module) {
            const RingCtx& rc = session.rings.at(d.over);
            session.modules[d.name] = ModuleCtx{eval_module(d.mod, d, rc, session.modules),
                                                d.over};
            continue;
        }

        // commands: consult the cache, else execute
        const CommandNode& c = d.cmd;
        std::string key_str = "v1|" + c.name + "|" + caps_key(config.caps) + "|" +
                              (config.json ? "j" : "t") + "|";
        for (auto n : c.nums) key_str += std::to_string(n) + "|";
        bool cacheable = c.name != "fuzz";
        if (cacheable) {
            try {
                if (c.name == "qf" || c.name == "decompose") {
                    if (c.inline_ring) {
                        RingCtx rc = eval_ring(*c.inline_ring, d, session.rings);
                        key_str += rc.ring->canonical_key();
                    } else {
                        key_str += session.rings.at(c.args[0]).ring->canonical_key();
                    }
                } else {
                    for (const auto& a : c.args) key_str += module_key(command_module(session, a));
                }
            } catch (const ScriptError&) {
                throw;
            }
        }
        const std::uint64_t key = fnv1a(key_str);
        if (cacheable) {
            if (auto hit = cache_load(config.cache_dir, key)) {
                blocks.push_back(hit->text);
                exit_code = std::max(exit_code, hit->exit_code);
                continue;
            }
        }

        bool unknown = false;
        bool violation = false;
        ojson report;
        try {
            if (c.name == "classify")
                report = cmd_classify(session, c, unknown, violation);
            else if (c.name == "resolve")
                report = cmd_resolve(session, c);
            else if (c.name == "ext" || c.name == "tor")
                report = cmd_ext_tor(session, c, c.name == "ext");
            else if (c.name == "witness")
                report = cmd_witness(session, c, unknown);
            else if (c.name == "qf")
                report = cmd_qf(session, d);
            else if (c.name == "decompose")
                report = cmd_decompose(session, c);
            else if (c.name == "fuzz")
                report = run_fuzz(config.caps.seed, c.nums[0], config.caps, violation);
        } catch (const CapExceeded& e) {
            report = ojson();
            report["command"] = c.name;
            report["status"] = "unknown";
            report["reason"] = std::string("cap exceeded: ") + e.what();
            unknown = true;
        } catch (const ScriptError&) {
            throw;
        } catch (const InvalidInput& e) {
            efail(e.what(), d);
        }

        int code = violation ? 3 : (unknown ? 2 : 0);
        std::string text = config.json ? report.dump(2) : render_text(report);
        if (cacheable) cache_store(config.cache_dir, key, CacheEntry{code, text});
        blocks.push_back(std::move(text));
        exit_code = std::max(exit_code, code);
    }

    ScriptResult out;
    out.exit_code = exit_code;
    if (config.json) {
        out.output = "[\n";
        for (std::size_t i = 0; i < blocks.size(); ++i)
            out.output += blocks[i] + (i + 1 < blocks.size() ? ",\n" : "\n");
        out.output += "]\n";
    } else {
        for (std::size_t i = 0; i < blocks.size(); ++i)
            out.output += blocks[i] + (i + 1 < blocks.size() ? "\n" : "");
    }
    return out;
}

ScriptResult run_script(const std::string& text, const RunConfig& config) {
    return run_script(parse_script(text), config);
}

std::vector<ModulePtr> fuzz_corpus(std::uint64_t seed, std::size_t count) {
    return corpus_over(make_catalog(), seed, count);
}

} // namespace sgmod
