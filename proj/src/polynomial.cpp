#include "sgmod/polynomial.hpp"

#include "sgmod/residue_matrix.hpp"

#include <algorithm>
#include <cctype>

namespace sgmod {

std::uint32_t total_degree(const Monomial& m) {
    std::uint32_t d = 0;
    for (auto e : m) d += e;
    return d;
}

bool monomial_divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Monomial monomial_mul(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Monomial monomial_div(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (b[i] > a[i]) throw InvalidInput("monomial_div: not divisible");
        r[i] = a[i] - b[i];
    }
    return r;
}

Monomial monomial_lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

bool DegRevLexGreater::operator()(const Monomial& a, const Monomial& b) const {
    std::uint32_t da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

Polynomial::Polynomial(std::uint64_t p, std::vector<std::string> vars)
    : p_(p), vars_(std::move(vars)) {
    if (!is_prime_u64(p)) throw InvalidInput("Polynomial: characteristic must be prime");
}

Polynomial Polynomial::zero(std::uint64_t p, std::vector<std::string> vars) {
    return Polynomial(p, std::move(vars));
}

Polynomial Polynomial::constant(std::uint64_t p, std::vector<std::string> vars, std::uint64_t c) {
    Polynomial f(p, std::move(vars));
    f.add_term(Monomial(f.vars_.size(), 0), c);
    return f;
}

Polynomial Polynomial::variable(std::uint64_t p, std::vector<std::string> vars, std::size_t idx) {
    Polynomial f(p, std::move(vars));
    if (idx >= f.vars_.size()) throw InvalidInput("Polynomial::variable: index out of range");
    Monomial m(f.vars_.size(), 0);
    m[idx] = 1;
    f.add_term(m, 1);
    return f;
}

const Monomial& Polynomial::leading_monomial() const {
    if (terms_.empty()) throw InvalidInput("leading_monomial of zero polynomial");
    return terms_.begin()->first;
}

std::uint64_t Polynomial::leading_coeff() const {
    if (terms_.empty()) throw InvalidInput("leading_coeff of zero polynomial");
    return terms_.begin()->second;
}

std::uint32_t Polynomial::degree() const {
    return terms_.empty() ? 0 : total_degree(terms_.begin()->first);
}

void Polynomial::add_term(const Monomial& m, std::uint64_t c) {
    if (m.size() != vars_.size()) throw InvalidInput("add_term: exponent arity mismatch");
    c %= p_;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (c) terms_.emplace(m, c);
        return;
    }
    it->second = (it->second + c) % p_;
    if (it->second == 0) terms_.erase(it);
}

void Polynomial::check_compatible(const Polynomial& o) const {
    if (p_ != o.p_ || vars_ != o.vars_)
        throw InvalidInput("polynomial arithmetic across different rings");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    check_compatible(o);
    Polynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    check_compatible(o);
    Polynomial r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, p_ - c);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_compatible(o);
    Polynomial r(p_, vars_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.add_term(monomial_mul(ma, mb), ca * cb % p_);
    return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
    return p_ == o.p_ && vars_ == o.vars_ &&
           std::equal(terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end());
}

Polynomial Polynomial::scaled(std::uint64_t c) const {
    Polynomial r(p_, vars_);
    c %= p_;
    for (const auto& [m, cc] : terms_) r.add_term(m, cc * c % p_);
    return r;
}

Polynomial Polynomial::times_term(const Monomial& m, std::uint64_t c) const {
    Polynomial r(p_, vars_);
    c %= p_;
    for (const auto& [mm, cc] : terms_) r.add_term(monomial_mul(mm, m), cc * c % p_);
    return r;
}

Polynomial Polynomial::monic() const {
    if (terms_.empty()) return *this;
    return scaled(modinv(leading_coeff(), p_));
}

std::string monomial_str(const Monomial& m, const std::vector<std::string>& vars) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!m[i]) continue;
        if (!s.empty()) s += "*";
        s += vars[i];
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
        if (!s.empty()) s += " + ";
        bool trivial_mono = total_degree(m) == 0;
        if (c != 1 || trivial_mono) {
            s += std::to_string(c);
            if (!trivial_mono) s += "*";
        }
        if (!trivial_mono) s += monomial_str(m, vars_);
    }
    return s;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

struct PolyParser {
    const std::string& text;
    std::size_t pos = 0;
    std::uint64_t p;
    const std::vector<std::string>& vars;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    std::uint64_t parse_int() {
        skip_ws();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            throw InvalidInput("polynomial parse: expected integer at offset " +
                               std::to_string(pos));
        std::uint64_t v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            v = v * 10 + static_cast<std::uint64_t>(text[pos++] - '0');
        return v;
    }

    Polynomial parse_factor() {
        skip_ws();
        if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            return Polynomial::constant(p, vars, parse_int() % p);
        std::size_t start = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                     text[pos] == '_'))
            ++pos;
        if (pos == start)
            throw InvalidInput("polynomial parse: expected variable or number at offset " +
                               std::to_string(start));
        std::string name = text.substr(start, pos - start);
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end())
            throw InvalidInput("polynomial parse: unknown variable '" + name + "'");
        Polynomial base =
            Polynomial::variable(p, vars, static_cast<std::size_t>(it - vars.begin()));
        if (eat('^')) {
            std::uint64_t e = parse_int();
            Polynomial r = Polynomial::constant(p, vars, 1);
            for (std::uint64_t i = 0; i < e; ++i) r = r * base;
            return r;
        }
        return base;
    }

    Polynomial parse_term() {
        Polynomial r = parse_factor();
        while (eat('*')) r = r * parse_factor();
        return r;
    }

    Polynomial parse_poly() {
        skip_ws();
        bool neg = eat('-');
        Polynomial r = parse_term();
        if (neg) r = r.scaled(p - 1);
        for (;;) {
            skip_ws();
            if (eat('+')) {
                r = r + parse_term();
            } else if (eat('-')) {
                r = r - parse_term();
            } else {
                break;
            }
        }
        skip_ws();
        if (pos != text.size())
            throw InvalidInput("polynomial parse: trailing input at offset " +
                               std::to_string(pos));
        return r;
    }
};

} // namespace

Polynomial parse_polynomial(const std::string& text, std::uint64_t p,
                            const std::vector<std::string>& vars) {
    PolyParser parser{text, 0, p, vars};
    return parser.parse_poly();
}

} // namespace sgmod
