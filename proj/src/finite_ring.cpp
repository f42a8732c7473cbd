/**
 * @file finite_ring.cpp
 * @copyright Apache License 2.0
 */
#include "sgmod/finite_ring.hpp"

#include "sgmod/errors.hpp"
#include "sgmod/groebner.hpp"
#include "sgmod/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace sgmod {

namespace {

void bump_mixed_radix(Row& digits, std::uint64_t radix) {
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (++digits[i] < radix) return;
        digits[i] = 0;
    }
}

} // namespace

std::uint64_t row_additive_order(const Row& x, std::uint64_t m) {
    std::uint64_t g = m;
    for (std::uint64_t v : x) g = gcd_u64(g, v % m);
    return m / g;
}

FiniteRing::FiniteRing(std::uint64_t m, std::vector<std::string> labels,
                       std::vector<Row> structure, Row identity)
    : m_(m), k_(labels.size()), labels_(std::move(labels)), struct_(std::move(structure)),
      identity_(std::move(identity)) {}

RingPtr FiniteRing::create(std::uint64_t characteristic, std::vector<std::string> labels,
                           std::vector<Row> structure, Row identity) {
    if (characteristic < 2 || characteristic > kMaxModulus)
        throw InvalidInput("ring characteristic must be in [2, 2^31]");
    if (labels.empty()) throw InvalidInput("ring needs at least one basis element");
    const std::size_t k = labels.size();
    if (structure.size() != k * k) throw InvalidInput("structure constant table has wrong size");
    if (identity.size() != k) throw InvalidInput("identity row has wrong length");
    for (auto& row : structure) {
        if (row.size() != k) throw InvalidInput("structure constant row has wrong length");
        for (auto& v : row) v %= characteristic;
    }
    for (auto& v : identity) v %= characteristic;
    RingPtr r(new FiniteRing(characteristic, std::move(labels), std::move(structure),
                             std::move(identity)));
    r->validate();
    return r;
}

Row FiniteRing::mul(const Row& x, const Row& y) const {
    Row out(k_, 0);
    for (std::size_t i = 0; i < k_; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < k_; ++j) {
            if (y[j] == 0) continue;
            const std::uint64_t c = mulm(x[i], y[j], m_);
            const Row& s = struct_[i * k_ + j];
            for (std::size_t t = 0; t < k_; ++t) out[t] = addm(out[t], mulm(c, s[t], m_), m_);
        }
    }
    return out;
}

Row FiniteRing::pow(const Row& x, std::uint64_t e) const {
    Row acc = identity_;
    Row base = x;
    while (e > 0) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

ResidueMatrix FiniteRing::right_mult_matrix(const Row& y) const {
    ResidueMatrix rm(m_, k_, k_);
    for (std::size_t i = 0; i < k_; ++i) {
        Row bi(k_, 0);
        bi[i] = 1;
        rm.set_row(i, mul(bi, y));
    }
    return rm;
}

bool FiniteRing::is_nilpotent(const Row& x) const {
    // x is nilpotent iff x^(2^t) = 0 once 2^t >= |R|: the nilpotency index of
    // a nilpotent element is at most |R|, and repeated squaring covers it.
    std::uint64_t bits = 0;
    for (std::uint64_t v = m_ - 1; v > 0; v >>= 1) ++bits;
    const std::uint64_t steps = bits * k_;
    Row s = x;
    for (auto& v : s) v %= m_;
    auto is_zero = [](const Row& r) {
        return std::all_of(r.begin(), r.end(), [](std::uint64_t v) { return v == 0; });
    };
    for (std::uint64_t t = 0; t < steps; ++t) {
        if (is_zero(s)) return true;
        s = mul(s, s);
    }
    return is_zero(s);
}

std::vector<Row> FiniteRing::elements(std::uint64_t cap) const {
    const OrderCount n = order();
    if (!n.fits_u64() || n.as_u64() > cap)
        throw CapExceeded("ring has " + n.str() + " elements, cap is " + std::to_string(cap));
    std::vector<Row> out;
    out.reserve(n.as_u64());
    Row cur(k_, 0);
    for (std::uint64_t c = 0; c < n.as_u64(); ++c) {
        out.push_back(cur);
        bump_mixed_radix(cur, m_);
    }
    return out;
}

const ResidueMatrix& FiniteRing::nilradical(std::uint64_t cap) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (!radical_) {
        std::vector<Row> gens;
        for (const Row& x : elements(cap))
            if (is_nilpotent(x)) gens.push_back(x);
        radical_ = howell_basis(ResidueMatrix::from_rows(m_, gens, k_));
    }
    return *radical_;
}

const ResidueMatrix& FiniteRing::socle_lattice(std::uint64_t cap) const {
    const ResidueMatrix& j = nilradical(cap);
    std::lock_guard<std::mutex> lock(mu_);
    if (!socle_) {
        if (j.rows() == 0) {
            socle_ = ResidueMatrix::identity(m_, k_);
        } else {
            // ann(J): x with x*g = 0 for every radical generator g.  Stack
            // the right-multiplication matrices side by side, take the kernel.
            ResidueMatrix cons(m_, k_, 0);
            for (std::size_t r = 0; r < j.rows(); ++r)
                cons = cons.hstack(right_mult_matrix(j.row(r)));
            socle_ = kernel(cons);
        }
    }
    return *socle_;
}

namespace {

/// Greedy homocyclic basis: repeatedly pick a maximal-order element that
/// meets the current span only in 0.  Over a local factor this always
/// completes to a free basis.
std::vector<Row> homocyclic_basis(const std::vector<Row>& pool, std::uint64_t m,
                                  std::uint64_t me, std::size_t ke, std::size_t width) {
    std::vector<Row> basis;
    ResidueMatrix span(m, 0, width);
    OrderCount span_order = OrderCount::of(1);
    for (std::size_t step = 0; step < ke; ++step) {
        bool found = false;
        for (const Row& v : pool) {
            if (row_additive_order(v, m) != me) continue;
            ResidueMatrix cand(m, 1, width);
            cand.set_row(0, v);
            ResidueMatrix next = span_add(span, cand);
            if (row_span_order(next) == span_order.times(OrderCount::of(me))) {
                basis.push_back(v);
                span = std::move(next);
                span_order = span_order.times(OrderCount::of(me));
                found = true;
                break;
            }
        }
        if (!found) throw InvalidInput("factor is not additively homocyclic");
    }
    return basis;
}

} // namespace

const RingDecomposition& FiniteRing::local_decomposition(std::uint64_t cap) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (decomp_) return *decomp_;

    std::vector<Row> idem;
    for (const Row& x : elements(cap))
        if (mul(x, x) == x) idem.push_back(x);

    // e primitive iff e != 0 and e is not f + g for orthogonal nonzero
    // idempotents; equivalently no idempotent f with ef = f other than 0, e.
    std::vector<Row> prim;
    const Row zero_row(k_, 0);
    for (const Row& e : idem) {
        if (e == zero_row) continue;
        bool primitive = true;
        for (const Row& f : idem) {
            if (f == zero_row || f == e) continue;
            if (mul(e, f) == f) {
                primitive = false;
                break;
            }
        }
        if (primitive) prim.push_back(e);
    }

    RingDecomposition dec;
    if (prim.size() == 1 && prim[0] == identity_) {
        dec.factors.push_back(LocalFactor{shared_from_this(), identity_,
                                          ResidueMatrix::identity(m_, k_),
                                          ResidueMatrix::identity(m_, k_)});
        decomp_ = std::move(dec);
        return *decomp_;
    }

    Row idem_sum(k_, 0);
    OrderCount prod = OrderCount::of(1);
    for (const Row& e : prim) {
        for (std::size_t i = 0; i < k_; ++i) idem_sum[i] = addm(idem_sum[i], e[i], m_);

        const std::uint64_t me = row_additive_order(e, m_);
        ResidueMatrix gens = right_mult_matrix(e); // rows b_i * e span eR
        ResidueMatrix lattice = howell_basis(gens);
        const OrderCount sz = row_span_order(lattice);
        std::size_t ke = 0;
        OrderCount acc = OrderCount::of(1);
        while (!(acc == sz)) {
            acc = acc.times(OrderCount::of(me));
            ++ke;
            if (ke > k_ * 64) throw InvalidInput("factor is not additively homocyclic");
        }

        std::vector<Row> pool = enumerate_span(lattice, cap);
        std::vector<Row> basis = homocyclic_basis(pool, m_, me, ke, k_);

        ResidueMatrix inc(m_, ke, k_);
        for (std::size_t i = 0; i < ke; ++i) inc.set_row(i, basis[i]);
        RowSolver solver(inc);

        auto coords = [&](const Row& v) {
            auto y = solver.solve(v);
            if (!y) throw InvalidInput("factor basis does not span the factor");
            for (auto& c : *y) c %= me;
            return *y;
        };

        std::vector<Row> fstruct(ke * ke);
        for (std::size_t i = 0; i < ke; ++i)
            for (std::size_t j = 0; j < ke; ++j) fstruct[i * ke + j] = coords(mul(basis[i], basis[j]));
        Row fid = coords(e);

        std::vector<std::string> flabels(ke);
        for (std::size_t i = 0; i < ke; ++i) flabels[i] = "g" + std::to_string(i);

        ResidueMatrix proj(me, k_, ke);
        for (std::size_t i = 0; i < k_; ++i) {
            Row bi(k_, 0);
            bi[i] = 1;
            proj.set_row(i, coords(mul(bi, e)));
        }
        RingPtr fring =
            FiniteRing::create(me, std::move(flabels), std::move(fstruct), std::move(fid));
        prod = prod.times(fring->order());
        dec.factors.push_back(LocalFactor{std::move(fring), e, std::move(inc), std::move(proj)});
    }

    if (idem_sum != identity_ || !(prod == order()))
        throw InvalidInput("local decomposition is inconsistent");

    // Orthogonality of the primitive idempotents.
    for (std::size_t a = 0; a < prim.size(); ++a)
        for (std::size_t b = a + 1; b < prim.size(); ++b)
            if (mul(prim[a], prim[b]) != zero_row)
                throw InvalidInput("primitive idempotents are not orthogonal");

    decomp_ = std::move(dec);
    return *decomp_;
}

bool FiniteRing::is_local(std::uint64_t cap) const {
    const auto& dec = local_decomposition(cap);
    return dec.factors.size() == 1;
}

bool FiniteRing::is_quasi_frobenius(std::uint64_t cap) const {
    const auto& dec = local_decomposition(cap);
    for (const auto& f : dec.factors) {
        // Simple socle over a local factor iff |soc| equals the residue
        // field order |R_e| / |J_e|.
        const FiniteRing& r = *f.ring;
        const OrderCount jsz = row_span_order(r.nilradical(cap));
        const OrderCount ssz = row_span_order(r.socle_lattice(cap));
        if (ssz != r.order().divided_by(jsz)) return false;
    }
    return true;
}

std::string FiniteRing::element_str(const Row& x) const {
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < k_; ++i) {
        if (x[i] == 0) continue;
        if (!first) out << " + ";
        first = false;
        if (labels_[i] == "1") {
            out << x[i];
        } else if (x[i] == 1) {
            out << labels_[i];
        } else {
            out << x[i] << "*" << labels_[i];
        }
    }
    if (first) out << "0";
    return out.str();
}

std::string FiniteRing::canonical_key() const {
    std::ostringstream out;
    out << "ring;m=" << m_ << ";k=" << k_ << ";id=";
    for (std::uint64_t v : identity_) out << v << ",";
    out << ";s=";
    for (const Row& row : struct_)
        for (std::uint64_t v : row) out << v << ",";
    return out.str();
}

void FiniteRing::validate() const {
    auto basis = [&](std::size_t i) {
        Row b(k_, 0);
        b[i] = 1;
        return b;
    };
    for (std::size_t i = 0; i < k_; ++i) {
        if (mul(basis(i), identity_) != basis(i) || mul(identity_, basis(i)) != basis(i))
            throw InvalidInput("identity row is not a multiplicative identity");
        for (std::size_t j = 0; j < k_; ++j) {
            if (struct_[i * k_ + j] != struct_[j * k_ + i])
                throw InvalidInput("multiplication is not commutative");
            for (std::size_t l = 0; l < k_; ++l) {
                if (mul(mul(basis(i), basis(j)), basis(l)) !=
                    mul(basis(i), mul(basis(j), basis(l))))
                    throw InvalidInput("multiplication is not associative");
            }
        }
    }
}

RingPtr ring_from_modulus(std::uint64_t n) {
    if (n < 2) throw InvalidInput("modulus must be at least 2");
    return FiniteRing::create(n, {"1"}, {Row{1}}, Row{1});
}

RingPtr ring_product(const RingPtr& a, const RingPtr& b) {
    if (!a || !b) throw InvalidInput("ring_product on null ring");
    if (a->characteristic() != b->characteristic())
        throw InvalidInput("ring_product needs equal characteristics, got " +
                           std::to_string(a->characteristic()) + " and " +
                           std::to_string(b->characteristic()));
    const std::uint64_t m = a->characteristic();
    const std::size_t ka = a->rank(), kb = b->rank(), k = ka + kb;
    std::vector<std::string> labels;
    labels.reserve(k);
    for (const auto& l : a->labels()) labels.push_back("l." + l);
    for (const auto& l : b->labels()) labels.push_back("r." + l);

    std::vector<Row> structure(k * k, Row(k, 0));
    for (std::size_t i = 0; i < ka; ++i)
        for (std::size_t j = 0; j < ka; ++j) {
            const Row& s = a->structure(i, j);
            for (std::size_t t = 0; t < ka; ++t) structure[i * k + j][t] = s[t];
        }
    for (std::size_t i = 0; i < kb; ++i)
        for (std::size_t j = 0; j < kb; ++j) {
            const Row& s = b->structure(i, j);
            for (std::size_t t = 0; t < kb; ++t) structure[(ka + i) * k + (ka + j)][ka + t] = s[t];
        }

    Row identity(k, 0);
    for (std::size_t t = 0; t < ka; ++t) identity[t] = a->identity()[t];
    for (std::size_t t = 0; t < kb; ++t) identity[ka + t] = b->identity()[t];
    return FiniteRing::create(m, std::move(labels), std::move(structure), std::move(identity));
}

bool structurally_equal(const FiniteRing& a, const FiniteRing& b) {
    if (&a == &b) return true;
    if (a.characteristic() != b.characteristic() || a.rank() != b.rank()) return false;
    if (a.identity() != b.identity()) return false;
    for (std::size_t i = 0; i < a.rank(); ++i)
        for (std::size_t j = 0; j < a.rank(); ++j)
            if (a.structure(i, j) != b.structure(i, j)) return false;
    return true;
}

Row factor_to_parent(const LocalFactor& f, const Row& y) {
    return vec_mat(y, f.inclusion);
}

Row parent_to_factor(const LocalFactor& f, const Row& x) {
    Row red = x;
    const std::uint64_t me = f.ring->characteristic();
    for (auto& v : red) v %= me;
    return vec_mat(red, f.projection);
}

ResidueMatrix factor_radical_in_parent(const LocalFactor& f, std::uint64_t cap) {
    const ResidueMatrix& jf = f.ring->nilradical(cap);
    const std::uint64_t m = f.inclusion.mod();
    ResidueMatrix lifted(m, jf.rows(), f.inclusion.cols());
    for (std::size_t r = 0; r < jf.rows(); ++r) lifted.set_row(r, factor_to_parent(f, jf.row(r)));
    return howell_basis(lifted);
}

RingPtr build_ring(const GroebnerBasis& g) {
    if (!g.zero_dimensional)
        throw NotZeroDimensional("quotient ring is infinite: ideal is not zero-dimensional");
    if (g.std_monomials.empty())
        throw InvalidInput("ideal is the unit ideal: quotient ring is zero");
    const std::size_t k = g.std_monomials.size();
    auto find_index = [&](const Monomial& mo) {
        for (std::size_t i = 0; i < k; ++i)
            if (g.std_monomials[i] == mo) return i;
        throw InvalidInput("normal form left a non-standard monomial");
    };

    std::vector<std::string> labels(k);
    for (std::size_t i = 0; i < k; ++i) labels[i] = monomial_str(g.std_monomials[i], g.vars);

    std::vector<Row> structure(k * k, Row(k, 0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            Polynomial prod = Polynomial::zero(g.p, g.vars);
            prod.add_term(monomial_mul(g.std_monomials[i], g.std_monomials[j]), 1);
            Polynomial nf = normal_form(prod, g);
            Row coords(k, 0);
            for (const auto& [mo, c] : nf.terms()) coords[find_index(mo)] = c;
            structure[i * k + j] = coords;
            structure[j * k + i] = coords;
        }
    }

    Row identity(k, 0);
    identity[find_index(Monomial(g.vars.size(), 0))] = 1;
    return FiniteRing::create(g.p, std::move(labels), std::move(structure), std::move(identity));
}

} // namespace sgmod
