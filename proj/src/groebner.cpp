#include "sgmod/groebner.hpp"

#include "sgmod/errors.hpp"
#include "sgmod/residue_matrix.hpp"

#include <algorithm>

namespace sgmod {

namespace {

Polynomial reduce_full(const Polynomial& f, const std::vector<Polynomial>& basis) {
    Polynomial rem = Polynomial::zero(f.p(), f.vars());
    Polynomial work = f;
    while (!work.is_zero()) {
        const Monomial& lm = work.leading_monomial();
        std::uint64_t lc = work.leading_coeff();
        bool reduced = false;
        for (const auto& g : basis) {
            if (g.is_zero() || !monomial_divides(g.leading_monomial(), lm)) continue;
            std::uint64_t c = lc * modinv(g.leading_coeff(), f.p()) % f.p();
            work = work - g.times_term(monomial_div(lm, g.leading_monomial()), c);
            reduced = true;
            break;
        }
        if (!reduced) {
            rem.add_term(lm, lc);
            work.add_term(lm, f.p() - lc);
        }
    }
    return rem;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
    Monomial l = monomial_lcm(f.leading_monomial(), g.leading_monomial());
    std::uint64_t p = f.p();
    Polynomial a = f.times_term(monomial_div(l, f.leading_monomial()),
                                modinv(f.leading_coeff(), p));
    Polynomial b = g.times_term(monomial_div(l, g.leading_monomial()),
                                modinv(g.leading_coeff(), p));
    return a - b;
}

} // namespace

GroebnerBasis buchberger(const std::vector<Polynomial>& generators) {
    if (generators.empty()) throw InvalidInput("buchberger: no generators");
    std::uint64_t p = generators.front().p();
    const auto& vars = generators.front().vars();
    for (const auto& g : generators)
        if (g.p() != p || g.vars() != vars)
            throw InvalidInput("buchberger: generators over different rings");

    std::vector<Polynomial> basis;
    for (const auto& g : generators)
        if (!g.is_zero()) basis.push_back(g.monic());

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) pairs.emplace_back(i, j);

    while (!pairs.empty()) {
        auto [i, j] = pairs.back();
        pairs.pop_back();
        Polynomial s = reduce_full(s_polynomial(basis[i], basis[j]), basis);
        if (s.is_zero()) continue;
        basis.push_back(s.monic());
        for (std::size_t k = 0; k + 1 < basis.size(); ++k) pairs.emplace_back(k, basis.size() - 1);
    }

    // inter-reduce to the unique reduced basis
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            std::vector<Polynomial> others;
            for (std::size_t k = 0; k < basis.size(); ++k)
                if (k != i) others.push_back(basis[k]);
            Polynomial r = reduce_full(basis[i], others);
            if (!(r == basis[i])) {
                changed = true;
                if (r.is_zero()) {
                    basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
                    --i;
                } else {
                    basis[i] = r.monic();
                }
            }
        }
    }

    std::sort(basis.begin(), basis.end(), [](const Polynomial& a, const Polynomial& b) {
        return DegRevLexGreater()(a.leading_monomial(), b.leading_monomial());
    });

    GroebnerBasis g{p, vars, std::move(basis), false, {}};

    // zero-dimensional iff every variable is bounded by a pure power among
    // the leading terms
    bool zd = true;
    for (std::size_t v = 0; v < vars.size() && zd; ++v) {
        bool bounded = false;
        for (const auto& f : g.basis) {
            const Monomial& lm = f.leading_monomial();
            bool pure = true;
            for (std::size_t w = 0; w < vars.size(); ++w)
                if (w != v && lm[w] != 0) pure = false;
            if (pure) bounded = true;
        }
        if (!bounded) zd = false;
    }
    g.zero_dimensional = zd;

    bool unit_ideal = false;
    for (const auto& f : g.basis)
        if (total_degree(f.leading_monomial()) == 0) unit_ideal = true;

    if (zd && !unit_ideal && !vars.empty()) {
        std::vector<std::uint32_t> bound(vars.size(), 0);
        {
            for (std::size_t v = 0; v < vars.size(); ++v) {
                std::uint32_t best = 0;
                for (const auto& f : g.basis) {
                    const Monomial& lm = f.leading_monomial();
                    bool pure = true;
                    for (std::size_t w = 0; w < vars.size(); ++w)
                        if (w != v && lm[w] != 0) pure = false;
                    if (pure && (best == 0 || lm[v] < best)) best = lm[v];
                }
                bound[v] = best;
            }
            Monomial cur(vars.size(), 0);
            for (;;) {
                bool standard = true;
                for (const auto& f : g.basis)
                    if (monomial_divides(f.leading_monomial(), cur)) standard = false;
                if (standard) g.std_monomials.push_back(cur);
                std::size_t v = 0;
                for (; v < vars.size(); ++v) {
                    if (++cur[v] < bound[v]) break;
                    cur[v] = 0;
                }
                if (v == vars.size()) break;
            }
            std::sort(g.std_monomials.begin(), g.std_monomials.end(),
                      [](const Monomial& a, const Monomial& b) {
                          return DegRevLexGreater()(b, a);
                      });
        }
    } else if (zd && !unit_ideal) {
        g.std_monomials.push_back(Monomial{});
    }
    return g;
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& g) {
    if (f.p() != g.p || f.vars() != g.vars)
        throw InvalidInput("normal_form: polynomial over a different ring");
    return reduce_full(f, g.basis);
}

std::vector<Monomial> standard_monomials(const GroebnerBasis& g) {
    if (!g.zero_dimensional)
        throw NotZeroDimensional("standard_monomials: some variable is unbounded");
    return g.std_monomials;
}

} // namespace sgmod
