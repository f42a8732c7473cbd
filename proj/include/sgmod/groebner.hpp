/**
 * @file sgmod/groebner.hpp
 * @brief Buchberger's algorithm and finite quotient rings F_p[x...]/I.
 *
 * Naive pair handling is deliberate: inputs are tiny ideals and exactness
 * matters more than speed here.  The reduced basis is unique for a given
 * ideal and monomial order, which keeps everything downstream deterministic.
 *
 * @copyright Apache License 2.0
 */
#pragma once

#include "sgmod/polynomial.hpp"

#include <memory>
#include <vector>

namespace sgmod {

class FiniteRing;

struct GroebnerBasis {
    std::uint64_t p;
    std::vector<std::string> vars;
    std::vector<Polynomial> basis; ///< reduced, monic, sorted by leading monomial descending
    bool zero_dimensional;
    std::vector<Monomial> std_monomials; ///< ascending, present iff zero_dimensional
};

GroebnerBasis buchberger(const std::vector<Polynomial>& generators);

/// Fully reduced remainder of f against G: no term of the result is
/// divisible by any leading term of G, and f - result lies in the ideal.
Polynomial normal_form(const Polynomial& f, const GroebnerBasis& g);

/// The monomials outside the leading-term staircase, ascending.  Throws
/// NotZeroDimensional when some variable has no pure power among the leading
/// terms (the set would be infinite).
std::vector<Monomial> standard_monomials(const GroebnerBasis& g);

/// The quotient ring F_p[vars]/I with the standard monomials as basis and
/// structure constants c_ij = normal_form(m_i * m_j).  Throws
/// NotZeroDimensional (infinite quotient) or InvalidInput (zero quotient,
/// when 1 lies in the ideal).
std::shared_ptr<const FiniteRing> build_ring(const GroebnerBasis& g);

} // namespace sgmod
