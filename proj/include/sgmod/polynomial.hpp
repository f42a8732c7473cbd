/**
 * @file sgmod/polynomial.hpp
 * @brief Multivariate polynomials over a prime field F_p.
 *
 * Terms are kept in a map ordered by degree-reverse-lexicographic order with
 * the leading term first, so leading-term access is O(1).  The variable list
 * is fixed per polynomial; all arithmetic demands matching p and variables.
 *
 * @copyright Apache License 2.0
 */
#pragma once

#include "sgmod/errors.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sgmod {

using Monomial = std::vector<std::uint32_t>;

std::uint32_t total_degree(const Monomial& m);
bool monomial_divides(const Monomial& a, const Monomial& b); ///< a | b
Monomial monomial_mul(const Monomial& a, const Monomial& b);
Monomial monomial_div(const Monomial& a, const Monomial& b); ///< a / b, b | a required
Monomial monomial_lcm(const Monomial& a, const Monomial& b);

/// Degree-reverse-lexicographic "greater than": higher total degree wins;
/// on ties the monomial whose last differing exponent is smaller wins.
struct DegRevLexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

class Polynomial {
  public:
    using TermMap = std::map<Monomial, std::uint64_t, DegRevLexGreater>;

    Polynomial(std::uint64_t p, std::vector<std::string> vars);
    static Polynomial zero(std::uint64_t p, std::vector<std::string> vars);
    static Polynomial constant(std::uint64_t p, std::vector<std::string> vars, std::uint64_t c);
    static Polynomial variable(std::uint64_t p, std::vector<std::string> vars, std::size_t idx);

    std::uint64_t p() const { return p_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    const Monomial& leading_monomial() const;
    std::uint64_t leading_coeff() const;
    std::uint32_t degree() const; ///< total degree of the leading monomial; 0 for the zero polynomial

    void add_term(const Monomial& m, std::uint64_t c);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    bool operator==(const Polynomial& o) const;

    Polynomial scaled(std::uint64_t c) const;
    Polynomial times_term(const Monomial& m, std::uint64_t c) const;
    Polynomial monic() const;

    std::string str() const;

  private:
    void check_compatible(const Polynomial& o) const;

    std::uint64_t p_;
    std::vector<std::string> vars_;
    TermMap terms_;
};

/// Parse "x^2 + x*y + 1" style text.  Terms are joined by + or -, factors by
/// *, exponents by ^.  Unknown variable names and malformed syntax throw
/// InvalidInput.
Polynomial parse_polynomial(const std::string& text, std::uint64_t p,
                            const std::vector<std::string>& vars);

bool is_prime_u64(std::uint64_t n);

std::string monomial_str(const Monomial& m, const std::vector<std::string>& vars);

} // namespace sgmod
