/**
 * @file sgmod/order_count.hpp
 * @brief Exact orders of finite abelian groups, kept in factored form.
 *
 * Orders that show up in resolutions grow like |R|^depth and overflow any
 * fixed-width integer quickly, so we store the factorization instead:
 * a sorted list of (prime, exponent) pairs.  All arithmetic is exact;
 * division throws when the quotient would not be an integer.
 *
 * @copyright Apache License 2.0
 */
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sgmod {

class OrderCount {
  public:
    /// The order 1 (empty factorization).
    OrderCount() = default;

    /// Factor a nonzero count.
    static OrderCount of(std::uint64_t n);

    /// p^e directly, p must be prime (not checked beyond p >= 2).
    static OrderCount prime_power(std::uint64_t p, std::uint64_t e);

    OrderCount times(const OrderCount& other) const;
    OrderCount pow(std::uint64_t e) const;

    bool divides(const OrderCount& other) const;

    /// Exact quotient; throws InvalidInput unless other divides *this.
    OrderCount divided_by(const OrderCount& other) const;

    bool operator==(const OrderCount& other) const { return factors_ == other.factors_; }
    bool operator!=(const OrderCount& other) const { return !(*this == other); }

    bool is_one() const { return factors_.empty(); }

    /// True when the value fits in a uint64_t.
    bool fits_u64() const;

    /// The value, assuming fits_u64(); throws otherwise.
    std::uint64_t as_u64() const;

    /// Upper bound on log2, exact for powers of two.  Useful for cap checks.
    double log2() const;

    /// "864" when it fits, otherwise "2^95 * 3^7" style.
    std::string str() const;

    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& factors() const {
        return factors_;
    }

  private:
    // sorted by prime, exponents >= 1
    std::vector<std::pair<std::uint64_t, std::uint64_t>> factors_;
};

} // namespace sgmod
