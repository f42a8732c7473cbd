/**
 * @file sgmod/finite_ring.hpp
 * @brief Finite commutative rings with identity, given by structure constants.
 *
 * A ring here always has additive group (Z/m)^k for its characteristic m:
 * elements are coordinate rows of length k, and multiplication is bilinear
 * with the stored structure constants.  The ring axioms (commutativity,
 * associativity, unit) are checked exhaustively on basis tuples when the
 * ring is created, so a constructed FiniteRing is trustworthy by fiat.
 *
 * Every local factor of such a ring has prime-power characteristic p^v with
 * v the full p-adic valuation of m, and is itself additively free over
 * Z/p^v.  That fact (a consequence of summands of free modules over Z/p^v
 * being free) is what lets local_decomposition return factors in the same
 * representation.
 *
 * @copyright Apache License 2.0
 */
#pragma once

#include "sgmod/howell.hpp"
#include "sgmod/order_count.hpp"
#include "sgmod/residue_matrix.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace sgmod {

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

/// One local factor eR of a ring, together with the maps across the
/// characteristic change (the factor lives over Z/m_e with m_e | m).
struct LocalFactor {
    RingPtr ring;             ///< the factor as a ring in its own right
    Row idempotent;           ///< e in parent coordinates
    ResidueMatrix inclusion;  ///< factor basis rows in parent coordinates (mod m)
    ResidueMatrix projection; ///< parent basis -> factor coordinates (mod m_e)
};

struct RingDecomposition {
    std::vector<LocalFactor> factors;
};

class FiniteRing : public std::enable_shared_from_this<FiniteRing> {
  public:
    /// structure holds k*k rows; row i*k+j gives the coordinates of b_i b_j.
    /// Throws InvalidInput if the data violates the ring axioms.
    static RingPtr create(std::uint64_t characteristic, std::vector<std::string> labels,
                          std::vector<Row> structure, Row identity);

    std::uint64_t characteristic() const { return m_; }
    std::size_t rank() const { return k_; }
    const std::vector<std::string>& labels() const { return labels_; }
    OrderCount order() const { return OrderCount::of(m_).pow(k_); }
    const Row& identity() const { return identity_; }
    const Row& structure(std::size_t i, std::size_t j) const { return struct_[i * k_ + j]; }

    Row zero() const { return Row(k_, 0); }
    Row mul(const Row& x, const Row& y) const;
    Row pow(const Row& x, std::uint64_t e) const;
    /// Matrix of right multiplication by y: row i is b_i * y, so x*y = x . RM(y).
    ResidueMatrix right_mult_matrix(const Row& y) const;
    bool is_nilpotent(const Row& x) const;

    /// All m^k elements in mixed-radix order; throws CapExceeded.
    std::vector<Row> elements(std::uint64_t cap) const;

    /// Howell lattice of the nilradical (= Jacobson radical here).
    const ResidueMatrix& nilradical(std::uint64_t cap) const;
    /// Howell lattice of ann(nilradical).
    const ResidueMatrix& socle_lattice(std::uint64_t cap) const;
    const RingDecomposition& local_decomposition(std::uint64_t cap) const;
    bool is_local(std::uint64_t cap) const;
    /// True iff every local factor has simple socle.
    bool is_quasi_frobenius(std::uint64_t cap) const;

    std::string element_str(const Row& x) const;
    /// Stable content string: characteristic, rank, structure constants.
    std::string canonical_key() const;

  private:
    FiniteRing(std::uint64_t m, std::vector<std::string> labels, std::vector<Row> structure,
               Row identity);
    void validate() const;

    std::uint64_t m_;
    std::size_t k_;
    std::vector<std::string> labels_;
    std::vector<Row> struct_;
    Row identity_;

    mutable std::mutex mu_;
    mutable std::optional<ResidueMatrix> radical_;
    mutable std::optional<ResidueMatrix> socle_;
    mutable std::optional<RingDecomposition> decomp_;
};

RingPtr ring_from_modulus(std::uint64_t n);

/// Componentwise product on the concatenated basis.  Throws InvalidInput on
/// characteristic mismatch (no implicit lcm lifting).
RingPtr ring_product(const RingPtr& a, const RingPtr& b);

bool structurally_equal(const FiniteRing& a, const FiniteRing& b);

/// Additive order of a coordinate row in (Z/m)^k.
std::uint64_t row_additive_order(const Row& x, std::uint64_t m);

/// Lift a factor element to parent coordinates.
Row factor_to_parent(const LocalFactor& f, const Row& y);
/// Project a parent element to factor coordinates (over the factor modulus).
Row parent_to_factor(const LocalFactor& f, const Row& x);
/// The factor's radical as an ideal of the parent (Howell lattice, mod m).
ResidueMatrix factor_radical_in_parent(const LocalFactor& f, std::uint64_t cap);

} // namespace sgmod
