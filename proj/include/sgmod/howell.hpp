/**
 * @file sgmod/howell.hpp
 * @brief Howell normal form and exact linear algebra over Z/m.
 *
 * The Howell form of a matrix A over Z/m is the unique canonical basis of the
 * row span of A: echelon, every pivot divides m, entries above a pivot are
 * reduced below it, and the span is closed under leading-term reduction by
 * the basis rows.  Unlike the reduced row echelon form over a field, it may
 * have more rows than A (annihilator rows), which is what makes kernels and
 * membership tests exact over composite moduli.
 *
 * Conventions: row vectors act on the left, so kernel(A) = {x : x * A = 0}
 * and solve_row(A, b) finds x with x * A = b.
 *
 * @copyright Apache License 2.0
 */
#pragma once

#include "sgmod/order_count.hpp"
#include "sgmod/residue_matrix.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace sgmod {

struct Pivot {
    std::size_t col;
    std::uint64_t val;
};

/// Canonical Howell basis of the row span of a.  Zero rows are dropped, so
/// the result may have zero rows (empty span) or more rows than a.
ResidueMatrix howell_basis(const ResidueMatrix& a);

struct HowellForm {
    ResidueMatrix h; ///< canonical Howell basis of the row span
    ResidueMatrix t; ///< transform with t * a == h
};

HowellForm howell_form(const ResidueMatrix& a);

/// Canonical Howell basis of {x : x * a = 0}.
ResidueMatrix kernel(const ResidueMatrix& a);

/// Pivot positions of an echelon matrix, one per row.
std::vector<Pivot> howell_pivots(const ResidueMatrix& h);

/// Number of elements of the row span of an echelon matrix h, in factored
/// form: the product over pivots of the additive order m / val.
OrderCount row_span_order(const ResidueMatrix& h);

/// The unique canonical representative of v + span(h).  h must be a Howell
/// basis.  v is in the span iff the representative is the zero row.
Row canonical_rep(const ResidueMatrix& h, const Row& v);

bool in_span(const ResidueMatrix& h, const Row& v);

/// Howell basis of span(a) + span(b).
ResidueMatrix span_add(const ResidueMatrix& a, const ResidueMatrix& b);

inline bool spans_equal(const ResidueMatrix& a, const ResidueMatrix& b) {
    return howell_basis(a) == howell_basis(b);
}

/// Repeated solves against a fixed matrix.  Precomputes the Howell form with
/// transform once; each solve is a forward substitution.
class RowSolver {
  public:
    explicit RowSolver(ResidueMatrix a);

    /// Some x with x * a == b, or nullopt when b is outside the row span.
    std::optional<Row> solve(const Row& b) const;

    const ResidueMatrix& matrix() const { return a_; }
    const ResidueMatrix& basis() const { return h_; }

  private:
    ResidueMatrix a_;
    ResidueMatrix h_;
    ResidueMatrix t_;
    std::vector<Pivot> piv_;
};

std::optional<Row> solve_row(const ResidueMatrix& a, const Row& b);

/// Canonical basis of {x : x * a lies in span(w)}.
ResidueMatrix kernel_mod(const ResidueMatrix& a, const ResidueMatrix& w);

/// Some x with x * a == b modulo span(w).
std::optional<Row> solve_mod(const ResidueMatrix& a, const ResidueMatrix& w, const Row& b);

/// Rows c_1..c_s such that v lies in span(u) iff v . c_i = 0 for all i.
/// Membership in a submodule of (Z/m)^n as a linear condition; exists because
/// Z/m is self-injective.
ResidueMatrix cochecker(const ResidueMatrix& u);

/// Every element of the row span of a Howell basis h, in a fixed
/// deterministic order.  Throws CapExceeded when the span is larger than cap.
std::vector<Row> enumerate_span(const ResidueMatrix& h, std::uint64_t cap);

/// Canonical representatives of the cosets of span(h) in (Z/m)^n, in a fixed
/// deterministic order.  Throws CapExceeded when there are more than cap.
std::vector<Row> enumerate_cosets(std::size_t n, const ResidueMatrix& h, std::uint64_t cap);

} // namespace sgmod
