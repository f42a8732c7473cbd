/**
 * @file sgmod/residue_matrix.hpp
 * @brief Dense matrices over Z/m with row-vector conventions.
 *
 * Everything downstream multiplies on the left: a row vector x maps to x*A.
 * Moduli are capped below 2^31 so products of two reduced residues fit in
 * uint64_t without overflow.
 *
 * @copyright Apache License 2.0
 */
#pragma once

#include "sgmod/errors.hpp"

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace sgmod {

using Row = std::vector<std::uint64_t>;

constexpr std::uint64_t kMaxModulus = (1ull << 31);

inline std::uint64_t addm(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return (a + b) % m;
}
inline std::uint64_t subm(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return (a + m - b % m) % m;
}
inline std::uint64_t mulm(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return (a * b) % m;
}

/// Extended gcd: returns g and writes x, y with a*x + b*y == g (signed).
std::int64_t xgcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);

/// Inverse of a mod m; throws InvalidInput when gcd(a, m) != 1.
std::uint64_t modinv(std::uint64_t a, std::uint64_t m);

/// A unit u mod m with u*a == gcd(a, m) (mod m).  a may be 0 (returns 1).
std::uint64_t stabilize(std::uint64_t a, std::uint64_t m);

/// Additive order of a in Z/m, i.e. m / gcd(a, m).
std::uint64_t additive_order(std::uint64_t a, std::uint64_t m);

class ResidueMatrix {
  public:
    ResidueMatrix() : mod_(2), rows_(0), cols_(0) {}
    ResidueMatrix(std::uint64_t mod, std::size_t rows, std::size_t cols);
    ResidueMatrix(std::uint64_t mod, std::initializer_list<std::initializer_list<std::uint64_t>> vals);

    static ResidueMatrix identity(std::uint64_t mod, std::size_t n);
    static ResidueMatrix from_rows(std::uint64_t mod, const std::vector<Row>& rows, std::size_t cols);

    std::uint64_t mod() const { return mod_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint64_t at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, std::uint64_t v) { data_[i * cols_ + j] = v % mod_; }

    Row row(std::size_t i) const;
    void set_row(std::size_t i, const Row& r);
    std::vector<Row> row_list() const;

    ResidueMatrix transpose() const;

    /// Rows of *this on top of rows of other (same cols, same mod).
    ResidueMatrix vstack(const ResidueMatrix& other) const;
    /// Columns of *this followed by columns of other (same rows, same mod).
    ResidueMatrix hstack(const ResidueMatrix& other) const;

    /// Columns [lo, hi) of every row.
    ResidueMatrix slice_cols(std::size_t lo, std::size_t hi) const;

    ResidueMatrix operator*(const ResidueMatrix& other) const;
    ResidueMatrix operator+(const ResidueMatrix& other) const;
    ResidueMatrix operator-(const ResidueMatrix& other) const;
    bool operator==(const ResidueMatrix& other) const;

    ResidueMatrix scaled(std::uint64_t c) const;

    bool is_zero() const;

    const std::vector<std::uint64_t>& data() const { return data_; }

  private:
    std::uint64_t mod_;
    std::size_t rows_, cols_;
    std::vector<std::uint64_t> data_;
};

/// x * A for a row vector x (size A.rows()); result has size A.cols().
Row vec_mat(const Row& x, const ResidueMatrix& a);

/// Euclidean-style helpers on rows.
Row row_add(const Row& a, const Row& b, std::uint64_t m);
Row row_sub(const Row& a, const Row& b, std::uint64_t m);
Row row_scale(const Row& a, std::uint64_t c, std::uint64_t m);
bool row_is_zero(const Row& a);

} // namespace sgmod
