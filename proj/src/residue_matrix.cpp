#include "sgmod/residue_matrix.hpp"

#include <numeric>

namespace sgmod {

std::int64_t xgcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
    if (b == 0) { x = a >= 0 ? 1 : -1; y = 0; return a >= 0 ? a : -a; }
    std::int64_t x1, y1;
    std::int64_t g = xgcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t modinv(std::uint64_t a, std::uint64_t m) {
    std::int64_t x, y;
    std::int64_t g = xgcd(static_cast<std::int64_t>(a % m), static_cast<std::int64_t>(m), x, y);
    if (g != 1) throw InvalidInput("modinv: not a unit");
    std::int64_t r = x % static_cast<std::int64_t>(m);
    if (r < 0) r += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(r);
}

std::uint64_t stabilize(std::uint64_t a, std::uint64_t m) {
    a %= m;
    if (a == 0) return 1;
    std::uint64_t d = std::gcd(a, m);
    // a/d is a unit mod m/d; lift its inverse to a unit mod m.  Some lift
    // u0 + k*(m/d) with 0 <= k < d is coprime to m because the candidates
    // cover all residues mod d in the relevant factor.
    std::uint64_t md = m / d;
    std::uint64_t u0 = (md == 1) ? 0 : modinv((a / d) % md, md);
    for (std::uint64_t k = 0; k < d; ++k) {
        std::uint64_t u = u0 + k * md;
        if (u == 0) continue;
        if (std::gcd(u, m) == 1) return u;
    }
    throw InvalidInput("stabilize: no unit found (impossible)");
}

std::uint64_t additive_order(std::uint64_t a, std::uint64_t m) {
    return m / std::gcd(a % m, m);
}

ResidueMatrix::ResidueMatrix(std::uint64_t mod, std::size_t rows, std::size_t cols)
    : mod_(mod), rows_(rows), cols_(cols), data_(rows * cols, 0) {
    if (mod < 2 || mod >= kMaxModulus) throw InvalidInput("ResidueMatrix: bad modulus");
}

ResidueMatrix::ResidueMatrix(std::uint64_t mod,
                             std::initializer_list<std::initializer_list<std::uint64_t>> vals)
    : ResidueMatrix(mod, vals.size(), vals.size() ? vals.begin()->size() : 0) {
    std::size_t i = 0;
    for (const auto& r : vals) {
        if (r.size() != cols_) throw InvalidInput("ResidueMatrix: ragged init");
        std::size_t j = 0;
        for (auto v : r) data_[i * cols_ + j++] = v % mod_;
        ++i;
    }
}

ResidueMatrix ResidueMatrix::identity(std::uint64_t mod, std::size_t n) {
    ResidueMatrix r(mod, n, n);
    for (std::size_t i = 0; i < n; ++i) r.data_[i * n + i] = 1 % mod;
    return r;
}

ResidueMatrix ResidueMatrix::from_rows(std::uint64_t mod, const std::vector<Row>& rows,
                                       std::size_t cols) {
    ResidueMatrix r(mod, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw InvalidInput("from_rows: ragged rows");
        for (std::size_t j = 0; j < cols; ++j) r.data_[i * cols + j] = rows[i][j] % mod;
    }
    return r;
}

Row ResidueMatrix::row(std::size_t i) const {
    return Row(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
               data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

void ResidueMatrix::set_row(std::size_t i, const Row& r) {
    if (r.size() != cols_) throw InvalidInput("set_row: size mismatch");
    for (std::size_t j = 0; j < cols_; ++j) data_[i * cols_ + j] = r[j] % mod_;
}

std::vector<Row> ResidueMatrix::row_list() const {
    std::vector<Row> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
}

ResidueMatrix ResidueMatrix::transpose() const {
    ResidueMatrix r(mod_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.data_[j * rows_ + i] = data_[i * cols_ + j];
    return r;
}

ResidueMatrix ResidueMatrix::vstack(const ResidueMatrix& other) const {
    if (mod_ != other.mod_ || cols_ != other.cols_) throw InvalidInput("vstack: mismatch");
    ResidueMatrix r(mod_, rows_ + other.rows_, cols_);
    std::copy(data_.begin(), data_.end(), r.data_.begin());
    std::copy(other.data_.begin(), other.data_.end(),
              r.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
    return r;
}

ResidueMatrix ResidueMatrix::hstack(const ResidueMatrix& other) const {
    if (mod_ != other.mod_ || rows_ != other.rows_) throw InvalidInput("hstack: mismatch");
    ResidueMatrix r(mod_, rows_, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) r.data_[i * r.cols_ + j] = data_[i * cols_ + j];
        for (std::size_t j = 0; j < other.cols_; ++j)
            r.data_[i * r.cols_ + cols_ + j] = other.data_[i * other.cols_ + j];
    }
    return r;
}

ResidueMatrix ResidueMatrix::slice_cols(std::size_t lo, std::size_t hi) const {
    if (lo > hi || hi > cols_) throw InvalidInput("slice_cols: bad range");
    ResidueMatrix r(mod_, rows_, hi - lo);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = lo; j < hi; ++j) r.data_[i * r.cols_ + (j - lo)] = data_[i * cols_ + j];
    return r;
}

ResidueMatrix ResidueMatrix::operator*(const ResidueMatrix& other) const {
    if (mod_ != other.mod_ || cols_ != other.rows_) throw InvalidInput("matmul: mismatch");
    ResidueMatrix r(mod_, rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            std::uint64_t a = data_[i * cols_ + k];
            if (!a) continue;
            for (std::size_t j = 0; j < other.cols_; ++j) {
                std::uint64_t& c = r.data_[i * r.cols_ + j];
                c = (c + a * other.data_[k * other.cols_ + j]) % mod_;
            }
        }
    }
    return r;
}

ResidueMatrix ResidueMatrix::operator+(const ResidueMatrix& other) const {
    if (mod_ != other.mod_ || rows_ != other.rows_ || cols_ != other.cols_)
        throw InvalidInput("matadd: mismatch");
    ResidueMatrix r(mod_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = (data_[i] + other.data_[i]) % mod_;
    return r;
}

ResidueMatrix ResidueMatrix::operator-(const ResidueMatrix& other) const {
    if (mod_ != other.mod_ || rows_ != other.rows_ || cols_ != other.cols_)
        throw InvalidInput("matsub: mismatch");
    ResidueMatrix r(mod_, rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        r.data_[i] = (data_[i] + mod_ - other.data_[i]) % mod_;
    return r;
}

bool ResidueMatrix::operator==(const ResidueMatrix& other) const {
    return mod_ == other.mod_ && rows_ == other.rows_ && cols_ == other.cols_ &&
           data_ == other.data_;
}

ResidueMatrix ResidueMatrix::scaled(std::uint64_t c) const {
    ResidueMatrix r(mod_, rows_, cols_);
    c %= mod_;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = (data_[i] * c) % mod_;
    return r;
}

bool ResidueMatrix::is_zero() const {
    for (auto v : data_)
        if (v) return false;
    return true;
}

Row vec_mat(const Row& x, const ResidueMatrix& a) {
    if (x.size() != a.rows()) throw InvalidInput("vec_mat: size mismatch");
    Row out(a.cols(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::uint64_t c = x[i] % a.mod();
        if (!c) continue;
        for (std::size_t j = 0; j < a.cols(); ++j)
            out[j] = (out[j] + c * a.at(i, j)) % a.mod();
    }
    return out;
}

Row row_add(const Row& a, const Row& b, std::uint64_t m) {
    Row r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % m;
    return r;
}

Row row_sub(const Row& a, const Row& b, std::uint64_t m) {
    Row r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + m - b[i] % m) % m;
    return r;
}

Row row_scale(const Row& a, std::uint64_t c, std::uint64_t m) {
    Row r(a.size());
    c %= m;
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] * c) % m;
    return r;
}

bool row_is_zero(const Row& a) {
    for (auto v : a)
        if (v) return false;
    return true;
}

} // namespace sgmod
