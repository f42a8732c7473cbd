#include "sgmod/howell.hpp"

#include "sgmod/errors.hpp"

#include <algorithm>
#include <numeric>

namespace sgmod {

namespace {

std::size_t leading_index(const Row& r) {
    for (std::size_t j = 0; j < r.size(); ++j)
        if (r[j]) return j;
    return r.size();
}

std::size_t leading_from(const Row& r, std::size_t start) {
    for (std::size_t j = start; j < r.size(); ++j)
        if (r[j]) return j;
    return r.size();
}

// Worklist Howell reduction over all columns.  Maintains one placed row per
// pivot column; incoming rows are folded into the placed row via a unimodular
// two-row combine, which preserves the row span exactly.  Whenever a pivot is
// created or shrinks, the annihilator multiple (m / pivot) * row re-enters
// the worklist; its leading entry sits strictly to the right, so the process
// terminates.  Row arithmetic is done in place: this routine sits under every
// kernel, solver, and resolution call, and per-element temporaries dominate
// its profile otherwise.
std::vector<Row> howell_rows(const ResidueMatrix& a) {
    const std::uint64_t m = a.mod();
    const std::size_t n = a.cols();
    std::vector<Row> placed(n);
    std::vector<Row> work = a.row_list();
    work.reserve(work.size() + n);
    Row combined, reducer;

    // queue q * w unless it vanishes
    auto annihilate = [&](const Row& w, std::uint64_t q) {
        q %= m;
        std::size_t lead = 0;
        while (lead < w.size() && w[lead] * q % m == 0) ++lead;
        if (lead == w.size()) return;
        Row r(w.size(), 0);
        for (std::size_t c = lead; c < w.size(); ++c) r[c] = w[c] * q % m;
        work.push_back(std::move(r));
    };

    while (!work.empty()) {
        Row v = std::move(work.back());
        work.pop_back();
        std::size_t j = leading_index(v);
        while (j < n) {
            if (placed[j].empty()) {
                std::uint64_t u = stabilize(v[j], m) % m;
                for (std::size_t c = j; c < v.size(); ++c) v[c] = v[c] * u % m;
                annihilate(v, m / v[j]);
                placed[j] = std::move(v);
                break;
            }
            Row& w = placed[j];
            std::uint64_t pa = w[j], pb = v[j];
            if (pb % pa == 0) {
                // plain reduction, pivot unchanged
                std::uint64_t q = pb / pa;
                for (std::size_t c = j; c < v.size(); ++c)
                    v[c] = (v[c] + m - w[c] * q % m) % m;
            } else {
                std::int64_t s, t;
                std::int64_t g = xgcd(static_cast<std::int64_t>(pa),
                                      static_cast<std::int64_t>(pb), s, t);
                std::uint64_t su = static_cast<std::uint64_t>(((s % static_cast<std::int64_t>(m)) +
                                                               static_cast<std::int64_t>(m))) % m;
                std::uint64_t tu = static_cast<std::uint64_t>(((t % static_cast<std::int64_t>(m)) +
                                                               static_cast<std::int64_t>(m))) % m;
                std::uint64_t qa = pa / static_cast<std::uint64_t>(g);
                std::uint64_t qb = pb / static_cast<std::uint64_t>(g);
                combined.assign(v.size(), 0);
                reducer.assign(v.size(), 0);
                for (std::size_t c = j; c < v.size(); ++c) {
                    combined[c] = (w[c] * su % m + v[c] * tu % m) % m;
                    reducer[c] = (v[c] * qa % m + m - w[c] * qb % m) % m;
                }
                placed[j].swap(combined);
                annihilate(placed[j], m / placed[j][j]);
                v.swap(reducer);
            }
            j = leading_from(v, j + 1);
        }
    }

    std::vector<Row> rows;
    for (std::size_t j = 0; j < n; ++j)
        if (!placed[j].empty()) rows.push_back(std::move(placed[j]));

    // reduce entries above each pivot into [0, pivot)
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::size_t j = leading_index(rows[i]);
        std::uint64_t pv = rows[i][j];
        const Row& src = rows[i];
        for (std::size_t k = 0; k < i; ++k) {
            std::uint64_t q = rows[k][j] / pv;
            if (q)
                for (std::size_t c = j; c < src.size(); ++c)
                    rows[k][c] = (rows[k][c] + m - src[c] * q % m) % m;
        }
    }
    return rows;
}

} // namespace

ResidueMatrix howell_basis(const ResidueMatrix& a) {
    return ResidueMatrix::from_rows(a.mod(), howell_rows(a), a.cols());
}

HowellForm howell_form(const ResidueMatrix& a) {
    const std::size_t n = a.cols();
    ResidueMatrix aug = a.hstack(ResidueMatrix::identity(a.mod(), a.rows()));
    std::vector<Row> rows = howell_rows(aug);
    std::vector<Row> hpart, tpart;
    for (const auto& r : rows) {
        if (leading_index(r) >= n) continue;
        hpart.emplace_back(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(n));
        tpart.emplace_back(r.begin() + static_cast<std::ptrdiff_t>(n), r.end());
    }
    return {ResidueMatrix::from_rows(a.mod(), hpart, n),
            ResidueMatrix::from_rows(a.mod(), tpart, a.rows())};
}

ResidueMatrix kernel(const ResidueMatrix& a) {
    const std::size_t n = a.cols();
    ResidueMatrix aug = a.hstack(ResidueMatrix::identity(a.mod(), a.rows()));
    std::vector<Row> rows = howell_rows(aug);
    std::vector<Row> ker;
    for (const auto& r : rows)
        if (leading_index(r) >= n)
            ker.emplace_back(r.begin() + static_cast<std::ptrdiff_t>(n), r.end());
    return ResidueMatrix::from_rows(a.mod(), ker, a.rows());
}

std::vector<Pivot> howell_pivots(const ResidueMatrix& h) {
    std::vector<Pivot> piv;
    piv.reserve(h.rows());
    for (std::size_t i = 0; i < h.rows(); ++i) {
        std::size_t j = 0;
        while (j < h.cols() && h.at(i, j) == 0) ++j;
        if (j == h.cols()) throw InvalidInput("howell_pivots: zero row");
        piv.push_back({j, h.at(i, j)});
    }
    return piv;
}

OrderCount row_span_order(const ResidueMatrix& h) {
    OrderCount c;
    for (const auto& p : howell_pivots(h))
        c = c.times(OrderCount::of(h.mod() / p.val));
    return c;
}

Row canonical_rep(const ResidueMatrix& h, const Row& v) {
    if (v.size() != h.cols()) throw InvalidInput("canonical_rep: size mismatch");
    const std::uint64_t m = h.mod();
    Row r = v;
    for (auto& x : r) x %= m;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        std::size_t j = 0;
        while (j < h.cols() && h.at(i, j) == 0) ++j;
        std::uint64_t pv = h.at(i, j);
        std::uint64_t q = r[j] / pv;
        if (q)
            for (std::size_t c = j; c < h.cols(); ++c)
                r[c] = (r[c] + (m - h.at(i, c)) * q) % m;
    }
    return r;
}

bool in_span(const ResidueMatrix& h, const Row& v) {
    return row_is_zero(canonical_rep(h, v));
}

ResidueMatrix span_add(const ResidueMatrix& a, const ResidueMatrix& b) {
    return howell_basis(a.vstack(b));
}

RowSolver::RowSolver(ResidueMatrix a) : a_(std::move(a)) {
    HowellForm f = howell_form(a_);
    h_ = std::move(f.h);
    t_ = std::move(f.t);
    piv_ = howell_pivots(h_);
}

std::optional<Row> RowSolver::solve(const Row& b) const {
    if (b.size() != a_.cols()) throw InvalidInput("RowSolver::solve: size mismatch");
    const std::uint64_t m = a_.mod();
    Row r = b;
    for (auto& x : r) x %= m;
    Row y(h_.rows(), 0);
    for (std::size_t i = 0; i < h_.rows(); ++i) {
        std::uint64_t q = r[piv_[i].col] / piv_[i].val;
        y[i] = q;
        if (q)
            for (std::size_t c = piv_[i].col; c < h_.cols(); ++c)
                r[c] = (r[c] + (m - h_.at(i, c)) * q) % m;
    }
    if (!row_is_zero(r)) return std::nullopt;
    return vec_mat(y, t_);
}

std::optional<Row> solve_row(const ResidueMatrix& a, const Row& b) {
    return RowSolver(a).solve(b);
}

ResidueMatrix kernel_mod(const ResidueMatrix& a, const ResidueMatrix& w) {
    if (w.rows() == 0) return kernel(a);
    ResidueMatrix k = kernel(a.vstack(w));
    std::vector<Row> first;
    for (std::size_t i = 0; i < k.rows(); ++i) {
        Row r = k.row(i);
        first.emplace_back(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(a.rows()));
    }
    return howell_basis(ResidueMatrix::from_rows(a.mod(), first, a.rows()));
}

std::optional<Row> solve_mod(const ResidueMatrix& a, const ResidueMatrix& w, const Row& b) {
    if (w.rows() == 0) return solve_row(a, b);
    auto x = solve_row(a.vstack(w), b);
    if (!x) return std::nullopt;
    return Row(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(a.rows()));
}

ResidueMatrix cochecker(const ResidueMatrix& u) {
    return kernel(howell_basis(u).transpose());
}

std::vector<Row> enumerate_span(const ResidueMatrix& h, std::uint64_t cap) {
    const std::uint64_t m = h.mod();
    OrderCount total = row_span_order(h);
    if (!total.fits_u64() || total.as_u64() > cap)
        throw CapExceeded("enumerate_span: span of order " + total.str());
    auto piv = howell_pivots(h);
    std::vector<std::uint64_t> radix(piv.size());
    for (std::size_t i = 0; i < piv.size(); ++i) radix[i] = m / piv[i].val;
    std::vector<Row> out;
    out.reserve(total.as_u64());
    std::vector<std::uint64_t> digit(piv.size(), 0);
    Row cur(h.cols(), 0);
    for (;;) {
        out.push_back(cur);
        std::size_t i = 0;
        for (; i < digit.size(); ++i) {
            ++digit[i];
            for (std::size_t c = 0; c < h.cols(); ++c) cur[c] = (cur[c] + h.at(i, c)) % m;
            if (digit[i] < radix[i]) break;
            digit[i] = 0;
            Row back = row_scale(h.row(i), radix[i] % m, m);
            for (std::size_t c = 0; c < h.cols(); ++c) cur[c] = (cur[c] + m - back[c]) % m;
        }
        if (i == digit.size()) break;
    }
    return out;
}

std::vector<Row> enumerate_cosets(std::size_t n, const ResidueMatrix& h, std::uint64_t cap) {
    const std::uint64_t m = h.mod();
    if (h.cols() != n) throw InvalidInput("enumerate_cosets: width mismatch");
    OrderCount total = OrderCount::of(m).pow(n).divided_by(row_span_order(h));
    if (!total.fits_u64() || total.as_u64() > cap)
        throw CapExceeded("enumerate_cosets: " + total.str() + " cosets");
    auto piv = howell_pivots(h);
    std::vector<std::uint64_t> radix(n, m);
    for (const auto& p : piv) radix[p.col] = p.val;
    std::vector<Row> out;
    out.reserve(total.as_u64());
    Row cur(n, 0);
    for (;;) {
        out.push_back(cur);
        std::size_t j = 0;
        for (; j < n; ++j) {
            if (++cur[j] < radix[j]) break;
            cur[j] = 0;
        }
        if (j == n) break;
    }
    return out;
}

} // namespace sgmod
