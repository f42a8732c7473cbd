// Exhaustive oracles for the Z/m linear algebra layer.  Every routine that
// the rest of the library leans on (Howell form, kernel, solve, membership,
// coset enumeration) is checked here against brute-force enumeration over
// small moduli, so the layers above can trust it blindly.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sgmod/errors.hpp"
#include "sgmod/howell.hpp"
#include "sgmod/order_count.hpp"
#include "sgmod/residue_matrix.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <vector>

using namespace sgmod;

namespace {

// Additive closure of the rows: the full row span, enumerated breadth-first.
std::set<Row> brute_span(const ResidueMatrix& a) {
    std::set<Row> seen;
    std::vector<Row> queue;
    Row zero(a.cols(), 0);
    seen.insert(zero);
    queue.push_back(zero);
    while (!queue.empty()) {
        Row e = queue.back();
        queue.pop_back();
        for (std::size_t i = 0; i < a.rows(); ++i) {
            Row next = row_add(e, a.row(i), a.mod());
            if (seen.insert(next).second) queue.push_back(next);
        }
    }
    return seen;
}

std::vector<Row> all_vectors(std::uint64_t m, std::size_t n) {
    std::vector<Row> out;
    Row cur(n, 0);
    for (;;) {
        out.push_back(cur);
        std::size_t j = 0;
        for (; j < n; ++j) {
            if (++cur[j] < m) break;
            cur[j] = 0;
        }
        if (j == n) break;
    }
    return out;
}

std::set<Row> brute_kernel(const ResidueMatrix& a) {
    std::set<Row> ker;
    for (const auto& x : all_vectors(a.mod(), a.rows()))
        if (row_is_zero(vec_mat(x, a))) ker.insert(x);
    return ker;
}

ResidueMatrix random_matrix(std::mt19937_64& rng, std::uint64_t m, std::size_t r,
                            std::size_t c) {
    ResidueMatrix a(m, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) a.set(i, j, rng() % m);
    return a;
}

// Structural part of the Howell conditions; the span conditions are checked
// separately against brute_span.
void check_howell_shape(const ResidueMatrix& h) {
    std::size_t prev = 0;
    bool first = true;
    auto piv = howell_pivots(h);
    for (std::size_t i = 0; i < h.rows(); ++i) {
        if (!first) CHECK(piv[i].col > prev);
        prev = piv[i].col;
        first = false;
        CHECK(h.mod() % piv[i].val == 0);
        for (std::size_t k = 0; k < i; ++k) CHECK(h.at(k, piv[i].col) < piv[i].val);
    }
}

} // namespace

TEST_CASE("order counts stay exact in factored form") {
    CHECK(OrderCount::of(864).str() == "864");
    CHECK(OrderCount::of(864) == OrderCount::prime_power(2, 5).times(OrderCount::prime_power(3, 3)));
    CHECK(OrderCount::prime_power(2, 100).str() == "2^100");
    CHECK(OrderCount::prime_power(2, 95).times(OrderCount::prime_power(3, 7)).str() ==
          "2^95 * 3^7");
    CHECK(OrderCount::of(12).pow(3) == OrderCount::of(1728));
    CHECK(OrderCount::of(6).divides(OrderCount::of(864)));
    CHECK_FALSE(OrderCount::of(5).divides(OrderCount::of(864)));
    CHECK(OrderCount::of(864).divided_by(OrderCount::of(27)) == OrderCount::of(32));
    CHECK_THROWS_AS(OrderCount::of(10).divided_by(OrderCount::of(4)), InvalidInput);
    CHECK(OrderCount::prime_power(2, 63).fits_u64());
    CHECK(OrderCount::prime_power(2, 63).as_u64() == (1ull << 63));
    CHECK_FALSE(OrderCount::prime_power(2, 64).fits_u64());
    CHECK(OrderCount::prime_power(2, 64).log2() == doctest::Approx(64.0));
    CHECK(OrderCount().is_one());
    CHECK(OrderCount::of(7).pow(0).is_one());
}

TEST_CASE("scalar helpers: xgcd, modinv, stabilize, additive order") {
    for (std::uint64_t m : {2ull, 3ull, 4ull, 6ull, 8ull, 9ull, 12ull, 30ull}) {
        for (std::uint64_t a = 0; a < m; ++a) {
            std::uint64_t u = stabilize(a, m);
            CHECK(gcd_u64(u, m) == 1);
            CHECK(mulm(u, a, m) == gcd_u64(a == 0 ? m : a, m) % m);
            CHECK(additive_order(a, m) == m / gcd_u64(a == 0 ? m : a, m));
            if (gcd_u64(a, m) == 1 && a != 0) CHECK(mulm(modinv(a, m), a, m) == 1);
        }
    }
    std::int64_t x, y;
    CHECK(xgcd(12, 18, x, y) == 6);
    CHECK(12 * x + 18 * y == 6);
}

TEST_CASE("howell form of [[2,1]] over Z/4") {
    ResidueMatrix a(4, {{2, 1}});
    ResidueMatrix h = howell_basis(a);
    REQUIRE(h.rows() == 2);
    CHECK(h == ResidueMatrix(4, {{2, 1}, {0, 2}}));

    std::set<Row> span = brute_span(a);
    std::set<Row> expect = {{0, 0}, {2, 1}, {0, 2}, {2, 3}};
    CHECK(span == expect);
    CHECK(brute_span(h) == expect);
    CHECK(row_span_order(h) == OrderCount::of(4));
}

TEST_CASE("kernel of [[2]] over Z/4") {
    ResidueMatrix a(4, {{2}});
    ResidueMatrix k = kernel(a);
    std::set<Row> got = brute_span(k);
    std::set<Row> expect = {{0}, {2}};
    CHECK(got == expect);
}

TEST_CASE("howell form: exhaustive one-row and two-row matrices, small moduli") {
    for (std::uint64_t m : {2ull, 3ull, 4ull, 6ull}) {
        for (const auto& v : all_vectors(m, 2)) {
            ResidueMatrix a = ResidueMatrix::from_rows(m, {v}, 2);
            ResidueMatrix h = howell_basis(a);
            check_howell_shape(h);
            CHECK(brute_span(h) == brute_span(a));
            CHECK(howell_basis(h) == h);
        }
        for (const auto& v : all_vectors(m, 2))
            for (const auto& w : all_vectors(m, 2)) {
                ResidueMatrix a = ResidueMatrix::from_rows(m, {v, w}, 2);
                ResidueMatrix h = howell_basis(a);
                check_howell_shape(h);
                auto span = brute_span(a);
                CHECK(brute_span(h) == span);
                CHECK(row_span_order(h).as_u64() == span.size());
            }
    }
}

TEST_CASE("howell form is canonical: any generating set of the span gives the same basis") {
    std::mt19937_64 rng(20240817);
    for (std::uint64_t m : {4ull, 6ull, 8ull, 9ull, 12ull}) {
        for (int trial = 0; trial < 40; ++trial) {
            ResidueMatrix a = random_matrix(rng, m, 2, 3);
            ResidueMatrix h = howell_basis(a);
            auto span = brute_span(a);
            // resample generators from the span until they regenerate it
            std::vector<Row> pool(span.begin(), span.end());
            for (int inner = 0; inner < 20; ++inner) {
                std::vector<Row> gens;
                for (int g = 0; g < 4; ++g) gens.push_back(pool[rng() % pool.size()]);
                ResidueMatrix b = ResidueMatrix::from_rows(m, gens, 3);
                if (brute_span(b) != span) continue;
                CHECK(howell_basis(b) == h);
            }
        }
    }
}

TEST_CASE("transform satisfies t * a == h") {
    std::mt19937_64 rng(99);
    for (std::uint64_t m : {2ull, 4ull, 6ull, 9ull, 12ull}) {
        for (int trial = 0; trial < 60; ++trial) {
            ResidueMatrix a = random_matrix(rng, m, 1 + rng() % 3, 1 + rng() % 3);
            HowellForm f = howell_form(a);
            CHECK(f.t * a == f.h);
            CHECK(f.h == howell_basis(a));
        }
    }
}

TEST_CASE("kernel matches brute force") {
    std::mt19937_64 rng(7);
    for (std::uint64_t m : {2ull, 3ull, 4ull, 6ull, 8ull}) {
        for (int trial = 0; trial < 60; ++trial) {
            ResidueMatrix a = random_matrix(rng, m, 1 + rng() % 3, 1 + rng() % 2);
            ResidueMatrix k = kernel(a);
            CHECK(brute_span(k) == brute_kernel(a));
            for (std::size_t i = 0; i < k.rows(); ++i)
                CHECK(row_is_zero(vec_mat(k.row(i), a)));
        }
    }
}

TEST_CASE("solve_row finds a preimage exactly when one exists") {
    std::mt19937_64 rng(13);
    for (std::uint64_t m : {2ull, 4ull, 6ull, 9ull}) {
        for (int trial = 0; trial < 25; ++trial) {
            ResidueMatrix a = random_matrix(rng, m, 1 + rng() % 3, 2);
            RowSolver solver(a);
            std::set<Row> image;
            for (const auto& x : all_vectors(m, a.rows())) image.insert(vec_mat(x, a));
            for (const auto& b : all_vectors(m, 2)) {
                auto x = solver.solve(b);
                if (image.count(b)) {
                    REQUIRE(x.has_value());
                    CHECK(vec_mat(*x, a) == b);
                } else {
                    CHECK_FALSE(x.has_value());
                }
            }
        }
    }
}

TEST_CASE("canonical_rep is a coset invariant and detects membership") {
    std::mt19937_64 rng(31);
    for (std::uint64_t m : {4ull, 6ull, 8ull}) {
        for (int trial = 0; trial < 25; ++trial) {
            ResidueMatrix a = random_matrix(rng, m, 2, 2);
            ResidueMatrix h = howell_basis(a);
            auto span = brute_span(a);
            for (const auto& v : all_vectors(m, 2)) {
                Row rep = canonical_rep(h, v);
                CHECK(in_span(h, row_sub(v, rep, m)));
                CHECK(in_span(h, v) == (span.count(v) > 0));
                // same coset, same representative
                for (const auto& u : span)
                    CHECK(canonical_rep(h, row_add(v, u, m)) == rep);
            }
        }
    }
}

TEST_CASE("row_span_order counts the span without enumerating it") {
    std::mt19937_64 rng(47);
    for (std::uint64_t m : {2ull, 3ull, 4ull, 6ull, 12ull}) {
        for (int trial = 0; trial < 40; ++trial) {
            ResidueMatrix a = random_matrix(rng, m, 1 + rng() % 3, 1 + rng() % 3);
            ResidueMatrix h = howell_basis(a);
            CHECK(row_span_order(h).as_u64() == brute_span(a).size());
        }
    }
}

TEST_CASE("enumerate_span lists each span element exactly once") {
    std::mt19937_64 rng(53);
    for (std::uint64_t m : {4ull, 6ull, 9ull}) {
        for (int trial = 0; trial < 20; ++trial) {
            ResidueMatrix h = howell_basis(random_matrix(rng, m, 2, 3));
            auto listed = enumerate_span(h, 1u << 20);
            std::set<Row> s(listed.begin(), listed.end());
            CHECK(s.size() == listed.size());
            CHECK(s == brute_span(h));
        }
    }
    ResidueMatrix big(16, {{1, 0}, {0, 1}});
    CHECK_THROWS_AS(enumerate_span(big, 100), CapExceeded);
}

TEST_CASE("enumerate_cosets yields every canonical representative once") {
    std::mt19937_64 rng(61);
    for (std::uint64_t m : {4ull, 6ull}) {
        for (int trial = 0; trial < 20; ++trial) {
            ResidueMatrix h = howell_basis(random_matrix(rng, m, 2, 2));
            auto reps = enumerate_cosets(2, h, 1u << 20);
            std::set<Row> c(reps.begin(), reps.end());
            CHECK(c.size() == reps.size());
            CHECK(c.size() * brute_span(h).size() == static_cast<std::size_t>(m * m));
            for (const auto& r : reps) CHECK(canonical_rep(h, r) == r);
            // every vector lands on a listed representative
            for (const auto& v : all_vectors(m, 2)) CHECK(c.count(canonical_rep(h, v)));
        }
    }
}

TEST_CASE("span_add and spans_equal") {
    ResidueMatrix a(6, {{2, 0}});
    ResidueMatrix b(6, {{0, 3}});
    ResidueMatrix s = span_add(a, b);
    CHECK(brute_span(s) == brute_span(ResidueMatrix(6, {{2, 0}, {0, 3}})));
    CHECK(spans_equal(s, ResidueMatrix(6, {{4, 0}, {0, 3}, {2, 3}})));
    CHECK_FALSE(spans_equal(a, b));
}

TEST_CASE("kernel_mod: preimages of a span") {
    std::mt19937_64 rng(71);
    for (std::uint64_t m : {4ull, 6ull}) {
        for (int trial = 0; trial < 25; ++trial) {
            ResidueMatrix a = random_matrix(rng, m, 2, 2);
            ResidueMatrix w = random_matrix(rng, m, 1, 2);
            ResidueMatrix k = kernel_mod(a, w);
            auto wspan = brute_span(w);
            std::set<Row> expect;
            for (const auto& x : all_vectors(m, 2))
                if (wspan.count(vec_mat(x, a))) expect.insert(x);
            CHECK(brute_span(k) == expect);
        }
    }
}

TEST_CASE("solve_mod: solve up to a span") {
    std::mt19937_64 rng(73);
    for (std::uint64_t m : {4ull, 6ull}) {
        for (int trial = 0; trial < 25; ++trial) {
            ResidueMatrix a = random_matrix(rng, m, 2, 2);
            ResidueMatrix w = random_matrix(rng, m, 1, 2);
            auto wspan = brute_span(w);
            for (const auto& b : all_vectors(m, 2)) {
                bool expect = false;
                for (const auto& x : all_vectors(m, 2))
                    if (wspan.count(row_sub(vec_mat(x, a), b, m))) expect = true;
                auto x = solve_mod(a, w, b);
                CHECK(x.has_value() == expect);
                if (x) CHECK(wspan.count(row_sub(vec_mat(*x, a), b, m)));
            }
        }
    }
}

TEST_CASE("cochecker turns membership into a linear condition") {
    std::mt19937_64 rng(83);
    for (std::uint64_t m : {4ull, 6ull, 8ull}) {
        for (int trial = 0; trial < 25; ++trial) {
            ResidueMatrix u = random_matrix(rng, m, 1 + rng() % 2, 2);
            ResidueMatrix c = cochecker(u);
            auto span = brute_span(u);
            for (const auto& v : all_vectors(m, 2)) {
                bool zero = row_is_zero(vec_mat(v, c.transpose()));
                CHECK(zero == (span.count(v) > 0));
            }
        }
    }
}

TEST_CASE("empty and degenerate spans behave") {
    ResidueMatrix none(6, 0, 3);
    CHECK(howell_basis(none).rows() == 0);
    CHECK(row_span_order(none).is_one());
    CHECK(in_span(none, {0, 0, 0}));
    CHECK_FALSE(in_span(none, {0, 1, 0}));
    CHECK(enumerate_span(none, 10).size() == 1);
    CHECK(enumerate_cosets(3, none, 1000).size() == 216);
    ResidueMatrix c = cochecker(none);
    // only the zero vector passes the membership condition
    CHECK(row_is_zero(vec_mat({0, 0, 0}, c.transpose())));
    CHECK_FALSE(row_is_zero(vec_mat({1, 0, 0}, c.transpose())));
}
