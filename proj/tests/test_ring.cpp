/**
 * @file test_ring.cpp
 * @copyright Apache License 2.0
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sgmod/errors.hpp"
#include "sgmod/finite_ring.hpp"
#include "sgmod/groebner.hpp"
#include "sgmod/howell.hpp"
#include "sgmod/polynomial.hpp"

#include <algorithm>
#include <set>
#include <vector>

using namespace sgmod;

namespace {

constexpr std::uint64_t kCap = 1u << 16;

// Power-by-power nilpotency check, independent of the repeated squaring in
// the library.
bool brute_nilpotent(const FiniteRing& r, const Row& x) {
    Row s = x;
    const std::uint64_t n = r.order().as_u64();
    for (std::uint64_t i = 1; i <= n; ++i) {
        if (row_is_zero(s)) return true;
        s = r.mul(s, x);
    }
    return row_is_zero(s);
}

ResidueMatrix brute_radical(const FiniteRing& r) {
    std::vector<Row> nil;
    for (const Row& x : r.elements(kCap))
        if (brute_nilpotent(r, x)) nil.push_back(x);
    return howell_basis(ResidueMatrix::from_rows(r.characteristic(), nil, r.rank()));
}

ResidueMatrix brute_socle(const FiniteRing& r) {
    std::vector<Row> ann;
    std::vector<Row> nil;
    for (const Row& x : r.elements(kCap))
        if (brute_nilpotent(r, x)) nil.push_back(x);
    for (const Row& x : r.elements(kCap)) {
        bool kills = true;
        for (const Row& j : nil)
            if (!row_is_zero(r.mul(x, j))) {
                kills = false;
                break;
            }
        if (kills) ann.push_back(x);
    }
    return howell_basis(ResidueMatrix::from_rows(r.characteristic(), ann, r.rank()));
}

RingPtr quotient_ring(std::uint64_t p, const std::vector<std::string>& vars,
                      const std::vector<std::string>& gens) {
    std::vector<Polynomial> ps;
    for (const auto& s : gens) ps.push_back(parse_polynomial(s, p, vars));
    return build_ring(buchberger(ps));
}

} // namespace

TEST_CASE("modular integers as rings") {
    for (std::uint64_t n : {2, 3, 4, 6, 8, 9, 12}) {
        auto r = ring_from_modulus(n);
        CHECK(r->characteristic() == n);
        CHECK(r->rank() == 1);
        CHECK(r->order() == OrderCount::of(n));
        CHECK(r->mul(Row{n - 1}, Row{n - 1}) == Row{(n - 1) * (n - 1) % n});
        CHECK(r->elements(kCap).size() == n);
    }
    CHECK_THROWS_AS(ring_from_modulus(1), InvalidInput);
    CHECK_THROWS_AS(ring_from_modulus(0), InvalidInput);
}

TEST_CASE("create rejects non-rings") {
    // b*b = 2b has no identity when the only candidate is the basis itself.
    CHECK_THROWS_AS(FiniteRing::create(4, {"b"}, {Row{2}}, Row{1}), InvalidInput);
    // Non-commutative table.
    CHECK_THROWS_AS(FiniteRing::create(2, {"1", "t"},
                                       {Row{1, 0}, Row{0, 1}, Row{1, 0}, Row{0, 0}}, Row{1, 0}),
                    InvalidInput);
    // Wrong table size.
    CHECK_THROWS_AS(FiniteRing::create(2, {"1", "t"}, {Row{1, 0}}, Row{1, 0}), InvalidInput);
}

TEST_CASE("element enumeration respects the cap") {
    CHECK_THROWS_AS(ring_from_modulus(7)->elements(5), CapExceeded);
    CHECK_NOTHROW(ring_from_modulus(7)->elements(7));
}

TEST_CASE("nilradical matches brute force") {
    std::vector<RingPtr> rings;
    for (std::uint64_t n : {2, 3, 4, 6, 8, 9, 12, 16, 18}) rings.push_back(ring_from_modulus(n));
    rings.push_back(quotient_ring(2, {"x"}, {"x^4"}));
    rings.push_back(quotient_ring(2, {"x", "y"}, {"x^2", "y^2"}));
    rings.push_back(quotient_ring(2, {"x", "y"}, {"x^2", "x*y", "y^2"}));
    rings.push_back(quotient_ring(3, {"x"}, {"x^2"}));
    rings.push_back(ring_product(ring_from_modulus(4), ring_from_modulus(4)));
    for (const auto& r : rings) {
        CAPTURE(r->canonical_key());
        CHECK(r->nilradical(kCap) == brute_radical(*r));
        CHECK(r->socle_lattice(kCap) == brute_socle(*r));
    }
}

TEST_CASE("nilradical fixtures") {
    auto z4 = ring_from_modulus(4);
    CHECK(z4->nilradical(kCap) == ResidueMatrix(4, {{2}}));
    CHECK(row_span_order(z4->nilradical(kCap)) == OrderCount::of(2));

    auto z6 = ring_from_modulus(6);
    CHECK(z6->nilradical(kCap).rows() == 0);
    CHECK(z6->socle_lattice(kCap) == ResidueMatrix::identity(6, 1));

    // F2[x]/(x^4): radical (x), socle (x^3).
    auto r = quotient_ring(2, {"x"}, {"x^4"});
    CHECK(r->rank() == 4);
    CHECK(row_span_order(r->nilradical(kCap)) == OrderCount::of(8));
    CHECK(r->socle_lattice(kCap) == ResidueMatrix(2, {{0, 0, 0, 1}}));
}

TEST_CASE("socle fixtures for small local algebras") {
    // F2[x,y]/(x^2,y^2): basis 1, y, x, xy; socle is (xy), one dimensional.
    auto a = quotient_ring(2, {"x", "y"}, {"x^2", "y^2"});
    CHECK(a->rank() == 4);
    CHECK(a->labels() == std::vector<std::string>{"1", "y", "x", "x*y"});
    CHECK(a->socle_lattice(kCap) == ResidueMatrix(2, {{0, 0, 0, 1}}));

    // F2[x,y]/(x^2,xy,y^2): basis 1, y, x; socle is (x, y), two dimensional.
    auto b = quotient_ring(2, {"x", "y"}, {"x^2", "x*y", "y^2"});
    CHECK(b->rank() == 3);
    CHECK(b->socle_lattice(kCap) == ResidueMatrix(2, {{0, 1, 0}, {0, 0, 1}}));
    CHECK(row_span_order(b->socle_lattice(kCap)) == OrderCount::of(4));
}

TEST_CASE("idempotents and local decomposition of Z/6") {
    auto r = ring_from_modulus(6);
    std::vector<Row> idem;
    for (const Row& x : r->elements(kCap))
        if (r->mul(x, x) == x) idem.push_back(x);
    CHECK(idem == std::vector<Row>{{0}, {1}, {3}, {4}});

    const auto& dec = r->local_decomposition(kCap);
    REQUIRE(dec.factors.size() == 2);
    CHECK(dec.factors[0].idempotent == Row{3});
    CHECK(dec.factors[1].idempotent == Row{4});
    CHECK(dec.factors[0].ring->characteristic() == 2);
    CHECK(dec.factors[0].ring->rank() == 1);
    CHECK(dec.factors[1].ring->characteristic() == 3);
    CHECK(dec.factors[1].ring->rank() == 1);
    CHECK_FALSE(r->is_local(kCap));
}

TEST_CASE("local rings decompose as themselves") {
    for (auto r : {ring_from_modulus(4), ring_from_modulus(8), ring_from_modulus(9),
                   quotient_ring(2, {"x", "y"}, {"x^2", "y^2"})}) {
        const auto& dec = r->local_decomposition(kCap);
        REQUIRE(dec.factors.size() == 1);
        CHECK(dec.factors[0].ring.get() == r.get());
        CHECK(dec.factors[0].idempotent == r->identity());
        CHECK(r->is_local(kCap));
    }
}

TEST_CASE("product rings decompose into both sides") {
    auto r = ring_product(ring_from_modulus(4), ring_from_modulus(4));
    CHECK(r->rank() == 2);
    const auto& dec = r->local_decomposition(kCap);
    REQUIRE(dec.factors.size() == 2);
    for (const auto& f : dec.factors) {
        CHECK(f.ring->characteristic() == 4);
        CHECK(f.ring->rank() == 1);
        CHECK(f.ring->order() == OrderCount::of(4));
    }
    CHECK_FALSE(r->is_local(kCap));

    // Z/12 splits into characteristics 4 and 3.
    auto z12 = ring_from_modulus(12);
    const auto& d12 = z12->local_decomposition(kCap);
    REQUIRE(d12.factors.size() == 2);
    std::multiset<std::uint64_t> chars;
    for (const auto& f : d12.factors) chars.insert(f.ring->characteristic());
    CHECK(chars == std::multiset<std::uint64_t>{3, 4});
}

TEST_CASE("factor maps are ring homomorphisms and assemble a bijection") {
    std::vector<RingPtr> rings = {
        ring_from_modulus(6), ring_from_modulus(12), ring_from_modulus(30),
        ring_product(ring_from_modulus(4), ring_from_modulus(4)),
        ring_product(ring_from_modulus(2), quotient_ring(2, {"x"}, {"x^2"}))};
    for (const auto& r : rings) {
        CAPTURE(r->canonical_key());
        const auto& dec = r->local_decomposition(kCap);
        const auto elems = r->elements(kCap);

        for (const auto& f : dec.factors) {
            // Idempotent consistency: the factor identity lifts to e.
            CHECK(factor_to_parent(f, f.ring->identity()) == f.idempotent);
            // Round trip on every factor element.
            for (const Row& y : f.ring->elements(kCap))
                CHECK(parent_to_factor(f, factor_to_parent(f, y)) == y);
        }

        // Multiplicativity and additivity of each projection, and global
        // injectivity of the combined map.
        std::set<std::vector<Row>> images;
        for (const Row& x : elems) {
            std::vector<Row> tuple;
            for (const auto& f : dec.factors) tuple.push_back(parent_to_factor(f, x));
            images.insert(tuple);
        }
        CHECK(images.size() == elems.size());

        const std::size_t probe = std::min<std::size_t>(elems.size(), 12);
        for (std::size_t a = 0; a < probe; ++a)
            for (std::size_t b = 0; b < probe; ++b) {
                Row prod = r->mul(elems[a], elems[b]);
                for (const auto& f : dec.factors) {
                    CHECK(parent_to_factor(f, prod) ==
                          f.ring->mul(parent_to_factor(f, elems[a]), parent_to_factor(f, elems[b])));
                }
            }
    }
}

TEST_CASE("factor radical lifts into the parent") {
    auto r = ring_from_modulus(12);
    const auto& dec = r->local_decomposition(kCap);
    OrderCount prod = OrderCount::of(1);
    for (const auto& f : dec.factors) {
        auto lifted = factor_radical_in_parent(f, kCap);
        // Lifted radical elements are nilpotent in the parent.
        for (std::size_t i = 0; i < lifted.rows(); ++i) CHECK(r->is_nilpotent(lifted.row(i)));
        prod = prod.times(row_span_order(f.ring->nilradical(kCap)));
    }
    // Radicals multiply up to the parent radical: |J(R)| = prod |J(R_e)|.
    CHECK(row_span_order(r->nilradical(kCap)) == prod);
}

TEST_CASE("quasi-Frobenius classification of the reference rings") {
    CHECK(ring_from_modulus(4)->is_quasi_frobenius(kCap));
    CHECK(ring_from_modulus(6)->is_quasi_frobenius(kCap));
    CHECK(quotient_ring(2, {"x"}, {"x^4"})->is_quasi_frobenius(kCap));
    CHECK(quotient_ring(2, {"x", "y"}, {"x^2", "y^2"})->is_quasi_frobenius(kCap));
    CHECK_FALSE(quotient_ring(2, {"x", "y"}, {"x^2", "x*y", "y^2"})->is_quasi_frobenius(kCap));

    // A few more: fields and Z/n are always quasi-Frobenius.
    for (std::uint64_t n : {2, 3, 5, 8, 9, 12, 30}) CHECK(ring_from_modulus(n)->is_quasi_frobenius(kCap));
    // Products preserve the property; a defective factor breaks it.
    auto bad = quotient_ring(2, {"x", "y"}, {"x^2", "x*y", "y^2"});
    CHECK_FALSE(ring_product(ring_from_modulus(2), bad)->is_quasi_frobenius(kCap));
    CHECK(ring_product(ring_from_modulus(2), quotient_ring(2, {"x"}, {"x^2"}))
              ->is_quasi_frobenius(kCap));
}

TEST_CASE("quotient ring structure constants follow normal forms") {
    // F2[x,y]/(x^2+y, y^2): basis 1, y, x, xy and x*x reduces to y.
    auto r = quotient_ring(2, {"x", "y"}, {"x^2+y", "y^2"});
    REQUIRE(r->rank() == 4);
    CHECK(r->labels() == std::vector<std::string>{"1", "y", "x", "x*y"});
    CHECK(r->identity() == Row{1, 0, 0, 0});
    // x * x = y
    CHECK(r->mul(Row{0, 0, 1, 0}, Row{0, 0, 1, 0}) == Row{0, 1, 0, 0});
    // x * y = xy, y * y = 0
    CHECK(r->mul(Row{0, 0, 1, 0}, Row{0, 1, 0, 0}) == Row{0, 0, 0, 1});
    CHECK(r->mul(Row{0, 1, 0, 0}, Row{0, 1, 0, 0}) == Row{0, 0, 0, 0});
    // x * xy = x^2 y = y^2 = 0
    CHECK(r->mul(Row{0, 0, 1, 0}, Row{0, 0, 0, 1}) == Row{0, 0, 0, 0});

    CHECK_THROWS_AS(quotient_ring(2, {"x", "y"}, {"x^2"}), NotZeroDimensional);
    CHECK_THROWS_AS(quotient_ring(2, {"x"}, {"x+1", "x"}), InvalidInput);
}

TEST_CASE("ring product demands matching characteristic") {
    CHECK_THROWS_AS(ring_product(ring_from_modulus(2), ring_from_modulus(3)), InvalidInput);
    auto r = ring_product(ring_from_modulus(4), ring_from_modulus(4));
    CHECK(r->characteristic() == 4);
    CHECK(r->identity() == Row{1, 1});
    CHECK(r->mul(Row{1, 0}, Row{0, 1}) == Row{0, 0});
    CHECK(r->order() == OrderCount::of(16));
}

TEST_CASE("structural equality ignores labels") {
    auto a = ring_from_modulus(4);
    auto b = FiniteRing::create(4, {"u"}, {Row{1}}, Row{1});
    CHECK(structurally_equal(*a, *b));
    CHECK_FALSE(structurally_equal(*a, *ring_from_modulus(6)));
    CHECK_FALSE(structurally_equal(*a, *ring_product(a, a)));
}

TEST_CASE("element printing") {
    auto r = quotient_ring(2, {"x"}, {"x^3"});
    CHECK(r->element_str(Row{0, 0, 0}) == "0");
    CHECK(r->element_str(Row{1, 0, 0}) == "1");
    CHECK(r->element_str(Row{0, 1, 0}) == "x");
    CHECK(r->element_str(Row{1, 1, 1}) == "1 + x + x^2");
    auto z9 = ring_from_modulus(9);
    CHECK(z9->element_str(Row{7}) == "7");
}

TEST_CASE("powers") {
    auto r = quotient_ring(2, {"x"}, {"x^4"});
    Row x{0, 1, 0, 0};
    CHECK(r->pow(x, 0) == r->identity());
    CHECK(r->pow(x, 3) == Row{0, 0, 0, 1});
    CHECK(r->pow(x, 4) == Row{0, 0, 0, 0});
    CHECK(r->is_nilpotent(x));
    CHECK_FALSE(r->is_nilpotent(r->identity()));
}
