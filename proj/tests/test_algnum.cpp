#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tordep/algnum.hpp"
#include "tordep/factor.hpp"

using namespace tordep;

namespace {
IntPoly poly(std::initializer_list<long> coeffs) {
    std::vector<Int> c;
    for (long x : coeffs) c.emplace_back(x);
    return IntPoly(std::move(c));
}

AlgebraicNumber sqrt2() {
    return an_sqrt(AlgebraicNumber::from_int(2), Ball(Rat(3, 2), Rat(0), Rat(1, 2)));
}
}  // namespace

TEST_CASE("an_from_rational minimal polynomials") {
    CHECK(an_from_rational(Rat(1)).minpoly() == poly({-1, 1}));
    CHECK(an_from_rational(Rat(-1)).minpoly() == poly({1, 1}));
    CHECK(an_from_rational(Rat(2, 3)).minpoly() == poly({-2, 3}));
}

TEST_CASE("arithmetic: spec examples") {
    AlgebraicNumber s2 = sqrt2();
    CHECK(s2.minpoly() == poly({-2, 0, 1}));
    // sqrt2 + (-sqrt2) = 0
    CHECK(an_add(s2, an_neg(s2)).is_zero());
    // sqrt2 * sqrt2 = 2
    AlgebraicNumber prod = an_mul(s2, s2);
    CHECK(prod.minpoly() == poly({-2, 1}));
    CHECK(an_equals(prod, AlgebraicNumber::from_int(2)));
    // an_inv(2) = 1/2 with minpoly 2X-1
    CHECK(an_inv(AlgebraicNumber::from_int(2)).minpoly() == poly({-1, 2}));
    CHECK_THROWS(an_inv(AlgebraicNumber::from_int(0)));
}

TEST_CASE("an_equals spec cases") {
    AlgebraicNumber s2 = sqrt2();
    // sqrt2 reconstructed as 2 * inv(sqrt2)
    AlgebraicNumber rec = an_mul(AlgebraicNumber::from_int(2), an_inv(s2));
    CHECK(an_equals(s2, rec));
    CHECK(!an_equals(s2, an_neg(s2)));
    CHECK(an_equals(AlgebraicNumber::from_int(1), an_from_rational(Rat(1))));
}

TEST_CASE("an_equals is an equivalence; exact inverse/negation laws") {
    std::mt19937 rng(7);
    std::vector<AlgebraicNumber> corpus;
    AlgebraicNumber s2 = sqrt2();
    for (int i = 0; i < 6; ++i) {
        Rat q(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 5));
        AlgebraicNumber v = an_add(an_mul(s2, an_from_rational(q)),
                                   an_from_rational(Rat(static_cast<long>(rng() % 7))));
        corpus.push_back(v);
        corpus.push_back(an_from_rational(q));
    }
    for (auto& a : corpus) {
        CHECK(an_equals(a, a));  // reflexive
        CHECK(an_add(a, an_neg(a)).is_zero());
        if (!a.is_zero()) {
            CHECK(an_equals(an_mul(a, an_inv(a)), AlgebraicNumber::from_int(1)));
        }
    }
    // symmetry + transitivity spot check
    AlgebraicNumber x = an_add(s2, AlgebraicNumber::from_int(1));
    AlgebraicNumber y = an_add(AlgebraicNumber::from_int(1), s2);
    AlgebraicNumber z = an_mul(an_add(an_inv(s2), an_inv(s2)), an_inv(an_mul(s2, an_inv(s2))));
    // z = 2/sqrt2 = sqrt2; x = y
    CHECK(an_equals(x, y));
    CHECK(an_equals(y, x));
    CHECK(an_equals(z, s2));
    CHECK(an_equals(an_add(z, AlgebraicNumber::from_int(1)), x));
}

TEST_CASE("degree bound for sums") {
    AlgebraicNumber s2 = sqrt2();
    AlgebraicNumber s3 = an_sqrt(AlgebraicNumber::from_int(3), Ball(Rat(7, 4), Rat(0), Rat(1, 4)));
    AlgebraicNumber sum = an_add(s2, s3);
    CHECK(sum.degree() <= s2.degree() * s3.degree());
    CHECK(sum.degree() == 4);  // sqrt2 + sqrt3 generates a degree-4 field
}

TEST_CASE("conjugates: spec examples") {
    AlgebraicNumber s2 = sqrt2();
    auto cs = conjugates(s2, 64);
    REQUIRE(cs.size() == 2);
    CHECK(cs[0].contains(Rat(-14142135624, 10000000000), Rat(0)) == false);  // tight balls
    // near +-1.41421356...
    CHECK(cs[0].re < Rat(-14, 10));
    CHECK(cs[1].re > Rat(14, 10));
    auto one = conjugates(AlgebraicNumber::from_int(5), 64);
    REQUIRE(one.size() == 1);
    CHECK(one[0].contains(Rat(5), Rat(0)));
    // Phi_5: four balls on the unit circle
    auto r5 = isolate_roots(cyclotomic(5), 64);
    AlgebraicNumber z5 = AlgebraicNumber::make(cyclotomic(5), r5[0]);
    auto cz = conjugates(z5, 80);
    REQUIRE(cz.size() == 4);
    for (auto& b : cz) {
        CHECK(b.abs_lower() <= 1);
        CHECK(b.abs_upper() >= 1);
    }
    CHECK_THROWS(conjugates(s2, 16));  // precision >= 32 required
}

TEST_CASE("weil_height: pinned values") {
    // h(1) = 0 exactly
    auto h1 = weil_height(AlgebraicNumber::from_int(1));
    CHECK(h1.lower == 0);
    CHECK(h1.upper == 0);
    // h(2) encloses log 2, tight
    auto h2 = weil_height(AlgebraicNumber::from_int(2), Rat(1, Int(1) << 40));
    Rat log2_lo = log_lower(Rat(2), 128), log2_hi = log_upper(Rat(2), 128);
    CHECK(h2.lower <= log2_hi);
    CHECK(h2.upper >= log2_lo);
    CHECK(h2.width() <= Rat(1, Int(1) << 40));
    // golden ratio: minpoly x^2-x-1, Mahler measure phi (one conjugate inside
    // the unit disc), so h = log(phi)/2 ~ 0.2406059125 and d*h = log(phi) ~
    // 0.4812118250
    AlgebraicNumber golden = AlgebraicNumber::validated(
        poly({-1, -1, 1}), Ball(Rat(1618, 1000), Rat(0), Rat(1, 100)));
    auto hg = weil_height(golden);
    Rat half_logphi(2406059125298016, Int("10000000000000000"));
    CHECK(hg.lower <= half_logphi + Rat(1, 1000000000));
    CHECK(hg.upper >= half_logphi - Rat(1, 1000000000));
    Rat logphi = half_logphi * 2;
    CHECK(hg.lower * 2 <= logphi + Rat(1, 1000000000));
    CHECK(hg.upper * 2 >= logphi - Rat(1, 1000000000));
    // h(zeta_m) = 0 for all m <= 30
    for (std::uint64_t m = 1; m <= 30; ++m) {
        auto rb = isolate_roots(cyclotomic(m), 64);
        AlgebraicNumber z = AlgebraicNumber::make(cyclotomic(m), rb[0]);
        auto h = weil_height(z);
        CHECK(h.encloses_zero());
        CHECK(h.upper == 0);
    }
}

TEST_CASE("weil_height: h(inv) = h and subadditivity on random pairs") {
    std::mt19937 rng(2024);
    AlgebraicNumber s2 = sqrt2();
    for (int trial = 0; trial < 40; ++trial) {
        Rat qa(static_cast<long>(rng() % 39) - 19, 1 + static_cast<long>(rng() % 9));
        Rat qb(static_cast<long>(rng() % 39) - 19, 1 + static_cast<long>(rng() % 9));
        if (qa == 0 || qb == 0) continue;
        AlgebraicNumber a = an_add(s2, an_from_rational(qa));
        AlgebraicNumber b = an_from_rational(qb);
        auto ha = weil_height(a), hb = weil_height(b);
        auto hab = weil_height(an_mul(a, b));
        // subadditivity, enclosure-safe: lower(ab) <= upper(a) + upper(b)
        CHECK(hab.lower <= ha.upper + hb.upper);
        auto hinv = weil_height(an_inv(a));
        CHECK(hinv.lower <= ha.upper);
        CHECK(hinv.upper >= ha.lower);
    }
}

TEST_CASE("is_root_of_unity: exact orders for all m <= 30") {
    for (std::uint64_t m = 1; m <= 30; ++m) {
        const IntPoly& phi = cyclotomic(m);
        auto rb = isolate_roots(phi, 64);
        for (auto& ball : rb) {
            AlgebraicNumber z = AlgebraicNumber::make(phi, ball);
            auto ord = is_root_of_unity(z);
            REQUIRE(ord.has_value());
            CHECK(*ord == m);
            break;  // one root per m is enough here
        }
    }
    CHECK(*is_root_of_unity(AlgebraicNumber::from_int(1)) == 1);
    CHECK(*is_root_of_unity(AlgebraicNumber::from_int(-1)) == 2);
    CHECK(!is_root_of_unity(AlgebraicNumber::from_int(2)).has_value());
    CHECK(!is_root_of_unity(AlgebraicNumber::from_int(0)).has_value());
    CHECK(!is_root_of_unity(sqrt2()).has_value());
}

TEST_CASE("is_root_of_unity: non-cyclotomic monic irreducibles refused") {
    // Selmer family x^d - x - 1 is irreducible and never cyclotomic
    for (int d = 2; d <= 12; ++d) {
        std::vector<Int> c(d + 1, Int(0));
        c[0] = -1;
        c[1] = -1;
        c[d] = 1;
        IntPoly f(std::move(c));
        auto rb = isolate_roots(f, 64);
        AlgebraicNumber a = AlgebraicNumber::make(f, rb[0]);
        CHECK(!is_root_of_unity(a).has_value());
    }
}

TEST_CASE("an_sqrt: spec examples") {
    // sqrt(4) with positive hint = 2
    AlgebraicNumber r = an_sqrt(AlgebraicNumber::from_int(4), Ball(Rat(2), Rat(0), Rat(1, 2)));
    CHECK(an_equals(r, AlgebraicNumber::from_int(2)));
    // sqrt(2) positive
    AlgebraicNumber s = an_sqrt(AlgebraicNumber::from_int(2), Ball(Rat(3, 2), Rat(0), Rat(1, 2)));
    CHECK(s.minpoly() == poly({-2, 0, 1}));
    CHECK(s.isolator().re > 0);
    // sqrt(-2i) with hint near 1-i equals 1-i
    AlgebraicNumber minus2i = AlgebraicNumber::validated(
        poly({4, 0, 1}), Ball(Rat(0), Rat(-2), Rat(1, 10)));  // roots +-2i
    AlgebraicNumber root = an_sqrt(minus2i, Ball(Rat(1), Rat(-1), Rat(1, 2)));
    // (1-i)^2 = -2i; minpoly of 1-i is x^2 - 2x + 2
    CHECK(root.minpoly() == poly({2, -2, 1}));
    CHECK(root.isolator().contains(Rat(1), Rat(-1)));
    // ambiguous hint rejected
    CHECK_THROWS_AS(an_sqrt(AlgebraicNumber::from_int(4), Ball(Rat(0), Rat(0), Rat(5))),
                    std::invalid_argument);
}

TEST_CASE("validated constructor enforces invariants") {
    CHECK_THROWS_AS(AlgebraicNumber::validated(poly({-1, 0, 1}), Ball(Rat(1), Rat(0), Rat(1, 4))),
                    std::invalid_argument);  // x^2-1 reducible
    CHECK_THROWS_AS(AlgebraicNumber::validated(poly({-2, 0, 1}), Ball(Rat(10), Rat(0), Rat(1, 4))),
                    std::invalid_argument);  // no root inside
    auto ok = AlgebraicNumber::validated(poly({-2, 0, 1}), Ball(Rat(14, 10), Rat(0), Rat(1, 10)));
    CHECK(ok.degree() == 2);
}

TEST_CASE("ball soundness: exact ops vs ball arithmetic") {
    AlgebraicNumber s2 = sqrt2();
    AlgebraicNumber expr = an_add(an_mul(s2, s2), an_mul(an_from_rational(Rat(3, 7)), s2));
    // evaluate the same expression purely in ball arithmetic
    Ball bs2 = s2.refined(128);
    Ball direct = bs2 * bs2 + Ball::exact(Rat(3, 7)) * bs2;
    Ball exact_ball = expr.refined(128);
    CHECK(!direct.disjoint(exact_ball));
}
