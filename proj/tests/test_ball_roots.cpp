#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tordep/ball.hpp"
#include "tordep/roots.hpp"

using namespace tordep;

namespace {
IntPoly poly(std::initializer_list<long> coeffs) {
    std::vector<Int> c;
    for (long x : coeffs) c.emplace_back(x);
    return IntPoly(std::move(c));
}
}  // namespace

TEST_CASE("ball arithmetic soundness on random expressions") {
    // exact complex rational points, perturbed into balls; the exact value
    // must stay inside the computed ball through arbitrary op chains
    std::mt19937 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        auto rq = [&]() {
            return Rat(static_cast<long>(rng() % 41) - 20, 1 + static_cast<long>(rng() % 7));
        };
        Rat ar = rq(), ai = rq(), br = rq(), bi = rq();
        Ball a(ar, ai, Rat(1, 1000));
        Ball b(br, bi, Rat(1, 500));
        Ball sum = a + b, prod = a * b;
        CHECK(sum.contains(ar + br, ai + bi));
        CHECK(prod.contains(ar * br - ai * bi, ar * bi + ai * br));
        if (!b.contains_zero() && b.abs_lower() > 0) {
            Ball binv = b.inv();
            Rat n = br * br + bi * bi;
            CHECK(binv.contains(br / n, -bi / n));
        }
    }
}

TEST_CASE("ball sqrt covers true square roots") {
    // ball around -2i with both square roots +/-(1-i)
    Ball b(Rat(0), Rat(-2), Rat(1, 100));
    auto [p, m] = b.sqrt_both(128);
    bool plus_has = p.contains(Rat(1), Rat(-1)) || m.contains(Rat(1), Rat(-1));
    bool minus_has = p.contains(Rat(-1), Rat(1)) || m.contains(Rat(-1), Rat(1));
    CHECK(plus_has);
    CHECK(minus_has);
    // ball straddling the negative real axis must still be covered soundly
    Ball c(Rat(-4), Rat(1, 1000000), Rat(1, 100));
    auto [p2, m2] = c.sqrt_both(128);
    // true sqrt of -4 + eps*i is ~ (eps/4) + 2i
    bool covered = p2.contains(Rat(1, 8000000), Rat(2)) || m2.contains(Rat(1, 8000000), Rat(2));
    // allow tiny deviation: check with intersects against a small ball
    Ball truth(Rat(1, 8000000), Rat(2), Rat(1, 1000));
    covered = covered || !p2.disjoint(truth) || !m2.disjoint(truth);
    CHECK(covered);
}

TEST_CASE("isolate sqrt(2)") {
    auto roots = isolate_roots(poly({-2, 0, 1}), 64);
    REQUIRE(roots.size() == 2);
    // sorted by real part: -sqrt2 then +sqrt2
    CHECK(roots[0].re < 0);
    CHECK(roots[1].re > 0);
    Rat s2_lo(1414213562, 1000000000), s2_hi(1414213563, 1000000000);
    CHECK(roots[1].re - roots[1].rad <= s2_hi);
    CHECK(roots[1].re + roots[1].rad >= s2_lo);
    for (auto& r : roots) {
        Int sc(1);
        mpz_mul_2exp(sc.get_mpz_t(), sc.get_mpz_t(), 32);
        CHECK(r.rad <= Rat(1, sc));
    }
}

TEST_CASE("isolate linear") {
    auto roots = isolate_roots(poly({-5, 1}), 64);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].contains(Rat(5), Rat(0)));
}

TEST_CASE("isolate cyclotomic Phi_5: four roots on unit circle") {
    auto roots = isolate_roots(cyclotomic(5), 96);
    REQUIRE(roots.size() == 4);
    for (auto& r : roots) {
        CHECK(r.abs_upper() >= 1);
        CHECK(r.abs_lower() <= 1);
        // |root| = 1 within ball tolerance
        Rat width = r.abs_upper() - r.abs_lower();
        CHECK(width <= Rat(1, 1000000));
    }
    // pairwise disjoint
    for (size_t i = 0; i < roots.size(); ++i)
        for (size_t j = i + 1; j < roots.size(); ++j) CHECK(roots[i].disjoint(roots[j]));
}

TEST_CASE("isolate high-degree product with close roots") {
    // (x^2-2)(x^2-3)(x^4+1)(x-1)(x+1): squarefree, degree 10
    IntPoly f = poly({-2, 0, 1}) * poly({-3, 0, 1}) * poly({1, 0, 0, 0, 1}) *
                poly({-1, 1}) * poly({1, 1});
    auto roots = isolate_roots(f, 64);
    CHECK(roots.size() == 10);
    // exact rational roots present
    bool saw_one = false, saw_neg = false;
    for (auto& r : roots) {
        if (r.contains(Rat(1), Rat(0))) saw_one = true;
        if (r.contains(Rat(-1), Rat(0))) saw_neg = true;
    }
    CHECK(saw_one);
    CHECK(saw_neg);
}

TEST_CASE("eval_ball contains exact value") {
    IntPoly f = poly({3, -2, 0, 7});
    Ball z(Rat(1, 3), Rat(-2, 5), Rat(1, 1000));
    Ball v = eval_ball(f, z);
    Ball ve = eval_exact(f, Rat(1, 3), Rat(-2, 5));
    CHECK(v.contains(ve.re, ve.im));
}
