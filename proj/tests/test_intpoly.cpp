#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tordep/factor.hpp"
#include "tordep/int_poly.hpp"
#include "tordep/zp_poly.hpp"

using namespace tordep;

namespace {

IntPoly poly(std::initializer_list<long> coeffs) {
    std::vector<Int> c;
    for (long x : coeffs) c.emplace_back(x);
    return IntPoly(std::move(c));
}

}  // namespace

TEST_CASE("basic arithmetic") {
    IntPoly f = poly({-2, 0, 1});  // x^2 - 2
    IntPoly g = poly({1, 1});      // x + 1
    CHECK((f + g) == poly({-1, 1, 1}));
    CHECK((f - g) == poly({-3, -1, 1}));
    CHECK((f * g) == poly({-2, -2, 1, 1}));
    CHECK(f.eval(Int(3)) == 7);
    CHECK(f.derivative() == poly({0, 2}));
    CHECK((f * g).divexact(g) == f);
}

TEST_CASE("shift, reverse, scale") {
    IntPoly f = poly({-2, 0, 1});
    CHECK(f.shift(Int(1)) == poly({-1, 2, 1}));  // (x+1)^2 - 2
    CHECK(f.reverse() == poly({1, 0, -2}));
    CHECK(poly({1, 2, 3}).scale_num(Int(2)) == poly({1, 4, 12}));
    CHECK(f.compose_xk(2) == poly({-2, 0, 0, 0, 1}));
}

TEST_CASE("compose_linear_sub expands f(X - tY)") {
    // f = x^2: f(X - 2Y) = X^2 - 4XY + 4Y^2
    IntPoly f = poly({0, 0, 1});
    auto c = f.compose_linear_sub(Int(2));
    REQUIRE(c.size() == 3);
    CHECK(c[0] == poly({0, 0, 1}));
    CHECK(c[1] == poly({0, -4}));
    CHECK(c[2] == poly({4}));
}

TEST_CASE("gcd over Z") {
    IntPoly f = poly({-2, 0, 1});
    IntPoly g = poly({1, 1});
    IntPoly h = f * g;
    CHECK(IntPoly::gcd(h, g) == g);
    CHECK(IntPoly::gcd(h, f) == f);
    CHECK(IntPoly::gcd(f, poly({-3, 0, 1})) == poly({1}));
    // gcd picks up multiplicity
    CHECK(IntPoly::gcd(f * f * g, f * g * poly({5, 1})) == (f * g).normalized());
}

TEST_CASE("squarefree part") {
    IntPoly f = poly({-2, 0, 1});
    IntPoly g = poly({1, 1});
    IntPoly h = f * f * g;
    CHECK(IntPoly::squarefree_part(h) == (f * g).normalized());
}

TEST_CASE("resultant") {
    // res(x^2-2, x^2-3) = (2-3)^2 ... compute directly: prod (a_i - b_j) style
    IntPoly f = poly({-2, 0, 1});
    IntPoly g = poly({-3, 0, 1});
    CHECK(IntPoly::resultant(f, g) == 1);  // (sqrt2^2-3)(..) = (2-3)^2 = 1
    // res(x-a, g) = g(a)
    CHECK(IntPoly::resultant(poly({-5, 1}), g) == g.eval(Int(5)));
    // swap antisymmetry for odd*odd degrees
    IntPoly a = poly({1, 2, 0, 3});
    IntPoly b = poly({4, 5, 6});
    Int rab = IntPoly::resultant(a, b);
    Int rba = IntPoly::resultant(b, a);
    CHECK(rab == rba);  // deg a * deg b even
}

TEST_CASE("cyclotomic polynomials") {
    CHECK(cyclotomic(1) == poly({-1, 1}));
    CHECK(cyclotomic(2) == poly({1, 1}));
    CHECK(cyclotomic(4) == poly({1, 0, 1}));
    CHECK(cyclotomic(5) == poly({1, 1, 1, 1, 1}));
    CHECK(cyclotomic(6) == poly({1, -1, 1}));
    CHECK(cyclotomic(12) == poly({1, 0, -1, 0, 1}));
    // product over divisors reconstructs x^n - 1
    for (std::uint64_t n : {6u, 12u, 30u}) {
        IntPoly prod = IntPoly::from_int(1);
        for (auto d : divisors_of(n)) prod = prod * cyclotomic(d);
        std::vector<Int> c(n + 1, Int(0));
        c[0] = -1;
        c[n] = 1;
        CHECK(prod == IntPoly(std::move(c)));
    }
}

TEST_CASE("factor: cyclotomic products") {
    IntPoly f = cyclotomic(5) * cyclotomic(8) * cyclotomic(3);
    auto fac = factor(f);
    REQUIRE(fac.factors.size() == 3);
    CHECK(fac.content == 1);
    CHECK(fac.factors[0].first == cyclotomic(3));
    CHECK(fac.factors[1].first == cyclotomic(8));  // sorted by degree then coeffs
    CHECK(fac.factors[2].first == cyclotomic(5));
    for (auto& [p, e] : fac.factors) CHECK(e == 1);
}

TEST_CASE("factor: multiplicities and content") {
    IntPoly f = poly({-2, 0, 1});
    IntPoly g = poly({1, 1});
    IntPoly h = (f * f * g) * Int(-6);
    auto fac = factor(h);
    CHECK(fac.content == -6);
    REQUIRE(fac.factors.size() == 2);
    bool saw_f = false, saw_g = false;
    for (auto& [p, e] : fac.factors) {
        if (p == f) { saw_f = true; CHECK(e == 2); }
        if (p == g) { saw_g = true; CHECK(e == 1); }
    }
    CHECK(saw_f);
    CHECK(saw_g);
}

TEST_CASE("factor: non-monic and x^4+1 style") {
    // 6x^2+x-2 = (2x-1)(3x+2)
    auto fac = factor(poly({-2, 1, 6}));
    REQUIRE(fac.factors.size() == 2);
    CHECK(fac.factors[0].first * fac.factors[1].first == poly({-2, 1, 6}));
    CHECK(is_irreducible(poly({1, 0, 0, 0, 1})));       // x^4+1
    CHECK(is_irreducible(poly({-1, -1, 0, 0, 0, 1})));  // x^5-x-1 (Selmer)
    CHECK(!is_irreducible(poly({-1, 0, 0, 0, 0, 1})));  // x^5-1
}

TEST_CASE("factor: random reducible stress") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 10; ++trial) {
        // random product of two primitive polynomials
        auto rnd_poly = [&](int deg) {
            std::vector<Int> c(deg + 1);
            for (auto& x : c) x = Int(static_cast<long>(rng() % 21) - 10);
            if (c.back() == 0) c.back() = 1;
            return IntPoly(std::move(c)).normalized();
        };
        IntPoly a = rnd_poly(4), b = rnd_poly(5);
        if (a.degree() < 1 || b.degree() < 1) continue;
        IntPoly h = a * b;
        auto fac = factor(h);
        IntPoly prod = IntPoly::from_int(fac.content);
        for (auto& [p, e] : fac.factors) {
            for (int i = 0; i < e; ++i) prod = prod * p;
        }
        CHECK(prod == h);
        for (auto& [p, e] : fac.factors) CHECK(is_irreducible(p));
    }
}

TEST_CASE("zp factor roundtrip") {
    zp::u64 p = 1048583;
    IntPoly f = cyclotomic(8) * cyclotomic(3);  // deg 6
    auto fp = zp::monic(zp::reduce(f, p), p);
    auto factors = zp::factor_squarefree(fp, p, 7);
    zp::Poly prod{1};
    for (auto& g : factors) prod = zp::mul(prod, g, p);
    CHECK(prod == fp);
}
