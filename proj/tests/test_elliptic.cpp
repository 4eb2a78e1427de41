#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "tordep/elliptic.hpp"
#include "tordep/factor.hpp"

using namespace tordep;

namespace {

EllipticCurve curve_x3_minus_x() {  // Y^2 = X^3 - X
    return EllipticCurve::short_weierstrass(Rat(-1), Rat(0));
}

EllipticCurve curve_32a() {  // Y^2 = X^3 - X^2 + X
    AlgebraicNumber z = AlgebraicNumber::from_int(0);
    return EllipticCurve::create(z, AlgebraicNumber::from_int(-1), z,
                                 AlgebraicNumber::from_int(1), z);
}

CurvePoint rat_point(long x, long y) {
    return CurvePoint::affine(AlgebraicNumber::from_rational(Rat(x)),
                              AlgebraicNumber::from_rational(Rat(y)));
}

}  // namespace

TEST_CASE("discriminant and j-invariant") {
    auto e = curve_x3_minus_x();
    CHECK(an_equals(e.discriminant(), AlgebraicNumber::from_int(64)));
    CHECK(an_equals(e.j_invariant(), AlgebraicNumber::from_int(1728)));
    auto e2 = curve_32a();
    CHECK(an_equals(e2.discriminant(), AlgebraicNumber::from_int(-48)));
    CHECK(!e2.discriminant().is_zero());
    // singular curve rejected: Y^2 = X^3 - X^2
    AlgebraicNumber z = AlgebraicNumber::from_int(0);
    CHECK_THROWS_AS(EllipticCurve::create(z, AlgebraicNumber::from_int(-1), z, z, z),
                    SingularCurveError);
}

TEST_CASE("group law: spec examples") {
    auto e = curve_32a();
    CurvePoint p = rat_point(1, 1);
    REQUIRE(e.is_on_curve(p));
    CurvePoint two_p = e.scalar_mul(Int(2), p);
    CHECK(e.points_equal(two_p, rat_point(0, 0)));
    CHECK(e.scalar_mul(Int(0), p).infinity);
    CHECK(e.add(p, e.neg(p)).infinity);
    // order four
    auto ord = e.order_of(p, 10);
    REQUIRE(ord.has_value());
    CHECK(*ord == 4);
    // (0,0) on Y^2 = X^3 - X has order 2
    auto ord2 = curve_x3_minus_x().order_of(rat_point(0, 0), 5);
    REQUIRE(ord2.has_value());
    CHECK(*ord2 == 2);
}

TEST_CASE("Stoll point (i, 1-i) on Y^2 = X^3 - X has order 4") {
    auto e = curve_x3_minus_x();
    // i: root of X^2+1 with positive imaginary part
    AlgebraicNumber i_val = AlgebraicNumber::validated(
        IntPoly({Int(1), Int(0), Int(1)}), Ball(Rat(0), Rat(1), Rat(1, 4)));
    // 1-i: root of X^2-2X+2 with negative imaginary part
    AlgebraicNumber y_val = AlgebraicNumber::validated(
        IntPoly({Int(2), Int(-2), Int(1)}), Ball(Rat(1), Rat(-1), Rat(1, 4)));
    CurvePoint p = CurvePoint::affine(i_val, y_val);
    REQUIRE(e.is_on_curve(p));
    CurvePoint two_p = e.scalar_mul(Int(2), p);
    CHECK(e.points_equal(two_p, rat_point(0, 0)));
    auto ord = e.order_of(p, 10);
    REQUIRE(ord.has_value());
    CHECK(*ord == 4);
}

TEST_CASE("division polynomial basics") {
    auto e = curve_x3_minus_x();
    auto d1 = e.division_polynomial(1);
    REQUIRE(d1.coeffs.size() == 1);
    CHECK(an_equals(d1.coeffs[0], AlgebraicNumber::from_int(1)));
    // psi2^2 = 4x^3 - 4x: roots {0, 1, -1}
    auto s = e.psi2_squared();
    REQUIRE(kpoly_deg(s) == 3);
    auto tor2 = e.torsion_points(2);
    REQUIRE(tor2.size() == 3);
    std::set<Rat> xs;
    for (auto& t : tor2) {
        REQUIRE(t.point.x.is_rational());
        xs.insert(*t.point.x.as_rational());
        CHECK(t.point.y.is_zero());
        CHECK(t.order == 2);
    }
    CHECK(xs == std::set<Rat>{Rat(-1), Rat(0), Rat(1)});
}

TEST_CASE("torsion_points: exact order 4 on Y^2 = X^3 - X^2 + X contains (1,1),(1,-1)") {
    auto e = curve_32a();
    auto tor4 = e.torsion_points(4);
    CHECK(tor4.size() == 12);  // E[4] has 16 points, E[2] has 4: 12 of exact order 4
    bool saw_11 = false, saw_1m1 = false;
    for (auto& t : tor4) {
        CHECK(t.order == 4);
        CHECK(e.is_on_curve(t.point));
        if (e.points_equal(t.point, rat_point(1, 1))) saw_11 = true;
        if (e.points_equal(t.point, rat_point(1, -1))) saw_1m1 = true;
    }
    CHECK(saw_11);
    CHECK(saw_1m1);
}

TEST_CASE("torsion_points(3): division polynomial vs group law oracle") {
    for (auto e : {curve_x3_minus_x(), curve_32a()}) {
        auto tor3 = e.torsion_points(3);
        CHECK(tor3.size() == 8);  // E[3] minus O
        for (auto& t : tor3) {
            CHECK(e.is_on_curve(t.point));
            CHECK(e.scalar_mul(Int(3), t.point).infinity);
            CHECK(!e.scalar_mul(Int(1), t.point).infinity);
        }
    }
}

TEST_CASE("torsion catalog and order arithmetic") {
    auto e = curve_32a();
    auto cat = e.torsion_catalog(4);
    // orders 2, 3, 4 present: 3 + 8 + 12 = 23 points
    CHECK(cat.size() == 23);
    // #E[n] <= n^2 for n = 2,3,4
    for (std::uint64_t n : {2u, 3u, 4u}) {
        size_t count = 1;  // infinity
        for (auto& t : cat)
            if (n % t.order == 0) ++count;
        CHECK(count <= n * n);
    }
    // order_of(kP) = order(P) / gcd(k, order(P))
    std::mt19937 rng(5);
    int checked = 0;
    for (auto& t : cat) {
        if (checked >= 6) break;
        std::uint64_t k = 1 + rng() % 6;
        CurvePoint kp = e.scalar_mul(Int(static_cast<unsigned long>(k)), t.point);
        std::uint64_t expect = t.order / std::gcd(k, t.order);
        if (expect == 1) {
            CHECK(kp.infinity);
        } else {
            auto o = e.order_of(kp, 12);
            REQUIRE(o.has_value());
            CHECK(*o == expect);
        }
        ++checked;
    }
}

TEST_CASE("group law: commutativity and associativity on torsion points") {
    auto e = curve_32a();
    auto cat = e.torsion_catalog(4);
    std::mt19937 rng(17);
    for (int trial = 0; trial < 4; ++trial) {
        const auto& p = cat[rng() % cat.size()].point;
        const auto& q = cat[rng() % cat.size()].point;
        const auto& r = cat[rng() % cat.size()].point;
        CHECK(e.points_equal(e.add(p, q), e.add(q, p)));
        CHECK(e.points_equal(e.add(e.add(p, q), r), e.add(p, e.add(q, r))));
    }
}

TEST_CASE("n_max = 1 catalog is empty") {
    CHECK(curve_32a().torsion_catalog(1).empty());
}

TEST_CASE("Stoll curve with zeta_3: algebraic coefficients") {
    // Y^2 = X(X-1)(X-zeta^2) with zeta = zeta_3
    auto r3 = isolate_roots(cyclotomic(3), 64);
    // pick the root with positive imaginary part
    AlgebraicNumber zeta = AlgebraicNumber::make(cyclotomic(3), r3[1]);
    AlgebraicNumber z2 = an_mul(zeta, zeta);
    AlgebraicNumber one = AlgebraicNumber::from_int(1);
    AlgebraicNumber zero = AlgebraicNumber::from_int(0);
    // expand: X^3 - (1 + z2) X^2 + z2 X
    AlgebraicNumber a2 = an_neg(an_add(one, z2));
    AlgebraicNumber a4 = z2;
    auto e = EllipticCurve::create(zero, a2, zero, a4, zero);
    CHECK(!e.discriminant().is_zero());
    CHECK(e.coefficient_field()->degree() == 2);
    // 2-torsion: x in {0, 1, zeta^2}
    auto tor2 = e.torsion_points(2);
    REQUIRE(tor2.size() == 3);
    bool saw_zeta2 = false;
    for (auto& t : tor2) {
        CHECK(e.is_on_curve(t.point));
        CHECK(t.point.y.is_zero());
        if (an_equals(t.point.x, z2)) saw_zeta2 = true;
    }
    CHECK(saw_zeta2);
}
