#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tordep/factor.hpp"
#include "tordep/field.hpp"

using namespace tordep;

namespace {
IntPoly poly(std::initializer_list<long> coeffs) {
    std::vector<Int> c;
    for (long x : coeffs) c.emplace_back(x);
    return IntPoly(std::move(c));
}

FieldPtr sqrt2_field() {
    auto roots = isolate_roots(poly({-2, 0, 1}), 64);
    return NumberField::create(poly({-2, 0, 1}), roots[1]);  // +sqrt2
}
}  // namespace

TEST_CASE("field arithmetic in Q(sqrt2)") {
    auto K = sqrt2_field();
    FElem s = K->gen();
    FElem two = K->mul(s, s);
    CHECK(K->equal(two, K->from_rat(Rat(2))));
    FElem inv_s = K->inv(s);
    CHECK(K->equal(K->mul(inv_s, s), K->one()));
    // 1/sqrt2 = sqrt2/2
    CHECK(K->equal(inv_s, K->mul_rat(s, Rat(1, 2))));
    FElem e = K->add(K->mul_rat(s, Rat(3, 7)), K->from_rat(Rat(-2, 5)));
    CHECK(K->equal(K->mul(e, K->inv(e)), K->one()));
    CHECK(K->equal(K->pow(s, Int(10)), K->from_rat(Rat(32))));
    CHECK(K->equal(K->pow(s, Int(-3)), K->mul_rat(s, Rat(1, 4))));
}

TEST_CASE("charpoly and minpoly of elements") {
    auto K = sqrt2_field();
    FElem s = K->gen();
    // minpoly of 1 + sqrt2: x^2 - 2x - 1
    auto [m, ball] = K->minpoly_of(K->add(s, K->one()));
    CHECK(m == poly({-1, -2, 1}));
    CHECK(ball.contains(Rat(0), Rat(0)) == false);
    // minpoly of rational element
    auto [m2, b2] = K->minpoly_of(K->from_rat(Rat(5, 3)));
    CHECK(m2 == poly({-5, 3}));
    // charpoly of sqrt2/1 is x^2-2 (up to normalization)
    CHECK(K->charpoly(s) == poly({-2, 0, 1}));
}

TEST_CASE("eval_at_gen tracks the distinguished root") {
    auto K = sqrt2_field();
    Ball v = K->eval_at_gen(K->gen(), 80);
    CHECK(v.re > 0);
    Int sc(1);
    mpz_mul_2exp(sc.get_mpz_t(), sc.get_mpz_t(), 80);
    CHECK(v.rad <= Rat(1, sc));
    // value^2 must enclose 2
    Ball sq = v * v;
    CHECK(sq.contains(Rat(2), Rat(0)));
}

TEST_CASE("join of Q(zeta3) and Q(zeta5) has degree 8 and recovers inputs") {
    auto r3 = isolate_roots(cyclotomic(3), 64);
    auto r5 = isolate_roots(cyclotomic(5), 64);
    auto jr = join_fields(cyclotomic(3), r3[0], cyclotomic(5), r5[0]);
    CHECK(jr.field->degree() == 8);
    // verify alpha^3 = 1 and beta^5 = 1 in the joint field
    auto& K = *jr.field;
    CHECK(K.equal(K.pow(jr.alpha, Int(3)), K.one()));
    CHECK(K.equal(K.pow(jr.beta, Int(5)), K.one()));
    CHECK(!K.equal(jr.alpha, K.one()));
    // alpha*beta is a primitive 15th root: minpoly Phi_15
    auto [m, b] = K.minpoly_of(K.mul(jr.alpha, jr.beta));
    CHECK(m == cyclotomic(15));
}

TEST_CASE("join with rationals short-circuits") {
    auto jr = join_fields(poly({-3, 2}), Ball::exact(Rat(3, 2)), poly({-2, 0, 1}),
                          isolate_roots(poly({-2, 0, 1}), 64)[1]);
    CHECK(jr.field->degree() == 2);
    CHECK(*jr.field->as_rational(jr.alpha) == Rat(3, 2));
}

TEST_CASE("split_quadratic over Q") {
    auto Q0 = NumberField::rational();
    // y^2 - 4 splits: roots 2, -2
    auto s = split_quadratic(Q0, Q0->zero(), Q0->from_rat(Rat(-4)));
    REQUIRE(s.split);
    Rat a = *Q0->as_rational(s.y0), b = *Q0->as_rational(s.y1);
    CHECK(((a == 2 && b == -2) || (a == -2 && b == 2)));
    // y^2 - 2 inert
    auto s2 = split_quadratic(Q0, Q0->zero(), Q0->from_rat(Rat(-2)));
    CHECK(!s2.split);
}

TEST_CASE("split_quadratic over Q(sqrt2)") {
    auto K = sqrt2_field();
    // y^2 = 2 splits over Q(sqrt2): y = +/- gen
    auto s = split_quadratic(K, K->zero(), K->from_rat(Rat(-2)));
    REQUIRE(s.split);
    CHECK((K->equal(s.y0, K->gen()) || K->equal(s.y1, K->gen())));
    // y^2 = 3 stays inert over Q(sqrt2)
    auto s2 = split_quadratic(K, K->zero(), K->from_rat(Rat(-3)));
    CHECK(!s2.split);
    // y^2 = sqrt2 * y - 1 ... disc = 2 - 4 < 0: inert
    auto s3 = split_quadratic(K, K->neg(K->gen()), K->one());
    CHECK(!s3.split);
}

TEST_CASE("PointField inert tower arithmetic") {
    auto Q0 = NumberField::rational();
    // y^2 = 2 over Q: tower of degree 2
    auto T = PointField::make(Q0, Q0->zero(), Q0->from_rat(Rat(-2)));
    REQUIRE(T->inert());
    CHECK(T->absolute_degree() == 2);
    auto y = T->y_elem(0);
    auto y2 = T->mul(y, y);
    CHECK(T->equal(y2, T->from_rat(Rat(2))));
    // (1+y)(1-y) = 1 - y^2 = -1
    auto a = T->add(T->one(), y);
    auto b = T->sub(T->one(), y);
    CHECK(T->equal(T->mul(a, b), T->from_rat(Rat(-1))));
    // inversion
    CHECK(T->equal(T->mul(a, T->inv(a)), T->one()));
    // charpoly of y = x^2 - 2
    CHECK(T->charpoly(y) == poly({-2, 0, 1}));
    // charpoly of 1 + y = x^2 - 2x - 1
    CHECK(T->charpoly(a) == poly({-1, -2, 1}));
}

TEST_CASE("PointField split tower collapses") {
    auto Q0 = NumberField::rational();
    auto T = PointField::make(Q0, Q0->zero(), Q0->from_rat(Rat(-4)));
    CHECK(!T->inert());
    CHECK(T->absolute_degree() == 1);
    auto y = T->y_elem(0);
    CHECK(T->equal(T->mul(y, y), T->from_rat(Rat(4))));
}

TEST_CASE("tower embeddings and value balls") {
    auto Q0 = NumberField::rational();
    auto T = PointField::make(Q0, Q0->zero(), Q0->from_rat(Rat(-2)));
    auto embs = T->embeddings(64);
    REQUIRE(embs.size() == 2);
    // y at the two embeddings: +/- sqrt2
    Ball b0 = T->y_ball(embs[0], 64);
    Ball b1 = T->y_ball(embs[1], 64);
    Ball prod = b0 * b1;
    CHECK(prod.contains(Rat(-2), Rat(0)));  // product of the two roots = -2
    Ball sum = b0 + b1;
    CHECK(sum.contains(Rat(0), Rat(0)));
}

TEST_CASE("kpoly gcd over a number field") {
    auto K = sqrt2_field();
    // (Z - sqrt2)(Z - 1) and (Z - sqrt2)(Z + 3): gcd = Z - sqrt2
    KPoly f{K->mul_rat(K->gen(), Rat(1)), K->from_rat(Rat(-1))};  // placeholder
    KPoly a = kpoly_mul(*K, KPoly{K->neg(K->gen()), K->one()}, KPoly{K->from_rat(Rat(-1)), K->one()});
    KPoly b = kpoly_mul(*K, KPoly{K->neg(K->gen()), K->one()}, KPoly{K->from_rat(Rat(3)), K->one()});
    KPoly g = kpoly_gcd_monic(*K, a, b);
    REQUIRE(kpoly_deg(g) == 1);
    CHECK(K->equal(K->neg(g[0]), K->gen()));
}
