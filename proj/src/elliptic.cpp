#include "tordep/elliptic.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "tordep/factor.hpp"

namespace tordep {

namespace {

using Elem = PointField::Elem;

// Group-law context: a tower holding the point coordinates plus the curve
// coefficients expressed inside it.
struct Ctx {
    PointFieldPtr T;
    PointField::Embedding emb;
    std::array<Elem, 5> a;  // a1,a2,a3,a4,a6
};

struct TP {
    bool inf = true;
    Elem x, y;
};

TP tp_neg(const Ctx& c, const TP& p) {
    if (p.inf) return p;
    // -P = (x, -y - a1 x - a3)
    auto& T = *c.T;
    Elem my = T.neg(T.add(p.y, T.add(T.mul(c.a[0], p.x), c.a[2])));
    return {false, p.x, my};
}

TP tp_add(const Ctx& c, const TP& p, const TP& q) {
    auto& T = *c.T;
    if (p.inf) return q;
    if (q.inf) return p;
    Elem lambda;
    bool have_lambda = false;
    if (T.equal(p.x, q.x)) {
        // q = -p?
        Elem y_neg = T.neg(T.add(p.y, T.add(T.mul(c.a[0], p.x), c.a[2])));
        if (T.equal(q.y, y_neg)) return TP{};  // infinity
        // doubling
        Elem den = T.add(T.add(T.mul_rat(p.y, Rat(2)), T.mul(c.a[0], p.x)), c.a[2]);
        if (T.is_zero(den)) return TP{};  // 2-torsion doubled
        Elem x2 = T.mul(p.x, p.x);
        Elem num = T.add(
            T.sub(T.add(T.mul_rat(x2, Rat(3)), T.mul_rat(T.mul(c.a[1], p.x), Rat(2))),
                  T.mul(c.a[0], p.y)),
            c.a[3]);
        lambda = T.div(num, den);
        have_lambda = true;
    }
    if (!have_lambda) {
        lambda = T.div(T.sub(q.y, p.y), T.sub(q.x, p.x));
    }
    // nu = y1 - lambda x1; x3 = lambda^2 + a1 lambda - a2 - x1 - x2;
    // y3 = -(lambda + a1) x3 - nu - a3
    Elem nu = T.sub(p.y, T.mul(lambda, p.x));
    Elem x3 = T.sub(T.sub(T.sub(T.add(T.mul(lambda, lambda), T.mul(c.a[0], lambda)), c.a[1]),
                          p.x),
                    q.x);
    Elem y3 = T.sub(T.sub(T.neg(T.mul(T.add(lambda, c.a[0]), x3)), nu), c.a[2]);
    return {false, x3, y3};
}

TP tp_scalar(const Ctx& c, Int k, TP p) {
    if (k < 0) {
        k = -k;
        p = tp_neg(c, p);
    }
    TP acc{};
    if (k == 0 || p.inf) return acc;
    size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        acc = tp_add(c, acc, acc);
        if (mpz_tstbit(k.get_mpz_t(), i)) acc = tp_add(c, acc, p);
    }
    return acc;
}

// Iterated compositum of several (minpoly, ball) inputs with coordinates.
struct Joint {
    FieldPtr K;
    std::vector<FElem> vals;
};

FElem migrate(const FieldPtr& Knew, const FElem& alpha, const FElem& old, int old_deg) {
    auto coords = old.rat_coeffs(old_deg);
    FElem acc = Knew->zero();
    for (size_t i = coords.size(); i-- > 0;) {
        acc = Knew->add(Knew->mul(acc, alpha), Knew->from_rat(coords[i]));
    }
    return acc;
}

Joint join_many(const std::vector<std::pair<IntPoly, Ball>>& inputs) {
    Joint j;
    j.K = NumberField::rational(Rat(0));
    for (const auto& [m, b] : inputs) {
        int old_deg = j.K->degree();
        auto jr = join_fields(j.K->minpoly(), j.K->gen_ball(), m, b);
        for (auto& v : j.vals) v = migrate(jr.field, jr.alpha, v, old_deg);
        j.vals.push_back(jr.beta);
        j.K = jr.field;
    }
    return j;
}

Rat rat_of(const AlgebraicNumber& a) {
    auto q = a.as_rational();
    if (!q) throw std::logic_error("expected rational value");
    return *q;
}

// Horner evaluation of a rational-coefficient polynomial at a field element.
FElem eval_qpoly(const NumberField& K, const std::vector<Rat>& coeffs, const FElem& x) {
    FElem acc = K.zero();
    for (size_t i = coeffs.size(); i-- > 0;) {
        acc = K.add(K.mul(acc, x), K.from_rat(coeffs[i]));
    }
    return acc;
}

}  // namespace

// --------------------------------------------------------------- curve

EllipticCurve EllipticCurve::create(const AlgebraicNumber& a1, const AlgebraicNumber& a2,
                                    const AlgebraicNumber& a3, const AlgebraicNumber& a4,
                                    const AlgebraicNumber& a6) {
    EllipticCurve e;
    e.a_ = {a1, a2, a3, a4, a6};
    bool all_rational = true;
    for (auto& ai : e.a_)
        if (!ai.is_rational()) all_rational = false;
    if (all_rational) {
        e.coeff_field_ = NumberField::rational(Rat(0));
        for (int i = 0; i < 5; ++i) e.coeff_coords_[i] = FElem::from_rat(*e.a_[i].as_rational());
    } else {
        std::vector<std::pair<IntPoly, Ball>> inputs;
        for (auto& ai : e.a_) inputs.emplace_back(ai.minpoly(), ai.isolator());
        Joint j = join_many(inputs);
        e.coeff_field_ = j.K;
        for (int i = 0; i < 5; ++i) e.coeff_coords_[i] = j.vals[i];
    }
    e.compute_b_invariants();
    if (e.disc_.is_zero()) throw SingularCurveError("singular curve: discriminant vanishes");
    return e;
}

EllipticCurve EllipticCurve::short_weierstrass(const Rat& a4, const Rat& a6) {
    AlgebraicNumber zero = AlgebraicNumber::from_rational(Rat(0));
    return create(zero, zero, zero, AlgebraicNumber::from_rational(a4),
                  AlgebraicNumber::from_rational(a6));
}

void EllipticCurve::compute_b_invariants() {
    auto& K = *coeff_field_;
    const FElem& a1 = coeff_coords_[0];
    const FElem& a2 = coeff_coords_[1];
    const FElem& a3 = coeff_coords_[2];
    const FElem& a4 = coeff_coords_[3];
    const FElem& a6 = coeff_coords_[4];
    b2_ = K.add(K.mul(a1, a1), K.mul_rat(a2, Rat(4)));
    b4_ = K.add(K.mul_rat(a4, Rat(2)), K.mul(a1, a3));
    b6_ = K.add(K.mul(a3, a3), K.mul_rat(a6, Rat(4)));
    b8_ = K.sub(K.add(K.sub(K.add(K.mul(K.mul(a1, a1), a6), K.mul_rat(K.mul(a2, a6), Rat(4))),
                            K.mul(K.mul(a1, a3), a4)),
                      K.mul(a2, K.mul(a3, a3))),
                K.mul(a4, a4));
    // disc = -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6
    FElem t1 = K.neg(K.mul(K.mul(b2_, b2_), b8_));
    FElem t2 = K.mul_rat(K.mul(K.mul(b4_, b4_), b4_), Rat(-8));
    FElem t3 = K.mul_rat(K.mul(b6_, b6_), Rat(-27));
    FElem t4 = K.mul_rat(K.mul(K.mul(b2_, b4_), b6_), Rat(9));
    disc_ = K.add(K.add(t1, t2), K.add(t3, t4));
}

const AlgebraicNumber& EllipticCurve::a(int i) const {
    switch (i) {
        case 1: return a_[0];
        case 2: return a_[1];
        case 3: return a_[2];
        case 4: return a_[3];
        case 6: return a_[4];
    }
    throw std::out_of_range("coefficient index");
}

AlgebraicNumber EllipticCurve::discriminant() const {
    return AlgebraicNumber::from_field_elem(coeff_field_, disc_);
}

AlgebraicNumber EllipticCurve::j_invariant() const {
    auto& K = *coeff_field_;
    FElem c4 = K.sub(K.mul(b2_, b2_), K.mul_rat(b4_, Rat(24)));
    FElem j = K.div(K.mul(K.mul(c4, c4), c4), disc_);
    return AlgebraicNumber::from_field_elem(coeff_field_, j);
}

FElem EllipticCurve::b2() const { return b2_; }
FElem EllipticCurve::b4() const { return b4_; }
FElem EllipticCurve::b6() const { return b6_; }
FElem EllipticCurve::b8() const { return b8_; }

KPoly EllipticCurve::psi2_squared() const {
    auto& K = *coeff_field_;
    return kpoly_trim({b6_, K.mul_rat(b4_, Rat(2)), b2_, K.from_rat(Rat(4))});
}

KPoly EllipticCurve::duplication_numerator() const {
    auto& K = *coeff_field_;
    return kpoly_trim({K.neg(b8_), K.mul_rat(b6_, Rat(-2)), K.neg(b4_), K.zero(), K.one()});
}

const KPoly& EllipticCurve::division_poly_x(std::uint64_t n) const {
    std::lock_guard<std::mutex> lock(div_cache_->mu);
    auto& cache = div_cache_->entries;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto& K = *coeff_field_;

    std::function<const KPoly&(std::uint64_t)> get = [&](std::uint64_t m) -> const KPoly& {
        auto found = cache.find(m);
        if (found != cache.end()) return found->second;
        KPoly f;
        if (m == 0) {
            f = {};  // zero polynomial
        } else if (m == 1 || m == 2) {
            f = {K.one()};
        } else if (m == 3) {
            f = kpoly_trim({b8_, K.mul_rat(b6_, Rat(3)), K.mul_rat(b4_, Rat(3)), b2_,
                            K.from_rat(Rat(3))});
        } else if (m == 4) {
            FElem c1 = K.sub(K.mul(b2_, b8_), K.mul(b4_, b6_));
            FElem c0 = K.sub(K.mul(b4_, b8_), K.mul(b6_, b6_));
            f = kpoly_trim({c0, c1, K.mul_rat(b8_, Rat(10)), K.mul_rat(b6_, Rat(10)),
                            K.mul_rat(b4_, Rat(5)), b2_, K.from_rat(Rat(2))});
        } else if (m % 2 == 1) {
            std::uint64_t k = m / 2;  // m = 2k+1
            const KPoly S = psi2_squared();
            KPoly S2 = kpoly_mul(K, S, S);
            KPoly fk = get(k), fk1 = get(k + 1), fk2 = get(k + 2), fkm1 = get(k - 1);
            KPoly t1 = kpoly_mul(K, fk2, kpoly_mul(K, fk, kpoly_mul(K, fk, fk)));
            KPoly t2 = kpoly_mul(K, fkm1, kpoly_mul(K, fk1, kpoly_mul(K, fk1, fk1)));
            KPoly res;
            if (k % 2 == 0) {
                t1 = kpoly_mul(K, S2, t1);
            } else {
                t2 = kpoly_mul(K, S2, t2);
            }
            // res = t1 - t2
            size_t len = std::max(t1.size(), t2.size());
            res.assign(len, K.zero());
            for (size_t i = 0; i < t1.size(); ++i) res[i] = t1[i];
            for (size_t i = 0; i < t2.size(); ++i) res[i] = K.sub(res[i], t2[i]);
            f = kpoly_trim(std::move(res));
        } else {
            std::uint64_t k = m / 2;  // m = 2k, k >= 3
            KPoly fk = get(k), fk1 = get(k + 1), fk2 = get(k + 2), fkm1 = get(k - 1),
                  fkm2 = get(k - 2);
            KPoly t1 = kpoly_mul(K, fk2, kpoly_mul(K, fkm1, fkm1));
            KPoly t2 = kpoly_mul(K, fkm2, kpoly_mul(K, fk1, fk1));
            size_t len = std::max(t1.size(), t2.size());
            KPoly diff(len, K.zero());
            for (size_t i = 0; i < t1.size(); ++i) diff[i] = t1[i];
            for (size_t i = 0; i < t2.size(); ++i) diff[i] = K.sub(diff[i], t2[i]);
            f = kpoly_mul(K, fk, kpoly_trim(std::move(diff)));
        }
        return cache.emplace(m, std::move(f)).first->second;
    };
    return get(n);
}

DivisionPolynomial EllipticCurve::division_polynomial(std::uint64_t n) const {
    if (n < 1) throw std::invalid_argument("division polynomial index must be >= 1");
    DivisionPolynomial d;
    d.n = n;
    d.has_psi2_factor = (n % 2 == 0);
    for (const auto& c : division_poly_x(n)) {
        d.coeffs.push_back(AlgebraicNumber::from_field_elem(coeff_field_, c));
    }
    return d;
}

// ------------------------------------------------------------ group law

namespace {

// Assemble a context for a set of public points on the curve.
struct PublicContext {
    Ctx ctx;
    std::vector<TP> pts;
};

std::optional<PublicContext> shared_context(const EllipticCurve& e,
                                            const std::vector<CurvePoint>& pts) {
    if (!e.rational_coefficients()) return std::nullopt;
    PointFieldPtr tower;
    std::optional<PointField::Embedding> emb;
    for (const auto& p : pts) {
        if (p.infinity) continue;
        for (const AlgebraicNumber* c : {&p.x, &p.y}) {
            if (c->is_rational()) continue;
            auto* tc = std::get_if<AlgebraicNumber::TowerCoords>(&c->home());
            if (!tc) return std::nullopt;
            if (!tower) {
                tower = tc->tower;
                emb = tc->emb;
            } else if (tower != tc->tower || emb->base_root != tc->emb.base_root ||
                       emb->branch != tc->emb.branch) {
                return std::nullopt;
            }
        }
    }
    if (!tower) return std::nullopt;  // all rational: caller uses the trivial path
    PublicContext pc;
    pc.ctx.T = tower;
    pc.ctx.emb = *emb;
    for (int i = 0; i < 5; ++i)
        pc.ctx.a[i] = tower->from_rat(*e.a(i == 0 ? 1 : i == 1 ? 2 : i == 2 ? 3 : i == 3 ? 4 : 6)
                                           .as_rational());
    for (const auto& p : pts) {
        if (p.infinity) {
            pc.pts.push_back(TP{});
            continue;
        }
        auto to_elem = [&](const AlgebraicNumber& c) -> Elem {
            if (auto* tc = std::get_if<AlgebraicNumber::TowerCoords>(&c.home()))
                return tc->elem;
            return tower->from_rat(*c.as_rational());
        };
        pc.pts.push_back(TP{false, to_elem(p.x), to_elem(p.y)});
    }
    return pc;
}

PublicContext generic_context(const EllipticCurve& e, const std::vector<CurvePoint>& pts) {
    // Join the coefficient field generator and all coordinates into one field,
    // then wrap it in a trivial (split) tower.
    std::vector<std::pair<IntPoly, Ball>> inputs;
    inputs.emplace_back(e.coefficient_field()->minpoly(), e.coefficient_field()->gen_ball());
    for (const auto& p : pts) {
        if (p.infinity) continue;
        inputs.emplace_back(p.x.minpoly(), p.x.refined(64));
        inputs.emplace_back(p.y.minpoly(), p.y.refined(64));
    }
    Joint j = join_many(inputs);
    auto T = PointField::make(j.K, j.K->zero(), j.K->from_rat(Rat(-1)));  // y^2 = 1: splits
    PublicContext pc;
    pc.ctx.T = T;
    pc.ctx.emb = {j.K->gen_index(64), 0};
    const FElem& theta = j.vals[0];
    for (int i = 0; i < 5; ++i) {
        auto coords = e.coeff_coords()[i].rat_coeffs(e.coefficient_field()->degree());
        pc.ctx.a[i] = T->from_base(eval_qpoly(*j.K, coords, theta));
    }
    size_t vi = 1;
    for (const auto& p : pts) {
        if (p.infinity) {
            pc.pts.push_back(TP{});
            continue;
        }
        TP tp;
        tp.inf = false;
        tp.x = T->from_base(j.vals[vi++]);
        tp.y = T->from_base(j.vals[vi++]);
        pc.pts.push_back(tp);
    }
    return pc;
}

PublicContext make_context(const EllipticCurve& e, const std::vector<CurvePoint>& pts) {
    bool all_rational = e.rational_coefficients();
    for (const auto& p : pts) {
        if (!p.infinity && (!p.x.is_rational() || !p.y.is_rational())) all_rational = false;
    }
    if (all_rational) {
        auto Q0 = NumberField::rational(Rat(0));
        auto T = PointField::make(Q0, Q0->zero(), Q0->from_rat(Rat(-1)));
        PublicContext pc;
        pc.ctx.T = T;
        pc.ctx.emb = {0, 0};
        for (int i = 0; i < 5; ++i) {
            int label = i == 0 ? 1 : i == 1 ? 2 : i == 2 ? 3 : i == 3 ? 4 : 6;
            pc.ctx.a[i] = T->from_rat(*e.a(label).as_rational());
        }
        for (const auto& p : pts) {
            if (p.infinity) {
                pc.pts.push_back(TP{});
            } else {
                pc.pts.push_back(
                    TP{false, T->from_rat(*p.x.as_rational()), T->from_rat(*p.y.as_rational())});
            }
        }
        return pc;
    }
    if (auto pc = shared_context(e, pts)) return *pc;
    return generic_context(e, pts);
}

CurvePoint to_public(const Ctx& c, const TP& p) {
    if (p.inf) return CurvePoint::infinite();
    return CurvePoint::affine(AlgebraicNumber::from_tower_elem(c.T, p.x, c.emb),
                              AlgebraicNumber::from_tower_elem(c.T, p.y, c.emb));
}

}  // namespace

CurvePoint EllipticCurve::add(const CurvePoint& p, const CurvePoint& q) const {
    if (p.infinity) return q;
    if (q.infinity) return p;
    auto pc = make_context(*this, {p, q});
    return to_public(pc.ctx, tp_add(pc.ctx, pc.pts[0], pc.pts[1]));
}

CurvePoint EllipticCurve::neg(const CurvePoint& p) const {
    if (p.infinity) return p;
    auto pc = make_context(*this, {p});
    return to_public(pc.ctx, tp_neg(pc.ctx, pc.pts[0]));
}

CurvePoint EllipticCurve::scalar_mul(const Int& k, const CurvePoint& p) const {
    if (p.infinity || k == 0) return CurvePoint::infinite();
    auto pc = make_context(*this, {p});
    return to_public(pc.ctx, tp_scalar(pc.ctx, k, pc.pts[0]));
}

bool EllipticCurve::is_on_curve(const CurvePoint& p) const {
    if (p.infinity) return true;
    auto pc = make_context(*this, {p});
    auto& T = *pc.ctx.T;
    const TP& t = pc.pts[0];
    // y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6 = 0
    Elem lhs = T.add(T.mul(t.y, t.y),
                     T.add(T.mul(T.mul(pc.ctx.a[0], t.x), t.y), T.mul(pc.ctx.a[2], t.y)));
    Elem x2 = T.mul(t.x, t.x);
    Elem rhs = T.add(T.add(T.mul(x2, t.x), T.mul(pc.ctx.a[1], x2)),
                     T.add(T.mul(pc.ctx.a[3], t.x), pc.ctx.a[4]));
    return T.is_zero(T.sub(lhs, rhs));
}

bool EllipticCurve::points_equal(const CurvePoint& p, const CurvePoint& q) const {
    if (p.infinity || q.infinity) return p.infinity == q.infinity;
    return an_equals(p.x, q.x) && an_equals(p.y, q.y);
}

std::optional<std::uint64_t> EllipticCurve::order_of(const CurvePoint& p,
                                                     std::uint64_t max_order) const {
    if (max_order < 1) throw std::invalid_argument("max_order must be >= 1");
    if (p.infinity) return 1;
    auto pc = make_context(*this, {p});
    TP acc = pc.pts[0];
    for (std::uint64_t k = 1; k <= max_order; ++k) {
        if (acc.inf) return k;
        acc = tp_add(pc.ctx, acc, pc.pts[0]);
    }
    // the loop computes (k+1)P at the end of step k; recheck the final value
    return std::nullopt;
}

// --------------------------------------------------------- torsion points

namespace {

struct Batch {
    PointFieldPtr tower;
    IntPoly x_minpoly;                 // irreducible factor owning this batch
    std::vector<Ball> x_roots;         // all embeddings of the base generator
    FElem x_elem;                      // x inside the base field
    std::vector<IntPoly> y_minpolys;   // candidate minimal polynomials of y
};

// Shared helper: given the base field K with x = x_elem and the curve
// coefficients in K, construct the y-tower and enumerate the batch points.
void emit_batch_points(const FieldPtr& K, const FElem& x_elem,
                       const IntPoly& x_minpoly, const std::array<FElem, 5>& aK,
                       std::uint64_t order, std::vector<TorsionPoint>& out) {
    auto& Kf = *K;
    // quadratic: y^2 + (a1 x + a3) y - (x^3 + a2 x^2 + a4 x + a6) = 0
    FElem P = Kf.add(Kf.mul(aK[0], x_elem), aK[2]);
    FElem x2 = Kf.mul(x_elem, x_elem);
    FElem Q = Kf.neg(Kf.add(Kf.add(Kf.mul(x2, x_elem), Kf.mul(aK[1], x2)),
                            Kf.add(Kf.mul(aK[3], x_elem), aK[4])));
    auto T = PointField::make(K, P, Q);

    int branches = 2;
    if (!T->inert() && Kf.equal(T->split_root(0), T->split_root(1))) branches = 1;

    // y minimal polynomials, once per batch
    std::vector<std::vector<IntPoly>> y_factors(branches);
    for (int b = 0; b < branches; ++b) {
        IntPoly cp = IntPoly::squarefree_part(T->charpoly(T->y_elem(b)));
        y_factors[b] = irreducible_factors(cp);
    }

    const size_t nroots = Kf.roots(64).size();
    for (size_t i = 0; i < nroots; ++i) {
        for (int b = 0; b < branches; ++b) {
            PointField::Embedding emb{i, b};
            // x part
            AlgebraicNumber xan;
            if (x_minpoly.degree() == 1) {
                Rat xv(-x_minpoly[0], x_minpoly[1]);
                xv.canonicalize();
                xan = AlgebraicNumber::from_rational(xv);
                xan = AlgebraicNumber::make(xan.minpoly(), xan.isolator(),
                                            AlgebraicNumber::TowerCoords{T, T->from_base(x_elem), emb});
            } else {
                // the batch's x minpoly with the i-th root ball; x_elem may be
                // a proper expression of the generator in the general path, so
                // evaluate its ball at the embedding
                long prec = 96;
                Ball xb = Kf.eval_ball(x_elem, Kf.roots(prec)[i]);
                // tighten until the ball isolates within x_minpoly's roots
                AlgebraicNumber tmp;
                while (true) {
                    auto rb = isolate_roots(x_minpoly, prec);
                    std::vector<Ball> hits;
                    for (auto& r : rb)
                        if (!r.disjoint(xb)) hits.push_back(r);
                    if (hits.size() == 1) {
                        tmp = AlgebraicNumber::make(
                            x_minpoly, hits[0],
                            AlgebraicNumber::TowerCoords{T, T->from_base(x_elem), emb});
                        break;
                    }
                    prec *= 2;
                    xb = Kf.eval_ball(x_elem, Kf.roots(prec)[i]);
                    if (prec > (1 << 17))
                        throw std::runtime_error("torsion: x ball isolation failed");
                }
                xan = tmp;
            }
            // y part: select among the batch's candidate minimal polynomials
            Elem yel = T->y_elem(b);
            long prec = 96;
            AlgebraicNumber yan;
            while (true) {
                Ball yb = T->eval_ball(yel, emb, prec);
                std::vector<std::pair<size_t, Ball>> hits;
                for (size_t fi = 0; fi < y_factors[b].size(); ++fi) {
                    const IntPoly& f = y_factors[b][fi];
                    if (f.degree() == 1) {
                        Rat c(-f[0], f[1]);
                        c.canonicalize();
                        if (yb.contains(c, Rat(0))) hits.emplace_back(fi, Ball::exact(c));
                        continue;
                    }
                    for (auto& r : isolate_roots(f, prec))
                        if (!r.disjoint(yb)) hits.emplace_back(fi, r);
                }
                if (hits.size() == 1) {
                    yan = AlgebraicNumber::make(
                        y_factors[b][hits[0].first], hits[0].second,
                        AlgebraicNumber::TowerCoords{T, yel, emb});
                    break;
                }
                prec *= 2;
                if (prec > (1 << 17)) throw std::runtime_error("torsion: y ball isolation failed");
            }
            out.push_back(TorsionPoint{CurvePoint::affine(xan, yan), order});
        }
    }
}

}  // namespace

std::vector<TorsionPoint> EllipticCurve::torsion_points(std::uint64_t n) const {
    if (n < 1) throw std::invalid_argument("torsion order must be >= 1");
    std::vector<TorsionPoint> out;
    if (n == 1) return out;
    auto& K0 = *coeff_field_;

    // candidate x polynomial over the coefficient field
    KPoly cand = (n == 2) ? psi2_squared() : division_poly_x(n);

    // maximal proper divisors for the exact-order filter
    std::vector<std::uint64_t> max_divs;
    for (auto p : prime_divisors_of(n)) max_divs.push_back(n / p);

    if (rational_coefficients()) {
        std::vector<Rat> rc(cand.size());
        for (size_t i = 0; i < cand.size(); ++i) rc[i] = *K0.as_rational(cand[i]);
        RatPoly rp = RatPoly::from_coeffs(rc);
        auto factors = irreducible_factors(rp.num);
        std::array<FElem, 5> aK;
        for (auto& g : factors) {
            FieldPtr K1;
            FElem x_elem;
            if (g.degree() == 1) {
                Rat xv(-g[0], g[1]);
                xv.canonicalize();
                K1 = NumberField::rational(Rat(0));
                x_elem = K1->from_rat(xv);
            } else {
                auto rb = isolate_roots(g, 64);
                K1 = NumberField::create(g, rb[0]);
                x_elem = K1->gen();
            }
            for (int i = 0; i < 5; ++i) {
                int lbl = i == 0 ? 1 : i == 1 ? 2 : i == 2 ? 3 : i == 3 ? 4 : 6;
                aK[i] = K1->from_rat(*a(lbl).as_rational());
            }
            if (n > 2) {
                // exact-order filter: no maximal proper divisor may kill x
                bool lower = false;
                for (auto d : max_divs) {
                    std::vector<Rat> dc;
                    if (d == 1) continue;  // order 1 is the point at infinity only
                    const KPoly& fd = (d == 2) ? psi2_squared() : division_poly_x(d);
                    dc.resize(fd.size());
                    for (size_t i = 0; i < fd.size(); ++i) dc[i] = *K0.as_rational(fd[i]);
                    if (eval_qpoly(*K1, dc, x_elem).is_zero()) { lower = true; break; }
                    if (d % 2 == 0 && d > 2) {
                        std::vector<Rat> sc;
                        const KPoly& S = psi2_squared();
                        sc.resize(S.size());
                        for (size_t i = 0; i < S.size(); ++i) sc[i] = *K0.as_rational(S[i]);
                        if (eval_qpoly(*K1, sc, x_elem).is_zero()) { lower = true; break; }
                    }
                }
                if (lower) continue;
            }
            emit_batch_points(K1, x_elem, g, aK, n, out);
        }
    } else {
        // general coefficients: norm to Q, then a joint field per root
        const IntPoly& G0 = K0.minpoly();
        // clear denominators of cand and build the bivariate coefficient table
        Int delta = 1;
        for (const auto& c : cand) delta = lcm(delta, c.den);
        std::vector<IntPoly> B(cand.size());
        for (size_t i = 0; i < cand.size(); ++i) B[i] = cand[i].num * (delta / cand[i].den);
        IntPoly N = resultant_in_x(G0, B).normalized();
        if (N.is_zero()) throw std::runtime_error("torsion: degenerate norm polynomial");
        auto factors = irreducible_factors(N);
        for (auto& g : factors) {
            std::vector<Ball> rb;
            if (g.degree() == 1) {
                Rat xv(-g[0], g[1]);
                xv.canonicalize();
                rb = {Ball::exact(xv)};
            } else {
                rb = isolate_roots(g, 64);
            }
            for (auto& root : rb) {
                auto jr = join_fields(G0, K0.gen_ball(), g, root);
                auto K1 = jr.field;
                FElem theta = jr.alpha, x_elem = jr.beta;
                // verify the candidate polynomial really vanishes here
                auto eval_k0poly = [&](const KPoly& f) {
                    FElem acc = K1->zero();
                    for (size_t i = f.size(); i-- > 0;) {
                        auto coords = f[i].rat_coeffs(K0.degree());
                        FElem ci = eval_qpoly(*K1, coords, theta);
                        acc = K1->add(K1->mul(acc, x_elem), ci);
                    }
                    return acc;
                };
                if (!eval_k0poly(cand).is_zero()) continue;  // conjugate-phantom root
                if (n > 2) {
                    bool lower = false;
                    for (auto d : max_divs) {
                        if (d == 1) continue;
                        const KPoly& fd = (d == 2) ? psi2_squared() : division_poly_x(d);
                        if (eval_k0poly(fd).is_zero()) { lower = true; break; }
                        if (d % 2 == 0 && d > 2 && eval_k0poly(psi2_squared()).is_zero()) {
                            lower = true;
                            break;
                        }
                    }
                    if (lower) continue;
                }
                std::array<FElem, 5> aK;
                for (int i = 0; i < 5; ++i) {
                    auto coords = coeff_coords_[i].rat_coeffs(K0.degree());
                    aK[i] = eval_qpoly(*K1, coords, theta);
                }
                // batch covers only this root: restrict to the distinguished one
                // by passing the joint field whose embeddings include conjugates
                // of the WHOLE joint field; points at other embeddings belong to
                // other (g, root) iterations, so emit only the distinguished one.
                std::vector<TorsionPoint> tmp;
                emit_batch_points(K1, x_elem, g, aK, n, tmp);
                size_t gi = K1->gen_index(64);
                for (auto& t : tmp) {
                    auto* tc = std::get_if<AlgebraicNumber::TowerCoords>(&t.point.x.home());
                    if (tc && tc->emb.base_root == gi) out.push_back(t);
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), torsion_point_less);
    return out;
}

std::vector<TorsionPoint> EllipticCurve::torsion_catalog(std::uint64_t n_max) const {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    std::vector<TorsionPoint> out;
    for (std::uint64_t n = 2; n <= n_max; ++n) {
        auto pts = torsion_points(n);
        out.insert(out.end(), pts.begin(), pts.end());
    }
    std::sort(out.begin(), out.end(), torsion_point_less);
    return out;
}

bool torsion_point_less(const TorsionPoint& a, const TorsionPoint& b) {
    if (a.order != b.order) return a.order < b.order;
    const Ball& ax = a.point.x.isolator();
    const Ball& bx = b.point.x.isolator();
    if (ax.re != bx.re) return ax.re < bx.re;
    if (ax.im != bx.im) return ax.im < bx.im;
    const Ball& ay = a.point.y.isolator();
    const Ball& by = b.point.y.isolator();
    if (ay.re != by.re) return ay.re < by.re;
    return ay.im < by.im;
}

}  // namespace tordep
