#include "tordep/algnum.hpp"

#include <stdexcept>

#include "tordep/factor.hpp"

namespace tordep {

namespace {

// Refinement for a standalone (minpoly, ball) pair.
Ball refine_mb(const IntPoly& m, const Ball& b, long prec) {
    if (m.degree() == 1) {
        Rat c(-m[0], m[1]);
        c.canonicalize();
        return Ball::exact(c);
    }
    Rat target(1);
    {
        Int sc(1);
        mpz_mul_2exp(sc.get_mpz_t(), sc.get_mpz_t(), prec);
        target = Rat(1, sc);
    }
    if (b.rad <= target) return b;
    long p = std::max<long>(64, 2 * prec);
    while (true) {
        auto rb = isolate_roots(m, p);
        std::vector<size_t> hits;
        for (size_t i = 0; i < rb.size(); ++i)
            if (!rb[i].disjoint(b)) hits.push_back(i);
        if (hits.size() == 1 && rb[hits[0]].rad <= target) return rb[hits[0]];
        p *= 2;
        if (p > (1 << 18)) throw std::runtime_error("refine: precision exhausted");
    }
}

// Select the irreducible factor of `candidates` owning the value enclosed by
// the (refinable) ball computed by `value_ball(prec)`.
template <typename BallFn>
std::pair<IntPoly, Ball> select_factor(const std::vector<IntPoly>& candidates,
                                       BallFn&& value_ball) {
    long prec = 64;
    while (true) {
        Ball v = value_ball(prec);
        std::vector<std::pair<size_t, Ball>> hits;
        for (size_t i = 0; i < candidates.size(); ++i) {
            if (candidates[i].degree() == 1) {
                Rat c(-candidates[i][0], candidates[i][1]);
                c.canonicalize();
                if (v.contains(c, Rat(0))) hits.emplace_back(i, Ball::exact(c));
                continue;
            }
            auto rb = isolate_roots(candidates[i], prec);
            for (auto& r : rb)
                if (!r.disjoint(v)) hits.emplace_back(i, r);
        }
        if (hits.size() == 1) return {candidates[hits[0].first], hits[0].second};
        prec *= 2;
        if (prec > (1 << 17)) throw std::runtime_error("factor selection: precision exhausted");
    }
}

bool same_field(const AlgebraicNumber::Home& a, const AlgebraicNumber::Home& b,
                AlgebraicNumber::FieldCoords const** fa,
                AlgebraicNumber::FieldCoords const** fb) {
    auto* pa = std::get_if<AlgebraicNumber::FieldCoords>(&a);
    auto* pb = std::get_if<AlgebraicNumber::FieldCoords>(&b);
    if (pa && pb && pa->field == pb->field) {
        *fa = pa;
        *fb = pb;
        return true;
    }
    return false;
}

bool same_tower(const AlgebraicNumber::Home& a, const AlgebraicNumber::Home& b,
                AlgebraicNumber::TowerCoords const** ta,
                AlgebraicNumber::TowerCoords const** tb) {
    auto* pa = std::get_if<AlgebraicNumber::TowerCoords>(&a);
    auto* pb = std::get_if<AlgebraicNumber::TowerCoords>(&b);
    if (pa && pb && pa->tower == pb->tower && pa->emb.base_root == pb->emb.base_root &&
        pa->emb.branch == pb->emb.branch) {
        *ta = pa;
        *tb = pb;
        return true;
    }
    return false;
}

}  // namespace

AlgebraicNumber AlgebraicNumber::from_rational(const Rat& q) {
    IntPoly m({Int(-q.get_num()), Int(q.get_den())});
    AlgebraicNumber a;
    a.minpoly_ = m.normalized();
    a.isolator_ = Ball::exact(q);
    a.home_ = {};
    return a;
}

AlgebraicNumber an_from_rational(const Rat& q) { return AlgebraicNumber::from_rational(q); }

AlgebraicNumber AlgebraicNumber::make(IntPoly minpoly, Ball isolator, Home home) {
    AlgebraicNumber a;
    a.minpoly_ = minpoly.normalized();
    a.isolator_ = std::move(isolator);
    a.home_ = std::move(home);
    return a;
}

AlgebraicNumber AlgebraicNumber::validated(const IntPoly& minpoly, const Ball& isolator) {
    if (minpoly.degree() < 1) throw std::invalid_argument("minpoly must have degree >= 1");
    IntPoly m = minpoly.normalized();
    if (!is_irreducible(m)) throw std::invalid_argument("minpoly is not irreducible");
    if (m.degree() == 1) {
        Rat c(-m[0], m[1]);
        c.canonicalize();
        if (!isolator.contains(c, Rat(0)))
            throw std::invalid_argument("isolator does not contain the rational root");
        return make(m, Ball::exact(c));
    }
    // the isolator must contain exactly one root
    long prec = 64;
    while (true) {
        auto rb = isolate_roots(m, prec);
        size_t inside = 0, touching = 0;
        Ball found;
        for (auto& r : rb) {
            if (!r.disjoint(isolator)) {
                ++touching;
                found = r;
            }
        }
        (void)inside;
        if (touching == 0) throw std::invalid_argument("isolator contains no root");
        if (touching == 1) {
            // keep the user ball if it is tighter, else the certified one
            return make(m, found.rad < isolator.rad ? found : isolator);
        }
        prec *= 2;
        if (prec > (1 << 16))
            throw std::invalid_argument("isolator does not isolate a unique root");
    }
}

AlgebraicNumber AlgebraicNumber::from_field_elem(const FieldPtr& K, const FElem& e, long prec) {
    if (auto q = K->as_rational(e)) {
        AlgebraicNumber a = from_rational(*q);
        a.home_ = FieldCoords{K, e};
        return a;
    }
    auto [m, ball] = K->minpoly_of(e, prec);
    return make(std::move(m), std::move(ball), FieldCoords{K, e});
}

AlgebraicNumber AlgebraicNumber::from_tower_elem(const PointFieldPtr& T,
                                                 const PointField::Elem& e,
                                                 const PointField::Embedding& emb, long prec) {
    if (!T->inert() || e.v.is_zero()) {
        // value lives in the base field
        FElem val = e.u;
        if (T->inert() == false && !e.v.is_zero()) {
            val = T->base()->add(e.u, T->base()->mul(e.v, T->split_root(emb.branch)));
        }
        if (emb.base_root == T->base()->gen_index(64)) {
            AlgebraicNumber a = from_field_elem(T->base(), val, prec);
            a.home_ = TowerCoords{T, e, emb};
            return a;
        }
        // non-distinguished embedding: minpoly of the base element, ball at
        // the requested root
        IntPoly cp = IntPoly::squarefree_part(T->base()->charpoly(val));
        auto factors = irreducible_factors(cp);
        auto [m, ball] = select_factor(factors, [&](long p) {
            auto rb = T->base()->roots(p);
            return T->base()->eval_ball(val, rb[emb.base_root]);
        });
        return make(std::move(m), std::move(ball), TowerCoords{T, e, emb});
    }
    IntPoly cp = IntPoly::squarefree_part(T->charpoly(e));
    auto factors = irreducible_factors(cp);
    auto [m, ball] = select_factor(factors, [&](long p) { return T->eval_ball(e, emb, p); });
    return make(std::move(m), std::move(ball), TowerCoords{T, e, emb});
}

bool AlgebraicNumber::is_zero() const {
    return minpoly_.degree() == 1 && minpoly_[0] == 0;
}

std::optional<Rat> AlgebraicNumber::as_rational() const {
    if (minpoly_.degree() != 1) return std::nullopt;
    Rat q(-minpoly_[0], minpoly_[1]);
    q.canonicalize();
    return q;
}

Ball AlgebraicNumber::refined(long prec) const {
    if (auto* tc = std::get_if<TowerCoords>(&home_)) {
        if (tc->tower->inert()) {
            Rat target(1);
            Int sc(1);
            mpz_mul_2exp(sc.get_mpz_t(), sc.get_mpz_t(), prec);
            target = Rat(1, sc);
            long p = prec;
            while (true) {
                Ball v = tc->tower->eval_ball(tc->elem, tc->emb, p);
                if (v.rad <= target) return v;
                p *= 2;
                if (p > (1 << 18)) break;
            }
        }
    }
    return refine_mb(minpoly_, isolator_, prec);
}

namespace {

AlgebraicNumber generic_add(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    // resultant construction: roots of Res_T(mb(T), ma(X - T)) are the sums
    std::vector<IntPoly> B;
    {
        auto rows = a.minpoly().compose_linear_sub(Int(1));
        int max_x = -1;
        for (auto& r : rows) max_x = std::max(max_x, r.degree());
        for (int j = 0; j <= max_x; ++j) {
            std::vector<Int> c(rows.size(), Int(0));
            for (size_t m = 0; m < rows.size(); ++m)
                if (j <= rows[m].degree()) c[m] = rows[m][j];
            B.emplace_back(std::move(c));
        }
    }
    IntPoly R = resultant_in_x(b.minpoly(), B).normalized();
    auto factors = irreducible_factors(R);
    auto [m, ball] = select_factor(factors, [&](long p) {
        return a.refined(p) + b.refined(p);
    });
    return AlgebraicNumber::make(std::move(m), std::move(ball));
}

AlgebraicNumber generic_mul(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    // roots of Res_T(mb(T), T^da * ma(X/T)) are the products: the second
    // argument has X^j coefficient ma_j * T^(da - j)
    const IntPoly& ma = a.minpoly();
    int da = ma.degree();
    std::vector<IntPoly> B(da + 1);
    for (int j = 0; j <= da; ++j) B[j] = IntPoly::monomial(ma[j], da - j);
    IntPoly R = resultant_in_x(b.minpoly(), B).normalized();
    auto factors = irreducible_factors(R);
    auto [m, ball] = select_factor(factors, [&](long p) {
        return a.refined(p) * b.refined(p);
    });
    return AlgebraicNumber::make(std::move(m), std::move(ball));
}

}  // namespace

AlgebraicNumber an_add(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (auto qa = a.as_rational()) {
        if (auto qb = b.as_rational()) return AlgebraicNumber::from_rational(*qa + *qb);
    }
    const AlgebraicNumber::FieldCoords *fa, *fb;
    if (same_field(a.home_, b.home_, &fa, &fb)) {
        return AlgebraicNumber::from_field_elem(fa->field, fa->field->add(fa->elem, fb->elem));
    }
    const AlgebraicNumber::TowerCoords *ta, *tb;
    if (same_tower(a.home_, b.home_, &ta, &tb)) {
        return AlgebraicNumber::from_tower_elem(ta->tower, ta->tower->add(ta->elem, tb->elem),
                                                ta->emb);
    }
    // rational + algebraic: substitute X -> den*X - num into the rescaled
    // minimal polynomial, giving roots beta + num/den
    auto rational_shift = [](const AlgebraicNumber& rat_side, const AlgebraicNumber& alg_side) {
        Rat q = *rat_side.as_rational();
        const Int num = q.get_num(), den = q.get_den();
        // p1 = sum c_i den^(d-i) X^i has roots den*beta
        IntPoly p1 = alg_side.minpoly().reverse().scale_num(den).reverse();
        IntPoly p3 = p1.shift(-num).scale_num(den);
        Ball ball = alg_side.isolator() + Ball::exact(q);
        AlgebraicNumber::Home home;
        if (auto* fc = std::get_if<AlgebraicNumber::FieldCoords>(&alg_side.home()))
            home = AlgebraicNumber::FieldCoords{
                fc->field, fc->field->add(fc->elem, fc->field->from_rat(q))};
        else if (auto* tc = std::get_if<AlgebraicNumber::TowerCoords>(&alg_side.home()))
            home = AlgebraicNumber::TowerCoords{
                tc->tower, tc->tower->add(tc->elem, tc->tower->from_rat(q)), tc->emb};
        return AlgebraicNumber::make(p3.normalized(), ball, home);
    };
    if (a.as_rational()) return rational_shift(a, b);
    if (b.as_rational()) return rational_shift(b, a);
    return generic_add(a, b);
}

AlgebraicNumber an_sub(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    return an_add(a, an_neg(b));
}

AlgebraicNumber an_neg(const AlgebraicNumber& a) {
    if (auto q = a.as_rational()) return AlgebraicNumber::from_rational(-*q);
    // m(-X) normalized; negated ball
    std::vector<Int> c(a.minpoly().coeffs());
    for (size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
    AlgebraicNumber::Home home;
    if (auto* fc = std::get_if<AlgebraicNumber::FieldCoords>(&a.home()))
        home = AlgebraicNumber::FieldCoords{fc->field, fc->field->neg(fc->elem)};
    else if (auto* tc = std::get_if<AlgebraicNumber::TowerCoords>(&a.home()))
        home = AlgebraicNumber::TowerCoords{tc->tower, tc->tower->neg(tc->elem), tc->emb};
    return AlgebraicNumber::make(IntPoly(std::move(c)).normalized(), -a.isolator(), home);
}

AlgebraicNumber an_inv(const AlgebraicNumber& a) {
    if (a.is_zero()) throw std::domain_error("inversion of zero algebraic number");
    if (auto q = a.as_rational()) return AlgebraicNumber::from_rational(Rat(1) / *q);
    IntPoly rev = a.minpoly().reverse().normalized();
    AlgebraicNumber::Home home;
    if (auto* fc = std::get_if<AlgebraicNumber::FieldCoords>(&a.home()))
        home = AlgebraicNumber::FieldCoords{fc->field, fc->field->inv(fc->elem)};
    else if (auto* tc = std::get_if<AlgebraicNumber::TowerCoords>(&a.home()))
        home = AlgebraicNumber::TowerCoords{tc->tower, tc->tower->inv(tc->elem), tc->emb};
    long prec = 64;
    Ball b = a.refined(prec);
    while (b.abs_lower() <= 0) {
        prec *= 2;
        b = a.refined(prec);
        if (prec > (1 << 16)) throw std::runtime_error("an_inv: cannot separate from zero");
    }
    return AlgebraicNumber::make(std::move(rev), b.inv(), home);
}

AlgebraicNumber an_mul(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (auto qa = a.as_rational()) {
        if (auto qb = b.as_rational()) return AlgebraicNumber::from_rational(*qa * *qb);
        if (*qa == 0) return AlgebraicNumber::from_rational(Rat(0));
        // rational scaling: m(X / q) cleared
        const IntPoly& m = b.minpoly();
        int d = m.degree();
        std::vector<Int> c(d + 1);
        // coefficient i of m(X/q) * q^d: m_i * den^i * num^(d-i)
        for (int i = 0; i <= d; ++i) {
            Int pw = 1;
            for (int k = 0; k < i; ++k) pw *= qa->get_den();
            for (int k = i; k < d; ++k) pw *= qa->get_num();
            c[i] = m[i] * pw;
        }
        Ball ball = b.isolator() * Ball::exact(*qa);
        AlgebraicNumber::Home home;
        if (auto* fc = std::get_if<AlgebraicNumber::FieldCoords>(&b.home()))
            home = AlgebraicNumber::FieldCoords{fc->field, fc->field->mul_rat(fc->elem, *qa)};
        else if (auto* tc = std::get_if<AlgebraicNumber::TowerCoords>(&b.home()))
            home = AlgebraicNumber::TowerCoords{tc->tower, tc->tower->mul_rat(tc->elem, *qa),
                                                tc->emb};
        return AlgebraicNumber::make(IntPoly(std::move(c)).normalized(), ball, home);
    }
    if (b.as_rational()) return an_mul(b, a);
    const AlgebraicNumber::FieldCoords *fa, *fb;
    if (same_field(a.home_, b.home_, &fa, &fb)) {
        return AlgebraicNumber::from_field_elem(fa->field, fa->field->mul(fa->elem, fb->elem));
    }
    const AlgebraicNumber::TowerCoords *ta, *tb;
    if (same_tower(a.home_, b.home_, &ta, &tb)) {
        return AlgebraicNumber::from_tower_elem(ta->tower, ta->tower->mul(ta->elem, tb->elem),
                                                ta->emb);
    }
    return generic_mul(a, b);
}

bool an_equals(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (a.minpoly() != b.minpoly()) return false;
    if (a.minpoly().degree() == 1) return true;
    // same minimal polynomial: compare root indices
    long prec = 64;
    while (true) {
        auto rb = isolate_roots(a.minpoly(), prec);
        std::vector<size_t> ha, hb;
        for (size_t i = 0; i < rb.size(); ++i) {
            if (!rb[i].disjoint(a.isolator())) ha.push_back(i);
            if (!rb[i].disjoint(b.isolator())) hb.push_back(i);
        }
        if (ha.size() == 1 && hb.size() == 1) return ha[0] == hb[0];
        prec *= 2;
        if (prec > (1 << 17)) throw std::runtime_error("an_equals: precision exhausted");
    }
}

std::vector<Ball> conjugates(const AlgebraicNumber& a, long precision) {
    if (precision < 32) throw std::invalid_argument("conjugates: precision must be >= 32");
    return isolate_roots(a.minpoly(), precision);
}

HeightValue weil_height(const AlgebraicNumber& a, const Rat& target_width) {
    if (a.is_zero()) return {Rat(0), Rat(0)};
    if (a.minpoly().degree() == 1) {
        Rat q = *a.as_rational();
        Int n = abs(q.get_num()), d = q.get_den();
        Int mx = n > d ? n : d;
        if (mx == 1) return {Rat(0), Rat(0)};
        long prec = 64;
        while (true) {
            Rat lo = log_lower(Rat(mx), prec), hi = log_upper(Rat(mx), prec);
            if (hi - lo <= target_width) return {lo, hi};
            prec *= 2;
        }
    }
    if (a.is_algebraic_integer() && is_root_of_unity(a)) return {Rat(0), Rat(0)};

    const int d = a.minpoly().degree();
    long prec = 96;
    while (true) {
        auto rb = isolate_roots(a.minpoly(), prec);
        Rat lo(0), hi(0);
        // leading coefficient term
        {
            Int lc = a.minpoly().lead();
            if (lc > 1) {
                lo += log_lower(Rat(lc), prec);
                hi += log_upper(Rat(lc), prec);
            }
        }
        bool ok = true;
        for (auto& r : rb) {
            Rat alo = r.abs_lower(), ahi = r.abs_upper();
            if (ahi <= 1) continue;  // log+ = 0 on the whole ball
            hi += log_upper(ahi, prec);
            if (alo > 1) lo += log_lower(alo, prec);
            // if the ball straddles |z| = 1, lower contribution is 0
            if (ahi - alo > Rat(1, 2)) ok = false;  // too coarse to be useful
        }
        if (ok) {
            HeightValue h{lo / d, hi / d};
            if (h.width() <= target_width) return h;
        }
        prec *= 2;
        if (prec > (1 << 17)) throw std::runtime_error("weil_height: precision exhausted");
    }
}

std::optional<std::uint64_t> is_root_of_unity(const AlgebraicNumber& a) {
    const IntPoly& m = a.minpoly();
    if (!m.is_monic()) return std::nullopt;
    const int d = m.degree();
    if (d == 1) {
        Rat q = *a.as_rational();
        if (q == 1) return 1;
        if (q == -1) return 2;
        return std::nullopt;
    }
    Int c0 = m[0];
    if (c0 != 1 && c0 != -1) return std::nullopt;
    // phi(n) >= sqrt(n/2), so phi(n) = d forces n <= 2 d^2
    std::uint64_t bound = 2 * static_cast<std::uint64_t>(d) * d + 1;
    for (std::uint64_t n = 1; n <= bound; ++n) {
        if (euler_phi(n) != static_cast<std::uint64_t>(d)) continue;
        if (m == cyclotomic(n)) return n;
    }
    return std::nullopt;
}

AlgebraicNumber an_sqrt(const AlgebraicNumber& a, const Ball& hint) {
    if (a.is_zero()) throw std::domain_error("an_sqrt of zero");
    // candidate minimal polynomials: irreducible factors of m(X^2)
    IntPoly m2 = a.minpoly().compose_xk(2);
    auto factors = irreducible_factors(m2);

    // determine the branch: refine a until the sqrt balls separate, then the
    // hint must contain exactly one of them
    long prec = 64;
    while (true) {
        Ball av = a.refined(prec);
        if (av.abs_lower() > 0) {
            auto [sp, sm] = av.sqrt_both(prec);
            bool in_p = !sp.disjoint(hint), in_m = !sm.disjoint(hint);
            if (sp.disjoint(sm)) {
                if (in_p && in_m)
                    throw std::invalid_argument("an_sqrt: ambiguous branch hint");
                if (!in_p && !in_m)
                    throw std::invalid_argument("an_sqrt: hint excludes both square roots");
                Ball chosen = in_p ? sp : sm;
                // select the factor owning the chosen root
                auto [mf, ball] = select_factor(factors, [&](long p) {
                    Ball avp = a.refined(p);
                    auto [s1, s2] = avp.sqrt_both(p);
                    // keep the branch consistent with `chosen`
                    return s1.disjoint(chosen) ? s2 : s1;
                });
                AlgebraicNumber beta = AlgebraicNumber::make(std::move(mf), std::move(ball));
                // definitive branch check: beta^2 is some root of a's minimal
                // polynomial by construction; certify it is exactly a's root
                auto squares_to_a = [&](const AlgebraicNumber& cand) -> bool {
                    long p = 96;
                    while (true) {
                        auto rb = isolate_roots(a.minpoly(), p);
                        Ball cb = cand.refined(p);
                        Ball sq = cb * cb;
                        std::vector<size_t> hs, ha;
                        for (size_t i = 0; i < rb.size(); ++i) {
                            if (!rb[i].disjoint(sq)) hs.push_back(i);
                            if (!rb[i].disjoint(a.isolator())) ha.push_back(i);
                        }
                        if (hs.size() == 1 && ha.size() == 1) return hs[0] == ha[0];
                        p *= 2;
                        if (p > (1 << 16))
                            throw std::runtime_error("an_sqrt: verification precision exhausted");
                    }
                };
                if (squares_to_a(beta)) return beta;
                beta = an_neg(beta);
                if (squares_to_a(beta) && !beta.isolator().disjoint(hint)) return beta;
                throw std::runtime_error("an_sqrt: branch verification failed");
            }
        }
        prec *= 2;
        if (prec > (1 << 16)) throw std::runtime_error("an_sqrt: precision exhausted");
    }
}

}  // namespace tordep
