#include "tordep/field.hpp"

#include <stdexcept>

#include "tordep/factor.hpp"
#include "tordep/zp_poly.hpp"

namespace tordep {

// ----------------------------------------------------------------- FElem

void FElem::normalize() {
    if (num.is_zero()) {
        den = 1;
        return;
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Int g = ::gcd(num.content(), den);
    if (g > 1) {
        std::vector<Int> c(num.coeffs());
        for (auto& x : c) x /= g;
        num = IntPoly(std::move(c));
        den /= g;
    }
}

bool FElem::operator==(const FElem& o) const {
    return num * o.den == o.num * den;
}

FElem FElem::from_rat(const Rat& q) {
    FElem e;
    e.num = IntPoly::from_int(q.get_num());
    e.den = q.get_den();
    e.normalize();
    return e;
}

std::vector<Rat> FElem::rat_coeffs(int degree) const {
    std::vector<Rat> out(degree, Rat(0));
    for (int i = 0; i <= num.degree() && i < degree; ++i) {
        out[i] = Rat(num[i], den);
        out[i].canonicalize();
    }
    return out;
}

// -------------------------------------------------------- resultant_in_x

IntPoly resultant_in_x(const IntPoly& A, const std::vector<IntPoly>& B) {
    if (A.degree() < 1) throw std::domain_error("resultant_in_x: deg A must be >= 1");
    int e = -1;  // formal T-degree of B
    int k = static_cast<int>(B.size()) - 1;
    for (const auto& bj : B) e = std::max(e, bj.degree());
    if (e < 0) return IntPoly();
    const int D = A.degree();
    if (e == 0) {
        // B is T-free: Res = B(X)^D
        std::vector<Int> c(k + 1, Int(0));
        for (int j = 0; j <= k; ++j)
            c[j] = B[j].is_zero() ? Int(0) : B[j][0];
        IntPoly bx(std::move(c));
        IntPoly r = IntPoly::from_int(1);
        for (int i = 0; i < D; ++i) r = r * bx;
        return r;
    }

    const int n_points = D * std::max(k, 0) + 1;
    std::vector<Rat> xs(n_points), ys(n_points);
    for (int idx = 0; idx < n_points; ++idx) {
        // points 0, 1, -1, 2, -2, ...
        long v = (idx + 1) / 2;
        if (idx % 2 == 0) v = -v;
        xs[idx] = Rat(v);
        // evaluate B(T, x0) as an integer polynomial in T
        Int x0(v);
        std::vector<Int> bt(e + 1, Int(0));
        for (int j = 0; j <= k; ++j) {
            Int xp = 1;
            for (int jj = 0; jj < j; ++jj) xp *= x0;
            for (int i = 0; i <= B[j].degree(); ++i) bt[i] += B[j][i] * xp;
        }
        IntPoly bpoly((std::vector<Int>(bt)));
        int e_actual = bpoly.degree();
        Int res;
        if (e_actual < 0) {
            res = 0;
        } else {
            res = IntPoly::resultant(A, bpoly);
            // formal-degree correction: lc(A)^(e - e_actual)
            for (int i = 0; i < e - e_actual; ++i) res *= A.lead();
        }
        ys[idx] = Rat(res);
    }

    // exact interpolation: Newton divided differences, then Horner expansion
    std::vector<Rat> coef(n_points);
    std::vector<Rat> dd(ys);
    coef[0] = dd[0];
    for (int level = 1; level < n_points; ++level) {
        for (int i = 0; i + level < n_points; ++i) {
            dd[i] = (dd[i + 1] - dd[i]) / (xs[i + level] - xs[i]);
        }
        coef[level] = dd[0];
    }
    std::vector<Rat> acc{coef[n_points - 1]};
    for (int level = n_points - 2; level >= 0; --level) {
        // acc = acc * (X - xs[level]) + coef[level]
        std::vector<Rat> next(acc.size() + 1, Rat(0));
        for (size_t i = 0; i < acc.size(); ++i) {
            next[i + 1] += acc[i];
            next[i] -= acc[i] * xs[level];
        }
        next[0] += coef[level];
        acc = std::move(next);
    }
    std::vector<Int> out(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) {
        if (acc[i].get_den() != 1)
            throw std::runtime_error("resultant_in_x: non-integer interpolation result");
        out[i] = acc[i].get_num();
    }
    return IntPoly(std::move(out));
}

// ------------------------------------------------------------ NumberField

std::shared_ptr<NumberField> NumberField::create(IntPoly minpoly, Ball gen) {
    IntPoly m = minpoly.normalized();
    if (m.degree() < 1) throw std::domain_error("number field needs degree >= 1");
    return std::shared_ptr<NumberField>(new NumberField(std::move(m), std::move(gen)));
}

std::shared_ptr<NumberField> NumberField::rational(const Rat& c) {
    IntPoly m({Int(-c.get_num()), Int(c.get_den())});
    return create(m.normalized(), Ball::exact(c));
}

Ball NumberField::gen_ball() const {
    std::lock_guard<std::mutex> lock(mu_);
    return gen_;
}

FElem NumberField::gen() const {
    if (degree() == 1) {
        // T = c where G = a T - b: c = b/a
        Rat c(-minpoly_[0], minpoly_[1]);
        c.canonicalize();
        return FElem::from_rat(c);
    }
    FElem e;
    e.num = IntPoly::x();
    e.den = 1;
    return e;
}

FElem NumberField::from_rat_coeffs(const std::vector<Rat>& coeffs) const {
    RatPoly rp = RatPoly::from_coeffs(coeffs);
    return reduce(rp.num, rp.den);
}

FElem NumberField::reduce(IntPoly num, Int den) const {
    const int D = degree();
    FElem out;
    if (num.degree() >= D) {
        // pseudo-division: lc(G)^k num = q G + r
        IntPoly q, r;
        num.pseudo_divrem(minpoly_, q, r);
        int k = num.degree() - D + 1;
        Int lk = 1;
        for (int i = 0; i < k; ++i) lk *= minpoly_.lead();
        out.num = r;
        out.den = den * lk;
    } else {
        out.num = std::move(num);
        out.den = std::move(den);
    }
    out.normalize();
    return out;
}

FElem NumberField::add(const FElem& a, const FElem& b) const {
    FElem out;
    out.num = a.num * b.den + b.num * a.den;
    out.den = a.den * b.den;
    out.normalize();
    return out;
}

FElem NumberField::sub(const FElem& a, const FElem& b) const {
    FElem out;
    out.num = a.num * b.den - b.num * a.den;
    out.den = a.den * b.den;
    out.normalize();
    return out;
}

FElem NumberField::neg(const FElem& a) const {
    FElem out;
    out.num = -a.num;
    out.den = a.den;
    return out;
}

FElem NumberField::mul(const FElem& a, const FElem& b) const {
    return reduce(a.num * b.num, a.den * b.den);
}

FElem NumberField::mul_rat(const FElem& a, const Rat& q) const {
    FElem out;
    out.num = a.num * q.get_num();
    out.den = a.den * q.get_den();
    out.normalize();
    return out;
}

FElem NumberField::inv(const FElem& a) const {
    if (a.is_zero()) throw std::domain_error("field inversion of zero");
    if (degree() == 1) {
        Rat v(a.num[0], a.den);
        v.canonicalize();
        return FElem::from_rat(Rat(1) / v);
    }
    const int D = degree();
    // multimodular: solve a * b == 1 mod G per prime, CRT, reconstruct.
    Int modulus = 1;
    std::vector<Int> acc(D, Int(0));
    size_t pi = 0;
    int since_check = 0;
    while (true) {
        zp::u64 p = zp::nth_modular_prime(pi++);
        Int pz(static_cast<unsigned long>(p));
        if (minpoly_.lead() % pz == 0 || a.den % pz == 0) continue;
        zp::Poly gp = zp::reduce(minpoly_, p);
        zp::Poly ap = zp::reduce(a.num, p);
        if (ap.empty()) continue;
        zp::Poly g, s, t;
        zp::ext_gcd(ap, gp, g, s, t, p);
        if (zp::deg(g) != 0) continue;  // prime divides the norm; skip
        // b = s * den  (since (num/den) * (s*den) = num * s = 1 mod G)
        zp::u64 denp = static_cast<zp::u64>(Int(a.den % pz).get_ui());
        zp::Poly b = zp::mul_scalar(s, denp, p);
        b.resize(D, 0);
        if (modulus == 1) {
            for (int i = 0; i < D; ++i) acc[i] = Int(static_cast<unsigned long>(b[i]));
            modulus = pz;
        } else {
            for (int i = 0; i < D; ++i)
                acc[i] = crt_pair(acc[i], modulus, Int(static_cast<unsigned long>(b[i])), pz);
            modulus *= pz;
        }
        if (++since_check >= 2 || modulus > Int(1) << 128) {
            since_check = 0;
            // attempt rational reconstruction of all coefficients
            std::vector<Rat> coeffs(D);
            bool ok = true;
            for (int i = 0; i < D && ok; ++i) {
                auto r = rational_reconstruct(acc[i], modulus);
                if (!r) ok = false;
                else coeffs[i] = *r;
            }
            if (ok) {
                FElem cand = from_rat_coeffs(coeffs);
                if (mul(a, cand) == one()) return cand;
            }
        }
    }
}

FElem NumberField::pow(FElem a, Int e) const {
    bool invert = e < 0;
    if (invert) e = -e;
    FElem result = one();
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return result;
    for (size_t i = bits; i-- > 0;) {
        result = mul(result, result);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = mul(result, a);
    }
    return invert ? inv(result) : result;
}

bool NumberField::equal(const FElem& a, const FElem& b) const {
    return a == b;
}

std::optional<Rat> NumberField::as_rational(const FElem& a) const {
    if (a.num.degree() > 0) return std::nullopt;
    if (a.num.is_zero()) return Rat(0);
    Rat q(a.num[0], a.den);
    q.canonicalize();
    return q;
}

IntPoly NumberField::charpoly(const FElem& a) const {
    // Res_T(G, den*X - num(T)) = lc(G)^deg(num) * den^D * prod(X - a_sigma)
    std::vector<IntPoly> B(2);
    B[0] = -a.num;
    B[1] = IntPoly::from_int(a.den);
    IntPoly r = resultant_in_x(minpoly_, B);
    return r.normalized();
}

std::pair<IntPoly, Ball> NumberField::minpoly_of(const FElem& a, long prec) const {
    IntPoly cp = IntPoly::squarefree_part(charpoly(a));
    auto factors = irreducible_factors(cp);
    if (factors.size() == 1) {
        Ball v = eval_at_gen(a, prec);
        return {factors[0], v};
    }
    // select by certified value ball
    long p = prec;
    while (true) {
        Ball v = eval_at_gen(a, p);
        std::vector<size_t> hits;
        for (size_t i = 0; i < factors.size(); ++i) {
            auto roots_i = isolate_roots(factors[i], p);
            for (auto& rb : roots_i)
                if (!rb.disjoint(v)) { hits.push_back(i); break; }
        }
        if (hits.size() == 1) return {factors[hits[0]], eval_at_gen(a, p)};
        p *= 2;
        if (p > (1 << 16)) throw std::runtime_error("minpoly_of: precision exhausted");
    }
}

std::vector<Ball> NumberField::roots(long prec) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (roots_prec_ >= prec && !roots_cache_.empty()) return roots_cache_;
    auto rb = isolate_roots(minpoly_, prec);
    // locate the distinguished root: the unique one meeting gen_
    std::vector<size_t> hits;
    for (size_t i = 0; i < rb.size(); ++i)
        if (!rb[i].disjoint(gen_)) hits.push_back(i);
    if (hits.size() != 1) {
        // keep refining the isolation until unique (other roots are outside
        // gen_ by the isolator invariant, so their shrinking balls separate)
        long p = prec;
        while (hits.size() != 1) {
            p *= 2;
            if (p > (1 << 18)) throw std::runtime_error("gen ball matching failed");
            rb = isolate_roots(minpoly_, p);
            hits.clear();
            for (size_t i = 0; i < rb.size(); ++i)
                if (!rb[i].disjoint(gen_)) hits.push_back(i);
        }
    }
    gen_idx_ = hits[0];
    if (rb[gen_idx_].rad < gen_.rad) gen_ = rb[gen_idx_];
    roots_cache_ = rb;
    roots_prec_ = prec;
    return roots_cache_;
}

size_t NumberField::gen_index(long prec) const {
    roots(prec);
    std::lock_guard<std::mutex> lock(mu_);
    return gen_idx_;
}

Ball NumberField::eval_ball(const FElem& a, const Ball& at) const {
    Ball v = tordep::eval_ball(a.num, at);
    Ball d = Ball::exact(Rat(a.den));
    return v * d.inv();
}

Ball NumberField::eval_at_gen(const FElem& a, long prec) const {
    Rat target(1);
    {
        Int sc(1);
        mpz_mul_2exp(sc.get_mpz_t(), sc.get_mpz_t(), prec);
        target = Rat(1, sc);
    }
    long p = std::max<long>(64, prec);
    while (true) {
        auto rb = roots(p);
        size_t gi;
        {
            std::lock_guard<std::mutex> lock(mu_);
            gi = gen_idx_;
        }
        Ball v = eval_ball(a, rb[gi]);
        if (v.rad <= target) return v;
        p *= 2;
        if (p > (1 << 18)) throw std::runtime_error("eval_at_gen: precision exhausted");
    }
}

// ----------------------------------------------------------------- KPoly

KPoly kpoly_trim(KPoly f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
    return f;
}

int kpoly_deg(const KPoly& f) { return static_cast<int>(f.size()) - 1; }

KPoly kpoly_mul(const NumberField& K, const KPoly& a, const KPoly& b) {
    if (a.empty() || b.empty()) return {};
    KPoly r(a.size() + b.size() - 1, K.zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            r[i + j] = K.add(r[i + j], K.mul(a[i], b[j]));
        }
    }
    return kpoly_trim(std::move(r));
}

KPoly kpoly_rem(const NumberField& K, KPoly a, const KPoly& b) {
    a = kpoly_trim(std::move(a));
    KPoly bb = kpoly_trim(b);
    if (bb.empty()) throw std::domain_error("kpoly_rem by zero");
    FElem lead_inv = K.inv(bb.back());
    while (kpoly_deg(a) >= kpoly_deg(bb)) {
        FElem f = K.mul(a.back(), lead_inv);
        int shift = kpoly_deg(a) - kpoly_deg(bb);
        for (int i = 0; i <= kpoly_deg(bb); ++i) {
            a[shift + i] = K.sub(a[shift + i], K.mul(f, bb[i]));
        }
        a = kpoly_trim(std::move(a));
        if (a.empty()) break;
    }
    return a;
}

KPoly kpoly_gcd_monic(const NumberField& K, KPoly a, KPoly b) {
    a = kpoly_trim(std::move(a));
    b = kpoly_trim(std::move(b));
    while (!b.empty()) {
        KPoly r = kpoly_rem(K, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.empty()) return a;
    FElem li = K.inv(a.back());
    for (auto& c : a) c = K.mul(c, li);
    return a;
}

FElem kpoly_eval(const NumberField& K, const KPoly& f, const FElem& x) {
    FElem acc = K.zero();
    for (size_t i = f.size(); i-- > 0;) {
        acc = K.add(K.mul(acc, x), f[i]);
    }
    return acc;
}

// ----------------------------------------------------------- join_fields

namespace {

// Swap the roles of the two variables in a bivariate coefficient table:
// input rows[m] = coefficient of Y^m as a polynomial in X; output out[j] =
// coefficient of X^j as a polynomial in Y.
std::vector<IntPoly> transpose_bivariate(const std::vector<IntPoly>& rows) {
    int max_x = -1;
    for (const auto& r : rows) max_x = std::max(max_x, r.degree());
    std::vector<IntPoly> out;
    if (max_x < 0) return out;
    out.reserve(max_x + 1);
    for (int j = 0; j <= max_x; ++j) {
        std::vector<Int> c(rows.size(), Int(0));
        for (size_t m = 0; m < rows.size(); ++m) {
            if (j <= rows[m].degree()) c[m] = rows[m][j];
        }
        out.emplace_back(std::move(c));
    }
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

// Refine an (irreducible minpoly, isolating ball) pair to radius <= 2^-prec.
Ball refine_pair(const IntPoly& m, const Ball& b, long prec) {
    if (b.rad == 0) return b;
    if (m.degree() == 1) {
        Rat c(-m[0], m[1]);
        c.canonicalize();
        return Ball::exact(c);
    }
    long p = std::max<long>(64, 2 * prec);
    while (true) {
        auto rb = isolate_roots(m, p);
        std::vector<size_t> hits;
        for (size_t i = 0; i < rb.size(); ++i)
            if (!rb[i].disjoint(b)) hits.push_back(i);
        if (hits.size() == 1) return rb[hits[0]];
        p *= 2;
        if (p > (1 << 18)) throw std::runtime_error("refine_pair: precision exhausted");
    }
}

}  // namespace

JoinResult join_fields(const IntPoly& ma, const Ball& ball_a,
                       const IntPoly& mb, const Ball& ball_b) {
    // rational shortcuts
    if (ma.degree() == 1 && mb.degree() == 1) {
        Rat a(-ma[0], ma[1]), b(-mb[0], mb[1]);
        a.canonicalize();
        b.canonicalize();
        auto K = NumberField::rational(Rat(0));
        JoinResult out{K, K->from_rat(a), K->from_rat(b)};
        return out;
    }
    if (mb.degree() == 1) {
        Rat b(-mb[0], mb[1]);
        b.canonicalize();
        auto K = NumberField::create(ma, ball_a);
        return {K, K->gen(), K->from_rat(b)};
    }
    if (ma.degree() == 1) {
        Rat a(-ma[0], ma[1]);
        a.canonicalize();
        auto K = NumberField::create(mb, ball_b);
        return {K, K->from_rat(a), K->gen()};
    }

    for (long t = 1; t <= 40; ++t) {
        for (int sign = 0; sign < 2; ++sign) {
            Int tt = sign == 0 ? Int(t) : Int(-t);
            // gamma = alpha + t beta: R(X) = Res_T(mb(T), ma(X - t T)).
            // compose_linear_sub gives coefficients by powers of T as
            // polynomials in X; resultant_in_x wants the transpose.
            std::vector<IntPoly> B = transpose_bivariate(ma.compose_linear_sub(tt));
            IntPoly R = resultant_in_x(mb, B);
            IntPoly Rs = R.normalized();
            if (IntPoly::gcd(Rs, Rs.derivative()).degree() != 0) continue;  // need squarefree
            // locate gamma
            long prec = 64;
            Ball ba = refine_pair(ma, ball_a, prec);
            Ball bb = refine_pair(mb, ball_b, prec);
            Ball bg = ba + Ball::exact(Rat(tt)) * bb;
            auto factors = irreducible_factors(Rs);
            IntPoly mg;
            Ball root_g;
            bool located = false;
            for (int round = 0; round < 8 && !located; ++round) {
                std::vector<std::pair<size_t, Ball>> hits;
                for (size_t i = 0; i < factors.size(); ++i) {
                    auto rb = isolate_roots(factors[i], prec);
                    for (auto& r : rb)
                        if (!r.disjoint(bg)) hits.emplace_back(i, r);
                }
                if (hits.size() == 1) {
                    mg = factors[hits[0].first];
                    root_g = hits[0].second;
                    located = true;
                } else {
                    prec *= 2;
                    ba = refine_pair(ma, ball_a, prec);
                    bb = refine_pair(mb, ball_b, prec);
                    bg = ba + Ball::exact(Rat(tt)) * bb;
                }
            }
            if (!located) continue;

            auto K = NumberField::create(mg, root_g);
            // recover alpha: gcd over K of ma(Z) and t^db * mb((gamma - Z)/t)
            const int db = mb.degree();
            KPoly A(ma.degree() + 1);
            for (int i = 0; i <= ma.degree(); ++i) A[i] = K->from_rat(Rat(ma[i]));
            // H(Z) = sum_j mb_j (gamma - Z)^j t^(db - j)
            KPoly H{K->zero()};
            KPoly gz{K->gen(), K->from_rat(Rat(-1))};  // gamma - Z
            KPoly power{K->one()};
            Rat tq(tt);
            for (int j = 0; j <= db; ++j) {
                Rat scale(1);
                for (int i = 0; i < db - j; ++i) scale *= tq;
                if (mb[j] != 0) {
                    Rat c = Rat(mb[j]) * scale;
                    KPoly term = power;
                    for (auto& x : term) x = K->mul_rat(x, c);
                    if (H.size() < term.size()) H.resize(term.size(), K->zero());
                    for (size_t i = 0; i < term.size(); ++i) H[i] = K->add(H[i], term[i]);
                }
                if (j < db) power = kpoly_mul(*K, power, gz);
            }
            KPoly g = kpoly_gcd_monic(*K, A, kpoly_trim(std::move(H)));
            if (kpoly_deg(g) != 1) continue;
            FElem alpha = K->neg(g[0]);  // monic: Z + c0 -> root -c0
            FElem beta = K->mul_rat(K->sub(K->gen(), alpha), Rat(Int(1), tt));
            // exact verification
            KPoly MB(mb.degree() + 1);
            for (int i = 0; i <= mb.degree(); ++i) MB[i] = K->from_rat(Rat(mb[i]));
            if (!kpoly_eval(*K, A, alpha).is_zero()) continue;
            if (!kpoly_eval(*K, MB, beta).is_zero()) continue;
            return {K, alpha, beta};
        }
    }
    throw std::runtime_error("join_fields: no suitable primitive element found");
}

// ------------------------------------------------------- split_quadratic

QuadraticSplit split_quadratic(const FieldPtr& K, const FElem& P, const FElem& Q) {
    const int D = K->degree();
    // disc = P^2 - 4Q
    FElem disc = K->sub(K->mul(P, P), K->mul_rat(Q, Rat(4)));
    if (disc.is_zero()) {
        FElem y = K->mul_rat(P, Rat(-1, 2));
        return {true, y, y};
    }
    if (D == 1) {
        Rat d = *K->as_rational(disc);
        // rational square test
        if (d > 0) {
            Int n = d.get_num(), den = d.get_den();
            Int sn = isqrt(n), sd = isqrt(den);
            if (sn * sn == n && sd * sd == den) {
                Rat s(sn, sd);
                Rat p = *K->as_rational(P);
                Rat y0 = (-p + s) / 2, y1 = (-p - s) / 2;
                return {true, K->from_rat(y0), K->from_rat(y1)};
            }
        }
        return {false, {}, {}};
    }

    const IntPoly& G = K->minpoly();
    for (long t = 0; t <= 40; ++t) {
        // gamma' = y + t*gen; R(X) = Res_T(G, (X - tT)^2 + P(T)(X - tT) + Q(T))
        // with denominators cleared.
        Int delta = lcm(P.den, Q.den);
        // B(T, X) coefficients in X: X^2*delta + X*(-2tT*delta + P*delta) + ...
        std::vector<IntPoly> B(3);
        Int t2 = Int(t) * Int(t);
        IntPoly Pn = P.num * (delta / P.den);
        IntPoly Qn = Q.num * (delta / Q.den);
        // (X - tT)^2 = X^2 - 2tT X + t^2 T^2
        B[2] = IntPoly::from_int(delta);
        B[1] = IntPoly({Int(0), Int(-2) * Int(t) * delta}) + Pn;
        B[0] = IntPoly::monomial(t2 * delta, 2) +
               [&] {
                   // -tT * P(T)
                   IntPoly shifted = Pn * IntPoly({Int(0), Int(-t)});
                   return shifted;
               }() +
               Qn;
        IntPoly R = resultant_in_x(G, B).normalized();
        if (R.degree() != 2 * D) continue;
        if (IntPoly::gcd(R, R.derivative()).degree() != 0) continue;

        auto factors = irreducible_factors(R);
        // certified y-candidate balls at the distinguished embedding:
        long prec = 96;
        bool decided = false;
        bool is_split = false;
        FElem y0, y1;
        while (!decided) {
            Ball gb = K->gen_ball();
            gb = refine_pair(G, gb, prec);
            Ball pb = K->eval_ball(P, gb);
            Ball qb = K->eval_ball(Q, gb);
            Ball db = pb * pb - qb * Ball::exact(Rat(4));
            if (db.contains_zero()) {
                prec *= 2;
                if (prec > (1 << 16)) throw std::runtime_error("split_quadratic: disc ball stuck at 0");
                continue;
            }
            auto [s_plus, s_minus] = db.sqrt_both(prec);
            Ball half = Ball::exact(Rat(1, 2));
            Ball yb = (s_plus - pb) * half;  // one branch of y
            Ball gammab = yb + Ball::exact(Rat(t)) * gb;
            std::vector<std::pair<size_t, Ball>> hits;
            for (size_t i = 0; i < factors.size(); ++i) {
                auto rb = isolate_roots(factors[i], prec);
                for (auto& r : rb)
                    if (!r.disjoint(gammab)) hits.emplace_back(i, r);
            }
            if (hits.size() != 1) {
                prec *= 2;
                if (prec > (1 << 16)) throw std::runtime_error("split_quadratic: gamma' location stuck");
                continue;
            }
            const IntPoly& F = factors[hits[0].first];
            if (F.degree() == 2 * D) {
                decided = true;
                is_split = false;
                break;
            }
            if (F.degree() != D) break;  // bad t
            // candidate: y in K; recover via gcd(Y^2+PY+Q, F(Y + t*gen))
            KPoly quad{Q, P, K->one()};
            KPoly FY{K->zero()};
            // F(Y + t*gen) via Horner in (Y + t*gen)
            KPoly lin{K->mul_rat(K->gen(), Rat(t)), K->one()};
            KPoly acc{K->from_rat(Rat(F[F.degree()]))};
            for (int i = F.degree() - 1; i >= 0; --i) {
                acc = kpoly_mul(*K, acc, lin);
                if (acc.empty()) acc = KPoly{K->zero()};
                acc[0] = K->add(acc[0], K->from_rat(Rat(F[i])));
            }
            KPoly r = kpoly_rem(*K, acc, quad);
            if (kpoly_deg(r) == 1 && !r[1].is_zero()) {
                FElem w = K->neg(K->div(r[0], r[1]));
                // verify w^2 + Pw + Q == 0
                FElem chk = K->add(K->add(K->mul(w, w), K->mul(P, w)), Q);
                if (chk.is_zero()) {
                    decided = true;
                    is_split = true;
                    y0 = w;
                    y1 = K->sub(K->neg(P), w);
                    break;
                }
            }
            break;  // bad t, try next
        }
        if (decided) {
            if (is_split) return {true, y0, y1};
            return {false, {}, {}};
        }
    }
    throw std::runtime_error("split_quadratic: no usable shift found");
}

// -------------------------------------------------------------- PointField

std::shared_ptr<PointField> PointField::make(FieldPtr K, FElem P, FElem Q) {
    auto pf = std::make_shared<PointField>();
    pf->K_ = std::move(K);
    pf->P_ = std::move(P);
    pf->Q_ = std::move(Q);
    auto split = split_quadratic(pf->K_, pf->P_, pf->Q_);
    if (split.split) {
        pf->inert_ = false;
        pf->y0_ = split.y0;
        pf->y1_ = split.y1;
    } else {
        pf->inert_ = true;
    }
    return pf;
}

PointField::Elem PointField::y_elem(int branch) const {
    if (!inert_) return {branch == 0 ? y0_ : y1_, K_->zero()};
    if (branch == 0) return {K_->zero(), K_->one()};
    // the conjugate branch: -P - y
    return {K_->neg(P_), K_->from_rat(Rat(-1))};
}

bool PointField::equal(const Elem& a, const Elem& b) const {
    return K_->equal(a.u, b.u) && K_->equal(a.v, b.v);
}

PointField::Elem PointField::add(const Elem& a, const Elem& b) const {
    return {K_->add(a.u, b.u), K_->add(a.v, b.v)};
}

PointField::Elem PointField::sub(const Elem& a, const Elem& b) const {
    return {K_->sub(a.u, b.u), K_->sub(a.v, b.v)};
}

PointField::Elem PointField::neg(const Elem& a) const {
    return {K_->neg(a.u), K_->neg(a.v)};
}

PointField::Elem PointField::mul(const Elem& a, const Elem& b) const {
    if (!inert_) return {K_->mul(a.u, b.u), K_->zero()};
    // (u1 + v1 y)(u2 + v2 y) with y^2 = -P y - Q
    FElem uu = K_->mul(a.u, b.u);
    FElem vv = K_->mul(a.v, b.v);
    FElem cross = K_->add(K_->mul(a.u, b.v), K_->mul(a.v, b.u));
    return {K_->sub(uu, K_->mul(vv, Q_)), K_->sub(cross, K_->mul(vv, P_))};
}

PointField::Elem PointField::inv(const Elem& a) const {
    if (is_zero(a)) throw std::domain_error("tower inversion of zero");
    if (!inert_) return {K_->inv(a.u), K_->zero()};
    // conj = (u - vP) - v y; norm = u^2 - P u v + Q v^2 in K
    FElem n = K_->add(K_->sub(K_->mul(a.u, a.u), K_->mul(K_->mul(P_, a.u), a.v)),
                      K_->mul(Q_, K_->mul(a.v, a.v)));
    FElem ninv = K_->inv(n);
    FElem cu = K_->sub(a.u, K_->mul(a.v, P_));
    return {K_->mul(cu, ninv), K_->neg(K_->mul(a.v, ninv))};
}

PointField::Elem PointField::pow(Elem a, Int e) const {
    bool invert = e < 0;
    if (invert) e = -e;
    Elem result = one();
    size_t bits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        result = mul(result, result);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = mul(result, a);
    }
    return invert ? inv(result) : result;
}

PointField::Elem PointField::mul_rat(const Elem& a, const Rat& q) const {
    return {K_->mul_rat(a.u, q), K_->mul_rat(a.v, q)};
}

IntPoly PointField::charpoly(const Elem& a) const {
    if (!inert_) return K_->charpoly(a.u);
    // over K: X^2 - s X + n with s = 2u - Pv, n = u^2 - P u v + Q v^2
    FElem s = K_->sub(K_->mul_rat(a.u, Rat(2)), K_->mul(P_, a.v));
    FElem n = K_->add(K_->sub(K_->mul(a.u, a.u), K_->mul(K_->mul(P_, a.u), a.v)),
                      K_->mul(Q_, K_->mul(a.v, a.v)));
    // clear denominators: multiply by delta gives delta X^2 - delta s X + delta n
    Int delta = lcm(s.den, n.den);
    std::vector<IntPoly> B(3);
    B[2] = IntPoly::from_int(delta);
    B[1] = -(s.num * (delta / s.den));
    B[0] = n.num * (delta / n.den);
    if (K_->degree() == 1) {
        // base is Q: charpoly directly the quadratic with rational values
        Rat sv = *K_->as_rational(s), nv = *K_->as_rational(n);
        RatPoly rp = RatPoly::from_coeffs({nv, -sv, Rat(1)});
        return rp.num.normalized();
    }
    return resultant_in_x(K_->minpoly(), B).normalized();
}

std::vector<PointField::Embedding> PointField::embeddings(long prec) const {
    std::vector<Embedding> out;
    size_t nroots = K_->roots(prec).size();
    for (size_t i = 0; i < nroots; ++i) {
        for (int b = 0; b < extension_degree(); ++b) out.push_back({i, b});
    }
    return out;
}

Ball PointField::y_ball(const Embedding& e, long prec) const {
    auto rb = K_->roots(prec);
    const Ball& at = rb[e.base_root];
    if (!inert_) {
        return K_->eval_ball(e.branch == 0 ? y0_ : y1_, at);
    }
    long p = prec;
    while (true) {
        auto rb2 = K_->roots(p);
        Ball pb = K_->eval_ball(P_, rb2[e.base_root]);
        Ball qb = K_->eval_ball(Q_, rb2[e.base_root]);
        Ball db = pb * pb - qb * Ball::exact(Rat(4));
        if (!db.contains_zero()) {
            auto [sp, sm] = db.sqrt_both(p);
            Ball half = Ball::exact(Rat(1, 2));
            return ((e.branch == 0 ? sp : sm) - pb) * half;
        }
        p *= 2;
        if (p > (1 << 16)) throw std::runtime_error("y_ball: discriminant ball stuck at 0");
    }
}

Ball PointField::eval_ball(const Elem& a, const Embedding& e, long prec) const {
    auto rb = K_->roots(prec);
    Ball u = K_->eval_ball(a.u, rb[e.base_root]);
    if (!inert_ || a.v.is_zero()) return u;
    Ball v = K_->eval_ball(a.v, rb[e.base_root]);
    return u + v * y_ball(e, prec);
}

}  // namespace tordep
