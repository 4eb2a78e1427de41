#include "tordep/int_poly.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "tordep/zp_poly.hpp"

namespace tordep {

IntPoly IntPoly::monomial(const Int& a, int k) {
    std::vector<Int> c(k + 1, Int(0));
    c[k] = a;
    return IntPoly(std::move(c));
}

IntPoly IntPoly::operator-() const {
    std::vector<Int> r(c_);
    for (auto& x : r) x = -x;
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (is_zero() || o.is_zero()) return IntPoly();
    std::vector<Int> r(c_.size() + o.c_.size() - 1, Int(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] != 0) r[i + j] += c_[i] * o.c_[j];
        }
    }
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const Int& a) const {
    if (a == 0) return IntPoly();
    std::vector<Int> r(c_);
    for (auto& x : r) x *= a;
    return IntPoly(std::move(r));
}

IntPoly IntPoly::divexact(const IntPoly& g) const {
    if (g.is_zero()) throw std::domain_error("division by zero polynomial");
    if (is_zero()) return IntPoly();
    std::vector<Int> rem(c_);
    int dr = degree(), dg = g.degree();
    if (dr < dg) throw std::domain_error("inexact polynomial division");
    std::vector<Int> q(dr - dg + 1, Int(0));
    for (int k = dr - dg; k >= 0; --k) {
        Int top = rem[k + dg];
        if (top == 0) continue;
        Int qc = top / g.lead();
        if (qc * g.lead() != top) throw std::domain_error("inexact polynomial division");
        q[k] = qc;
        for (int i = 0; i <= dg; ++i) rem[k + i] -= qc * g[i];
    }
    for (const auto& x : rem)
        if (x != 0) throw std::domain_error("inexact polynomial division");
    return IntPoly(std::move(q));
}

void IntPoly::pseudo_divrem(const IntPoly& g, IntPoly& q, IntPoly& r) const {
    if (g.is_zero()) throw std::domain_error("pseudo division by zero");
    int dg = g.degree();
    IntPoly rr = *this;
    std::vector<Int> qq;
    int steps = degree() - dg + 1;
    if (steps < 0) { q = IntPoly(); r = *this; return; }
    qq.assign(steps, Int(0));
    const Int& l = g.lead();
    while (rr.degree() >= dg) {
        int k = rr.degree() - dg;
        Int coef = rr.lead();
        rr = rr * l - g * IntPoly::monomial(coef, k);
        for (auto& x : qq) x *= l;
        qq[k] += coef;
    }
    q = IntPoly(std::move(qq));
    r = std::move(rr);
}

void IntPoly::divrem_monic(const IntPoly& g, IntPoly& q, IntPoly& r) const {
    if (!g.is_monic()) throw std::domain_error("divrem_monic requires monic divisor");
    std::vector<Int> rem(c_);
    int dg = g.degree();
    int dq = degree() - dg;
    if (dq < 0) { q = IntPoly(); r = *this; return; }
    std::vector<Int> qq(dq + 1, Int(0));
    for (int k = dq; k >= 0; --k) {
        Int top = rem[k + dg];
        if (top == 0) continue;
        qq[k] = top;
        for (int i = 0; i <= dg; ++i) rem[k + i] -= top * g[i];
    }
    q = IntPoly(std::move(qq));
    r = IntPoly(std::move(rem));
}

bool IntPoly::divides(const IntPoly& g) const {
    if (is_zero()) return g.is_zero();
    if (g.is_zero()) return true;
    if (g.degree() < degree()) return false;
    // quick modular rejection
    zp::u64 p = zp::nth_modular_prime(0);
    Int lz = lead() % Int(static_cast<unsigned long>(p));
    if (lz != 0) {
        zp::Poly a = zp::reduce(*this, p), b = zp::reduce(g, p);
        if (!zp::rem(b, a, p).empty()) return false;
    }
    try {
        (void)g.divexact(*this);
        return true;
    } catch (const std::domain_error&) {
        return false;
    }
}

IntPoly IntPoly::derivative() const {
    if (c_.size() <= 1) return IntPoly();
    std::vector<Int> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Int(static_cast<unsigned long>(i));
    return IntPoly(std::move(r));
}

Int IntPoly::content() const {
    Int g = 0;
    for (const auto& x : c_) g = ::gcd(g, x);
    return g < 0 ? Int(-g) : g;
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero()) return IntPoly();
    Int ct = content();
    std::vector<Int> r(c_);
    for (auto& x : r) x /= ct;
    return IntPoly(std::move(r));
}

IntPoly IntPoly::normalized() const {
    IntPoly p = primitive_part();
    if (!p.is_zero() && p.lead() < 0) p = -p;
    return p;
}

Int IntPoly::eval(const Int& x) const {
    Int r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
}

Rat IntPoly::eval(const Rat& x) const {
    Rat r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = r * x + Rat(c_[i]);
    return r;
}

IntPoly IntPoly::compose_xk(int k) const {
    if (is_zero()) return IntPoly();
    std::vector<Int> r(static_cast<size_t>(degree()) * k + 1, Int(0));
    for (size_t i = 0; i < c_.size(); ++i) r[i * k] = c_[i];
    return IntPoly(std::move(r));
}

IntPoly IntPoly::reverse() const {
    std::vector<Int> r(c_.rbegin(), c_.rend());
    return IntPoly(std::move(r));
}

IntPoly IntPoly::shift(const Int& b) const {
    // Horner: f(X+b) = (...(c_d (X+b) + c_{d-1})(X+b) + ...)
    IntPoly acc;
    IntPoly xpb({b, Int(1)});
    for (size_t i = c_.size(); i-- > 0;) {
        acc = acc * xpb + IntPoly::from_int(c_[i]);
    }
    return acc;
}

IntPoly IntPoly::scale_num(const Int& a) const {
    std::vector<Int> r(c_);
    Int pw = 1;
    for (size_t i = 0; i < r.size(); ++i) {
        r[i] *= pw;
        pw *= a;
    }
    return IntPoly(std::move(r));
}

std::vector<IntPoly> IntPoly::compose_linear_sub(const Int& t) const {
    // f(X - tY) = sum_j Y^j * [ sum_i c_i binom(i,j) (-t)^j X^(i-j) ]
    int d = degree();
    std::vector<IntPoly> out;
    if (d < 0) return out;
    out.assign(d + 1, IntPoly());
    // binomials
    std::vector<std::vector<Int>> binom(d + 1, std::vector<Int>(d + 1, Int(0)));
    for (int i = 0; i <= d; ++i) {
        binom[i][0] = 1;
        for (int j = 1; j <= i; ++j)
            binom[i][j] = binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : Int(0));
    }
    for (int j = 0; j <= d; ++j) {
        Int tj = 1;
        for (int k = 0; k < j; ++k) tj *= -t;
        std::vector<Int> coef(d - j + 1, Int(0));
        for (int i = j; i <= d; ++i) {
            if (c_[i] != 0) coef[i - j] = c_[i] * binom[i][j] * tj;
        }
        out[j] = IntPoly(std::move(coef));
    }
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

IntPoly IntPoly::gcd(const IntPoly& a0, const IntPoly& b0) {
    if (a0.is_zero()) return b0.normalized();
    if (b0.is_zero()) return a0.normalized();
    IntPoly a = a0.primitive_part(), b = b0.primitive_part();
    Int lc_g = ::gcd(a.lead(), b.lead());
    if (lc_g < 0) lc_g = -lc_g;

    int best_deg = std::min(a.degree(), b.degree()) + 1;
    Int modulus = 0;
    IntPoly acc;
    size_t pi = 0;
    int stable = 0;
    while (true) {
        zp::u64 p = zp::nth_modular_prime(pi++);
        Int pz(static_cast<unsigned long>(p));
        if (a.lead() % pz == 0 || b.lead() % pz == 0) continue;
        zp::Poly ga = zp::reduce(a, p), gb = zp::reduce(b, p);
        zp::Poly g = zp::gcd(ga, gb, p);
        int dg = zp::deg(g);
        if (dg == 0) return IntPoly::from_int(1);
        if (dg > best_deg) continue;  // unlucky prime
        if (dg < best_deg) {
            best_deg = dg;
            modulus = 0;
            stable = 0;
        }
        // scale to leading coefficient lc_g mod p
        zp::u64 lgi = zp::mulmod(
            static_cast<zp::u64>(Int(lc_g % pz).get_ui()), zp::invmod(g.back(), p), p);
        g = zp::mul_scalar(g, lgi, p);
        std::vector<Int> lifted(dg + 1);
        if (modulus == 0) {
            for (int i = 0; i <= dg; ++i)
                lifted[i] = symmetric_mod(Int(static_cast<unsigned long>(g[i])), pz);
            modulus = pz;
        } else {
            for (int i = 0; i <= dg; ++i) {
                Int prev = i <= acc.degree() ? acc[i] : Int(0);
                lifted[i] = symmetric_mod(
                    crt_pair(prev, modulus, Int(static_cast<unsigned long>(g[i])), pz),
                    modulus * pz);
            }
            modulus *= pz;
        }
        IntPoly cand(std::move(lifted));
        if (!acc.is_zero() && cand == acc) {
            ++stable;
        } else {
            stable = 0;
        }
        acc = cand;
        if (stable >= 1) {
            IntPoly g_prim = acc.normalized();
            if (g_prim.divides(a) && g_prim.divides(b)) return g_prim;
        }
    }
}

IntPoly IntPoly::squarefree_part(const IntPoly& f) {
    if (f.degree() <= 1) return f.normalized();
    IntPoly g = gcd(f, f.derivative());
    if (g.degree() == 0) return f.normalized();
    return f.normalized().divexact(g).normalized();
}

Int IntPoly::resultant(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return 0;
    if (a.degree() == 0) {
        Int r = 1;
        for (int i = 0; i < b.degree(); ++i) r *= a[0];
        return r;
    }
    if (b.degree() == 0) {
        Int r = 1;
        for (int i = 0; i < a.degree(); ++i) r *= b[0];
        return r;
    }
    // Hadamard-style bound: |Res| <= ||a||_2^deg(b) * ||b||_2^deg(a)
    Rat bound = 1;
    Rat na = a.norm2_upper(), nb = b.norm2_upper();
    for (int i = 0; i < b.degree(); ++i) bound *= na;
    for (int i = 0; i < a.degree(); ++i) bound *= nb;
    Int target = bound.get_num() / bound.get_den() + 1;
    target = 2 * target + 1;

    Int modulus = 1, value = 0;
    size_t pi = 0;
    while (modulus < target) {
        zp::u64 p = zp::nth_modular_prime(pi++);
        Int pz(static_cast<unsigned long>(p));
        if (a.lead() % pz == 0 || b.lead() % pz == 0) continue;
        zp::u64 rp = zp::resultant(zp::reduce(a, p), zp::reduce(b, p), p);
        Int rz(static_cast<unsigned long>(rp));
        value = (modulus == 1) ? rz : crt_pair(value, modulus, rz, pz);
        modulus *= pz;
    }
    return symmetric_mod(value, modulus);
}

Rat IntPoly::norm2_upper() const {
    Int s = 0;
    for (const auto& x : c_) s += x * x;
    return sqrt_upper(Rat(s));
}

Rat IntPoly::root_radius_upper() const {
    if (degree() < 1) return Rat(0);
    // Cauchy: all roots have |z| <= 1 + max|c_i / c_d|
    Rat mx(0);
    for (int i = 0; i < degree(); ++i) {
        Rat q(abs(c_[i]), abs(lead()));
        q.canonicalize();
        if (q > mx) mx = q;
    }
    return mx + 1;
}

size_t IntPoly::max_coeff_bits() const {
    size_t bits = 1;
    for (const auto& x : c_) bits = std::max(bits, mpz_sizeinbase(x.get_mpz_t(), 2));
    return bits;
}

std::string IntPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
        if (c_[i] == 0) continue;
        if (!out.empty()) out += c_[i] > 0 ? " + " : " - ";
        else if (c_[i] < 0) out += "-";
        Int a = abs(c_[i]);
        bool show_coef = (a != 1) || i == 0;
        if (show_coef) out += a.get_str();
        if (i > 0) {
            if (show_coef) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

namespace {
const IntPoly& cyclotomic_locked(std::uint64_t m, std::map<std::uint64_t, IntPoly>& cache) {
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    // x^m - 1 divided by the proper cyclotomic divisors
    std::vector<Int> xm(m + 1, Int(0));
    xm[0] = -1;
    xm[m] = 1;
    IntPoly f((std::vector<Int>(xm)));
    for (auto d : divisors_of(m)) {
        if (d == m) continue;
        f = f.divexact(cyclotomic_locked(d, cache));
    }
    return cache.emplace(m, std::move(f)).first->second;
}
}  // namespace

const IntPoly& cyclotomic(std::uint64_t m) {
    static std::map<std::uint64_t, IntPoly> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    return cyclotomic_locked(m, cache);
}

RatPoly RatPoly::from_coeffs(const std::vector<Rat>& coeffs) {
    Int den = 1;
    for (const auto& q : coeffs) den = den / gcd(den, q.get_den()) * q.get_den();
    std::vector<Int> c(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) {
        c[i] = coeffs[i].get_num() * (den / coeffs[i].get_den());
    }
    RatPoly rp;
    rp.num = IntPoly(std::move(c));
    rp.den = den;
    return rp;
}

std::vector<Rat> RatPoly::rat_coeffs() const {
    std::vector<Rat> out(num.degree() + 1);
    for (int i = 0; i <= num.degree(); ++i) {
        out[i] = Rat(num[i], den);
        out[i].canonicalize();
    }
    return out;
}

}  // namespace tordep
