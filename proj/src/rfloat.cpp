#include "tordep/rfloat.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace tordep {

// ---------------------------------------------------------------- rational.hpp

std::string rat_to_string(const Rat& q) {
    Rat c(q);
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Int num = int_from_string(s.substr(0, slash));
        Int den = int_from_string(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + s);
        Rat q(num, den);
        q.canonicalize();
        return q;
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        size_t frac_len = s.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+")
            throw std::invalid_argument("bad decimal literal: " + s);
        Int num = int_from_string(digits);
        Int den = 1;
        for (size_t i = 0; i < frac_len; ++i) den *= 10;
        Rat q(num, den);
        q.canonicalize();
        return q;
    }
    return Rat(int_from_string(s));
}

std::string rat_to_decimal(const Rat& q, int digits) {
    if (digits < 0) digits = 0;
    Int num = q.get_num(), den = q.get_den();
    bool neg = num < 0;
    if (neg) num = -num;
    Int scale = 1;
    for (int i = 0; i <= digits; ++i) scale *= 10;  // one guard digit for rounding
    Int scaled = num * scale / den;
    // round the guard digit
    Int rem = scaled % 10;
    scaled /= 10;
    if (rem >= 5) scaled += 1;
    Int ip = scaled, fp = 0;
    Int pow10 = 1;
    for (int i = 0; i < digits; ++i) pow10 *= 10;
    fp = scaled % pow10;
    ip = scaled / pow10;
    std::string out = (neg && scaled != 0) ? "-" : "";
    out += ip.get_str();
    if (digits > 0) {
        std::string f = fp.get_str();
        out += "." + std::string(digits - f.size(), '0') + f;
    }
    return out;
}

Rat sqrt_upper(const Rat& q) {
    if (q < 0) throw std::domain_error("sqrt of negative rational");
    if (q == 0) return Rat(0);
    // ceil-ish bound via integer sqrt of a scaled value: sqrt(n/d) <= (isqrt(n*d)+1)/d
    Int nd = q.get_num() * q.get_den();
    return Rat(isqrt(nd) + 1, q.get_den());
}

Rat sqrt_lower(const Rat& q) {
    if (q < 0) throw std::domain_error("sqrt of negative rational");
    if (q == 0) return Rat(0);
    Int nd = q.get_num() * q.get_den();
    return Rat(isqrt(nd), q.get_den());
}

Int crt_pair(const Int& r1, const Int& m1, const Int& r2, const Int& m2) {
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t()) == 0)
        throw std::runtime_error("crt: moduli not coprime");
    Int t = ((r2 - r1) * inv) % m2;
    if (t < 0) t += m2;
    return r1 + m1 * t;
}

Int symmetric_mod(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

std::optional<Rat> rational_reconstruct(const Int& a, const Int& m) {
    Int bound = isqrt(m / 2);
    Int r0 = m, r1 = a % m;
    if (r1 < 0) r1 += m;
    Int t0 = 0, t1 = 1;
    while (r1 > bound) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        Int t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (t1 == 0) return std::nullopt;
    if (t1 < 0) { t1 = -t1; r1 = -r1; }
    if (t1 > bound) return std::nullopt;
    if (gcd(Int(abs(r1)), t1) != 1) return std::nullopt;
    Rat q(r1, t1);
    q.canonicalize();
    return q;
}

std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t result = n;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

std::vector<std::uint64_t> divisors_of(std::uint64_t n) {
    std::vector<std::uint64_t> d;
    for (std::uint64_t i = 1; i * i <= n; ++i) {
        if (n % i == 0) {
            d.push_back(i);
            if (i != n / i) d.push_back(n / i);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

std::vector<std::uint64_t> prime_divisors_of(std::uint64_t n) {
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

// ------------------------------------------------------------------- Real

Real Real::from_double(double d, long prec) {
    Real r(prec);
    mpfr_set_d(r.v_, d, MPFR_RNDN);
    return r;
}

Real Real::from_int(const Int& z, long prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_set_z(r.v_, z.get_mpz_t(), rnd);
    return r;
}

Real Real::from_rat(const Rat& q, long prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_set_q(r.v_, q.get_mpq_t(), rnd);
    return r;
}

Real Real::pi(long prec) {
    Real r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

Rat Real::to_rat() const {
    if (mpfr_zero_p(v_)) return Rat(0);
    if (!mpfr_number_p(v_)) throw std::domain_error("non-finite mpfr value");
    Int m;
    mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
    Rat q(m);
    if (e >= 0) {
        mpz_mul_2exp(q.get_num().get_mpz_t(), q.get_num().get_mpz_t(), e);
    } else {
        Int d(1);
        mpz_mul_2exp(d.get_mpz_t(), d.get_mpz_t(), -e);
        q /= Rat(d);
    }
    q.canonicalize();
    return q;
}

std::string Real::str(int digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

#define TORDEP_REAL_BINOP(op, fn)                                           \
    Real Real::operator op(const Real& o) const {                          \
        Real r(std::max(prec(), o.prec()));                                \
        fn(r.v_, v_, o.v_, MPFR_RNDN);                                     \
        return r;                                                          \
    }
TORDEP_REAL_BINOP(+, mpfr_add)
TORDEP_REAL_BINOP(-, mpfr_sub)
TORDEP_REAL_BINOP(*, mpfr_mul)
TORDEP_REAL_BINOP(/, mpfr_div)
#undef TORDEP_REAL_BINOP

Real Real::operator-() const {
    Real r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

#define TORDEP_REAL_UNFN(name, fn)                   \
    Real name(const Real& a) {                       \
        Real r(a.prec());                            \
        fn(r.v_, a.v_, MPFR_RNDN);                   \
        return r;                                    \
    }
TORDEP_REAL_UNFN(abs, mpfr_abs)
TORDEP_REAL_UNFN(sqrt, mpfr_sqrt)
TORDEP_REAL_UNFN(log, mpfr_log)
TORDEP_REAL_UNFN(exp, mpfr_exp)
TORDEP_REAL_UNFN(cos, mpfr_cos)
TORDEP_REAL_UNFN(sin, mpfr_sin)
#undef TORDEP_REAL_UNFN

Real atan2(const Real& y, const Real& x) {
    Real r(std::max(y.prec(), x.prec()));
    mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
    return r;
}

Real hypot(const Real& x, const Real& y) {
    Real r(std::max(y.prec(), x.prec()));
    mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

Rat log_lower(const Rat& q, long prec) {
    if (q <= 0) throw std::domain_error("log of nonpositive rational");
    Real x = Real::from_rat(q, prec, MPFR_RNDD);
    Real r(prec);
    mpfr_log(r.get(), x.get(), MPFR_RNDD);
    return r.to_rat();
}

Rat log_upper(const Rat& q, long prec) {
    if (q <= 0) throw std::domain_error("log of nonpositive rational");
    Real x = Real::from_rat(q, prec, MPFR_RNDU);
    Real r(prec);
    mpfr_log(r.get(), x.get(), MPFR_RNDU);
    return r.to_rat();
}

// ------------------------------------------------------------------ Complex

Complex Complex::operator/(const Complex& o) const {
    Real n = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
}

Complex sqrt(const Complex& z) {
    // principal branch via polar form
    Real r = z.abs();
    if (r.is_zero()) return Complex::zero(z.prec());
    Real half = Real::from_double(0.5, z.prec());
    Real m = sqrt(r);
    Real a = z.arg() * half;
    return {m * cos(a), m * sin(a)};
}

Complex exp(const Complex& z) {
    Real m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

Complex log(const Complex& z) {
    return {log(z.abs()), z.arg()};
}

}  // namespace tordep
