#include "tordep/zp_poly.hpp"

#include <mutex>
#include <random>
#include <stdexcept>

namespace tordep {
namespace zp {

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 p) {
    if (a % p == 0) throw std::domain_error("zp::invmod of zero");
    return powmod(a % p, p - 2, p);
}

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly reduce(const IntPoly& f, u64 p) {
    Poly r(f.degree() + 1);
    Int pz(static_cast<unsigned long>(p));
    for (int i = 0; i <= f.degree(); ++i) {
        Int m = f[i] % pz;
        if (m < 0) m += pz;
        r[i] = m.get_ui();
    }
    trim(r);
    return r;
}

Poly add(const Poly& a, const Poly& b, u64 p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = addmod(r[i], b[i], p);
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b, u64 p) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = submod(r[i], b[i], p);
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            r[i + j] = addmod(r[i + j], mulmod(a[i], b[j], p), p);
        }
    }
    trim(r);
    return r;
}

Poly mul_scalar(const Poly& a, u64 s, u64 p) {
    Poly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = mulmod(a[i], s, p);
    trim(r);
    return r;
}

void divrem(const Poly& a, const Poly& b, Poly& q, Poly& r, u64 p) {
    if (b.empty()) throw std::domain_error("zp division by zero poly");
    r = a;
    q.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, 0);
    u64 binv = invmod(b.back(), p);
    while (deg(r) >= deg(b)) {
        u64 f = mulmod(r.back(), binv, p);
        int shift = deg(r) - deg(b);
        q[shift] = f;
        for (size_t i = 0; i < b.size(); ++i) {
            r[shift + i] = submod(r[shift + i], mulmod(f, b[i], p), p);
        }
        trim(r);
        if (r.empty()) break;
    }
    trim(q);
}

Poly rem(const Poly& a, const Poly& b, u64 p) {
    Poly q, r;
    divrem(a, b, q, r, p);
    return r;
}

Poly monic(Poly f, u64 p) {
    trim(f);
    if (f.empty()) return f;
    return mul_scalar(f, invmod(f.back(), p), p);
}

Poly gcd(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(std::move(a), p);
}

Poly powmod_poly(Poly base, const Int& e, const Poly& mod, u64 p) {
    Poly r{1};
    base = rem(base, mod, p);
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = rem(mul(r, r, p), mod, p);
        if (mpz_tstbit(e.get_mpz_t(), i)) r = rem(mul(r, base, p), mod, p);
    }
    return r;
}

Poly derivative(const Poly& f, u64 p) {
    if (f.size() <= 1) return {};
    Poly r(f.size() - 1);
    for (size_t i = 1; i < f.size(); ++i) r[i - 1] = mulmod(f[i], i % p, p);
    trim(r);
    return r;
}

u64 resultant(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    if (a.empty() || b.empty()) return 0;
    u64 res = 1;
    bool neg = false;
    while (true) {
        if (deg(b) == 0) {
            res = mulmod(res, powmod(b[0], deg(a), p), p);
            break;
        }
        Poly r = rem(a, b, p);
        if (r.empty()) return 0;
        // res(a,b) = (-1)^(deg a * deg b) res(b,a); res(b,a) with a = qb + r:
        // res(b,a) = lc(b)^(deg a - deg r) res(b,r)
        if ((deg(a) & 1) && (deg(b) & 1)) neg = !neg;
        res = mulmod(res, powmod(b.back(), deg(a) - deg(r), p), p);
        a = std::move(b);
        b = std::move(r);
    }
    if (neg) res = (p - res) % p;
    return res;
}

void ext_gcd(const Poly& a, const Poly& b, Poly& g, Poly& s, Poly& t, u64 p) {
    Poly r0 = a, r1 = b;
    Poly s0{1}, s1{}, t0{}, t1{1};
    trim(r0);
    trim(r1);
    while (!r1.empty()) {
        Poly q, r2;
        divrem(r0, r1, q, r2, p);
        Poly s2 = sub(s0, mul(q, s1, p), p);
        Poly t2 = sub(t0, mul(q, t1, p), p);
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0.empty()) throw std::domain_error("ext_gcd of zero polynomials");
    u64 inv = invmod(r0.back(), p);
    g = mul_scalar(r0, inv, p);
    s = mul_scalar(s0, inv, p);
    t = mul_scalar(t0, inv, p);
}

bool is_squarefree(const Poly& f, u64 p) {
    Poly d = derivative(f, p);
    if (d.empty()) return false;
    return deg(gcd(f, d, p)) == 0;
}

namespace {

// Equal-degree splitting of a product of irreducibles of degree d.
void edf(const Poly& f, int d, u64 p, std::mt19937_64& rng, std::vector<Poly>& out) {
    if (deg(f) == d) {
        out.push_back(monic(f, p));
        return;
    }
    Int pe = 1;
    Int pz(static_cast<unsigned long>(p));
    for (int i = 0; i < d; ++i) pe *= pz;
    Int e = (pe - 1) / 2;
    while (true) {
        Poly a(deg(f));
        for (auto& x : a) x = rng() % p;
        trim(a);
        if (a.empty()) continue;
        Poly g = gcd(f, a, p);
        if (deg(g) > 0 && deg(g) < deg(f)) {
            Poly q, r;
            divrem(f, g, q, r, p);
            edf(g, d, p, rng, out);
            edf(monic(std::move(q), p), d, p, rng, out);
            return;
        }
        Poly b = powmod_poly(a, e, f, p);
        if (b.empty()) continue;
        b[0] = submod(b[0], 1, p);
        trim(b);
        Poly h = gcd(f, b, p);
        if (deg(h) > 0 && deg(h) < deg(f)) {
            Poly q, r;
            divrem(f, h, q, r, p);
            edf(h, d, p, rng, out);
            edf(monic(std::move(q), p), d, p, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<Poly> factor_squarefree(const Poly& f_in, u64 p, u64 seed) {
    Poly f = monic(f_in, p);
    std::vector<Poly> out;
    if (deg(f) <= 0) return out;
    std::mt19937_64 rng(seed);
    // distinct-degree decomposition
    Poly x{0, 1};
    Poly h = x;  // x^(p^i) mod f
    Poly rest = f;
    Int pz(static_cast<unsigned long>(p));
    for (int d = 1; 2 * d <= deg(rest); ++d) {
        h = powmod_poly(h, pz, rest, p);
        Poly hx = sub(h, x, p);
        Poly g = gcd(rest, hx, p);
        if (deg(g) > 0) {
            edf(g, d, p, rng, out);
            Poly q, r;
            divrem(rest, g, q, r, p);
            rest = monic(std::move(q), p);
            h = rem(h, rest, p);
        }
        if (deg(rest) == 0) break;
    }
    if (deg(rest) > 0) out.push_back(rest);
    return out;
}

u64 nth_modular_prime(size_t i) {
    // descending primes just under 2^59; generated once, deterministic
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    static std::vector<u64> primes;
    if (primes.empty()) primes.reserve(256);
    while (primes.size() <= i) {
        u64 candidate = primes.empty() ? ((1ULL << 59) - 1) : primes.back() - 2;
        auto is_prime = [](u64 n) {
            if (n % 2 == 0) return false;
            // deterministic Miller-Rabin for 64-bit range
            u64 d = n - 1;
            int s = 0;
            while ((d & 1) == 0) { d >>= 1; ++s; }
            for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
                if (a % n == 0) continue;
                u64 x = powmod(a, d, n);
                if (x == 1 || x == n - 1) continue;
                bool composite = true;
                for (int r = 1; r < s; ++r) {
                    x = mulmod(x, x, n);
                    if (x == n - 1) { composite = false; break; }
                }
                if (composite) return false;
            }
            return true;
        };
        while (!is_prime(candidate)) candidate -= 2;
        primes.push_back(candidate);
    }
    return primes[i];
}

}  // namespace zp
}  // namespace tordep
