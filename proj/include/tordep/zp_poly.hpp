#ifndef TORDEP_ZP_POLY_HPP
#define TORDEP_ZP_POLY_HPP

#include <cstdint>
#include <vector>

#include "tordep/int_poly.hpp"

namespace tordep {

// Arithmetic in F_p[X] for word-size primes (p < 2^62), used by the modular
// gcd/resultant kernels and the factoring machinery.
namespace zp {

using u64 = std::uint64_t;

inline u64 addmod(u64 a, u64 b, u64 p) { u64 s = a + b; return s >= p ? s - p : s; }
inline u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
inline u64 mulmod(u64 a, u64 b, u64 p) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p);
}
u64 powmod(u64 a, u64 e, u64 p);
u64 invmod(u64 a, u64 p);

using Poly = std::vector<u64>;  // c[i] on X^i, trimmed

void trim(Poly& f);
int deg(const Poly& f);
Poly reduce(const IntPoly& f, u64 p);
Poly add(const Poly& a, const Poly& b, u64 p);
Poly sub(const Poly& a, const Poly& b, u64 p);
Poly mul(const Poly& a, const Poly& b, u64 p);
Poly mul_scalar(const Poly& a, u64 s, u64 p);
void divrem(const Poly& a, const Poly& b, Poly& q, Poly& r, u64 p);
Poly rem(const Poly& a, const Poly& b, u64 p);
Poly gcd(Poly a, Poly b, u64 p);          // monic
Poly monic(Poly f, u64 p);
Poly powmod_poly(Poly base, const Int& e, const Poly& mod, u64 p);
Poly derivative(const Poly& f, u64 p);
u64 resultant(Poly a, Poly b, u64 p);
// Extended gcd: returns g and s with s*a = g mod b (g monic); full Bezout
// variant below.
void ext_gcd(const Poly& a, const Poly& b, Poly& g, Poly& s, Poly& t, u64 p);

bool is_squarefree(const Poly& f, u64 p);

struct FactorModP {
    std::vector<Poly> factors;  // monic irreducible, with multiplicity 1 input
};
// Factor a squarefree monic polynomial mod p (distinct-degree + Cantor-
// Zassenhaus equal-degree splitting). Deterministic via the seed.
std::vector<Poly> factor_squarefree(const Poly& f, u64 p, u64 seed);

// Primes for modular algorithms: a fixed descending sequence below 2^59.
u64 nth_modular_prime(size_t i);

}  // namespace zp
}  // namespace tordep

#endif
