#ifndef TORDEP_RATIONAL_HPP
#define TORDEP_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tordep {

using Int = mpz_class;
using Rat = mpq_class;

// "num/den" with canonical sign on the numerator; integers render as "n/1".
std::string rat_to_string(const Rat& q);

// Accepts "num", "num/den" and plain decimals like "-0.125"; throws on junk.
Rat rat_from_string(const std::string& s);

// Fixed-point decimal rendering with exact long division (deterministic,
// round-to-nearest on the last digit).
std::string rat_to_decimal(const Rat& q, int digits);

inline Int int_from_string(const std::string& s) {
    Int z;
    if (z.set_str(s, 10) != 0) throw std::invalid_argument("bad integer literal: " + s);
    return z;
}

// floor(sqrt(n)) for n >= 0.
inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// Rational bounds on sqrt(q) for q >= 0: lo^2 <= q <= hi^2.
Rat sqrt_upper(const Rat& q);
Rat sqrt_lower(const Rat& q);

// Chinese remainders: value mod (m1*m2) from residues r1 mod m1, r2 mod m2.
Int crt_pair(const Int& r1, const Int& m1, const Int& r2, const Int& m2);

// Symmetric representative in (-m/2, m/2].
Int symmetric_mod(const Int& a, const Int& m);

// Rational reconstruction of a mod m with |num|, den <= floor(sqrt(m/2)).
std::optional<Rat> rational_reconstruct(const Int& a, const Int& m);

// Euler phi by trial division (small n only).
std::uint64_t euler_phi(std::uint64_t n);

std::vector<std::uint64_t> divisors_of(std::uint64_t n);
std::vector<std::uint64_t> prime_divisors_of(std::uint64_t n);

}  // namespace tordep

#endif
