#ifndef TORDEP_ROOTS_HPP
#define TORDEP_ROOTS_HPP

#include <vector>

#include "tordep/ball.hpp"
#include "tordep/int_poly.hpp"

namespace tordep {

// Certified complex root isolation for a squarefree integer polynomial.
// Returns one ball per root (deg f balls), pairwise disjoint, each certified
// to contain exactly one root, each of radius <= 2^(-prec/2). Roots are
// ordered canonically (by real part, then imaginary part, of the centers).
// Throws on precision exhaustion beyond `max_prec` working bits.
std::vector<Ball> isolate_roots(const IntPoly& f, long prec, long max_prec = 1 << 16);

// Index of the unique isolated root consistent with `hint` (which must
// contain exactly one root of f); refines internally as needed.
size_t match_root(const IntPoly& f, const std::vector<Ball>& roots, const Ball& hint);

}  // namespace tordep

#endif
