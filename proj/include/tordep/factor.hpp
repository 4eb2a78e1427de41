#ifndef TORDEP_FACTOR_HPP
#define TORDEP_FACTOR_HPP

#include <utility>
#include <vector>

#include "tordep/int_poly.hpp"

namespace tordep {

struct Factorization {
    Int content;                                   // signed content of input
    std::vector<std::pair<IntPoly, int>> factors;  // normalized irreducible ^ mult
};

// Complete factorization over Z (Yun squarefree split + Zassenhaus per part).
// Factors are primitive with positive leading coefficient, sorted canonically.
Factorization factor(const IntPoly& f);

// The irreducible factors of the squarefree part, multiplicity dropped.
std::vector<IntPoly> irreducible_factors(const IntPoly& f);

bool is_irreducible(const IntPoly& f);

}  // namespace tordep

#endif
