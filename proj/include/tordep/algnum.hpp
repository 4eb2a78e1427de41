#ifndef TORDEP_ALGNUM_HPP
#define TORDEP_ALGNUM_HPP

#include <cstdint>
#include <optional>
#include <variant>

#include "tordep/field.hpp"

namespace tordep {

// Certified enclosure of an absolute logarithmic Weil height, in nats.
struct HeightValue {
    Rat lower, upper;

    Rat width() const { return upper - lower; }
    bool encloses_zero() const { return lower <= 0 && upper >= 0; }
};

// An exact algebraic number: irreducible primitive minimal polynomial with
// positive leading coefficient plus an isolating complex ball (exactly one
// root of the minimal polynomial inside, all other roots excluded).
//
// Values constructed inside a shared field or tower context carry that
// context so that arithmetic between them stays in the context; arithmetic
// between unrelated values falls back to the resultant construction.
class AlgebraicNumber {
  public:
    struct FieldCoords {
        FieldPtr field;
        FElem elem;
    };
    struct TowerCoords {
        PointFieldPtr tower;
        PointField::Elem elem;
        PointField::Embedding emb;
    };
    using Home = std::variant<std::monostate, FieldCoords, TowerCoords>;

    AlgebraicNumber() : minpoly_({Int(0), Int(1)}), isolator_(Ball::exact(Rat(0))) {}

    static AlgebraicNumber from_rational(const Rat& q);
    static AlgebraicNumber from_int(long v) { return from_rational(Rat(v)); }
    // Trusted constructor (internal invariant holder).
    static AlgebraicNumber make(IntPoly minpoly, Ball isolator, Home home = {});
    // Re-establishes the invariants (irreducibility + unique-root isolation);
    // throws std::invalid_argument when they cannot hold.
    static AlgebraicNumber validated(const IntPoly& minpoly, const Ball& isolator);
    static AlgebraicNumber from_field_elem(const FieldPtr& K, const FElem& e, long prec = 64);
    static AlgebraicNumber from_tower_elem(const PointFieldPtr& T, const PointField::Elem& e,
                                           const PointField::Embedding& emb, long prec = 64);

    const IntPoly& minpoly() const { return minpoly_; }
    const Ball& isolator() const { return isolator_; }
    const Home& home() const { return home_; }
    int degree() const { return minpoly_.degree(); }

    bool is_zero() const;
    bool is_rational() const { return minpoly_.degree() == 1; }
    std::optional<Rat> as_rational() const;
    bool is_algebraic_integer() const { return minpoly_.is_monic(); }

    // Isolator refined to radius <= 2^-prec (new ball, value unchanged).
    Ball refined(long prec) const;

    friend AlgebraicNumber an_add(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend AlgebraicNumber an_sub(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend AlgebraicNumber an_mul(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend AlgebraicNumber an_neg(const AlgebraicNumber& a);
    friend AlgebraicNumber an_inv(const AlgebraicNumber& a);
    friend bool an_equals(const AlgebraicNumber& a, const AlgebraicNumber& b);

  private:
    IntPoly minpoly_;
    Ball isolator_;
    Home home_;
};

AlgebraicNumber an_from_rational(const Rat& q);

// All Galois conjugates: one certified ball per root of the minimal
// polynomial, pairwise disjoint, radius <= 2^(-precision/2).
std::vector<Ball> conjugates(const AlgebraicNumber& a, long precision);

// Certified enclosure of the Weil height via the Mahler measure formula
// h = (log|lc| + sum log+ |conjugate|) / deg. Width shrinks to at most
// `target_width` (default 2^-40). h(0) = 0 by convention.
HeightValue weil_height(const AlgebraicNumber& a, const Rat& target_width = Rat(Int(1), Int(1) << 40));

// Exact multiplicative order when the value is a root of unity (Kronecker:
// matches the minimal polynomial against cyclotomic polynomials).
std::optional<std::uint64_t> is_root_of_unity(const AlgebraicNumber& a);

// Exact square root on the branch selected by `hint`; the hint must contain
// exactly one of the two square roots.
AlgebraicNumber an_sqrt(const AlgebraicNumber& a, const Ball& hint);

}  // namespace tordep

#endif
