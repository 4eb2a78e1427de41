#ifndef TORDEP_ELLIPTIC_HPP
#define TORDEP_ELLIPTIC_HPP

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "tordep/algnum.hpp"

namespace tordep {

struct SingularCurveError : std::domain_error {
    using std::domain_error::domain_error;
};

// Affine point or the point at infinity.
struct CurvePoint {
    bool infinity = true;
    AlgebraicNumber x, y;

    static CurvePoint infinite() { return CurvePoint{}; }
    static CurvePoint affine(AlgebraicNumber px, AlgebraicNumber py) {
        CurvePoint p;
        p.infinity = false;
        p.x = std::move(px);
        p.y = std::move(py);
        return p;
    }
};

struct TorsionPoint {
    CurvePoint point;      // affine
    std::uint64_t order;   // exact order, certified
};

// Division polynomial in x: for odd n this is psi_n itself; for even n it is
// psi_n / psi_2 (the full psi_n carries the extra factor 2y + a1 x + a3).
struct DivisionPolynomial {
    std::uint64_t n;
    bool has_psi2_factor;                 // true for even n
    std::vector<AlgebraicNumber> coeffs;  // c[i] on x^i
};

// Long Weierstrass model Y^2 + a1 XY + a3 Y = X^3 + a2 X^2 + a4 X + a6 with
// algebraic coefficients and nonzero discriminant.
class EllipticCurve {
  public:
    static EllipticCurve create(const AlgebraicNumber& a1, const AlgebraicNumber& a2,
                                const AlgebraicNumber& a3, const AlgebraicNumber& a4,
                                const AlgebraicNumber& a6);
    static EllipticCurve short_weierstrass(const Rat& a4, const Rat& a6);

    const AlgebraicNumber& a(int i) const;  // i in {1,2,3,4,6}
    bool rational_coefficients() const { return coeff_field_->degree() == 1; }
    const FieldPtr& coefficient_field() const { return coeff_field_; }
    // Coefficient coordinates inside the coefficient field (a1,a2,a3,a4,a6).
    const std::array<FElem, 5>& coeff_coords() const { return coeff_coords_; }

    AlgebraicNumber discriminant() const;
    AlgebraicNumber j_invariant() const;

    // b-invariants as elements of the coefficient field.
    FElem b2() const, b4() const, b6() const, b8() const;

    // x-part of the n-division polynomial over the coefficient field.
    const KPoly& division_poly_x(std::uint64_t n) const;
    DivisionPolynomial division_polynomial(std::uint64_t n) const;

    // Duplication map x(2P) = phi(x) / S(x) over the coefficient field:
    // phi = x^4 - b4 x^2 - 2 b6 x - b8, S = 4x^3 + b2 x^2 + 2 b4 x + b6.
    KPoly duplication_numerator() const;
    KPoly psi2_squared() const;  // S

    CurvePoint add(const CurvePoint& p, const CurvePoint& q) const;
    CurvePoint neg(const CurvePoint& p) const;
    CurvePoint scalar_mul(const Int& k, const CurvePoint& p) const;
    bool is_on_curve(const CurvePoint& p) const;
    bool points_equal(const CurvePoint& p, const CurvePoint& q) const;

    // Exact order when <= max_order, computed by successive multiples with
    // exact equality tests.
    std::optional<std::uint64_t> order_of(const CurvePoint& p, std::uint64_t max_order) const;

    // All points of exact order n over the algebraic closure.
    std::vector<TorsionPoint> torsion_points(std::uint64_t n) const;
    // All torsion points of exact order in [2, n_max], canonically sorted.
    std::vector<TorsionPoint> torsion_catalog(std::uint64_t n_max) const;

  private:
    EllipticCurve() = default;
    void compute_b_invariants();

    std::array<AlgebraicNumber, 5> a_;  // a1,a2,a3,a4,a6
    FieldPtr coeff_field_;
    std::array<FElem, 5> coeff_coords_;
    FElem b2_, b4_, b6_, b8_, disc_;

    struct DivCache {
        std::mutex mu;
        std::map<std::uint64_t, KPoly> entries;
    };
    std::shared_ptr<DivCache> div_cache_ = std::make_shared<DivCache>();
};

// Canonical deterministic sort key for torsion points.
bool torsion_point_less(const TorsionPoint& a, const TorsionPoint& b);

}  // namespace tordep

#endif
