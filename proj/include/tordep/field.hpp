#ifndef TORDEP_FIELD_HPP
#define TORDEP_FIELD_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "tordep/ball.hpp"
#include "tordep/int_poly.hpp"
#include "tordep/roots.hpp"

namespace tordep {

// Element of Q[T]/(G): integer polynomial of degree < deg G over a common
// positive denominator.
struct FElem {
    IntPoly num;
    Int den{1};

    bool is_zero() const { return num.is_zero(); }
    void normalize();
    bool operator==(const FElem& o) const;
    static FElem from_rat(const Rat& q);
    std::vector<Rat> rat_coeffs(int degree) const;
};

// Res_T(A(T), sum_j B[j](T) X^j) as a polynomial in X, computed exactly by
// evaluation/interpolation with formal-degree correction. A must be nonzero
// with deg A >= 1.
IntPoly resultant_in_x(const IntPoly& A, const std::vector<IntPoly>& B);

// A number field Q(gamma) presented by an irreducible minimal polynomial and
// a distinguished (isolated) root. Immutable except for internal caches;
// thread-safe.
class NumberField {
  public:
    static std::shared_ptr<NumberField> create(IntPoly minpoly, Ball gen);
    // The rational field presented as Q[T]/(T - c).
    static std::shared_ptr<NumberField> rational(const Rat& c = Rat(0));

    int degree() const { return minpoly_.degree(); }
    const IntPoly& minpoly() const { return minpoly_; }
    Ball gen_ball() const;

    FElem zero() const { return FElem{}; }
    FElem one() const { return FElem::from_rat(Rat(1)); }
    FElem gen() const;
    FElem from_rat(const Rat& q) const { return FElem::from_rat(q); }
    FElem from_rat_coeffs(const std::vector<Rat>& coeffs) const;

    FElem add(const FElem& a, const FElem& b) const;
    FElem sub(const FElem& a, const FElem& b) const;
    FElem neg(const FElem& a) const;
    FElem mul(const FElem& a, const FElem& b) const;
    FElem mul_rat(const FElem& a, const Rat& q) const;
    FElem inv(const FElem& a) const;  // multimodular with exact verification
    FElem div(const FElem& a, const FElem& b) const { return mul(a, inv(b)); }
    FElem pow(FElem a, Int e) const;
    bool equal(const FElem& a, const FElem& b) const;
    std::optional<Rat> as_rational(const FElem& a) const;

    // Monic characteristic polynomial of multiplication by `a`, scaled to a
    // primitive integer polynomial (a power of the element's minimal
    // polynomial up to that scaling).
    IntPoly charpoly(const FElem& a) const;
    // Irreducible minimal polynomial plus an isolating ball at the
    // distinguished embedding.
    std::pair<IntPoly, Ball> minpoly_of(const FElem& a, long prec = 64) const;

    // Conjugate embeddings: isolated root balls of the minimal polynomial,
    // cached; radius <= 2^(-prec/2). Index of the distinguished one.
    std::vector<Ball> roots(long prec) const;
    size_t gen_index(long prec) const;

    // Certified value of `a` at an arbitrary embedding ball of the generator.
    Ball eval_ball(const FElem& a, const Ball& at) const;
    // Value at the distinguished embedding, refined until radius <= 2^-prec.
    Ball eval_at_gen(const FElem& a, long prec) const;

  private:
    NumberField(IntPoly minpoly, Ball gen)
        : minpoly_(std::move(minpoly)), gen_(std::move(gen)) {}
    FElem reduce(IntPoly num, Int den) const;

    IntPoly minpoly_;
    mutable Ball gen_;  // tightened over time; always contains the same root
    mutable std::mutex mu_;
    mutable long roots_prec_ = 0;
    mutable std::vector<Ball> roots_cache_;
    mutable size_t gen_idx_ = 0;
};

using FieldPtr = std::shared_ptr<NumberField>;

// Polynomials over a number field (used by the compositum recovery step).
using KPoly = std::vector<FElem>;  // c[i] on Z^i

KPoly kpoly_trim(KPoly f);
int kpoly_deg(const KPoly& f);
KPoly kpoly_mul(const NumberField& K, const KPoly& a, const KPoly& b);
KPoly kpoly_rem(const NumberField& K, KPoly a, const KPoly& b);
KPoly kpoly_gcd_monic(const NumberField& K, KPoly a, KPoly b);
FElem kpoly_eval(const NumberField& K, const KPoly& f, const FElem& x);

// Compositum of Q(alpha) and Q(beta) via a primitive element gamma =
// alpha + t*beta, with both inputs expressed in the result field.
struct JoinResult {
    FieldPtr field;
    FElem alpha, beta;
};
JoinResult join_fields(const IntPoly& ma, const Ball& ball_a,
                       const IntPoly& mb, const Ball& ball_b);

// Solve Y^2 + P Y + Q = 0 over K: either both roots in K, or a certificate
// that the quadratic is irreducible over K.
struct QuadraticSplit {
    bool split;
    FElem y0, y1;  // valid when split
};
QuadraticSplit split_quadratic(const FieldPtr& K, const FElem& P, const FElem& Q);

// Quadratic tower K[Y]/(Y^2 + P Y + Q) for point coordinates. When the
// quadratic splits over K the context collapses and elements live in K.
class PointField {
  public:
    // Ring element u + v*y with u, v in K (v = 0 throughout when split).
    struct Elem {
        FElem u, v;
    };

    static std::shared_ptr<PointField> make(FieldPtr K, FElem P, FElem Q);

    const FieldPtr& base() const { return K_; }
    bool inert() const { return inert_; }
    int extension_degree() const { return inert_ ? 2 : 1; }
    int absolute_degree() const { return K_->degree() * extension_degree(); }
    // The two solutions of the quadratic when split.
    const FElem& split_root(int branch) const { return branch == 0 ? y0_ : y1_; }

    Elem zero() const { return {K_->zero(), K_->zero()}; }
    Elem one() const { return {K_->one(), K_->zero()}; }
    Elem from_base(FElem a) const { return {std::move(a), K_->zero()}; }
    Elem from_rat(const Rat& q) const { return from_base(K_->from_rat(q)); }
    // The y of a given branch: formal generator when inert, the split root
    // otherwise.
    Elem y_elem(int branch) const;

    bool is_zero(const Elem& a) const { return a.u.is_zero() && a.v.is_zero(); }
    bool equal(const Elem& a, const Elem& b) const;
    Elem add(const Elem& a, const Elem& b) const;
    Elem sub(const Elem& a, const Elem& b) const;
    Elem neg(const Elem& a) const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem inv(const Elem& a) const;
    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, Int e) const;
    Elem mul_rat(const Elem& a, const Rat& q) const;

    // Characteristic polynomial over Q (degree = absolute_degree), primitive.
    IntPoly charpoly(const Elem& a) const;

    // Embeddings: pairs (root index of base, branch in {0, extension_degree-1}).
    struct Embedding {
        size_t base_root;
        int branch;
    };
    std::vector<Embedding> embeddings(long prec) const;
    // Certified y-ball at an embedding.
    Ball y_ball(const Embedding& e, long prec) const;
    Ball eval_ball(const Elem& a, const Embedding& e, long prec) const;

  private:
    FieldPtr K_;
    FElem P_, Q_;
    bool inert_ = true;
    FElem y0_, y1_;
};

using PointFieldPtr = std::shared_ptr<PointField>;

}  // namespace tordep

#endif
