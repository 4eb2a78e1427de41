#ifndef TORDEP_INT_POLY_HPP
#define TORDEP_INT_POLY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tordep/rational.hpp"

namespace tordep {

// Dense polynomial over Z, coefficient c[i] on X^i, no trailing zero storage.
// The zero polynomial has empty storage and degree() == -1.
class IntPoly {
  public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }
    static IntPoly from_int(const Int& a) { return IntPoly(std::vector<Int>{a}); }
    static IntPoly x() { return IntPoly({Int(0), Int(1)}); }
    static IntPoly monomial(const Int& a, int k);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Int& operator[](int i) const { return c_[i]; }
    const std::vector<Int>& coeffs() const { return c_; }
    const Int& lead() const { return c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    bool operator==(const IntPoly& o) const { return c_ == o.c_; }
    bool operator!=(const IntPoly& o) const { return !(*this == o); }

    IntPoly operator-() const;
    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator*(const Int& a) const;

    // Exact division; throws if the division leaves a remainder.
    IntPoly divexact(const IntPoly& g) const;
    // Pseudo-division: lc(g)^(deg f - deg g + 1) * f = q*g + r, deg r < deg g.
    void pseudo_divrem(const IntPoly& g, IntPoly& q, IntPoly& r) const;
    // Plain division assuming it is exact or remainder is wanted; g monic.
    void divrem_monic(const IntPoly& g, IntPoly& q, IntPoly& r) const;
    bool divides(const IntPoly& g) const;  // *this | g

    IntPoly derivative() const;
    Int content() const;                   // nonnegative gcd of coefficients
    IntPoly primitive_part() const;        // content 1, sign of lc preserved
    IntPoly normalized() const;            // primitive with positive lc

    Int eval(const Int& x) const;
    Rat eval(const Rat& x) const;

    IntPoly compose_xk(int k) const;       // f(X^k)
    IntPoly reverse() const;               // X^deg * f(1/X)
    IntPoly shift(const Int& b) const;     // f(X + b)
    IntPoly scale_num(const Int& a) const; // lc-normalized f(aX): coeffs c_i a^i
    // f(X - tY) expanded as a polynomial in Y with IntPoly (in X) coefficients.
    std::vector<IntPoly> compose_linear_sub(const Int& t) const;

    // gcd over Z, primitive and positive leading coefficient (modular algorithm).
    static IntPoly gcd(const IntPoly& a, const IntPoly& b);
    static IntPoly squarefree_part(const IntPoly& f);
    static Int resultant(const IntPoly& a, const IntPoly& b);

    // 2-norm upper bound and Cauchy root radius bound (both as exact Rat).
    Rat norm2_upper() const;
    Rat root_radius_upper() const;

    size_t max_coeff_bits() const;
    std::string str(const std::string& var = "X") const;

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Int> c_;
};

// m-th cyclotomic polynomial (cached inside).
const IntPoly& cyclotomic(std::uint64_t m);

// Polynomial with rational coefficients represented as IntPoly / denominator.
struct RatPoly {
    IntPoly num;
    Int den{1};

    static RatPoly from_coeffs(const std::vector<Rat>& coeffs);
    std::vector<Rat> rat_coeffs() const;
    int degree() const { return num.degree(); }
};

}  // namespace tordep

#endif
