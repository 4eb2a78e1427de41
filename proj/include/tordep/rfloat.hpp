#ifndef TORDEP_RFLOAT_HPP
#define TORDEP_RFLOAT_HPP

#include <mpfr.h>

#include <string>
#include <utility>

#include "tordep/rational.hpp"

namespace tordep {

// Thin RAII wrapper around mpfr_t. Precision is explicit per value; binary
// operations compute at the max precision of the operands unless stated.
class Real {
  public:
    Real() { mpfr_init2(v_, 64); mpfr_set_zero(v_, 1); }
    explicit Real(long prec) { mpfr_init2(v_, prec < 2 ? 2 : prec); mpfr_set_zero(v_, 1); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, 2); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~Real() { mpfr_clear(v_); }

    static Real from_double(double d, long prec);
    static Real from_int(const Int& z, long prec, mpfr_rnd_t rnd = MPFR_RNDN);
    static Real from_rat(const Rat& q, long prec, mpfr_rnd_t rnd = MPFR_RNDN);
    static Real pi(long prec);

    long prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_); }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Exact: every finite mpfr value is a dyadic rational.
    Rat to_rat() const;
    std::string str(int digits = 20) const;

    Real operator-() const;
    Real operator+(const Real& o) const;
    Real operator-(const Real& o) const;
    Real operator*(const Real& o) const;
    Real operator/(const Real& o) const;
    bool operator<(const Real& o) const { return mpfr_cmp(v_, o.v_) < 0; }
    bool operator<=(const Real& o) const { return mpfr_cmp(v_, o.v_) <= 0; }
    bool operator>(const Real& o) const { return mpfr_cmp(v_, o.v_) > 0; }
    bool operator>=(const Real& o) const { return mpfr_cmp(v_, o.v_) >= 0; }

    friend Real abs(const Real& a);
    friend Real sqrt(const Real& a);
    friend Real log(const Real& a);
    friend Real exp(const Real& a);
    friend Real atan2(const Real& y, const Real& x);
    friend Real cos(const Real& a);
    friend Real sin(const Real& a);
    friend Real hypot(const Real& x, const Real& y);

  private:
    mpfr_t v_;
};

// Directed-rounding helpers used by the certified height computations.
// log_lower/upper require q > 0 and return exact dyadic rationals.
Rat log_lower(const Rat& q, long prec);
Rat log_upper(const Rat& q, long prec);

// Complex number over Real; round-to-nearest arithmetic (numeric layer only).
struct Complex {
    Real re, im;

    Complex() = default;
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    static Complex zero(long prec) { return {Real(prec), Real(prec)}; }
    static Complex from_doubles(double r, double i, long prec) {
        return {Real::from_double(r, prec), Real::from_double(i, prec)};
    }

    long prec() const { return re.prec() > im.prec() ? re.prec() : im.prec(); }
    double re_d() const { return re.to_double(); }
    double im_d() const { return im.to_double(); }

    Complex operator-() const { return {-re, -im}; }
    Complex operator+(const Complex& o) const { return {re + o.re, im + o.im}; }
    Complex operator-(const Complex& o) const { return {re - o.re, im - o.im}; }
    Complex operator*(const Complex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    Complex operator/(const Complex& o) const;

    Real abs() const { return hypot(re, im); }
    Real arg() const { return atan2(im, re); }
};

Complex sqrt(const Complex& z);   // principal branch
Complex exp(const Complex& z);
Complex log(const Complex& z);    // principal branch

}  // namespace tordep

#endif
