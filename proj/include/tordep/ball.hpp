#ifndef TORDEP_BALL_HPP
#define TORDEP_BALL_HPP

#include <optional>
#include <string>
#include <utility>

#include "tordep/int_poly.hpp"
#include "tordep/rfloat.hpp"

namespace tordep {

// Closed complex disk with exact rational center and radius. The represented
// value always lies within `rad` of center; all operations keep that sound.
struct Ball {
    Rat re, im, rad;

    Ball() : re(0), im(0), rad(0) {}
    Ball(Rat r, Rat i, Rat radius) : re(std::move(r)), im(std::move(i)), rad(std::move(radius)) {}
    static Ball exact(const Rat& r, const Rat& i = Rat(0)) { return Ball(r, i, Rat(0)); }
    static Ball from_complex(const Complex& z, const Rat& radius);

    bool is_exact() const { return rad == 0; }

    Ball operator-() const { return Ball(-re, -im, rad); }
    Ball operator+(const Ball& o) const;
    Ball operator-(const Ball& o) const;
    Ball operator*(const Ball& o) const;
    Ball inv() const;  // requires 0 strictly outside the ball
    Ball operator/(const Ball& o) const { return *this * o.inv(); }

    // |center| bounds and modulus bounds of the whole ball.
    Rat center_abs_upper() const;
    Rat center_abs_lower() const;
    Rat abs_upper() const { return center_abs_upper() + rad; }
    Rat abs_lower() const;  // max(0, |center| - rad)

    bool contains_zero() const;
    bool contains(const Rat& r, const Rat& i) const;
    bool intersects(const Ball& o) const;
    bool disjoint(const Ball& o) const;

    // Round the center to dyadics with about `bits` fractional bits; the
    // rounding error is absorbed into the radius.
    Ball compressed(long bits) const;

    Complex to_complex(long prec) const;
    std::string str() const;

    // Both square roots of the ball (0 must be strictly outside); each result
    // ball certifiedly contains the corresponding square root of every point.
    std::pair<Ball, Ball> sqrt_both(long prec) const;
};

// Certified evaluation of f over the ball.
Ball eval_ball(const IntPoly& f, const Ball& z);
// Certified evaluation of f at an exact rational point (radius 0 in, 0 out).
Ball eval_exact(const IntPoly& f, const Rat& re, const Rat& im);

}  // namespace tordep

#endif
