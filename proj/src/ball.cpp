#include "tordep/ball.hpp"

#include <stdexcept>

namespace tordep {

namespace {

// Dyadic rounding of q to ~bits fractional bits; |result - q| <= 2^-bits.
Rat round_dyadic(const Rat& q, long bits, Rat* err) {
    Int scale(1);
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), bits);
    Int num = q.get_num() * scale;
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
    Rat out(r, scale);
    out.canonicalize();
    if (err) *err = Rat(1, scale);
    return out;
}

}  // namespace

Ball Ball::from_complex(const Complex& z, const Rat& radius) {
    return Ball(z.re.to_rat(), z.im.to_rat(), radius);
}

Ball Ball::operator+(const Ball& o) const {
    return Ball(re + o.re, im + o.im, rad + o.rad);
}

Ball Ball::operator-(const Ball& o) const {
    return Ball(re - o.re, im - o.im, rad + o.rad);
}

Ball Ball::operator*(const Ball& o) const {
    // |z1 z2 - c1 c2| <= |c1| r2 + |c2| r1 + r1 r2
    Rat a = re * o.re - im * o.im;
    Rat b = re * o.im + im * o.re;
    Rat r = center_abs_upper() * o.rad + o.center_abs_upper() * rad + rad * o.rad;
    return Ball(a, b, r);
}

Ball Ball::inv() const {
    Rat lo = abs_lower();
    if (lo <= 0) throw std::domain_error("ball inversion: zero not excluded");
    Rat n = re * re + im * im;
    // 1/z - 1/c = (c - z)/(cz): |.| <= rad / (|c| (|c| - rad))
    Rat clo = center_abs_lower();
    Rat r = rad / (clo * lo);
    return Ball(re / n, -im / n, r);
}

Rat Ball::center_abs_upper() const {
    return sqrt_upper(re * re + im * im);
}

Rat Ball::center_abs_lower() const {
    return sqrt_lower(re * re + im * im);
}

Rat Ball::abs_lower() const {
    Rat lo = center_abs_lower() - rad;
    return lo > 0 ? lo : Rat(0);
}

bool Ball::contains_zero() const {
    return re * re + im * im <= rad * rad;
}

bool Ball::contains(const Rat& r, const Rat& i) const {
    Rat dr = re - r, di = im - i;
    return dr * dr + di * di <= rad * rad;
}

bool Ball::intersects(const Ball& o) const {
    Rat dr = re - o.re, di = im - o.im;
    Rat s = rad + o.rad;
    return dr * dr + di * di <= s * s;
}

bool Ball::disjoint(const Ball& o) const {
    Rat dr = re - o.re, di = im - o.im;
    Rat s = rad + o.rad;
    return dr * dr + di * di > s * s;
}

Ball Ball::compressed(long bits) const {
    Rat e1, e2;
    Rat r = round_dyadic(re, bits, &e1);
    Rat i = round_dyadic(im, bits, &e2);
    Rat extra = e1 + e2;  // coarse but sound bound on the rounding shift
    Rat nrad = rad + extra;
    // round the radius upward as well
    Int scale(1);
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), bits);
    Int num = nrad.get_num() * scale;
    Int rr;
    mpz_cdiv_q(rr.get_mpz_t(), num.get_mpz_t(), nrad.get_den().get_mpz_t());
    Rat cr(rr, scale);
    cr.canonicalize();
    return Ball(r, i, cr);
}

Complex Ball::to_complex(long prec) const {
    return {Real::from_rat(re, prec), Real::from_rat(im, prec)};
}

std::string Ball::str() const {
    Ball c = compressed(64);
    return "(" + rat_to_decimal(c.re, 12) + " + " + rat_to_decimal(c.im, 12) +
           "i +/- " + rat_to_decimal(c.rad, 12) + ")";
}

std::pair<Ball, Ball> Ball::sqrt_both(long prec) const {
    // The input disk excludes 0, so squaring has two analytic inverse branches
    // on it. On a disk D(w0, r) with 0 outside, any branch g of sqrt satisfies
    // |g(z) - g(w0)| <= r / (2 sqrt(|w0| - r))  (segment integral of 1/(2 g)).
    Rat lo = abs_lower();
    if (lo <= 0) throw std::domain_error("ball sqrt: zero not excluded");
    Complex c{Real::from_rat(re, prec), Real::from_rat(im, prec)};
    Complex s = sqrt(c);
    Ball s_ball = Ball::exact(s.re.to_rat(), s.im.to_rat());
    // s is an exact square root of s^2; bound the branch step from s^2 to the
    // true center, then from the center across the whole input disk.
    Ball s2 = s_ball * s_ball;
    Rat delta = (s2 - Ball::exact(re, im)).abs_upper();
    Rat s2_abs = s2.center_abs_lower();
    if (delta >= s2_abs) throw std::domain_error("ball sqrt: numeric sqrt too coarse");
    Rat d1 = sqrt_lower(s2_abs - delta);
    Rat d2 = sqrt_lower(lo);
    if (d1 <= 0 || d2 <= 0) throw std::domain_error("ball sqrt: degenerate bound");
    Rat r_total = delta / (2 * d1) + rad / (2 * d2);
    Ball plus(s_ball.re, s_ball.im, r_total);
    return {plus, -plus};
}

Ball eval_ball(const IntPoly& f, const Ball& z) {
    Ball acc = Ball::exact(Rat(0));
    for (int i = f.degree(); i >= 0; --i) {
        acc = acc * z + Ball::exact(Rat(f[i]));
    }
    return acc;
}

Ball eval_exact(const IntPoly& f, const Rat& re, const Rat& im) {
    // Horner on exact complex rationals
    Rat ar(0), ai(0);
    for (int i = f.degree(); i >= 0; --i) {
        Rat nr = ar * re - ai * im + Rat(f[i]);
        Rat ni = ar * im + ai * re;
        ar = std::move(nr);
        ai = std::move(ni);
    }
    return Ball(ar, ai, Rat(0));
}

}  // namespace tordep
