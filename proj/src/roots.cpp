#include "tordep/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace tordep {

namespace {

using CD = std::complex<double>;

// Double-precision Aberth sweep to get starting points cheaply.
std::vector<CD> aberth_double(const std::vector<double>& coef) {
    int n = static_cast<int>(coef.size()) - 1;
    std::vector<CD> z(n);
    double r = 1;
    if (coef[n] != 0 && std::isfinite(coef[n])) {
        for (int i = 0; i < n; ++i) {
            double q = std::abs(coef[i] / coef[n]);
            if (std::isfinite(q)) r = std::max(r, q);
        }
    }
    r = std::min(1 + r, 1e8);
    for (int i = 0; i < n; ++i) {
        double a = 2 * M_PI * i / n + 0.4;
        z[i] = std::polar(r, a);
    }
    if (coef[n] == 0 || !std::isfinite(coef[n])) return z;  // circle fallback
    auto evald = [&](CD x, CD& d) {
        CD v = 0;
        d = 0;
        for (int i = n; i >= 0; --i) {
            d = d * x + v;
            v = v * x + coef[i];
        }
        return v;
    };
    for (int it = 0; it < 400; ++it) {
        double moved = 0;
        for (int i = 0; i < n; ++i) {
            CD d, v = evald(z[i], d);
            if (std::abs(v) == 0) continue;
            CD newton = v / d;
            CD sum = 0;
            for (int j = 0; j < n; ++j)
                if (j != i) sum += 1.0 / (z[i] - z[j]);
            CD corr = newton / (1.0 - newton * sum);
            if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) corr = newton;
            z[i] -= corr;
            moved = std::max(moved, std::abs(corr));
        }
        if (moved < 1e-14) break;
    }
    return z;
}

struct MpComplexPoly {
    std::vector<Complex> c;

    Complex eval(const Complex& x, Complex* deriv) const {
        long prec = x.prec();
        Complex v = Complex::zero(prec), d = Complex::zero(prec);
        for (size_t i = c.size(); i-- > 0;) {
            if (deriv) d = d * x + v;
            v = v * x + c[i];
        }
        if (deriv) *deriv = d;
        return v;
    }
};

}  // namespace

std::vector<Ball> isolate_roots(const IntPoly& f, long prec, long max_prec) {
    if (f.degree() < 1) return {};
    const int n = f.degree();
    if (prec < 32) prec = 32;

    // double-precision starting points on a scaled copy (scaling the variable
    // keeps doubles in range for huge coefficients)
    std::vector<double> coef(n + 1);
    {
        // scale so max |coef| ~ 1: divide by 2^shift per coefficient magnitude
        long max_bits = 0;
        for (int i = 0; i <= n; ++i) {
            long b = static_cast<long>(mpz_sizeinbase(f[i].get_mpz_t(), 2));
            if (f[i] != 0) max_bits = std::max(max_bits, b);
        }
        for (int i = 0; i <= n; ++i) {
            Real r = Real::from_int(f[i], 64);
            mpfr_div_2si(r.get(), r.get(), max_bits, MPFR_RNDN);
            coef[i] = r.to_double();
        }
    }
    std::vector<CD> start = aberth_double(coef);
    for (int i = 0; i < n; ++i) {
        if (!std::isfinite(start[i].real()) || !std::isfinite(start[i].imag())) {
            start[i] = std::polar(2.0, 2 * M_PI * i / n + 0.4);
        }
    }

    long wp = std::max<long>(2 * prec + 32, static_cast<long>(f.max_coeff_bits()) / 4 + 64);
    std::vector<Complex> z(n);
    for (int i = 0; i < n; ++i) z[i] = Complex::from_doubles(start[i].real(), start[i].imag(), wp);

    while (wp <= max_prec) {
        // lift coefficients at working precision
        MpComplexPoly poly;
        poly.c.resize(n + 1);
        for (int i = 0; i <= n; ++i)
            poly.c[i] = Complex{Real::from_int(f[i], wp), Real(wp)};
        for (auto& zi : z) zi = Complex{Real(wp) + zi.re, Real(wp) + zi.im};

        // Aberth at working precision
        Real tol(wp);
        mpfr_set_ui_2exp(tol.get(), 1, -(wp * 3 / 4), MPFR_RNDN);
        for (int it = 0; it < 200; ++it) {
            Real moved(wp);
            mpfr_set_zero(moved.get(), 1);
            for (int i = 0; i < n; ++i) {
                Complex d = Complex::zero(wp);
                Complex v = poly.eval(z[i], &d);
                Real va = v.abs();
                if (va.is_zero()) continue;
                Real da = d.abs();
                if (da.is_zero()) continue;
                Complex newton = v / d;
                Complex sum = Complex::zero(wp);
                for (int j = 0; j < n; ++j) {
                    if (j != i) {
                        Complex diff = z[i] - z[j];
                        Real aa = diff.abs();
                        if (aa.is_zero()) continue;
                        sum = sum + Complex{Real::from_double(1.0, wp), Real(wp)} / diff;
                    }
                }
                Complex one{Real::from_double(1.0, wp), Real(wp)};
                Complex denom = one - newton * sum;
                Complex corr = denom.abs().is_zero() ? newton : newton / denom;
                z[i] = z[i] - corr;
                Real ca = corr.abs();
                if (moved < ca) moved = ca;
            }
            if (moved < tol) break;
        }

        // certification: disk of radius n*|f(z)/f'(z)| contains >= 1 root;
        // pairwise disjoint disks then isolate exactly one root each.
        std::vector<Ball> balls(n);
        bool ok = true;
        Rat target_rad(1);
        {
            Int sc(1);
            mpz_mul_2exp(sc.get_mpz_t(), sc.get_mpz_t(), prec / 2);
            target_rad = Rat(1, sc);
        }
        for (int i = 0; i < n && ok; ++i) {
            Rat zr = z[i].re.to_rat(), zi = z[i].im.to_rat();
            Ball val = eval_exact(f, zr, zi);
            Ball dval = eval_exact(f.derivative(), zr, zi);
            Rat dlo = dval.abs_lower();
            if (dlo <= 0) { ok = false; break; }
            Rat r = Rat(n) * val.abs_upper() / dlo;
            if (r > target_rad) { ok = false; break; }
            balls[i] = Ball(zr, zi, r);
        }
        if (ok) {
            for (int i = 0; i < n && ok; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (!balls[i].disjoint(balls[j])) { ok = false; break; }
        }
        if (ok) {
            std::sort(balls.begin(), balls.end(), [](const Ball& a, const Ball& b) {
                if (a.re != b.re) return a.re < b.re;
                return a.im < b.im;
            });
            return balls;
        }
        wp *= 2;
    }
    throw std::runtime_error("root isolation: precision exhausted (degree " +
                             std::to_string(n) + ")");
}

size_t match_root(const IntPoly& f, const std::vector<Ball>& roots, const Ball& hint) {
    std::vector<size_t> hits;
    for (size_t i = 0; i < roots.size(); ++i) {
        if (!roots[i].disjoint(hint)) hits.push_back(i);
    }
    if (hits.size() == 1) return hits[0];
    if (hits.empty())
        throw std::runtime_error("match_root: hint ball matches no isolated root");
    // hint overlaps several root balls: refine the roots and retry
    long prec = 128;
    std::vector<Ball> finer = roots;
    for (int round = 0; round < 10; ++round) {
        prec *= 2;
        finer = isolate_roots(f, prec);
        std::vector<size_t> hh;
        for (size_t i = 0; i < finer.size(); ++i)
            if (!finer[i].disjoint(hint)) hh.push_back(i);
        if (hh.size() == 1) {
            // map back to the index in the original ordering
            for (size_t i = 0; i < roots.size(); ++i)
                if (!roots[i].disjoint(finer[hh[0]])) return i;
        }
    }
    throw std::runtime_error("match_root: ambiguous hint");
}

}  // namespace tordep
