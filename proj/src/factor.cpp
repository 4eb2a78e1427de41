#include "tordep/factor.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "tordep/zp_poly.hpp"

namespace tordep {

namespace {

// Small primes for the modular factoring step: big enough to make spurious
// splitting unlikely, small enough to keep Frobenius powering cheap.
constexpr zp::u64 kFactorPrimes[] = {
    1048583, 1048589, 1048601, 1048609, 1048613, 1048627, 1048633,
    1048661, 1048681, 1048703, 1048709, 1048717, 1048721, 1048759,
};

struct ModularImage {
    zp::u64 p;
    std::vector<zp::Poly> factors;
    std::vector<char> degree_possible;  // degree_possible[d] for factor degree sums
};

// Bitset of achievable proper-factor degrees from modular factor degrees.
std::vector<char> possible_degrees(const std::vector<zp::Poly>& factors, int n) {
    std::vector<char> dp(n + 1, 0);
    dp[0] = 1;
    for (const auto& g : factors) {
        int d = zp::deg(g);
        for (int i = n; i >= d; --i)
            if (dp[i - d]) dp[i] = 1;
    }
    return dp;
}

// Multifactor linear Hensel lifting: monic f = prod(g_i) mod p lifted to mod p^k.
// sigma_i = inverse of prod_{j != i} g_j modulo g_i (mod p), precomputed once.
struct HenselLifter {
    zp::u64 p;
    std::vector<zp::Poly> sigma;

    void init(const std::vector<zp::Poly>& g) {
        sigma.resize(g.size());
        for (size_t i = 0; i < g.size(); ++i) {
            zp::Poly prod{1};
            for (size_t j = 0; j < g.size(); ++j) {
                if (j != i) prod = zp::rem(zp::mul(prod, g[j], p), g[i], p);
            }
            zp::Poly gg, s, t;
            zp::ext_gcd(prod, g[i], gg, s, t, p);
            if (zp::deg(gg) != 0) throw std::runtime_error("hensel: factors not coprime");
            sigma[i] = s;
        }
    }
};

std::vector<IntPoly> lift_factors(const IntPoly& f, const std::vector<zp::Poly>& g0,
                                  zp::u64 p, const Int& target, Int& modulus) {
    // f monic over Z; returns monic lifts mod p^k with p^k >= target.
    int r = static_cast<int>(g0.size());
    HenselLifter lifter{p, {}};
    lifter.init(g0);
    Int pz(static_cast<unsigned long>(p));
    modulus = pz;

    std::vector<IntPoly> g(r);
    for (int i = 0; i < r; ++i) {
        std::vector<Int> c(zp::deg(g0[i]) + 1);
        for (int j = 0; j <= zp::deg(g0[i]); ++j)
            c[j] = Int(static_cast<unsigned long>(g0[i][j]));
        g[i] = IntPoly(std::move(c));
    }

    while (modulus < target) {
        // error e = (f - prod g_i) / modulus  (exact by construction)
        IntPoly prod = IntPoly::from_int(1);
        for (const auto& gi : g) prod = prod * gi;
        IntPoly diff = f - prod;
        std::vector<Int> ec(diff.degree() + 1);
        for (int i = 0; i <= diff.degree(); ++i) {
            Int q = diff[i] / modulus;
            if (q * modulus != diff[i]) throw std::runtime_error("hensel: inexact error");
            ec[i] = q;
        }
        IntPoly e(std::move(ec));
        zp::Poly ep = zp::reduce(e, p);
        // delta_i = (e * sigma_i) mod g_i (mod p); g_i += modulus * delta_i
        for (int i = 0; i < r; ++i) {
            zp::Poly gi = zp::reduce(g[i], p);
            zp::Poly di = zp::rem(zp::mul(ep, lifter.sigma[i], p), gi, p);
            if (di.empty()) continue;
            std::vector<Int> add(zp::deg(di) + 1);
            for (int j = 0; j <= zp::deg(di); ++j)
                add[j] = Int(static_cast<unsigned long>(di[j])) * modulus;
            g[i] = g[i] + IntPoly(std::move(add));
        }
        modulus *= pz;
        // keep coefficients reduced mod modulus (symmetric range)
        for (int i = 0; i < r; ++i) {
            std::vector<Int> c(g[i].degree() + 1);
            for (int j = 0; j <= g[i].degree(); ++j) c[j] = symmetric_mod(g[i][j], modulus);
            c[g[i].degree()] = g[i][g[i].degree()];  // monic lead stays 1
            g[i] = IntPoly(std::move(c));
        }
    }
    // final consistency check mod modulus
    IntPoly prod = IntPoly::from_int(1);
    for (const auto& gi : g) prod = prod * gi;
    IntPoly diff = f - prod;
    for (int i = 0; i <= diff.degree(); ++i) {
        if (diff[i] % modulus != 0) throw std::runtime_error("hensel: lift verification failed");
    }
    return g;
}

// Zassenhaus factorization of a primitive squarefree polynomial with
// positive leading coefficient.
std::vector<IntPoly> zassenhaus(const IntPoly& f_in) {
    if (f_in.degree() == 1) return {f_in};

    // Monicize: F(X) = lc^(d-1) f(X/lc) is monic with integer coefficients.
    const Int lc = f_in.lead();
    IntPoly F;
    {
        const int d = f_in.degree();
        std::vector<Int> c(d + 1);
        c[d] = 1;
        Int pw = 1;  // lc^(d-1-i)
        for (int i = d - 1; i >= 0; --i) {
            c[i] = f_in[i] * pw;
            pw *= lc;
        }
        F = IntPoly(std::move(c));
    }
    const int n = F.degree();

    // choose the modular image with fewest factors among several primes
    ModularImage best;
    best.p = 0;
    std::vector<std::vector<char>> degree_sets;
    int tried = 0;
    for (zp::u64 p : kFactorPrimes) {
        Int pz(static_cast<unsigned long>(p));
        if (F.lead() % pz == 0) continue;
        zp::Poly fp = zp::monic(zp::reduce(F, p), p);
        if (zp::deg(fp) != n || !zp::is_squarefree(fp, p)) continue;
        auto factors = zp::factor_squarefree(fp, p, /*seed=*/0x5eedULL + p);
        degree_sets.push_back(possible_degrees(factors, n));
        if (best.p == 0 || factors.size() < best.factors.size()) {
            best.p = p;
            best.factors = std::move(factors);
        }
        if (++tried >= 4 || best.factors.size() == 1) break;
    }
    if (best.p == 0) throw std::runtime_error("factor: no usable prime (input not squarefree?)");
    if (best.factors.size() == 1) return {f_in};

    std::vector<char> deg_ok(n + 1, 1);
    for (const auto& ds : degree_sets)
        for (int i = 0; i <= n; ++i) deg_ok[i] = deg_ok[i] && ds[i];

    // Landau-Mignotte style bound on factor coefficients of monic F
    Rat b2 = F.norm2_upper();
    Int bound = b2.get_num() / b2.get_den() + 1;
    Int two_n = 1;
    mpz_mul_2exp(two_n.get_mpz_t(), two_n.get_mpz_t(), n + 1);
    bound *= two_n;  // 2^n * ||F||_2 with one extra bit of slack
    Int target = 2 * bound + 1;

    Int modulus;
    std::vector<IntPoly> lifted = lift_factors(F, best.factors, best.p, target, modulus);

    // subset recombination over the monic F
    std::vector<IntPoly> found;
    std::vector<int> alive(lifted.size());
    for (size_t i = 0; i < lifted.size(); ++i) alive[i] = static_cast<int>(i);
    IntPoly rem_poly = F;

    auto subset_product = [&](const std::vector<int>& subset) {
        IntPoly prod = IntPoly::from_int(1);
        for (int idx : subset) prod = prod * lifted[idx];
        std::vector<Int> c(prod.degree() + 1);
        for (int i = 0; i <= prod.degree(); ++i) c[i] = symmetric_mod(prod[i], modulus);
        return IntPoly(std::move(c));
    };

    size_t card = 1;
    while (2 * card <= alive.size()) {
        bool found_one = false;
        std::vector<size_t> idx(card);
        for (size_t i = 0; i < card; ++i) idx[i] = i;
        while (true) {
            int dsum = 0;
            for (size_t i = 0; i < card; ++i) dsum += lifted[alive[idx[i]]].degree();
            if (dsum <= rem_poly.degree() && deg_ok[dsum]) {
                std::vector<int> subset(card);
                for (size_t i = 0; i < card; ++i) subset[i] = alive[idx[i]];
                IntPoly cand = subset_product(subset);
                IntPoly q, r;
                rem_poly.divrem_monic(cand, q, r);
                if (r.is_zero()) {
                    found.push_back(cand);
                    rem_poly = q;
                    std::vector<int> next_alive;
                    for (int a : alive)
                        if (std::find(subset.begin(), subset.end(), a) == subset.end())
                            next_alive.push_back(a);
                    alive = std::move(next_alive);
                    found_one = true;
                    break;
                }
            }
            size_t k = card;
            while (k > 0 && idx[k - 1] == alive.size() - card + k - 1) --k;
            if (k == 0) break;
            ++idx[k - 1];
            for (size_t j = k; j < card; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (!found_one) ++card;
    }
    if (rem_poly.degree() > 0) found.push_back(rem_poly);

    // map factors of monic F back to factors of f: g(X) -> primpart(g(lc X))
    std::vector<IntPoly> out;
    for (const auto& g : found) {
        out.push_back(g.scale_num(lc).normalized());
    }
    return out;
}

bool canonical_less(const IntPoly& a, const IntPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

}  // namespace

Factorization factor(const IntPoly& f) {
    Factorization out;
    if (f.is_zero()) throw std::domain_error("factor of zero polynomial");
    out.content = f.content();
    if (f.lead() < 0) out.content = -out.content;
    IntPoly g = f.normalized();
    if (g.degree() == 0) return out;

    // Yun squarefree decomposition
    std::vector<std::pair<IntPoly, int>> squarefree_parts;
    {
        IntPoly gp = g.derivative();
        IntPoly a = IntPoly::gcd(g, gp);
        IntPoly b = g.divexact(a);
        IntPoly c = gp.divexact(a);
        IntPoly d = c - b.derivative();
        int mult = 1;
        while (b.degree() > 0) {
            IntPoly p = IntPoly::gcd(b, d);
            if (p.degree() > 0) squarefree_parts.emplace_back(p.normalized(), mult);
            IntPoly b2 = b.divexact(p);
            IntPoly c2 = d.divexact(p);
            d = c2 - b2.derivative();
            b = b2;
            ++mult;
        }
    }

    for (const auto& [part, mult] : squarefree_parts) {
        for (const auto& irr : zassenhaus(part)) {
            out.factors.emplace_back(irr, mult);
        }
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& x, const auto& y) { return canonical_less(x.first, y.first); });
    return out;
}

std::vector<IntPoly> irreducible_factors(const IntPoly& f) {
    auto fac = factor(f);
    std::vector<IntPoly> out;
    out.reserve(fac.factors.size());
    for (auto& [p, e] : fac.factors) out.push_back(p);
    return out;
}

bool is_irreducible(const IntPoly& f) {
    if (f.degree() < 1) return false;
    auto fac = factor(f);
    return fac.factors.size() == 1 && fac.factors[0].second == 1 &&
           fac.factors[0].first.degree() == f.degree();
}

}  // namespace tordep
