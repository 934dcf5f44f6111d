#pragma once

#include "coxkit/poly.hpp"
#include "coxkit/ratfun.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <utility>
#include <vector>

namespace coxkit {

namespace detail {

inline int sign_of(const BigRat& x) {
    if (x == 0) return 0;
    return x > 0 ? 1 : -1;
}

inline BigRat uv_eval(const std::vector<BigRat>& c, const BigRat& x) {
    BigRat acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

inline std::vector<std::vector<BigRat>> sturm_chain(std::vector<BigRat> p) {
    std::vector<std::vector<BigRat>> chain;
    chain.push_back(p);
    chain.push_back(uv_derivative(p));
    while (chain.back().size() > 1) {
        auto r = uv_rem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(std::move(r));
    }
    return chain;
}

inline int sign_variations(const std::vector<std::vector<BigRat>>& chain, const BigRat& x) {
    int var = 0, prev = 0;
    for (const auto& p : chain) {
        int s = sign_of(uv_eval(p, x));
        if (s != 0 && prev != 0 && s != prev) ++var;
        if (s != 0) prev = s;
    }
    return var;
}

inline int sign_variations_at_infinity(const std::vector<std::vector<BigRat>>& chain, bool plus) {
    int var = 0, prev = 0;
    for (const auto& p : chain) {
        if (p.empty()) continue;
        int s = sign_of(p.back());
        if (!plus && (p.size() - 1) % 2 == 1) s = -s;
        if (s != 0 && prev != 0 && s != prev) ++var;
        if (s != 0) prev = s;
    }
    return var;
}

// Yun's algorithm: p ~ prod f_i^i with the f_i squarefree and coprime.
inline std::vector<std::pair<std::vector<BigRat>, unsigned>> yun_squarefree(
    std::vector<BigRat> p) {
    std::vector<std::pair<std::vector<BigRat>, unsigned>> out;
    uv_trim(p);
    if (p.size() <= 1) return out;
    auto dp = uv_derivative(p);
    auto g = uv_gcd(p, dp);
    if (g.size() <= 1) {
        out.emplace_back(std::move(p), 1);
        return out;
    }
    auto c = uv_divexact(p, g);
    auto d = uv_divexact(dp, g);
    {
        auto cp = uv_derivative(c);
        for (std::size_t i = 0; i < cp.size(); ++i) d[i] -= cp[i];
        uv_trim(d);
    }
    unsigned i = 1;
    while (c.size() > 1) {
        auto f = uv_gcd(c, d);
        if (f.size() > 1) out.emplace_back(f, i);
        c = uv_divexact(c, f);
        if (c.size() <= 1) break;
        d = uv_divexact(d, f);
        auto cp = uv_derivative(c);
        for (std::size_t k = 0; k < cp.size(); ++k) {
            if (k < d.size())
                d[k] -= cp[k];
            else
                d.push_back(-cp[k]);
        }
        uv_trim(d);
        ++i;
    }
    return out;
}

// One Aberth-Ehrlich pass over a squarefree real polynomial (double coeffs,
// ascending). Returns false if the iteration cap ran out before every
// correction went below tolerance.
inline bool aberth(const std::vector<double>& a, std::vector<std::complex<double>>& z,
                   unsigned max_iter) {
    std::size_t n = a.size() - 1;
    auto eval = [&](std::complex<double> x, std::complex<double>& p, std::complex<double>& dp) {
        p = a[n];
        dp = 0.0;
        for (std::size_t i = n; i-- > 0;) {
            dp = dp * x + p;
            p = p * x + a[i];
        }
    };
    for (unsigned it = 0; it < max_iter; ++it) {
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::complex<double> p, dp;
            eval(z[i], p, dp);
            if (std::abs(p) == 0.0) continue;
            std::complex<double> newton = dp == 0.0 ? std::complex<double>(1e-12, 1e-12) : p / dp;
            std::complex<double> repulse = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) repulse += 1.0 / (z[i] - z[j]);
            std::complex<double> denom = 1.0 - newton * repulse;
            std::complex<double> delta = denom == 0.0 ? newton : newton / denom;
            z[i] -= delta;
            worst = std::max(worst, std::abs(delta) / (1.0 + std::abs(z[i])));
        }
        if (worst < 1e-14) return true;
    }
    return false;
}

inline std::vector<std::complex<double>> initial_circle(const std::vector<double>& a) {
    std::size_t n = a.size() - 1;
    double r = std::pow(std::abs(a[0] / a[n]) + 1e-300, 1.0 / static_cast<double>(n));
    r = std::max(r, 1e-3);
    std::vector<std::complex<double>> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        double theta = 2.0 * 3.14159265358979323846 * (static_cast<double>(k) + 0.354) /
                       static_cast<double>(n);
        z[k] = std::polar(r * (1.0 + 0.05 * static_cast<double>(k % 3)), theta);
    }
    return z;
}

}  // namespace detail

// Exact count of distinct real roots, whole line or the half-open interval
// (lo, hi]. Multiplicities are stripped first, so the answer is a root count,
// not a sign-change heuristic.
inline int sturm_real_count(const MultiPoly& p,
                            std::optional<std::pair<BigRat, BigRat>> interval = std::nullopt) {
    auto coeffs = p.univariate_coeffs();
    detail::uv_trim(coeffs);
    if (coeffs.empty()) throw DomainError("zero polynomial has every point as a root");
    if (coeffs.size() == 1) return 0;
    auto sf = detail::uv_divexact(coeffs, detail::uv_gcd(coeffs, detail::uv_derivative(coeffs)));
    if (sf.size() == 1) return 0;
    auto chain = detail::sturm_chain(sf);
    int lo, hi;
    if (interval) {
        if (interval->first >= interval->second)
            throw DomainError("interval must satisfy lo < hi");
        lo = detail::sign_variations(chain, interval->first);
        hi = detail::sign_variations(chain, interval->second);
    } else {
        lo = detail::sign_variations_at_infinity(chain, false);
        hi = detail::sign_variations_at_infinity(chain, true);
    }
    return lo - hi;
}

struct RootEntry {
    double re = 0.0;
    double im = 0.0;
    unsigned multiplicity = 1;
};

struct RootReport {
    int real_count = 0;  // distinct real roots, exact
    std::vector<RootEntry> roots;
    bool converged = true;
    double residual_tolerance = 1e-8;
    bool residual_ok = true;

    nlohmann::json to_json() const {
        nlohmann::json roots_json = nlohmann::json::array();
        for (const auto& r : roots)
            for (unsigned k = 0; k < r.multiplicity; ++k)
                roots_json.push_back({{"re", r.re}, {"im", r.im}});
        return {{"real_count", real_count},
                {"roots", roots_json},
                {"residual", residual_tolerance}};
    }
};

namespace detail {

// Exact |p(z)|^2 <= (tol * scale(z))^2 with scale(z) = sum |a_i| max(1,|z|)^i.
// The doubles convert to rationals exactly, so this is a certificate, not a
// float comparison.
inline bool residual_ok(const std::vector<BigRat>& coeffs, double re_d, double im_d, double tol) {
    BigRat re(re_d), im(im_d);
    BigRat pre = 0, pim = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        BigRat nre = pre * re - pim * im + coeffs[i];
        BigRat nim = pre * im + pim * re;
        pre = nre;
        pim = nim;
    }
    BigRat value2 = pre * pre + pim * pim;
    BigRat m2 = re * re + im * im;
    if (m2 < 1) m2 = 1;
    BigRat scale = 0, mpow = 1;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        BigRat a = coeffs[i] < 0 ? BigRat(-coeffs[i]) : coeffs[i];
        scale += a * mpow;
        mpow *= m2;  // m2 = max(1,|z|)^2, so this overshoots to max(1,|z|)^(2i): safe upper bound
    }
    BigRat t(tol);
    return value2 <= t * t * scale * scale;
}

}  // namespace detail

// Floating approximations of all complex roots. Multiplicities come from the
// exact squarefree decomposition; each squarefree factor goes through
// Aberth-Ehrlich; non-real roots are snapped to exact conjugate pairs; every
// root is then certified against the original polynomial with exact rational
// arithmetic.
inline RootReport approx_roots(const MultiPoly& p, unsigned max_iter = 800) {
    auto coeffs = p.univariate_coeffs();
    detail::uv_trim(coeffs);
    if (coeffs.empty()) throw DomainError("zero polynomial has every point as a root");
    RootReport report;
    report.real_count = sturm_real_count(p);
    if (coeffs.size() == 1) return report;

    for (auto& [factor, mult] : detail::yun_squarefree(coeffs)) {
        std::vector<double> a(factor.size());
        BigRat lead = factor.back();
        for (std::size_t i = 0; i < factor.size(); ++i)
            a[i] = static_cast<double>(BigRat(factor[i] / lead));
        auto z = detail::initial_circle(a);
        if (!detail::aberth(a, z, max_iter)) report.converged = false;

        // split off real roots, then snap the rest into conjugate pairs
        std::vector<double> reals;
        std::vector<std::complex<double>> complexes;
        for (auto& root : z) {
            if (std::abs(root.imag()) <= 1e-9 * (1.0 + std::abs(root)))
                reals.push_back(root.real());
            else
                complexes.push_back(root);
        }
        std::vector<std::complex<double>> uppers;
        std::vector<std::complex<double>> lowers;
        for (auto& c : complexes) (c.imag() > 0 ? uppers : lowers).push_back(c);
        auto by_re = [](std::complex<double> x, std::complex<double> y) {
            if (x.real() != y.real()) return x.real() < y.real();
            return std::abs(x.imag()) < std::abs(y.imag());
        };
        std::sort(uppers.begin(), uppers.end(), by_re);
        std::sort(lowers.begin(), lowers.end(), by_re);
        if (uppers.size() != lowers.size()) {
            report.converged = false;  // pairing failed; report raw values
            for (auto& c : complexes)
                report.roots.push_back(RootEntry{c.real(), c.imag(), mult});
        } else {
            for (std::size_t i = 0; i < uppers.size(); ++i) {
                std::complex<double> w = (uppers[i] + std::conj(lowers[i])) / 2.0;
                report.roots.push_back(RootEntry{w.real(), w.imag(), mult});
                report.roots.push_back(RootEntry{w.real(), -w.imag(), mult});
            }
        }
        for (double r : reals) report.roots.push_back(RootEntry{r, 0.0, mult});
    }

    std::sort(report.roots.begin(), report.roots.end(), [](const RootEntry& a, const RootEntry& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    });
    for (const auto& r : report.roots)
        if (!detail::residual_ok(coeffs, r.re, r.im, report.residual_tolerance))
            report.residual_ok = false;

    // cross-check the float picture against the exact count
    int near_real = 0;
    for (const auto& r : report.roots)
        if (std::abs(r.im) <= 1e-6 * (1.0 + std::hypot(r.re, r.im))) ++near_real;
    int distinct_real = 0;
    {
        double prev = 0.0;
        bool first = true;
        for (const auto& r : report.roots) {
            if (std::abs(r.im) > 1e-6 * (1.0 + std::hypot(r.re, r.im))) continue;
            if (first || r.re != prev) ++distinct_real;
            first = false;
            prev = r.re;
        }
    }
    if (distinct_real != report.real_count) report.converged = false;
    (void)near_real;
    return report;
}

// Poles of a one-variable growth series: the roots of the reduced
// denominator. A polynomial series has no poles.
inline RootReport poles_of_growth(const RationalFn& r) {
    if (r.is_polynomial()) return RootReport{};
    return approx_roots(r.den());
}

}  // namespace coxkit
