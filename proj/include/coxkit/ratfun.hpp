#pragma once

#include "coxkit/poly.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace coxkit {

namespace detail {

// Euclidean helpers on ascending univariate coefficient vectors over Q.

inline void uv_trim(std::vector<BigRat>& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline std::vector<BigRat> uv_rem(std::vector<BigRat> a, const std::vector<BigRat>& b) {
    uv_trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        BigRat f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        uv_trim(a);
    }
    return a;
}

inline std::vector<BigRat> uv_divexact(std::vector<BigRat> a, const std::vector<BigRat>& b) {
    uv_trim(a);
    std::vector<BigRat> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, BigRat(0));
    while (a.size() >= b.size() && !a.empty()) {
        BigRat f = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        uv_trim(a);
    }
    if (!a.empty()) throw DomainError("polynomial division is not exact");
    return q;
}

inline std::vector<BigRat> uv_gcd(std::vector<BigRat> a, std::vector<BigRat> b) {
    uv_trim(a);
    uv_trim(b);
    while (!b.empty()) {
        auto r = uv_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        BigRat lead = a.back();
        for (auto& c : a) c /= lead;  // monic
    }
    return a;
}

inline std::vector<BigRat> uv_derivative(const std::vector<BigRat>& p) {
    std::vector<BigRat> d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(BigRat(i) * p[i]);
    return d;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Quotient of MultiPolys. Single-variable values normalize to the reduced
// form: GCD cancelled, denominator an integer-primitive polynomial with
// positive leading coefficient, numerator integer-primitive up to one shared
// rational unit. Multivariable values only normalize content; the denominator
// stays whatever product the caller built (no multivariate GCD by design).
// ---------------------------------------------------------------------------
class RationalFn {
public:
    RationalFn() : num_(MultiPoly::constant(0)), den_(MultiPoly::constant(1)) {}

    RationalFn(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DomainError("zero denominator");
        normalize();
    }

    static RationalFn from_poly(MultiPoly p) { return RationalFn(std::move(p), MultiPoly::constant(1)); }
    static RationalFn constant(BigRat c) { return from_poly(MultiPoly::constant(std::move(c))); }

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    // The polynomial value; requires a constant denominator.
    MultiPoly as_poly() const {
        if (!den_.is_constant()) throw DomainError("rational function is not a polynomial");
        return BigRat(1) / den_.constant_value() * num_;
    }

    friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
        return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFn operator-(const RationalFn& a, const RationalFn& b) {
        return RationalFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
        return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFn operator/(const RationalFn& a, const RationalFn& b) {
        if (b.num_.is_zero()) throw DomainError("division by zero rational function");
        return RationalFn(a.num_ * b.den_, a.den_ * b.num_);
    }

    RationalFn reciprocal() const {
        if (num_.is_zero()) throw DomainError("division by zero rational function");
        return RationalFn(den_, num_);
    }

    bool operator==(const RationalFn& o) const {
        return (num_ * o.den_) == (o.num_ * den_);
    }
    bool operator!=(const RationalFn& o) const { return !(*this == o); }

    // Compose: var := value (a rational function). Renaming first when the
    // value reuses unrelated variable names is the caller's job; identical or
    // disjoint variable sets compose directly.
    RationalFn substitute(const std::string& var, const RationalFn& value) const {
        auto [pn, dn] = subst_poly(num_, var, value);
        auto [pd, dd] = subst_poly(den_, var, value);
        // num/den = (pn / vden^dn) / (pd / vden^dd)
        if (dn >= dd) return RationalFn(pn, pd * value.den_.pow(dn - dd));
        return RationalFn(pn * value.den_.pow(dd - dn), pd);
    }

    // var := rational constant, with removable singularities cancelled by
    // repeated exact division by (var - value). Pole if only the denominator
    // vanishes.
    RationalFn specialize_limit(const std::string& var, const BigRat& value) const {
        MultiPoly n = num_, d = den_;
        while (true) {
            MultiPoly nv = n.substitute_value(var, value);
            MultiPoly dv = d.substitute_value(var, value);
            if (!dv.is_zero()) return RationalFn(nv, dv);
            if (nv.is_zero()) {
                if (!n.is_zero()) n = n.divide_linear(var, value);
                d = d.divide_linear(var, value);
                continue;
            }
            throw DomainError("pole at " + var + " = " + value.str());
        }
    }

    // Substitute every variable x -> 1/x, clearing denominators by the max
    // degree per variable.
    RationalFn invert_variables() const {
        MultiPoly n = num_, d = den_;
        std::vector<std::string> all;
        {
            auto nv = n.vars();
            auto dv = d.vars();
            std::set_union(nv.begin(), nv.end(), dv.begin(), dv.end(), std::back_inserter(all));
        }
        for (const auto& v : all) {
            std::uint32_t m = std::max(n.degree(v), d.degree(v));
            n = reverse_in_var(n, v, m);
            d = reverse_in_var(d, v, m);
        }
        return RationalFn(n, d);
    }

    // Exact Taylor coefficients 0..n in the sole variable; denominator must
    // have a nonzero constant term.
    std::vector<BigRat> taylor(const std::string& var, std::size_t n) const {
        auto nt = num_.trimmed_copy(), dt = den_.trimmed_copy();
        for (const auto& v : nt.vars())
            if (v != var) throw DomainError("taylor needs a univariate function in '" + var + "'");
        for (const auto& v : dt.vars())
            if (v != var) throw DomainError("taylor needs a univariate function in '" + var + "'");
        auto nc = nt.univariate_coeffs();
        auto dc = dt.univariate_coeffs();
        if (dc.empty() || dc[0] == 0) throw DomainError("denominator constant term is zero");
        std::vector<BigRat> a(n + 1, BigRat(0));
        for (std::size_t k = 0; k <= n; ++k) {
            BigRat s = k < nc.size() ? nc[k] : BigRat(0);
            for (std::size_t j = 1; j <= k && j < dc.size(); ++j) s -= dc[j] * a[k - j];
            a[k] = s / dc[0];
        }
        return a;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["num"] = num_.to_json();
        j["den"] = den_.to_json();
        return j;
    }

    static RationalFn from_json(const nlohmann::json& j) {
        return RationalFn(MultiPoly::from_json(j.at("num")), MultiPoly::from_json(j.at("den")));
    }

    std::string str() const {
        if (is_polynomial()) return as_poly().str();
        return "(" + num_.str() + ") / (" + den_.str() + ")";
    }

private:
    // p with var := value (rational fn): returns (poly, k) with the meaning
    // p -> poly / value.den^k.
    static std::pair<MultiPoly, std::uint32_t> subst_poly(const MultiPoly& p, const std::string& var,
                                                          const RationalFn& value) {
        std::uint32_t d = p.degree(var);
        if (d == 0) return {p, 0};
        // sum over var-degree k: coeff_k * num^k * den^(d-k)
        MultiPoly out;
        for (std::uint32_t k = 0; k <= d; ++k) {
            MultiPoly ck = coeff_of(p, var, k);
            if (ck.is_zero()) continue;
            out = out + ck * value.num_.pow(k) * value.den_.pow(d - k);
        }
        return {out, d};
    }

    // Coefficient polynomial of var^k.
    static MultiPoly coeff_of(const MultiPoly& p, const std::string& var, std::uint32_t k) {
        MultiPoly out;
        auto vars = p.vars();
        auto it = std::lower_bound(vars.begin(), vars.end(), var);
        if (it == vars.end() || *it != var) return k == 0 ? p : out;
        std::size_t pos = static_cast<std::size_t>(it - vars.begin());
        for (const auto& [e, c] : p.terms()) {
            if (e[pos] != k) continue;
            MultiPoly::Exponents rest = e;
            rest[pos] = 0;
            MultiPoly term;
            term = MultiPoly::constant(c);
            for (std::size_t i = 0; i < vars.size(); ++i)
                if (rest[i]) term = term * MultiPoly::variable(vars[i], rest[i]);
            out = out + term;
        }
        return out;
    }

    static MultiPoly reverse_in_var(const MultiPoly& p, const std::string& var, std::uint32_t m) {
        // p(1/x) * x^m, i.e. exponent e -> m - e
        MultiPoly out;
        auto vars = p.vars();
        auto it = std::lower_bound(vars.begin(), vars.end(), var);
        if (it == vars.end() || *it != var) {
            return p * MultiPoly::variable(var, m);
        }
        std::size_t pos = static_cast<std::size_t>(it - vars.begin());
        for (const auto& [e, c] : p.terms()) {
            MultiPoly term = MultiPoly::constant(c);
            for (std::size_t i = 0; i < vars.size(); ++i) {
                std::uint32_t exp = (i == pos) ? m - e[i] : e[i];
                if (exp) term = term * MultiPoly::variable(vars[i], exp);
            }
            out = out + term;
        }
        return out;
    }

    void normalize() {
        // shared variable count decides which normalization applies
        auto nv = num_.trimmed_copy().vars();
        auto dv = den_.trimmed_copy().vars();
        std::vector<std::string> all;
        std::set_union(nv.begin(), nv.end(), dv.begin(), dv.end(), std::back_inserter(all));
        if (all.size() <= 1 && !num_.is_zero()) {
            std::string var = all.empty() ? "" : all[0];
            if (!var.empty()) {
                auto a = num_.univariate_coeffs();
                auto b = den_.univariate_coeffs();
                auto g = detail::uv_gcd(a, b);
                if (g.size() > 1) {
                    a = detail::uv_divexact(a, g);
                    b = detail::uv_divexact(b, g);
                }
                num_ = MultiPoly::univariate(var, a);
                den_ = MultiPoly::univariate(var, b);
            }
        }
        if (num_.is_zero()) {
            den_ = MultiPoly::constant(1);
            return;
        }
        // integer content, denominator leading coefficient positive
        BigRat fn = num_.normalize_content();
        BigRat fd = den_.normalize_content();
        // reapply the overall scalar fd/fn to keep the value: num/den was
        // multiplied by fn/fd, so multiply num by fd/fn... fold into num.
        BigRat unit = fd / fn;
        num_ = unit * num_;
        // make denominator's trailing-to-leading sign canonical: leading
        // coefficient (last term in map order) positive
        if (!den_.terms().empty()) {
            const BigRat& lead = den_.terms().rbegin()->second;
            if (lead < 0) {
                den_ = -den_;
                num_ = -num_;
            }
        }
        // keep numerator integral when possible by clearing the unit's
        // denominator into nothing; growth results assert integrality later
    }

    MultiPoly num_, den_;
};

}  // namespace coxkit
