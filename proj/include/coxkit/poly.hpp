#pragma once

#include "coxkit/util.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace coxkit {

// ---------------------------------------------------------------------------
// Exact sparse multivariate polynomial over big rationals. Variables are kept
// sorted by name, exponent vectors match the variable arity, zero
// coefficients are never stored; the representation is canonical, so equality
// is structural. Exponents are bounded to 31 bits; overflow is a hard error.
// ---------------------------------------------------------------------------
class MultiPoly {
public:
    using Exponents = std::vector<std::uint32_t>;

    MultiPoly() = default;

    static MultiPoly constant(BigRat c) {
        MultiPoly p;
        if (c != 0) p.terms_[{}] = std::move(c);
        return p;
    }

    static MultiPoly variable(const std::string& name, std::uint32_t exp = 1) {
        if (exp == 0) return constant(1);
        MultiPoly p;
        p.vars_ = {name};
        p.terms_[{exp}] = 1;
        return p;
    }

    // Univariate constructor, ascending-degree coefficients.
    static MultiPoly univariate(const std::string& var, const std::vector<BigRat>& coeffs) {
        MultiPoly p;
        p.vars_ = {var};
        for (std::uint32_t i = 0; i < coeffs.size(); ++i)
            if (coeffs[i] != 0) p.terms_[{i}] = coeffs[i];
        p.strip_unused_vars();
        return p;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<Exponents, BigRat>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        if (terms_.empty()) return true;
        if (terms_.size() != 1) return false;
        const auto& e = terms_.begin()->first;
        return std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
    }

    BigRat constant_value() const {
        if (is_zero()) return 0;
        if (!is_constant()) throw DomainError("polynomial is not constant");
        return terms_.begin()->second;
    }

    // Coefficient of the all-zero exponent.
    BigRat constant_term() const {
        Exponents zero(vars_.size(), 0);
        auto it = terms_.find(zero);
        return it == terms_.end() ? BigRat(0) : it->second;
    }

    std::uint32_t degree(const std::string& var) const {
        auto pos = var_index(var);
        if (!pos) return 0;
        std::uint32_t d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[*pos]);
        return d;
    }

    bool has_integer_coeffs() const {
        for (const auto& [e, c] : terms_)
            if (denominator(c) != 1) return false;
        return true;
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        auto [x, y] = aligned(a, b);
        for (const auto& [e, c] : y.terms_) x.add_term(e, c);
        x.strip_unused_vars();  // cancellation may orphan a variable
        return x;
    }

    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
        auto [x, y] = aligned(a, b);
        for (const auto& [e, c] : y.terms_) x.add_term(e, -c);
        x.strip_unused_vars();
        return x;
    }

    MultiPoly operator-() const {
        MultiPoly out = *this;
        for (auto& [e, c] : out.terms_) c = -c;
        return out;
    }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        auto [x, y] = aligned(a, b);
        MultiPoly out;
        out.vars_ = x.vars_;
        for (const auto& [ea, ca] : x.terms_)
            for (const auto& [eb, cb] : y.terms_) {
                Exponents e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) {
                    std::uint64_t s = std::uint64_t(ea[i]) + eb[i];
                    if (s > 0x7fffffffull) throw DomainError("exponent overflow");
                    e[i] = static_cast<std::uint32_t>(s);
                }
                out.add_term(e, ca * cb);
            }
        out.strip_unused_vars();
        return out;
    }

    friend MultiPoly operator*(const BigRat& c, const MultiPoly& p) {
        MultiPoly out;
        if (c == 0) return out;
        out.vars_ = p.vars_;
        for (const auto& [e, v] : p.terms_) out.terms_[e] = c * v;
        return out;
    }

    MultiPoly pow(std::uint32_t n) const {
        MultiPoly out = constant(1);
        MultiPoly base = *this;
        while (n) {
            if (n & 1) out = out * base;
            base = (n >>= 1) ? base * base : base;
        }
        return out;
    }

    bool operator==(const MultiPoly& o) const {
        auto [x, y] = aligned(*this, o);
        return x.terms_ == y.terms_;
    }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    // Substitute one variable by a polynomial (used for variable renaming and
    // the f-polynomial substitution routes; powers computed by squaring).
    MultiPoly substitute(const std::string& var, const MultiPoly& value) const {
        auto pos = var_index(var);
        if (!pos) return *this;
        MultiPoly out;
        std::map<std::uint32_t, MultiPoly> pow_cache;
        for (const auto& [e, c] : terms_) {
            Exponents rest = e;
            std::uint32_t k = rest[*pos];
            rest.erase(rest.begin() + static_cast<long>(*pos));
            MultiPoly base;
            base.vars_ = vars_;
            base.vars_.erase(base.vars_.begin() + static_cast<long>(*pos));
            base.terms_[rest] = c;
            auto it = pow_cache.find(k);
            if (it == pow_cache.end()) it = pow_cache.emplace(k, value.pow(k)).first;
            out = out + base * it->second;
        }
        return out;
    }

    // Substitute one variable by a rational value.
    MultiPoly substitute_value(const std::string& var, const BigRat& value) const {
        return substitute(var, constant(value));
    }

    // Full evaluation; every variable must be given a value.
    BigRat eval(const std::map<std::string, BigRat>& point) const {
        BigRat total = 0;
        for (const auto& [e, c] : terms_) {
            BigRat m = c;
            for (std::size_t i = 0; i < vars_.size(); ++i) {
                auto it = point.find(vars_[i]);
                if (it == point.end()) throw DomainError("missing value for '" + vars_[i] + "'");
                for (std::uint32_t k = 0; k < e[i]; ++k) m *= it->second;
            }
            total += m;
        }
        return total;
    }

    // Exact division by (var - value); throws if the remainder is nonzero.
    // Treats the polynomial as univariate in `var` with polynomial
    // coefficients and runs synthetic division.
    MultiPoly divide_linear(const std::string& var, const BigRat& value) const {
        auto pos = var_index(var);
        if (!pos) throw DomainError("polynomial does not involve '" + var + "'");
        std::uint32_t d = degree(var);
        // coeffs[k] = coefficient polynomial of var^k
        std::vector<MultiPoly> coeffs(d + 1);
        for (auto& c : coeffs) c.vars_ = vars_erased(*pos);
        for (const auto& [e, c] : terms_) {
            Exponents rest = e;
            std::uint32_t k = rest[*pos];
            rest.erase(rest.begin() + static_cast<long>(*pos));
            coeffs[k].add_term(rest, c);
        }
        std::vector<MultiPoly> q(d);
        for (std::uint32_t k = d; k-- > 0;) {
            q[k] = coeffs[k + 1] + value * (k + 1 < d ? q[k + 1] : MultiPoly());
        }
        MultiPoly rem = coeffs[0] + value * (d > 0 ? q[0] : MultiPoly());
        if (!rem.is_zero()) throw DomainError("division by (" + var + " - value) is not exact");
        // reassemble
        MultiPoly out;
        out.vars_ = vars_;
        for (std::uint32_t k = 0; k < d; ++k)
            for (const auto& [e, c] : q[k].terms_) {
                Exponents full = e;
                full.insert(full.begin() + static_cast<long>(*pos), k);
                out.add_term(full, c);
            }
        out.strip_unused_vars();
        return out;
    }

    // Univariate view: ascending coefficients c0..cd. Requires at most one
    // effective variable; a constant yields a single entry (or none if zero).
    std::vector<BigRat> univariate_coeffs() const {
        auto trimmed = trimmed_copy();
        if (trimmed.vars_.size() > 1)
            throw DomainError("polynomial is not univariate");
        if (trimmed.vars_.empty())
            return trimmed.is_zero() ? std::vector<BigRat>{} : std::vector<BigRat>{trimmed.constant_value()};
        std::vector<BigRat> out(trimmed.degree(trimmed.vars_[0]) + 1, BigRat(0));
        for (const auto& [e, c] : trimmed.terms_) out[e[0]] = c;
        return out;
    }

    // The single effective variable, if any.
    std::optional<std::string> sole_var() const {
        auto t = trimmed_copy();
        if (t.vars_.size() > 1) return std::nullopt;
        return t.vars_.empty() ? std::optional<std::string>("") : std::optional(t.vars_[0]);
    }

    // Drop variables that no term uses.
    MultiPoly trimmed_copy() const {
        MultiPoly out = *this;
        out.strip_unused_vars();
        return out;
    }

    // Scale so all coefficients are integers with gcd 1; returns the factor
    // the polynomial was multiplied by. Zero polynomial is left alone.
    BigRat normalize_content() {
        if (terms_.empty()) return 1;
        BigInt lcm_den = 1, gcd_num = 0;
        for (const auto& [e, c] : terms_)
            lcm_den = boost::multiprecision::lcm(lcm_den, denominator(c));
        for (const auto& [e, c] : terms_)
            gcd_num = boost::multiprecision::gcd(gcd_num, BigInt(numerator(c) * (lcm_den / denominator(c))));
        BigRat factor(lcm_den, gcd_num);
        for (auto& [e, c] : terms_) c *= factor;
        return factor;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["vars"] = vars_;
        j["terms"] = nlohmann::json::array();
        for (const auto& [e, c] : terms_) {
            nlohmann::json t;
            t["e"] = e;
            t["c"] = c.str();
            j["terms"].push_back(t);
        }
        return j;
    }

    static MultiPoly from_json(const nlohmann::json& j) {
        MultiPoly p;
        p.vars_ = j.at("vars").get<std::vector<std::string>>();
        if (!std::is_sorted(p.vars_.begin(), p.vars_.end()))
            throw ParseError("polynomial variables must be sorted");
        for (const auto& t : j.at("terms")) {
            Exponents e = t.at("e").get<Exponents>();
            if (e.size() != p.vars_.size()) throw ParseError("exponent arity mismatch");
            BigRat c(t.at("c").get<std::string>());
            if (c != 0) p.add_term(e, c);
        }
        return p;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string out;
        // highest total degree first reads better for growth polynomials
        std::vector<std::pair<Exponents, BigRat>> ts(terms_.begin(), terms_.end());
        std::reverse(ts.begin(), ts.end());
        for (const auto& [e, c] : ts) {
            std::string mono;
            for (std::size_t i = 0; i < vars_.size(); ++i) {
                if (!e[i]) continue;
                if (!mono.empty()) mono += "*";
                mono += vars_[i];
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
            BigRat a = c;
            bool neg = a < 0;
            if (neg) a = -a;
            if (out.empty())
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            if (mono.empty() || a != 1) {
                out += a.str();
                if (!mono.empty()) out += "*";
            }
            out += mono;
        }
        return out;
    }

private:
    friend class RationalFn;

    void add_term(const Exponents& e, BigRat c) {
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, std::move(c));
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::optional<std::size_t> var_index(const std::string& var) const {
        auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
        if (it == vars_.end() || *it != var) return std::nullopt;
        return static_cast<std::size_t>(it - vars_.begin());
    }

    std::vector<std::string> vars_erased(std::size_t pos) const {
        auto v = vars_;
        v.erase(v.begin() + static_cast<long>(pos));
        return v;
    }

    void strip_unused_vars() {
        for (std::size_t i = vars_.size(); i-- > 0;) {
            bool used = false;
            for (const auto& [e, c] : terms_)
                if (e[i]) used = true;
            if (used) continue;
            vars_.erase(vars_.begin() + static_cast<long>(i));
            std::map<Exponents, BigRat> nt;
            for (auto& [e, c] : terms_) {
                Exponents ne = e;
                ne.erase(ne.begin() + static_cast<long>(i));
                nt.emplace(std::move(ne), std::move(c));
            }
            terms_ = std::move(nt);
        }
    }

    // Common variable list (sorted union), exponents padded accordingly.
    static std::pair<MultiPoly, MultiPoly> aligned(const MultiPoly& a, const MultiPoly& b) {
        if (a.vars_ == b.vars_) return {a, b};
        std::vector<std::string> u;
        std::set_union(a.vars_.begin(), a.vars_.end(), b.vars_.begin(), b.vars_.end(),
                       std::back_inserter(u));
        return {a.with_vars(u), b.with_vars(u)};
    }

    MultiPoly with_vars(const std::vector<std::string>& u) const {
        MultiPoly out;
        out.vars_ = u;
        std::vector<std::size_t> at(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            auto it = std::lower_bound(u.begin(), u.end(), vars_[i]);
            at[i] = static_cast<std::size_t>(it - u.begin());
        }
        for (const auto& [e, c] : terms_) {
            Exponents ne(u.size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i) ne[at[i]] = e[i];
            out.terms_.emplace(std::move(ne), c);
        }
        return out;
    }

    std::vector<std::string> vars_;        // sorted, unique
    std::map<Exponents, BigRat> terms_;    // lex order on exponent vectors
};

// Ascending-degree coefficient list of a univariate polynomial; empty for 0.
inline std::vector<BigRat> coefficients(const MultiPoly& p) {
    return p.univariate_coeffs();
}

}  // namespace coxkit
