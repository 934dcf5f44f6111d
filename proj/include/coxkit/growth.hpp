#pragma once

#include "coxkit/classify.hpp"
#include "coxkit/closure.hpp"
#include "coxkit/ratfun.hpp"
#include "coxkit/words.hpp"

#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace coxkit {

struct GrowthResult {
    RationalFn series;
    std::string route;  // product-formula | serre | specialization | f-substitution | bfs-oracle
    std::string fingerprint;
};

namespace detail {

// A parabolic series kept as a multiset of atomic polynomial factors
// (q-integers, right-angled binomials, B_k mixed binomials). The Serre sum
// needs least common multiples of denominators, which are multiset maxima
// here; no multivariate GCD anywhere.
struct FactorList {
    // canonical text of the factor -> (factor, multiplicity)
    std::map<std::string, std::pair<MultiPoly, unsigned>> factors;

    void mul(const MultiPoly& f, unsigned k = 1) {
        if (k == 0) return;
        std::string key = f.to_json().dump();
        auto it = factors.find(key);
        if (it == factors.end())
            factors.emplace(key, std::make_pair(f, k));
        else
            it->second.second += k;
    }

    void mul(const FactorList& o) {
        for (const auto& [k, fv] : o.factors) {
            auto it = factors.find(k);
            if (it == factors.end())
                factors.emplace(k, fv);
            else
                it->second.second += fv.second;
        }
    }

    MultiPoly expand() const {
        MultiPoly out = MultiPoly::constant(1);
        for (const auto& [k, fv] : factors) out = out * fv.first.pow(fv.second);
        return out;
    }

    std::string key() const {
        std::string s;
        for (const auto& [k, fv] : factors) s += k + "^" + std::to_string(fv.second) + ";";
        return s;
    }

    // this \ o as multisets; caller guarantees containment.
    FactorList minus(const FactorList& o) const {
        FactorList out = *this;
        for (const auto& [k, fv] : o.factors) {
            auto it = out.factors.find(k);
            if (it == out.factors.end() || it->second.second < fv.second)
                throw Error("factor multiset difference underflow");
            it->second.second -= fv.second;
            if (it->second.second == 0) out.factors.erase(it);
        }
        return out;
    }

    void lcm_with(const FactorList& o) {
        for (const auto& [k, fv] : o.factors) {
            auto it = factors.find(k);
            if (it == factors.end())
                factors.emplace(k, fv);
            else
                it->second.second = std::max(it->second.second, fv.second);
        }
    }
};

inline MultiPoly q_integer(unsigned n, const std::string& var) {
    return MultiPoly::univariate(var, std::vector<BigRat>(n, BigRat(1)));
}

// Factored multi-variable series of one connected finite component:
//   (i)  all generators in one class        -> product of q-integers,
//   (ii) single node                        -> 1 + var,
//   (iii) B_k chain, label-4 end in its own class, the rest uniform
//        -> prod_i [i]_v (1 + u v^(i-1)),
//   (iv) anything else                      -> BFS sum as a single factor.
inline std::optional<FactorList> component_series(const CoxeterDiagram& d, Subset comp,
                                                  const std::vector<std::string>& phi) {
    auto type = classify_component(d, comp);
    if (!type) return std::nullopt;
    FactorList out;
    auto vs = comp.elements();

    if (vs.size() == 1) {
        out.mul(MultiPoly::constant(1) + MultiPoly::variable(phi[vs[0]]));
        return out;
    }

    bool one_class = true;
    for (unsigned v : vs)
        if (phi[v] != phi[vs[0]]) one_class = false;
    if (one_class) {
        for (unsigned deg : type->degrees) out.mul(q_integer(deg, phi[vs[0]]));
        return out;
    }

    if (type->tag[0] == 'B') {
        auto path = chain_path(d, comp);
        if (path) {
            if (!(d.label((*path)[0], (*path)[1]) == Label::finite(4)))
                std::reverse(path->begin(), path->end());
            const std::string& u = phi[(*path)[0]];
            bool rest_uniform = true;
            for (std::size_t i = 1; i < path->size(); ++i)
                if (phi[(*path)[i]] != phi[(*path)[1]]) rest_uniform = false;
            if (rest_uniform && d.label((*path)[0], (*path)[1]) == Label::finite(4)) {
                const std::string& v = phi[(*path)[1]];
                for (unsigned i = 1; i <= path->size(); ++i) {
                    out.mul(q_integer(i, v));
                    out.mul(MultiPoly::constant(1) +
                            MultiPoly::variable(u) * MultiPoly::variable(v, i - 1));
                }
                return out;
            }
        }
    }

    // BFS fallback: exact sum of refined-length monomials
    MultiPoly sum;
    for (const Element& w : enumerate_elements(d, comp)) {
        MultiPoly mono = MultiPoly::constant(1);
        for (unsigned g : w.word()) mono = mono * MultiPoly::variable(phi[g]);
        sum = sum + mono;
    }
    out.mul(sum);
    return out;
}

// Memo keyed by the induced component diagram plus its classes.
class ComponentSeriesCache {
public:
    std::optional<FactorList> get(const CoxeterDiagram& d, Subset comp,
                                  const std::vector<std::string>& phi) {
        std::string key = comp_key(d, comp, phi);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        auto val = component_series(d, comp, phi);
        std::lock_guard<std::mutex> lock(mu_);
        memo_.emplace(key, val);
        return val;
    }

private:
    static std::string comp_key(const CoxeterDiagram& d, Subset comp,
                                const std::vector<std::string>& phi) {
        // canonical up to the ordinal order of the component, which is enough
        // for repeats of literally-equal subsets; isomorphic repeats hit the
        // same key because names are dropped
        auto vs = comp.elements();
        std::string key;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            key += phi[vs[i]] + "|";
            for (std::size_t j = i + 1; j < vs.size(); ++j)
                key += d.label(vs[i], vs[j]).str() + ",";
            key += ";";
        }
        return key;
    }

    std::mutex mu_;
    std::map<std::string, std::optional<FactorList>> memo_;
};

}  // namespace detail

inline void validate_partition(const CoxeterDiagram& d, const std::vector<std::string>& phi) {
    if (phi.size() != d.rank()) throw DomainError("partition arity mismatch");
    for (unsigned s = 0; s < d.rank(); ++s)
        for (unsigned t = s + 1; t < d.rank(); ++t) {
            Label m = d.label(s, t);
            if (!m.is_infinite() && m.is_odd() && m.finite_value() >= 3 && phi[s] != phi[t])
                throw DomainError("partition not allowable: odd edge " + d.name(s) + " -" +
                                  m.str() + "- " + d.name(t));
        }
}

// Multi-variable growth polynomial of a finite parabolic: product over
// connected components, each by the cheapest exact route.
inline MultiPoly growth_finite_multi(const CoxeterDiagram& d, Subset a,
                                     const std::vector<std::string>& phi) {
    validate_partition(d, phi);
    if (!group_order(d, a)) throw DomainError("growth_finite_multi requires a finite subgroup");
    MultiPoly out = MultiPoly::constant(1);
    for (Subset comp : d.connected_components(a)) {
        auto fl = detail::component_series(d, comp, phi);
        if (!fl) throw DomainError("growth_finite_multi requires a finite subgroup");
        out = out * fl->expand();
    }
    return out;
}

// Growth series of an infinite Coxeter group via the alternating sum over
// finite standard parabolics: R(x) = sum (-1)^|J| / (W_J)_phi(x), then
// W_phi(y) = 1/R evaluated at inverse variables. Denominators are handled as
// factor multisets with an explicit LCM; subset terms are grouped by equal
// series before any polynomial multiplication happens.
inline RationalFn growth_infinite(const CoxeterDiagram& d, Subset a,
                                  const std::vector<std::string>& phi) {
    validate_partition(d, phi);
    if (group_order(d, a)) throw DomainError("growth_infinite requires an infinite group");
    auto gens = a.elements();
    if (gens.size() > 20)
        throw CapExceeded("Serre sum over 2^" + std::to_string(gens.size()) + " subsets refused");

    detail::ComponentSeriesCache cache;
    struct Group {
        detail::FactorList series;
        BigInt coeff = 0;
    };
    std::map<std::string, Group> groups;
    std::mutex groups_mu;

    std::uint64_t total = 1ull << gens.size();
    parallel_for(total, [&](std::size_t mask) {
        Subset J;
        for (std::size_t b = 0; b < gens.size(); ++b)
            if ((mask >> b) & 1) J.add(gens[b]);
        detail::FactorList series;
        for (Subset comp : d.connected_components(J)) {
            auto fl = cache.get(d, comp, phi);
            if (!fl) return;  // infinite parabolic: not in the nerve
            series.mul(*fl);
        }
        int sign = (J.size() % 2 == 0) ? 1 : -1;
        std::string key = series.key();
        std::lock_guard<std::mutex> lock(groups_mu);
        auto& g = groups[key];
        if (g.coeff == 0 && g.series.factors.empty()) g.series = series;
        g.coeff += sign;
    });

    detail::FactorList lcm;
    for (const auto& [k, g] : groups) lcm.lcm_with(g.series);
    MultiPoly numerator;
    for (const auto& [k, g] : groups) {
        if (g.coeff == 0) continue;
        MultiPoly complement = lcm.minus(g.series).expand();
        numerator = numerator + BigRat(g.coeff) * complement;
    }
    if (numerator.is_zero()) throw DomainError("alternating parabolic sum vanished");
    MultiPoly den = lcm.expand();
    // R = numerator/den; W(y) = 1/R at inverse variables
    return RationalFn(den, numerator).invert_variables();
}

// Growth series by whatever route the finiteness of W_a dictates.
inline RationalFn growth_series(const CoxeterDiagram& d, Subset a,
                                const std::vector<std::string>& phi, std::string* route = nullptr) {
    if (group_order(d, a)) {
        if (route) *route = "product-formula";
        return RationalFn::from_poly(growth_finite_multi(d, a, phi));
    }
    if (route) *route = "serre";
    return growth_infinite(d, a, phi);
}

struct ClosureGrowth {
    GrowthResult closure;   // series of the normal closure, variable "x"
    RationalFn w_t;         // growth of W_T itself: W_phi(0, x)
    RationalFn w_phi;       // the two-variable ambient series
    BigInt order_snt = 0;   // #W_{S-T}
};

// Specialization route: W-bar(x) = W_phi(x0,x)|_{x0->1} / #W_{S-T}, with the
// evenness hypothesis and finiteness of W_{S-T} as preconditions.
inline ClosureGrowth closure_growth_by_specialization(const CoxeterDiagram& d) {
    if (!d.t_set()) throw DomainError("diagram declares no T subset");
    Subset T = *d.t_set();
    if (auto v = check_hypothesis(d, T))
        throw DomainError("closure hypothesis violated: odd label " + v->m.str() + " between " +
                          d.name(v->t) + " and " + d.name(v->s));
    Subset rest = d.all() - T;
    auto order_rest = group_order(d, rest);
    if (!order_rest)
        throw DomainError("W_{S-T} must be finite (otherwise the closure needs infinitely many generators)");

    std::vector<std::string> phi(d.rank(), "x0");
    T.for_each([&](unsigned i) { phi[i] = "x"; });

    std::string route;
    RationalFn w_phi = growth_series(d, d.all(), phi, &route);
    RationalFn at_one = w_phi.specialize_limit("x0", 1);
    RationalFn wbar = at_one * RationalFn::constant(BigRat(1, *order_rest));
    RationalFn w_t = w_phi.substitute("x0", RationalFn::constant(0));

    ClosureGrowth out;
    out.closure = GrowthResult{wbar, "specialization", d.fingerprint()};
    out.w_t = w_t;
    out.w_phi = w_phi;
    out.order_snt = *order_rest;
    return out;
}

// Right-angled route: substitute every variable v -> -1/(1+v) into the
// f-polynomial, invert, then flip variables to their inverses; the result is
// the growth series of the right-angled system with that nerve.
inline RationalFn growth_from_f(const MultiPoly& f) {
    RationalFn r = RationalFn::from_poly(f);
    for (const std::string& v : f.vars()) {
        MultiPoly one_plus = MultiPoly::constant(1) + MultiPoly::variable(v);
        r = r.substitute(v, RationalFn(MultiPoly::constant(-1), one_plus));
    }
    if (r.is_zero()) throw DomainError("f-polynomial vanished under substitution");
    return r.reciprocal().invert_variables();
}

}  // namespace coxkit
