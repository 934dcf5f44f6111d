#pragma once

#include "coxkit/classify.hpp"
#include "coxkit/closure.hpp"
#include "coxkit/poly.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace coxkit {

// A spherical family: for some T' in T, one chain per active t. A chain
// starts at t, leaves through a label-4 edge, continues along label-3 edges,
// has no chords, and meets T only in t, so it spans a B_k parabolic. Chains
// of distinct members must commute elementwise. sigma0 is the part of the
// complement perpendicular to the whole family.
struct SigmaFamily {
    std::map<unsigned, std::vector<unsigned>> chains;  // t -> (t, v1, ..., v_{k-1})
    Subset sigma0;
    unsigned grade = 0;

    Subset vertex_set() const {
        Subset u;
        for (const auto& [t, path] : chains)
            for (unsigned v : path) u.add(v);
        return u;
    }

    std::string str(const CoxeterDiagram& d) const {
        std::string out = "{";
        bool first = true;
        for (const auto& [t, path] : chains) {
            if (!first) out += ", ";
            first = false;
            for (std::size_t i = 0; i < path.size(); ++i) {
                if (i) out += '.';
                out += d.name(path[i]);
            }
        }
        out += "}";
        return out;
    }
};

namespace detail {

inline std::vector<std::vector<unsigned>> chains_from(const CoxeterDiagram& d, Subset T,
                                                      unsigned t) {
    Subset rest = d.all() - T;
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> path{t};
    auto extend = [&](auto&& self) -> void {
        out.push_back(path);
        rest.for_each([&](unsigned v) {
            if (std::find(path.begin(), path.end(), v) != path.end()) return;
            Label next = d.label(path.back(), v);
            Label want = path.size() == 1 ? Label::finite(4) : Label::finite(3);
            if (!(next == want)) return;
            for (std::size_t i = 0; i + 1 < path.size(); ++i)
                if (!(d.label(path[i], v) == Label::finite(2))) return;
            path.push_back(v);
            self(self);
            path.pop_back();
        });
    };
    extend(extend);

    for (const auto& p : out) {
        Subset span;
        for (unsigned v : p) span.add(v);
        auto type = classify_component(d, span);
        bool ok = type && (p.size() == 1 ? type->tag == "A1"
                                         : (type->tag[0] == 'B' && type->rank == p.size()));
        if (!ok) throw Error("chain does not span a B_k parabolic");
    }
    return out;
}

}  // namespace detail

// All spherical families, the empty one first, in a deterministic order
// (active members ascending, chains in depth-first order).
inline std::vector<SigmaFamily> enumerate_sigma(const CoxeterDiagram& d, Subset T) {
    if (!is_right_angled_closure(d, T))
        throw DomainError("the f-polynomial routes need the right-angled diagram conditions");
    Subset rest = d.all() - T;
    if (!group_order(d, rest)) throw DomainError("W_{S-T} must be finite");

    std::vector<unsigned> ts = T.elements();
    std::vector<std::vector<std::vector<unsigned>>> menu;  // per t, its chains
    for (unsigned t : ts) menu.push_back(detail::chains_from(d, T, t));

    std::vector<SigmaFamily> out;
    SigmaFamily cur;
    auto commutes = [&](const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
        for (unsigned u : a)
            for (unsigned v : b)
                if (!(d.label(u, v) == Label::finite(2))) return false;
        return true;
    };
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == ts.size()) {
            SigmaFamily fam = cur;
            fam.sigma0 = d.perp(fam.vertex_set()) - T;
            fam.grade = 0;
            for (const auto& [t, path] : fam.chains)
                fam.grade += static_cast<unsigned>(path.size());
            out.push_back(std::move(fam));
            return;
        }
        self(self, i + 1);  // t_i inactive
        for (const auto& chain : menu[i]) {
            bool ok = true;
            for (const auto& [t, path] : cur.chains)
                if (!commutes(path, chain)) ok = false;
            if (!ok) continue;
            cur.chains[ts[i]] = chain;
            self(self, i + 1);
            cur.chains.erase(ts[i]);
        }
    };
    rec(rec, 0);

    std::stable_sort(out.begin(), out.end(),
                     [](const SigmaFamily& a, const SigmaFamily& b) { return a.grade < b.grade; });
    return out;
}

// f-polynomial of the closure's nerve, assembled from classification orders
// only: each family sigma contributes
//   [#W_{S-T} / #W_{sigma0}] * prod_t var(t)^{k_t} / k_t!.
// The multinomial weights must cancel to integers; that is asserted.
inline MultiPoly f_closure(const CoxeterDiagram& d, Subset T, const std::vector<std::string>& phi,
                           std::vector<SigmaFamily>* families_out = nullptr) {
    if (phi.size() != d.rank()) throw DomainError("partition arity mismatch");
    Subset rest = d.all() - T;
    auto total = group_order(d, rest);
    auto families = enumerate_sigma(d, T);

    MultiPoly f;
    for (const SigmaFamily& fam : families) {
        auto stab = group_order(d, fam.sigma0);
        if (!stab) throw Error("sigma0 of a finite complement reported as infinite");
        BigRat c(*total, *stab);
        MultiPoly term = MultiPoly::constant(c);
        for (const auto& [t, path] : fam.chains) {
            unsigned k = static_cast<unsigned>(path.size());
            BigInt kfact = 1;
            for (unsigned i = 2; i <= k; ++i) kfact *= i;
            term = term * (BigRat(1, kfact) * MultiPoly::variable(phi[t], k));
        }
        f = f + term;
    }
    if (!f.has_integer_coeffs()) throw Error("face counts did not come out integral");
    if (families_out) *families_out = std::move(families);
    return f;
}

// Containment of spherical families, chainwise: every chain of the inner
// family must be a prefix of the matching chain of the outer one.
inline bool family_contains(const SigmaFamily& outer, const SigmaFamily& inner) {
    for (const auto& [t, path] : inner.chains) {
        auto it = outer.chains.find(t);
        if (it == outer.chains.end()) return false;
        if (it->second.size() < path.size()) return false;
        if (!std::equal(path.begin(), path.end(), it->second.begin())) return false;
    }
    return true;
}

// f-polynomial of the link of the face that sigma spans in the nerve. Weights
// are centralizer indices relative to sigma, and only the extension of each
// chain beyond sigma contributes variables.
inline MultiPoly f_link(const CoxeterDiagram& d, Subset T, const std::vector<std::string>& phi,
                        const SigmaFamily& sigma) {
    if (phi.size() != d.rank()) throw DomainError("partition arity mismatch");
    auto base = group_order(d, sigma.sigma0);
    if (!base) throw DomainError("sigma0 must span a finite parabolic");

    MultiPoly f;
    bool found = false;
    for (const SigmaFamily& fam : enumerate_sigma(d, T)) {
        if (!family_contains(fam, sigma)) continue;
        found = true;
        auto stab = group_order(d, fam.sigma0);
        if (!stab) throw Error("sigma0 of a finite complement reported as infinite");
        MultiPoly term = MultiPoly::constant(BigRat(*base, *stab));
        for (const auto& [t, path] : fam.chains) {
            unsigned k = static_cast<unsigned>(path.size());
            auto it = sigma.chains.find(t);
            unsigned k0 = it == sigma.chains.end() ? 0 : static_cast<unsigned>(it->second.size());
            unsigned delta = k - k0;
            BigInt dfact = 1;
            for (unsigned i = 2; i <= delta; ++i) dfact *= i;
            term = term * (BigRat(1, dfact) * MultiPoly::variable(phi[t], delta));
        }
        f = f + term;
    }
    if (!found) throw DomainError("sigma does not occur among the spherical families");
    if (!f.has_integer_coeffs()) throw Error("link face counts did not come out integral");
    return f;
}

// Independent oracle: materialize the closure generators, build the
// commutation graph from the closure matrix, and count cliques directly.
// Only feasible for small systems; gated by the generator count.
inline MultiPoly brute_force_nerve(const CoxeterDiagram& d, Subset T,
                                   const std::vector<std::string>& phi,
                                   std::size_t generator_cap = 64) {
    ClosurePresentation pres = closure_matrix(d, T);
    std::size_t n = pres.generators.size();
    if (n > generator_cap)
        throw CapExceeded("clique oracle refused beyond " + std::to_string(generator_cap) +
                          " generators");
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            bool c = pres.entry(i, j) == Label::finite(2);
            adj[i][j] = adj[j][i] = c;
        }

    MultiPoly f;
    std::vector<std::size_t> clique;
    auto rec = [&](auto&& self, std::size_t from) -> void {
        MultiPoly mono = MultiPoly::constant(1);
        for (std::size_t v : clique) mono = mono * MultiPoly::variable(phi[pres.generators[v].base]);
        f = f + mono;
        for (std::size_t v = from; v < n; ++v) {
            bool ok = true;
            for (std::size_t u : clique)
                if (!adj[u][v]) ok = false;
            if (!ok) continue;
            clique.push_back(v);
            self(self, v + 1);
            clique.pop_back();
        }
    };
    rec(rec, 0);
    return f;
}

}  // namespace coxkit
