#pragma once

#include "coxkit/classify.hpp"
#include "coxkit/words.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace coxkit {

// The deletion map W -> W_{S-T} (erase the T letters) is a homomorphism
// exactly when every label between T and its complement is even or infinite.
struct HypothesisViolation {
    unsigned t = 0;
    unsigned s = 0;
    Label m = Label::finite(3);
};

inline std::optional<HypothesisViolation> check_hypothesis(const CoxeterDiagram& d, Subset T) {
    Subset rest = d.all() - T;
    std::optional<HypothesisViolation> bad;
    T.for_each([&](unsigned t) {
        rest.for_each([&](unsigned s) {
            Label m = d.label(t, s);
            if (!m.is_infinite() && m.is_odd() && !bad) bad = HypothesisViolation{t, s, m};
        });
    });
    return bad;
}

// Smallest superset of T whose deletion map is a homomorphism: close T under
// odd-labeled edges.
inline Subset hypothesis_repair(const CoxeterDiagram& d, Subset T) { return d.odd_closure(T); }

// One generator of the normal closure: the conjugate (rep) t (rep)^-1, where
// rep is the minimal-length representative of its coset of the centralizing
// parabolic W_{t-perp minus T}. rep is stored as a reduced word.
struct ClosureGenerator {
    unsigned base = 0;
    Word rep;

    std::string name(const CoxeterDiagram& d) const {
        std::string out = d.name(base);
        if (!rep.empty()) {
            out += '@';
            for (std::size_t i = 0; i < rep.size(); ++i) {
                if (i) out += '.';
                out += d.name(rep[i]);
            }
        }
        return out;
    }
};

// Exact generator counts per T-member, no materialization: the closure needs
// #(W_{S-T} / W_{t-perp minus T}) conjugates of t.
inline std::vector<std::pair<unsigned, BigInt>> generator_counts(const CoxeterDiagram& d,
                                                                 Subset T) {
    if (auto v = check_hypothesis(d, T))
        throw DomainError("hypothesis violated: odd label " + v->m.str() + " between " +
                          d.name(v->t) + " and " + d.name(v->s));
    Subset rest = d.all() - T;
    auto total = group_order(d, rest);
    if (!total)
        throw DomainError("W_{S-T} is infinite; the closure is not finitely generated this way");
    std::vector<std::pair<unsigned, BigInt>> out;
    T.for_each([&](unsigned t) {
        Subset stab = d.perp(Subset::single(t)) & rest;
        auto stab_order = group_order(d, stab);
        if (!stab_order) throw Error("parabolic of a finite group reported as infinite");
        out.emplace_back(t, *total / *stab_order);
    });
    return out;
}

inline std::vector<ClosureGenerator> enumerate_generators(const CoxeterDiagram& d, Subset T,
                                                          std::uint64_t cap = 0) {
    if (cap == 0) cap = oracle_cap();
    if (auto v = check_hypothesis(d, T))
        throw DomainError("hypothesis violated: odd label " + v->m.str() + " between " +
                          d.name(v->t) + " and " + d.name(v->s));
    Subset rest = d.all() - T;
    auto total = group_order(d, rest);
    if (!total)
        throw DomainError("W_{S-T} is infinite; the closure is not finitely generated this way");

    std::vector<ClosureGenerator> out;
    T.for_each([&](unsigned t) {
        Subset stab = d.perp(Subset::single(t)) & rest;
        std::vector<Word> reps;
        if (*total <= cap) {
            for (const Element& e : min_coset_reps(d, rest, stab, cap)) reps.push_back(e.word());
        } else if (auto orbit = weight_orbit_reps(d, rest, stab, cap)) {
            reps = std::move(*orbit);
            std::sort(reps.begin(), reps.end(), [](const Word& a, const Word& b) {
                if (a.size() != b.size()) return a.size() < b.size();
                return a < b;
            });
        } else {
            throw CapExceeded("coset representatives for " + d.name(t) +
                              " exceed the cap and the labels are not crystallographic");
        }
        BigInt expect = *total / *group_order(d, stab);
        if (BigInt(reps.size()) != expect)
            throw Error("coset representative count mismatch for " + d.name(t));
        for (Word& w : reps) out.push_back(ClosureGenerator{t, std::move(w)});
    });
    return out;
}

// Coxeter matrix of the closure, computed pairwise by double-coset
// minimization inside W_{S-T}.
struct ClosurePresentation {
    std::vector<ClosureGenerator> generators;
    std::map<std::pair<std::size_t, std::size_t>, Label> entries;  // keyed i < j
    bool right_angled = false;

    Label entry(std::size_t i, std::size_t j) const {
        if (i == j) return Label::finite(1);
        if (i > j) std::swap(i, j);
        return entries.at({i, j});
    }

    CoxeterDiagram to_diagram(const CoxeterDiagram& ambient) const {
        CoxeterDiagram out;
        for (const auto& g : generators) out.add_node(g.name(ambient));
        for (const auto& [ij, m] : entries)
            if (!(m == Label::finite(2)))
                out.set_label(static_cast<unsigned>(ij.first), static_cast<unsigned>(ij.second),
                              m);
        return out;
    }
};

// Sufficient diagram conditions for the closure to be right-angled: every
// T-to-rest label in {2,4,inf} and every label inside T in {2,inf}.
inline bool is_right_angled_closure(const CoxeterDiagram& d, Subset T) {
    if (auto v = check_hypothesis(d, T))
        throw DomainError("hypothesis violated: odd label " + v->m.str() + " between " +
                          d.name(v->t) + " and " + d.name(v->s));
    Subset rest = d.all() - T;
    bool ok = true;
    T.for_each([&](unsigned t) {
        rest.for_each([&](unsigned s) {
            Label m = d.label(t, s);
            if (m.is_infinite()) return;
            unsigned v = m.finite_value();
            if (v != 2 && v != 4) ok = false;
        });
        T.for_each([&](unsigned u) {
            if (u <= t) return;
            Label m = d.label(t, u);
            if (!m.is_infinite() && m.finite_value() != 2) ok = false;
        });
    });
    return ok;
}

inline ClosurePresentation closure_matrix(const CoxeterDiagram& d, Subset T,
                                          std::uint64_t pair_threshold = 1000000) {
    ClosurePresentation pres;
    pres.generators = enumerate_generators(d, T);
    std::size_t n = pres.generators.size();
    if (n * n > pair_threshold)
        throw CapExceeded("closure matrix over " + std::to_string(n) +
                          " generators exceeds the pair threshold");

    Subset rest = d.all() - T;
    std::vector<Element> reps(n);
    std::vector<Element> reps_inv(n);
    for (std::size_t i = 0; i < n; ++i) {
        reps[i] = reduce(d, pres.generators[i].rep);
        Word rev(reps[i].word().rbegin(), reps[i].word().rend());
        reps_inv[i] = reduce(d, rev);
    }

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::vector<Label> results(pairs.size(), Label::finite(2));

    parallel_for(pairs.size(), [&](std::size_t k) {
        auto [i, j] = pairs[k];
        unsigned t1 = pres.generators[i].base;
        unsigned t2 = pres.generators[j].base;
        Subset A = d.perp(Subset::single(t1)) & rest;
        Subset B = d.perp(Subset::single(t2)) & rest;
        Element w = multiply(d, reps_inv[i], reps[j]);
        Element wstar = min_double_coset(d, A, w, B);
        Label m;
        if (t1 != t2) {
            m = wstar.is_identity() ? d.label(t1, t2) : Label::infinity();
        } else {
            if (wstar.is_identity())
                throw Error("distinct canonical representatives produced the same conjugate");
            if (wstar.length() == 1) {
                Label ms = d.label(wstar.word()[0], t1);
                if (!ms.is_infinite() && (ms.is_odd() || ms.finite_value() < 4))
                    throw Error("double-coset witness contradicts the minimization");
                m = ms.half();
            } else {
                m = Label::infinity();
            }
        }
        results[k] = m;
    });

    for (std::size_t k = 0; k < pairs.size(); ++k) pres.entries[pairs[k]] = results[k];

    pres.right_angled = is_right_angled_closure(d, T);
    for (const auto& [ij, m] : pres.entries) {
        bool ra_entry = m.is_infinite() || m.finite_value() == 2;
        if (pres.right_angled && !ra_entry)
            throw Error("diagram conditions promised a right-angled closure but entry " +
                        m.str() + " appeared");
    }
    return pres;
}

// Image of a word under the deletion map, as an element of W_{S-T}.
inline Element project_phi_T(const CoxeterDiagram& d, Subset T, const Word& w) {
    for (unsigned s : w)
        if (s >= d.rank()) throw DomainError("letter out of range");
    Word filtered;
    for (unsigned s : w)
        if (!T.contains(s)) filtered.push_back(s);
    return reduce(d, std::move(filtered));
}

// Rewrite a kernel element as a product of closure generators:
//   w = prod over T-positions p of  g_p t_p g_p^-1,
// where g_p is the deletion image of the prefix before p. Each conjugator is
// canonicalized into its coset of the centralizing parabolic, so equal
// generators compare equal.
inline std::vector<ClosureGenerator> rewrite_in_closure(const CoxeterDiagram& d, Subset T,
                                                        const Word& w) {
    if (auto v = check_hypothesis(d, T))
        throw DomainError("hypothesis violated: odd label " + v->m.str() + " between " +
                          d.name(v->t) + " and " + d.name(v->s));
    if (!project_phi_T(d, T, w).is_identity())
        throw DomainError("word lies outside the kernel of the deletion map");
    Subset rest = d.all() - T;
    std::vector<ClosureGenerator> out;
    Element g;
    for (unsigned s : w) {
        if (T.contains(s)) {
            Subset stab = d.perp(Subset::single(s)) & rest;
            Element canon = coset_canon(d, g, stab);
            out.push_back(ClosureGenerator{s, canon.word()});
        } else {
            g = multiply(d, g, gen(s));
        }
    }
    return out;
}

}  // namespace coxkit
