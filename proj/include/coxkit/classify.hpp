#pragma once

#include "coxkit/diagram.hpp"
#include "coxkit/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace coxkit {

// Classified finite irreducible type with its fundamental degrees.
// I2(3) and I2(4) canonicalize to A2/B2; I2(6) stays I2(6).
struct FiniteType {
    std::string tag;
    unsigned rank = 0;
    std::vector<unsigned> degrees;

    BigInt order() const {
        BigInt o = 1;
        for (unsigned d : degrees) o *= d;
        return o;
    }
};

namespace detail {

inline FiniteType make_type(std::string tag, std::vector<unsigned> degrees) {
    FiniteType t;
    t.tag = std::move(tag);
    t.rank = static_cast<unsigned>(degrees.size());
    t.degrees = std::move(degrees);
    return t;
}

inline std::vector<unsigned> range_degrees(unsigned from, unsigned to) {
    std::vector<unsigned> d;
    for (unsigned i = from; i <= to; ++i) d.push_back(i);
    return d;
}

inline std::vector<unsigned> even_degrees(unsigned n) {
    std::vector<unsigned> d;
    for (unsigned i = 1; i <= n; ++i) d.push_back(2 * i);
    return d;
}

}  // namespace detail

// Orders the vertices of a path component from one end; nullopt when the
// component is not a simple path of the label!=2 graph.
inline std::optional<std::vector<unsigned>> chain_path(const CoxeterDiagram& d, Subset comp) {
    auto vs = comp.elements();
    unsigned n = static_cast<unsigned>(vs.size());
    if (n == 1) return std::vector<unsigned>{vs[0]};
    std::map<unsigned, std::vector<unsigned>> adj;
    unsigned edges = 0;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j)
            if (!(d.label(vs[i], vs[j]) == Label::finite(2))) {
                adj[vs[i]].push_back(vs[j]);
                adj[vs[j]].push_back(vs[i]);
                ++edges;
            }
    if (edges != n - 1) return std::nullopt;
    constexpr unsigned kNone = ~0u;
    unsigned end = kNone;
    for (unsigned v : vs) {
        if (adj[v].size() > 2) return std::nullopt;
        if (adj[v].size() == 1 && end == kNone) end = v;
    }
    if (end == kNone) return std::nullopt;
    std::vector<unsigned> path{end};
    unsigned prev = end;
    while (path.size() < n) {
        unsigned cur = path.back();
        bool advanced = false;
        for (unsigned nx : adj[cur])
            if (nx != prev) {
                path.push_back(nx);
                prev = cur;
                advanced = true;
                break;
            }
        if (!advanced) return std::nullopt;
    }
    return path;
}

// Pattern-match a connected subdiagram against the finite irreducible shapes.
// nullopt means the component generates an infinite group.
inline std::optional<FiniteType> classify_component(const CoxeterDiagram& d, Subset comp) {
    using detail::make_type;
    auto vs = comp.elements();
    unsigned n = static_cast<unsigned>(vs.size());
    if (n == 0) return std::nullopt;

    std::map<unsigned, std::vector<unsigned>> adj;
    std::vector<Label> labels;
    unsigned edges = 0;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j) {
            Label m = d.label(vs[i], vs[j]);
            if (m == Label::finite(2)) continue;
            if (m.is_infinite()) return std::nullopt;
            labels.push_back(m);
            adj[vs[i]].push_back(vs[j]);
            adj[vs[j]].push_back(vs[i]);
            ++edges;
        }

    if (n == 1) return make_type("A1", {2});
    if (edges != n - 1) return std::nullopt;  // finite irreducibles are trees

    if (n == 2) {
        unsigned m = labels[0].finite_value();
        if (m == 3) return make_type("A2", {2, 3});
        if (m == 4) return make_type("B2", {2, 4});
        return make_type("I2(" + std::to_string(m) + ")", {2, m});
    }

    std::vector<unsigned> big;  // labels above 3
    for (Label m : labels)
        if (m.finite_value() > 3) big.push_back(m.finite_value());
    std::sort(big.begin(), big.end());

    unsigned branches = 0;
    for (unsigned v : vs) {
        if (adj[v].size() > 3) return std::nullopt;
        if (adj[v].size() == 3) ++branches;
    }
    if (branches > 1) return std::nullopt;

    if (branches == 0) {
        auto path = chain_path(d, comp);
        std::vector<unsigned> lbl;
        for (unsigned i = 0; i + 1 < n; ++i)
            lbl.push_back(d.label((*path)[i], (*path)[i + 1]).finite_value());
        if (big.empty()) return make_type("A" + std::to_string(n), detail::range_degrees(2, n + 1));
        if (big == std::vector<unsigned>{4}) {
            if (lbl.front() == 4 || lbl.back() == 4)
                return make_type("B" + std::to_string(n), detail::even_degrees(n));
            if (n == 4 && lbl[1] == 4) return make_type("F4", {2, 6, 8, 12});
            return std::nullopt;
        }
        if (big == std::vector<unsigned>{5}) {
            if (n == 3) return make_type("H3", {2, 6, 10});
            if (n == 4 && (lbl.front() == 5 || lbl.back() == 5)) return make_type("H4", {2, 12, 20, 30});
            return std::nullopt;
        }
        return std::nullopt;
    }

    // one branch vertex: simply-laced D/E shapes only
    if (!big.empty()) return std::nullopt;
    unsigned hub = 0;
    for (unsigned v : vs)
        if (adj[v].size() == 3) hub = v;
    constexpr unsigned kNone = ~0u;
    std::vector<unsigned> arms;
    for (unsigned s : adj[hub]) {
        unsigned len = 1, prev = hub, cur = s;
        while (true) {
            unsigned next = kNone;
            for (unsigned nx : adj[cur])
                if (nx != prev) next = nx;
            if (next == kNone) break;
            prev = cur;
            cur = next;
            ++len;
        }
        arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) {
        auto degrees = detail::even_degrees(n - 1);
        degrees.insert(std::lower_bound(degrees.begin(), degrees.end(), n), n);
        return make_type("D" + std::to_string(n), degrees);
    }
    if (arms == std::vector<unsigned>{1, 2, 2}) return make_type("E6", {2, 5, 6, 8, 9, 12});
    if (arms == std::vector<unsigned>{1, 2, 3}) return make_type("E7", {2, 6, 8, 10, 12, 14, 18});
    if (arms == std::vector<unsigned>{1, 2, 4}) return make_type("E8", {2, 8, 12, 14, 18, 20, 24, 30});
    return std::nullopt;
}

struct FinitenessReport {
    bool is_finite = true;
    std::vector<std::pair<Subset, std::optional<FiniteType>>> components;
};

inline FinitenessReport classify_all(const CoxeterDiagram& d, Subset a) {
    FinitenessReport r;
    for (Subset comp : d.connected_components(a)) {
        auto t = classify_component(d, comp);
        if (!t) r.is_finite = false;
        r.components.emplace_back(comp, std::move(t));
    }
    return r;
}

// Product of component orders; nullopt when infinite.
inline std::optional<BigInt> group_order(const CoxeterDiagram& d, Subset a) {
    BigInt o = 1;
    for (Subset comp : d.connected_components(a)) {
        auto t = classify_component(d, comp);
        if (!t) return std::nullopt;
        o *= t->order();
    }
    return o;
}

// Single-variable Poincare polynomial prod_i (1 + x + ... + x^(d_i - 1));
// coefficient sum equals the group order.
inline MultiPoly poincare_single(const CoxeterDiagram& d, Subset a, const std::string& var) {
    MultiPoly out = MultiPoly::constant(1);
    for (Subset comp : d.connected_components(a)) {
        auto t = classify_component(d, comp);
        if (!t)
            throw DomainError("poincare_single requires a finite subgroup");
        for (unsigned deg : t->degrees) {
            std::vector<BigRat> q(deg, BigRat(1));
            out = out * MultiPoly::univariate(var, q);
        }
    }
    return out;
}

}  // namespace coxkit
