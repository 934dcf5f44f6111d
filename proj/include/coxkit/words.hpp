#pragma once

#include "coxkit/classify.hpp"
#include "coxkit/diagram.hpp"

#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace coxkit {

using Word = std::vector<unsigned>;  // generator ordinals, left to right

// Group element identified by its ShortLex-least reduced word. Equality and
// ordering are plain data comparisons on the normal form.
class Element {
public:
    Element() = default;

    // Trusted constructor; callers must pass a ShortLex normal form.
    static Element from_normal_form(Word nf) {
        Element e;
        e.nf_ = std::move(nf);
        return e;
    }

    const Word& word() const { return nf_; }
    unsigned length() const { return static_cast<unsigned>(nf_.size()); }
    bool is_identity() const { return nf_.empty(); }

    bool operator==(const Element&) const = default;
    bool operator<(const Element& o) const {
        if (nf_.size() != o.nf_.size()) return nf_.size() < o.nf_.size();
        return nf_ < o.nf_;
    }

    std::string str(const CoxeterDiagram& d) const {
        if (nf_.empty()) return "e";
        std::string out;
        for (unsigned s : nf_) {
            if (!out.empty()) out += " ";
            out += d.name(s);
        }
        return out;
    }

private:
    Word nf_;
};

inline Subset support(const Element& a) {
    Subset s;
    for (unsigned g : a.word()) s.add(g);
    return s;
}

// Words reachable by one braid replacement: an alternating run s t s t ... of
// length m_st replaced by the run starting with t. m = 2 is the commuting
// swap; infinite labels admit no move.
inline std::vector<Word> braid_neighbors(const CoxeterDiagram& d, const Word& w) {
    std::vector<Word> out;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        unsigned a = w[i], b = w[i + 1];
        if (a == b) continue;
        Label m = d.label(a, b);
        if (m.is_infinite()) continue;
        std::uint32_t len = m.finite_value();
        if (i + len > w.size()) continue;
        bool run = true;
        for (std::uint32_t k = 0; k < len; ++k)
            if (w[i + k] != (k % 2 == 0 ? a : b)) run = false;
        if (!run) continue;
        Word nb = w;
        for (std::uint32_t k = 0; k < len; ++k) nb[i + k] = (k % 2 == 0 ? b : a);
        out.push_back(std::move(nb));
    }
    return out;
}

namespace detail {

inline bool find_square(const Word& w, std::size_t& pos) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == w[i + 1]) {
            pos = i;
            return true;
        }
    return false;
}

}  // namespace detail

// Tits rewriting: exhaustive closure under braid moves, deleting squares
// whenever one appears, until the word is reduced; the normal form is the
// lexicographically least word of the final closure (all words there share
// the reduced length). The seen-set is the per-invocation memo; calls share
// no state, so concurrent use is safe.
inline Element reduce(const CoxeterDiagram& d, Word w) {
    for (unsigned s : w)
        if (s >= d.rank()) throw DomainError("word letter out of range");
    while (true) {
        std::size_t pos;
        if (detail::find_square(w, pos)) {
            w.erase(w.begin() + static_cast<long>(pos), w.begin() + static_cast<long>(pos) + 2);
            continue;
        }
        std::set<Word> seen{w};
        std::deque<Word> queue{w};
        bool shortened = false;
        while (!queue.empty() && !shortened) {
            Word cur = std::move(queue.front());
            queue.pop_front();
            for (Word& nb : braid_neighbors(d, cur)) {
                if (seen.count(nb)) continue;
                if (detail::find_square(nb, pos)) {
                    nb.erase(nb.begin() + static_cast<long>(pos),
                             nb.begin() + static_cast<long>(pos) + 2);
                    w = std::move(nb);
                    shortened = true;
                    break;
                }
                seen.insert(nb);
                queue.push_back(std::move(nb));
            }
        }
        if (!shortened) return Element::from_normal_form(*seen.begin());
    }
}

inline Element multiply(const CoxeterDiagram& d, const Element& a, const Element& b) {
    Word w = a.word();
    w.insert(w.end(), b.word().begin(), b.word().end());
    return reduce(d, std::move(w));
}

inline Element gen(unsigned s) { return Element::from_normal_form({s}); }

// Letter counts of the normal form grouped by phi (ordinal -> variable);
// well defined because all reduced words of an element share the multiset of
// odd-conjugacy classes, and phi must be constant on those.
inline std::map<std::string, unsigned> refined_length(const CoxeterDiagram& d, const Element& a,
                                                      const std::vector<std::string>& phi) {
    if (phi.size() != d.rank()) throw DomainError("partition arity mismatch");
    for (unsigned s = 0; s < d.rank(); ++s)
        for (unsigned t = s + 1; t < d.rank(); ++t) {
            Label m = d.label(s, t);
            if (!m.is_infinite() && m.is_odd() && m.finite_value() >= 3 && phi[s] != phi[t])
                throw DomainError("partition not allowable: odd edge " + d.name(s) + " -" +
                                  m.str() + "- " + d.name(t));
        }
    std::map<std::string, unsigned> counts;
    for (const auto& v : phi) counts[v];  // all classes present, zero default
    for (unsigned g : a.word()) ++counts[phi[g]];
    return counts;
}

// All elements of the finite parabolic W_a, BFS by length; within a length
// level the order is lexicographic. Count always equals the group order.
inline std::vector<Element> enumerate_elements(const CoxeterDiagram& d, Subset a,
                                               std::uint64_t cap = 0) {
    if (cap == 0) cap = oracle_cap();
    auto order = group_order(d, a);
    if (!order) throw DomainError("enumerate requires a finite subgroup");
    if (*order > cap)
        throw CapExceeded("group order " + order->str() + " exceeds cap " + std::to_string(cap));
    std::set<Element> seen{Element()};
    std::vector<Element> out{Element()};
    std::vector<Element> level{Element()};
    auto gens = a.elements();
    while (!level.empty()) {
        std::set<Element> next;
        for (const Element& u : level)
            for (unsigned s : gens) {
                Word w = u.word();
                w.push_back(s);
                Element v = reduce(d, std::move(w));
                if (v.length() == u.length() + 1 && !seen.count(v)) next.insert(v);
            }
        level.assign(next.begin(), next.end());
        for (const Element& v : level) {
            seen.insert(v);
            out.push_back(v);
        }
    }
    if (BigInt(out.size()) != *order)
        throw Error("BFS count " + std::to_string(out.size()) + " disagrees with order " +
                    order->str());
    return out;
}

// Unique minimal-length element of the double coset W_A w W_B, by greedy
// length descent on either side; exchange-condition theory makes the greedy
// optimum global, and the final pass asserts no descent remains.
inline Element min_double_coset(const CoxeterDiagram& d, Subset A, Element w, Subset B) {
    bool moved = true;
    while (moved) {
        moved = false;
        A.for_each([&](unsigned s) {
            if (moved) return;
            Element v = multiply(d, gen(s), w);
            if (v.length() < w.length()) {
                w = v;
                moved = true;
            }
        });
        if (moved) continue;
        B.for_each([&](unsigned s) {
            if (moved) return;
            Element v = multiply(d, w, gen(s));
            if (v.length() < w.length()) {
                w = v;
                moved = true;
            }
        });
    }
    A.for_each([&](unsigned s) {
        if (multiply(d, gen(s), w).length() < w.length())
            throw Error("double-coset minimization left a descent");
    });
    B.for_each([&](unsigned s) {
        if (multiply(d, w, gen(s)).length() < w.length())
            throw Error("double-coset minimization left a descent");
    });
    return w;
}

// Right-greedy descent into W_sub: the unique minimal representative of the
// left coset w W_sub.
inline Element coset_canon(const CoxeterDiagram& d, Element w, Subset sub) {
    bool moved = true;
    while (moved) {
        moved = false;
        sub.for_each([&](unsigned s) {
            if (moved) return;
            Element v = multiply(d, w, gen(s));
            if (v.length() < w.length()) {
                w = v;
                moved = true;
            }
        });
    }
    return w;
}

// Minimal-length representatives of W_a / W_sub in ShortLex order;
// count = order(a) / order(sub).
inline std::vector<Element> min_coset_reps(const CoxeterDiagram& d, Subset a, Subset sub,
                                           std::uint64_t cap = 0) {
    if (cap == 0) cap = oracle_cap();
    if (!sub.subset_of(a)) throw DomainError("sub must be contained in a");
    auto total = group_order(d, a);
    if (!total) throw DomainError("min_coset_reps requires a finite subgroup");
    BigInt count = *total / *group_order(d, sub);
    if (count > cap)
        throw CapExceeded("coset count " + count.str() + " exceeds cap " + std::to_string(cap));
    std::set<Element> seen{Element()};
    std::deque<Element> queue{Element()};
    auto gens = a.elements();
    while (!queue.empty()) {
        Element u = std::move(queue.front());
        queue.pop_front();
        for (unsigned s : gens) {
            Word w{s};
            w.insert(w.end(), u.word().begin(), u.word().end());
            Element v = coset_canon(d, reduce(d, std::move(w)), sub);
            if (seen.insert(v).second) queue.push_back(v);
        }
    }
    std::vector<Element> out(seen.begin(), seen.end());
    if (BigInt(out.size()) != count)
        throw Error("coset BFS found " + std::to_string(out.size()) + " representatives, expected " +
                    count.str());
    return out;
}

// ---------------------------------------------------------------------------
// Signed-permutation fast path for B_k. Convention: generator 0 flips the
// sign of the first coordinate (the label-4 end of the chain); generator i
// (i >= 1) swaps coordinates i-1 and i. Length = inversions + sum of the
// absolute values of negative entries; the count of generator-0 letters in
// any reduced word equals the number of negative entries.
// ---------------------------------------------------------------------------
struct SignedPermStats {
    unsigned length = 0;
    unsigned flips = 0;  // letters of the sign-flip generator
};

inline SignedPermStats signed_perm_stats(const std::vector<int>& img) {
    SignedPermStats st;
    unsigned inv = 0, negsum = 0, neg = 0;
    for (std::size_t i = 0; i < img.size(); ++i) {
        for (std::size_t j = i + 1; j < img.size(); ++j)
            if (img[i] > img[j]) ++inv;
        if (img[i] < 0) {
            ++neg;
            negsum += static_cast<unsigned>(-img[i]);
        }
    }
    st.length = inv + negsum;
    st.flips = neg;
    return st;
}

// Visit all 2^k k! signed permutations of {1..k}.
template <typename F>
void for_each_signed_perm(unsigned k, F&& f) {
    std::vector<int> perm(k);
    for (unsigned i = 0; i < k; ++i) perm[i] = static_cast<int>(i + 1);
    std::sort(perm.begin(), perm.end());
    do {
        for (std::uint64_t signs = 0; signs < (1ull << k); ++signs) {
            std::vector<int> img(k);
            for (unsigned i = 0; i < k; ++i)
                img[i] = (signs >> i) & 1 ? -perm[i] : perm[i];
            f(img);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
}

// ---------------------------------------------------------------------------
// Weight-orbit coset representatives for crystallographic parabolics (all
// labels within `sub` in {2,3,4,6}): BFS of the orbit of a fundamental
// weight vector under the integer reflection action. Produces one reduced
// word (ambient ordinals, left-to-right) per minimal representative of
// W_sub / W_stab. Feasible at E8 scale where Tits rewriting is not.
// Returns nullopt when `sub` carries a non-crystallographic label.
// ---------------------------------------------------------------------------
inline std::optional<std::vector<Word>> weight_orbit_reps(const CoxeterDiagram& d, Subset sub,
                                                          Subset stab, std::uint64_t cap = 0) {
    if (cap == 0) cap = oracle_cap();
    if (!stab.subset_of(sub)) throw DomainError("stab must be contained in sub");
    auto vs = sub.elements();
    unsigned n = static_cast<unsigned>(vs.size());
    // Cartan matrix A[k][i] with A[i][i]=2 and A[k][i]*A[i][k] = 4cos^2(pi/m);
    // the asymmetric split for labels 4 and 6 may be oriented arbitrarily.
    std::vector<std::vector<int>> A(n, std::vector<int>(n, 0));
    for (unsigned i = 0; i < n; ++i) A[i][i] = 2;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = i + 1; j < n; ++j) {
            Label m = d.label(vs[i], vs[j]);
            if (m == Label::finite(2)) continue;
            if (m.is_infinite()) return std::nullopt;
            switch (m.finite_value()) {
                case 3: A[i][j] = A[j][i] = -1; break;
                case 4: A[i][j] = -1; A[j][i] = -2; break;
                case 6: A[i][j] = -1; A[j][i] = -3; break;
                default: return std::nullopt;
            }
        }
    using Vec = std::vector<long long>;
    Vec p0(n);
    for (unsigned i = 0; i < n; ++i) p0[i] = stab.contains(vs[i]) ? 0 : 1;
    std::map<Vec, std::uint32_t> index_of{{p0, 0}};
    std::vector<Word> words{{}};
    std::deque<std::uint32_t> queue{0};
    std::vector<Vec> points{p0};
    while (!queue.empty()) {
        std::uint32_t at = queue.front();
        queue.pop_front();
        Vec p = points[at];
        for (unsigned i = 0; i < n; ++i) {
            if (p[i] <= 0) continue;  // ascent only: s_i moves the coset farther
            Vec q = p;
            long long pi = p[i];
            for (unsigned k = 0; k < n; ++k) q[k] -= pi * A[k][i];
            if (index_of.count(q)) continue;
            if (points.size() >= cap)
                throw CapExceeded("weight orbit exceeds cap " + std::to_string(cap));
            std::uint32_t id = static_cast<std::uint32_t>(points.size());
            index_of.emplace(q, id);
            points.push_back(std::move(q));
            Word w{vs[i]};
            const Word& base = words[at];
            w.insert(w.end(), base.begin(), base.end());
            words.push_back(std::move(w));
            queue.push_back(id);
        }
    }
    return words;
}

}  // namespace coxkit
