#pragma once

#include "coxkit/util.hpp"

#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace coxkit {

// ---------------------------------------------------------------------------
// Subset of generators as a bitmask. Rank is capped at 64 so a subset is one
// machine word; Sigma-enumeration is exponential in rank anyway.
// ---------------------------------------------------------------------------
class Subset {
public:
    constexpr Subset() = default;
    static constexpr Subset from_bits(std::uint64_t bits) { return Subset(bits); }
    static constexpr Subset single(unsigned i) { return Subset(1ull << i); }
    static constexpr Subset full(unsigned rank) {
        return Subset(rank >= 64 ? ~0ull : (1ull << rank) - 1);
    }

    constexpr bool contains(unsigned i) const { return (bits_ >> i) & 1; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr unsigned size() const { return static_cast<unsigned>(__builtin_popcountll(bits_)); }
    constexpr std::uint64_t bits() const { return bits_; }

    constexpr Subset operator|(Subset o) const { return Subset(bits_ | o.bits_); }
    constexpr Subset operator&(Subset o) const { return Subset(bits_ & o.bits_); }
    constexpr Subset operator-(Subset o) const { return Subset(bits_ & ~o.bits_); }
    constexpr bool operator==(const Subset&) const = default;
    constexpr bool operator<(Subset o) const { return bits_ < o.bits_; }
    constexpr bool subset_of(Subset o) const { return (bits_ & ~o.bits_) == 0; }

    Subset& add(unsigned i) { bits_ |= 1ull << i; return *this; }
    Subset& remove(unsigned i) { bits_ &= ~(1ull << i); return *this; }

    // Iterate set bits in ascending ordinal order.
    template <typename F>
    void for_each(F&& f) const {
        std::uint64_t b = bits_;
        while (b) {
            unsigned i = static_cast<unsigned>(__builtin_ctzll(b));
            f(i);
            b &= b - 1;
        }
    }

    std::vector<unsigned> elements() const {
        std::vector<unsigned> out;
        out.reserve(size());
        for_each([&](unsigned i) { out.push_back(i); });
        return out;
    }

private:
    explicit constexpr Subset(std::uint64_t bits) : bits_(bits) {}
    std::uint64_t bits_ = 0;
};

// ---------------------------------------------------------------------------
// Edge label m_st in {1,2,3,...} or infinity. Infinity is a proper value with
// total, absorbing arithmetic: the closure matrix rule halves labels and
// inf/2 must stay inf.
// ---------------------------------------------------------------------------
class Label {
public:
    constexpr Label() : v_(2) {}
    static constexpr Label finite(std::uint32_t m) { return Label(m); }
    static constexpr Label infinity() { return Label(kInf); }

    constexpr bool is_infinite() const { return v_ == kInf; }
    constexpr bool is_even() const { return is_infinite() || v_ % 2 == 0; }
    constexpr bool is_odd() const { return !is_even(); }

    std::uint32_t finite_value() const {
        if (is_infinite()) throw DomainError("label is infinite");
        return v_;
    }

    // m/2 with infinity absorbing; only meaningful for even or infinite labels.
    Label half() const {
        if (is_infinite()) return *this;
        if (v_ % 2 != 0) throw DomainError("cannot halve an odd label");
        return Label(v_ / 2);
    }

    constexpr bool operator==(const Label&) const = default;

    std::string str() const { return is_infinite() ? "inf" : std::to_string(v_); }

private:
    static constexpr std::uint32_t kInf = 0xffffffffu;
    explicit constexpr Label(std::uint32_t v) : v_(v) {}
    std::uint32_t v_;
};

// ---------------------------------------------------------------------------
// CoxeterDiagram: named generators, symmetric label matrix (diagonal 1,
// default 2), optional distinguished subset T, optional variable partition,
// optional marked face (one chain path per line, used by link fixtures).
// Immutable after parse/build; safe to share across workers.
// ---------------------------------------------------------------------------
class CoxeterDiagram {
public:
    CoxeterDiagram() = default;

    unsigned rank() const { return static_cast<unsigned>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(unsigned i) const { return names_.at(i); }

    std::optional<unsigned> index_of(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    Label label(unsigned a, unsigned b) const {
        if (a == b) return Label::finite(1);
        auto it = labels_.find(key(a, b));
        return it == labels_.end() ? Label::finite(2) : it->second;
    }

    Subset all() const { return Subset::full(rank()); }
    const std::optional<Subset>& t_set() const { return t_set_; }

    // phi: generator ordinal -> variable name. Defaults (when classes are not
    // declared): single class "x"; with T declared, "x0" on S-T and "x" on T.
    std::vector<std::string> partition() const {
        if (!classes_.empty()) {
            std::vector<std::string> out(rank());
            for (unsigned i = 0; i < rank(); ++i) out[i] = classes_.at(i);
            return out;
        }
        std::vector<std::string> out(rank(), "x");
        if (t_set_) {
            for (unsigned i = 0; i < rank(); ++i)
                if (!t_set_->contains(i)) out[i] = "x0";
        }
        return out;
    }

    bool has_declared_classes() const { return !classes_.empty(); }

    // Marked face: an ordered chain path per base generator, as parsed from
    // `link` lines. Empty when the file declares none.
    const std::vector<std::vector<unsigned>>& link_paths() const { return link_paths_; }

    // --- queries ---------------------------------------------------------

    // Generators commuting with everything in `a` (label 2 to each element;
    // elements of `a` exclude themselves via the diagonal 1).
    Subset perp(Subset a) const {
        Subset out;
        for (unsigned s = 0; s < rank(); ++s) {
            bool ok = true;
            a.for_each([&](unsigned t) {
                if (!(label(s, t) == Label::finite(2))) ok = false;
            });
            if (ok) out.add(s);
        }
        return out;
    }

    // Smallest superset of t0 closed under odd-labeled edges; equals the
    // union of odd-conjugacy classes meeting t0.
    Subset odd_closure(Subset t0) const {
        Subset cur = t0;
        bool grew = true;
        while (grew) {
            grew = false;
            for (unsigned s = 0; s < rank(); ++s) {
                if (cur.contains(s)) continue;
                bool joined = false;
                cur.for_each([&](unsigned t) {
                    Label m = label(s, t);
                    if (!m.is_infinite() && m.is_odd() && m.finite_value() >= 3) joined = true;
                });
                if (joined) {
                    cur.add(s);
                    grew = true;
                }
            }
        }
        return cur;
    }

    // Components of the label!=2 graph restricted to `a`, ascending by
    // smallest ordinal.
    std::vector<Subset> connected_components(Subset a) const {
        std::vector<Subset> out;
        Subset left = a;
        while (!left.empty()) {
            unsigned seed = left.elements().front();
            Subset comp = Subset::single(seed);
            bool grew = true;
            while (grew) {
                grew = false;
                left.for_each([&](unsigned s) {
                    if (comp.contains(s)) return;
                    bool touches = false;
                    comp.for_each([&](unsigned t) {
                        if (!(label(s, t) == Label::finite(2))) touches = true;
                    });
                    if (touches) {
                        comp.add(s);
                        grew = true;
                    }
                });
            }
            out.push_back(comp);
            left = left - comp;
        }
        return out;
    }

    // Subdiagram on `a` with restricted labels, T, partition, link paths.
    CoxeterDiagram induced(Subset a) const {
        CoxeterDiagram d;
        std::vector<unsigned> old_of_new;
        std::map<unsigned, unsigned> new_of_old;
        a.for_each([&](unsigned i) {
            new_of_old[i] = static_cast<unsigned>(old_of_new.size());
            old_of_new.push_back(i);
            d.add_node(names_[i]);
        });
        for (unsigned i = 0; i < old_of_new.size(); ++i)
            for (unsigned j = i + 1; j < old_of_new.size(); ++j) {
                Label m = label(old_of_new[i], old_of_new[j]);
                if (!(m == Label::finite(2))) d.set_label(i, j, m);
            }
        if (t_set_) {
            Subset t = *t_set_ & a;
            if (!t.empty()) {
                Subset remapped;
                t.for_each([&](unsigned i) { remapped.add(new_of_old[i]); });
                d.t_set_ = remapped;
            }
        }
        if (!classes_.empty()) {
            a.for_each([&](unsigned i) { d.classes_[new_of_old[i]] = classes_.at(i); });
        }
        for (const auto& path : link_paths_) {
            bool inside = true;
            for (unsigned v : path)
                if (!a.contains(v)) inside = false;
            if (!inside) continue;
            std::vector<unsigned> remapped;
            for (unsigned v : path) remapped.push_back(new_of_old[v]);
            d.link_paths_.push_back(std::move(remapped));
        }
        return d;
    }

    // --- construction ----------------------------------------------------

    unsigned add_node(const std::string& name) {
        if (rank() >= 64) throw ParseError("diagram rank capped at 64");
        if (index_.count(name)) throw ParseError("duplicate node '" + name + "'");
        if (!valid_name(name)) throw ParseError("invalid node name '" + name + "'");
        unsigned i = rank();
        index_[name] = i;
        names_.push_back(name);
        return i;
    }

    void set_label(unsigned a, unsigned b, Label m) {
        if (a == b) throw ParseError("self edge on '" + names_.at(a) + "'");
        if (labels_.count(key(a, b)))
            throw ParseError("duplicate edge " + names_.at(a) + " " + names_.at(b));
        if (!m.is_infinite() && m.finite_value() < 2)
            throw ParseError("edge label must be >= 2 or inf");
        labels_.emplace(key(a, b), m);
    }

    void set_t(Subset t) { t_set_ = t; }
    void set_class(unsigned i, const std::string& var) { classes_[i] = var; }
    void add_link_path(std::vector<unsigned> path) { link_paths_.push_back(std::move(path)); }

    // A partial `class` declaration would leave partition() throwing later;
    // reject it at parse time instead.
    void check_classes_complete() const {
        if (classes_.empty()) return;
        for (unsigned i = 0; i < rank(); ++i)
            if (!classes_.count(i))
                throw ParseError("node '" + names_[i] + "' missing from class declarations");
    }

    // Partition must be constant on odd-conjugacy classes. Throws with an odd
    // path witnessing the conjugacy when violated.
    void check_allowable() const {
        if (classes_.empty()) return;
        for (unsigned s = 0; s < rank(); ++s)
            for (unsigned t = s + 1; t < rank(); ++t) {
                Label m = label(s, t);
                if (m.is_infinite() || m.is_even() || m.finite_value() < 3) continue;
                if (classes_.at(s) != classes_.at(t))
                    throw ParseError("partition not allowable: odd edge " + names_[s] + " -" +
                                     m.str() + "- " + names_[t] + " joins classes '" +
                                     classes_.at(s) + "' and '" + classes_.at(t) + "'");
            }
    }

    // --- serialization ---------------------------------------------------

    // Canonical text: nodes in ordinal order, edges sorted by name pair
    // (lexicographic), labels verbatim, then T / class / link lines.
    std::string serialize() const {
        std::ostringstream out;
        for (const auto& n : names_) out << "node " << n << "\n";
        std::vector<std::pair<std::string, std::string>> edges;
        std::map<std::pair<std::string, std::string>, Label> edge_label;
        for (const auto& [k, m] : labels_) {
            std::string a = names_[k.first], b = names_[k.second];
            if (b < a) std::swap(a, b);
            edges.emplace_back(a, b);
            edge_label[{a, b}] = m;
        }
        std::sort(edges.begin(), edges.end());
        for (const auto& e : edges)
            out << "edge " << e.first << " " << e.second << " " << edge_label[e].str() << "\n";
        if (t_set_) {
            out << "T";
            t_set_->for_each([&](unsigned i) { out << " " << names_[i]; });
            out << "\n";
        }
        if (!classes_.empty()) {
            // group by variable, first-ordinal order
            std::vector<std::string> seen;
            for (unsigned i = 0; i < rank(); ++i) {
                const std::string& v = classes_.at(i);
                if (std::find(seen.begin(), seen.end(), v) == seen.end()) seen.push_back(v);
            }
            for (const auto& v : seen) {
                out << "class " << v << " :";
                for (unsigned i = 0; i < rank(); ++i)
                    if (classes_.at(i) == v) out << " " << names_[i];
                out << "\n";
            }
        }
        for (const auto& path : link_paths_) {
            out << "link";
            for (unsigned v : path) out << " " << names_[v];
            out << "\n";
        }
        return out.str();
    }

    std::string fingerprint() const {
        std::ostringstream out;
        out << std::hex << fnv1a(serialize());
        return out.str();
    }

private:
    static bool valid_name(const std::string& s) {
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '@' && c != '.')
                return false;
        return true;
    }

    static std::pair<unsigned, unsigned> key(unsigned a, unsigned b) {
        return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    }

    std::vector<std::string> names_;
    std::map<std::string, unsigned> index_;
    std::map<std::pair<unsigned, unsigned>, Label> labels_;
    std::optional<Subset> t_set_;
    std::map<unsigned, std::string> classes_;
    std::vector<std::vector<unsigned>> link_paths_;
};

// ---------------------------------------------------------------------------
// DSL parser. Line-oriented, '#' comments, whitespace-separated:
//   node NAME
//   edge NAME NAME LABEL        LABEL = integer >= 2 | "inf"
//   T NAME+
//   class VAR : NAME+
//   link NAME+                  (chain path, first NAME is the base generator)
// ---------------------------------------------------------------------------
inline CoxeterDiagram parse_diagram(std::string_view text) {
    CoxeterDiagram d;
    bool saw_t = false;
    std::istringstream in{std::string(text)};
    std::string raw;
    unsigned lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw ParseError("line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream line(raw);
        std::vector<std::string> tok;
        for (std::string w; line >> w;) tok.push_back(w);
        if (tok.empty()) continue;
        const std::string& kw = tok[0];
        auto lookup = [&](const std::string& n) -> unsigned {
            auto i = d.index_of(n);
            if (!i) fail("unknown node '" + n + "'");
            return *i;
        };
        if (kw == "node") {
            if (tok.size() != 2) fail("expected: node NAME");
            try {
                d.add_node(tok[1]);
            } catch (const ParseError& e) {
                fail(e.what());
            }
        } else if (kw == "edge") {
            if (tok.size() != 4) fail("expected: edge NAME NAME LABEL");
            unsigned a = lookup(tok[1]), b = lookup(tok[2]);
            Label m = Label::finite(2);
            if (tok[3] == "inf") {
                m = Label::infinity();
            } else {
                char* end = nullptr;
                long v = std::strtol(tok[3].c_str(), &end, 10);
                if (!end || *end != '\0' || v < 2 || v > 0x7fffffff)
                    fail("bad label '" + tok[3] + "' (integer >= 2 or inf)");
                m = Label::finite(static_cast<std::uint32_t>(v));
            }
            try {
                d.set_label(a, b, m);
            } catch (const ParseError& e) {
                fail(e.what());
            }
        } else if (kw == "T") {
            if (tok.size() < 2) fail("expected: T NAME+");
            if (saw_t) fail("duplicate T line");
            saw_t = true;
            Subset t;
            for (std::size_t i = 1; i < tok.size(); ++i) t.add(lookup(tok[i]));
            d.set_t(t);
        } else if (kw == "class") {
            if (tok.size() < 4 || tok[2] != ":") fail("expected: class VAR : NAME+");
            for (std::size_t i = 3; i < tok.size(); ++i) d.set_class(lookup(tok[i]), tok[1]);
        } else if (kw == "link") {
            if (tok.size() < 2) fail("expected: link NAME+");
            std::vector<unsigned> path;
            for (std::size_t i = 1; i < tok.size(); ++i) path.push_back(lookup(tok[i]));
            d.add_link_path(std::move(path));
        } else {
            fail("unknown directive '" + kw + "'");
        }
    }
    d.check_classes_complete();
    d.check_allowable();
    return d;
}

}  // namespace coxkit
