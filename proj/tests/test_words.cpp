#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include <coxkit/classify.hpp>
#include <coxkit/words.hpp>

#include "helpers.hpp"

using namespace coxkit;
using testutil::chain;

TEST_CASE("reduce finds normal forms") {
    CoxeterDiagram a2 = chain({3});
    CHECK(reduce(a2, {0, 0}).is_identity());
    CHECK(reduce(a2, {1, 0, 1}).word() == Word{0, 1, 0});  // braid move, then lex-min
    CHECK(reduce(a2, {0, 1, 0, 1, 0, 1}).is_identity());   // (s1 s2)^3 = e

    CoxeterDiagram b2 = chain({4});
    Element w0 = reduce(b2, {1, 0, 1, 0});
    CHECK(w0.word() == Word{0, 1, 0, 1});
    CHECK(w0 == reduce(b2, {0, 1, 0, 1}));
    CHECK(reduce(b2, {0, 1, 0, 1, 0}).word() == Word{1, 0, 1});  // s1 w0 = s2 s1 s2

    // commuting letters sort lexicographically
    CoxeterDiagram a1a1 = parse_diagram("node a\nnode b\n");
    CHECK(reduce(a1a1, {1, 0}).word() == Word{0, 1});
}

TEST_CASE("braid neighbors enumerate single replacements") {
    CoxeterDiagram a2 = chain({3});
    auto nb = braid_neighbors(a2, {0, 1, 0});
    REQUIRE(nb.size() == 1);
    CHECK(nb[0] == Word{1, 0, 1});
    CHECK(braid_neighbors(a2, {0, 1}).empty());  // too short for m = 3

    CoxeterDiagram a1a1 = parse_diagram("node a\nnode b\n");
    auto swapped = braid_neighbors(a1a1, {0, 1});
    REQUIRE(swapped.size() == 1);
    CHECK(swapped[0] == Word{1, 0});
}

TEST_CASE("multiplication works through normal forms") {
    CoxeterDiagram b2 = chain({4});
    Element a = reduce(b2, {0, 1});
    Element b = reduce(b2, {1, 0});
    CHECK(multiply(b2, a, b).is_identity());
    CHECK(multiply(b2, a, gen(0)).word() == Word{0, 1, 0});
    CHECK(support(reduce(b2, {0, 1, 0})) == Subset::full(2));
    CHECK(support(Element()).empty());

    // associativity fuzz on B3
    CoxeterDiagram b3 = chain({4, 3});
    std::mt19937_64 rng(7);
    auto rand_elt = [&] {
        Word w(rng() % 8);
        for (auto& s : w) s = static_cast<unsigned>(rng() % 3);
        return reduce(b3, w);
    };
    for (int i = 0; i < 200; ++i) {
        Element x = rand_elt(), y = rand_elt(), z = rand_elt();
        CHECK(multiply(b3, multiply(b3, x, y), z) == multiply(b3, x, multiply(b3, y, z)));
    }
}

TEST_CASE("enumeration matches group orders and length histograms") {
    struct Case {
        CoxeterDiagram d;
        std::size_t order;
        unsigned longest;
    };
    std::vector<Case> cases;
    cases.push_back({chain({3, 3}), 24, 6});
    cases.push_back({chain({4, 3}), 48, 9});
    cases.push_back({chain({5, 3}), 120, 15});
    for (const auto& c : cases) {
        auto all = enumerate_elements(c.d, c.d.all());
        CHECK(all.size() == c.order);
        unsigned max_len = 0;
        std::set<Element> distinct(all.begin(), all.end());
        CHECK(distinct.size() == all.size());
        for (const auto& e : all) max_len = std::max(max_len, e.length());
        CHECK(max_len == c.longest);
    }

    CoxeterDiagram dinf = chain({0});
    CHECK_THROWS_AS(enumerate_elements(dinf, dinf.all()), DomainError);
    CoxeterDiagram h3 = chain({5, 3});
    CHECK_THROWS_AS(enumerate_elements(h3, h3.all(), 10), CapExceeded);
}

TEST_CASE("refined length counts letters per class") {
    CoxeterDiagram b2 = chain({4});
    std::vector<std::string> phi{"u", "v"};
    Element w0 = reduce(b2, {0, 1, 0, 1});
    auto counts = refined_length(b2, w0, phi);
    CHECK(counts.at("u") == 2);
    CHECK(counts.at("v") == 2);
    auto zero = refined_length(b2, Element(), phi);
    CHECK(zero.at("u") == 0);  // classes are always present in the map

    CoxeterDiagram a2 = chain({3});
    CHECK_THROWS_AS(refined_length(a2, Element(), {"u", "v"}), DomainError);  // odd edge
    CHECK_THROWS_AS(refined_length(a2, Element(), {"u"}), DomainError);       // arity
}

TEST_CASE("reduce is invariant under braid scrambles") {
    // 1000 random words per diagram; scrambling by braid replacements and
    // square insertions must not change the normal form.
    std::vector<CoxeterDiagram> diagrams;
    diagrams.push_back(chain({3}));
    diagrams.push_back(chain({4, 3}));
    diagrams.push_back(chain({0}));
    diagrams.push_back(
        parse_diagram("node a\nnode b\nnode c\nedge a b 3\nedge b c 3\nedge a c 3\n"));
    std::mt19937_64 rng(20260814);
    for (const auto& d : diagrams) {
        std::uniform_int_distribution<unsigned> letter(0, d.rank() - 1);
        std::uniform_int_distribution<unsigned> len(0, 10);
        for (int trial = 0; trial < 1000; ++trial) {
            Word w(len(rng));
            for (auto& s : w) s = letter(rng);
            Element nf = reduce(d, w);
            CHECK(nf.length() <= w.size());
            CHECK(nf.length() % 2 == w.size() % 2);  // parity is a homomorphism
            CHECK(reduce(d, nf.word()) == nf);       // idempotent

            // scramble: a few random braid moves plus one square insertion
            Word scrambled = w;
            for (int k = 0; k < 3; ++k) {
                auto nbs = braid_neighbors(d, scrambled);
                if (nbs.empty()) break;
                scrambled = nbs[rng() % nbs.size()];
            }
            unsigned s = letter(rng);
            std::size_t pos = scrambled.empty() ? 0 : rng() % (scrambled.size() + 1);
            scrambled.insert(scrambled.begin() + pos, {s, s});
            CHECK(reduce(d, scrambled) == nf);
        }
    }
}

TEST_CASE("double coset minimization strips both sides") {
    CoxeterDiagram b3 = chain({4, 3});
    Subset a23 = Subset::single(1) | Subset::single(2);
    Element w = reduce(b3, {1, 0, 2, 1});
    Element m = min_double_coset(b3, a23, w, a23);
    CHECK(m.word() == Word{0});

    // identity coset stays identity
    CHECK(min_double_coset(b3, a23, reduce(b3, {1, 2, 1}), a23).is_identity());

    // empty subsets leave the element alone
    CHECK(min_double_coset(b3, Subset(), w, Subset()) == w);
}

TEST_CASE("coset canonicalization picks the minimal representative") {
    CoxeterDiagram b3 = chain({4, 3});
    Subset sub = Subset::single(2);
    auto reps = min_coset_reps(b3, b3.all(), sub);
    CHECK(reps.size() == 24);  // 48 / 2
    CHECK(std::is_sorted(reps.begin(), reps.end()));

    // canon maps every group element onto exactly the representative set,
    // is idempotent, and is constant on right cosets
    std::set<Element> canon_values;
    for (const Element& g : enumerate_elements(b3, b3.all())) {
        Element c = coset_canon(b3, g, sub);
        CHECK(c.length() <= g.length());
        CHECK(coset_canon(b3, c, sub) == c);
        CHECK(coset_canon(b3, multiply(b3, g, gen(2)), sub) == c);
        canon_values.insert(c);
    }
    CHECK(canon_values == std::set<Element>(reps.begin(), reps.end()));

    Subset a2 = Subset::single(1) | Subset::single(2);
    CHECK(min_coset_reps(b3, b3.all(), a2).size() == 8);
    CHECK_THROWS_AS(min_coset_reps(b3, a2, b3.all()), DomainError);  // sub not inside a
}

TEST_CASE("signed permutation statistics") {
    CHECK(signed_perm_stats({1, 2, 3}).length == 0);
    CHECK(signed_perm_stats({-1, 2, 3}).length == 1);
    CHECK(signed_perm_stats({-1, 2, 3}).flips == 1);
    CHECK(signed_perm_stats({2, 1}).length == 1);
    CHECK(signed_perm_stats({2, 1}).flips == 0);
    // longest element of B3: all entries negated, length 9
    CHECK(signed_perm_stats({-1, -2, -3}).length == 9);

    // the length generating function over all signed perms is the Poincare
    // polynomial of B_k
    for (unsigned k = 2; k <= 3; ++k) {
        std::vector<unsigned> labels{4};
        for (unsigned i = 2; i < k; ++i) labels.push_back(3);
        CoxeterDiagram bk = chain(labels);
        auto coeffs = poincare_single(bk, bk.all(), "x").univariate_coeffs();
        std::vector<BigRat> histogram(coeffs.size(), BigRat(0));
        for_each_signed_perm(k, [&](const std::vector<int>& img) {
            auto st = signed_perm_stats(img);
            REQUIRE(st.length < histogram.size());
            histogram[st.length] += 1;
        });
        CHECK(histogram == coeffs);
    }
}

TEST_CASE("weight orbit representatives agree with Tits rewriting") {
    CoxeterDiagram b3 = chain({4, 3});
    Subset stab = Subset::single(1) | Subset::single(2);
    auto orbit = weight_orbit_reps(b3, b3.all(), stab);
    REQUIRE(orbit.has_value());
    std::set<Element> from_orbit;
    for (const Word& w : *orbit) from_orbit.insert(reduce(b3, w));
    auto tits = min_coset_reps(b3, b3.all(), stab);
    CHECK(from_orbit == std::set<Element>(tits.begin(), tits.end()));

    // branched crystallographic case
    CoxeterDiagram d4 = parse_diagram(
        "node h\nnode a\nnode b\nnode c\nedge h a 3\nedge h b 3\nedge h c 3\n");
    Subset arms = Subset::single(1) | Subset::single(2) | Subset::single(3);
    auto orbit4 = weight_orbit_reps(d4, d4.all(), arms);
    REQUIRE(orbit4.has_value());
    std::set<Element> from_orbit4;
    for (const Word& w : *orbit4) from_orbit4.insert(reduce(d4, w));
    auto tits4 = min_coset_reps(d4, d4.all(), arms);
    CHECK(from_orbit4.size() == 24);  // 192 / 8
    CHECK(from_orbit4 == std::set<Element>(tits4.begin(), tits4.end()));

    // non-crystallographic labels make the routine decline
    CoxeterDiagram h3 = chain({5, 3});
    CHECK_FALSE(weight_orbit_reps(h3, h3.all(), Subset::single(2)).has_value());
}
