#include <catch2/catch_amalgamated.hpp>

#include <coxkit/bundled.hpp>
#include <coxkit/diagram.hpp>

#include "helpers.hpp"

using namespace coxkit;
using testutil::chain;
using testutil::data_file;
using testutil::slurp;

TEST_CASE("subset bit operations") {
    Subset a = Subset::single(0) | Subset::single(3);
    CHECK(a.size() == 2);
    CHECK(a.contains(3));
    CHECK_FALSE(a.contains(1));
    CHECK(a.subset_of(Subset::full(4)));
    CHECK_FALSE(Subset::full(4).subset_of(a));
    CHECK((Subset::full(3) - Subset::single(1)) == (Subset::single(0) | Subset::single(2)));
    CHECK(a.elements() == std::vector<unsigned>{0, 3});

    Subset b;
    b.add(5).add(5).remove(0);
    CHECK(b == Subset::single(5));
    CHECK(Subset().empty());
}

TEST_CASE("label arithmetic") {
    CHECK(Label::finite(4).half() == Label::finite(2));
    CHECK(Label::infinity().half() == Label::infinity());
    CHECK(Label::infinity().is_even());
    CHECK(Label::finite(3).is_odd());
    CHECK_THROWS_AS(Label::finite(5).half(), DomainError);
    CHECK_THROWS_AS(Label::infinity().finite_value(), DomainError);
    CHECK(Label::finite(7).str() == "7");
    CHECK(Label::infinity().str() == "inf");
}

TEST_CASE("parse basics and defaults") {
    CoxeterDiagram d = parse_diagram("node a\nnode b\nnode c\nedge a b 4\nedge b c inf\n");
    CHECK(d.rank() == 3);
    CHECK(d.label(0, 1) == Label::finite(4));
    CHECK(d.label(1, 2) == Label::infinity());
    CHECK(d.label(0, 2) == Label::finite(2));  // absent edge
    CHECK(d.label(1, 1) == Label::finite(1));  // diagonal
    CHECK(d.index_of("c") == 2u);
    CHECK_FALSE(d.index_of("zz").has_value());
    CHECK_FALSE(d.t_set().has_value());
}

TEST_CASE("parse errors carry line numbers") {
    auto wants = [](const std::string& text, const std::string& needle) {
        try {
            parse_diagram(text);
            FAIL("expected a parse error for: " + text);
        } catch (const ParseError& e) {
            CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring(needle));
        }
    };
    wants("node a\nedge a b 3\n", "line 2");
    wants("node a\nnode a\n", "duplicate");
    wants("node a\nnode b\nedge a b 1\n", "bad label");
    wants("node a\nnode b\nedge a b x\n", "bad label");
    wants("node a\nnode b\nedge a b 3\nedge b a 4\n", "duplicate");
    wants("node a\nT a\nT a\n", "duplicate T");
    wants("node a\nfrobnicate a\n", "unknown directive");
    wants("node a-b\n", "name");
    wants("node a\nnode b\nclass u : a\n", "class");  // partial partition
}

TEST_CASE("rank is capped at 64") {
    std::string text;
    for (int i = 0; i < 65; ++i) text += "node n" + std::to_string(i) + "\n";
    CHECK_THROWS_AS(parse_diagram(text), ParseError);
}

TEST_CASE("serialize parses back to an equal diagram") {
    CoxeterDiagram d = parse_diagram(bundled::kExampleText);
    std::string s = d.serialize();
    CoxeterDiagram d2 = parse_diagram(s);
    CHECK(d2.serialize() == s);  // serialization is a fixed point
    CHECK(d2.fingerprint() == d.fingerprint());
    CHECK(d2.rank() == 10);
    REQUIRE(d2.t_set().has_value());
    CHECK(d2.t_set()->size() == 2);
}

TEST_CASE("shipped sample file matches the bundled system") {
    CoxeterDiagram from_file = parse_diagram(slurp(data_file("example_87.cox")));
    CoxeterDiagram embedded = parse_diagram(bundled::kExampleText);
    CHECK(from_file.serialize() == embedded.serialize());
    CHECK(from_file.fingerprint() == embedded.fingerprint());
}

TEST_CASE("perp and odd closure") {
    CoxeterDiagram d = parse_diagram(bundled::kExampleText);
    unsigned t1 = *d.index_of("t1");
    Subset p = d.perp(Subset::single(t1));
    CHECK(p.size() == 8);  // everything except t1 itself and its inf-neighbor s2
    CHECK_FALSE(p.contains(t1));
    CHECK_FALSE(p.contains(*d.index_of("s2")));
    CHECK(p.contains(*d.index_of("t2")));

    // inf edges never merge odd classes
    CHECK(d.odd_closure(Subset::single(t1)) == Subset::single(t1));

    CoxeterDiagram b3 = chain({4, 3});
    CHECK(b3.odd_closure(Subset::single(1)) == (Subset::single(1) | Subset::single(2)));
    CHECK(b3.odd_closure(Subset::single(0)) == Subset::single(0));
}

TEST_CASE("connected components split on label-2 edges only") {
    CoxeterDiagram d = parse_diagram("node a\nnode b\nnode c\nedge b c inf\n");
    auto comps = d.connected_components(d.all());
    REQUIRE(comps.size() == 2);
    CHECK(comps[0] == Subset::single(0));
    CHECK(comps[1] == (Subset::single(1) | Subset::single(2)));
}

TEST_CASE("induced subdiagram remaps labels, T and links") {
    CoxeterDiagram d = parse_diagram(bundled::kLinkKText);
    Subset keep;
    keep.add(*d.index_of("s2")).add(*d.index_of("s3")).add(*d.index_of("t2"))
        .add(*d.index_of("s8")).add(*d.index_of("s7"));
    CoxeterDiagram sub = d.induced(keep);
    CHECK(sub.rank() == 5);
    CHECK(sub.label(*sub.index_of("s2"), *sub.index_of("s3")) == Label::finite(3));
    CHECK(sub.label(*sub.index_of("s8"), *sub.index_of("t2")) == Label::finite(4));
    REQUIRE(sub.t_set().has_value());
    CHECK(*sub.t_set() == Subset::single(*sub.index_of("t2")));
    // of the two marked chains only (t2, s8, s7) survives the restriction
    REQUIRE(sub.link_paths().size() == 1);
    CHECK(sub.link_paths()[0] ==
          std::vector<unsigned>{*sub.index_of("t2"), *sub.index_of("s8"), *sub.index_of("s7")});
}

TEST_CASE("partition defaults and declared classes") {
    CoxeterDiagram plain = chain({3});
    CHECK(plain.partition() == std::vector<std::string>{"x", "x"});

    CoxeterDiagram with_t = chain({4}, "s1");
    CHECK(with_t.partition() == std::vector<std::string>{"x", "x0"});

    CoxeterDiagram classed =
        parse_diagram("node a\nnode b\nedge a b 4\nclass u : a\nclass v : b\n");
    CHECK(classed.has_declared_classes());
    CHECK(classed.partition() == std::vector<std::string>{"u", "v"});

    // odd edge across classes is rejected at parse time
    CHECK_THROWS_AS(parse_diagram("node a\nnode b\nedge a b 3\nclass u : a\nclass v : b\n"),
                    ParseError);
}

TEST_CASE("link fixture files parse") {
    CoxeterDiagram k = parse_diagram(slurp(data_file("example_linkK.cox")));
    REQUIRE(k.link_paths().size() == 2);
    CHECK(k.link_paths()[0].size() == 1);
    CHECK(k.link_paths()[1].size() == 3);

    CoxeterDiagram l = parse_diagram(slurp(data_file("example_linkL.cox")));
    REQUIRE(l.link_paths().size() == 1);
    CHECK(l.link_paths()[0].size() == 2);
}
