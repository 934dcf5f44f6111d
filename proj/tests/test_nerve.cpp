#include <catch2/catch_amalgamated.hpp>

#include <map>

#include <coxkit/bundled.hpp>
#include <coxkit/growth.hpp>
#include <coxkit/nerve.hpp>

#include "helpers.hpp"

using namespace coxkit;
using testutil::chain;
using testutil::data_file;
using testutil::slurp;

namespace {

std::vector<std::string> all_t(const CoxeterDiagram& d) {
    return std::vector<std::string>(d.rank(), "t");
}

MultiPoly one_plus_t_pow(unsigned n) {
    return (MultiPoly::constant(1) + MultiPoly::variable("t")).pow(n);
}

}  // namespace

TEST_CASE("spherical families of B chains") {
    // B2, T = {s1}: empty family, (s1), (s1 s2)
    CoxeterDiagram b2 = chain({4}, "s1");
    auto fams = enumerate_sigma(b2, *b2.t_set());
    REQUIRE(fams.size() == 3);
    CHECK(fams[0].grade == 0);
    CHECK(fams[1].grade == 1);
    CHECK(fams[2].grade == 2);
    CHECK(fams[2].chains.at(0) == std::vector<unsigned>{0, 1});
    CHECK(fams[2].str(b2) == "{s1.s2}");

    CHECK(f_closure(b2, *b2.t_set(), all_t(b2)) == one_plus_t_pow(2));
    CHECK(f_closure(chain({4, 3}, "s1"), Subset::single(0), all_t(chain({4, 3}))) ==
          one_plus_t_pow(3));
    CHECK(f_closure(chain({4, 3, 3}, "s1"), Subset::single(0), all_t(chain({4, 3, 3}))) ==
          one_plus_t_pow(4));
}

TEST_CASE("family enumeration rejects unsupported shapes") {
    // not right-angled: label 6 between T and the rest
    CoxeterDiagram six = chain({6}, "s1");
    CHECK_THROWS_AS(enumerate_sigma(six, *six.t_set()), DomainError);

    // infinite complement
    CoxeterDiagram inf_rest =
        parse_diagram("node a\nnode b\nnode c\nedge a b 4\nedge b c inf\nT a\n");
    CHECK_THROWS_AS(enumerate_sigma(inf_rest, *inf_rest.t_set()), DomainError);
}

TEST_CASE("bundled system has nineteen families") {
    CoxeterDiagram ex = parse_diagram(bundled::kExampleText);
    auto fams = enumerate_sigma(ex, *ex.t_set());
    const auto& exp = bundled::expected();
    CHECK(fams.size() == exp.family_count);
    std::map<unsigned, unsigned> histogram;
    for (const auto& f : fams) ++histogram[f.grade];
    std::map<unsigned, unsigned> expect_hist(exp.grade_histogram.begin(),
                                             exp.grade_histogram.end());
    CHECK(histogram == expect_hist);

    // two-variable f-polynomial, frozen coefficients
    std::vector<std::string> phi(ex.rank());
    for (unsigned i = 0; i < ex.rank(); ++i) phi[i] = ex.name(i);
    MultiPoly f = f_closure(ex, *ex.t_set(), phi);
    MultiPoly expect;
    for (const auto& [e, c] : exp.f_terms)
        expect = expect + MultiPoly::constant(c) * MultiPoly::variable("t1", e[0]) *
                              MultiPoly::variable("t2", e[1]);
    CHECK(f == expect);
}

TEST_CASE("f polynomial equals the clique-count oracle") {
    // every right-angled-closure shape of rank <= 5 in the test catalog
    std::vector<CoxeterDiagram> catalog;
    catalog.push_back(chain({4}, "s1"));
    catalog.push_back(chain({4, 3}, "s1"));
    catalog.push_back(chain({4, 3, 3}, "s1"));
    catalog.push_back(chain({4, 3, 3, 3}, "s1"));
    catalog.push_back(chain({0}, "s1"));
    catalog.push_back(parse_diagram("node a\nnode b\nT a\n"));
    catalog.push_back(parse_diagram(
        "node t1\nnode s\nnode t2\nedge t1 s 4\nedge s t2 4\nT t1 t2\n"));
    catalog.push_back(parse_diagram(  // commuting bystander widens every family
        "node t\nnode s\nnode u\nedge t s 4\nedge s u 3\nnode w\nT t\n"));
    for (const auto& d : catalog) {
        INFO(d.serialize());
        Subset T = *d.t_set();
        std::vector<std::string> phi(d.rank(), "t");
        CHECK(f_closure(d, T, phi) == brute_force_nerve(d, T, phi));
    }

    // the clique oracle is gated on generator count
    CoxeterDiagram ex = parse_diagram(bundled::kExampleText);
    CHECK_THROWS_AS(brute_force_nerve(ex, *ex.t_set(), all_t(ex)), CapExceeded);
}

TEST_CASE("family containment is chainwise prefix") {
    CoxeterDiagram b3 = chain({4, 3}, "s1");
    auto fams = enumerate_sigma(b3, *b3.t_set());
    REQUIRE(fams.size() == 4);  // {}, (s1), (s1 s2), (s1 s2 s3)
    CHECK(family_contains(fams[3], fams[2]));
    CHECK(family_contains(fams[2], fams[1]));
    CHECK(family_contains(fams[1], fams[0]));
    CHECK_FALSE(family_contains(fams[1], fams[2]));
    CHECK(family_contains(fams[2], fams[2]));
}

TEST_CASE("link polynomials") {
    CoxeterDiagram b3 = chain({4, 3}, "s1");
    Subset T = *b3.t_set();
    auto fams = enumerate_sigma(b3, T);
    std::vector<std::string> phi(b3.rank(), "t");

    // link of the empty face is the whole complex
    CHECK(f_link(b3, T, phi, fams[0]) == f_closure(b3, T, phi));
    // link of a top face is a point
    CHECK(f_link(b3, T, phi, fams[3]) == MultiPoly::constant(1));
    // link of a vertex of the 2-simplex on three commuting generators: an edge
    CHECK(f_link(b3, T, phi, fams[1]) == one_plus_t_pow(2));

    // a made-up family that is not spherical here is rejected
    SigmaFamily bogus;
    bogus.chains[0] = {0, 2};  // s1 then s3: not a chain in B3
    CHECK_THROWS_AS(f_link(b3, T, phi, bogus), DomainError);
}

TEST_CASE("bundled link fixtures match frozen coefficients") {
    const auto& exp = bundled::expected();
    auto run = [&](const std::string& file, const std::vector<long long>& frozen_ll) {
        std::vector<BigRat> frozen(frozen_ll.begin(), frozen_ll.end());
        CoxeterDiagram d = parse_diagram(slurp(data_file(file)));
        Subset T = *d.t_set();
        auto fams = enumerate_sigma(d, T);
        // locate the family whose chains equal the marked paths
        const SigmaFamily* sigma = nullptr;
        for (const auto& f : fams) {
            if (f.chains.size() != d.link_paths().size()) continue;
            bool all = true;
            for (const auto& path : d.link_paths()) {
                auto it = f.chains.find(path[0]);
                if (it == f.chains.end() || it->second != path) all = false;
            }
            if (all) {
                sigma = &f;
                break;
            }
        }
        REQUIRE(sigma != nullptr);
        std::vector<std::string> phi(d.rank(), "t");
        MultiPoly fl = f_link(d, T, phi, *sigma);
        CHECK(fl.univariate_coeffs() == frozen);
    };
    run("example_linkK.cox", exp.f_link_K);
    run("example_linkL.cox", exp.f_link_L);
}
