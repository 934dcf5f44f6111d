#include <catch2/catch_amalgamated.hpp>

#include <coxkit/poly.hpp>
#include <coxkit/ratfun.hpp>

using namespace coxkit;

namespace {

MultiPoly X(const std::string& v, std::uint32_t e = 1) { return MultiPoly::variable(v, e); }
MultiPoly C(long n) { return MultiPoly::constant(BigRat(n)); }

}  // namespace

TEST_CASE("polynomial arithmetic is canonical") {
    MultiPoly a = (C(1) + X("x")) * (C(1) + X("y"));
    MultiPoly b = C(1) + X("y") + X("x") + X("y") * X("x");
    CHECK(a == b);
    CHECK(a - b == MultiPoly());
    CHECK((a - b).is_zero());
    CHECK(a != a + C(1));

    MultiPoly p = (C(1) + X("x")).pow(3);
    CHECK(p.univariate_coeffs() ==
          std::vector<BigRat>{BigRat(1), BigRat(3), BigRat(3), BigRat(1)});
    CHECK(p.degree("x") == 3);
    CHECK(p.degree("y") == 0);
    CHECK(p.constant_term() == BigRat(1));
    CHECK(p.has_integer_coeffs());
    CHECK_FALSE((BigRat(1, 2) * p).has_integer_coeffs());

    // unused variables disappear from the support
    MultiPoly gone = X("x") * X("y") - X("x") * X("y") + X("x");
    CHECK(gone.vars() == std::vector<std::string>{"x"});
}

TEST_CASE("evaluation and substitution") {
    MultiPoly p = C(2) * X("x", 2) * X("y") + C(5);
    CHECK(p.eval({{"x", BigRat(3)}, {"y", BigRat(-1)}}) == BigRat(-13));
    CHECK(p.substitute_value("y", BigRat(0)) == C(5));

    // polynomial substitution composes
    MultiPoly q = (C(1) + X("t")).pow(2);
    CHECK(p.substitute("x", q).eval({{"t", BigRat(1)}, {"y", BigRat(1)}}) == BigRat(37));

    // substituting a variable the polynomial does not mention is a no-op
    CHECK(p.substitute("z", C(99)) == p);
}

TEST_CASE("exact division by linear factors") {
    MultiPoly p = (C(1) + X("x")).pow(2) * (C(1) - X("x"));
    MultiPoly q = p.divide_linear("x", BigRat(-1));
    CHECK(q == (C(1) + X("x")) * (C(1) - X("x")));
    CHECK_THROWS_AS(p.divide_linear("x", BigRat(7)), DomainError);  // 7 is not a root
}

TEST_CASE("univariate coefficient access") {
    MultiPoly p = C(4) + X("x", 2) * C(3);
    CHECK(p.univariate_coeffs() == std::vector<BigRat>{BigRat(4), BigRat(0), BigRat(3)});
    CHECK(coefficients(p) == p.univariate_coeffs());
    CHECK(p.sole_var() == std::string("x"));
    CHECK(C(4).univariate_coeffs() == std::vector<BigRat>{BigRat(4)});
    CHECK_FALSE((X("x") + X("y")).sole_var().has_value());
    CHECK_THROWS_AS((X("x") + X("y")).univariate_coeffs(), DomainError);
}

TEST_CASE("json round trips are byte identical") {
    MultiPoly p = C(3) * X("u", 2) * X("v") - BigRat(7, 2) * X("v", 5) + C(1);
    auto j = p.to_json();
    CHECK(MultiPoly::from_json(j) == p);
    CHECK(MultiPoly::from_json(j).to_json().dump() == j.dump());

    RationalFn r(C(1) + X("x"), C(1) - X("x") * X("y"));
    auto jr = r.to_json();
    CHECK(RationalFn::from_json(jr) == r);
    CHECK(RationalFn::from_json(jr).to_json().dump() == jr.dump());
}

TEST_CASE("rational functions compare by cross multiplication") {
    RationalFn a(C(1) - X("x", 2), C(1) - X("x"));
    RationalFn b(C(1) + X("x"), C(1));
    CHECK(a == b);
    CHECK(a + b == RationalFn(C(2) * (C(1) + X("x")), C(1)));
    CHECK(a - b == RationalFn());
    CHECK(a * b == RationalFn((C(1) + X("x")).pow(2), C(1)));
    CHECK(a / b == RationalFn(C(1), C(1)));
    CHECK(RationalFn(C(1), C(1) - X("x")).reciprocal() == RationalFn(C(1) - X("x"), C(1)));
    CHECK_THROWS_AS(RationalFn(C(1), C(1)) / RationalFn(), DomainError);
    CHECK_THROWS_AS(RationalFn(C(1), C(0)), DomainError);
}

TEST_CASE("limits along one variable") {
    // (1 - x^2) / (1 - x) has a removable singularity at x = 1 with value 2
    RationalFn r(C(1) - X("x", 2), C(1) - X("x"));
    CHECK(r.specialize_limit("x", BigRat(1)) == RationalFn(C(2), C(1)));

    // plain evaluation away from poles
    CHECK(r.specialize_limit("x", BigRat(3)) == RationalFn(C(4), C(1)));

    // a genuine pole is an error
    RationalFn pole(C(1), C(1) - X("x"));
    CHECK_THROWS_AS(pole.specialize_limit("x", BigRat(1)), DomainError);

    // limits in one variable keep the others symbolic
    RationalFn two(C(1) - X("x", 2) * X("y", 2), C(1) - X("x") * X("y"));
    CHECK(two.specialize_limit("x", BigRat(1)) ==
          RationalFn(C(1) - X("y", 2), C(1) - X("y")));
}

TEST_CASE("variable inversion") {
    RationalFn r(C(1) + X("x"), C(1) - X("x"));
    // (1 + 1/x) / (1 - 1/x) = (x + 1) / (x - 1)
    CHECK(r.invert_variables() == RationalFn(X("x") + C(1), X("x") - C(1)));
    CHECK(r.invert_variables().invert_variables() == r);

    RationalFn two(X("u") * X("v"), C(1) - X("u"));
    CHECK(two.invert_variables() == RationalFn(C(1), X("v") * (X("u") - C(1))));
}

TEST_CASE("taylor expansion") {
    RationalFn geo(C(1), C(1) - X("x"));
    CHECK(geo.taylor("x", 4) ==
          std::vector<BigRat>{BigRat(1), BigRat(1), BigRat(1), BigRat(1), BigRat(1)});

    RationalFn doubling(C(1), C(1) - C(2) * X("x"));
    CHECK(doubling.taylor("x", 3) ==
          std::vector<BigRat>{BigRat(1), BigRat(2), BigRat(4), BigRat(8)});

    RationalFn shifted(X("x"), C(1) + X("x"));
    CHECK(shifted.taylor("x", 3) ==
          std::vector<BigRat>{BigRat(0), BigRat(1), BigRat(-1), BigRat(1)});

    // expansion point must not be a pole
    CHECK_THROWS_AS(RationalFn(C(1), X("x")).taylor("x", 2), DomainError);
}

TEST_CASE("substituting rational functions") {
    RationalFn r(C(1), C(1) - X("x"));
    RationalFn inner(MultiPoly::constant(BigRat(-1)), C(1) + X("t"));
    // 1 / (1 - (-1/(1+t))) = (1+t) / (2+t)
    CHECK(r.substitute("x", inner) == RationalFn(C(1) + X("t"), C(2) + X("t")));
    // substitution that zeroes the denominator is rejected
    CHECK_THROWS_AS(r.substitute("x", RationalFn(C(1), C(1))), DomainError);
}

TEST_CASE("univariate helper division") {
    using V = std::vector<BigRat>;
    V a{BigRat(-1), BigRat(0), BigRat(1)};  // x^2 - 1
    V b{BigRat(1), BigRat(1)};              // x + 1
    CHECK(detail::uv_divexact(a, b) == V{BigRat(-1), BigRat(1)});
    CHECK_THROWS_AS(detail::uv_divexact(V{BigRat(1), BigRat(1), BigRat(1)}, b), DomainError);
    // gcd comes out monic
    V g = detail::uv_gcd(a, V{BigRat(2), BigRat(2)});
    CHECK(g == V{BigRat(1), BigRat(1)});
}
