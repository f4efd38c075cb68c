#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>

#include "rightham/errors.hpp"
#include "support.hpp"

using namespace rightham;
using testing_support::parse;
using testing_support::PolyGenerator;

namespace {

ContextPtr sphere_context(const Rational& m = 1, const Rational& r0 = 1) {
  return PhaseContext::make(3, {{"m", m}, {"r0", r0}});
}

ParseError::Kind parse_error_kind(const std::string& text, const ContextPtr& ctx) {
  try {
    parse(text, ctx);
  } catch (const ParseError& e) {
    return e.kind();
  }
  FAIL("expected a parse error for " << text);
  return ParseError::Kind::Syntax;
}

}  // namespace

TEST_CASE("rational canonical form") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("010/04")) == "5/2");
  CHECK(to_string(parse_rational("0.050")) == "1/20");
  CHECK(to_string(parse_rational("-4/8")) == "-1/2");
  CHECK(to_string(parse_rational("0/7")) == "0");
  CHECK(to_string(parse_rational("-0.25")) == "-1/4");
  CHECK(to_string(parse_rational("12")) == "12");
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidInput);
  CHECK_THROWS_AS(parse_rational("abc"), InvalidInput);
  CHECK_THROWS_AS(parse_rational(""), InvalidInput);
  CHECK(pow(Rational(-2, 3), 3) == Rational(-8, 27));
  CHECK(pow(Rational(5), 0) == 1);
}

TEST_CASE("parser: constraint expressions") {
  auto ctx = sphere_context();
  auto h = parse("(1/(2*m))*(p1^2+p2^2+p3^2)", ctx);
  CHECK(to_string(h) == "1/2*p1^2 + 1/2*p2^2 + 1/2*p3^2");
  CHECK(parse("x1 - x1", ctx).is_zero());
  CHECK(parse("x1 - x1", ctx).terms().empty());

  auto two = PhaseContext::make(2, {{"r0", Rational(1)}});
  CHECK(to_string(parse("(1/r0^2)*(x1^2+x2^2)-1", two)) == "q1^2 + q2^2 - 1");
}

TEST_CASE("parser: parameters are substituted exactly") {
  auto ctx = sphere_context(Rational(3, 2), Rational(2, 7));
  auto u = parse("(1/r0^2)*(q1^2)-1", ctx);
  CHECK(u.coefficient(Monomial({2, 0, 0, 0, 0, 0})) == Rational(49, 4));
  CHECK(u.constant_term() == -1);
  auto h = parse("p1^2/(2*m)", ctx);
  CHECK(h.coefficient(Monomial({0, 0, 0, 2, 0, 0})) == Rational(1, 3));
}

TEST_CASE("parser: precedence and unary minus") {
  auto ctx = PhaseContext::make(1);
  CHECK(parse("-q1^2", ctx) == -parse("q1^2", ctx));
  CHECK(parse("2*-q1", ctx) == parse("-2*q1", ctx));
  CHECK(parse("--q1", ctx) == parse("q1", ctx));
  CHECK(parse("(-q1)^2", ctx) == parse("q1^2", ctx));
  CHECK(parse("1-2-3", ctx) == PhasePoly::constant(ctx, -4));
  CHECK(parse("8/2/2", ctx) == PhasePoly::constant(ctx, 2));
  CHECK(parse("q1*p1/3", ctx) == Rational(1, 3) * parse("q1*p1", ctx));
  CHECK(parse("0.5*q1", ctx) == parse("q1/2", ctx));
  CHECK(parse("  q1 +\tp1 ", ctx) == parse("q1+p1", ctx));
}

TEST_CASE("parser: errors carry kind and position") {
  auto ctx = sphere_context();
  CHECK(parse_error_kind("q1 +", ctx) == ParseError::Kind::Syntax);
  CHECK(parse_error_kind("(q1", ctx) == ParseError::Kind::Syntax);
  CHECK(parse_error_kind("q1 q2", ctx) == ParseError::Kind::Syntax);
  CHECK(parse_error_kind("q1^-1", ctx) == ParseError::Kind::Syntax);
  CHECK(parse_error_kind("", ctx) == ParseError::Kind::Syntax);
  CHECK(parse_error_kind("q1 $ 2", ctx) == ParseError::Kind::Syntax);
  CHECK(parse_error_kind("q4 + 1", ctx) == ParseError::Kind::UnboundIdentifier);
  CHECK(parse_error_kind("k*q1", ctx) == ParseError::Kind::UnboundIdentifier);
  CHECK(parse_error_kind("1/q1", ctx) == ParseError::Kind::BadDivision);
  CHECK(parse_error_kind("q1/(m-1)", ctx) == ParseError::Kind::BadDivision);
  CHECK(parse_error_kind("q1^17", ctx) == ParseError::Kind::ExponentOverflow);
  CHECK(parse_error_kind("(q1^4)^5", ctx) == ParseError::Kind::ExponentOverflow);

  try {
    parse("q1 + q9", ctx);
    FAIL("expected unbound identifier");
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
    CHECK(std::string(e.what()).find("position 6") != std::string::npos);
  }
  // Constants may be raised beyond the degree budget.
  CHECK(parse("2^20", ctx) == PhasePoly::constant(ctx, 1 << 20));
}

TEST_CASE("parser: symbol table lookup") {
  auto ctx = PhaseContext::make(1);
  SymbolTable symbols;
  symbols.emplace("H", parse("p1^2/2", ctx));
  CHECK(parse_expression("2*H + q1", ctx, &symbols) == parse("p1^2 + q1", ctx));
  CHECK_THROWS_AS(parse_expression("G", ctx, &symbols), ParseError);
}

TEST_CASE("combine: ring examples") {
  auto ctx = PhaseContext::make(1);
  auto q = PhasePoly::variable(ctx, ctx->q(0));
  auto p = PhasePoly::variable(ctx, ctx->p(0));
  CHECK((q + (-q)).is_zero());
  CHECK((q + p) * (q - p) == parse("q1^2 - p1^2", ctx));
  CHECK(pow(q + PhasePoly::constant(ctx, 1), 2) == parse("q1^2 + 2*q1 + 1", ctx));
  CHECK(pow(q, 0) == PhasePoly::constant(ctx, 1));
  CHECK_THROWS_AS(pow(q, 17), BudgetExceeded);
  CHECK_THROWS_AS(pow(q, 9) * pow(p, 8), BudgetExceeded);
  CHECK((Rational(0) * q).is_zero());
}

TEST_CASE("combine: ring axioms on random polynomials") {
  PolyGenerator gen(11);
  auto ctx = PhaseContext::make(2);
  for (int n = 0; n < 300; ++n) {
    auto a = gen.poly(ctx, 3), b = gen.poly(ctx, 3), c = gen.poly(ctx, 3);
    CHECK(a * b == b * a);
    CHECK((a + b) * c == a * c + b * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a - a == PhasePoly(ctx));
  }
}

TEST_CASE("term budget") {
  PolyLimits limits;
  limits.max_terms = 3;
  auto ctx = PhaseContext::make(2, {}, 1, limits);
  auto q = PhasePoly::variable(ctx, ctx->q(0));
  auto p = PhasePoly::variable(ctx, ctx->p(0));
  CHECK_NOTHROW(q + p);
  CHECK_THROWS_AS(pow(q + p + PhasePoly::constant(ctx, 1), 2), BudgetExceeded);
}

TEST_CASE("context mismatch") {
  auto a = PhaseContext::make(1);
  auto b = PhaseContext::make(2);
  auto c = PhaseContext::make(1, {}, 2);
  auto qa = PhasePoly::variable(a, 0);
  CHECK_THROWS_AS(qa + PhasePoly::variable(b, 0), ContextMismatch);
  CHECK_THROWS_AS(poisson_bracket(qa, PhasePoly::variable(c, 1)), ContextMismatch);
  // Separately built contexts with the same structure interoperate.
  CHECK_NOTHROW(qa + PhasePoly::variable(PhaseContext::make(1), 1));
}

TEST_CASE("partial derivatives") {
  auto ctx = PhaseContext::make(2);
  CHECK(partial_derivative(parse("q1^2*p1", ctx), ctx->q(0)) == parse("2*q1*p1", ctx));
  CHECK(partial_derivative(parse("p2^3", ctx), ctx->q(0)).is_zero());
  CHECK(partial_derivative(parse("p1^2/2", ctx), ctx->p(0)) == parse("p1", ctx));
  CHECK_THROWS_AS(partial_derivative(parse("q1", ctx), 4), UnknownVariable);
  std::array<unsigned, 4> orders{2, 0, 1, 0};
  CHECK(derivative(parse("q1^3*p1^2 + q2", ctx), orders) == parse("12*q1*p1", ctx));
}

TEST_CASE("poisson bracket examples") {
  auto ctx = sphere_context();
  auto q1 = parse("q1", ctx), p1 = parse("p1", ctx);
  CHECK(poisson_bracket(q1, p1) == PhasePoly::constant(ctx, 1));
  CHECK(poisson_bracket(p1, q1) == PhasePoly::constant(ctx, -1));

  auto h = parse("(1/(2*m))*(p1^2+p2^2+p3^2)", ctx);
  auto u = parse("(1/r0^2)*(q1^2+q2^2+q3^2)-1", ctx);
  auto v = parse("(1/(m*r0^2))*(q1*p1+q2*p2+q3*p3)", ctx);
  CHECK(poisson_bracket(h, u) == -2 * v);
  CHECK(poisson_bracket(v, u) == parse("-2*(q1^2+q2^2+q3^2)", ctx));
  CHECK(poisson_bracket(v, u) == -2 * (u + PhasePoly::constant(ctx, 1)));
}

TEST_CASE("poisson bracket agrees with the reference implementation") {
  PolyGenerator gen(7);
  for (int dof = 1; dof <= 3; ++dof) {
    auto ctx = PhaseContext::make(dof);
    for (int n = 0; n < 100; ++n) {
      auto a = gen.poly(ctx, 4), b = gen.poly(ctx, 4);
      auto expected = testing_support::ref_poisson(testing_support::to_ref(a), testing_support::to_ref(b),
                                                   static_cast<std::size_t>(dof));
      CHECK(poisson_bracket(a, b) == testing_support::from_ref(expected, ctx));
    }
  }
}

TEST_CASE("bracket axioms on 1000 random triples") {
  PolyGenerator gen(2024);
  int checked = 0;
  for (int n = 0; n < 1000; ++n) {
    auto ctx = PhaseContext::make(gen.uniform(1, 3));
    auto a = gen.poly(ctx, 4), b = gen.poly(ctx, 4), c = gen.poly(ctx, 4);
    REQUIRE((poisson_bracket(a, b) + poisson_bracket(b, a)).is_zero());
    REQUIRE(poisson_bracket(a, b * c) == poisson_bracket(a, b) * c + b * poisson_bracket(a, c));
    REQUIRE((poisson_bracket(a, poisson_bracket(b, c)) + poisson_bracket(b, poisson_bracket(c, a)) +
             poisson_bracket(c, poisson_bracket(a, b)))
                .is_zero());
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("moyal examples") {
  auto ctx = PhaseContext::make(1);
  CHECK(moyal_bracket(parse("p1", ctx), parse("q1", ctx)) == PhasePoly::constant(ctx, -1));
  CHECK(moyal_bracket(parse("q1^2", ctx), parse("p1^2", ctx)) == parse("4*q1*p1", ctx));
  CHECK(moyal_bracket(parse("q1^3", ctx), parse("p1^3", ctx)) == parse("9*q1^2*p1^2 - 3/2", ctx));
}

TEST_CASE("moyal agrees with the termwise bidifferential expansion") {
  PolyGenerator gen(99);
  for (const Rational& hbar : {Rational(1), Rational(1, 3), Rational(2)}) {
    auto ctx = PhaseContext::make(1, {}, hbar);
    for (int n = 0; n < 200; ++n) {
      auto a = gen.poly(ctx, 6), b = gen.poly(ctx, 6);
      auto expected = testing_support::ref_moyal_1d(testing_support::to_ref(a), testing_support::to_ref(b), hbar, 7);
      CHECK(moyal_bracket(a, b) == testing_support::from_ref(expected, ctx));
    }
  }
  auto ctx = PhaseContext::make(1);
  auto q3 = testing_support::to_ref(parse("q1^3", ctx));
  auto p3 = testing_support::to_ref(parse("p1^3", ctx));
  CHECK(testing_support::from_ref(testing_support::ref_moyal_1d(q3, p3, 1, 3), ctx) ==
        parse("9*q1^2*p1^2 - 3/2", ctx));
}

TEST_CASE("moyal degenerates to poisson for a quadratic argument") {
  PolyGenerator gen(5);
  for (int n = 0; n < 1000; ++n) {
    auto ctx = PhaseContext::make(gen.uniform(1, 3), {}, gen.positive_rational());
    auto a = gen.poly(ctx, 2), b = gen.poly(ctx, 5);
    if (n % 2) std::swap(a, b);
    REQUIRE(moyal_bracket(a, b) == poisson_bracket(a, b));
  }
}

TEST_CASE("moyal antisymmetry and the hbar = 0 limit") {
  PolyGenerator gen(6);
  for (int n = 0; n < 300; ++n) {
    const int dof = gen.uniform(1, 3);
    auto ctx = PhaseContext::make(dof);
    auto a = gen.poly(ctx, 5), b = gen.poly(ctx, 5);
    CHECK((moyal_bracket(a, b) + moyal_bracket(b, a)).is_zero());

    auto classical = PhaseContext::make(dof, {}, 0);
    auto a0 = PhasePoly::from_terms(classical, a.terms());
    auto b0 = PhasePoly::from_terms(classical, b.terms());
    CHECK(moyal_bracket(a0, b0) == poisson_bracket(a0, b0));
  }
}

TEST_CASE("pretty printer round trip") {
  PolyGenerator gen(31);
  for (int n = 0; n < 1000; ++n) {
    auto ctx = PhaseContext::make(gen.uniform(1, 3));
    auto p = gen.poly(ctx, 5, 6);
    REQUIRE(parse(to_string(p), ctx) == p);
  }
  auto ctx = PhaseContext::make(1);
  CHECK(to_string(PhasePoly(ctx)) == "0");
  CHECK(to_string(parse("-q1 + 1/2", ctx)) == "-q1 + 1/2");
  CHECK(to_string(parse("q1^2*p1 - 3*q1*p1^2 + p1", ctx)) == "q1^2*p1 - 3*q1*p1^2 + p1");
}

TEST_CASE("graded-lex ordering") {
  auto ctx = PhaseContext::make(2);
  auto p = parse("1 + p2 + q1 + q1*p2 + q2^2 + q1^3", ctx);
  CHECK(to_string(p) == "q1^3 + q1*p2 + q2^2 + q1 + p2 + 1");
  CHECK(p.leading().first == Monomial({3, 0, 0, 0}));
  CHECK(p.degree() == 3);
}

TEST_CASE("substitution") {
  auto src = PhaseContext::make(1);
  auto dst = PhaseContext::make(1);
  std::vector<PhasePoly> images{parse("q1 + p1", dst), parse("q1 - p1", dst)};
  CHECK(substitute(parse("q1*p1", src), images) == parse("q1^2 - p1^2", dst));
  CHECK_THROWS_AS(substitute(parse("q1", src), std::span(images).first(1)), InvalidInput);
}

TEST_CASE("context validation") {
  CHECK_THROWS_AS(PhaseContext::make(0), InvalidInput);
  CHECK_THROWS_AS(PhaseContext::make(1, {{"q1", Rational(1)}}), InvalidInput);
  CHECK_THROWS_AS(PhaseContext::make(1, {}, -1), InvalidInput);
  CHECK_THROWS_AS(PhaseContext::make_named({"R", "R"}, {"P", "Q"}), InvalidInput);
  auto ctx = PhaseContext::make(2);
  CHECK(ctx->lookup_variable("x2") == ctx->q(1));
  CHECK(ctx->lookup_variable("p2") == ctx->p(1));
  CHECK_FALSE(ctx->lookup_variable("p3").has_value());
}
