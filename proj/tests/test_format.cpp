#include "doctest.h"

#include "diffeo/catalog.hpp"
#include "diffeo/format.hpp"
#include "support.hpp"

using namespace diffeo;

TEST_CASE("catalog spaces round-trip through the text format") {
  std::vector<std::pair<std::string, CatalogParams>> cases = {
      {"euclidean", {{"n", 0}}}, {"euclidean", {{"n", 3}}}, {"wedge_lines", {{"m", 4}}},
      {"axes_subset", {}},       {"z2_quotient", {}},       {"spaghetti", {{"m", 5}}},
  };
  for (auto const& [name, params] : cases) {
    auto p    = build_catalog_space(name, params).presentation;
    auto text = print_presentation(p);
    CAPTURE(text);
    auto doc = parse_document(text);
    REQUIRE(doc.spaces.size() == 1);
    CHECK(doc.spaces[0] == p);
    CHECK(print_presentation(doc.spaces[0]) == text);
  }
}

TEST_CASE("random arrows round-trip") {
  for (int trial = 0; trial < 200; ++trial) {
    GermPresentation p;
    p.name = "r";
    auto a = static_cast<std::size_t>(testing::uniform(1, 3));
    auto b = static_cast<std::size_t>(testing::uniform(1, 3));
    p.add_chart("a", a);
    p.add_chart("b", b);
    p.add_arrow("f", "a", "b", testing::random_map(a, b, true, 3));
    auto doc = parse_document(print_presentation(p));
    REQUIRE(doc.spaces.size() == 1);
    CHECK(doc.spaces[0] == p);
  }
}

TEST_CASE("forms and sections round-trip") {
  auto z2 = build_catalog_space("z2_quotient").presentation;
  auto w  = build_catalog_space("wedge_lines").presentation;

  for (int trial = 0; trial < 100; ++trial) {
    PresentedForm f{1, {testing::random_form(2, 1, 3)}};
    auto          text = print_form("w", z2, f);
    auto          doc  = parse_document(text, {z2});
    REQUIRE(doc.forms.size() == 1);
    CHECK(doc.forms[0].name == "w");
    CHECK(doc.forms[0].space == "z2_quotient");
    CHECK(doc.forms[0].form.components == f.components);
  }

  PresentedSection sec{BundleKind::cotangent,
                       {PolyMap::zero(0, 0), PolyMap(1, {Poly::variable(1, 0)}),
                        PolyMap(1, {Poly::constant(1, make_rational(-2, 3))})},
                       std::vector<Rational>{0, make_rational(-2, 3)}};
  auto text = print_section("v", w, sec);
  auto doc  = parse_document(text, {w});
  REQUIRE(doc.sections.size() == 1);
  auto const& got = doc.sections[0].section;
  CHECK(got.kind == BundleKind::cotangent);
  CHECK(got.values == sec.values);
  CHECK(got.point_functional == sec.point_functional);
}

TEST_CASE("document with comments and several blocks") {
  auto doc = parse_document(R"(# two spaces and a form
space line
chart u : R^1

space cusp   # a line glued to a point
chart o : R^0
chart u : R^1
arrow p : o -> u = []
ambient 2
embed u = [s1^2, s1^3]

form w : degree 1 on cusp
on u : (2*s1 - 1/2) d[1]
)");
  REQUIRE(doc.spaces.size() == 2);
  CHECK(doc.find_space("cusp") != nullptr);
  CHECK(doc.find_space("plane") == nullptr);
  auto const* cusp = doc.find_space("cusp");
  CHECK(cusp->ambient->embeds[0] == PolyMap::zero(0, 2));
  auto const* w = doc.find_form("w");
  REQUIRE(w != nullptr);
  CHECK(w->form.components[0].is_zero());
  CHECK(w->form.components[1].coefficient(0).constant_term() == make_rational(-1, 2));
}

TEST_CASE("form expressions") {
  auto w = parse_form_expr("(s1) d[2,1] + 3 d[1,2] + (s2) d[1,1]", 2, 2);
  CHECK(w.coefficient(0) == parse_poly("3 - s1", 2));
  CHECK(parse_form_expr("0", 3, 1).is_zero());
  CHECK_THROWS_AS(parse_form_expr("d[1]", 2, 2), ParseError);
  CHECK_THROWS_AS(parse_form_expr("d[3]", 2, 1), ParseError);
}

TEST_CASE("polynomial expressions") {
  auto s1 = Poly::variable(2, 0);
  auto s2 = Poly::variable(2, 1);
  CHECK(parse_poly("(s1 + s2)^2", 2) == s1 * s1 + Poly::constant(2, 2) * s1 * s2 + s2 * s2);
  CHECK(parse_poly("s1/4 - -s2", 2) == Poly::constant(2, make_rational(1, 4)) * s1 + s2);
  CHECK(parse_poly("2/6", 1) == Poly::constant(1, make_rational(1, 3)));
  CHECK_THROWS_AS(parse_poly("s3", 2), ParseError);
  CHECK_THROWS_AS(parse_poly("1/s1", 2), ParseError);
  CHECK_THROWS_AS(parse_poly("1/0", 2), ParseError);
  CHECK_THROWS_AS(parse_poly("(s1", 2), ParseError);
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_document("space x\nchart u : R^\n");
    FAIL("expected a parse error");
  } catch (ParseError const& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 13);
    CHECK(std::string(e.what()).rfind("line 2, column 13", 0) == 0);
  }
  try {
    parse_document("space x\nchart u : R^1\narrow a : u -> v = [s1]\n");
    FAIL("expected a parse error");
  } catch (ParseError const& e) {
    CHECK(e.line() == 3);
    CHECK(e.message().find("'v'") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_document("chart u : R^1\n"), ParseError);
  CHECK_THROWS_AS(parse_document("space x\nchart u : R^1\nchart u : R^2\n"), ParseError);
  CHECK_THROWS_AS(parse_document("space x\nchart u : R^1\nbogus\n"), ParseError);
  CHECK_THROWS_AS(parse_document("space x\nchart u : R^1\narrow a : u -> u = [s1 + 1]\n"),
                  ParseError);
}
