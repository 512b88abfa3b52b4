#include "doctest.h"

#include "diffeo/catalog.hpp"
#include "diffeo/forms.hpp"
#include "diffeo/multilinear.hpp"
#include "support.hpp"

using namespace diffeo;

namespace {
  GermPresentation space(std::string const& name, CatalogParams const& params = {}) {
    return build_catalog_space(name, params).presentation;
  }

  Poly s(std::size_t n = 1, std::size_t i = 0) {
    return Poly::variable(n, i);
  }

  Poly c(long v, std::size_t n = 1) {
    return Poly::constant(n, v);
  }

  // A 1-form f ds on the line.
  PolyForm line_form(Poly f) {
    return PolyForm(1, 1, {std::move(f)});
  }

  PresentedForm wedge_family(Poly f, Poly g) {
    return {1, {PolyForm::zero(0, 1), line_form(std::move(f)), line_form(std::move(g))}};
  }

  PolyForm dx() {
    return PolyForm::basis(2, {0});
  }
  PolyForm dy() {
    return PolyForm::basis(2, {1});
  }
  PolyForm dxdy() {
    return PolyForm::basis(2, {0, 1});
  }
}  // namespace

TEST_CASE("check_form_compatibility") {
  SUBCASE("any pair of 1-forms on wedge_lines(2)") {
    auto v = check_form_compatibility(space("wedge_lines"), wedge_family(c(2) + s(), s() * s()));
    CHECK(v.compatible);
  }
  SUBCASE("z2_quotient: dx^dy is invariant") {
    auto p = space("z2_quotient");
    CHECK(check_form_compatibility(p, {2, {dxdy()}}).compatible);
  }
  SUBCASE("z2_quotient: dx is not") {
    auto p = space("z2_quotient");
    auto v = check_form_compatibility(p, {1, {dx()}});
    CHECK_FALSE(v.compatible);
    CHECK(v.arrow_id == "neg");
    REQUIRE(v.failing_arrow.has_value());
    CHECK(*v.failing_arrow == 0);
    CHECK(v.residual == PolyForm(2, 1, {c(-2, 2), Poly(2)}));
    CHECK(v.to_string().find("neg") != std::string::npos);
  }
  SUBCASE("z2_quotient: x dx + y dy is invariant") {
    auto p = space("z2_quotient");
    PolyForm w(2, 1, {s(2, 0), s(2, 1)});
    CHECK(check_form_compatibility(p, {1, {w}}).compatible);
  }
  SUBCASE("shape errors") {
    auto p = space("wedge_lines");
    CHECK_THROWS_AS(check_form_compatibility(p, {1, {line_form(s())}}), std::invalid_argument);
    CHECK_THROWS_AS(check_form_compatibility(p, {2, wedge_family(s(), s()).components}),
                    std::invalid_argument);
  }
}

TEST_CASE("check_on_top_charts") {
  auto z2 = space("z2_quotient");
  CHECK(check_on_top_charts(z2, {2, {dxdy()}}, 2).compatible);
  CHECK_THROWS_AS(check_on_top_charts(z2, {1, {dx()}}, 1), std::invalid_argument);
  CHECK_THROWS_AS(check_on_top_charts(z2, {2, {dxdy()}}, 1), std::invalid_argument);

  // Top-chart arrows on wedge_lines are the identities, so only arrows out of
  // the point are dropped.
  auto w    = space("wedge_lines");
  auto fam  = wedge_family(s(), c(1));
  auto full = check_form_compatibility(w, fam);
  auto top  = check_on_top_charts(w, fam, 1);
  CHECK(full.compatible == top.compatible);
}

TEST_CASE("vanishes_at_point and form_at_point") {
  auto p = space("wedge_lines");
  CHECK(vanishes_at_point(wedge_family(s(), s() * s())));
  CHECK_FALSE(vanishes_at_point(wedge_family(c(1), s())));

  auto at = form_at_point(p, wedge_family(c(2) + s(), c(3) - s()));
  CHECK(at.degree == 1);
  CHECK(at.values == RatMat{{2, 3}});

  auto z2 = space("z2_quotient");
  CHECK_THROWS_AS(form_at_point(z2, {1, {dx()}}), std::invalid_argument);
  auto top = form_at_point(z2, {2, {dxdy().times(c(5, 2) + s(2, 0) * s(2, 0))}});
  CHECK(top.values == RatMat{{5}});
}

TEST_CASE("restrict_ambient_form") {
  SUBCASE("area form on the axes restricts to zero") {
    auto p = space("axes_subset");
    auto r = restrict_ambient_form(p, dxdy());
    for (auto const& comp : r.components) {
      CHECK(comp.is_zero());
    }
  }
  SUBCASE("dx on the axes") {
    auto p = space("axes_subset");
    auto r = restrict_ambient_form(p, dx());
    CHECK(r.components[1] == line_form(c(1)));
    CHECK(r.components[2].is_zero());
    CHECK(check_form_compatibility(p, r).compatible);
  }
  SUBCASE("dy on spaghetti picks the slopes") {
    auto p = space("spaghetti", {{"m", 3}});
    auto r = restrict_ambient_form(p, dy());
    for (long k = 1; k <= 3; ++k) {
      CHECK(r.components[static_cast<std::size_t>(k)] == line_form(c(k)));
    }
  }
  SUBCASE("no ambient") {
    CHECK_THROWS_AS(restrict_ambient_form(space("wedge_lines"), dx()), std::invalid_argument);
  }
}

TEST_CASE("tilde_form_at_point") {
  SUBCASE("area form on the axes is nonzero at the point") {
    auto p = space("axes_subset");
    CHECK(tilde_form_at_point(p, dxdy()) == RatMat{{1}});
    // ... while its chart-wise restriction vanishes identically.
    auto r = restrict_ambient_form(p, dxdy());
    CHECK(form_at_point(p, r).values.cols() == 0);
  }
  SUBCASE("zero ambient form") {
    CHECK(tilde_form_at_point(space("axes_subset"), PolyForm::zero(2, 2)) == RatMat{{0}});
  }
  SUBCASE("euclidean plane agrees with the form value") {
    auto     p = space("euclidean", {{"n", 2}});
    PolyForm w(2, 1, {c(3, 2) + s(2, 1), c(-1, 2)});
    CHECK(tilde_form_at_point(p, w) == RatMat{{3, -1}});
  }
  SUBCASE("spaghetti: dx^dy sees each pair of lines") {
    auto p = space("spaghetti", {{"m", 3}});
    // Pairs (1,2), (1,3), (2,3) with slopes k: det [[1,1],[a,b]] = b - a.
    CHECK(tilde_form_at_point(p, dxdy()) == RatMat{{1, 2, 1}});
  }
}

TEST_CASE("rho_dual") {
  for (auto const& name : catalog_names()) {
    auto p = space(name);
    for (std::size_t k = 0; k <= 3; ++k) {
      CHECK(rho_dual(p, k) == rho_map(p, k).transpose());
    }
  }
}

TEST_CASE("reachable_fibre_dim") {
  auto p = space("wedge_lines");
  CHECK(reachable_fibre_dim(p, {wedge_family(c(1), Poly(1)), wedge_family(Poly(1), c(1))}, 1) == 2);
  CHECK(reachable_fibre_dim(p, {}, 1) == 0);
  CHECK(reachable_fibre_dim(p, {wedge_family(s(), s())}, 1) == 0);

  auto          z2 = space("z2_quotient");
  PresentedForm w{2, {dxdy()}};
  PresentedForm w2{2, {dxdy().times(c(2, 2))}};
  CHECK(reachable_fibre_dim(z2, {w, w2}, 2) == 1);
  CHECK_THROWS_AS(reachable_fibre_dim(z2, {w, {1, {dx()}}}, 2), std::invalid_argument);
}

TEST_CASE("pullback_family") {
  auto inc = ambient_inclusion(space("axes_subset"));
  auto r   = pullback_family(inc, {1, {dx()}});
  CHECK(r.components == restrict_ambient_form(space("axes_subset"), dx()).components);

  auto q  = z2_quotient_map();
  auto pb = pullback_family(q, {2, {dxdy()}});
  CHECK(pb.components[0] == dxdy());
}

TEST_CASE("check_section") {
  auto p = space("wedge_lines");
  auto make = [&](BundleKind kind, Poly f, Poly g) {
    return PresentedSection{kind,
                            {PolyMap::zero(0, 0), PolyMap(1, {std::move(f)}),
                             PolyMap(1, {std::move(g)})},
                            std::nullopt};
  };

  SUBCASE("tangent field vanishing at the point") {
    auto v = check_section(p, make(BundleKind::tangent, s() * s(), s() * s() * s()));
    CHECK(v.valid);
    REQUIRE(v.point_value.has_value());
    CHECK(v.point_value->is_zero());
  }
  SUBCASE("tangent field not vanishing at the point") {
    auto v = check_section(p, make(BundleKind::tangent, c(1) + s(), s()));
    CHECK_FALSE(v.valid);
    REQUIRE(v.forced_zero.size() == 2);
    CHECK(v.forced_zero[0].chart == 1);
    CHECK(v.forced_zero[1].chart == 2);
  }
  SUBCASE("cotangent section") {
    auto v = check_section(p, make(BundleKind::cotangent, c(1) + s(), c(2) - s()));
    CHECK(v.valid);
    REQUIRE(v.point_value.has_value());
    CHECK(*v.point_value == RatMat{{1, 2}});
    CHECK(v.forced_zero.empty());
  }
  SUBCASE("cotangent section with a declared functional") {
    auto sec             = make(BundleKind::cotangent, c(1), c(2));
    sec.point_functional = std::vector<Rational>{1, 2};
    CHECK(check_section(p, sec).valid);
    sec.point_functional = std::vector<Rational>{2, 1};
    CHECK_FALSE(check_section(p, sec).valid);
  }
  SUBCASE("not wedge-type") {
    PresentedSection sec{BundleKind::tangent, {PolyMap::identity(2)}, std::nullopt};
    CHECK_THROWS_AS(check_section(space("z2_quotient"), sec), std::invalid_argument);
  }
  SUBCASE("point functional on a tangent section") {
    auto sec             = make(BundleKind::tangent, s(), s());
    sec.point_functional = std::vector<Rational>{0, 0};
    CHECK_THROWS_AS(check_section(p, sec), std::invalid_argument);
  }
}

TEST_CASE("naturality of point values under pullback") {
  for (int trial = 0; trial < 50; ++trial) {
    auto     inc = ambient_inclusion(space("spaghetti", {{"m", 3}}));
    PolyForm w   = testing::random_form(2, 1);
    auto     pb  = pullback_family(inc, PresentedForm{1, {w}});
    auto     at  = form_at_point(inc.source, pb);
    // Value on T^1 of the pullback equals the pushed-forward ambient value.
    auto push = pushforward_map(inc, 1);
    CHECK(at.values == form_value_at_zero(w) * push.higher);
  }
}

TEST_CASE("rho dual carries tilde values to point values") {
  for (int trial = 0; trial < 50; ++trial) {
    auto     p = space("spaghetti", {{"m", 3}});
    PolyForm w = testing::random_form(2, 2);
    auto     r = restrict_ambient_form(p, w);
    auto     t = tilde_form_at_point(p, w);
    CHECK(form_at_point(p, r).values == t * rho_map(p, 2));
  }
}
