#include "doctest.h"

#include "diffeo/catalog.hpp"
#include "diffeo/multilinear.hpp"
#include "diffeo/tangent.hpp"

using namespace diffeo;

namespace {
  GermPresentation space(std::string const& name, CatalogParams const& params = {}) {
    return build_catalog_space(name, params).presentation;
  }
}  // namespace

TEST_CASE("apply_fibre_functor") {
  SUBCASE("wedge_lines(2), k = 1") {
    auto d = apply_fibre_functor(space("wedge_lines"), 1);
    CHECK(d.objects == std::vector<std::size_t>{0, 1, 1});
    REQUIRE(d.arrows.size() == 2);
    for (auto const& a : d.arrows) {
      CHECK(a.map.rows() == 1);
      CHECK(a.map.cols() == 0);
    }
  }
  SUBCASE("wedge_lines(2), k = 2") {
    auto d = apply_fibre_functor(space("wedge_lines"), 2);
    CHECK(d.objects == std::vector<std::size_t>{0, 0, 0});
  }
  SUBCASE("z2_quotient, k = 2") {
    auto d = apply_fibre_functor(space("z2_quotient"), 2);
    CHECK(d.objects == std::vector<std::size_t>{1});
    REQUIRE(d.arrows.size() == 1);
    CHECK(d.arrows[0].map == RatMat{{1}});
  }
  SUBCASE("invalid presentation is rejected") {
    auto p          = space("wedge_lines");
    p.arrows[0].map = PolyMap::zero(0, 3);
    CHECK_THROWS_AS(apply_fibre_functor(p, 1), std::invalid_argument);
  }
}

TEST_CASE("vect_colimit") {
  SUBCASE("single object") {
    auto c = vect_colimit({{3}, {}});
    CHECK(c.dim == 3);
    CHECK(c.cocone[0] == RatMat::identity(3));
  }
  SUBCASE("z2 tangent diagram collapses") {
    VectDiagram d{{2}, {{0, 0, RatMat{{-1, 0}, {0, -1}}}}};
    CHECK(vect_colimit(d).dim == 0);
  }
  SUBCASE("wedge_lines(2) tangent diagram") {
    auto c = tangent_space(space("wedge_lines"));
    CHECK(c.dim == 2);
    CHECK(c.cocone[1] == RatMat{{1}, {0}});
    CHECK(c.cocone[2] == RatMat{{0}, {1}});
  }
  SUBCASE("pushout of a line into two planes") {
    // One line glued into two planes: 1 + 2 + 2 - 1 - 1.
    VectDiagram d{{1, 2, 2}, {{0, 1, RatMat{{1}, {0}}}, {0, 2, RatMat{{0}, {1}}}}};
    auto        c = vect_colimit(d);
    CHECK(c.dim == 3);
    CHECK(c.cocone[1] * RatMat{{1}, {0}} == c.cocone[0]);
    CHECK(c.cocone[2] * RatMat{{0}, {1}} == c.cocone[0]);
  }
  SUBCASE("shape mismatch") {
    VectDiagram d{{1, 2}, {{0, 1, RatMat(1, 1)}}};
    CHECK_THROWS_AS(vect_colimit(d), std::invalid_argument);
  }
}

TEST_CASE("vect_limit") {
  CHECK(vect_limit({{3}, {}}).dim == 3);
  CHECK(vect_limit({{1, 1}, {}}).dim == 2);
  VectDiagram z2{{2}, {{0, 0, RatMat{{-1, 0}, {0, -1}}}}};
  CHECK(vect_limit(z2).dim == 0);
  // Equalizer of id and a projection onto the first axis.
  VectDiagram proj{{2}, {{0, 0, RatMat{{1, 0}, {0, 0}}}}};
  auto        l = vect_limit(proj);
  CHECK(l.dim == 1);
  CHECK(RatMat{{1, 0}, {0, 0}} * l.cone[0] == l.cone[0]);
}

TEST_CASE("rho_map") {
  SUBCASE("euclidean(2), k = 2 is the identity") {
    CHECK(rho_map(space("euclidean", {{"n", 2}}), 2) == RatMat::identity(1));
  }
  SUBCASE("wedge_lines(2), k = 2 is not surjective") {
    auto r = rho_map(space("wedge_lines"), 2);
    CHECK(r.rows() == 1);
    CHECK(r.cols() == 0);
    CHECK_FALSE(is_surjective(r));
  }
  SUBCASE("z2_quotient, k = 2 is not injective") {
    auto r = rho_map(space("z2_quotient"), 2);
    CHECK(r.rows() == 0);
    CHECK(r.cols() == 1);
    CHECK_FALSE(is_injective(r));
  }
  SUBCASE("k = 1 is the identity on the same colimit") {
    for (auto const& name : catalog_names()) {
      auto r = rho_map(space(name), 1);
      CHECK(r.is_identity());
    }
  }
}

TEST_CASE("pushforward_map") {
  SUBCASE("identity map") {
    auto p    = space("spaghetti", {{"m", 3}});
    auto push = pushforward_map(identity_map(p), 2);
    CHECK(push.tangent.is_identity());
    CHECK(push.higher.is_identity());
    CHECK(push.exterior.is_identity());
  }
  SUBCASE("inclusion of the axes into the plane") {
    auto inc  = ambient_inclusion(space("axes_subset"));
    auto push = pushforward_map(inc, 1);
    CHECK(push.tangent.rows() == 2);
    CHECK(push.tangent.cols() == 2);
    CHECK(rank(push.tangent) == 2);
    CHECK(push.tangent == RatMat::identity(2));
    auto push2 = pushforward_map(inc, 2);
    CHECK(push2.exterior == RatMat{{1}});
    CHECK(push2.higher.cols() == 0);
  }
  SUBCASE("quotient of the plane by negation") {
    auto push = pushforward_map(z2_quotient_map(), 2);
    CHECK(push.tangent.rows() == 0);
    CHECK(push.higher == RatMat{{1}});
  }
  SUBCASE("invalid map is rejected") {
    auto bad          = ambient_inclusion(space("axes_subset"));
    bad.images[1].map = PolyMap(1, {Poly::variable(1, 0) + Poly::constant(1, 1), Poly(1)});
    CHECK_THROWS_AS(pushforward_map(bad, 1), std::invalid_argument);
  }
}

TEST_CASE("ambient_pushforward") {
  auto s3 = space("spaghetti", {{"m", 3}});
  CHECK(ambient_pushforward(s3) == RatMat{{1, 1, 1}, {1, 2, 3}});
  CHECK_THROWS_AS(ambient_pushforward(space("wedge_lines")), std::invalid_argument);
}

TEST_CASE("fibre dimensions vanish above the chart dimension") {
  for (auto const& name : catalog_names()) {
    auto p = space(name);
    auto n = p.max_chart_dim();
    for (std::size_t k = n + 1; k <= n + 3; ++k) {
      CHECK(higher_tangent_space(p, k).dim == 0);
    }
  }
}

TEST_CASE("a filtered fragment with a nontrivial arrow has rho iso") {
  GermPresentation p;
  p.name = "plane_with_line";
  p.add_chart("l", 1);
  p.add_chart("u", 2);
  p.add_arrow("incl", "l", "u", PolyMap(1, {Poly::variable(1, 0), Poly::variable(1, 0).pow(2)}));
  REQUIRE(filteredness(p, 4).filtered == Verdict::yes);
  for (std::size_t k = 0; k <= 3; ++k) {
    auto r = rho_map(p, k);
    CHECK(r.rows() == r.cols());
    CHECK(inverse(r).has_value());
  }
}
