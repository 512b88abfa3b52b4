#include "diffeo/catalog.hpp"

#include <stdexcept>

#include "diffeo/multilinear.hpp"
#include "diffeo/tangent.hpp"

namespace diffeo {

  namespace {
    constexpr std::size_t filter_depth = 4;
    constexpr std::size_t max_degree   = 4;

    long param(CatalogParams const&            given,
               std::string const&              space,
               std::string const&              key,
               long                            fallback,
               long                            lo,
               long                            hi) {
      auto it = given.find(key);
      long v  = it == given.end() ? fallback : it->second;
      if (v < lo || v > hi) {
        throw std::invalid_argument(space + ": parameter " + key + " = " + std::to_string(v)
                                    + " outside [" + std::to_string(lo) + ", "
                                    + std::to_string(hi) + "]");
      }
      return v;
    }

    void reject_unknown(CatalogParams const&            given,
                        std::string const&              space,
                        std::vector<std::string> const& allowed) {
      for (auto const& [k, v] : given) {
        bool known = false;
        for (auto const& a : allowed) {
          known = known || a == k;
        }
        if (!known) {
          throw std::invalid_argument(space + ": unknown parameter '" + k + "'");
        }
      }
    }

    Poly var1(std::size_t i = 0, std::size_t n = 1) {
      return Poly::variable(n, i);
    }

    // Lines l_k through the origin of the plane, each receiving the constant
    // plot from the 0-dimensional chart.
    GermPresentation lines_through_point(std::string              name,
                                         std::vector<std::string> line_ids) {
      GermPresentation p;
      p.name = std::move(name);
      p.add_chart("o", 0);
      for (auto const& id : line_ids) {
        p.add_chart(id, 1);
        p.add_arrow("o_" + id, "o", id, PolyMap::zero(0, 1));
      }
      return p;
    }

    std::vector<Oracle> tangent_oracles(std::size_t t, std::size_t t2, std::size_t w2) {
      return {{"dim T", std::to_string(t), ""},
              {"dim T^2", std::to_string(t2), ""},
              {"dim wedge^2 T", std::to_string(w2), ""}};
    }
  }  // namespace

  std::vector<std::string> catalog_names() {
    return {"euclidean", "wedge_lines", "axes_subset", "z2_quotient", "spaghetti"};
  }

  CatalogEntry build_catalog_space(std::string const& name, CatalogParams const& params) {
    CatalogEntry e;
    e.name = name;
    auto& p = e.presentation;

    if (name == "euclidean") {
      reject_unknown(params, name, {"n"});
      auto const n = static_cast<std::size_t>(param(params, name, "n", 2, 0, 8));
      e.params     = {{"n", static_cast<long>(n)}};
      p.name       = "euclidean_" + std::to_string(n);
      p.add_chart("u", n);
      p.ambient = Ambient{n, {PolyMap::identity(n)}};
      e.oracles = tangent_oracles(n, binomial(n, 2), binomial(n, 2));
      e.oracles.push_back({"filtered", "yes", "single chart, identity arrows only"});
      e.oracles.push_back({"weakly_filtered", "yes", "single chart"});
    } else if (name == "wedge_lines") {
      reject_unknown(params, name, {"m", "axis"});
      auto const m    = param(params, name, "m", 2, 1, 12);
      auto const axis = param(params, name, "axis", 0, 0, m);
      e.params        = {{"m", m}, {"axis", axis}};
      if (axis == 0) {
        std::vector<std::string> ids;
        for (long i = 1; i <= m; ++i) {
          ids.push_back("x" + std::to_string(i));
        }
        p = lines_through_point("wedge_lines_" + std::to_string(m), ids);
        auto const mm = static_cast<std::size_t>(m);
        e.oracles     = tangent_oracles(mm, 0, binomial(mm, 2));
        e.oracles[0].note = "one independent direction per line at the gluing point";
        e.oracles[1].note = "all charts are 1-dimensional";
        if (m >= 2) {
          e.oracles.push_back({"weakly_filtered", "no", "no chart receives two distinct lines"});
          e.oracles.push_back({"rho^2 surjective", "no", "T^2 fibre is 0, wedge^2 T is not"});
        }
      } else {
        // Away from the origin only line `axis` passes through the point.
        p = lines_through_point(
            "wedge_lines_" + std::to_string(m) + "_at_x" + std::to_string(axis),
            {"x" + std::to_string(axis)});
        e.oracles = tangent_oracles(1, 0, 0);
        e.oracles[0].note = "a line away from the gluing point";
        e.oracles.push_back({"filtered", "yes", ""});
      }
    } else if (name == "axes_subset") {
      reject_unknown(params, name, {});
      p = lines_through_point("axes_subset", {"x1", "x2"});
      // Same germ diagram as wedge_lines(2); the plane embedding is what
      // distinguishes the subset diffeology here.
      p.ambient = Ambient{2,
                          {PolyMap::zero(0, 2),
                           PolyMap(1, {var1(), Poly(1)}),
                           PolyMap(1, {Poly(1), var1()})}};
      e.oracles = tangent_oracles(2, 0, 1);
      e.oracles.push_back({"weakly_filtered", "no", ""});
      e.oracles.push_back({"rho^2 surjective", "no", ""});
    } else if (name == "z2_quotient") {
      reject_unknown(params, name, {});
      p.name = "z2_quotient";
      p.add_chart("u", 2);
      p.add_arrow("neg", "u", "u", PolyMap::linear(RatMat{{-1, 0}, {0, -1}}));
      e.oracles = tangent_oracles(0, 1, 0);
      e.oracles[0].note = "v = -v forces v = 0";
      e.oracles[1].note = "coequalizer of id, id on the line wedge^2 Q^2";
      e.oracles.push_back({"weakly_filtered", "yes", "single chart"});
      e.oracles.push_back({"filtered", "no", "id and -id are not coequalized"});
      e.oracles.push_back({"rho^2 injective", "no", ""});
    } else if (name == "spaghetti") {
      reject_unknown(params, name, {"m"});
      auto const m = param(params, name, "m", 3, 1, 12);
      e.params     = {{"m", m}};
      std::vector<std::string> ids;
      for (long k = 1; k <= m; ++k) {
        ids.push_back("l" + std::to_string(k));
      }
      p = lines_through_point("spaghetti_" + std::to_string(m), ids);
      Ambient amb{2, {PolyMap::zero(0, 2)}};
      for (long k = 1; k <= m; ++k) {
        amb.embeds.push_back(PolyMap(1, {var1(), Rational(k) * var1()}));
      }
      p.ambient = std::move(amb);
      e.oracles = {{"dim T", std::to_string(m), "no arrows between distinct lines"}};
      if (m >= 2) {
        e.oracles.push_back({"weakly_filtered", "no", ""});
      }
    } else {
      throw std::invalid_argument("unknown catalog space '" + name + "'");
    }
    require_valid(p);
    e.wedge_type = is_wedge_type(p);
    return e;
  }

  std::vector<std::string> known_quantities() {
    std::vector<std::string> q{"dim T", "weakly_filtered", "filtered"};
    for (std::size_t k = 0; k <= max_degree; ++k) {
      auto const ks = std::to_string(k);
      q.push_back("dim T^" + ks);
      q.push_back("dim wedge^" + ks + " T");
      q.push_back("rho^" + ks + " injective");
      q.push_back("rho^" + ks + " surjective");
    }
    return q;
  }

  std::string compute_quantity(GermPresentation const& p, std::string const& quantity) {
    auto yes_no = [](bool b) { return std::string(b ? "yes" : "no"); };
    if (quantity == "dim T") {
      return std::to_string(tangent_space(p).dim);
    }
    if (quantity == "weakly_filtered") {
      return to_string(filteredness(p, filter_depth).weakly_filtered);
    }
    if (quantity == "filtered") {
      return to_string(filteredness(p, filter_depth).filtered);
    }
    for (std::size_t k = 0; k <= max_degree; ++k) {
      auto const ks = std::to_string(k);
      if (quantity == "dim T^" + ks) {
        return std::to_string(higher_tangent_space(p, k).dim);
      }
      if (quantity == "dim wedge^" + ks + " T") {
        return std::to_string(binomial(tangent_space(p).dim, k));
      }
      if (quantity == "rho^" + ks + " injective") {
        return yes_no(is_injective(rho_map(p, k)));
      }
      if (quantity == "rho^" + ks + " surjective") {
        return yes_no(is_surjective(rho_map(p, k)));
      }
    }
    throw std::invalid_argument("unknown quantity '" + quantity + "'");
  }

  PresentedMap ambient_inclusion(GermPresentation const& p) {
    require_valid(p);
    if (!p.ambient) {
      throw std::invalid_argument("space '" + p.name + "' has no ambient embedding");
    }
    auto         plane = build_catalog_space("euclidean", {{"n", static_cast<long>(p.ambient->dim)}});
    PresentedMap m{p, plane.presentation, {}};
    for (auto const& e : p.ambient->embeds) {
      m.images.push_back({0, e});
    }
    return m;
  }

  PresentedMap z2_quotient_map() {
    auto plane = build_catalog_space("euclidean", {{"n", 2}});
    auto quot  = build_catalog_space("z2_quotient");
    return {plane.presentation, quot.presentation, {{0, PolyMap::identity(2)}}};
  }

  PresentedMap identity_map(GermPresentation const& p) {
    require_valid(p);
    PresentedMap m{p, p, {}};
    for (std::size_t i = 0; i < p.charts.size(); ++i) {
      m.images.push_back({i, PolyMap::identity(p.charts[i].dim)});
    }
    return m;
  }

}  // namespace diffeo
