#include "diffeo/tangent.hpp"

#include <stdexcept>
#include <string>

#include "diffeo/multilinear.hpp"

namespace diffeo {

  std::size_t VectDiagram::total_dim() const {
    std::size_t n = 0;
    for (auto d : objects) {
      n += d;
    }
    return n;
  }

  std::vector<std::size_t> VectDiagram::offsets() const {
    std::vector<std::size_t> off;
    std::size_t              n = 0;
    for (auto d : objects) {
      off.push_back(n);
      n += d;
    }
    return off;
  }

  void check_diagram(VectDiagram const& d) {
    for (std::size_t i = 0; i < d.arrows.size(); ++i) {
      auto const& a = d.arrows[i];
      if (a.src >= d.objects.size() || a.dst >= d.objects.size()) {
        throw std::invalid_argument("diagram arrow " + std::to_string(i)
                                    + " refers to a missing object");
      }
      if (a.map.rows() != d.objects[a.dst] || a.map.cols() != d.objects[a.src]) {
        throw std::invalid_argument(
            "diagram arrow " + std::to_string(i) + " has shape " + std::to_string(a.map.rows())
            + "x" + std::to_string(a.map.cols()) + ", expected "
            + std::to_string(d.objects[a.dst]) + "x" + std::to_string(d.objects[a.src]));
      }
    }
  }

  ColimitResult vect_colimit(VectDiagram const& d) {
    check_diagram(d);
    ColimitResult out;
    out.offsets           = d.offsets();
    std::size_t const sum = d.total_dim();

    std::size_t relation_count = 0;
    for (auto const& a : d.arrows) {
      relation_count += d.objects[a.src];
    }
    RatMat      relations(sum, relation_count);
    std::size_t col = 0;
    for (auto const& a : d.arrows) {
      for (std::size_t v = 0; v < d.objects[a.src]; ++v, ++col) {
        for (std::size_t r = 0; r < d.objects[a.dst]; ++r) {
          relations(out.offsets[a.dst] + r, col) += a.map(r, v);
        }
        relations(out.offsets[a.src] + v, col) -= 1;
      }
    }

    out.relations = cokernel_presentation(relations);
    out.dim       = out.relations.quotient_dim;
    for (std::size_t i = 0; i < d.objects.size(); ++i) {
      out.cocone.push_back(out.relations.projection.col_block(out.offsets[i], d.objects[i]));
    }
    return out;
  }

  LimitResult vect_limit(VectDiagram const& d) {
    check_diagram(d);
    auto const        offsets = d.offsets();
    std::size_t const sum     = d.total_dim();

    std::size_t rows = 0;
    for (auto const& a : d.arrows) {
      rows += d.objects[a.dst];
    }
    // One block row A x_src - x_dst = 0 per arrow.
    RatMat      difference(rows, sum);
    std::size_t row = 0;
    for (auto const& a : d.arrows) {
      for (std::size_t r = 0; r < d.objects[a.dst]; ++r, ++row) {
        for (std::size_t c = 0; c < d.objects[a.src]; ++c) {
          difference(row, offsets[a.src] + c) += a.map(r, c);
        }
        difference(row, offsets[a.dst] + r) -= 1;
      }
    }
    LimitResult out;
    out.basis = kernel_basis(difference);
    out.dim   = out.basis.cols();
    for (std::size_t i = 0; i < d.objects.size(); ++i) {
      out.cone.push_back(out.basis.row_block(offsets[i], d.objects[i]));
    }
    return out;
  }

  std::optional<RatMat> factor_through_colimit(ColimitResult const&       colim,
                                               std::vector<RatMat> const& legs,
                                               std::size_t                target_dim) {
    if (legs.size() != colim.cocone.size()) {
      throw std::invalid_argument("factor_through_colimit: expected "
                                  + std::to_string(colim.cocone.size()) + " legs, got "
                                  + std::to_string(legs.size()));
    }
    for (std::size_t i = 0; i < legs.size(); ++i) {
      if (legs[i].rows() != target_dim || legs[i].cols() != colim.cocone[i].cols()) {
        throw std::invalid_argument("factor_through_colimit: leg " + std::to_string(i)
                                    + " has the wrong shape");
      }
    }
    RatMat const joined = hstack(legs, target_dim);
    RatMat       u      = joined * colim.relations.section;
    if (!(joined * colim.relations.relation_basis).is_zero()) {
      return std::nullopt;
    }
    return u;
  }

  RatMat descend(ColimitResult const&       colim,
                 std::vector<RatMat> const& legs,
                 std::size_t                target_dim,
                 char const*                what) {
    auto u = factor_through_colimit(colim, legs, target_dim);
    if (!u) {
      throw std::logic_error(std::string(what) + ": legs do not annihilate the colimit relations");
    }
    for (std::size_t i = 0; i < legs.size(); ++i) {
      if (*u * colim.cocone[i] != legs[i]) {
        throw std::logic_error(std::string(what) + ": factorisation fails on object "
                               + std::to_string(i));
      }
    }
    return *u;
  }

  VectDiagram apply_fibre_functor(GermPresentation const& p, std::size_t k) {
    require_valid(p);
    VectDiagram d;
    for (auto const& c : p.charts) {
      d.objects.push_back(binomial(c.dim, k));
    }
    for (auto const& a : p.arrows) {
      d.arrows.push_back({a.src, a.dst, exterior_power_map(jacobian_at_zero(a.map), k)});
    }
    return d;
  }

  ColimitResult tangent_space(GermPresentation const& p) {
    return vect_colimit(apply_fibre_functor(p, 1));
  }

  ColimitResult higher_tangent_space(GermPresentation const& p, std::size_t k) {
    return vect_colimit(apply_fibre_functor(p, k));
  }

  namespace {
    RatMat rho_from(ColimitResult const& tangent, ColimitResult const& higher, std::size_t k) {
      std::vector<RatMat> legs;
      for (auto const& c : tangent.cocone) {
        legs.push_back(exterior_power_map(c, k));
      }
      return descend(higher, legs, binomial(tangent.dim, k), "rho_map");
    }
  }  // namespace

  RatMat rho_map(GermPresentation const& p, std::size_t k) {
    return rho_from(tangent_space(p), higher_tangent_space(p, k), k);
  }

  Pushforward pushforward_map(PresentedMap const& m, std::size_t k) {
    auto const report = validate_map(m);
    if (!report.ok()) {
      throw std::invalid_argument("presented map is " + report.to_string());
    }
    auto const src_t = tangent_space(m.source);
    auto const tgt_t = tangent_space(m.target);
    auto const src_k = higher_tangent_space(m.source, k);
    auto const tgt_k = higher_tangent_space(m.target, k);

    std::vector<RatMat> tangent_legs, higher_legs;
    for (auto const& im : m.images) {
      auto const j = jacobian_at_zero(im.map);
      tangent_legs.push_back(tgt_t.cocone[im.target_chart] * j);
      higher_legs.push_back(tgt_k.cocone[im.target_chart] * exterior_power_map(j, k));
    }
    Pushforward out;
    out.tangent  = descend(src_t, tangent_legs, tgt_t.dim, "pushforward_map (tangent)");
    out.higher   = descend(src_k, higher_legs, tgt_k.dim, "pushforward_map (T^k)");
    out.exterior = exterior_power_map(out.tangent, k);

    auto const rho_src = rho_from(src_t, src_k, k);
    auto const rho_tgt = rho_from(tgt_t, tgt_k, k);
    if (rho_tgt * out.higher != out.exterior * rho_src) {
      throw std::logic_error("pushforward_map: pushforward does not commute with rho");
    }
    return out;
  }

  RatMat ambient_pushforward(GermPresentation const& p) {
    require_valid(p);
    if (!p.ambient) {
      throw std::invalid_argument("space '" + p.name + "' has no ambient embedding");
    }
    auto const          t = tangent_space(p);
    std::vector<RatMat> legs;
    for (auto const& e : p.ambient->embeds) {
      legs.push_back(jacobian_at_zero(e));
    }
    return descend(t, legs, p.ambient->dim, "ambient_pushforward");
  }

}  // namespace diffeo
