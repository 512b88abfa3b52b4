#include "diffeo/forms.hpp"

#include <stdexcept>

#include "diffeo/multilinear.hpp"

namespace diffeo {

  PresentedForm PresentedForm::zero(GermPresentation const& p, std::size_t k) {
    PresentedForm w{k, {}};
    for (auto const& c : p.charts) {
      w.components.push_back(PolyForm::zero(c.dim, k));
    }
    return w;
  }

  void check_form_shape(GermPresentation const& p, PresentedForm const& w) {
    if (w.components.size() != p.charts.size()) {
      throw std::invalid_argument("form has " + std::to_string(w.components.size())
                                  + " components for " + std::to_string(p.charts.size())
                                  + " charts");
    }
    for (std::size_t i = 0; i < p.charts.size(); ++i) {
      auto const& c = w.components[i];
      if (c.degree() != w.degree || c.domain_dim() != p.charts[i].dim) {
        throw std::invalid_argument(
            "form component on chart '" + p.charts[i].id + "' is a " + std::to_string(c.degree())
            + "-form on R^" + std::to_string(c.domain_dim()) + ", expected a "
            + std::to_string(w.degree) + "-form on R^" + std::to_string(p.charts[i].dim));
      }
    }
  }

  std::string CompatibilityVerdict::to_string() const {
    if (compatible) {
      return "compatible";
    }
    return "incompatible along arrow '" + arrow_id + "': pullback minus component = "
           + residual.to_string();
  }

  namespace {
    CompatibilityVerdict check_arrows(GermPresentation const& p,
                                      PresentedForm const&    w,
                                      bool                    top_only,
                                      std::size_t             n) {
      require_valid(p);
      check_form_shape(p, w);
      CompatibilityVerdict verdict;
      for (std::size_t a = 0; a < p.arrows.size(); ++a) {
        auto const& arrow = p.arrows[a];
        if (top_only && (p.charts[arrow.src].dim != n || p.charts[arrow.dst].dim != n)) {
          continue;
        }
        auto residual = pullback_form(w.components[arrow.dst], arrow.map);
        residual -= w.components[arrow.src];
        if (!residual.is_zero()) {
          verdict.compatible    = false;
          verdict.failing_arrow = a;
          verdict.arrow_id      = arrow.id;
          verdict.residual      = std::move(residual);
          return verdict;
        }
      }
      return verdict;
    }
  }  // namespace

  CompatibilityVerdict check_form_compatibility(GermPresentation const& p,
                                                PresentedForm const&    w) {
    return check_arrows(p, w, false, 0);
  }

  CompatibilityVerdict check_on_top_charts(GermPresentation const& p,
                                           PresentedForm const&    w,
                                           std::size_t             n) {
    if (w.degree != n || n != p.max_chart_dim()) {
      throw std::invalid_argument("check_on_top_charts: degree " + std::to_string(w.degree)
                                  + " and dimension " + std::to_string(n)
                                  + " must both equal the top chart dimension "
                                  + std::to_string(p.max_chart_dim()));
    }
    return check_arrows(p, w, true, n);
  }

  bool vanishes_at_point(PresentedForm const& w) {
    for (auto const& c : w.components) {
      if (!form_value_at_zero(c).is_zero()) {
        return false;
      }
    }
    return true;
  }

  PointForm form_at_point(GermPresentation const& p, PresentedForm const& w) {
    auto const verdict = check_form_compatibility(p, w);
    if (!verdict.compatible) {
      throw std::invalid_argument("form_at_point: " + verdict.to_string());
    }
    auto const          fibre = higher_tangent_space(p, w.degree);
    std::vector<RatMat> legs;
    for (auto const& c : w.components) {
      legs.push_back(form_value_at_zero(c));
    }
    return {w.degree, descend(fibre, legs, 1, "form_at_point")};
  }

  PresentedForm restrict_ambient_form(GermPresentation const& p, PolyForm const& ambient_form) {
    require_valid(p);
    if (!p.ambient) {
      throw std::invalid_argument("space '" + p.name + "' has no ambient embedding");
    }
    if (ambient_form.domain_dim() != p.ambient->dim) {
      throw std::invalid_argument("ambient form lives on R^"
                                  + std::to_string(ambient_form.domain_dim())
                                  + ", ambient space is R^" + std::to_string(p.ambient->dim));
    }
    PresentedForm w{ambient_form.degree(), {}};
    for (auto const& e : p.ambient->embeds) {
      w.components.push_back(pullback_form(ambient_form, e));
    }
    auto const verdict = check_form_compatibility(p, w);
    if (!verdict.compatible) {
      throw std::logic_error("restrict_ambient_form: restricted family is "
                             + verdict.to_string());
    }
    return w;
  }

  RatMat tilde_form_at_point(GermPresentation const& p, PolyForm const& ambient_form) {
    if (!p.ambient) {
      throw std::invalid_argument("space '" + p.name + "' has no ambient embedding");
    }
    if (ambient_form.domain_dim() != p.ambient->dim) {
      throw std::invalid_argument("ambient form has the wrong domain dimension");
    }
    auto const push = ambient_pushforward(p);
    return form_value_at_zero(ambient_form) * exterior_power_map(push, ambient_form.degree());
  }

  RatMat tilde_form_at_point(PresentedMap const& m, RatMat const& target_functional, std::size_t k) {
    auto const push = pushforward_map(m, k);
    if (target_functional.rows() != 1 || target_functional.cols() != push.exterior.rows()) {
      throw std::invalid_argument("tilde_form_at_point: functional has "
                                  + std::to_string(target_functional.cols())
                                  + " entries, expected "
                                  + std::to_string(push.exterior.rows()) + " for degree "
                                  + std::to_string(k));
    }
    return target_functional * push.exterior;
  }

  RatMat rho_dual(GermPresentation const& p, std::size_t k) {
    return rho_map(p, k).transpose();
  }

  PresentedForm pullback_family(PresentedMap const& m, PresentedForm const& w) {
    check_form_shape(m.target, w);
    PresentedForm out{w.degree, {}};
    for (auto const& im : m.images) {
      out.components.push_back(pullback_form(w.components[im.target_chart], im.map));
    }
    return out;
  }

  std::size_t reachable_fibre_dim(GermPresentation const&           p,
                                  std::vector<PresentedForm> const& forms,
                                  std::size_t                       k) {
    auto const fibre = higher_tangent_space(p, k);
    RatMat     span(0, fibre.dim);
    for (std::size_t i = 0; i < forms.size(); ++i) {
      if (forms[i].degree != k) {
        throw std::invalid_argument("form #" + std::to_string(i) + " has degree "
                                    + std::to_string(forms[i].degree) + ", expected "
                                    + std::to_string(k));
      }
      auto const verdict = check_form_compatibility(p, forms[i]);
      if (!verdict.compatible) {
        throw std::invalid_argument("form #" + std::to_string(i) + " is "
                                    + verdict.to_string());
      }
      span = vstack(span, form_at_point(p, forms[i]).values);
    }
    return rank(span);
  }

  namespace {
    std::vector<SectionSlot> forced_zero_slots(RatMat const&                   constraints,
                                               std::vector<SectionSlot> const& slots) {
      std::vector<SectionSlot> forced;
      std::size_t const        base = rank(constraints);
      for (std::size_t s = 0; s < slots.size(); ++s) {
        RatMat unit(1, slots.size());
        unit(0, s) = 1;
        if (rank(vstack(constraints, unit)) == base) {
          forced.push_back(slots[s]);
        }
      }
      return forced;
    }
  }  // namespace

  SectionVerdict check_section(GermPresentation const& p, PresentedSection const& s) {
    require_valid(p);
    if (!is_wedge_type(p)) {
      throw std::invalid_argument("check_section: space '" + p.name
                                  + "' is not wedge-type (some arrow leaves a chart of "
                                    "positive dimension)");
    }
    if (s.values.size() != p.charts.size()) {
      throw std::invalid_argument("section has " + std::to_string(s.values.size())
                                  + " chart values for " + std::to_string(p.charts.size())
                                  + " charts");
    }
    if (s.kind == BundleKind::tangent && s.point_functional) {
      throw std::invalid_argument("a point functional only applies to cotangent sections");
    }
    for (std::size_t i = 0; i < p.charts.size(); ++i) {
      auto const n = p.charts[i].dim;
      if (s.values[i].source_dim() != n || s.values[i].target_dim() != n) {
        throw std::invalid_argument("section value on chart '" + p.charts[i].id
                                    + "' must map R^" + std::to_string(n) + " to R^"
                                    + std::to_string(n));
      }
    }

    auto const     tangent = tangent_space(p);
    SectionVerdict v;
    std::size_t    total = 0;
    for (std::size_t i = 0; i < p.charts.size(); ++i) {
      for (std::size_t c = 0; c < p.charts[i].dim; ++c) {
        v.slots.push_back({i, c});
      }
      total += p.charts[i].dim;
    }
    RatMat at_zero(total, 1);
    for (std::size_t s_ = 0; s_ < v.slots.size(); ++s_) {
      at_zero(s_, 0) = s.values[v.slots[s_].chart][v.slots[s_].component].constant_term();
    }

    if (s.kind == BundleKind::tangent) {
      // cocone_i v_i - cocone_0 v_0 = 0 for every chart i > 0.
      auto const& off = tangent.offsets;
      RatMat      constraints(tangent.dim * (p.charts.empty() ? 0 : p.charts.size() - 1), total);
      for (std::size_t i = 1; i < p.charts.size(); ++i) {
        for (std::size_t r = 0; r < tangent.dim; ++r) {
          std::size_t const row = (i - 1) * tangent.dim + r;
          for (std::size_t c = 0; c < p.charts[i].dim; ++c) {
            constraints(row, off[i] + c) += tangent.cocone[i](r, c);
          }
          for (std::size_t c = 0; c < p.charts[0].dim; ++c) {
            constraints(row, off[0] + c) -= tangent.cocone[0](r, c);
          }
        }
      }
      v.constraints = constraints;
      v.forced_zero = forced_zero_slots(constraints, v.slots);
      v.valid       = (constraints * at_zero).is_zero();
      if (v.valid) {
        v.point_value = tangent.cocone[0] * at_zero.row_block(off[0], p.charts[0].dim);
        v.message     = "valid";
      } else {
        v.message = "invalid: chart values at the marked point have different images in T_x";
      }
      return v;
    }

    // Cotangent: a functional ℓ with ℓ · cocone_i = a_i exists iff the stacked
    // values annihilate the colimit relations.
    v.constraints  = tangent.relations.relation_basis.transpose();
    v.forced_zero  = forced_zero_slots(v.constraints, v.slots);
    RatMat const a = at_zero.transpose();
    v.valid        = (v.constraints * at_zero).is_zero();
    if (!v.valid) {
      v.message = "invalid: chart values at the marked point do not descend to T_x";
      return v;
    }
    RatMat const ell = a * tangent.relations.section;
    v.point_value    = ell;
    if (s.point_functional) {
      auto const& given = *s.point_functional;
      if (given.size() != tangent.dim || RatMat::row(given) != ell) {
        v.valid   = false;
        v.message = "invalid: the declared point functional differs from the one forced by "
                    "the charts";
        return v;
      }
    }
    v.message = "valid";
    return v;
  }

}  // namespace diffeo
