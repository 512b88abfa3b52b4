#ifndef DIFFEO_FORMS_HPP_
#define DIFFEO_FORMS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "diffeo/presentation.hpp"
#include "diffeo/symcalc.hpp"
#include "diffeo/tangent.hpp"

namespace diffeo {

  // A candidate element of Ω^k(X): one k-form per chart.
  struct PresentedForm {
    std::size_t           degree = 0;
    std::vector<PolyForm> components;

    static PresentedForm zero(GermPresentation const& p, std::size_t k);
  };

  // Throws std::invalid_argument unless w has one component of degree k on
  // each chart of p with matching domain dimension.
  void check_form_shape(GermPresentation const& p, PresentedForm const& w);

  struct CompatibilityVerdict {
    bool                       compatible = true;
    std::optional<std::size_t> failing_arrow;
    std::string                arrow_id;
    PolyForm                   residual;  // arrow^* ω_dst - ω_src

    std::string to_string() const;
  };

  // Compatible iff arrow^* ω_dst = ω_src for every arrow; the first failing
  // arrow (in presentation order) is reported with its residual.
  CompatibilityVerdict check_form_compatibility(GermPresentation const& p, PresentedForm const& w);

  // The same check restricted to arrows between charts of dimension n, where
  // n is the largest chart dimension and must equal the form degree.
  CompatibilityVerdict check_on_top_charts(GermPresentation const& p,
                                           PresentedForm const&    w,
                                           std::size_t             n);

  bool vanishes_at_point(PresentedForm const& w);

  // A linear functional on the T^k fibre, as a 1 × dim row.
  struct PointForm {
    std::size_t degree = 0;
    RatMat      values;
  };

  // Assembles the values at 0 of a compatible family into a functional on the
  // T^k fibre. Throws std::invalid_argument naming the failing arrow if w is
  // not compatible.
  PointForm form_at_point(GermPresentation const& p, PresentedForm const& w);

  // Chart-wise pullback of an ambient form along the embeddings.
  PresentedForm restrict_ambient_form(GermPresentation const& p, PolyForm const& ambient_form);

  // The value at the marked point of the ambient form, seen as a functional
  // on ⋀^k T_x X through the ambient pushforward: (⋀^k i_*)ᵀ applied to the
  // ambient value at 0. A 1 × C(dim T, k) row.
  RatMat tilde_form_at_point(GermPresentation const& p, PolyForm const& ambient_form);

  // Same, for a functional on ⋀^k T of the target of m (a 1 × C(dim T_y, k)
  // row) pulled back along the pushforward of m.
  RatMat tilde_form_at_point(PresentedMap const& m, RatMat const& target_functional, std::size_t k);

  // Transpose of rho_map: functionals on ⋀^k T -> functionals on T^k.
  RatMat rho_dual(GermPresentation const& p, std::size_t k);

  // Pullback of a family on m.target along m: the component on source chart
  // i is image_i^* ω_{target chart of i}.
  PresentedForm pullback_family(PresentedMap const& m, PresentedForm const& w);

  // Dimension of the span of the point values of a finite compatible family
  // in the dual of the T^k fibre. Throws naming the first incompatible member.
  std::size_t reachable_fibre_dim(GermPresentation const&           p,
                                  std::vector<PresentedForm> const& forms,
                                  std::size_t                       k);

  enum class BundleKind { tangent, cotangent };

  // Per-chart section data on a wedge-type presentation. For the tangent
  // bundle, values[i] maps chart i to coefficients in its frame d/ds_1, ...;
  // for the cotangent bundle, to coefficients of ds_1, ... .
  struct PresentedSection {
    BundleKind                           kind = BundleKind::tangent;
    std::vector<PolyMap>                 values;
    std::optional<std::vector<Rational>> point_functional;  // cotangent only
  };

  // A chart coordinate of the values at the marked point.
  struct SectionSlot {
    std::size_t chart     = 0;
    std::size_t component = 0;
  };

  struct SectionVerdict {
    bool valid = false;
    // Linear constraints on the stacked values at 0 (one row per equation,
    // columns ordered as `slots`); for the tangent case they are the
    // equalities of cocone images, for the cotangent case the conditions for
    // a functional to exist.
    RatMat                   constraints;
    std::vector<SectionSlot> slots;
    // Slots the constraint system forces to vanish.
    std::vector<SectionSlot> forced_zero;
    // Tangent: the common vector of T_x X. Cotangent: the functional ℓ.
    std::optional<RatMat> point_value;
    std::string           message;
  };

  SectionVerdict check_section(GermPresentation const& p, PresentedSection const& s);

}  // namespace diffeo

#endif  // DIFFEO_FORMS_HPP_
