#ifndef DIFFEO_PRESENTATION_HPP_
#define DIFFEO_PRESENTATION_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "diffeo/symcalc.hpp"

namespace diffeo {

  // A pointed plot (U, 0) -> (X, x) with U = Q^dim.
  struct Chart {
    std::string id;
    std::size_t dim = 0;

    friend bool operator==(Chart const&, Chart const&) = default;
  };

  // A pointed germ src -> dst commuting over X.
  struct Arrow {
    std::string id;
    std::size_t src = 0;
    std::size_t dst = 0;
    PolyMap     map;

    friend bool operator==(Arrow const&, Arrow const&) = default;
  };

  // One pointed map per chart into Q^dim, commuting with every arrow.
  struct Ambient {
    std::size_t          dim = 0;
    std::vector<PolyMap> embeds;

    friend bool operator==(Ambient const&, Ambient const&) = default;
  };

  // Finite fragment of the germ category of X at a point. Identity arrows are
  // implicit and never listed.
  struct GermPresentation {
    std::string            name;
    std::vector<Chart>     charts;
    std::vector<Arrow>     arrows;
    std::optional<Ambient> ambient;

    std::optional<std::size_t> find_chart(std::string const& id) const;
    std::size_t                chart_index(std::string const& id) const;
    std::size_t                max_chart_dim() const;

    std::size_t add_chart(std::string id, std::size_t dim);
    void add_arrow(std::string id, std::string const& src, std::string const& dst, PolyMap map);

    friend bool operator==(GermPresentation const&, GermPresentation const&) = default;
  };

  struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const noexcept { return violations.empty(); }
    std::string to_string() const;
  };

  // Checks chart ids, arrow shapes, pointedness, connectivity of the chart
  // graph (every fragment is joined through the constant plot), and the
  // ambient identity embed[dst] ∘ arrow = embed[src].
  ValidationReport validate_presentation(GermPresentation const& p);

  // Throws std::invalid_argument carrying the report if p is invalid.
  void require_valid(GermPresentation const& p);

  // Charts meet only at the marked point: every arrow leaves a 0-dimensional
  // chart.
  bool is_wedge_type(GermPresentation const& p);

  // An arrow of the composition closure; id is a composite name such as
  // "b.a" (b after a) or "id_x".
  struct GermArrow {
    std::string id;
    std::size_t src = 0;
    std::size_t dst = 0;
    PolyMap     map;
  };

  struct ClosureResult {
    std::vector<GermArrow> arrows;  // identities first, then by word length
    bool                   closed = false;
  };

  // All composites of at most `depth` generators, deduplicated by exact
  // polynomial equality. closed is true iff composites of length depth + 1
  // add nothing new.
  ClosureResult composition_closure(GermPresentation const& p, std::size_t depth);

  enum class Verdict { no, yes, unknown };

  std::string to_string(Verdict v);

  struct FilterReport {
    Verdict                  weakly_filtered = Verdict::unknown;
    Verdict                  filtered        = Verdict::unknown;
    bool                     closed          = false;
    std::size_t              arrow_count     = 0;
    std::vector<std::string> witnesses;  // why an answer is "no"
  };

  FilterReport filteredness(GermPresentation const& p, std::size_t depth);

  // A map of presented spaces: each source chart factors through a target
  // chart along a pointed germ.
  struct ChartImage {
    std::size_t target_chart = 0;
    PolyMap     map;
  };

  struct PresentedMap {
    GermPresentation        source;
    GermPresentation        target;
    std::vector<ChartImage> images;  // one per source chart
  };

  // Shapes, pointedness, and commutation with every source arrow a : i -> j:
  // image_j ∘ a must equal h ∘ image_i for h the identity (same target chart)
  // or some composite of target arrows of length at most 3.
  ValidationReport validate_map(PresentedMap const& m);

}  // namespace diffeo

#endif  // DIFFEO_PRESENTATION_HPP_
