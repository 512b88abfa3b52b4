#ifndef DIFFEO_CATALOG_HPP_
#define DIFFEO_CATALOG_HPP_

#include <map>
#include <string>
#include <vector>

#include "diffeo/presentation.hpp"

namespace diffeo {

  // A value every build must reproduce, with a short note on where it comes
  // from.
  struct Oracle {
    std::string quantity;  // one of known_quantities()
    std::string expected;
    std::string note;
  };

  using CatalogParams = std::map<std::string, long>;

  struct CatalogEntry {
    std::string         name;
    CatalogParams       params;
    GermPresentation    presentation;
    bool                wedge_type = false;
    std::vector<Oracle> oracles;
  };

  std::vector<std::string> catalog_names();

  // Known spaces and their parameters (defaults in brackets):
  //   euclidean        n [2]        one chart Q^n, identity ambient
  //   wedge_lines      m [2], axis [0]
  //                    m lines glued at the origin; axis = i > 0 re-marks the
  //                    space at a point of line i away from the origin
  //   axes_subset      -            wedge_lines(2) plus ambient Q^2 embedding
  //   z2_quotient      -            Q^2 / (v ~ -v) at the origin
  //   spaghetti        m [3]        lines t |-> (t, k t), k = 1..m, in Q^2
  // Throws std::invalid_argument on unknown names, parameters, or ranges.
  CatalogEntry build_catalog_space(std::string const& name, CatalogParams const& params = {});

  // "dim T", "dim T^k", "dim wedge^k T", "weakly_filtered", "filtered",
  // "rho^k injective", "rho^k surjective" for k = 0..4.
  std::vector<std::string> known_quantities();
  std::string              compute_quantity(GermPresentation const& p, std::string const& quantity);

  // Inclusion of a space with ambient data into euclidean(ambient dim).
  PresentedMap ambient_inclusion(GermPresentation const& p);

  // The quotient euclidean(2) -> z2_quotient.
  PresentedMap z2_quotient_map();

  // Identity map of a valid presentation.
  PresentedMap identity_map(GermPresentation const& p);

}  // namespace diffeo

#endif  // DIFFEO_CATALOG_HPP_
