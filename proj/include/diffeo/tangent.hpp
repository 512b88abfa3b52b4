#ifndef DIFFEO_TANGENT_HPP_
#define DIFFEO_TANGENT_HPP_

#include <cstddef>
#include <vector>

#include "diffeo/linalg.hpp"
#include "diffeo/presentation.hpp"

namespace diffeo {

  struct DiagramArrow {
    std::size_t src = 0;
    std::size_t dst = 0;
    RatMat      map;  // dim(dst) × dim(src)
  };

  // A diagram of finite-dimensional vector spaces. Identities are implicit.
  struct VectDiagram {
    std::vector<std::size_t>  objects;
    std::vector<DiagramArrow> arrows;

    std::size_t total_dim() const;
    // Start of each object's block in the direct sum.
    std::vector<std::size_t> offsets() const;
  };

  // Throws std::invalid_argument on shape mismatch.
  void check_diagram(VectDiagram const& d);

  // The colimit is the direct sum of the objects modulo the relations
  // ι_dst(A v) - ι_src(v). Its basis is the set of direct-sum coordinates not
  // chosen as pivots when reducing the relations (lowest coordinates are
  // eliminated first), so cocone matrices are reproducible.
  struct ColimitResult {
    std::size_t              dim = 0;
    std::vector<RatMat>      cocone;   // dim × objects[i]
    std::vector<std::size_t> offsets;  // block offsets in the direct sum
    QuotientPresentation     relations;
  };

  ColimitResult vect_colimit(VectDiagram const& d);

  struct LimitResult {
    std::size_t         dim = 0;
    std::vector<RatMat> cone;  // objects[i] × dim
    RatMat              basis;  // direct-sum coordinates of a basis of the limit
  };

  LimitResult vect_limit(VectDiagram const& d);

  // The unique u : colim -> W with u · cocone_i = legs[i] for all i, or
  // nullopt when the legs do not form a cocone.
  std::optional<RatMat> factor_through_colimit(ColimitResult const&       colim,
                                               std::vector<RatMat> const& legs,
                                               std::size_t                target_dim);

  // Like factor_through_colimit, but a failure means a bug upstream (a wrong
  // Jacobian or sign convention) and throws std::logic_error.
  RatMat descend(ColimitResult const&       colim,
                 std::vector<RatMat> const& legs,
                 std::size_t                target_dim,
                 char const*                what);

  // The k-th exterior power of the tangent functor on the fragment: objects
  // C(n_i, k), arrows the k-th exterior power of each arrow's linear part.
  VectDiagram apply_fibre_functor(GermPresentation const& p, std::size_t k);

  // Colimit of the tangent diagram at the marked point.
  ColimitResult tangent_space(GermPresentation const& p);

  // Colimit of apply_fibre_functor(p, k), the fibre of T^k X.
  ColimitResult higher_tangent_space(GermPresentation const& p, std::size_t k);

  // ρ : T^k_x X -> ⋀^k T_x X, a C(dim T, k) × dim T^k matrix. On chart i it is
  // ⋀^k(cocone_i) pushed through the T^k colimit; the descent is checked.
  RatMat rho_map(GermPresentation const& p, std::size_t k);

  struct Pushforward {
    RatMat higher;    // T^k fibre of source -> T^k fibre of target
    RatMat exterior;  // ⋀^k T of source -> ⋀^k T of target
    RatMat tangent;   // T of source -> T of target
  };

  // Induced maps on fibres at the marked points. Both squares with ρ are
  // checked to commute.
  Pushforward pushforward_map(PresentedMap const& m, std::size_t k);

  // Linear map T_x X -> Q^N induced by the ambient embeddings.
  RatMat ambient_pushforward(GermPresentation const& p);

}  // namespace diffeo

#endif  // DIFFEO_TANGENT_HPP_
