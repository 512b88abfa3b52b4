#ifndef DIFFEO_MULTILINEAR_HPP_
#define DIFFEO_MULTILINEAR_HPP_

#include <cstddef>
#include <vector>

#include "diffeo/linalg.hpp"

namespace diffeo {

  using Subset = std::vector<std::size_t>;

  std::size_t binomial(std::size_t n, std::size_t k);

  // Basis of the k-th exterior power of Q^n: strictly increasing k-subsets of
  // {0, ..., n-1} in lexicographic order. Printed 1-based in text formats.
  class IndexBasis {
   public:
    IndexBasis(std::size_t n, std::size_t k);

    std::size_t ambient_dim() const noexcept { return _n; }
    std::size_t degree() const noexcept { return _k; }
    std::size_t size() const noexcept { return _subsets.size(); }

    Subset const& operator[](std::size_t i) const { return _subsets[i]; }
    auto          begin() const { return _subsets.begin(); }
    auto          end() const { return _subsets.end(); }

    // Position of a strictly increasing subset; throws if absent.
    std::size_t index_of(Subset const& s) const;

   private:
    std::size_t         _n;
    std::size_t         _k;
    std::vector<Subset> _subsets;
  };

  // Matrix of the k-th exterior power of a in lexicographic wedge bases; entry
  // (J, I) is the minor of a on rows J and columns I.
  RatMat exterior_power_map(RatMat const& a, std::size_t k);

  Rational determinant(RatMat const& a);

  // Kronecker product; e_i ⊗ e_j sits at index i * dim(second) + j.
  RatMat tensor_product_map(RatMat const& a, RatMat const& b);

  RatMat direct_sum_map(RatMat const& a, RatMat const& b);

  // Matrix of the dual map a* : W* -> V* in dual bases.
  RatMat dual_map(RatMat const& a);

  // Hom(V, W) is vectorised column-major: the matrix entry (w, v) sits at
  // index v * dim W + w.
  RatMat vectorize(RatMat const& hom);
  RatMat unvectorize(RatMat const& column, std::size_t rows, std::size_t cols);

  // For f : V' -> V and g : W -> W', the induced map Hom(V, W) -> Hom(V', W'),
  // phi |-> g phi f, on vectorised Homs.
  RatMat hom_map(RatMat const& f, RatMat const& g);

  struct HomShape {
    std::size_t p;  // dim V
    std::size_t q;  // dim W
    std::size_t r;  // dim Z
  };

  // A map V ⊗ W -> Z (r × pq) to the adjoint V -> Hom(W, Z) (qr × p).
  RatMat curry_hom(HomShape shape, RatMat const& t);
  RatMat uncurry_hom(HomShape shape, RatMat const& c);

  // Permutation Z ⊗ (V ⊕ W) -> (Z ⊗ V) ⊕ (Z ⊗ W), with dim V = p, dim W = q,
  // dim Z = r.
  RatMat distributivity_iso(std::size_t p, std::size_t q, std::size_t r);

}  // namespace diffeo

#endif  // DIFFEO_MULTILINEAR_HPP_
