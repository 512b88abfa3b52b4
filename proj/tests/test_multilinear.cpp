#include "doctest.h"

#include "diffeo/multilinear.hpp"
#include "support.hpp"

using namespace diffeo;

TEST_CASE("IndexBasis is lexicographic") {
  IndexBasis b(4, 2);
  CHECK(b.size() == 6);
  CHECK(b[0] == Subset{0, 1});
  CHECK(b[1] == Subset{0, 2});
  CHECK(b[5] == Subset{2, 3});
  CHECK(b.index_of({1, 3}) == 4);
  CHECK(IndexBasis(2, 3).size() == 0);
  CHECK(IndexBasis(0, 0).size() == 1);
  CHECK_THROWS_AS(b.index_of({3, 1}), std::out_of_range);
}

TEST_CASE("exterior_power_map") {
  RatMat minus_id{{-1, 0}, {0, -1}};
  CHECK(exterior_power_map(minus_id, 2) == RatMat{{1}});
  CHECK(exterior_power_map(RatMat{{1, 2}, {3, 4}}, 2) == RatMat{{-2}});
  CHECK(exterior_power_map(RatMat{{1, 2}, {3, 4}}, 0) == RatMat{{1}});
  CHECK(exterior_power_map(RatMat{{1, 2}, {3, 4}}, 1) == RatMat{{1, 2}, {3, 4}});
  // Zero-dimensional spaces: the 0-th power is still the line.
  CHECK(exterior_power_map(RatMat(1, 0), 0) == RatMat{{1}});
  CHECK(exterior_power_map(RatMat(1, 0), 1).cols() == 0);
  // A 1x3 matrix has no 2x2 minors.
  auto e = exterior_power_map(RatMat{{1, 2, 3}}, 2);
  CHECK(e.rows() == 0);
  CHECK(e.cols() == 3);
}

TEST_CASE("top exterior power is the determinant") {
  using namespace diffeo::testing;
  for (int trial = 0; trial < 50; ++trial) {
    auto n = static_cast<std::size_t>(uniform(1, 4));
    auto a = random_matrix(n, n);
    CHECK(exterior_power_map(a, n) == RatMat::row({determinant(a)}));
  }
}

TEST_CASE("tensor_product_map") {
  CHECK(tensor_product_map(RatMat::identity(2), RatMat::identity(3)) == RatMat::identity(6));
  CHECK(tensor_product_map(RatMat{{2}}, RatMat{{3}}) == RatMat{{6}});
  auto t = tensor_product_map(RatMat{{1, 0}, {0, 0}}, RatMat{{0, 1}, {0, 0}});
  RatMat expected(4, 4);
  expected(0, 1) = 1;  // e0 ⊗ e0 <- e0 ⊗ e1
  CHECK(t == expected);
  CHECK(rank(t) == 1);
}

TEST_CASE("curry_hom") {
  CHECK(curry_hom({1, 1, 1}, RatMat{{5}}) == RatMat{{5}});
  CHECK(curry_hom({2, 3, 2}, RatMat(2, 6)).is_zero());

  RatMat t{{1, 2, 3, 4}};
  auto   c = curry_hom({2, 2, 1}, t);
  CHECK(c.rows() == 2);
  CHECK(c.cols() == 2);
  // Enumerate basis pairs: t(v ⊗ w) = entry at v*2 + w; the curried map sends
  // v to the functional w |-> t(v ⊗ w).
  for (std::size_t v = 0; v < 2; ++v) {
    for (std::size_t w = 0; w < 2; ++w) {
      CHECK(c(w, v) == t(0, v * 2 + w));
    }
  }
  CHECK(uncurry_hom({2, 2, 1}, c) == t);
  CHECK_THROWS_WITH_AS(curry_hom({2, 2, 1}, RatMat(1, 3)), doctest::Contains("expected 1x4"),
                       std::invalid_argument);
}

TEST_CASE("curried map evaluates like the original") {
  using namespace diffeo::testing;
  for (int trial = 0; trial < 30; ++trial) {
    HomShape s{static_cast<std::size_t>(uniform(1, 3)), static_cast<std::size_t>(uniform(1, 3)),
               static_cast<std::size_t>(uniform(1, 3))};
    auto t = random_matrix(s.r, s.p * s.q);
    auto c = curry_hom(s, t);
    auto v = random_matrix(s.p, 1);
    auto w = random_matrix(s.q, 1);
    // t(v ⊗ w) == (curry(t) v)(w)
    auto lhs = t * tensor_product_map(v, w);
    auto hom = unvectorize(c * v, s.r, s.q);
    CHECK(lhs == hom * w);
  }
}

TEST_CASE("hom_map matches composition") {
  using namespace diffeo::testing;
  for (int trial = 0; trial < 30; ++trial) {
    auto f   = random_matrix(2, 3);  // V' = Q^3 -> V = Q^2
    auto g   = random_matrix(4, 2);  // W = Q^2 -> W' = Q^4
    auto phi = random_matrix(2, 2);  // V -> W
    CHECK(hom_map(f, g) * vectorize(phi) == vectorize(g * phi * f));
  }
}

TEST_CASE("distributivity is a natural permutation") {
  auto d = distributivity_iso(2, 1, 3);
  CHECK(d.rows() == 9);
  CHECK(rank(d) == 9);
  using namespace diffeo::testing;
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_matrix(2, 2);
    auto b = random_matrix(1, 1);
    auto c = random_matrix(3, 3);
    auto lhs = d * tensor_product_map(c, direct_sum_map(a, b));
    auto rhs = direct_sum_map(tensor_product_map(c, a), tensor_product_map(c, b)) * d;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("fibre dimension laws") {
  for (std::size_t n = 0; n <= 6; ++n) {
    for (std::size_t k = 0; k <= n + 2; ++k) {
      CHECK(exterior_power_map(RatMat::identity(n), k).rows() == binomial(n, k));
    }
  }
  CHECK(direct_sum_map(RatMat::identity(2), RatMat::identity(3)).rows() == 5);
  CHECK(hom_map(RatMat::identity(2), RatMat::identity(3)).rows() == 6);
  CHECK(dual_map(RatMat{{1, 2, 3}}).rows() == 3);
}
