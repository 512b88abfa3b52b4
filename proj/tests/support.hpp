#ifndef DIFFEO_TESTS_SUPPORT_HPP_
#define DIFFEO_TESTS_SUPPORT_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "diffeo/linalg.hpp"
#include "diffeo/symcalc.hpp"

namespace diffeo::testing {

  inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0x5eed'd1ffULL);
    return gen;
  }

  inline long uniform(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng());
  }

  // Small rationals, zero with probability about 1/3.
  inline Rational random_rational() {
    long num = uniform(-3, 3);
    long den = uniform(1, 3);
    return make_rational(num, den);
  }

  inline RatMat random_matrix(std::size_t rows, std::size_t cols) {
    RatMat m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        m(r, c) = random_rational();
      }
    }
    return m;
  }

  // Random matrix of rank at most `rank`, as a product of thin factors.
  inline RatMat random_low_rank(std::size_t rows, std::size_t cols, std::size_t rank) {
    return random_matrix(rows, rank) * random_matrix(rank, cols);
  }

  inline Poly random_poly(std::size_t nvars, unsigned max_degree, std::size_t terms) {
    Poly p(nvars);
    for (std::size_t t = 0; t < terms; ++t) {
      Monomial m(nvars, 0);
      unsigned budget = static_cast<unsigned>(uniform(0, max_degree));
      for (unsigned b = 0; b < budget && nvars > 0; ++b) {
        m[static_cast<std::size_t>(uniform(0, static_cast<long>(nvars) - 1))] += 1;
      }
      p.add_term(m, random_rational());
    }
    return p;
  }

  inline Poly random_pointed_poly(std::size_t nvars, unsigned max_degree, std::size_t terms) {
    Poly p = random_poly(nvars, max_degree, terms);
    p.add_term(Monomial(nvars, 0), -p.constant_term());
    return p;
  }

  inline PolyMap random_map(std::size_t source, std::size_t target, bool pointed,
                            unsigned max_degree = 2) {
    std::vector<Poly> comps;
    for (std::size_t i = 0; i < target; ++i) {
      comps.push_back(pointed ? random_pointed_poly(source, max_degree, 3)
                              : random_poly(source, max_degree, 3));
    }
    return PolyMap(source, std::move(comps));
  }

  inline PolyForm random_form(std::size_t n, std::size_t k, unsigned max_degree = 2) {
    std::vector<Poly> coeffs;
    for (std::size_t i = 0; i < binomial(n, k); ++i) {
      coeffs.push_back(random_poly(n, max_degree, 2));
    }
    return PolyForm(n, k, std::move(coeffs));
  }

}  // namespace diffeo::testing

#endif  // DIFFEO_TESTS_SUPPORT_HPP_
