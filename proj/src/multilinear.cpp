#include "diffeo/multilinear.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace diffeo {

  namespace {
    std::string shape(std::size_t r, std::size_t c) {
      return std::to_string(r) + "x" + std::to_string(c);
    }

    void subsets_from(std::size_t          start,
                      std::size_t          n,
                      std::size_t          k,
                      Subset&              current,
                      std::vector<Subset>& out) {
      if (current.size() == k) {
        out.push_back(current);
        return;
      }
      for (std::size_t i = start; i + (k - current.size()) <= n; ++i) {
        current.push_back(i);
        subsets_from(i + 1, n, k, current, out);
        current.pop_back();
      }
    }
  }  // namespace

  std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) {
      return 0;
    }
    std::size_t result = 1;
    for (std::size_t i = 1; i <= k; ++i) {
      result = result * (n - k + i) / i;
    }
    return result;
  }

  IndexBasis::IndexBasis(std::size_t n, std::size_t k) : _n(n), _k(k) {
    Subset current;
    if (k <= n) {
      subsets_from(0, n, k, current, _subsets);
    }
  }

  std::size_t IndexBasis::index_of(Subset const& s) const {
    auto it = std::lower_bound(_subsets.begin(), _subsets.end(), s);
    if (it == _subsets.end() || *it != s) {
      throw std::out_of_range("subset is not a basis element");
    }
    return static_cast<std::size_t>(it - _subsets.begin());
  }

  Rational determinant(RatMat const& a) {
    if (a.rows() != a.cols()) {
      throw std::invalid_argument("determinant of non-square " + shape(a.rows(), a.cols()));
    }
    RatMat      m = a;
    std::size_t n = m.rows();
    Rational    det(1);
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (p < n && sgn(m(p, c)) == 0) {
        ++p;
      }
      if (p == n) {
        return Rational(0);
      }
      if (p != c) {
        for (std::size_t j = 0; j < n; ++j) {
          std::swap(m(p, j), m(c, j));
        }
        det = -det;
      }
      det *= m(c, c);
      for (std::size_t r = c + 1; r < n; ++r) {
        if (sgn(m(r, c)) == 0) {
          continue;
        }
        Rational f = m(r, c) / m(c, c);
        for (std::size_t j = c; j < n; ++j) {
          m(r, j) -= f * m(c, j);
        }
      }
    }
    return det;
  }

  RatMat exterior_power_map(RatMat const& a, std::size_t k) {
    IndexBasis const rows(a.rows(), k);
    IndexBasis const cols(a.cols(), k);
    RatMat           out(rows.size(), cols.size());
    RatMat           minor(k, k);
    for (std::size_t J = 0; J < rows.size(); ++J) {
      for (std::size_t I = 0; I < cols.size(); ++I) {
        for (std::size_t r = 0; r < k; ++r) {
          for (std::size_t c = 0; c < k; ++c) {
            minor(r, c) = a(rows[J][r], cols[I][c]);
          }
        }
        out(J, I) = determinant(minor);
      }
    }
    return out;
  }

  RatMat tensor_product_map(RatMat const& a, RatMat const& b) {
    RatMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) {
        if (sgn(a(i, j)) == 0) {
          continue;
        }
        for (std::size_t k = 0; k < b.rows(); ++k) {
          for (std::size_t l = 0; l < b.cols(); ++l) {
            out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
          }
        }
      }
    }
    return out;
  }

  RatMat direct_sum_map(RatMat const& a, RatMat const& b) {
    return block_diagonal({a, b});
  }

  RatMat dual_map(RatMat const& a) {
    return a.transpose();
  }

  RatMat vectorize(RatMat const& hom) {
    RatMat v(hom.rows() * hom.cols(), 1);
    for (std::size_t c = 0; c < hom.cols(); ++c) {
      for (std::size_t r = 0; r < hom.rows(); ++r) {
        v(c * hom.rows() + r, 0) = hom(r, c);
      }
    }
    return v;
  }

  RatMat unvectorize(RatMat const& column, std::size_t rows, std::size_t cols) {
    if (column.cols() != 1 || column.rows() != rows * cols) {
      throw std::invalid_argument("unvectorize: expected " + shape(rows * cols, 1)
                                  + ", got " + shape(column.rows(), column.cols()));
    }
    RatMat m(rows, cols);
    for (std::size_t c = 0; c < cols; ++c) {
      for (std::size_t r = 0; r < rows; ++r) {
        m(r, c) = column(c * rows + r, 0);
      }
    }
    return m;
  }

  RatMat hom_map(RatMat const& f, RatMat const& g) {
    // vec(g phi f) = (fᵀ ⊗ g) vec(phi) for column-major vec.
    return tensor_product_map(f.transpose(), g);
  }

  RatMat curry_hom(HomShape s, RatMat const& t) {
    if (t.rows() != s.r || t.cols() != s.p * s.q) {
      throw std::invalid_argument("curry_hom: expected " + shape(s.r, s.p * s.q)
                                  + ", got " + shape(t.rows(), t.cols()));
    }
    RatMat c(s.q * s.r, s.p);
    for (std::size_t v = 0; v < s.p; ++v) {
      for (std::size_t w = 0; w < s.q; ++w) {
        for (std::size_t z = 0; z < s.r; ++z) {
          c(w * s.r + z, v) = t(z, v * s.q + w);
        }
      }
    }
    return c;
  }

  RatMat uncurry_hom(HomShape s, RatMat const& c) {
    if (c.rows() != s.q * s.r || c.cols() != s.p) {
      throw std::invalid_argument("uncurry_hom: expected " + shape(s.q * s.r, s.p)
                                  + ", got " + shape(c.rows(), c.cols()));
    }
    RatMat t(s.r, s.p * s.q);
    for (std::size_t v = 0; v < s.p; ++v) {
      for (std::size_t w = 0; w < s.q; ++w) {
        for (std::size_t z = 0; z < s.r; ++z) {
          t(z, v * s.q + w) = c(w * s.r + z, v);
        }
      }
    }
    return t;
  }

  RatMat distributivity_iso(std::size_t p, std::size_t q, std::size_t r) {
    std::size_t const n = r * (p + q);
    RatMat            m(n, n);
    for (std::size_t z = 0; z < r; ++z) {
      for (std::size_t x = 0; x < p + q; ++x) {
        std::size_t const src = z * (p + q) + x;
        std::size_t const dst = x < p ? z * p + x : r * p + z * q + (x - p);
        m(dst, src)           = 1;
      }
    }
    return m;
  }

}  // namespace diffeo
