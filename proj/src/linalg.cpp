#include "diffeo/linalg.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace diffeo {

  Rational make_rational(long num, long den) {
    if (den == 0) {
      throw std::invalid_argument("rational with zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  RatMat::RatMat(std::size_t rows, std::size_t cols)
      : _rows(rows), _cols(cols), _data(rows * cols, Rational(0)) {}

  RatMat::RatMat(std::initializer_list<std::initializer_list<long>> rows)
      : _rows(rows.size()), _cols(rows.size() == 0 ? 0 : rows.begin()->size()) {
    _data.reserve(_rows * _cols);
    for (auto const& r : rows) {
      if (r.size() != _cols) {
        throw std::invalid_argument("ragged matrix literal");
      }
      for (long v : r) {
        _data.emplace_back(v);
      }
    }
  }

  RatMat RatMat::identity(std::size_t n) {
    RatMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, i) = 1;
    }
    return m;
  }

  RatMat RatMat::column(std::vector<Rational> const& entries) {
    RatMat m(entries.size(), 1);
    for (std::size_t i = 0; i < entries.size(); ++i) {
      m(i, 0) = entries[i];
    }
    return m;
  }

  RatMat RatMat::row(std::vector<Rational> const& entries) {
    RatMat m(1, entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      m(0, i) = entries[i];
    }
    return m;
  }

  bool RatMat::is_zero() const {
    for (auto const& x : _data) {
      if (sgn(x) != 0) {
        return false;
      }
    }
    return true;
  }

  bool RatMat::is_identity() const {
    return _rows == _cols && *this == identity(_rows);
  }

  RatMat RatMat::transpose() const {
    RatMat t(_cols, _rows);
    for (std::size_t r = 0; r < _rows; ++r) {
      for (std::size_t c = 0; c < _cols; ++c) {
        t(c, r) = (*this)(r, c);
      }
    }
    return t;
  }

  RatMat RatMat::col_block(std::size_t first, std::size_t count) const {
    if (first + count > _cols) {
      throw std::out_of_range("column block out of range");
    }
    RatMat b(_rows, count);
    for (std::size_t r = 0; r < _rows; ++r) {
      for (std::size_t c = 0; c < count; ++c) {
        b(r, c) = (*this)(r, first + c);
      }
    }
    return b;
  }

  RatMat RatMat::row_block(std::size_t first, std::size_t count) const {
    if (first + count > _rows) {
      throw std::out_of_range("row block out of range");
    }
    RatMat b(count, _cols);
    for (std::size_t r = 0; r < count; ++r) {
      for (std::size_t c = 0; c < _cols; ++c) {
        b(r, c) = (*this)(first + r, c);
      }
    }
    return b;
  }

  RatMat& RatMat::operator+=(RatMat const& other) {
    if (_rows != other._rows || _cols != other._cols) {
      throw std::invalid_argument("matrix sum: shape mismatch");
    }
    for (std::size_t i = 0; i < _data.size(); ++i) {
      _data[i] += other._data[i];
    }
    return *this;
  }

  RatMat& RatMat::operator-=(RatMat const& other) {
    if (_rows != other._rows || _cols != other._cols) {
      throw std::invalid_argument("matrix difference: shape mismatch");
    }
    for (std::size_t i = 0; i < _data.size(); ++i) {
      _data[i] -= other._data[i];
    }
    return *this;
  }

  RatMat& RatMat::operator*=(Rational const& scalar) {
    for (auto& x : _data) {
      x *= scalar;
    }
    return *this;
  }

  bool operator==(RatMat const& a, RatMat const& b) {
    return a._rows == b._rows && a._cols == b._cols && a._data == b._data;
  }

  std::string RatMat::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t r = 0; r < _rows; ++r) {
      os << (r == 0 ? "[" : ", [");
      for (std::size_t c = 0; c < _cols; ++c) {
        os << (c == 0 ? "" : ", ") << (*this)(r, c).get_str();
      }
      os << "]";
    }
    os << "] (" << _rows << "x" << _cols << ")";
    return os.str();
  }

  RatMat operator*(RatMat const& a, RatMat const& b) {
    if (a.cols() != b.rows()) {
      throw std::invalid_argument("matrix product: " + std::to_string(a.rows())
                                  + "x" + std::to_string(a.cols()) + " times "
                                  + std::to_string(b.rows()) + "x"
                                  + std::to_string(b.cols()));
    }
    RatMat p(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (sgn(a(i, k)) == 0) {
          continue;
        }
        for (std::size_t j = 0; j < b.cols(); ++j) {
          p(i, j) += a(i, k) * b(k, j);
        }
      }
    }
    return p;
  }

  RatMat operator+(RatMat a, RatMat const& b) {
    a += b;
    return a;
  }

  RatMat operator-(RatMat a, RatMat const& b) {
    a -= b;
    return a;
  }

  RatMat operator*(Rational const& s, RatMat a) {
    a *= s;
    return a;
  }

  RatMat hstack(RatMat const& a, RatMat const& b) {
    return hstack(std::vector<RatMat>{a, b}, a.rows());
  }

  RatMat vstack(RatMat const& a, RatMat const& b) {
    if (a.cols() != b.cols()) {
      throw std::invalid_argument("vstack: column counts differ");
    }
    RatMat s(a.rows() + b.rows(), a.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
      for (std::size_t c = 0; c < a.cols(); ++c) {
        s(r, c) = a(r, c);
      }
    }
    for (std::size_t r = 0; r < b.rows(); ++r) {
      for (std::size_t c = 0; c < b.cols(); ++c) {
        s(a.rows() + r, c) = b(r, c);
      }
    }
    return s;
  }

  RatMat hstack(std::vector<RatMat> const& blocks, std::size_t rows) {
    std::size_t cols = 0;
    for (auto const& b : blocks) {
      if (b.rows() != rows) {
        throw std::invalid_argument("hstack: row counts differ");
      }
      cols += b.cols();
    }
    RatMat s(rows, cols);
    std::size_t offset = 0;
    for (auto const& b : blocks) {
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < b.cols(); ++c) {
          s(r, offset + c) = b(r, c);
        }
      }
      offset += b.cols();
    }
    return s;
  }

  RatMat block_diagonal(std::vector<RatMat> const& blocks) {
    std::size_t rows = 0, cols = 0;
    for (auto const& b : blocks) {
      rows += b.rows();
      cols += b.cols();
    }
    RatMat d(rows, cols);
    std::size_t r0 = 0, c0 = 0;
    for (auto const& b : blocks) {
      for (std::size_t r = 0; r < b.rows(); ++r) {
        for (std::size_t c = 0; c < b.cols(); ++c) {
          d(r0 + r, c0 + c) = b(r, c);
        }
      }
      r0 += b.rows();
      c0 += b.cols();
    }
    return d;
  }

  RowEchelon rref(RatMat const& m) {
    RowEchelon  out{m, {}};
    RatMat&     a    = out.reduced;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < a.cols() && lead < a.rows(); ++col) {
      std::size_t p = lead;
      while (p < a.rows() && sgn(a(p, col)) == 0) {
        ++p;
      }
      if (p == a.rows()) {
        continue;
      }
      if (p != lead) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
          std::swap(a(p, c), a(lead, c));
        }
      }
      Rational inv = 1 / a(lead, col);
      for (std::size_t c = col; c < a.cols(); ++c) {
        a(lead, c) *= inv;
      }
      for (std::size_t r = 0; r < a.rows(); ++r) {
        if (r == lead || sgn(a(r, col)) == 0) {
          continue;
        }
        Rational f = a(r, col);
        for (std::size_t c = col; c < a.cols(); ++c) {
          a(r, c) -= f * a(lead, c);
        }
      }
      out.pivots.push_back(col);
      ++lead;
    }
    return out;
  }

  std::size_t rank(RatMat const& m) {
    return rref(m).pivots.size();
  }

  RatMat kernel_basis(RatMat const& m) {
    auto const        ech = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : ech.pivots) {
      is_pivot[p] = true;
    }
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!is_pivot[c]) {
        free.push_back(c);
      }
    }
    RatMat k(m.cols(), free.size());
    for (std::size_t j = 0; j < free.size(); ++j) {
      k(free[j], j) = 1;
      for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
        k(ech.pivots[r], j) = -ech.reduced(r, free[j]);
      }
    }
    return k;
  }

  QuotientPresentation cokernel_presentation(RatMat const& m) {
    QuotientPresentation q;
    q.ambient_dim = m.rows();

    // Rows of rref(mᵀ) span the relations in ambient coordinates.
    auto const ech = rref(m.transpose());

    std::vector<bool> is_pivot(q.ambient_dim, false);
    for (auto p : ech.pivots) {
      is_pivot[p] = true;
    }
    std::vector<std::size_t> index_in_quotient(q.ambient_dim, 0);
    for (std::size_t c = 0; c < q.ambient_dim; ++c) {
      if (!is_pivot[c]) {
        index_in_quotient[c] = q.kept.size();
        q.kept.push_back(c);
      }
    }
    q.quotient_dim = q.kept.size();

    q.relation_basis = RatMat(q.ambient_dim, ech.pivots.size());
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
      for (std::size_t c = 0; c < q.ambient_dim; ++c) {
        q.relation_basis(c, r) = ech.reduced(r, c);
      }
    }

    q.section = RatMat(q.ambient_dim, q.quotient_dim);
    for (std::size_t t = 0; t < q.quotient_dim; ++t) {
      q.section(q.kept[t], t) = 1;
    }

    // e_p (p a pivot of row r) is congruent to e_p - row_r, which only
    // involves kept coordinates.
    q.projection = RatMat(q.quotient_dim, q.ambient_dim);
    for (std::size_t t = 0; t < q.quotient_dim; ++t) {
      q.projection(t, q.kept[t]) = 1;
    }
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
      auto const p = ech.pivots[r];
      for (std::size_t c = 0; c < q.ambient_dim; ++c) {
        if (!is_pivot[c] && sgn(ech.reduced(r, c)) != 0) {
          q.projection(index_in_quotient[c], p) = -ech.reduced(r, c);
        }
      }
    }
    return q;
  }

  std::optional<RatMat> solve(RatMat const& a, RatMat const& b) {
    if (a.rows() != b.rows()) {
      throw std::invalid_argument("solve: row counts differ");
    }
    auto const  ech = rref(hstack(a, b));
    std::size_t n   = a.cols();
    RatMat      x(n, b.cols());
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
      auto const p = ech.pivots[r];
      if (p >= n) {
        return std::nullopt;
      }
      for (std::size_t c = 0; c < b.cols(); ++c) {
        x(p, c) = ech.reduced(r, n + c);
      }
    }
    return x;
  }

  std::optional<RatMat> inverse(RatMat const& m) {
    if (m.rows() != m.cols() || rank(m) != m.rows()) {
      return std::nullopt;
    }
    return solve(m, RatMat::identity(m.rows()));
  }

  bool is_injective(RatMat const& m) {
    return rank(m) == m.cols();
  }

  bool is_surjective(RatMat const& m) {
    return rank(m) == m.rows();
  }

}  // namespace diffeo
