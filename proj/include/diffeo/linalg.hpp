#ifndef DIFFEO_LINALG_HPP_
#define DIFFEO_LINALG_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace diffeo {

  // Canonical arbitrary-precision rational (reduced, positive denominator).
  using Rational = mpq_class;

  Rational make_rational(long num, long den = 1);

  // Dense row-major matrix over Q. Zero rows or zero columns are legal and
  // stand for maps out of / into the zero space.
  class RatMat {
   public:
    RatMat() = default;
    RatMat(std::size_t rows, std::size_t cols);
    RatMat(std::initializer_list<std::initializer_list<long>> rows);

    static RatMat identity(std::size_t n);
    static RatMat zero(std::size_t rows, std::size_t cols) {
      return RatMat(rows, cols);
    }
    static RatMat column(std::vector<Rational> const& entries);
    static RatMat row(std::vector<Rational> const& entries);

    std::size_t rows() const noexcept { return _rows; }
    std::size_t cols() const noexcept { return _cols; }

    Rational& operator()(std::size_t r, std::size_t c) {
      return _data[r * _cols + c];
    }
    Rational const& operator()(std::size_t r, std::size_t c) const {
      return _data[r * _cols + c];
    }

    bool is_zero() const;
    bool is_identity() const;

    RatMat transpose() const;
    RatMat col_block(std::size_t first, std::size_t count) const;
    RatMat row_block(std::size_t first, std::size_t count) const;

    RatMat& operator+=(RatMat const& other);
    RatMat& operator-=(RatMat const& other);
    RatMat& operator*=(Rational const& scalar);

    friend bool operator==(RatMat const& a, RatMat const& b);
    friend bool operator!=(RatMat const& a, RatMat const& b) {
      return !(a == b);
    }

    std::string to_string() const;

   private:
    std::size_t           _rows = 0;
    std::size_t           _cols = 0;
    std::vector<Rational> _data;
  };

  RatMat operator*(RatMat const& a, RatMat const& b);
  RatMat operator+(RatMat a, RatMat const& b);
  RatMat operator-(RatMat a, RatMat const& b);
  RatMat operator*(Rational const& s, RatMat a);

  // [a | b], [a ; b]
  RatMat hstack(RatMat const& a, RatMat const& b);
  RatMat vstack(RatMat const& a, RatMat const& b);
  RatMat hstack(std::vector<RatMat> const& blocks, std::size_t rows);
  RatMat block_diagonal(std::vector<RatMat> const& blocks);

  struct RowEchelon {
    RatMat                   reduced;  // reduced row echelon form
    std::vector<std::size_t> pivots;   // pivot column of each nonzero row
  };

  // Gauss-Jordan elimination; the pivot of each column is the first nonzero
  // entry at or below the current row.
  RowEchelon  rref(RatMat const& m);
  std::size_t rank(RatMat const& m);

  // Columns form a basis of {v : m v = 0}, one per free column of rref(m).
  RatMat kernel_basis(RatMat const& m);

  // Quotient of Q^ambient_dim by the column span of some relation matrix.
  // Quotient coordinates are the non-pivot coordinates of rref(relationsᵀ).
  struct QuotientPresentation {
    std::size_t              ambient_dim = 0;
    RatMat                   relation_basis;  // ambient_dim × rank
    std::size_t              quotient_dim = 0;
    RatMat                   projection;  // quotient_dim × ambient_dim
    RatMat                   section;     // ambient_dim × quotient_dim
    std::vector<std::size_t> kept;        // ambient coordinates kept
  };

  QuotientPresentation cokernel_presentation(RatMat const& m);

  // Some x with a x = b, or nullopt if the system is inconsistent.
  std::optional<RatMat> solve(RatMat const& a, RatMat const& b);

  // Two-sided inverse of a square invertible matrix.
  std::optional<RatMat> inverse(RatMat const& m);

  bool is_injective(RatMat const& m);
  bool is_surjective(RatMat const& m);

}  // namespace diffeo

#endif  // DIFFEO_LINALG_HPP_
