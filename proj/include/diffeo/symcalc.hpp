#ifndef DIFFEO_SYMCALC_HPP_
#define DIFFEO_SYMCALC_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "diffeo/linalg.hpp"
#include "diffeo/multilinear.hpp"

namespace diffeo {

  using Monomial = std::vector<unsigned>;

  // Sparse multivariate polynomial over Q in the positional variables
  // s1, ..., sn. Zero coefficients are never stored, so structural equality
  // is polynomial equality.
  class Poly {
   public:
    explicit Poly(std::size_t nvars = 0) : _nvars(nvars) {}

    static Poly constant(std::size_t nvars, Rational const& c);
    // The variable s_{i+1}.
    static Poly variable(std::size_t nvars, std::size_t i);
    static Poly monomial(Monomial exponents, Rational const& c);

    std::size_t nvars() const noexcept { return _nvars; }
    bool        is_zero() const noexcept { return _terms.empty(); }
    bool        is_constant() const;
    std::size_t total_degree() const;

    std::map<Monomial, Rational> const& terms() const noexcept {
      return _terms;
    }
    Rational coefficient(Monomial const& m) const;
    Rational constant_term() const;

    // Adds c * s^m.
    void add_term(Monomial const& m, Rational const& c);

    Poly& operator+=(Poly const& other);
    Poly& operator-=(Poly const& other);
    Poly& operator*=(Rational const& c);

    Poly operator-() const;
    Poly pow(unsigned e) const;
    Poly derivative(std::size_t var) const;

    // Replaces s_{i+1} by values[i]; all values share one variable count.
    Poly substitute(std::vector<Poly> const& values, std::size_t nvars) const;
    Rational evaluate(std::vector<Rational> const& point) const;

    // Terms in decreasing (total degree, exponent) order, e.g.
    // "3/2*s1^2*s2 - s1 + 1". Re-parses to the same polynomial.
    std::string to_string() const;

    friend bool operator==(Poly const& a, Poly const& b) {
      return a._nvars == b._nvars && a._terms == b._terms;
    }
    friend bool operator!=(Poly const& a, Poly const& b) {
      return !(a == b);
    }
    friend bool operator<(Poly const& a, Poly const& b);

   private:
    std::size_t                  _nvars;
    std::map<Monomial, Rational> _terms;
  };

  Poly operator+(Poly a, Poly const& b);
  Poly operator-(Poly a, Poly const& b);
  Poly operator*(Poly const& a, Poly const& b);
  Poly operator*(Rational const& c, Poly a);

  // Polynomial map Q^source_dim -> Q^target_dim.
  class PolyMap {
   public:
    PolyMap() = default;
    PolyMap(std::size_t source_dim, std::vector<Poly> components);

    static PolyMap identity(std::size_t n);
    static PolyMap zero(std::size_t source_dim, std::size_t target_dim);
    static PolyMap linear(RatMat const& a);

    std::size_t source_dim() const noexcept { return _source_dim; }
    std::size_t target_dim() const noexcept { return _components.size(); }

    std::vector<Poly> const& components() const noexcept {
      return _components;
    }
    Poly const& operator[](std::size_t i) const { return _components[i]; }

    // All constant terms vanish: 0 |-> 0.
    bool is_pointed() const;

    std::vector<Rational> evaluate(std::vector<Rational> const& point) const;
    std::string           to_string() const;

    friend bool operator==(PolyMap const& a, PolyMap const& b) {
      return a._source_dim == b._source_dim && a._components == b._components;
    }
    friend bool operator!=(PolyMap const& a, PolyMap const& b) {
      return !(a == b);
    }
    friend bool operator<(PolyMap const& a, PolyMap const& b);

   private:
    std::size_t       _source_dim = 0;
    std::vector<Poly> _components;
  };

  // f ∘ g. Requires g.target_dim() == f.source_dim().
  PolyMap compose_maps(PolyMap const& f, PolyMap const& g);

  using PolyMatrix = std::vector<std::vector<Poly>>;

  PolyMatrix jacobian(PolyMap const& f);
  // Linear part of a pointed map; throws std::invalid_argument otherwise.
  RatMat jacobian_at_zero(PolyMap const& f);

  // Differential k-form on Q^n with one polynomial coefficient per element of
  // IndexBasis(n, k).
  class PolyForm {
   public:
    PolyForm() : PolyForm(0, 0) {}
    PolyForm(std::size_t domain_dim, std::size_t degree);
    PolyForm(std::size_t domain_dim, std::size_t degree, std::vector<Poly> coefficients);

    static PolyForm zero(std::size_t n, std::size_t k) {
      return PolyForm(n, k);
    }
    static PolyForm function(Poly f);
    // ds_{i1} ∧ ... ∧ ds_{ik} for an increasing 0-based subset.
    static PolyForm basis(std::size_t n, Subset const& indices);

    std::size_t domain_dim() const noexcept { return _n; }
    std::size_t degree() const noexcept { return _k; }

    std::vector<Poly> const& coefficients() const noexcept { return _coefficients; }
    Poly const&              coefficient(std::size_t i) const { return _coefficients[i]; }
    Poly const&              coefficient(Subset const& s) const;

    bool is_zero() const;

    PolyForm& operator+=(PolyForm const& other);
    PolyForm& operator-=(PolyForm const& other);
    PolyForm  operator-() const;
    PolyForm  times(Poly const& f) const;

    // "(s1) d[1,2] + (-s2 + 1) d[2]" with 1-based indices, or "0".
    std::string to_string() const;

    friend bool operator==(PolyForm const& a, PolyForm const& b) {
      return a._n == b._n && a._k == b._k && a._coefficients == b._coefficients;
    }
    friend bool operator!=(PolyForm const& a, PolyForm const& b) {
      return !(a == b);
    }

   private:
    std::size_t       _n;
    std::size_t       _k;
    std::vector<Poly> _coefficients;
  };

  PolyForm operator+(PolyForm a, PolyForm const& b);
  PolyForm operator-(PolyForm a, PolyForm const& b);

  PolyForm wedge_forms(PolyForm const& a, PolyForm const& b);
  // f^* w for f : Q^n -> Q^m and w a form on Q^m.
  PolyForm pullback_form(PolyForm const& w, PolyMap const& f);
  PolyForm exterior_derivative(PolyForm const& w);

  // Constant terms of the coefficients: a 1 × C(n, k) row, the value of w at
  // the origin as a functional on the k-th exterior power of Q^n.
  RatMat form_value_at_zero(PolyForm const& w);

}  // namespace diffeo

#endif  // DIFFEO_SYMCALC_HPP_
