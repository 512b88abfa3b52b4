#include "diffeo/symcalc.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace diffeo {

  namespace {
    unsigned degree_of(Monomial const& m) {
      return std::accumulate(m.begin(), m.end(), 0u);
    }

    std::string monomial_string(Monomial const& m) {
      std::string out;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) {
          continue;
        }
        if (!out.empty()) {
          out += "*";
        }
        out += "s" + std::to_string(i + 1);
        if (m[i] > 1) {
          out += "^" + std::to_string(m[i]);
        }
      }
      return out;
    }

    std::string arity(std::string const& what, std::size_t expected, std::size_t actual) {
      return what + ": expected " + std::to_string(expected) + ", got "
             + std::to_string(actual);
    }

    // Laplace expansion along the first row; only used for k <= n small.
    Poly symbolic_determinant(PolyMatrix const& m, std::size_t nvars) {
      std::size_t const n = m.size();
      if (n == 0) {
        return Poly::constant(nvars, 1);
      }
      if (n == 1) {
        return m[0][0];
      }
      Poly det(nvars);
      for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c].is_zero()) {
          continue;
        }
        PolyMatrix minor;
        for (std::size_t r = 1; r < n; ++r) {
          std::vector<Poly> row;
          for (std::size_t j = 0; j < n; ++j) {
            if (j != c) {
              row.push_back(m[r][j]);
            }
          }
          minor.push_back(std::move(row));
        }
        Poly term = m[0][c] * symbolic_determinant(minor, nvars);
        if (c % 2 == 0) {
          det += term;
        } else {
          det -= term;
        }
      }
      return det;
    }

    // Sign of the permutation sorting the concatenation of two increasing,
    // disjoint index lists.
    int merge_sign(Subset const& a, Subset const& b) {
      std::size_t inversions = 0;
      for (auto i : a) {
        for (auto j : b) {
          if (i > j) {
            ++inversions;
          }
        }
      }
      return inversions % 2 == 0 ? 1 : -1;
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Poly
  ////////////////////////////////////////////////////////////////////////

  Poly Poly::constant(std::size_t nvars, Rational const& c) {
    Poly p(nvars);
    p.add_term(Monomial(nvars, 0), c);
    return p;
  }

  Poly Poly::variable(std::size_t nvars, std::size_t i) {
    if (i >= nvars) {
      throw std::invalid_argument("variable s" + std::to_string(i + 1) + " out of range for "
                                  + std::to_string(nvars) + " variables");
    }
    Monomial m(nvars, 0);
    m[i] = 1;
    return monomial(std::move(m), Rational(1));
  }

  Poly Poly::monomial(Monomial exponents, Rational const& c) {
    Poly p(exponents.size());
    p.add_term(exponents, c);
    return p;
  }

  bool Poly::is_constant() const {
    return _terms.empty()
           || (_terms.size() == 1 && degree_of(_terms.begin()->first) == 0);
  }

  std::size_t Poly::total_degree() const {
    unsigned d = 0;
    for (auto const& [m, c] : _terms) {
      d = std::max(d, degree_of(m));
    }
    return d;
  }

  Rational Poly::coefficient(Monomial const& m) const {
    auto it = _terms.find(m);
    return it == _terms.end() ? Rational(0) : it->second;
  }

  Rational Poly::constant_term() const {
    return coefficient(Monomial(_nvars, 0));
  }

  void Poly::add_term(Monomial const& m, Rational const& c) {
    if (m.size() != _nvars) {
      throw std::invalid_argument(arity("monomial length", _nvars, m.size()));
    }
    if (sgn(c) == 0) {
      return;
    }
    auto [it, inserted] = _terms.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) {
        _terms.erase(it);
      }
    }
  }

  Poly& Poly::operator+=(Poly const& other) {
    if (other._nvars != _nvars) {
      throw std::invalid_argument(arity("polynomial sum variable count", _nvars, other._nvars));
    }
    for (auto const& [m, c] : other._terms) {
      add_term(m, c);
    }
    return *this;
  }

  Poly& Poly::operator-=(Poly const& other) {
    if (other._nvars != _nvars) {
      throw std::invalid_argument(
          arity("polynomial difference variable count", _nvars, other._nvars));
    }
    for (auto const& [m, c] : other._terms) {
      add_term(m, -c);
    }
    return *this;
  }

  Poly& Poly::operator*=(Rational const& c) {
    if (sgn(c) == 0) {
      _terms.clear();
      return *this;
    }
    for (auto& [m, v] : _terms) {
      v *= c;
    }
    return *this;
  }

  Poly Poly::operator-() const {
    Poly p = *this;
    p *= Rational(-1);
    return p;
  }

  Poly Poly::pow(unsigned e) const {
    Poly result = constant(_nvars, 1);
    Poly base   = *this;
    while (e > 0) {
      if (e & 1u) {
        result = result * base;
      }
      e >>= 1;
      if (e > 0) {
        base = base * base;
      }
    }
    return result;
  }

  Poly Poly::derivative(std::size_t var) const {
    if (var >= _nvars) {
      throw std::invalid_argument("derivative: variable out of range");
    }
    Poly d(_nvars);
    for (auto const& [m, c] : _terms) {
      if (m[var] == 0) {
        continue;
      }
      Monomial dm = m;
      dm[var] -= 1;
      d.add_term(dm, c * m[var]);
    }
    return d;
  }

  Poly Poly::substitute(std::vector<Poly> const& values, std::size_t nvars) const {
    if (values.size() != _nvars) {
      throw std::invalid_argument(arity("substitution arity", _nvars, values.size()));
    }
    for (auto const& v : values) {
      if (v.nvars() != nvars) {
        throw std::invalid_argument(arity("substituted variable count", nvars, v.nvars()));
      }
    }
    // Powers are cached per variable since exponents repeat across terms.
    std::vector<std::vector<Poly>> powers(_nvars);
    Poly                           result(nvars);
    for (auto const& [m, c] : _terms) {
      Poly term = constant(nvars, c);
      for (std::size_t i = 0; i < _nvars; ++i) {
        if (m[i] == 0) {
          continue;
        }
        auto& cache = powers[i];
        if (cache.empty()) {
          cache.push_back(constant(nvars, 1));
        }
        while (cache.size() <= m[i]) {
          cache.push_back(cache.back() * values[i]);
        }
        term = term * cache[m[i]];
      }
      result += term;
    }
    return result;
  }

  Rational Poly::evaluate(std::vector<Rational> const& point) const {
    if (point.size() != _nvars) {
      throw std::invalid_argument(arity("evaluation point length", _nvars, point.size()));
    }
    Rational sum(0);
    for (auto const& [m, c] : _terms) {
      Rational t = c;
      for (std::size_t i = 0; i < _nvars; ++i) {
        for (unsigned e = 0; e < m[i]; ++e) {
          t *= point[i];
        }
      }
      sum += t;
    }
    return sum;
  }

  std::string Poly::to_string() const {
    if (_terms.empty()) {
      return "0";
    }
    std::vector<std::pair<Monomial, Rational>> ordered(_terms.begin(), _terms.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](auto const& a, auto const& b) {
      auto da = degree_of(a.first), db = degree_of(b.first);
      if (da != db) {
        return da > db;
      }
      return a.first > b.first;
    });
    std::string out;
    bool        first = true;
    for (auto const& [m, c] : ordered) {
      Rational    mag  = abs(c);
      std::string mono = monomial_string(m);
      if (first) {
        out += sgn(c) < 0 ? "-" : "";
      } else {
        out += sgn(c) < 0 ? " - " : " + ";
      }
      first = false;
      if (mono.empty()) {
        out += mag.get_str();
      } else if (mag == 1) {
        out += mono;
      } else {
        out += mag.get_str() + "*" + mono;
      }
    }
    return out;
  }

  bool operator<(Poly const& a, Poly const& b) {
    if (a._nvars != b._nvars) {
      return a._nvars < b._nvars;
    }
    return a._terms < b._terms;
  }

  Poly operator+(Poly a, Poly const& b) {
    a += b;
    return a;
  }

  Poly operator-(Poly a, Poly const& b) {
    a -= b;
    return a;
  }

  Poly operator*(Poly const& a, Poly const& b) {
    if (a.nvars() != b.nvars()) {
      throw std::invalid_argument(arity("polynomial product variable count", a.nvars(), b.nvars()));
    }
    Poly p(a.nvars());
    for (auto const& [ma, ca] : a.terms()) {
      for (auto const& [mb, cb] : b.terms()) {
        Monomial m(ma.size());
        for (std::size_t i = 0; i < m.size(); ++i) {
          m[i] = ma[i] + mb[i];
        }
        p.add_term(m, ca * cb);
      }
    }
    return p;
  }

  Poly operator*(Rational const& c, Poly a) {
    a *= c;
    return a;
  }

  ////////////////////////////////////////////////////////////////////////
  // PolyMap
  ////////////////////////////////////////////////////////////////////////

  PolyMap::PolyMap(std::size_t source_dim, std::vector<Poly> components)
      : _source_dim(source_dim), _components(std::move(components)) {
    for (auto const& p : _components) {
      if (p.nvars() != _source_dim) {
        throw std::invalid_argument(arity("map component variable count", _source_dim, p.nvars()));
      }
    }
  }

  PolyMap PolyMap::identity(std::size_t n) {
    std::vector<Poly> comps;
    for (std::size_t i = 0; i < n; ++i) {
      comps.push_back(Poly::variable(n, i));
    }
    return PolyMap(n, std::move(comps));
  }

  PolyMap PolyMap::zero(std::size_t source_dim, std::size_t target_dim) {
    return PolyMap(source_dim, std::vector<Poly>(target_dim, Poly(source_dim)));
  }

  PolyMap PolyMap::linear(RatMat const& a) {
    std::vector<Poly> comps;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      Poly p(a.cols());
      for (std::size_t c = 0; c < a.cols(); ++c) {
        Monomial m(a.cols(), 0);
        m[c] = 1;
        p.add_term(m, a(r, c));
      }
      comps.push_back(std::move(p));
    }
    return PolyMap(a.cols(), std::move(comps));
  }

  bool PolyMap::is_pointed() const {
    return std::all_of(_components.begin(), _components.end(), [](Poly const& p) {
      return sgn(p.constant_term()) == 0;
    });
  }

  std::vector<Rational> PolyMap::evaluate(std::vector<Rational> const& point) const {
    std::vector<Rational> out;
    out.reserve(_components.size());
    for (auto const& p : _components) {
      out.push_back(p.evaluate(point));
    }
    return out;
  }

  std::string PolyMap::to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < _components.size(); ++i) {
      out += (i == 0 ? "" : ", ") + _components[i].to_string();
    }
    return out + "]";
  }

  bool operator<(PolyMap const& a, PolyMap const& b) {
    if (a._source_dim != b._source_dim) {
      return a._source_dim < b._source_dim;
    }
    return a._components < b._components;
  }

  PolyMap compose_maps(PolyMap const& f, PolyMap const& g) {
    if (g.target_dim() != f.source_dim()) {
      throw std::invalid_argument(arity("compose_maps: inner target dimension vs outer source",
                                        f.source_dim(), g.target_dim()));
    }
    std::vector<Poly> comps;
    comps.reserve(f.target_dim());
    for (auto const& p : f.components()) {
      comps.push_back(p.substitute(g.components(), g.source_dim()));
    }
    return PolyMap(g.source_dim(), std::move(comps));
  }

  PolyMatrix jacobian(PolyMap const& f) {
    PolyMatrix j(f.target_dim());
    for (std::size_t r = 0; r < f.target_dim(); ++r) {
      for (std::size_t c = 0; c < f.source_dim(); ++c) {
        j[r].push_back(f[r].derivative(c));
      }
    }
    return j;
  }

  RatMat jacobian_at_zero(PolyMap const& f) {
    if (!f.is_pointed()) {
      throw std::invalid_argument("jacobian_at_zero: map " + f.to_string()
                                  + " does not send 0 to 0");
    }
    RatMat j(f.target_dim(), f.source_dim());
    for (std::size_t r = 0; r < f.target_dim(); ++r) {
      for (std::size_t c = 0; c < f.source_dim(); ++c) {
        Monomial m(f.source_dim(), 0);
        m[c]    = 1;
        j(r, c) = f[r].coefficient(m);
      }
    }
    return j;
  }

  ////////////////////////////////////////////////////////////////////////
  // PolyForm
  ////////////////////////////////////////////////////////////////////////

  PolyForm::PolyForm(std::size_t domain_dim, std::size_t degree)
      : _n(domain_dim), _k(degree), _coefficients(binomial(domain_dim, degree), Poly(domain_dim)) {}

  PolyForm::PolyForm(std::size_t domain_dim, std::size_t degree, std::vector<Poly> coefficients)
      : _n(domain_dim), _k(degree), _coefficients(std::move(coefficients)) {
    if (_coefficients.size() != binomial(_n, _k)) {
      throw std::invalid_argument(arity("form coefficient count", binomial(_n, _k),
                                        _coefficients.size()));
    }
    for (auto const& p : _coefficients) {
      if (p.nvars() != _n) {
        throw std::invalid_argument(arity("form coefficient variable count", _n, p.nvars()));
      }
    }
  }

  PolyForm PolyForm::function(Poly f) {
    std::size_t n = f.nvars();
    return PolyForm(n, 0, {std::move(f)});
  }

  PolyForm PolyForm::basis(std::size_t n, Subset const& indices) {
    PolyForm w(n, indices.size());
    IndexBasis const b(n, indices.size());
    w._coefficients[b.index_of(indices)] = Poly::constant(n, 1);
    return w;
  }

  Poly const& PolyForm::coefficient(Subset const& s) const {
    return _coefficients[IndexBasis(_n, _k).index_of(s)];
  }

  bool PolyForm::is_zero() const {
    return std::all_of(_coefficients.begin(), _coefficients.end(), [](Poly const& p) {
      return p.is_zero();
    });
  }

  PolyForm& PolyForm::operator+=(PolyForm const& other) {
    if (other._n != _n || other._k != _k) {
      throw std::invalid_argument("form sum: domain or degree mismatch");
    }
    for (std::size_t i = 0; i < _coefficients.size(); ++i) {
      _coefficients[i] += other._coefficients[i];
    }
    return *this;
  }

  PolyForm& PolyForm::operator-=(PolyForm const& other) {
    if (other._n != _n || other._k != _k) {
      throw std::invalid_argument("form difference: domain or degree mismatch");
    }
    for (std::size_t i = 0; i < _coefficients.size(); ++i) {
      _coefficients[i] -= other._coefficients[i];
    }
    return *this;
  }

  PolyForm PolyForm::operator-() const {
    PolyForm w = *this;
    for (auto& c : w._coefficients) {
      c = -c;
    }
    return w;
  }

  PolyForm PolyForm::times(Poly const& f) const {
    PolyForm w = *this;
    for (auto& c : w._coefficients) {
      c = c * f;
    }
    return w;
  }

  std::string PolyForm::to_string() const {
    IndexBasis const b(_n, _k);
    std::string      out;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (_coefficients[i].is_zero()) {
        continue;
      }
      if (!out.empty()) {
        out += " + ";
      }
      std::string d = "d[";
      for (std::size_t j = 0; j < b[i].size(); ++j) {
        d += (j == 0 ? "" : ",") + std::to_string(b[i][j] + 1);
      }
      d += "]";
      out += "(" + _coefficients[i].to_string() + ") " + d;
    }
    return out.empty() ? "0" : out;
  }

  PolyForm operator+(PolyForm a, PolyForm const& b) {
    a += b;
    return a;
  }

  PolyForm operator-(PolyForm a, PolyForm const& b) {
    a -= b;
    return a;
  }

  PolyForm wedge_forms(PolyForm const& a, PolyForm const& b) {
    if (a.domain_dim() != b.domain_dim()) {
      throw std::invalid_argument(arity("wedge_forms domain dimension", a.domain_dim(),
                                        b.domain_dim()));
    }
    std::size_t const n = a.domain_dim();
    std::size_t const k = a.degree() + b.degree();
    if (k > n) {
      return PolyForm(n, k);
    }
    IndexBasis const  ba(n, a.degree()), bb(n, b.degree()), bk(n, k);
    std::vector<Poly> coeffs(bk.size(), Poly(n));
    for (std::size_t i = 0; i < ba.size(); ++i) {
      if (a.coefficient(i).is_zero()) {
        continue;
      }
      for (std::size_t j = 0; j < bb.size(); ++j) {
        if (b.coefficient(j).is_zero()) {
          continue;
        }
        Subset merged;
        std::set_union(ba[i].begin(), ba[i].end(), bb[j].begin(), bb[j].end(),
                       std::back_inserter(merged));
        if (merged.size() != k) {
          continue;
        }
        Poly term = a.coefficient(i) * b.coefficient(j);
        if (merge_sign(ba[i], bb[j]) > 0) {
          coeffs[bk.index_of(merged)] += term;
        } else {
          coeffs[bk.index_of(merged)] -= term;
        }
      }
    }
    return PolyForm(n, k, std::move(coeffs));
  }

  PolyForm pullback_form(PolyForm const& w, PolyMap const& f) {
    if (f.target_dim() != w.domain_dim()) {
      throw std::invalid_argument(arity("pullback_form: map target dimension vs form domain",
                                        w.domain_dim(), f.target_dim()));
    }
    std::size_t const n = f.source_dim();
    std::size_t const m = f.target_dim();
    std::size_t const k = w.degree();
    IndexBasis const  src(n, k), dst(m, k);
    PolyMatrix const  jac = jacobian(f);

    std::vector<Poly> coeffs(src.size(), Poly(n));
    for (std::size_t J = 0; J < dst.size(); ++J) {
      if (w.coefficient(J).is_zero()) {
        continue;
      }
      Poly const moved = w.coefficient(J).substitute(f.components(), n);
      if (moved.is_zero()) {
        continue;
      }
      for (std::size_t I = 0; I < src.size(); ++I) {
        PolyMatrix minor(k);
        for (std::size_t r = 0; r < k; ++r) {
          for (std::size_t c = 0; c < k; ++c) {
            minor[r].push_back(jac[dst[J][r]][src[I][c]]);
          }
        }
        coeffs[I] += moved * symbolic_determinant(minor, n);
      }
    }
    return PolyForm(n, k, std::move(coeffs));
  }

  PolyForm exterior_derivative(PolyForm const& w) {
    std::size_t const n = w.domain_dim();
    std::size_t const k = w.degree();
    if (k + 1 > n) {
      return PolyForm(n, k + 1);
    }
    IndexBasis const  src(n, k), dst(n, k + 1);
    std::vector<Poly> coeffs(dst.size(), Poly(n));
    for (std::size_t I = 0; I < src.size(); ++I) {
      if (w.coefficient(I).is_zero()) {
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (std::binary_search(src[I].begin(), src[I].end(), j)) {
          continue;
        }
        Poly const partial = w.coefficient(I).derivative(j);
        if (partial.is_zero()) {
          continue;
        }
        // ds_j ∧ ds_I: moving ds_j into place passes every index below j.
        std::size_t below = static_cast<std::size_t>(
            std::lower_bound(src[I].begin(), src[I].end(), j) - src[I].begin());
        Subset merged = src[I];
        merged.insert(merged.begin() + below, j);
        if (below % 2 == 0) {
          coeffs[dst.index_of(merged)] += partial;
        } else {
          coeffs[dst.index_of(merged)] -= partial;
        }
      }
    }
    return PolyForm(n, k + 1, std::move(coeffs));
  }

  RatMat form_value_at_zero(PolyForm const& w) {
    RatMat v(1, w.coefficients().size());
    for (std::size_t i = 0; i < w.coefficients().size(); ++i) {
      v(0, i) = w.coefficient(i).constant_term();
    }
    return v;
  }

}  // namespace diffeo
