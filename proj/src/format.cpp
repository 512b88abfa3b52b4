#include "diffeo/format.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "diffeo/multilinear.hpp"

namespace diffeo {

  ParseError::ParseError(std::size_t line, std::size_t column, std::string const& message)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column)
                           + ": " + message),
        _line(line),
        _column(column),
        _message(message) {}

  GermPresentation const* Document::find_space(std::string const& name) const {
    for (auto const& s : spaces) {
      if (s.name == name) {
        return &s;
      }
    }
    return nullptr;
  }

  NamedForm const* Document::find_form(std::string const& name) const {
    for (auto const& f : forms) {
      if (f.name == name) {
        return &f;
      }
    }
    return nullptr;
  }

  namespace {

    enum class Tok { ident, number, symbol, end };

    struct Token {
      Tok         kind;
      std::string text;
      std::size_t column;  // 1-based
    };

    std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
      std::vector<Token> out;
      std::size_t        i = 0;
      while (i < line.size()) {
        char c = line[i];
        if (c == '#') {
          break;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
          ++i;
          continue;
        }
        std::size_t start = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
          while (i < line.size()
                 && (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_'
                     || line[i] == '.')) {
            ++i;
          }
          out.push_back({Tok::ident, std::string(line.substr(start, i - start)), start + 1});
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
          while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) {
            ++i;
          }
          out.push_back({Tok::number, std::string(line.substr(start, i - start)), start + 1});
        } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
          out.push_back({Tok::symbol, "->", start + 1});
          i += 2;
        } else if (std::string_view(":=[],+-*/^()").find(c) != std::string_view::npos) {
          out.push_back({Tok::symbol, std::string(1, c), start + 1});
          ++i;
        } else {
          throw ParseError(line_no, start + 1, std::string("unexpected character '") + c + "'");
        }
      }
      out.push_back({Tok::end, "", line.size() + 1});
      return out;
    }

    class LineParser {
     public:
      LineParser(std::string_view line, std::size_t line_no)
          : _tokens(tokenize(line, line_no)), _line(line_no) {}

      Token const& peek(std::size_t ahead = 0) const {
        return _tokens[std::min(_pos + ahead, _tokens.size() - 1)];
      }
      Token const& next() {
        Token const& t = peek();
        if (_pos + 1 < _tokens.size()) {
          ++_pos;
        }
        return t;
      }
      bool at_end() const { return peek().kind == Tok::end; }

      bool is_symbol(std::string const& s, std::size_t ahead = 0) const {
        return peek(ahead).kind == Tok::symbol && peek(ahead).text == s;
      }
      bool accept_symbol(std::string const& s) {
        if (is_symbol(s)) {
          next();
          return true;
        }
        return false;
      }

      [[noreturn]] void fail(std::string const& message) const {
        fail_at(peek(), message);
      }
      [[noreturn]] void fail_at(Token const& t, std::string const& message) const {
        throw ParseError(_line, t.column, message);
      }

      std::string describe(Token const& t) const {
        return t.kind == Tok::end ? std::string("end of line") : "'" + t.text + "'";
      }

      void expect_symbol(std::string const& s) {
        if (!accept_symbol(s)) {
          fail("expected '" + s + "', found " + describe(peek()));
        }
      }
      Token expect_ident(std::string const& what) {
        if (peek().kind != Tok::ident) {
          fail("expected " + what + ", found " + describe(peek()));
        }
        return next();
      }
      void expect_keyword(std::string const& kw) {
        if (peek().kind != Tok::ident || peek().text != kw) {
          fail("expected '" + kw + "', found " + describe(peek()));
        }
        next();
      }
      std::size_t expect_count(std::string const& what) {
        if (peek().kind != Tok::number) {
          fail("expected " + what + ", found " + describe(peek()));
        }
        auto const& t = next();
        if (t.text.size() > 6) {
          fail_at(t, what + " is too large");
        }
        return std::stoul(t.text);
      }
      void expect_end() {
        if (!at_end()) {
          fail("unexpected " + describe(peek()) + " at end of line");
        }
      }

      // expr := [+|-] term ((+|-) term)*
      Poly expr(std::size_t nvars) {
        Poly result(nvars);
        bool negate = false;
        if (accept_symbol("-")) {
          negate = true;
        } else {
          accept_symbol("+");
        }
        Poly t = term(nvars);
        result += negate ? -t : t;
        while (is_symbol("+") || is_symbol("-")) {
          bool minus = next().text == "-";
          Poly u     = term(nvars);
          result += minus ? -u : u;
        }
        return result;
      }

      // term := factor ((*|/) factor)*, stopping before "* d[" in forms.
      Poly term(std::size_t nvars) {
        Poly result = factor(nvars);
        while (is_symbol("*") || is_symbol("/")) {
          if (is_symbol("*") && starts_differential(1)) {
            return result;
          }
          bool  divide = next().text == "/";
          Token at     = peek();
          Poly  f      = factor(nvars);
          if (divide) {
            if (!f.is_constant() || f.is_zero()) {
              fail_at(at, "division is only allowed by a nonzero constant");
            }
            result *= 1 / f.constant_term();
          } else {
            result = result * f;
          }
        }
        return result;
      }

      // factor := ['-'] atom ['^' count]
      Poly factor(std::size_t nvars) {
        if (accept_symbol("-")) {
          return -factor(nvars);
        }
        Poly base = atom(nvars);
        if (accept_symbol("^")) {
          Token at = peek();
          auto  e  = expect_count("exponent");
          if (e > 1000) {
            fail_at(at, "exponent too large");
          }
          return base.pow(static_cast<unsigned>(e));
        }
        return base;
      }

      Poly atom(std::size_t nvars) {
        Token const& t = peek();
        if (t.kind == Tok::number) {
          next();
          return Poly::constant(nvars, Rational(t.text));
        }
        if (t.kind == Tok::ident) {
          if (t.text.size() >= 2 && t.text[0] == 's'
              && std::all_of(t.text.begin() + 1, t.text.end(),
                             [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })
              && t.text[1] != '0' && t.text.size() < 8) {
            std::size_t idx = std::stoul(t.text.substr(1));
            if (idx > nvars) {
              fail("variable " + t.text + " out of range for a chart of dimension "
                   + std::to_string(nvars));
            }
            next();
            return Poly::variable(nvars, idx - 1);
          }
          fail("unknown variable '" + t.text + "' (variables are s1, s2, ...)");
        }
        if (accept_symbol("(")) {
          Poly inner = expr(nvars);
          expect_symbol(")");
          return inner;
        }
        fail("expected a number, variable or '(', found " + describe(t));
      }

      bool starts_differential(std::size_t ahead = 0) const {
        return peek(ahead).kind == Tok::ident && peek(ahead).text == "d"
               && is_symbol("[", ahead + 1);
      }

      // d[i1, ..., ik] with 1-based indices; returns the sign of the sorting
      // permutation (0 if an index repeats) and the sorted 0-based subset.
      std::pair<int, Subset> differential(std::size_t n, std::size_t k) {
        Token const at = peek();
        next();
        expect_symbol("[");
        std::vector<std::size_t> idx;
        if (!is_symbol("]")) {
          do {
            Token it = peek();
            auto  i  = expect_count("index");
            if (i == 0 || i > n) {
              fail_at(it, "index " + std::to_string(i) + " out of range 1.."
                              + std::to_string(n));
            }
            idx.push_back(i - 1);
          } while (accept_symbol(","));
        }
        expect_symbol("]");
        if (idx.size() != k) {
          fail_at(at, "differential of degree " + std::to_string(idx.size())
                          + " in a form of degree " + std::to_string(k));
        }
        int sign = 1;
        for (std::size_t a = 0; a < idx.size(); ++a) {
          for (std::size_t b = a + 1; b < idx.size(); ++b) {
            if (idx[a] == idx[b]) {
              sign = 0;
            } else if (idx[a] > idx[b]) {
              sign = -sign;
            }
          }
        }
        std::sort(idx.begin(), idx.end());
        return {sign, idx};
      }

      PolyForm form_term(std::size_t n, std::size_t k) {
        Token const at = peek();
        Poly        coefficient;
        if (starts_differential()) {
          coefficient = Poly::constant(n, 1);
        } else {
          coefficient = term(n);
          accept_symbol("*");
        }
        if (!starts_differential()) {
          if (k == 0 || coefficient.is_zero()) {
            return k == 0 ? PolyForm::function(coefficient) : PolyForm::zero(n, k);
          }
          fail_at(at, "term of a " + std::to_string(k) + "-form needs a differential d[...]");
        }
        auto [sign, subset] = differential(n, k);
        if (sign == 0) {
          return PolyForm::zero(n, k);
        }
        PolyForm w = PolyForm::basis(n, subset).times(coefficient);
        return sign > 0 ? w : -w;
      }

      // formexpr := [+|-] fterm ((+|-) fterm)*
      PolyForm form_expr(std::size_t n, std::size_t k) {
        PolyForm result = PolyForm::zero(n, k);
        bool     negate = false;
        if (accept_symbol("-")) {
          negate = true;
        } else {
          accept_symbol("+");
        }
        PolyForm t = form_term(n, k);
        result += negate ? -t : t;
        while (is_symbol("+") || is_symbol("-")) {
          bool     minus = next().text == "-";
          PolyForm u     = form_term(n, k);
          result += minus ? -u : u;
        }
        return result;
      }

      // [e1, ..., em]; an empty list from a 0-dimensional source is the zero
      // map into any target.
      PolyMap map_list(std::size_t source_dim, std::size_t target_dim) {
        Token const       at = peek();
        std::vector<Poly> comps;
        expect_symbol("[");
        if (!is_symbol("]")) {
          do {
            comps.push_back(expr(source_dim));
          } while (accept_symbol(","));
        }
        expect_symbol("]");
        if (comps.empty() && source_dim == 0) {
          return PolyMap::zero(0, target_dim);
        }
        if (comps.size() != target_dim) {
          fail_at(at, "expected " + std::to_string(target_dim) + " coordinates, found "
                          + std::to_string(comps.size()));
        }
        return PolyMap(source_dim, std::move(comps));
      }

      std::vector<Rational> constant_list() {
        std::vector<Rational> out;
        expect_symbol("[");
        if (!is_symbol("]")) {
          do {
            out.push_back(expr(0).constant_term());
          } while (accept_symbol(","));
        }
        expect_symbol("]");
        return out;
      }

      std::size_t line() const { return _line; }

     private:
      std::vector<Token> _tokens;
      std::size_t        _pos = 0;
      std::size_t        _line;
    };

    struct SpaceState {
      GermPresentation p;
      std::size_t      line  = 0;
      bool             known = false;
    };

    enum class Block { none, form, section };

  }  // namespace

  Document parse_document(std::string_view text, std::vector<GermPresentation> const& known) {
    Document                  doc;
    std::vector<SpaceState>   spaces;
    for (auto const& k : known) {
      spaces.push_back({k, 0, true});
    }
    std::vector<std::size_t>  form_lines;
    Block                     block = Block::none;
    std::size_t               line_no = 0;

    auto space_of = [&](LineParser& lp, Token const& t) -> GermPresentation& {
      for (auto& s : spaces) {
        if (s.p.name == t.text) {
          return s.p;
        }
      }
      lp.fail_at(t, "unknown space '" + t.text + "'");
    };
    auto current_space = [&](LineParser& lp) -> GermPresentation& {
      if (spaces.empty()) {
        lp.fail_at(lp.peek(), "declaration outside of a 'space' block");
      }
      return spaces.back().p;
    };
    auto chart_of = [&](LineParser& lp, GermPresentation const& p, Token const& t) {
      auto i = p.find_chart(t.text);
      if (!i) {
        lp.fail_at(t, "unknown chart '" + t.text + "' in space '" + p.name + "'");
      }
      return *i;
    };

    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto        eol  = text.find('\n', pos);
      auto        line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
      pos              = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
      ++line_no;
      if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
      }
      LineParser lp(line, line_no);
      if (lp.at_end()) {
        continue;
      }
      Token const kw = lp.expect_ident("a keyword");

      if (kw.text == "space") {
        Token name = lp.expect_ident("space name");
        lp.expect_end();
        for (auto const& s : spaces) {
          if (s.p.name == name.text) {
            lp.fail_at(name, "duplicate space '" + name.text + "'");
          }
        }
        spaces.push_back({GermPresentation{name.text, {}, {}, {}}, line_no});
        block = Block::none;
      } else if (kw.text == "chart") {
        auto& p  = current_space(lp);
        Token id = lp.expect_ident("chart id");
        lp.expect_symbol(":");
        lp.expect_keyword("R");
        lp.expect_symbol("^");
        auto dim = lp.expect_count("dimension");
        lp.expect_end();
        if (p.find_chart(id.text)) {
          lp.fail_at(id, "duplicate chart '" + id.text + "'");
        }
        p.add_chart(id.text, dim);
        block = Block::none;
      } else if (kw.text == "arrow") {
        auto& p  = current_space(lp);
        Token id = lp.expect_ident("arrow id");
        lp.expect_symbol(":");
        Token src = lp.expect_ident("source chart");
        lp.expect_symbol("->");
        Token dst = lp.expect_ident("target chart");
        lp.expect_symbol("=");
        auto s   = chart_of(lp, p, src);
        auto d   = chart_of(lp, p, dst);
        auto map = lp.map_list(p.charts[s].dim, p.charts[d].dim);
        lp.expect_end();
        p.arrows.push_back({id.text, s, d, std::move(map)});
        block = Block::none;
      } else if (kw.text == "ambient") {
        auto& p   = current_space(lp);
        auto  dim = lp.expect_count("ambient dimension");
        lp.expect_end();
        if (p.ambient) {
          lp.fail_at(kw, "ambient declared twice");
        }
        p.ambient = Ambient{dim, std::vector<PolyMap>(p.charts.size())};
        for (std::size_t i = 0; i < p.charts.size(); ++i) {
          p.ambient->embeds[i] = PolyMap::zero(p.charts[i].dim, dim);
        }
        block = Block::none;
      } else if (kw.text == "embed") {
        auto& p     = current_space(lp);
        Token chart = lp.expect_ident("chart id");
        lp.expect_symbol("=");
        if (!p.ambient) {
          lp.fail_at(kw, "'embed' before 'ambient'");
        }
        auto c = chart_of(lp, p, chart);
        if (p.ambient->embeds.size() < p.charts.size()) {
          for (std::size_t i = p.ambient->embeds.size(); i < p.charts.size(); ++i) {
            p.ambient->embeds.push_back(PolyMap::zero(p.charts[i].dim, p.ambient->dim));
          }
        }
        p.ambient->embeds[c] = lp.map_list(p.charts[c].dim, p.ambient->dim);
        lp.expect_end();
        block = Block::none;
      } else if (kw.text == "form") {
        Token name = lp.expect_ident("form name");
        lp.expect_symbol(":");
        lp.expect_keyword("degree");
        auto k = lp.expect_count("degree");
        lp.expect_keyword("on");
        Token sp = lp.expect_ident("space name");
        lp.expect_end();
        auto& p = space_of(lp, sp);
        if (doc.find_form(name.text)) {
          lp.fail_at(name, "duplicate form '" + name.text + "'");
        }
        doc.forms.push_back({name.text, sp.text, PresentedForm::zero(p, k)});
        block = Block::form;
      } else if (kw.text == "section") {
        Token name = lp.expect_ident("section name");
        lp.expect_symbol(":");
        Token kind = lp.expect_ident("'tangent' or 'cotangent'");
        if (kind.text != "tangent" && kind.text != "cotangent") {
          lp.fail_at(kind, "expected 'tangent' or 'cotangent'");
        }
        lp.expect_keyword("on");
        Token sp = lp.expect_ident("space name");
        lp.expect_end();
        auto&            p = space_of(lp, sp);
        PresentedSection s;
        s.kind = kind.text == "tangent" ? BundleKind::tangent : BundleKind::cotangent;
        for (auto const& c : p.charts) {
          s.values.push_back(PolyMap::zero(c.dim, c.dim));
        }
        doc.sections.push_back({name.text, sp.text, std::move(s)});
        block = Block::section;
      } else if (kw.text == "on") {
        if (block == Block::none) {
          lp.fail_at(kw, "'on' outside of a form or section");
        }
        Token chart = lp.expect_ident("chart id");
        lp.expect_symbol(":");
        if (block == Block::form) {
          auto& f = doc.forms.back();
          auto& p = space_of(lp, Token{Tok::ident, f.space, kw.column});
          auto  c = chart_of(lp, p, chart);
          f.form.components[c] = lp.form_expr(p.charts[c].dim, f.form.degree);
        } else {
          auto& s = doc.sections.back();
          auto& p = space_of(lp, Token{Tok::ident, s.space, kw.column});
          auto  c = chart_of(lp, p, chart);
          s.section.values[c] = lp.map_list(p.charts[c].dim, p.charts[c].dim);
        }
        lp.expect_end();
      } else if (kw.text == "point") {
        if (block != Block::section) {
          lp.fail_at(kw, "'point' outside of a section");
        }
        lp.expect_symbol(":");
        auto& s = doc.sections.back();
        if (s.section.kind != BundleKind::cotangent) {
          lp.fail_at(kw, "'point' only applies to cotangent sections");
        }
        s.section.point_functional = lp.constant_list();
        lp.expect_end();
      } else {
        lp.fail_at(kw, "unknown keyword '" + kw.text + "'");
      }
    }

    for (auto& s : spaces) {
      if (s.p.ambient) {
        auto& embeds = s.p.ambient->embeds;
        for (std::size_t i = embeds.size(); i < s.p.charts.size(); ++i) {
          embeds.push_back(PolyMap::zero(s.p.charts[i].dim, s.p.ambient->dim));
        }
      }
      if (s.known) {
        doc.spaces.push_back(std::move(s.p));
        continue;
      }
      auto const report = validate_presentation(s.p);
      if (!report.ok()) {
        throw ParseError(s.line, 1, "space '" + s.p.name + "' is " + report.to_string());
      }
      doc.spaces.push_back(std::move(s.p));
    }
    return doc;
  }

  Poly parse_poly(std::string_view text, std::size_t nvars) {
    LineParser lp(text, 1);
    Poly       p = lp.expr(nvars);
    lp.expect_end();
    return p;
  }

  PolyForm parse_form_expr(std::string_view text, std::size_t n, std::size_t k) {
    LineParser lp(text, 1);
    PolyForm   w = lp.form_expr(n, k);
    lp.expect_end();
    return w;
  }

  namespace {
    std::string print_map(PolyMap const& m) {
      if (m.source_dim() == 0 && m == PolyMap::zero(0, m.target_dim())) {
        return "[]";
      }
      return m.to_string();
    }
  }  // namespace

  std::string print_presentation(GermPresentation const& p) {
    std::string out = "space " + p.name + "\n";
    for (auto const& c : p.charts) {
      out += "chart " + c.id + " : R^" + std::to_string(c.dim) + "\n";
    }
    for (auto const& a : p.arrows) {
      out += "arrow " + a.id + " : " + p.charts[a.src].id + " -> " + p.charts[a.dst].id
             + " = " + print_map(a.map) + "\n";
    }
    if (p.ambient) {
      out += "ambient " + std::to_string(p.ambient->dim) + "\n";
      for (std::size_t i = 0; i < p.charts.size(); ++i) {
        out += "embed " + p.charts[i].id + " = " + print_map(p.ambient->embeds[i]) + "\n";
      }
    }
    return out;
  }

  std::string print_form(std::string const&      name,
                         GermPresentation const& p,
                         PresentedForm const&    w) {
    check_form_shape(p, w);
    std::string out = "form " + name + " : degree " + std::to_string(w.degree) + " on "
                      + p.name + "\n";
    for (std::size_t i = 0; i < p.charts.size(); ++i) {
      std::string body;
      if (w.degree == 0) {
        body = w.components[i].coefficient(0).to_string();
      } else {
        body = w.components[i].to_string();
      }
      out += "on " + p.charts[i].id + " : " + body + "\n";
    }
    return out;
  }

  std::string print_section(std::string const&      name,
                            GermPresentation const& p,
                            PresentedSection const& s) {
    std::string out = "section " + name + " : "
                      + (s.kind == BundleKind::tangent ? "tangent" : "cotangent") + " on "
                      + p.name + "\n";
    for (std::size_t i = 0; i < p.charts.size(); ++i) {
      out += "on " + p.charts[i].id + " : " + print_map(s.values[i]) + "\n";
    }
    if (s.point_functional) {
      out += "point : [";
      for (std::size_t i = 0; i < s.point_functional->size(); ++i) {
        out += (i == 0 ? "" : ", ") + (*s.point_functional)[i].get_str();
      }
      out += "]\n";
    }
    return out;
  }

}  // namespace diffeo
