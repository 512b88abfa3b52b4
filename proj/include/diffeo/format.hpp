#ifndef DIFFEO_FORMAT_HPP_
#define DIFFEO_FORMAT_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "diffeo/forms.hpp"
#include "diffeo/presentation.hpp"

namespace diffeo {

  // Line and column are 1-based; column points at the offending character.
  class ParseError : public std::runtime_error {
   public:
    ParseError(std::size_t line, std::size_t column, std::string const& message);

    std::size_t line() const noexcept { return _line; }
    std::size_t column() const noexcept { return _column; }
    std::string const& message() const noexcept { return _message; }

   private:
    std::size_t _line;
    std::size_t _column;
    std::string _message;
  };

  struct NamedForm {
    std::string   name;
    std::string   space;
    PresentedForm form;
  };

  struct NamedSection {
    std::string      name;
    std::string      space;
    PresentedSection section;
  };

  struct Document {
    std::vector<GermPresentation> spaces;
    std::vector<NamedForm>        forms;
    std::vector<NamedSection>     sections;

    GermPresentation const* find_space(std::string const& name) const;
    NamedForm const*        find_form(std::string const& name) const;
  };

  // Parses the presentation text format:
  //
  //   # comment
  //   space NAME
  //   chart ID : R^N
  //   arrow ID : SRC -> DST = [e1, ..., eM]     (expressions in s1..sN of SRC)
  //   ambient N
  //   embed CHART = [e1, ..., eN]
  //   form NAME : degree K on SPACE
  //   on CHART : (expr) d[i1,...,ik] + ...       (indices 1-based)
  //   section NAME : tangent|cotangent on SPACE
  //   on CHART : [e1, ..., en]
  //   point : [c1, ..., cd]                       (cotangent only)
  //
  // Chart, arrow, ambient and embed lines belong to the latest `space`; `on`
  // and `point` lines to the latest form or section. Missing form or section
  // components are zero. `[]` is the zero germ out of a 0-dimensional chart.
  // Every space is validated. Spaces in `known` are in scope before the first
  // line (used for section data files) and are returned first.
  Document parse_document(std::string_view text, std::vector<GermPresentation> const& known = {});

  // Parses a single polynomial in s1..s_nvars.
  Poly parse_poly(std::string_view text, std::size_t nvars);
  // Parses a single k-form on Q^n.
  PolyForm parse_form_expr(std::string_view text, std::size_t n, std::size_t k);

  std::string print_presentation(GermPresentation const& p);
  std::string print_form(std::string const&      name,
                         GermPresentation const& p,
                         PresentedForm const&    w);
  std::string print_section(std::string const&      name,
                            GermPresentation const& p,
                            PresentedSection const& s);

}  // namespace diffeo

#endif  // DIFFEO_FORMAT_HPP_
