#ifndef DIFFEO_CLI_HPP_
#define DIFFEO_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace diffeo {

  // Exit codes of run_command.
  inline constexpr int exit_ok           = 0;
  inline constexpr int exit_negative     = 1;  // only with --strict
  inline constexpr int exit_input_error  = 2;
  inline constexpr int exit_internal     = 3;

  // Runs one diffeo-kit command. args excludes the program name, e.g.
  // {"rho", "catalog:wedge_lines", "--k", "2", "--json"}.
  int run_command(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace diffeo

#endif  // DIFFEO_CLI_HPP_
