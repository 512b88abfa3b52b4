#include "diffeo/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "diffeo/catalog.hpp"
#include "diffeo/format.hpp"
#include "diffeo/forms.hpp"
#include "diffeo/multilinear.hpp"
#include "diffeo/tangent.hpp"

namespace diffeo {

  namespace {
    using nlohmann::json;

    struct Options {
      bool                     json   = false;
      bool                     strict = false;
      std::string              file;
      std::string              space;
      std::vector<std::string> params;
      std::size_t              k     = 1;
      std::size_t              depth = 4;
      std::string              form;
      std::string              data;
      std::string              catalog_name;
      bool                     exported = false;
    };

    struct Loaded {
      GermPresentation space;
      Document         doc;
    };

    std::string read_file(std::string const& path) {
      std::ifstream in(path, std::ios::binary);
      if (!in) {
        throw std::invalid_argument("cannot open '" + path + "'");
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }

    CatalogParams parse_params(std::vector<std::string> const& raw) {
      CatalogParams params;
      for (auto const& chunk : raw) {
        std::stringstream ss(chunk);
        std::string       item;
        while (std::getline(ss, item, ',')) {
          if (item.empty()) {
            continue;
          }
          auto eq = item.find('=');
          if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
            throw std::invalid_argument("parameter '" + item + "' is not of the form key=value");
          }
          std::size_t used  = 0;
          long        value = 0;
          try {
            value = std::stol(item.substr(eq + 1), &used);
          } catch (std::exception const&) {
            used = 0;
          }
          if (used != item.size() - eq - 1) {
            throw std::invalid_argument("parameter '" + item + "' needs an integer value");
          }
          params[item.substr(0, eq)] = value;
        }
      }
      return params;
    }

    Loaded load(Options const& o) {
      Loaded      out;
      std::string prefix = "catalog:";
      if (o.file.rfind(prefix, 0) == 0) {
        auto entry = build_catalog_space(o.file.substr(prefix.size()), parse_params(o.params));
        out.space  = entry.presentation;
        out.doc.spaces.push_back(entry.presentation);
        return out;
      }
      if (!o.params.empty()) {
        throw std::invalid_argument("--params only applies to catalog: sources");
      }
      out.doc = parse_document(read_file(o.file));
      if (out.doc.spaces.empty()) {
        throw std::invalid_argument("'" + o.file + "' declares no space");
      }
      if (o.space.empty()) {
        out.space = out.doc.spaces.front();
      } else if (auto const* s = out.doc.find_space(o.space)) {
        out.space = *s;
      } else {
        throw std::invalid_argument("no space '" + o.space + "' in '" + o.file + "'");
      }
      return out;
    }

    json rational_row(RatMat const& row) {
      json a = json::array();
      for (std::size_t c = 0; c < row.cols(); ++c) {
        a.push_back(row(0, c).get_str());
      }
      return a;
    }

    json matrix_json(RatMat const& m) {
      json a = json::array();
      for (std::size_t r = 0; r < m.rows(); ++r) {
        a.push_back(rational_row(m.row_block(r, 1)));
      }
      return a;
    }

    std::string tuple_string(json const& values) {
      std::string s = "(";
      for (std::size_t i = 0; i < values.size(); ++i) {
        s += (i == 0 ? "" : ", ") + values[i].get<std::string>();
      }
      return s + ")";
    }

    std::string yes_no(bool b) {
      return b ? "yes" : "no";
    }

    // Each command fills `report` and renders its table from it, so the two
    // outputs cannot disagree.
    struct Outcome {
      json        report;
      std::string table;
      bool        negative = false;
    };

    Outcome cmd_tangent(Options const& o) {
      auto const loaded = load(o);
      auto const& p     = loaded.space;
      auto const  t     = tangent_space(p);
      auto const  tk    = higher_tangent_space(p, o.k);
      Outcome     r;
      r.report = {{"command", "tangent"},
                  {"space", p.name},
                  {"k", o.k},
                  {"dim_T", t.dim},
                  {"dim_Tk", tk.dim},
                  {"dim_wedge_k_T", binomial(t.dim, o.k)}};
      auto const& j = r.report;
      r.table       = "space " + p.name + "\ndim T = " + std::to_string(j["dim_T"].get<std::size_t>())
                + "\n";
      if (o.k != 1) {
        auto ks = std::to_string(o.k);
        r.table += "dim T^" + ks + " = " + std::to_string(j["dim_Tk"].get<std::size_t>()) + "\n";
        r.table += "dim wedge^" + ks + " T = "
                   + std::to_string(j["dim_wedge_k_T"].get<std::size_t>()) + "\n";
      }
      return r;
    }

    Outcome cmd_rho(Options const& o) {
      auto const loaded = load(o);
      auto const& p     = loaded.space;
      auto const  rho   = rho_map(p, o.k);
      auto const  rk    = rank(rho);
      bool const  inj   = rk == rho.cols();
      bool const  surj  = rk == rho.rows();
      Outcome     r;
      r.report   = {{"command", "rho"},
                    {"space", p.name},
                    {"k", o.k},
                    {"source_dim", rho.cols()},
                    {"target_dim", rho.rows()},
                    {"rank", rk},
                    {"injective", inj},
                    {"surjective", surj},
                    {"iso", inj && surj},
                    {"matrix", matrix_json(rho)}};
      r.negative = !(inj && surj);
      std::string verdict;
      if (!inj) {
        verdict = "not injective";
      }
      if (!surj) {
        verdict += std::string(verdict.empty() ? "" : ", ") + "not surjective";
      }
      if (verdict.empty()) {
        verdict = "iso";
      }
      r.table = "space " + p.name + "\nrho : T^" + std::to_string(o.k) + " -> wedge^"
                + std::to_string(o.k) + " T\nsource " + std::to_string(rho.cols()) + ", target "
                + std::to_string(rho.rows()) + ", " + verdict + "\nrank "
                + std::to_string(rk) + "\n";
      return r;
    }

    NamedForm const& find_form(Loaded const& loaded, Options const& o) {
      auto const* f = loaded.doc.find_form(o.form);
      if (f == nullptr) {
        throw std::invalid_argument("no form '" + o.form + "'");
      }
      if (f->space != loaded.space.name) {
        throw std::invalid_argument("form '" + o.form + "' lives on space '" + f->space
                                    + "', not '" + loaded.space.name + "'");
      }
      return *f;
    }

    Outcome cmd_check_form(Options const& o) {
      auto const  loaded  = load(o);
      auto const& f       = find_form(loaded, o);
      auto const  verdict = check_form_compatibility(loaded.space, f.form);
      Outcome     r;
      r.report = {{"command", "check-form"},
                  {"space", loaded.space.name},
                  {"form", f.name},
                  {"degree", f.form.degree},
                  {"compatible", verdict.compatible}};
      if (!verdict.compatible) {
        r.report["arrow"]    = verdict.arrow_id;
        r.report["residual"] = verdict.residual.to_string();
      }
      r.negative = !verdict.compatible;
      r.table    = "form " + f.name + " on " + loaded.space.name + ": " + verdict.to_string() + "\n";
      return r;
    }

    Outcome cmd_eval_form(Options const& o) {
      auto const  loaded = load(o);
      auto const& f      = find_form(loaded, o);
      auto const  pf     = form_at_point(loaded.space, f.form);
      bool const  vanish = vanishes_at_point(f.form);
      Outcome     r;
      r.report = {{"command", "eval-form"},
                  {"space", loaded.space.name},
                  {"form", f.name},
                  {"degree", f.form.degree},
                  {"fibre_dim", pf.values.cols()},
                  {"values", rational_row(pf.values)},
                  {"vanishes", vanish}};
      r.table = "form " + f.name + " at the marked point of " + loaded.space.name + "\nT^"
                + std::to_string(f.form.degree) + " fibre dim "
                + std::to_string(pf.values.cols()) + ", values "
                + tuple_string(r.report["values"]) + "\nvanishes: " + yes_no(vanish) + "\n";
      return r;
    }

    Outcome cmd_filtered(Options const& o) {
      if (o.depth == 0) {
        throw std::invalid_argument("--depth must be at least 1");
      }
      auto const loaded = load(o);
      auto const rep    = filteredness(loaded.space, o.depth);
      Outcome    r;
      r.report   = {{"command", "filtered"},
                    {"space", loaded.space.name},
                    {"depth", o.depth},
                    {"weakly_filtered", to_string(rep.weakly_filtered)},
                    {"filtered", to_string(rep.filtered)},
                    {"closed", rep.closed},
                    {"arrow_count", rep.arrow_count},
                    {"witnesses", rep.witnesses}};
      r.negative = rep.filtered != Verdict::yes;
      r.table    = "space " + loaded.space.name + "\nweakly_filtered: "
                + to_string(rep.weakly_filtered) + ", filtered: " + to_string(rep.filtered)
                + "\nclosure: " + (rep.closed ? "closed" : "not closed") + ", "
                + std::to_string(rep.arrow_count) + " arrows at depth "
                + std::to_string(o.depth) + "\n";
      for (auto const& w : rep.witnesses) {
        r.table += "  " + w + "\n";
      }
      return r;
    }

    Outcome cmd_sections(Options const& o) {
      auto const loaded = load(o);
      auto const doc    = parse_document(read_file(o.data), {loaded.space});
      auto const& p     = loaded.space;
      Outcome    r;
      r.report   = {{"command", "sections"}, {"space", p.name}, {"sections", json::array()}};
      r.table    = "space " + p.name + "\n";
      for (auto const& ns : doc.sections) {
        if (ns.space != p.name) {
          continue;
        }
        auto const v = check_section(p, ns.section);
        json       s = {{"name", ns.name},
                        {"kind", ns.section.kind == BundleKind::tangent ? "tangent" : "cotangent"},
                        {"valid", v.valid},
                        {"message", v.message},
                        {"constraints", matrix_json(v.constraints)},
                        {"forced_zero", json::array()}};
        std::string forced;
        for (auto const& slot : v.forced_zero) {
          auto label = p.charts[slot.chart].id + "[" + std::to_string(slot.component + 1) + "]";
          s["forced_zero"].push_back(label);
          forced += (forced.empty() ? "" : ", ") + label + "(0) = 0";
        }
        if (v.point_value) {
          auto const& pv   = *v.point_value;
          s["point_value"] = pv.rows() == 1 ? rational_row(pv) : rational_row(pv.transpose());
        }
        r.negative = r.negative || !v.valid;
        r.table += ns.name + " (" + s["kind"].get<std::string>() + "): " + v.message + "\n";
        if (!forced.empty()) {
          r.table += "  forced: " + forced + "\n";
        }
        if (s.contains("point_value")) {
          r.table += "  value at point: " + tuple_string(s["point_value"]) + "\n";
        }
        r.report["sections"].push_back(std::move(s));
      }
      return r;
    }

    Outcome cmd_catalog(Options const& o) {
      auto    entry = build_catalog_space(o.catalog_name, parse_params(o.params));
      Outcome r;
      auto    text = print_presentation(entry.presentation);
      json    params = json::object();
      for (auto const& [k, v] : entry.params) {
        params[k] = v;
      }
      r.report = {{"command", "catalog"},
                  {"name", entry.name},
                  {"space", entry.presentation.name},
                  {"params", params},
                  {"wedge_type", entry.wedge_type},
                  {"charts", entry.presentation.charts.size()},
                  {"arrows", entry.presentation.arrows.size()},
                  {"oracles", json::array()}};
      if (o.exported) {
        r.report["export"] = text;
        r.table            = text;
        return r;
      }
      r.table = "space " + entry.presentation.name + " (" + entry.name + ")\ncharts "
                + std::to_string(entry.presentation.charts.size()) + ", arrows "
                + std::to_string(entry.presentation.arrows.size())
                + ", wedge_type: " + yes_no(entry.wedge_type) + "\n";
      for (auto const& orc : entry.oracles) {
        auto computed = compute_quantity(entry.presentation, orc.quantity);
        r.negative    = r.negative || computed != orc.expected;
        r.report["oracles"].push_back({{"quantity", orc.quantity},
                                       {"expected", orc.expected},
                                       {"computed", computed},
                                       {"note", orc.note}});
        r.table += "  " + orc.quantity + " = " + computed
                   + (computed == orc.expected ? "" : " (expected " + orc.expected + ")")
                   + (orc.note.empty() ? "" : "  # " + orc.note) + "\n";
      }
      return r;
    }
  }  // namespace

  int run_command(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    Options  o;
    CLI::App app{"diffeo-kit: tangent spaces, k-forms and the map rho for presented "
                 "diffeological spaces"};
    app.name("diffeo-kit");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", o.json, "Print a JSON report");
    app.add_flag("--strict", o.strict, "Exit with 1 when the verdict is negative");

    auto source = [&](CLI::App* sub) {
      sub->add_option("FILE", o.file, "Presentation file or catalog:NAME")->required();
      sub->add_option("--space", o.space, "Space to use when the file declares several");
      sub->add_option("--params", o.params, "Catalog parameters, key=value[,key=value]");
    };

    auto* tangent = app.add_subcommand("tangent", "Fibre dimensions of T and T^k");
    source(tangent);
    tangent->add_option("--k", o.k, "Degree (default 1)");

    auto* rho = app.add_subcommand("rho", "The comparison map T^k -> wedge^k T");
    source(rho);
    rho->add_option("--k", o.k, "Degree")->required();

    auto* check = app.add_subcommand("check-form", "Compatibility of a presented form");
    source(check);
    check->add_option("--form", o.form, "Form name")->required();

    auto* eval = app.add_subcommand("eval-form", "Value of a form at the marked point");
    source(eval);
    eval->add_option("--form", o.form, "Form name")->required();

    auto* filtered = app.add_subcommand("filtered", "Weak filteredness and filteredness");
    source(filtered);
    filtered->add_option("--depth", o.depth, "Composition depth (default 4)");

    auto* sections = app.add_subcommand("sections", "Check sections on a wedge-type space");
    source(sections);
    sections->add_option("--data", o.data, "File with section blocks")->required();

    auto* catalog = app.add_subcommand("catalog", "Built-in example spaces");
    catalog->add_option("NAME", o.catalog_name, "Catalog space")->required();
    catalog->add_option("--params", o.params, "Parameters, key=value[,key=value]");
    catalog->add_flag("--export", o.exported, "Print the presentation in the text format");

    std::vector<std::string> argv_storage{"diffeo-kit"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) {
      argv.push_back(a.data());
    }

    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (CLI::Success const& e) {
      return app.exit(e, out, err);
    } catch (CLI::ParseError const& e) {
      app.exit(e, out, err);
      return exit_input_error;
    }

    try {
      Outcome r;
      if (tangent->parsed()) {
        r = cmd_tangent(o);
      } else if (rho->parsed()) {
        r = cmd_rho(o);
      } else if (check->parsed()) {
        r = cmd_check_form(o);
      } else if (eval->parsed()) {
        r = cmd_eval_form(o);
      } else if (filtered->parsed()) {
        r = cmd_filtered(o);
      } else if (sections->parsed()) {
        r = cmd_sections(o);
      } else {
        r = cmd_catalog(o);
      }
      if (o.json) {
        out << r.report.dump(2) << "\n";
      } else {
        out << r.table;
      }
      return o.strict && r.negative ? exit_negative : exit_ok;
    } catch (ParseError const& e) {
      err << "error: " << e.what() << "\n";
      return exit_input_error;
    } catch (std::invalid_argument const& e) {
      err << "error: " << e.what() << "\n";
      return exit_input_error;
    } catch (std::out_of_range const& e) {
      err << "error: " << e.what() << "\n";
      return exit_input_error;
    } catch (std::logic_error const& e) {
      err << "internal error: " << e.what() << "\n";
      return exit_internal;
    } catch (std::exception const& e) {
      err << "error: " << e.what() << "\n";
      return exit_input_error;
    }
  }

}  // namespace diffeo
