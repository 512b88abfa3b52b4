#include "diffeo/presentation.hpp"

#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

namespace diffeo {

  namespace {
    std::string dim_str(std::size_t n) {
      return "R^" + std::to_string(n);
    }

    std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x         = parent[x];
      }
      return x;
    }

    using ArrowKey = std::tuple<std::size_t, std::size_t, PolyMap>;

    constexpr std::size_t map_commutation_depth = 3;
  }  // namespace

  std::optional<std::size_t> GermPresentation::find_chart(std::string const& id) const {
    for (std::size_t i = 0; i < charts.size(); ++i) {
      if (charts[i].id == id) {
        return i;
      }
    }
    return std::nullopt;
  }

  std::size_t GermPresentation::chart_index(std::string const& id) const {
    auto i = find_chart(id);
    if (!i) {
      throw std::invalid_argument("unknown chart '" + id + "' in space '" + name + "'");
    }
    return *i;
  }

  std::size_t GermPresentation::max_chart_dim() const {
    std::size_t n = 0;
    for (auto const& c : charts) {
      n = std::max(n, c.dim);
    }
    return n;
  }

  std::size_t GermPresentation::add_chart(std::string id, std::size_t dim) {
    if (find_chart(id)) {
      throw std::invalid_argument("duplicate chart '" + id + "'");
    }
    charts.push_back({std::move(id), dim});
    return charts.size() - 1;
  }

  void GermPresentation::add_arrow(std::string        id,
                                   std::string const& src,
                                   std::string const& dst,
                                   PolyMap            map) {
    arrows.push_back({std::move(id), chart_index(src), chart_index(dst), std::move(map)});
  }

  std::string ValidationReport::to_string() const {
    if (ok()) {
      return "valid";
    }
    std::string out = "invalid:";
    for (auto const& v : violations) {
      out += "\n  - " + v;
    }
    return out;
  }

  ValidationReport validate_presentation(GermPresentation const& p) {
    ValidationReport report;
    auto&            bad = report.violations;

    if (p.charts.empty()) {
      bad.push_back("presentation has no charts");
      return report;
    }
    std::set<std::string> seen;
    for (auto const& c : p.charts) {
      if (!seen.insert(c.id).second) {
        bad.push_back("duplicate chart id '" + c.id + "'");
      }
    }

    bool shapes_ok = true;
    for (auto const& a : p.arrows) {
      if (a.src >= p.charts.size() || a.dst >= p.charts.size()) {
        bad.push_back("arrow '" + a.id + "' refers to a missing chart");
        shapes_ok = false;
        continue;
      }
      auto const& s = p.charts[a.src];
      auto const& t = p.charts[a.dst];
      if (a.map.source_dim() != s.dim || a.map.target_dim() != t.dim) {
        bad.push_back("arrow '" + a.id + "' : " + s.id + " -> " + t.id + " has shape "
                      + dim_str(a.map.source_dim()) + " -> " + dim_str(a.map.target_dim())
                      + ", expected " + dim_str(s.dim) + " -> " + dim_str(t.dim));
        shapes_ok = false;
        continue;
      }
      if (!a.map.is_pointed()) {
        bad.push_back("arrow '" + a.id + "' = " + a.map.to_string() + " is not pointed");
      }
    }

    std::vector<std::size_t> parent(p.charts.size());
    std::iota(parent.begin(), parent.end(), 0);
    for (auto const& a : p.arrows) {
      if (a.src < p.charts.size() && a.dst < p.charts.size()) {
        parent[find_root(parent, a.src)] = find_root(parent, a.dst);
      }
    }
    for (std::size_t i = 1; i < p.charts.size(); ++i) {
      if (find_root(parent, i) != find_root(parent, 0)) {
        bad.push_back("chart '" + p.charts[i].id + "' is not connected to chart '"
                      + p.charts[0].id + "' by arrows");
      }
    }

    if (p.ambient) {
      auto const& amb = *p.ambient;
      if (amb.embeds.size() != p.charts.size()) {
        bad.push_back("ambient has " + std::to_string(amb.embeds.size()) + " embeddings for "
                      + std::to_string(p.charts.size()) + " charts");
        return report;
      }
      bool embeds_ok = true;
      for (std::size_t i = 0; i < p.charts.size(); ++i) {
        auto const& e = amb.embeds[i];
        if (e.source_dim() != p.charts[i].dim || e.target_dim() != amb.dim) {
          bad.push_back("embedding of chart '" + p.charts[i].id + "' has shape "
                        + dim_str(e.source_dim()) + " -> " + dim_str(e.target_dim())
                        + ", expected " + dim_str(p.charts[i].dim) + " -> " + dim_str(amb.dim));
          embeds_ok = false;
        } else if (!e.is_pointed()) {
          bad.push_back("embedding of chart '" + p.charts[i].id + "' is not pointed");
        }
      }
      if (embeds_ok && shapes_ok) {
        for (auto const& a : p.arrows) {
          auto const lhs = compose_maps(amb.embeds[a.dst], a.map);
          auto const rhs = amb.embeds[a.src];
          if (lhs != rhs) {
            std::string diff;
            for (std::size_t c = 0; c < amb.dim; ++c) {
              diff += (c == 0 ? "" : ", ") + (lhs[c] - rhs[c]).to_string();
            }
            bad.push_back("ambient does not commute with arrow '" + a.id
                          + "': embed(dst) o arrow - embed(src) = [" + diff + "]");
          }
        }
      }
    }
    return report;
  }

  void require_valid(GermPresentation const& p) {
    auto const report = validate_presentation(p);
    if (!report.ok()) {
      throw std::invalid_argument("presentation '" + p.name + "' is " + report.to_string());
    }
  }

  bool is_wedge_type(GermPresentation const& p) {
    for (auto const& a : p.arrows) {
      if (p.charts[a.src].dim != 0) {
        return false;
      }
    }
    return true;
  }

  ClosureResult composition_closure(GermPresentation const& p, std::size_t depth) {
    if (depth == 0) {
      throw std::invalid_argument("composition_closure: depth must be at least 1");
    }
    ClosureResult      result;
    std::set<ArrowKey> seen;
    auto               insert = [&](GermArrow a) {
      if (seen.emplace(a.src, a.dst, a.map).second) {
        result.arrows.push_back(std::move(a));
        return true;
      }
      return false;
    };

    for (std::size_t i = 0; i < p.charts.size(); ++i) {
      insert({"id_" + p.charts[i].id, i, i, PolyMap::identity(p.charts[i].dim)});
    }
    for (auto const& a : p.arrows) {
      insert({a.id, a.src, a.dst, a.map});
    }

    for (std::size_t length = 2; length <= depth + 1; ++length) {
      std::vector<GermArrow> fresh;
      std::set<ArrowKey>     fresh_keys;
      for (auto const& a : result.arrows) {
        for (auto const& g : p.arrows) {
          if (g.src != a.dst) {
            continue;
          }
          auto     composite = compose_maps(g.map, a.map);
          ArrowKey key{a.src, g.dst, composite};
          if (seen.count(key) == 0 && fresh_keys.insert(key).second) {
            std::string name = a.id.rfind("id_", 0) == 0 ? g.id : g.id + "." + a.id;
            fresh.push_back({std::move(name), a.src, g.dst, std::move(composite)});
          }
        }
      }
      if (fresh.empty()) {
        result.closed = true;
        return result;
      }
      if (length == depth + 1) {
        return result;
      }
      for (auto& a : fresh) {
        insert(std::move(a));
      }
    }
    return result;
  }

  std::string to_string(Verdict v) {
    switch (v) {
      case Verdict::yes:
        return "yes";
      case Verdict::no:
        return "no";
      default:
        return "unknown";
    }
  }

  FilterReport filteredness(GermPresentation const& p, std::size_t depth) {
    require_valid(p);
    FilterReport report;
    auto const   closure = composition_closure(p, depth);
    report.closed        = closure.closed;
    report.arrow_count   = closure.arrows.size();
    if (!closure.closed) {
      return report;
    }
    auto const& arrows = closure.arrows;
    std::size_t n      = p.charts.size();

    // reach[i][k]: some arrow i -> k exists.
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (auto const& a : arrows) {
      reach[a.src][a.dst] = true;
    }

    report.weakly_filtered = Verdict::yes;
    for (std::size_t i = 0; i < n && report.weakly_filtered == Verdict::yes; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        bool common = false;
        for (std::size_t k = 0; k < n && !common; ++k) {
          common = reach[i][k] && reach[j][k];
        }
        if (!common) {
          report.weakly_filtered = Verdict::no;
          report.witnesses.push_back("charts '" + p.charts[i].id + "' and '" + p.charts[j].id
                                     + "' have no common chart receiving both");
          break;
        }
      }
    }
    if (report.weakly_filtered == Verdict::no) {
      report.filtered = Verdict::no;
      return report;
    }

    report.filtered = Verdict::yes;
    for (std::size_t x = 0; x < arrows.size() && report.filtered == Verdict::yes; ++x) {
      for (std::size_t y = x + 1; y < arrows.size(); ++y) {
        auto const& f = arrows[x];
        auto const& g = arrows[y];
        if (f.src != g.src || f.dst != g.dst) {
          continue;
        }
        bool coequalized = false;
        for (auto const& h : arrows) {
          if (h.src == f.dst && compose_maps(h.map, f.map) == compose_maps(h.map, g.map)) {
            coequalized = true;
            break;
          }
        }
        if (!coequalized) {
          report.filtered = Verdict::no;
          report.witnesses.push_back("parallel arrows '" + f.id + "' and '" + g.id
                                     + "' are not coequalized by any arrow");
          break;
        }
      }
    }
    return report;
  }

  ValidationReport validate_map(PresentedMap const& m) {
    ValidationReport report;
    auto&            bad = report.violations;
    auto const&      src = m.source;
    auto const&      tgt = m.target;
    if (m.images.size() != src.charts.size()) {
      bad.push_back("map has " + std::to_string(m.images.size()) + " chart images for "
                    + std::to_string(src.charts.size()) + " source charts");
      return report;
    }
    bool shapes_ok = true;
    for (std::size_t i = 0; i < src.charts.size(); ++i) {
      auto const& im = m.images[i];
      if (im.target_chart >= tgt.charts.size()) {
        bad.push_back("image of chart '" + src.charts[i].id + "' names a missing target chart");
        shapes_ok = false;
        continue;
      }
      auto const& tc = tgt.charts[im.target_chart];
      if (im.map.source_dim() != src.charts[i].dim || im.map.target_dim() != tc.dim) {
        bad.push_back("image of chart '" + src.charts[i].id + "' has shape "
                      + dim_str(im.map.source_dim()) + " -> " + dim_str(im.map.target_dim())
                      + ", expected " + dim_str(src.charts[i].dim) + " -> " + dim_str(tc.dim));
        shapes_ok = false;
      } else if (!im.map.is_pointed()) {
        bad.push_back("image of chart '" + src.charts[i].id + "' is not pointed");
      }
    }
    if (!shapes_ok) {
      return report;
    }
    auto const closure = composition_closure(tgt, map_commutation_depth);
    for (auto const& a : src.arrows) {
      auto const& gi  = m.images[a.src];
      auto const& gj  = m.images[a.dst];
      auto const  lhs = compose_maps(gj.map, a.map);
      bool        ok  = false;
      for (auto const& h : closure.arrows) {
        if (h.src == gi.target_chart && h.dst == gj.target_chart
            && compose_maps(h.map, gi.map) == lhs) {
          ok = true;
          break;
        }
      }
      if (!ok) {
        bad.push_back("source arrow '" + a.id + "' does not commute: image o arrow = "
                      + lhs.to_string() + " is not a target arrow applied to "
                      + gi.map.to_string());
      }
    }
    return report;
  }

}  // namespace diffeo
