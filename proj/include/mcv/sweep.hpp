#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "mcv/betti.hpp"
#include "mcv/canonical.hpp"
#include "mcv/complex.hpp"
#include "mcv/conjecture.hpp"
#include "mcv/enumeration.hpp"
#include "mcv/error.hpp"
#include "mcv/homology.hpp"
#include "mcv/shifts.hpp"

namespace mcv {

struct TheoremInfo {
  std::string_view id;
  std::size_t default_max;
  std::size_t limit;
  std::string_view summary;
};

inline constexpr TheoremInfo theorem_table[] = {
    {"quad", 7, 8, "flag complexes: Taylor upper bound; Taylor lower bound when Cohen-Macaulay"},
    {"flag-lb", 7, 8, "Cohen-Macaulay flag complexes: Taylor lower bound and e >= n - d + 1"},
    {"flag-ub", 7, 8, "flag complexes: Taylor upper bound; records the M_i >= 3i/2 claim"},
    {"equality-props", 7, 8, "flag complexes: equality in a Taylor bound iff a listed family"},
    {"tenred", 4, 5, "pairs of Cohen-Macaulay complexes: joins inherit the bounds; equality criteria; join shifts"},
    {"ub-balanced", 7, 8, "a-balanced complexes with a_i <= 4: Taylor upper bound"},
    {"union", 6, 6, "unions of two induced subcomplexes: union inequalities and equality conditions"},
    {"almost-quadratic", 7, 8, "quadratic generators plus one of degree 3..5: Taylor upper bound"},
    {"incm", 6, 6, "Taylor maximal shifts grow until they reach the number of used variables"},
    {"homred", 6, 6, "vertex-deletion reduction and the averaging identity"},
    {"turan", 8, 8, "minimal generator counts n(n-d)/(2d) and 3n^2/(8d) for n > 4d"},
    {"dominance", 6, 6, "minimal Betti numbers and shifts are dominated by Taylor ones"},
    {"huneke-miller", 6, 6, "Cohen-Macaulay with pure resolution implies e = F(m)"},
};

inline const TheoremInfo& theorem_info(std::string_view id) {
  for (const auto& t : theorem_table)
    if (t.id == id) return t;
  throw precondition_error("unknown theorem id '" + std::string(id) + "'");
}

struct SweepConfig {
  std::string theorem;
  std::size_t max_vertices = 0;  // 0: theorem default
  std::vector<Field> fields{Field::rationals(), Field::prime(2)};
  std::vector<Resolution> resolutions{Resolution::taylor};
  Budget budget;
  std::string output;  // ledger path; empty keeps the ledger in memory
  std::size_t threads = 0;  // 0: hardware concurrency

  std::size_t vertex_limit() const { return max_vertices ? max_vertices : theorem_info(theorem).default_max; }

  void validate() const {
    const auto& info = theorem_info(theorem);
    if (vertex_limit() == 0 || vertex_limit() > info.limit)
      throw precondition_error("max_vertices for " + theorem + " must be in 1.." + std::to_string(info.limit));
    if (fields.empty()) throw precondition_error("at least one field is required");
    if (resolutions.empty()) throw precondition_error("at least one resolution is required");
    if (budget.max_lattice == 0 || budget.max_subsets == 0 || budget.max_instances == 0)
      throw precondition_error("budgets must be positive");
  }

  /// key=value lines; '#' starts a comment.
  static SweepConfig parse(std::istream& in) {
    SweepConfig cfg;
    std::string line;
    std::size_t number = 0;
    auto split_list = [](const std::string& value) {
      std::vector<std::string> out;
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
      }
      return out;
    };
    auto to_count = [&](const std::string& value) -> std::uint64_t {
      try {
        std::size_t used = 0;
        auto v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
      } catch (const std::exception&) {
        throw parse_error(number, "expected a nonnegative integer, got '" + value + "'");
      }
    };
    while (std::getline(in, line)) {
      ++number;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      auto eq = line.find('=');
      if (eq == std::string::npos) throw parse_error(number, "expected key=value");
      auto trim = [](std::string s) {
        auto l = s.find_first_not_of(" \t\r");
        auto r = s.find_last_not_of(" \t\r");
        return l == std::string::npos ? std::string{} : s.substr(l, r - l + 1);
      };
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      try {
        if (key == "theorem") {
          theorem_info(value);
          cfg.theorem = value;
        } else if (key == "max_vertices") {
          cfg.max_vertices = to_count(value);
        } else if (key == "fields") {
          cfg.fields.clear();
          for (const auto& f : split_list(value)) cfg.fields.push_back(Field::parse(f));
        } else if (key == "resolutions") {
          cfg.resolutions.clear();
          for (const auto& r : split_list(value)) cfg.resolutions.push_back(parse_resolution(r));
        } else if (key == "max_lattice") {
          cfg.budget.max_lattice = to_count(value);
        } else if (key == "max_subsets") {
          cfg.budget.max_subsets = to_count(value);
        } else if (key == "max_instances") {
          cfg.budget.max_instances = to_count(value);
        } else if (key == "output") {
          cfg.output = value;
        } else if (key == "threads") {
          cfg.threads = to_count(value);
        } else {
          throw parse_error(number, "unknown key '" + key + "'");
        }
      } catch (const parse_error&) {
        throw;
      } catch (const error& e) {
        throw parse_error(number, e.what());
      }
    }
    if (cfg.theorem.empty()) throw parse_error(number, "missing theorem=<id>");
    cfg.validate();
    return cfg;
  }
};

struct SweepResult {
  std::string theorem;
  std::size_t evaluated = 0;
  std::size_t resumed = 0;
  std::optional<std::string> counterexample;
  bool complete = true;
  std::string incomplete_reason;
  std::map<std::string, std::size_t> tallies;
  std::vector<nlohmann::ordered_json> ledger;

  std::size_t counterexamples() const { return counterexample ? 1 : 0; }
  std::size_t tally(const std::string& name) const {
    auto it = tallies.find(name);
    return it == tallies.end() ? 0 : it->second;
  }

  nlohmann::ordered_json summary() const {
    nlohmann::ordered_json out;
    out["theorem"] = theorem;
    out["evaluated"] = evaluated;
    out["resumed"] = resumed;
    out["counterexamples"] = counterexamples();
    out["counterexample"] = counterexample ? nlohmann::ordered_json(*counterexample) : nlohmann::ordered_json(nullptr);
    out["complete"] = complete;
    if (!complete) out["reason"] = incomplete_reason;
    out["tallies"] = tallies;
    return out;
  }
};

namespace detail {

struct TaskOutcome {
  nlohmann::ordered_json line;
  bool holds = true;
  std::vector<std::string> tallies;
};

struct SweepTask {
  std::string canonical;
  std::string field;
  std::string resolution;
  std::function<TaskOutcome()> run;
};

inline std::string task_key(const std::string& canonical, const std::string& field, const std::string& resolution) {
  return canonical + '\x1f' + field + '\x1f' + resolution;
}

inline nlohmann::ordered_json ledger_line(const std::string& theorem, const std::string& canonical, const Report& r) {
  nlohmann::ordered_json out;
  out["theorem"] = theorem;
  out["canonical"] = canonical;
  const auto fields = r.to_json();
  for (auto& [k, v] : fields.items()) out[k] = v;
  return out;
}

inline nlohmann::ordered_json ledger_line(const std::string& theorem, const std::string& canonical,
                                          const Field& field, Resolution res) {
  nlohmann::ordered_json out;
  out["theorem"] = theorem;
  out["canonical"] = canonical;
  out["field"] = field.to_string();
  out["resolution"] = to_string(res);
  return out;
}

inline std::vector<SimplicialComplex> dedupe_sorted(std::vector<SimplicialComplex> all) {
  std::map<CanonicalForm, SimplicialComplex> by_form;
  for (auto& k : all) {
    auto form = canonical_form(k);
    by_form.emplace(form, form.complex());
  }
  std::vector<SimplicialComplex> out;
  for (auto& [form, k] : by_form) out.push_back(std::move(k));
  return out;
}

inline std::vector<SimplicialComplex> general_corpus(std::size_t n, const Budget& budget) {
  return enum_complexes_upto(std::min(n, max_complex_vertices), budget);
}

inline std::vector<SimplicialComplex> mixed_corpus(std::size_t n, const Budget& budget) {
  auto all = general_corpus(n, budget);
  auto flags = flag_complexes_upto(n, budget);
  all.insert(all.end(), flags.begin(), flags.end());
  return dedupe_sorted(std::move(all));
}

inline bool complement_connected(const SimplicialComplex& k) {
  const auto g = one_skeleton(k);
  const std::size_t n = g.n;
  VertexMask seen = 1, frontier = 1;
  const VertexMask all = low_bits(n);
  while (frontier) {
    VertexMask next = 0;
    for (VertexMask rest = frontier; rest; rest &= rest - 1) {
      auto v = static_cast<std::size_t>(std::countr_zero(rest));
      next |= all & ~g.adjacency[v] & ~bit(v);
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == all;
}

inline std::size_t max_complement_degree(const SimplicialComplex& k) {
  const auto g = one_skeleton(k);
  std::size_t best = 0;
  for (std::size_t v = 0; v < g.n; ++v) best = std::max(best, g.n - 1 - popcount(g.adjacency[v]));
  return best;
}

inline std::vector<std::vector<std::size_t>> compositions(std::size_t d, std::size_t max_part) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current;
  std::function<void(std::size_t)> go = [&](std::size_t left) {
    if (left == 0) {
      out.push_back(current);
      return;
    }
    for (std::size_t p = 1; p <= std::min(left, max_part); ++p) {
      current.push_back(p);
      go(left - p);
      current.pop_back();
    }
  };
  go(d);
  return out;
}

// -- per-theorem task builders ------------------------------------------------

inline Verdict verdict_of(const Report& r, bool upper) { return upper ? r.upper : r.lower; }

inline std::vector<SweepTask> quad_tasks(const SweepConfig& cfg, const std::string& theorem) {
  std::vector<SweepTask> tasks;
  for (const auto& k : flag_complexes_upto(cfg.vertex_limit(), cfg.budget)) {
    const auto canonical = canonical_form(k).to_string();
    for (const auto& field : cfg.fields)
      for (auto res : cfg.resolutions) {
        tasks.push_back({canonical, field.to_string(), to_string(res), [=, &cfg] {
          TaskOutcome out;
          auto r = verify_bounds(k, res, field, cfg.budget);
          out.line = ledger_line(theorem, canonical, r);
          const auto n = k.vertex_count();
          const auto d = static_cast<std::size_t>(k.dimension() + 1);
          if (theorem == "quad") {
            out.holds = r.ok();
          } else if (theorem == "flag-lb") {
            out.line["hypothesis"] = r.cm;
            const bool tree_bound = !r.cm || r.e >= n - d + 1;
            out.line["e_at_least_n_minus_d_plus_1"] = tree_bound;
            out.holds = satisfied(r.lower) && tree_bound;
            if (r.cm) out.tallies.push_back("cohen-macaulay");
          } else {
            out.holds = satisfied(r.upper);
            // Proof-internal claim: connected complement graph with a vertex of
            // degree >= 3 and n < 3d gives M_i >= 3i/2 for i <= n - d.
            std::string claim = "not-applicable";
            if (r.c > 0 && complement_connected(k) && max_complement_degree(k) >= 3 && n < 3 * d &&
                res == Resolution::taylor) {
              claim = "holds";
              for (std::size_t i = 0; i < r.M.size(); ++i)
                if (2 * r.M[i] < 3 * (i + 1)) claim = "fails";
              out.tallies.push_back("claim-" + claim);
            }
            out.line["claim_three_halves"] = claim;
          }
          if (r.upper == Verdict::equality) out.tallies.push_back("upper-equality");
          if (r.lower == Verdict::equality) out.tallies.push_back("lower-equality");
          out.line["holds"] = out.holds;
          return out;
        }});
      }
  }
  return tasks;
}

inline std::vector<SweepTask> equality_tasks(const SweepConfig& cfg) {
  std::vector<SweepTask> tasks;
  for (const auto& k : flag_complexes_upto(cfg.vertex_limit(), cfg.budget)) {
    const auto canonical = canonical_form(k).to_string();
    for (const auto& field : cfg.fields) {
      tasks.push_back({canonical, field.to_string(), "taylor", [=, &cfg] {
        TaskOutcome out;
        auto r = verify_bounds(k, Resolution::taylor, field, cfg.budget);
        out.line = ledger_line("equality-props", canonical, r);
        if (r.c == 0) {
          // Simplices meet both empty-product bounds and are not compared.
          out.line["hypothesis"] = false;
          out.line["holds"] = true;
          return out;
        }
        const auto upper = classify_upper_equality(k);
        const bool upper_agrees = (r.upper == Verdict::equality) == !upper.none();
        out.line["upper_class"] = upper.tag;
        bool lower_agrees = true;
        if (r.cm) {
          const auto lower = classify_lower_equality(k, field);
          lower_agrees = (r.lower == Verdict::equality) == !lower.none();
          out.line["lower_class"] = lower.tag;
          if (r.lower == Verdict::equality) out.tallies.push_back("lower-equality:" + lower.tag);
        } else {
          out.line["lower_class"] = nullptr;
        }
        if (r.upper == Verdict::equality) out.tallies.push_back("upper-equality:" + upper.tag);
        out.holds = upper_agrees && lower_agrees;
        out.line["holds"] = out.holds;
        return out;
      }});
    }
  }
  return tasks;
}

inline std::vector<SweepTask> tenred_tasks(const SweepConfig& cfg) {
  std::vector<SweepTask> tasks;
  const auto corpus = general_corpus(cfg.vertex_limit(), cfg.budget);
  for (const auto& field : cfg.fields) {
    std::vector<const SimplicialComplex*> cm;
    for (const auto& k : corpus)
      if (is_cohen_macaulay(k, field)) cm.push_back(&k);
    for (std::size_t a = 0; a < cm.size(); ++a)
      for (std::size_t b = a; b < cm.size(); ++b) {
        const auto k1 = *cm[a];
        const auto k2 = *cm[b];
        const auto canonical = canonical_form(k1).to_string() + "*" + canonical_form(k2).to_string();
        for (auto res : cfg.resolutions) {
          tasks.push_back({canonical, field.to_string(), to_string(res), [=, &cfg] {
            TaskOutcome out;
            const auto j = join(k1, relabel_offset(k2, static_cast<int>(k1.vertex_count())));
            const auto r1 = verify_bounds(k1, res, field, cfg.budget);
            const auto r2 = verify_bounds(k2, res, field, cfg.budget);
            const auto rj = verify_bounds(j, res, field, cfg.budget);
            out.line = ledger_line("tenred", canonical, rj);
            // Inheritance of both inequalities.
            bool holds = (!satisfied(r1.upper) || !satisfied(r2.upper) || satisfied(rj.upper)) &&
                         (!satisfied(r1.lower) || !satisfied(r2.lower) || satisfied(rj.lower));
            // Equality criteria, for factors of positive codimension.
            if (r1.c > 0 && r2.c > 0) {
              const bool lower_pred = r1.lower == Verdict::equality && r2.lower == Verdict::equality &&
                                      check_tensor_equality_conditions(r1.m, r2.m, r1.c, r2.c);
              const bool upper_pred = r1.upper == Verdict::equality && r2.upper == Verdict::equality &&
                                      check_tensor_equality_conditions(r1.M, r2.M, r1.c, r2.c);
              const bool lower_ok = lower_pred == (rj.lower == Verdict::equality);
              const bool upper_ok = upper_pred == (rj.upper == Verdict::equality);
              out.line["lower_equality_criterion"] = lower_ok;
              out.line["upper_equality_criterion"] = upper_ok;
              holds = holds && lower_ok && upper_ok;
              if (rj.lower == Verdict::equality) out.tallies.push_back("join-lower-equality");
              if (rj.upper == Verdict::equality) out.tallies.push_back("join-upper-equality");
            }
            // Full shift sequences of the join are the joins of the factors' sequences.
            auto full = [&](const SimplicialComplex& k) {
              if (res == Resolution::taylor) {
                const auto ideal = nonfaces_ideal(k);
                return ideal.empty() ? ExtremalShifts{} : taylor_shifts(ideal, ideal.size(), cfg.budget);
              }
              const auto table = hochster_betti(k, field, cfg.budget);
              return extremal_shifts(table, table.length());
            };
            const auto s1 = full(k1), s2 = full(k2), sj = full(j);
            const bool shifts_ok = sj.m == lower_join(s1.m, s2.m) && sj.M == upper_join(s1.M, s2.M);
            out.line["join_shifts"] = shifts_ok;
            holds = holds && shifts_ok;
            out.holds = holds;
            out.line["holds"] = holds;
            return out;
          }});
        }
      }
  }
  return tasks;
}

inline std::vector<SweepTask> balanced_tasks(const SweepConfig& cfg) {
  std::vector<SweepTask> tasks;
  for (const auto& k : mixed_corpus(cfg.vertex_limit(), cfg.budget)) {
    const auto canonical = canonical_form(k).to_string();
    const auto& field = cfg.fields.front();
    tasks.push_back({canonical, field.to_string(), "taylor", [=, &cfg] {
      TaskOutcome out;
      const auto d = static_cast<std::size_t>(k.dimension() + 1);
      std::optional<BalanceSpec> witness;
      if (auto complete = is_completely_balanced(k)) {
        witness = complete;
        out.tallies.push_back("completely-balanced");
      } else {
        for (const auto& a : compositions(d, 4))
          if ((witness = is_balanced(k, a))) break;
      }
      auto r = verify_bounds(k, Resolution::taylor, field, cfg.budget);
      out.line = ledger_line("ub-balanced", canonical, r);
      out.line["hypothesis"] = witness.has_value();
      if (!witness) {
        out.line["holds"] = true;
        return out;
      }
      out.line["a"] = witness->a;
      out.holds = satisfied(r.upper);
      if (r.upper == Verdict::equality) {
        // Observed, not asserted: equality only for the join of the color classes.
        std::vector<VertexMask> classes(witness->a.size(), 0);
        for (std::size_t v = 0; v < k.vertex_count(); ++v)
          classes[witness->coloring.at(k.labels()[v]) - 1] |= bit(v);
        std::optional<SimplicialComplex> product;
        for (VertexMask cls : classes) {
          if (!cls) continue;
          auto part = induced_mask(k, cls);
          product = product ? join(*product, part) : part;
        }
        const bool is_join = product && *product == k;
        out.line["equality_is_join_of_classes"] = is_join;
        out.tallies.push_back(is_join ? "equality-join-of-classes" : "equality-not-join-of-classes");
      }
      out.line["holds"] = out.holds;
      return out;
    }});
  }
  return tasks;
}

inline std::vector<SweepTask> union_tasks(const SweepConfig& cfg) {
  std::vector<SweepTask> tasks;
  for (const auto& x : general_corpus(cfg.vertex_limit(), cfg.budget)) {
    if (x.vertex_count() < 2) continue;
    const auto canonical = canonical_form(x).to_string();
    for (const auto& field : cfg.fields)
      for (auto res : cfg.resolutions) {
        tasks.push_back({canonical, field.to_string(), to_string(res), [=, &cfg] {
          TaskOutcome out;
          const std::size_t n = x.vertex_count();
          const VertexMask all = x.all_vertices();
          struct Part {
            SimplicialComplex k;
            std::size_t n, d;
            std::uint64_t e;
            ShiftSequence M;
          };
          std::unordered_map<VertexMask, Part> cache;
          auto part = [&](VertexMask w) -> const Part& {
            auto it = cache.find(w);
            if (it != cache.end()) return it->second;
            auto k = induced_mask(x, w);
            Part p{k, k.vertex_count(), static_cast<std::size_t>(k.dimension() + 1), multiplicity(k),
                   complex_shifts(k, res, field, cfg.budget, codimension(k)).M};
            return cache.emplace(w, std::move(p)).first->second;
          };
          const auto r = verify_bounds(x, res, field, cfg.budget);
          out.line = ledger_line("union", canonical, r);
          std::size_t pairs = 0, applicable = 0, equalities = 0;
          bool holds = true;
          if (r.c > 0) {
            for (VertexMask w1 = 1; w1 < all; ++w1)
              for (VertexMask w2 = w1 + 1; w2 < all; ++w2) {
                if ((w1 | w2) != all || (w1 & ~w2) == 0 || (w2 & ~w1) == 0) continue;
                // Every facet must lie in one side for X to be the union.
                bool covered = std::all_of(x.facets().begin(), x.facets().end(), [&](VertexMask f) {
                  return (f & ~w1) == 0 || (f & ~w2) == 0;
                });
                if (!covered) continue;
                ++pairs;
                const auto& p1 = part(w1);
                const auto& p2 = part(w2);
                UnionInput in;
                in.n_union = n;
                in.d = static_cast<std::size_t>(x.dimension() + 1);
                in.n1 = p1.n;
                in.d1 = p1.d;
                in.n2 = p2.n;
                in.d2 = p2.d;
                in.e_union = r.e;
                in.e1 = p1.e;
                in.e2 = p2.e;
                in.M_union = r.M;
                in.M1 = p1.M;
                in.M2 = p2.M;
                const VertexMask common = w1 & w2;
                in.f0_intersection = popcount(common);
                in.intersection_has_top_face = std::any_of(x.facets().begin(), x.facets().end(), [&](VertexMask f) {
                  return popcount(f) == in.d && (f & ~common) == 0;
                });
                const auto o = evaluate_union(in);
                if (!o.applicable) continue;
                ++applicable;
                if (!o.inequality_holds) holds = false;
                if (o.equality && o.z >= 0) {
                  ++equalities;
                  if (!o.necessary_conditions) holds = false;
                }
              }
          }
          out.line["pairs"] = pairs;
          out.line["applicable"] = applicable;
          out.line["equalities"] = equalities;
          out.line["holds"] = holds;
          out.holds = holds;
          if (applicable) out.tallies.push_back("with-applicable-pairs");
          for (std::size_t i = 0; i < applicable; ++i) out.tallies.push_back("applicable-pairs");
          for (std::size_t i = 0; i < equalities; ++i) out.tallies.push_back("equality-pairs");
          return out;
        }});
      }
  }
  return tasks;
}

inline std::vector<SweepTask> almost_quadratic_tasks(const SweepConfig& cfg) {
  std::vector<SweepTask> tasks;
  std::map<CanonicalForm, SimplicialComplex> instances;
  for (std::size_t n = 3; n <= cfg.vertex_limit(); ++n)
    for (const Graph& g : enum_graphs(n, cfg.budget)) {
      // Independent sets of size 3..5 give a minimal generator of that degree.
      for (VertexMask s = 1; s <= low_bits(n); ++s) {
        const std::size_t size = popcount(s);
        if (size < 3 || size > 5) continue;
        bool independent = true;
        for (auto [u, v] : g.edges())
          if ((s & bit(u)) && (s & bit(v))) independent = false;
        if (!independent) continue;
        std::vector<Monomial> gens;
        for (auto [u, v] : g.edges()) {
          std::vector<Exponent> e(n, 0);
          e[u] = e[v] = 1;
          gens.emplace_back(std::move(e));
        }
        std::vector<Exponent> e(n, 0);
        for (std::size_t v = 0; v < n; ++v)
          if (s & bit(v)) e[v] = 1;
        gens.emplace_back(std::move(e));
        auto k = from_squarefree_ideal(MonomialIdeal(n, std::move(gens)));
        auto form = canonical_form(k);
        instances.emplace(form, form.complex());
        if (instances.size() > cfg.budget.max_instances)
          throw budget_error("max-instances", cfg.budget.max_instances, instances.size());
      }
    }
  const auto& field = cfg.fields.front();
  for (auto& [form, k] : instances) {
    const auto canonical = form.to_string();
    tasks.push_back({canonical, field.to_string(), "taylor", [=, &cfg] {
      TaskOutcome out;
      auto r = verify_bounds(k, Resolution::taylor, field, cfg.budget);
      out.line = ledger_line("almost-quadratic", canonical, r);
      out.holds = satisfied(r.upper);
      if (r.upper == Verdict::equality) out.tallies.push_back("upper-equality");
      out.line["holds"] = out.holds;
      return out;
    }});
  }
  return tasks;
}

/// M_i < r implies M_{i+1} > M_i, and M_i = r implies M_{i+1} = r, for the
/// full Taylor maximal shift sequence of a squarefree ideal.
inline bool incm_holds(const ShiftSequence& M, std::size_t r) {
  for (std::size_t i = 0; i + 1 < M.size(); ++i) {
    if (M[i] < r && !(M[i + 1] > M[i])) return false;
    if (M[i] == r && M[i + 1] != r) return false;
  }
  return true;
}

inline std::vector<SweepTask> incm_tasks(const SweepConfig& cfg) {
  std::vector<SweepTask> tasks;
  const auto& field = cfg.fields.front();
  for (const auto& k : general_corpus(cfg.vertex_limit(), cfg.budget)) {
    const auto canonical = canonical_form(k).to_string();
    tasks.push_back({canonical, field.to_string(), "taylor", [=, &cfg] {
      TaskOutcome out;
      auto r = verify_bounds(k, Resolution::taylor, field, cfg.budget);
      out.line = ledger_line("incm", canonical, r);
      const auto ideal = nonfaces_ideal(k);
      bool holds = true;
      if (!ideal.empty()) {
        const auto M = taylor_shifts(ideal, ideal.size(), cfg.budget).M;
        const std::size_t used = ideal.used_variables().size();
        holds = incm_holds(M, used);
        out.line["M_full"] = M;
        out.line["r"] = used;
      }
      out.holds = holds;
      out.line["holds"] = holds;
      return out;
    }});
  }
  return tasks;
}

inline std::vector<SweepTask> homred_tasks(const SweepConfig& cfg) {
  std::vector<SweepTask> tasks;
  for (const auto& k : general_corpus(cfg.vertex_limit(), cfg.budget)) {
    const auto canonical = canonical_form(k).to_string();
    for (const auto& field : cfg.fields)
      for (auto res : cfg.resolutions) {
        tasks.push_back({canonical, field.to_string(), to_string(res), [=, &cfg] {
          TaskOutcome out;
          auto r = verify_bounds(k, res, field, cfg.budget);
          out.line = ledger_line("homred", canonical, r);
          const auto cert = homred_applicable(k, res, field, cfg.budget);
          const auto certificate = cert.to_json();
          for (auto& [key, v] : certificate.items()) out.line["homred_" + key] = v;
          bool holds = true;
          if (cert.enough_vertices) {
            holds = cert.identity_holds;
            if (cert.applicable && cert.deletions_hold) {
              out.tallies.push_back("premises-met");
              holds = holds && satisfied(r.upper);
            }
          }
          out.holds = holds;
          out.line["holds"] = holds;
          return out;
        }});
      }
  }
  return tasks;
}

inline std::vector<SweepTask> turan_tasks(const SweepConfig& cfg) {
  std::vector<SweepTask> tasks;
  const auto& field = cfg.fields.front();
  for (const auto& k : mixed_corpus(cfg.vertex_limit(), cfg.budget)) {
    const auto canonical = canonical_form(k).to_string();
    tasks.push_back({canonical, field.to_string(), "none", [=] {
      TaskOutcome out;
      out.line = ledger_line("turan", canonical, field, Resolution::taylor);
      out.line["resolution"] = "none";
      const auto n = static_cast<std::int64_t>(k.vertex_count());
      const auto d = static_cast<std::int64_t>(k.dimension() + 1);
      const auto gens = static_cast<std::int64_t>(minimal_nonfaces(k).size());
      const Rational step(n * (n - d), 2 * d);
      const Rational quarter(3 * n * n, 8 * d);
      const bool step_ok = Rational(gens) >= step;
      const bool large = n > 4 * d;
      const bool final_ok = !large || Rational(gens) >= quarter;
      out.line["n"] = n;
      out.line["d"] = d;
      out.line["generators"] = gens;
      out.line["turan_step"] = to_fraction_string(step);
      out.line["large"] = large;
      out.holds = step_ok && final_ok;
      if (large) out.tallies.push_back("n-above-4d");
      out.line["holds"] = out.holds;
      return out;
    }});
  }
  return tasks;
}

inline std::vector<SweepTask> dominance_tasks(const SweepConfig& cfg) {
  std::vector<SweepTask> tasks;
  for (const auto& k : general_corpus(cfg.vertex_limit(), cfg.budget)) {
    const auto canonical = canonical_form(k).to_string();
    for (const auto& field : cfg.fields) {
      tasks.push_back({canonical, field.to_string(), "minimal", [=, &cfg] {
        TaskOutcome out;
        const auto rm = verify_bounds(k, Resolution::minimal, field, cfg.budget);
        const auto rt = verify_bounds(k, Resolution::taylor, field, cfg.budget);
        out.line = ledger_line("dominance", canonical, rm);
        bool holds = true;
        const auto ideal = nonfaces_ideal(k);
        if (!ideal.empty()) {
          const auto taylor = taylor_betti(ideal, cfg.budget);
          const auto minimal = hochster_betti(k, field, cfg.budget);
          const bool entries = dominated_by(minimal, taylor);
          const std::size_t len = std::min(taylor.length(), minimal.length());
          const auto st = extremal_shifts(taylor, len);
          const auto sm = extremal_shifts(minimal, len);
          bool shifts = true;
          for (std::size_t i = 0; i < len; ++i)
            if (sm.m[i] < st.m[i] || sm.M[i] > st.M[i]) shifts = false;
          const bool bounds = rm.U <= rt.U && rm.L >= rt.L;
          out.line["entrywise"] = entries;
          out.line["shifts"] = shifts;
          out.line["bounds"] = bounds;
          holds = entries && shifts && bounds;
        }
        out.holds = holds;
        out.line["holds"] = holds;
        return out;
      }});
    }
  }
  return tasks;
}

inline std::vector<SweepTask> huneke_miller_tasks(const SweepConfig& cfg) {
  std::vector<SweepTask> tasks;
  for (const auto& k : general_corpus(cfg.vertex_limit(), cfg.budget)) {
    const auto canonical = canonical_form(k).to_string();
    for (const auto& field : cfg.fields) {
      tasks.push_back({canonical, field.to_string(), "minimal", [=, &cfg] {
        TaskOutcome out;
        const auto r = verify_bounds(k, Resolution::minimal, field, cfg.budget);
        out.line = ledger_line("huneke-miller", canonical, r);
        const auto hm = huneke_miller(k, field, cfg.budget);
        out.line["premise"] = hm.premise;
        if (hm.premise) out.tallies.push_back("premise");
        out.holds = hm.holds;
        out.line["holds"] = hm.holds;
        return out;
      }});
    }
  }
  return tasks;
}

inline std::vector<SweepTask> build_tasks(const SweepConfig& cfg) {
  const auto& t = cfg.theorem;
  if (t == "quad" || t == "flag-lb" || t == "flag-ub") return quad_tasks(cfg, t);
  if (t == "equality-props") return equality_tasks(cfg);
  if (t == "tenred") return tenred_tasks(cfg);
  if (t == "ub-balanced") return balanced_tasks(cfg);
  if (t == "union") return union_tasks(cfg);
  if (t == "almost-quadratic") return almost_quadratic_tasks(cfg);
  if (t == "incm") return incm_tasks(cfg);
  if (t == "homred") return homred_tasks(cfg);
  if (t == "turan") return turan_tasks(cfg);
  if (t == "dominance") return dominance_tasks(cfg);
  if (t == "huneke-miller") return huneke_miller_tasks(cfg);
  throw precondition_error("unknown theorem id '" + t + "'");
}

inline bool ledger_less(const nlohmann::ordered_json& a, const nlohmann::ordered_json& b) {
  auto key = [](const nlohmann::ordered_json& j) {
    auto get = [&](const char* k) { return j.contains(k) && j[k].is_string() ? j[k].get<std::string>() : std::string{}; };
    return std::make_tuple(get("canonical"), get("field"), get("resolution"), j.dump());
  };
  return key(a) < key(b);
}

inline void write_ledger(const std::string& path, const std::vector<nlohmann::ordered_json>& lines) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw precondition_error("cannot write ledger '" + path + "'");
    for (const auto& line : lines) out << line.dump() << '\n';
  }
  std::filesystem::rename(tmp, path);
}

} // namespace detail

/// Runs a theorem sweep. Instances already present in an existing ledger at
/// cfg.output are skipped; the final ledger is sorted and rewritten.
inline SweepResult sweep(const SweepConfig& cfg) {
  cfg.validate();
  SweepResult result;
  result.theorem = cfg.theorem;

  std::vector<nlohmann::ordered_json> kept;
  std::unordered_set<std::string> done;
  if (!cfg.output.empty() && std::filesystem::exists(cfg.output)) {
    std::ifstream in(cfg.output);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto j = nlohmann::ordered_json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.is_object()) continue;
      if (j.value("theorem", "") != cfg.theorem || j.contains("incomplete")) continue;
      if (!j.contains("holds") || !j["holds"].is_boolean()) continue;
      done.insert(detail::task_key(j.value("canonical", ""), j.value("field", ""), j.value("resolution", "")));
      kept.push_back(std::move(j));
    }
  }

  std::vector<detail::SweepTask> tasks;
  try {
    tasks = detail::build_tasks(cfg);
  } catch (const budget_error& e) {
    result.complete = false;
    result.incomplete_reason = e.what();
  }

  std::vector<detail::SweepTask*> pending;
  for (auto& t : tasks) {
    if (done.count(detail::task_key(t.canonical, t.field, t.resolution))) {
      ++result.resumed;
      continue;
    }
    pending.push_back(&t);
  }

  std::ofstream append;
  if (!cfg.output.empty()) append.open(cfg.output, std::ios::app);

  const std::size_t threads =
      std::max<std::size_t>(1, cfg.threads ? cfg.threads : std::thread::hardware_concurrency());
  const std::size_t chunk = std::max<std::size_t>(64, threads * 16);
  std::vector<nlohmann::ordered_json> fresh;
  for (std::size_t start = 0; start < pending.size() && !result.counterexample; start += chunk) {
    const std::size_t stop = std::min(pending.size(), start + chunk);
    std::vector<std::optional<detail::TaskOutcome>> outcomes(stop - start);
    std::vector<std::string> failures(stop - start);
    std::atomic<std::size_t> next{start};
    std::exception_ptr fault;
    std::mutex fault_mutex;
    auto worker = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < stop;) {
        try {
          outcomes[i - start] = pending[i]->run();
        } catch (const budget_error& e) {
          failures[i - start] = e.what();
        } catch (...) {
          std::lock_guard lock(fault_mutex);
          if (!fault) fault = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < threads; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (fault) std::rethrow_exception(fault);

    for (std::size_t i = start; i < stop; ++i) {
      auto& slot = outcomes[i - start];
      if (!slot) {
        result.complete = false;
        if (result.incomplete_reason.empty()) result.incomplete_reason = failures[i - start];
        continue;
      }
      ++result.evaluated;
      for (const auto& t : slot->tallies) ++result.tallies[t];
      if (append.is_open()) append << slot->line.dump() << '\n' << std::flush;
      fresh.push_back(std::move(slot->line));
      if (!slot->holds) {
        result.counterexample = pending[i]->canonical;
        break;
      }
    }
  }
  append.close();

  result.ledger = std::move(kept);
  result.ledger.insert(result.ledger.end(), std::make_move_iterator(fresh.begin()), std::make_move_iterator(fresh.end()));
  std::sort(result.ledger.begin(), result.ledger.end(), detail::ledger_less);
  if (!result.complete) {
    nlohmann::ordered_json marker;
    marker["theorem"] = cfg.theorem;
    marker["incomplete"] = true;
    marker["reason"] = result.incomplete_reason;
    result.ledger.push_back(std::move(marker));
  }
  if (!cfg.output.empty()) detail::write_ledger(cfg.output, result.ledger);
  return result;
}

} // namespace mcv
