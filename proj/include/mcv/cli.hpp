#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcv/betti.hpp"
#include "mcv/complex.hpp"
#include "mcv/conjecture.hpp"
#include "mcv/error.hpp"
#include "mcv/homology.hpp"
#include "mcv/monomial.hpp"
#include "mcv/sweep.hpp"
#include "mcv/text_io.hpp"

namespace mcv::cli {

enum Exit : int { ok = 0, verdict_fails = 1, input_error = 2, budget_exceeded = 3 };

using Input = std::variant<MonomialIdeal, SimplicialComplex>;

/// "ideal" or "facets": the --as override, then the extension, then the
/// first meaningful line.
inline std::string detect_kind(const std::string& path, const std::string& text, const std::string& as) {
  if (!as.empty()) return as;
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() && path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with(".ideal")) return "ideal";
  if (ends_with(".facets")) return "facets";
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto body = detail::strip_comment(line);
    auto tokens = detail::split_ws(body);
    if (tokens.empty()) continue;
    if (tokens.front().starts_with("vars:") || tokens.front().front() == 'x') return "ideal";
    return "facets";
  }
  throw empty_input("input file is empty");
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw precondition_error("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline Input read_input(const std::string& path, const std::string& as) {
  const std::string text = read_file(path);
  const std::string kind = detect_kind(path, text, as);
  std::istringstream stream(text);
  if (kind == "ideal") {
    auto ideal = parse_ideal(stream);
    if (ideal.empty()) throw zero_ideal("the zero ideal is not accepted");
    return ideal;
  }
  return parse_facets(stream);
}

/// Squarefree ideals without linear generators are read as their complex.
inline std::optional<SimplicialComplex> as_complex(const Input& input) {
  if (const auto* k = std::get_if<SimplicialComplex>(&input)) return *k;
  const auto& ideal = std::get<MonomialIdeal>(input);
  if (!ideal.is_squarefree()) return std::nullopt;
  for (const auto& g : ideal.generators())
    if (g.degree() < 2) return std::nullopt;
  return from_squarefree_ideal(ideal);
}

struct Options {
  std::string field = "q";
  std::string resolution = "taylor";
  std::uint64_t max_lattice = Budget{}.max_lattice;
  std::uint64_t max_subsets = Budget{}.max_subsets;
  std::string out;
  std::string as;
  std::string ledger;
  bool all = false;
  std::vector<std::string> inputs;

  Budget budget() const {
    Budget b;
    b.max_lattice = max_lattice;
    b.max_subsets = max_subsets;
    return b;
  }
};

inline Report report_for(const Input& input, Resolution res, const Field& field, const Budget& budget) {
  if (const auto* k = std::get_if<SimplicialComplex>(&input)) return verify_bounds(*k, res, field, budget);
  return verify_bounds(std::get<MonomialIdeal>(input), res, field, budget);
}

inline BettiTable table_for(const Input& input, Resolution res, const Field& field, const Budget& budget) {
  if (const auto* k = std::get_if<SimplicialComplex>(&input)) {
    if (res == Resolution::minimal) return hochster_betti(*k, field, budget);
    const auto ideal = nonfaces_ideal(*k);
    return ideal.empty() ? BettiTable{} : taylor_betti(ideal, budget);
  }
  const auto& ideal = std::get<MonomialIdeal>(input);
  return res == Resolution::taylor ? taylor_betti(ideal, budget) : minimal_betti(ideal, field, budget);
}

inline std::size_t codimension_of(const Input& input) {
  if (const auto* k = std::get_if<SimplicialComplex>(&input)) return codimension(*k);
  return codimension(std::get<MonomialIdeal>(input));
}

inline nlohmann::ordered_json shifts_for(const Input& input, Resolution res, const Field& field, const Budget& budget,
                                         bool all) {
  const std::size_t c = codimension_of(input);
  ExtremalShifts shifts;
  std::size_t count = c;
  if (res == Resolution::taylor) {
    MonomialIdeal ideal = std::holds_alternative<MonomialIdeal>(input)
                              ? std::get<MonomialIdeal>(input)
                              : nonfaces_ideal(std::get<SimplicialComplex>(input));
    if (all) count = ideal.size();
    if (count) shifts = taylor_shifts(ideal, count, budget);
  } else {
    const auto table = table_for(input, res, field, budget);
    if (all) count = table.length();
    shifts = extremal_shifts(table, count);
  }
  nlohmann::ordered_json out;
  out["resolution"] = to_string(res);
  out["field"] = field.to_string();
  out["c"] = c;
  out["positions"] = count;
  out["m"] = shifts.m;
  out["M"] = shifts.M;
  return out;
}

/// Runs one command line; writes documents to `out` and diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiplicity bounds for monomial ideals and Stanley-Reisner rings", "mcv"};
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* sub, bool inputs, bool resolution) {
    sub->add_option("--field", opt.field, "Coefficient field: q or gf:<p>")->capture_default_str();
    if (resolution)
      sub->add_option("--resolution", opt.resolution, "taylor or minimal")
          ->check(CLI::IsMember({"taylor", "minimal"}))
          ->capture_default_str();
    sub->add_option("--max-lattice", opt.max_lattice, "Maximum LCM-lattice size")->capture_default_str();
    sub->add_option("--max-subsets", opt.max_subsets, "Maximum number of enumerated subsets")->capture_default_str();
    sub->add_option("--out", opt.out, "Write the output document to this path");
    if (inputs) sub->add_option("--as", opt.as, "Input kind override")->check(CLI::IsMember({"ideal", "facets"}));
  };

  auto* analyze = app.add_subcommand("analyze", "Full bound report for an ideal or facet file");
  common(analyze, true, true);
  analyze->add_option("input", opt.inputs, "Input file")->required()->expected(1);

  auto* betti = app.add_subcommand("betti", "Graded Betti table (Taylor or minimal)");
  common(betti, true, true);
  betti->add_option("input", opt.inputs, "Input file")->required()->expected(1);

  auto* shifts = app.add_subcommand("shifts", "Minimal and maximal shift sequences");
  common(shifts, true, true);
  shifts->add_flag("--all", opt.all, "Emit every position instead of the first c");
  shifts->add_option("input", opt.inputs, "Input file")->required()->expected(1);

  auto* verify = app.add_subcommand("verify", "Report and exit 0 iff all applicable verdicts hold");
  common(verify, true, true);
  verify->add_option("input", opt.inputs, "Input file")->required()->expected(1);

  auto* classify = app.add_subcommand("classify", "Equality class of a flag complex");
  common(classify, true, false);
  classify->add_option("input", opt.inputs, "Input file")->required()->expected(1);

  auto* union_check = app.add_subcommand("union-check", "Union inequality for two facet files over shared labels");
  common(union_check, false, true);
  union_check->add_option("inputs", opt.inputs, "Two facet files")->required()->expected(2);

  auto* sweep_cmd = app.add_subcommand("sweep", "Run a theorem sweep from a key=value config file");
  sweep_cmd->add_option("--ledger", opt.ledger, "Ledger path (overrides output= in the config)");
  sweep_cmd->add_option("--out", opt.out, "Write the summary to this path");
  sweep_cmd->add_option("config", opt.inputs, "Config file")->required()->expected(1);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return input_error;
  }

  std::ostringstream doc;
  int status = ok;
  try {
    const Budget budget = opt.budget();
    if (*sweep_cmd) {
      std::ifstream in(opt.inputs.front());
      if (!in) throw precondition_error("cannot open '" + opt.inputs.front() + "'");
      auto cfg = SweepConfig::parse(in);
      if (!opt.ledger.empty()) cfg.output = opt.ledger;
      const auto result = sweep(cfg);
      doc << result.summary().dump(2) << '\n';
      if (result.counterexample) status = verdict_fails;
      else if (!result.complete) status = budget_exceeded;
    } else if (*union_check) {
      const Field field = Field::parse(opt.field);
      const auto a = parse_facets(std::string_view(read_file(opt.inputs[0])));
      const auto b = parse_facets(std::string_view(read_file(opt.inputs[1])));
      const auto report = check_union_inequality(a, b, parse_resolution(opt.resolution), field, budget);
      doc << report.to_json().dump(2) << '\n';
      if (!report.outcome.inequality_holds && report.outcome.applicable) status = verdict_fails;
    } else {
      const Field field = Field::parse(opt.field);
      const Resolution res = parse_resolution(opt.resolution);
      const Input input = read_input(opt.inputs.front(), opt.as);
      if (*analyze || *verify) {
        const auto report = report_for(input, res, field, budget);
        doc << report.to_json().dump(2) << '\n';
        if (*verify && !report.ok()) status = verdict_fails;
      } else if (*betti) {
        doc << table_for(input, res, field, budget).to_json().dump() << '\n';
      } else if (*shifts) {
        doc << shifts_for(input, res, field, budget, opt.all).dump() << '\n';
      } else if (*classify) {
        const auto k = as_complex(input);
        if (!k) throw precondition_error("classification needs a flag complex or a quadratic squarefree ideal");
        nlohmann::ordered_json j;
        j["input"] = canonical_form(*k).to_string();
        j["field"] = field.to_string();
        j["upper"] = classify_upper_equality(*k).to_json();
        j["lower"] = is_cohen_macaulay(*k, field) ? classify_lower_equality(*k, field).to_json()
                                                   : nlohmann::ordered_json(nullptr);
        doc << j.dump(2) << '\n';
      }
    }
  } catch (const budget_error& e) {
    err << "error: " << e.what() << '\n';
    return budget_exceeded;
  } catch (const parse_error& e) {
    err << "error: " << e.what() << '\n';
    return input_error;
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return input_error;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return input_error;
  }

  if (!opt.out.empty()) {
    std::ofstream file(opt.out, std::ios::trunc);
    if (!file) {
      err << "error: cannot write '" << opt.out << "'\n";
      return input_error;
    }
    file << doc.str();
  } else {
    out << doc.str();
  }
  return status;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

} // namespace mcv::cli
