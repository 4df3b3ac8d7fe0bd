#pragma once

#include "guesscost/analysis.hpp"
#include "guesscost/ingest.hpp"
#include "guesscost/simulator.hpp"
#include "guesscost/strategy.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace guesscost::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kConfig = 2,
  kNotCovered = 3,
  kUndecidable = 4,
  kCapExceeded = 5,
  kVerifyFailed = 6,
};

inline int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::NotCovered: return kNotCovered;
    case ErrorKind::UndecidableOverlap: return kUndecidable;
    case ErrorKind::CapExceeded: return kCapExceeded;
    case ErrorKind::Domain: return kUsage;
    default: return kConfig;
  }
}

namespace detail {

inline std::string fixed(double v, int places) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, v);
  return buf;
}

class Printer {
 public:
  Printer(std::ostream& out, bool machine) : out_(out), machine_(machine) {}

  // Rationals print as n/d in machine mode and 4-place decimals otherwise.
  void rational(const std::string& key, const std::string& label, const Rational& r) {
    line(key, label, machine_ ? to_fraction_string(r) : to_decimal_string(r, 4));
  }
  void natural(const std::string& key, const std::string& label, const Natural& n) { line(key, label, n.str()); }
  void real(const std::string& key, const std::string& label, double v, int places = 4) {
    line(key, label, fixed(v, places));
  }
  void text(const std::string& key, const std::string& label, const std::string& v) { line(key, label, v); }

  bool machine() const noexcept { return machine_; }

 private:
  void line(const std::string& key, const std::string& label, const std::string& value) {
    if (machine_) {
      out_ << key << "=" << value << "\n";
    } else {
      out_ << label << ": " << value << "\n";
    }
  }

  std::ostream& out_;
  bool machine_;
};

inline Natural natural_arg(const std::string& s, const char* what) {
  auto n = parse_natural(s);
  if (!n) throw CLI::ValidationError(what, "expected a non-negative integer, got '" + s + "'");
  return *n;
}

inline Word read_password(std::istream& in) {
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return from_utf8(line);
}

}  // namespace detail

/// Runs one CLI invocation. `args` excludes the program name.
inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Password strength as expected guessing-attack cost against a stratified attacker strategy",
               "guesscost"};
  app.require_subcommand(1);
  app.fallthrough();
  bool machine = false;
  std::uint64_t cap = kDefaultMaterializeCap;
  app.add_flag("--machine", machine, "Line-oriented key=value output, rationals as n/d");
  app.add_option("--cap", cap, "Materialization cap (words)")->check(CLI::PositiveNumber);

  std::string strategy_a, strategy_b, dist_path;
  std::optional<std::string> password;
  std::string short_size, long_size, alphabet_size;
  std::uint64_t trials = 20000, seed = 0;
  unsigned threads = 1;
  std::string mode = "shuffle";
  std::optional<double> verify_z;

  auto* inspect = app.add_subcommand("inspect", "Per-layer declared, effective and cumulative sizes");
  inspect->add_option("strategy", strategy_a)->required();

  auto* strength_cmd = app.add_subcommand("strength", "Strength of one password (read from stdin)");
  strength_cmd->add_option("strategy", strategy_a)->required();
  strength_cmd->add_option("--password", password, "Password on the command line (ends up in shell history)");

  auto* cost = app.add_subcommand("cost", "Expected attack cost under a distribution");
  cost->add_option("strategy", strategy_a)->required();
  cost->add_option("dist", dist_path)->required();

  auto* compare = app.add_subcommand("compare", "Expected costs of two strategies under one distribution");
  compare->add_option("strategyA", strategy_a)->required();
  compare->add_option("strategyB", strategy_b)->required();
  compare->add_option("dist", dist_path)->required();

  auto* threshold = app.add_subcommand("threshold", "Probability of the short stratum at which both orders tie");
  auto* t_short = threshold->add_option("--short", short_size, "Size of the short stratum");
  auto* t_long = threshold->add_option("--long", long_size, "Size of the long stratum");
  auto* t_alpha = threshold->add_option("--alphabet-size", alphabet_size, "Add-one-symbol threshold for |A|");
  t_short->needs(t_long);
  t_long->needs(t_short);
  t_alpha->excludes(t_short)->excludes(t_long);

  auto* mistake = app.add_subcommand("mistake", "Cost of searching the short stratum first when it is empty-handed");
  mistake->add_option("--short", short_size)->required();
  mistake->add_option("--long", long_size)->required();

  auto* simulate = app.add_subcommand("simulate", "Seeded Monte Carlo guessing attacks");
  simulate->add_option("strategy", strategy_a)->required();
  simulate->add_option("dist", dist_path)->required();
  simulate->add_option("--trials", trials)->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed);
  simulate->add_option("--mode", mode)->check(CLI::IsMember({"shuffle", "rank", "full"}));
  simulate->add_option("--threads", threads)->check(CLI::PositiveNumber);
  simulate->add_option("--verify", verify_z, "Fail unless |mean - analytic| <= Z standard errors")
      ->check(CLI::PositiveNumber);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
    if (threshold->parsed() && t_short->count() == 0 && t_alpha->count() == 0) {
      throw CLI::RequiredError("threshold needs --short/--long or --alphabet-size");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "guesscost: " << e.what() << "\n";
    return kUsage;
  }

  detail::Printer print(out, machine);
  auto load = [&](const std::string& path) {
    LoadedStrategy loaded = load_strategy(path, cap);
    for (const auto& w : loaded.warnings) err << "warning: " << w << "\n";
    return loaded;
  };
  auto load_dist = [&] { return parse_distribution(read_file(dist_path)); };

  try {
    if (inspect->parsed()) {
      const LoadedStrategy loaded = load(strategy_a);
      const Strategy& s = loaded.strategy;
      print.natural("layers", "layers", s.size());
      for (std::size_t k = 1; k <= s.size(); ++k) {
        const EffectiveLayer& layer = s.layers()[k - 1];
        const std::string p = "layer." + std::to_string(k) + ".";
        const std::string h = "layer " + std::to_string(k) + " ";
        print.text(p + "kind", h + "kind", layer.spec.kind_name());
        print.natural(p + "declared_index", h + "declared as layer", layer.declared_index + 1);
        print.natural(p + "declared", h + "declared size", layer.declared_size);
        print.natural(p + "effective", h + "effective size", layer.effective_size);
        print.natural(p + "cumulative", h + "cumulative size", s.cumulative(k));
      }
      print.natural("total", "total", s.total());
      return kOk;
    }

    if (strength_cmd->parsed()) {
      const LoadedStrategy loaded = load(strategy_a);
      const Word pw = password ? from_utf8(*password) : detail::read_password(in);
      try {
        const StrengthReport r = strength(loaded.strategy, pw);
        print.natural("layer", "layer", r.layer_index);
        print.natural("preceding", "preceding guesses", r.preceding);
        print.natural("layer_size", "layer size", r.layer_size);
        print.rational("strength", "strength (guesses)", r.strength.value());
        print.real("bits", "bits", r.bits);
      } catch (const NotCoveredError& e) {
        if (machine) {
          out << "covered=false\ntotal=" << e.total().str() << "\n";
        } else {
          out << "not covered: stronger than all " << e.total().str() << " candidates of this strategy\n";
        }
        return kNotCovered;
      }
      return kOk;
    }

    if (cost->parsed()) {
      const LoadedStrategy loaded = load(strategy_a);
      const CostValue c = expected_cost(loaded.strategy, load_dist());
      print.rational("cost", "expected cost (guesses)", c.value());
      print.real("bits", "bits", to_bits(c));
      return kOk;
    }

    if (compare->parsed()) {
      const LoadedStrategy a = load(strategy_a);
      const LoadedStrategy b = load(strategy_b);
      const StrategyComparison r = compare_strategies(a.strategy, b.strategy, load_dist());
      print.rational("cost_a", "cost A", r.cost_a.value());
      print.rational("cost_b", "cost B", r.cost_b.value());
      print.text("better", "cheaper for the attacker", to_string(r.better));
      return kOk;
    }

    if (threshold->parsed()) {
      if (t_alpha->count()) {
        print.rational("threshold", "threshold p_short", add_letter_threshold(detail::natural_arg(alphabet_size, "--alphabet-size")));
      } else {
        print.rational("threshold", "threshold p_short",
                       threshold_short_prob(detail::natural_arg(short_size, "--short"),
                                            detail::natural_arg(long_size, "--long")));
      }
      return kOk;
    }

    if (mistake->parsed()) {
      const MistakeBound m =
          mistake_bound(detail::natural_arg(short_size, "--short"), detail::natural_arg(long_size, "--long"));
      print.natural("difference", "difference (guesses)", m.difference);
      print.rational("ratio", "ratio", m.exact_ratio);
      return kOk;
    }

    if (simulate->parsed()) {
      const LoadedStrategy loaded = load(strategy_a);
      const Distribution dist = load_dist();
      SimConfig cfg{*sim_mode_from_string(mode), trials, seed, cap, threads};
      const TrialStats stats = run_trials(loaded.strategy, dist, cfg);
      print.text("mode", "mode", to_string(cfg.mode));
      print.natural("trials", "trials", stats.count);
      print.natural("seed", "seed", seed);
      print.rational("mean", "mean attack length", stats.mean_exact);
      print.real("stddev", "stddev", stats.stddev, 6);
      print.real("standard_error", "standard error", stats.standard_error, 6);
      print.natural("min", "min", stats.min);
      print.natural("max", "max", stats.max);
      if (verify_z) {
        const VerifyReport v = verify_against(stats, expected_cost(loaded.strategy, dist), *verify_z);
        print.rational("analytic", "analytic cost", v.analytic.value());
        print.real("difference", "difference", v.difference, 6);
        print.real("margin", "margin", v.margin, 6);
        print.text("verify", "verify", v.pass ? "pass" : "fail");
        if (!v.pass) return kVerifyFailed;
      }
      return kOk;
    }
  } catch (const CLI::ValidationError& e) {
    err << "guesscost: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "guesscost: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kUsage;
}

}  // namespace guesscost::cli
