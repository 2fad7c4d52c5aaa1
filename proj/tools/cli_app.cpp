#include "cli_app.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "gll/gll.hpp"
#include "gll/io.hpp"

namespace gll::cli {
namespace {

struct ModelFlags {
  std::string model = "binomial";
  std::optional<int> x, n, x1, n1, x2, n2;
  std::string data;
};

void add_model_flags(CLI::App* cmd, ModelFlags& f) {
  cmd->add_option("--model", f.model, "binomial | two-binomial | bivnorm-mean-diff | bivnorm-sd-ratio")
      ->check(CLI::IsMember({"binomial", "two-binomial", "bivnorm-mean-diff", "bivnorm-sd-ratio"}));
  cmd->add_option("--x", f.x, "binomial successes");
  cmd->add_option("--n", f.n, "binomial trials");
  cmd->add_option("--x1", f.x1, "group 1 successes");
  cmd->add_option("--n1", f.n1, "group 1 trials");
  cmd->add_option("--x2", f.x2, "group 2 successes");
  cmd->add_option("--n2", f.n2, "group 2 trials");
  cmd->add_option("--data", f.data, "paired CSV with header y_t,y_r");
}

int need(const std::optional<int>& v, const char* flag, const std::string& model) {
  if (!v) throw DomainError(model + " model needs " + flag);
  return *v;
}

LikelihoodModel build_model(const ModelFlags& f, const OptimizerConfig& cfg) {
  if (f.model == "binomial") return binomial_model(BinomialData(need(f.x, "--x", f.model), need(f.n, "--n", f.model)));
  if (f.model == "two-binomial") {
    TwoBinomialData d(need(f.x1, "--x1", f.model), need(f.n1, "--n1", f.model), need(f.x2, "--x2", f.model),
                      need(f.n2, "--n2", f.model));
    return two_binomial_model(d, cfg);
  }
  if (f.data.empty()) throw DomainError(f.model + " model needs --data");
  std::ifstream in(f.data);
  if (!in) throw DomainError("cannot open " + f.data);
  const PairedSample s = read_paired_csv(in);
  if (f.model == "bivnorm-mean-diff") return bivnorm_mean_diff_model(s);
  return bivnorm_sd_ratio_model(s);
}

OptimizerConfig load_config(const std::string& flag) {
  std::string path = flag;
  if (path.empty()) {
    if (const char* env = std::getenv("GLL_CONFIG")) path = env;
  }
  OptimizerConfig cfg;
  if (path.empty()) return cfg;
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config " + path);
  return apply_config(cfg, json::parse(in));
}

GridSpec parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw DomainError("grid must look like lo:hi:steps");
  auto num = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::logic_error&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw DomainError("bad grid number '" + s + "'");
    return v;
  };
  const double steps = num(parts[2]);
  if (steps != std::floor(steps) || steps < 1 || steps > 1e7) throw DomainError("grid steps must be a positive integer");
  return GridSpec{num(parts[0]), num(parts[1]), static_cast<int>(steps)};
}

ScalarRegion parse_mu_region(const std::string& text) {
  const ParameterSpace space({{"mu", Interval::real_line()}});
  return parse_region(text, space).projection(0);
}

std::string join_args(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) {
    if (!s.empty()) s += ' ';
    s += a;
  }
  return s;
}

class Manifest {
public:
  Manifest(std::string command, const std::vector<std::string>& args)
      : command_(std::move(command)), args_(args), start_(std::chrono::steady_clock::now()) {}

  json finish(std::uint64_t seed) const {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
    return {{"command", command_},
            {"args", args_},
            {"argv", join_args(args_)},
            {"version", version},
            {"seed", seed},
            {"duration_seconds", number(dt.count())}};
  }

private:
  std::string command_;
  std::vector<std::string> args_;
  std::chrono::steady_clock::time_point start_;
};

json reduced_json(double r) {
  const Strength s = classify_strength(std::log(r));
  // r is the ratio of H2 over H1, so the larger side names the favoured hypothesis
  const char* direction = s.favors == Favors::h1 ? "H2" : s.favors == Favors::h2 ? "H1" : "neither";
  return {{"glr", number(r)}, {"direction", direction}, {"strength_label", s.label}, {"descriptive_only", true}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evidence for composite hypotheses via generalized likelihood ratios", "gll"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version));
  std::string config_path;
  app.add_option("--config", config_path, "optimizer config JSON (default: $GLL_CONFIG)");

  ModelFlags mf;
  std::string h1_text, h2_text, interest, grid_text, out_path;
  bool use_complement = false;
  double k = 8.0;

  auto* glr_cmd = app.add_subcommand("glr", "GLR of H1 over H2");
  add_model_flags(glr_cmd, mf);
  glr_cmd->add_option("--h1", h1_text, "predicate for H1")->required();
  auto* h2_opt = glr_cmd->add_option("--h2", h2_text, "predicate for H2");
  auto* comp_opt = glr_cmd->add_flag("--complement", use_complement, "use the complement of H1 as H2");
  h2_opt->excludes(comp_opt);

  auto* profile_cmd = app.add_subcommand("profile", "profile likelihood curve as CSV");
  add_model_flags(profile_cmd, mf);
  profile_cmd->add_option("--interest", interest, "parameter of interest");
  profile_cmd->add_option("--grid", grid_text, "lo:hi:steps")->required();
  profile_cmd->add_option("--out", out_path, "CSV destination (default stdout)");

  auto* support_cmd = app.add_subcommand("support", "1/k support set");
  add_model_flags(support_cmd, mf);
  support_cmd->add_option("--k", k, "support level, > 1")->required();
  support_cmd->add_option("--interest", interest, "parameter of interest");

  std::string scenario, family_name = "binomial", sizes_text = "50,200,800", raw_out;
  std::optional<double> theta0;
  int sim_n = 2500, reps = 2000;
  unsigned threads = 0;
  std::uint64_t seed = 1;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo distribution of 2 log GLR");
  sim_cmd->add_option("--scenario", scenario)
      ->required()
      ->check(CLI::IsMember({"boundary", "consistency", "point-null"}));
  sim_cmd->add_option("--family", family_name)->check(CLI::IsMember({"binomial", "normal-mean"}));
  sim_cmd->add_option("--theta0", theta0, "true parameter value");
  sim_cmd->add_option("--n", sim_n, "sample size");
  sim_cmd->add_option("--replications", reps);
  sim_cmd->add_option("--seed", seed);
  sim_cmd->add_option("--threads", threads, "0 uses every core");
  sim_cmd->add_option("--h1", h1_text, "override the scenario's H1");
  sim_cmd->add_option("--h2", h2_text, "override H2 (default: complement of H1)");
  sim_cmd->add_option("--sizes", sizes_text, "consistency sample sizes, comma separated");
  sim_cmd->add_option("--raw-out", raw_out, "CSV of raw 2 log GLR values");

  auto* reduced_cmd = app.add_subcommand("reduced", "GLR from a test result or p-value");
  reduced_cmd->require_subcommand(1);
  std::string kind = "one-sided", result;
  double alpha = 0.05, pi_max = 1.0, u = 0.5, scale = 1.0;
  auto* test_cmd = reduced_cmd->add_subcommand("test", "GLR of H2 over H1 from the test decision");
  test_cmd->add_option("--alpha", alpha)->required();
  test_cmd->add_option("--kind", kind)
      ->check(CLI::IsMember({"one-sided", "point-null-one-sided", "two-sided-point-null", "equivalence"}));
  test_cmd->add_option("--result", result)->required()->check(CLI::IsMember({"reject", "accept"}));
  test_cmd->add_option("--pi-max", pi_max, "peak power (equivalence)");
  auto* pvalue_cmd = reduced_cmd->add_subcommand("pvalue", "GLR of H2 over H1 from a one-sided p-value");
  pvalue_cmd->add_option("--u", u)->required();
  pvalue_cmd->add_option("--h1", h1_text, "region of mu (default mu <= 0)");
  pvalue_cmd->add_option("--h2", h2_text, "region of mu (default mu > 0)");
  pvalue_cmd->add_option("--scale", scale, "shift per unit mu");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    const OptimizerConfig cfg = load_config(config_path);

    if (*glr_cmd) {
      Manifest man("glr", args);
      const LikelihoodModel m = build_model(mf, cfg);
      const Region h1 = parse_region(h1_text, m.space());
      if (!use_complement && h2_text.empty()) throw DomainError("glr needs --h2 or --complement");
      const Region h2 = use_complement ? complement(h1) : parse_region(h2_text, m.space());
      json j = to_json(glr(m, h1, h2, cfg), m.space());
      j["model"] = mf.model;
      j["h1_region"] = to_json(h1);
      j["h2_region"] = to_json(h2);
      j["manifest"] = man.finish(cfg.seed);
      out << dump12(j) << '\n';
      return exit_ok;
    }

    if (*profile_cmd) {
      Manifest man("profile", args);
      const LikelihoodModel m = build_model(mf, cfg);
      const ProfileCurve c = profile_curve(m, interest, parse_grid(grid_text), cfg);
      json j = {{"model", mf.model},
                {"interest", c.interest},
                {"rows", c.grid.size()},
                {"peak_location", number(c.peak_location)},
                {"peak_log_value", number(c.peak_log_value)}};
      if (out_path.empty()) {
        write_profile_csv(out, c);
        j["manifest"] = man.finish(cfg.seed);
        err << dump12(j, -1) << '\n';
      } else {
        std::ofstream f(out_path);
        if (!f) throw DomainError("cannot write " + out_path);
        write_profile_csv(f, c);
        j["out"] = out_path;
        j["manifest"] = man.finish(cfg.seed);
        out << dump12(j) << '\n';
      }
      return exit_ok;
    }

    if (*support_cmd) {
      Manifest man("support", args);
      if (!(k > 1.0)) throw DomainError("support sets need k > 1");
      const LikelihoodModel m = build_model(mf, cfg);
      json j = to_json(support_set(m, k, cfg, interest));
      j["model"] = mf.model;
      j["manifest"] = man.finish(cfg.seed);
      out << dump12(j) << '\n';
      return exit_ok;
    }

    if (*sim_cmd) {
      Manifest man("simulate", args);
      SimulationConfig sc;
      sc.family = family_name == "binomial" ? Family::binomial : Family::normal_mean;
      const ParameterSpace space = family_space(sc.family);
      const std::string p = space[0].name;
      const double t0 = theta0.value_or(scenario == "boundary" ? 0.2 : scenario == "point-null" ? 0.5 : 0.1);
      std::string h1s = h1_text;
      LimitSpec limit = LimitSpec::boundary_mixture();
      if (scenario == "boundary") {
        if (h1s.empty()) h1s = p + " > " + format12(t0);
      } else if (scenario == "point-null") {
        if (h1s.empty()) h1s = p + " == " + format12(t0);
        limit = LimitSpec::point_null(1.0);
      } else if (h1s.empty()) {
        h1s = p + " <= 0.2";
      }
      sc.theta0 = t0;
      sc.h1 = parse_region(h1s, space);
      sc.h2 = h2_text.empty() ? complement(sc.h1) : parse_region(h2_text, space);
      sc.n = sim_n;
      sc.replications = reps;
      sc.seed = seed;
      sc.threads = threads;
      sc.optimizer = cfg;

      json config = {{"scenario", scenario},
                     {"family", to_string(sc.family)},
                     {"theta0", number(t0)},
                     {"replications", reps},
                     {"seed", seed},
                     {"h1", h1s},
                     {"h2", h2_text.empty() ? "complement of h1" : h2_text}};
      json j;
      if (scenario == "consistency") {
        std::vector<int> sizes;
        std::stringstream ss(sizes_text);
        for (std::string s; std::getline(ss, s, ',');) {
          try {
            sizes.push_back(std::stoi(s));
          } catch (const std::logic_error&) {
            throw DomainError("bad sample size '" + s + "'");
          }
        }
        config["sample_sizes"] = sizes;
        const ConsistencyReport rep = consistency_trend(sc, sizes);
        j = {{"config", config}, {"consistency", to_json(rep)}};
      } else {
        config["n"] = sim_n;
        config["limit"] = to_json(limit);
        const EmpiricalDistribution e = simulate_glr(sc);
        j = {{"config", config},
             {"count", e.size()},
             {"failures", e.failures},
             {"quantiles", quantiles_json(e)},
             {"fraction_positive", number(e.fraction_positive())},
             {"ks_distance", e.size() >= 100 ? number(ks_distance(e, limit)) : json(nullptr)}};
        if (!raw_out.empty()) {
          std::ofstream f(raw_out);
          if (!f) throw DomainError("cannot write " + raw_out);
          f << "two_log_glr\n";
          for (double v : e.values) f << format12(v) << '\n';
          j["raw_out"] = raw_out;
        }
      }
      j["manifest"] = man.finish(seed);
      out << dump12(j) << '\n';
      return exit_ok;
    }

    if (*test_cmd) {
      Manifest man("reduced test", args);
      PowerFunction pf = kind == "one-sided"              ? PowerFunction::one_sided(alpha)
                         : kind == "point-null-one-sided" ? PowerFunction::point_null_one_sided(alpha)
                         : kind == "two-sided-point-null" ? PowerFunction::two_sided_point_null(alpha)
                                                          : PowerFunction::equivalence(alpha, pi_max);
      const double r = glr_from_test(pf, result == "reject" ? TestOutcome::rejected : TestOutcome::not_rejected);
      json j = reduced_json(r);
      j["manifest"] = man.finish(cfg.seed);
      out << dump12(j) << '\n';
      return exit_ok;
    }

    if (*pvalue_cmd) {
      Manifest man("reduced pvalue", args);
      double r = 0;
      if (h1_text.empty() && h2_text.empty() && scale == 1.0) {
        r = glr_from_pvalue_normal(u);
      } else {
        const ScalarRegion h1 = parse_mu_region(h1_text.empty() ? "mu <= 0" : h1_text);
        const ScalarRegion h2 = parse_mu_region(h2_text.empty() ? "mu > 0" : h2_text);
        r = glr_from_pvalue_general(u, ShiftFamily{scale}, h1, h2);
      }
      json j = reduced_json(r);
      j["manifest"] = man.finish(cfg.seed);
      out << dump12(j) << '\n';
      return exit_ok;
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return exit_usage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return exit_usage;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return exit_numeric;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return exit_numeric;
  }
  err << "error: no command\n";
  return exit_usage;
}

}  // namespace gll::cli
