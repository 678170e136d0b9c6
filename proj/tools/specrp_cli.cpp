// Command-line surface: seeded, config-driven dataset generation,
// rationality tests, noise-robust detection, probe optimization, and an
// end-to-end reproduction harness. All outputs are CSV/JSON.
#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "specrp/dataset.hpp"
#include "specrp/detector.hpp"
#include "specrp/probe_optimizer.hpp"
#include "specrp/random.hpp"
#include "specrp/revealed_prefs.hpp"
#include "specrp/simulator.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace specrp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitThreshold = 4;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ScenarioConfig scenario_by_name(const std::string& name) {
  if (name == "linear-waveform") return ScenarioConfig::linear_waveform_defaults();
  if (name == "nonlinear-waveform")
    return ScenarioConfig::nonlinear_waveform_defaults();
  if (name == "beam") return ScenarioConfig::beam_defaults();
  throw ConfigError("unknown scenario '" + name +
                    "' (expected linear-waveform, nonlinear-waveform or beam)");
}

void apply_responder(ScenarioConfig& cfg, const std::string& name) {
  if (name == "cognitive")
    cfg.responder = ScenarioConfig::Responder::Cognitive;
  else if (name == "uniform-simplex")
    cfg.responder = ScenarioConfig::Responder::UniformSimplex;
  else if (name == "random-cobb-douglas")
    cfg.responder = ScenarioConfig::Responder::RandomCobbDouglas;
  else
    throw ConfigError("unknown responder '" + name + "'");
}

void apply_utility(ScenarioConfig& cfg, const json& j) {
  const std::string kind = j.value("kind", "determinant");
  if (kind == "determinant")
    cfg.utility.kind = UtilitySpec::Kind::Determinant;
  else if (kind == "trace")
    cfg.utility.kind = UtilitySpec::Kind::Trace;
  else if (kind == "cobb-douglas") {
    cfg.utility.kind = UtilitySpec::Kind::CobbDouglas;
    if (!j.contains("exponents"))
      throw ConfigError("cobb-douglas utility needs 'exponents'");
    const auto& e = j.at("exponents");
    cfg.utility.exponents = Eigen::VectorXd(e.size());
    for (std::size_t i = 0; i < e.size(); ++i)
      cfg.utility.exponents(static_cast<int>(i)) = e.at(i).get<double>();
  } else {
    throw ConfigError("unknown utility kind '" + kind + "'");
  }
}

// Strict key whitelist: a typo in a config must fail loudly, not silently
// fall back to defaults.
void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  return j;
}

void apply_scenario_config(ScenarioConfig& cfg, const json& j) {
  check_keys(j,
             {"responder", "num_epochs", "dim", "pbar", "probe_lo",
              "probe_hi", "utility", "lambda_bar", "beta_bar"},
             "scenario config");
  if (j.contains("responder")) apply_responder(cfg, j.at("responder"));
  cfg.num_epochs = j.value("num_epochs", cfg.num_epochs);
  cfg.dim = j.value("dim", cfg.dim);
  cfg.pbar = j.value("pbar", cfg.pbar);
  cfg.probe_lo = j.value("probe_lo", cfg.probe_lo);
  cfg.probe_hi = j.value("probe_hi", cfg.probe_hi);
  if (j.contains("utility")) apply_utility(cfg, j.at("utility"));
  if (j.contains("lambda_bar")) cfg.spectral.lambda_bar = j.at("lambda_bar");
  if (j.contains("beta_bar")) {
    const auto& b = j.at("beta_bar");
    cfg.spectral.beta_bar = Eigen::VectorXd(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
      cfg.spectral.beta_bar(static_cast<int>(i)) = b.at(i).get<double>();
  }
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_manifest(const fs::path& dir, const std::string& command,
                    std::uint64_t seed, const json& config) {
  json manifest;
  manifest["command"] = command;
  manifest["seed"] = seed;
  manifest["config"] = config;
  manifest["config_hash"] = hex64(fnv1a(config.dump()));
  std::ofstream out(dir / "manifest.json");
  out << manifest.dump(2) << "\n";
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    try {
      grid.push_back(std::stod(text.substr(pos, next - pos)));
    } catch (...) {
      throw ConfigError("bad sigma grid entry in '" + text + "'");
    }
    pos = next + 1;
  }
  if (grid.empty()) throw ConfigError("empty sigma grid");
  return grid;
}

json scenario_to_json(const ScenarioConfig& cfg, const std::string& name,
                      const std::string& responder) {
  json j;
  j["scenario"] = name;
  j["responder"] = responder;
  j["num_epochs"] = cfg.num_epochs;
  j["dim"] = cfg.dim;
  j["pbar"] = cfg.pbar;
  j["probe_lo"] = cfg.probe_lo;
  j["probe_hi"] = cfg.probe_hi;
  return j;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string scenario = "linear-waveform";
  std::string responder = "cognitive";
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
};

int cmd_simulate(const SimulateArgs& args) {
  ScenarioConfig cfg = scenario_by_name(args.scenario);
  apply_responder(cfg, args.responder);
  json jcfg = scenario_to_json(cfg, args.scenario, args.responder);
  if (!args.config_path.empty()) {
    const json overrides = load_config(args.config_path);
    apply_scenario_config(cfg, overrides);
    jcfg.update(overrides);
  }
  cfg.validate();

  const ProbeResponseDataset data = generate_dataset(cfg, args.seed);
  fs::create_directories(args.out_dir);
  write_dataset_csv(data, (fs::path(args.out_dir) / "dataset.csv").string());
  write_manifest(args.out_dir, "simulate", args.seed, jcfg);
  std::cout << "wrote " << (fs::path(args.out_dir) / "dataset.csv").string()
            << " (" << data.num_epochs << " epochs, m=" << data.dim << ")\n";
  return kExitOk;
}

// -------------------------------------------------------------------- test

struct TestArgs {
  std::string dataset_path;
  std::string budget = "linear";  // or "spectral"
  std::string config_path;
  std::string out_dir = ".";
  int grid_points = 40;
};

int cmd_test(const TestArgs& args) {
  const ProbeResponseDataset data = read_dataset_csv(args.dataset_path);

  NonlinearBudgetSpec budgets;
  bool spectral = false;
  ScenarioConfig scfg = ScenarioConfig::nonlinear_waveform_defaults();
  if (args.budget == "spectral") {
    spectral = true;
    if (!args.config_path.empty())
      apply_scenario_config(scfg, load_config(args.config_path));
    budgets = spectral_budgets(data, scfg.spectral);
  } else if (args.budget != "linear") {
    throw ConfigError("unknown budget kind '" + args.budget + "'");
  }

  const auto verdict =
      spectral ? check_nonlinear_garp(data, budgets) : check_garp(data);
  const auto sol =
      spectral ? solve_nonlinear_afriat(data, budgets) : solve_afriat(data);
  if (verdict.consistent != sol.has_value())
    throw std::runtime_error("internal: GARP and Afriat feasibility disagree");

  json report;
  report["consistent"] = verdict.consistent;
  report["num_epochs"] = data.num_epochs;
  report["dim"] = data.dim;
  report["budget"] = args.budget;
  if (sol) {
    report["u"] = std::vector<double>(sol->u.data(), sol->u.data() + sol->u.size());
    report["lambda"] = std::vector<double>(sol->lambda.data(),
                                           sol->lambda.data() + sol->lambda.size());
  } else {
    report["violating_cycle"] = *verdict.violating_cycle;
  }

  fs::create_directories(args.out_dir);
  {
    std::ofstream out(fs::path(args.out_dir) / "report.json");
    out << report.dump(2) << "\n";
  }

  if (sol && data.dim == 2) {
    double hi = 0.0;
    for (const auto& b : data.responses) hi = std::max(hi, b.maxCoeff());
    hi = hi > 0.0 ? 1.2 * hi : 1.0;
    std::ofstream grid(fs::path(args.out_dir) / "contour.csv");
    grid << "beta_1,beta_2,utility\n";
    char buf[96];
    for (int i = 0; i < args.grid_points; ++i) {
      for (int j = 0; j < args.grid_points; ++j) {
        Eigen::Vector2d beta(hi * (i + 1) / args.grid_points,
                             hi * (j + 1) / args.grid_points);
        const double v =
            spectral ? reconstruct_utility_nonlinear(*sol, budgets, beta)
                     : reconstruct_utility(*sol, data, beta);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", beta(0), beta(1), v);
        grid << buf;
      }
    }
  }
  std::cout << (verdict.consistent ? "consistent" : "inconsistent") << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------ detect

struct DetectArgs {
  std::string scenario = "beam";
  std::string responder = "cognitive";
  std::string noise_side = "response";  // or "probe"
  std::string sigma_grid = "0.01,0.05,0.1,0.2";
  std::string config_path;
  std::string out_dir = ".";
  double gamma = 0.05;
  int trials = 100;
  int cdf_samples = 1000;
  std::uint64_t seed = 0;
};

int cmd_detect(const DetectArgs& args) {
  if (!(args.gamma > 0.0 && args.gamma < 1.0))
    throw ConfigError("gamma must be in (0, 1)");
  if (args.trials < 1 || args.cdf_samples < 1)
    throw ConfigError("trials and cdf samples must be >= 1");
  if (args.noise_side != "response" && args.noise_side != "probe")
    throw ConfigError("noise side must be 'response' or 'probe'");
  const std::vector<double> sigmas = parse_grid(args.sigma_grid);

  ScenarioConfig cfg = scenario_by_name(args.scenario);
  apply_responder(cfg, args.responder);
  if (!args.config_path.empty())
    apply_scenario_config(cfg, load_config(args.config_path));
  cfg.validate();
  const ProbeResponseDataset data = generate_dataset(cfg, args.seed);

  fs::create_directories(args.out_dir);
  std::ofstream out(fs::path(args.out_dir) / "detect.csv");
  out << "trial,phi_star,statistic,decision,sigma,gamma,seed\n";

  char buf[160];
  for (double sigma : sigmas) {
    const NoiseModel noise{sigma};
    Rng cdf_rng = make_rng(child_seed(args.seed, "detect-cdf"));
    const EmpiricalCdf cdf =
        args.noise_side == "response"
            ? sample_m_response(data.probes, noise, args.cdf_samples, cdf_rng)
            : sample_m_probe(data.responses, noise, args.cdf_samples, cdf_rng);
    Rng rng = make_rng(child_seed(args.seed, "detect-trials"));
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < args.trials; ++trial) {
      double phi;
      if (args.noise_side == "response") {
        auto noisy = data.responses;
        for (auto& b : noisy)
          for (int i = 0; i < b.size(); ++i) b(i) += sigma * g(rng);
        phi = min_perturbation_response(data.probes, noisy);
      } else {
        auto noisy = data.probes;
        for (auto& a : noisy)
          for (int i = 0; i < a.size(); ++i) a(i) += sigma * g(rng);
        phi = min_perturbation_probe(noisy, data.responses);
      }
      const DetectorOutcome outcome = decide(phi, cdf, args.gamma);
      std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%s,%.17g,%.17g,%llu\n",
                    trial, outcome.phi_star, outcome.statistic,
                    outcome.accept_h0 ? "H0" : "H1", sigma, args.gamma,
                    static_cast<unsigned long long>(args.seed));
      out << buf;
    }
  }
  json jcfg = scenario_to_json(cfg, args.scenario, args.responder);
  jcfg["sigma_grid"] = sigmas;
  jcfg["gamma"] = args.gamma;
  jcfg["trials"] = args.trials;
  jcfg["noise_side"] = args.noise_side;
  write_manifest(args.out_dir, "detect", args.seed, jcfg);
  std::cout << "wrote detect.csv (" << sigmas.size() * args.trials << " rows)\n";
  return kExitOk;
}

// -------------------------------------------------------------------- spsa

struct SpsaArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
};

struct SpsaStudy {
  int m = 3;
  int num_epochs = 20;
  double sigma = 0.1;
  double probe_lo = 0.0;
  double probe_hi = 0.05;
  SpsaConfig cfg;
};

SpsaStudy spsa_study_from_config(const std::string& path) {
  SpsaStudy s;
  if (path.empty()) return s;
  const json j = load_config(path);
  check_keys(j,
             {"m", "num_epochs", "sigma", "probe_lo", "probe_hi", "iterations",
              "trials", "gamma", "omega", "mu0", "cdf_samples"},
             "spsa config");
  s.m = j.value("m", s.m);
  s.num_epochs = j.value("num_epochs", s.num_epochs);
  s.sigma = j.value("sigma", s.sigma);
  s.probe_lo = j.value("probe_lo", s.probe_lo);
  s.probe_hi = j.value("probe_hi", s.probe_hi);
  s.cfg.iterations = j.value("iterations", s.cfg.iterations);
  s.cfg.trials = j.value("trials", s.cfg.trials);
  s.cfg.gamma = j.value("gamma", s.cfg.gamma);
  s.cfg.omega = j.value("omega", s.cfg.omega);
  s.cfg.mu0 = j.value("mu0", s.cfg.mu0);
  s.cfg.cdf_samples = j.value("cdf_samples", s.cfg.cdf_samples);
  return s;
}

// Non-cognitive beam radar for the probe-optimization study: fresh random
// preferences every epoch turned into time shares. Cubing the uniform draws
// concentrates the shares, which keeps the generated data deep inside the
// rationality-violating set the type-II estimate conditions on.
std::vector<Eigen::VectorXd> spsa_responder(
    const std::vector<Eigen::VectorXd>& probes, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Eigen::VectorXd> out;
  out.reserve(probes.size());
  for (const auto& alpha : probes) {
    Eigen::VectorXd z(alpha.size());
    for (int i = 0; i < z.size(); ++i) {
      const double x = unit(rng);
      z(i) = x * x * x;
    }
    out.push_back(z / z.sum());
  }
  return out;
}

SpsaResult run_spsa_study(const SpsaStudy& study, std::uint64_t seed) {
  SpsaConfig cfg = study.cfg;
  cfg.seed = child_seed(seed, "spsa");
  cfg.validate();
  if (study.m < 1 || study.num_epochs < 2)
    throw ConfigError("spsa: need m >= 1 and at least 2 epochs");
  if (!(study.probe_hi > study.probe_lo) || study.probe_lo < 0.0)
    throw ConfigError("spsa: bad probe range");

  Rng init_rng = make_rng(child_seed(seed, "spsa-init"));
  std::uniform_real_distribution<double> u(study.probe_lo, study.probe_hi);
  Eigen::MatrixXd probe(study.m, study.num_epochs);
  for (int j = 0; j < study.num_epochs; ++j)
    for (int i = 0; i < study.m; ++i) probe(i, j) = std::max(u(init_rng), kProbeFloor);

  return spsa_optimize(probe, cfg, spsa_responder, NoiseModel{study.sigma});
}

void write_trajectory_csv(const fs::path& path, const SpsaResult& result) {
  std::ofstream out(path);
  out << "iter,J_hat";
  if (!result.trajectory.empty()) {
    const auto& p0 = result.trajectory.front().probe;
    for (Eigen::Index j = 0; j < p0.cols(); ++j)
      for (Eigen::Index i = 0; i < p0.rows(); ++i)
        out << ",probe_" << i + 1 << "_" << j + 1;
  }
  out << "\n";
  char buf[48];
  for (const auto& pt : result.trajectory) {
    out << pt.iter;
    std::snprintf(buf, sizeof buf, ",%.17g", pt.j_hat);
    out << buf;
    for (Eigen::Index j = 0; j < pt.probe.cols(); ++j)
      for (Eigen::Index i = 0; i < pt.probe.rows(); ++i) {
        std::snprintf(buf, sizeof buf, ",%.17g", pt.probe(i, j));
        out << buf;
      }
    out << "\n";
  }
}

int cmd_spsa(const SpsaArgs& args) {
  const SpsaStudy study = spsa_study_from_config(args.config_path);
  const SpsaResult result = run_spsa_study(study, args.seed);
  fs::create_directories(args.out_dir);
  write_trajectory_csv(fs::path(args.out_dir) / "trajectory.csv", result);
  json jcfg;
  jcfg["m"] = study.m;
  jcfg["num_epochs"] = study.num_epochs;
  jcfg["sigma"] = study.sigma;
  jcfg["iterations"] = study.cfg.iterations;
  jcfg["trials"] = study.cfg.trials;
  write_manifest(args.out_dir, "spsa", args.seed, jcfg);
  std::cout << "wrote trajectory.csv (" << result.trajectory.size()
            << " rows), final J_hat = "
            << (result.trajectory.empty() ? 0.0
                                          : result.trajectory.back().j_hat)
            << "\n";
  return kExitOk;
}

// --------------------------------------------------------------- reproduce

struct ReproduceArgs {
  std::string what = "all";
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  int scale = 100;  // seed/trial count for the non-SPSA studies
  int spsa_iters = 200;
};

int cmd_reproduce(const ReproduceArgs& args) {
  if (args.what != "all")
    throw ConfigError("reproduce supports only 'all'");
  if (args.scale < 1 || args.spsa_iters < 1)
    throw ConfigError("reproduce: counts must be >= 1");
  fs::create_directories(args.out_dir);
  json summary;
  bool all_pass = true;

  // Study 1: linear-budget rationality recovery.
  {
    int feasible = 0, random_fail = 0;
    for (int s = 0; s < args.scale; ++s) {
      ScenarioConfig cfg = ScenarioConfig::linear_waveform_defaults();
      cfg.utility.kind = s % 3 == 0 ? UtilitySpec::Kind::Determinant
                         : s % 3 == 1 ? UtilitySpec::Kind::Trace
                                      : UtilitySpec::Kind::CobbDouglas;
      if (cfg.utility.kind == UtilitySpec::Kind::CobbDouglas)
        cfg.utility.exponents = Eigen::Vector2d(0.5, 1.0);
      if (solve_afriat(generate_dataset(cfg, child_seed(args.seed, "lin", s))))
        ++feasible;
      cfg.responder = ScenarioConfig::Responder::UniformSimplex;
      if (!check_garp(generate_dataset(cfg, child_seed(args.seed, "lin-r", s)))
               .consistent)
        ++random_fail;
    }
    const bool pass =
        feasible == args.scale && random_fail * 10 >= args.scale * 9;
    summary["linear_rationality"] = {{"feasible", feasible},
                                     {"random_violations", random_fail},
                                     {"runs", args.scale},
                                     {"pass", pass}};
    all_pass = all_pass && pass;
  }

  // Study 2: nonlinear-budget recovery.
  {
    const int runs = std::max(1, args.scale / 10);
    int feasible = 0;
    for (int s = 0; s < runs; ++s) {
      ScenarioConfig cfg = ScenarioConfig::nonlinear_waveform_defaults();
      const ProbeResponseDataset d =
          generate_dataset(cfg, child_seed(args.seed, "nl", s));
      if (solve_nonlinear_afriat(d, spectral_budgets(d, cfg.spectral)))
        ++feasible;
    }
    const bool pass = feasible == runs;
    summary["nonlinear_rationality"] = {{"feasible", feasible},
                                        {"runs", runs},
                                        {"pass", pass}};
    all_pass = all_pass && pass;
  }

  // Study 3: noisy-response detection separation on the beam scenario.
  {
    const double gamma = 0.05;
    json curves = json::array();
    double gap_at_low_sigma = 0.0;
    bool first = true;
    bool pass = true;
    for (double sigma : {0.01, 0.05, 0.1, 0.2}) {
      double cog = 0.0, rnd = 0.0;
      ScenarioConfig cfg = ScenarioConfig::beam_defaults();
      const ProbeResponseDataset dc =
          generate_dataset(cfg, child_seed(args.seed, "det-c"));
      cfg.responder = ScenarioConfig::Responder::UniformSimplex;
      const ProbeResponseDataset dr =
          generate_dataset(cfg, child_seed(args.seed, "det-r"));
      Rng cdf_rng = make_rng(child_seed(args.seed, "det-cdf"));
      const EmpiricalCdf cdf_c =
          sample_m_response(dc.probes, NoiseModel{sigma}, 1000, cdf_rng);
      const EmpiricalCdf cdf_r =
          sample_m_response(dr.probes, NoiseModel{sigma}, 1000, cdf_rng);
      Rng rng = make_rng(child_seed(args.seed, "det-trials"));
      std::normal_distribution<double> g(0.0, 1.0);
      for (int trial = 0; trial < args.scale; ++trial) {
        auto noisy_c = dc.responses;
        for (auto& b : noisy_c)
          for (int i = 0; i < b.size(); ++i) b(i) += sigma * g(rng);
        cog += decide(min_perturbation_response(dc.probes, noisy_c), cdf_c,
                      gamma)
                   .statistic;
        auto noisy_r = dr.responses;
        for (auto& b : noisy_r)
          for (int i = 0; i < b.size(); ++i) b(i) += sigma * g(rng);
        rnd += decide(min_perturbation_response(dr.probes, noisy_r), cdf_r,
                      gamma)
                   .statistic;
      }
      cog /= args.scale;
      rnd /= args.scale;
      if (first) {
        gap_at_low_sigma = cog - rnd;
        pass = pass && gap_at_low_sigma >= 0.5;
        first = false;
      }
      curves.push_back(
          {{"sigma", sigma}, {"cognitive", cog}, {"random", rnd}});
    }
    summary["detector_separation"] = {{"curve", curves},
                                      {"low_sigma_gap", gap_at_low_sigma},
                                      {"pass", pass}};
    all_pass = all_pass && pass;
  }

  // Study 4: SPSA descent on the probe signal.
  {
    SpsaStudy study;
    study.cfg.iterations = args.spsa_iters;
    const SpsaResult result = run_spsa_study(study, child_seed(args.seed, "spsa"));
    write_trajectory_csv(fs::path(args.out_dir) / "spsa_trajectory.csv",
                         result);
    const double initial = result.trajectory.front().j_hat;
    const double final_j = result.trajectory.back().j_hat;
    const bool pass = final_j < initial;
    summary["spsa_descent"] = {{"initial_J", initial},
                               {"final_J", final_j},
                               {"iterations", args.spsa_iters},
                               {"pass", pass}};
    all_pass = all_pass && pass;
  }

  summary["all_pass"] = all_pass;
  {
    std::ofstream out(fs::path(args.out_dir) / "summary.json");
    out << summary.dump(2) << "\n";
  }
  std::cout << (all_pass ? "all studies pass" : "some studies FAIL") << "\n";
  return all_pass ? kExitOk : kExitThreshold;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"revealed-preference identification of constrained-utility "
               "maximizing decision systems"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "generate a probe/response dataset");
  simulate->add_option("--scenario", sim.scenario,
                       "linear-waveform | nonlinear-waveform | beam");
  simulate->add_option("--responder", sim.responder,
                       "cognitive | uniform-simplex | random-cobb-douglas");
  simulate->add_option("--config", sim.config_path, "JSON overrides");
  simulate->add_option("--seed", sim.seed, "root seed");
  simulate->add_option("--out", sim.out_dir, "output directory");

  TestArgs test;
  auto* testc = app.add_subcommand("test", "rationality test on a dataset CSV");
  testc->add_option("--dataset", test.dataset_path, "dataset CSV path")
      ->required();
  testc->add_option("--budget", test.budget, "linear | spectral");
  testc->add_option("--config", test.config_path, "spectral budget JSON");
  testc->add_option("--grid-points", test.grid_points, "contour resolution")
      ->check(CLI::PositiveNumber);
  testc->add_option("--out", test.out_dir, "output directory");

  DetectArgs det;
  auto* detect = app.add_subcommand("detect", "noise-robust detector sweep");
  detect->add_option("--scenario", det.scenario, "scenario name");
  detect->add_option("--responder", det.responder, "responder name");
  detect->add_option("--noise-side", det.noise_side, "response | probe");
  detect->add_option("--sigma-grid", det.sigma_grid, "comma-separated sigmas");
  detect->add_option("--gamma", det.gamma, "significance level");
  detect->add_option("--trials", det.trials, "Monte-Carlo trials per sigma");
  detect->add_option("--cdf-samples", det.cdf_samples, "calibration draws");
  detect->add_option("--config", det.config_path, "scenario JSON overrides");
  detect->add_option("--seed", det.seed, "root seed");
  detect->add_option("--out", det.out_dir, "output directory");

  SpsaArgs spsa;
  auto* spsac = app.add_subcommand("spsa", "optimize the probe signal");
  spsac->add_option("--config", spsa.config_path, "study JSON");
  spsac->add_option("--seed", spsa.seed, "root seed");
  spsac->add_option("--out", spsa.out_dir, "output directory");

  ReproduceArgs rep;
  auto* reproduce =
      app.add_subcommand("reproduce", "run the full study suite");
  reproduce->add_option("what", rep.what, "'all'");
  reproduce->add_option("--seed", rep.seed, "root seed");
  reproduce->add_option("--scale", rep.scale, "seeds/trials per study");
  reproduce->add_option("--spsa-iters", rep.spsa_iters, "SPSA iterations");
  reproduce->add_option("--out", rep.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim);
    if (testc->parsed()) return cmd_test(test);
    if (detect->parsed()) return cmd_detect(det);
    if (spsac->parsed()) return cmd_spsa(spsa);
    if (reproduce->parsed()) return cmd_reproduce(rep);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}
