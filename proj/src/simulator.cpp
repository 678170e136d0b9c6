#include "specrp/simulator.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace specrp {

namespace {

constexpr double kGolden = 0.6180339887498949;

void check_probe(const Eigen::VectorXd& alpha) {
  if (alpha.size() < 1 || !(alpha.minCoeff() > 0.0))
    throw std::invalid_argument("probe entries must be strictly positive");
}

}  // namespace

void UtilitySpec::validate(int dim) const {
  if (kind == Kind::CobbDouglas) {
    if (exponents.size() != dim)
      throw std::invalid_argument("Cobb-Douglas exponents must match dimension");
    if (!(exponents.minCoeff() > 0.0))
      throw std::invalid_argument("Cobb-Douglas exponents must be > 0");
  }
}

double utility_value(const UtilitySpec& u, const Eigen::VectorXd& beta) {
  switch (u.kind) {
    case UtilitySpec::Kind::Determinant:
      return beta.prod();
    case UtilitySpec::Kind::Trace:
      return beta.sum();
    case UtilitySpec::Kind::CobbDouglas: {
      double v = 1.0;
      for (int i = 0; i < beta.size(); ++i)
        v *= std::pow(std::max(beta(i), 0.0), u.exponents(i));
      return v;
    }
  }
  return 0.0;
}

Eigen::VectorXd maximize_linear_budget(const UtilitySpec& u,
                                       const Eigen::VectorXd& alpha,
                                       double pbar) {
  check_probe(alpha);
  if (!(pbar > 0.0)) throw std::invalid_argument("pbar must be > 0");
  const int m = static_cast<int>(alpha.size());
  u.validate(m);

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(m);
  switch (u.kind) {
    case UtilitySpec::Kind::Determinant:
      for (int i = 0; i < m; ++i) beta(i) = pbar / (m * alpha(i));
      break;
    case UtilitySpec::Kind::Trace: {
      int cheapest = 0;
      for (int i = 1; i < m; ++i)
        if (alpha(i) < alpha(cheapest)) cheapest = i;
      beta(cheapest) = pbar / alpha(cheapest);
      break;
    }
    case UtilitySpec::Kind::CobbDouglas: {
      const double total = u.exponents.sum();
      for (int i = 0; i < m; ++i)
        beta(i) = (u.exponents(i) / total) * pbar / alpha(i);
      break;
    }
  }
  return beta;
}

Eigen::VectorXd maximize_linear_budget_numeric(const UtilitySpec& u,
                                               const Eigen::VectorXd& alpha,
                                               double pbar, int sweeps) {
  check_probe(alpha);
  const int m = static_cast<int>(alpha.size());
  u.validate(m);

  // Spending shares w on the active budget face: beta_i = pbar w_i / alpha_i.
  Eigen::VectorXd w = Eigen::VectorXd::Constant(m, 1.0 / m);
  auto value = [&](const Eigen::VectorXd& shares) {
    Eigen::VectorXd beta(m);
    for (int i = 0; i < m; ++i) beta(i) = pbar * shares(i) / alpha(i);
    return utility_value(u, beta);
  };

  for (int sweep = 0; sweep < sweeps; ++sweep) {
    double moved = 0.0;
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        const double mass = w(i) + w(j);
        if (mass <= 0.0) continue;
        double lo = 0.0, hi = mass;
        double x1 = hi - kGolden * (hi - lo), x2 = lo + kGolden * (hi - lo);
        auto slice = [&](double t) {
          Eigen::VectorXd s = w;
          s(i) = t;
          s(j) = mass - t;
          return value(s);
        };
        double f1 = slice(x1), f2 = slice(x2);
        for (int it = 0; it < 90; ++it) {
          if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kGolden * (hi - lo);
            f2 = slice(x2);
          } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kGolden * (hi - lo);
            f1 = slice(x1);
          }
        }
        const double t = 0.5 * (lo + hi);
        moved = std::max(moved, std::abs(w(i) - t));
        w(i) = t;
        w(j) = mass - t;
      }
    }
    if (moved < 1e-13) break;
  }

  Eigen::VectorXd beta(m);
  for (int i = 0; i < m; ++i) beta(i) = pbar * w(i) / alpha(i);
  return beta;
}

TrackerParams tracker_params_for(const SpectralBudgetParams& p,
                                 const Eigen::VectorXd& alpha,
                                 const Eigen::VectorXd& beta) {
  check_probe(alpha);
  const int m = static_cast<int>(alpha.size());
  TrackerParams tp;
  tp.A = p.A;
  tp.C = p.C;
  tp.Q = SmallMatrix::Zero(m, m);
  for (int i = 0; i < m; ++i) tp.Q(i, i) = 1.0 / alpha(i);  // probe = spectrum of Q^{-1}
  tp.R = SmallMatrix::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    if (!(beta(i) > 0.0))
      throw std::invalid_argument("response spectrum must be > 0");
    tp.R(i, i) = beta(i);
  }
  return tp;
}

double riccati_lambda_max(const SpectralBudgetParams& p,
                          const Eigen::VectorXd& alpha,
                          const Eigen::VectorXd& beta) {
  return lambda_max(solve_are(tracker_params_for(p, alpha, beta)));
}

double lambda_cap(const SpectralBudgetParams& p, const Eigen::VectorXd& alpha) {
  return riccati_lambda_max(p, alpha, p.beta_bar);
}

namespace {

// Riccati top-eigenvalue evaluator with warm-started fixed points.
class SpectrumOracle {
 public:
  SpectrumOracle(const SpectralBudgetParams& p, const Eigen::VectorXd& alpha)
      : params_(tracker_params_for(
            p, alpha, Eigen::VectorXd::Constant(alpha.size(), 1.0))) {
    warm_ = params_.Q;
  }

  double operator()(const Eigen::VectorXd& beta) {
    for (int i = 0; i < beta.size(); ++i) params_.R(i, i) = beta(i);
    warm_ = solve_are_from(params_, warm_);
    return lambda_max(warm_);
  }

 private:
  TrackerParams params_;
  SmallMatrix warm_;
};

}  // namespace

Eigen::VectorXd maximize_nonlinear_budget(const UtilitySpec& u,
                                          const Eigen::VectorXd& alpha,
                                          const SpectralBudgetParams& p) {
  check_probe(alpha);
  const int m = static_cast<int>(alpha.size());
  u.validate(m);
  if (p.beta_bar.size() != m || !(p.beta_bar.minCoeff() > 0.0))
    throw std::invalid_argument("beta_bar must be positive and match dimension");

  SpectrumOracle lam(p, alpha);
  const Eigen::VectorXd floor = 1e-9 * p.beta_bar;

  if (lam(floor) > p.lambda_bar)
    throw std::invalid_argument(
        "nonlinear budget: empty feasible set (cap below the eigenvalue "
        "floor)");
  if (lam(p.beta_bar) <= p.lambda_bar) return p.beta_bar;  // box corner

  // Largest feasible value of coordinate j with the others held fixed;
  // lambda_max is increasing in each coordinate so bisection applies.
  auto boundary = [&](Eigen::VectorXd beta, int j) -> double {
    beta(j) = p.beta_bar(j);
    if (lam(beta) <= p.lambda_bar) return p.beta_bar(j);
    double lo = floor(j), hi = p.beta_bar(j);
    beta(j) = lo;
    if (lam(beta) > p.lambda_bar) return -1.0;  // slice infeasible
    while (hi - lo > 1e-10 * p.beta_bar(j)) {
      const double mid = 0.5 * (lo + hi);
      beta(j) = mid;
      if (lam(beta) <= p.lambda_bar)
        lo = mid;
      else
        hi = mid;
    }
    return lo;
  };

  // Start on the constraint surface, then improve by golden section along
  // it, one coordinate pair at a time.
  Eigen::VectorXd beta = floor;
  for (int j = 0; j < m; ++j) {
    const double bj = boundary(beta, j);
    beta(j) = bj > 0.0 ? bj : floor(j);
  }

  const int total_sweeps = m == 2 ? 2 : 4;
  for (int sweep = 0; sweep < total_sweeps; ++sweep) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (i == j) continue;
        auto slice = [&](double ti) {
          Eigen::VectorXd cand = beta;
          cand(i) = ti;
          const double bj = boundary(cand, j);
          if (bj < 0.0) return std::make_pair(
              -std::numeric_limits<double>::infinity(), cand);
          cand(j) = bj;
          return std::make_pair(utility_value(u, cand), cand);
        };
        double lo = floor(i), hi = p.beta_bar(i);
        double x1 = hi - kGolden * (hi - lo), x2 = lo + kGolden * (hi - lo);
        auto [f1, b1] = slice(x1);
        auto [f2, b2] = slice(x2);
        Eigen::VectorXd best_beta = f1 >= f2 ? b1 : b2;
        double best = std::max(f1, f2);
        for (int it = 0; it < 40; ++it) {
          if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            b1 = b2;
            x2 = lo + kGolden * (hi - lo);
            std::tie(f2, b2) = slice(x2);
          } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            b2 = b1;
            x1 = hi - kGolden * (hi - lo);
            std::tie(f1, b1) = slice(x1);
          }
          if (std::max(f1, f2) > best) {
            best = std::max(f1, f2);
            best_beta = f1 >= f2 ? b1 : b2;
          }
        }
        if (best > utility_value(u, beta)) beta = best_beta;
      }
      if (m == 2) break;  // (0,1) and (1,0) sweep the same slice
    }
  }

  // Land exactly on the active surface in the last coordinate searched.
  const double bj = boundary(beta, m - 1);
  if (bj > 0.0) beta(m - 1) = bj;
  return beta;
}

NonlinearBudgetSpec spectral_budgets(const ProbeResponseDataset& data,
                                     const SpectralBudgetParams& p) {
  NonlinearBudgetSpec spec;
  for (int t = 0; t < data.num_epochs; ++t) {
    Eigen::VectorXd alpha = data.probes[t];
    SpectralBudgetParams params = p;
    spec.budgets.push_back([params, alpha](const Eigen::VectorXd& beta) {
      return riccati_lambda_max(params, alpha, beta) - params.lambda_bar;
    });
  }
  return spec;
}

Eigen::VectorXd beam_allocate(const UtilitySpec& u,
                              const Eigen::VectorXd& alpha,
                              const BeamConfig& cfg) {
  if (cfg.num_targets < 2)
    throw std::invalid_argument("beam allocation needs at least 2 targets");
  if (alpha.size() != cfg.num_targets)
    throw std::invalid_argument("probe size must equal target count");
  Eigen::VectorXd beta = maximize_linear_budget(u, alpha, cfg.pbar);
  if (beta.sum() > 1.0 + 1e-9) {
    static bool warned = false;
    if (!warned) {
      warned = true;
      std::cerr << "warning: beam allocation exceeds unit total time "
                   "(optimizing the precision budget only)\n";
    }
  }
  return beta;
}

Eigen::VectorXd predicted_precision_probe(
    const std::vector<SmallMatrix>& predicted_covariances) {
  const int m = static_cast<int>(predicted_covariances.size());
  if (m < 1) throw std::invalid_argument("no predicted covariances");
  Eigen::VectorXd alpha(m);
  for (int i = 0; i < m; ++i) {
    const SmallMatrix& sigma = predicted_covariances[i];
    const SmallVector ev = symmetric_eigenvalues(sigma);
    if (!(ev(0) > 0.0))
      throw std::invalid_argument("predicted covariance singular");
    alpha(i) = sigma.inverse().trace();
  }
  return alpha;
}

Eigen::VectorXd random_response(RandomResponderKind kind, int m, Rng& rng,
                                const Eigen::VectorXd* alpha) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  switch (kind) {
    case RandomResponderKind::UniformSimplex: {
      Eigen::VectorXd beta(m);
      do {
        for (int i = 0; i < m; ++i) beta(i) = unit(rng);
      } while (beta.sum() > 1.0);
      return beta;
    }
    case RandomResponderKind::RandomCobbDouglas: {
      if (alpha == nullptr)
        throw std::invalid_argument("random Cobb-Douglas responder needs alpha");
      UtilitySpec u;
      u.kind = UtilitySpec::Kind::CobbDouglas;
      u.exponents = Eigen::VectorXd(m);
      for (int i = 0; i < m; ++i) u.exponents(i) = unit(rng);
      const double total = u.exponents.sum();
      if (total <= 0.0) u.exponents.setConstant(1.0);
      u.exponents /= u.exponents.sum();
      return maximize_linear_budget(u, *alpha, 1.0);
    }
  }
  throw std::invalid_argument("unknown responder kind");
}

ScenarioConfig ScenarioConfig::linear_waveform_defaults() {
  ScenarioConfig cfg;
  cfg.kind = Kind::LinearWaveform;
  cfg.num_epochs = 50;
  cfg.dim = 2;
  cfg.probe_lo = 0.1;
  cfg.probe_hi = 1.1;
  cfg.utility.kind = UtilitySpec::Kind::Determinant;
  return cfg;
}

ScenarioConfig ScenarioConfig::nonlinear_waveform_defaults() {
  ScenarioConfig cfg = linear_waveform_defaults();
  cfg.kind = Kind::NonlinearWaveform;
  cfg.spectral.A = SmallMatrix(2, 2);
  cfg.spectral.A << 1, 1, 0, 1;
  cfg.spectral.C = SmallMatrix::Identity(2, 2);
  cfg.spectral.lambda_bar = 3.6;
  cfg.spectral.beta_bar = Eigen::VectorXd::Constant(2, 10.0);
  return cfg;
}

ScenarioConfig ScenarioConfig::beam_defaults() {
  ScenarioConfig cfg;
  cfg.kind = Kind::Beam;
  cfg.num_epochs = 20;
  cfg.dim = 3;
  cfg.probe_lo = 0.0;
  cfg.probe_hi = 0.05;
  cfg.utility.kind = UtilitySpec::Kind::CobbDouglas;
  cfg.utility.exponents = Eigen::VectorXd(3);
  cfg.utility.exponents << 0.5, 1.0, 2.0;
  return cfg;
}

void ScenarioConfig::validate() const {
  if (num_epochs < 1) throw std::invalid_argument("scenario: N must be >= 1");
  if (dim < 1) throw std::invalid_argument("scenario: m must be >= 1");
  if (!(probe_hi > probe_lo) || probe_lo < 0.0)
    throw std::invalid_argument("scenario: bad probe range");
  if (!(pbar > 0.0)) throw std::invalid_argument("scenario: pbar must be > 0");
  if (responder == Responder::Cognitive) utility.validate(dim);
  if (kind == Kind::NonlinearWaveform) {
    if (spectral.beta_bar.size() != dim || !(spectral.beta_bar.minCoeff() > 0.0))
      throw std::invalid_argument("scenario: bad beta_bar");
    if (!(spectral.lambda_bar > 0.0))
      throw std::invalid_argument("scenario: lambda_bar must be > 0");
  }
}

ProbeResponseDataset generate_dataset(const ScenarioConfig& cfg,
                                      std::uint64_t seed) {
  cfg.validate();
  Rng rng = make_rng(child_seed(seed, "dataset"));
  std::uniform_real_distribution<double> probe_dist(cfg.probe_lo, cfg.probe_hi);

  ProbeResponseDataset data;
  data.num_epochs = cfg.num_epochs;
  data.dim = cfg.dim;

  for (int n = 0; n < cfg.num_epochs; ++n) {
    Eigen::VectorXd alpha(cfg.dim);
    for (int redraw = 0;; ++redraw) {
      if (redraw > 100000)
        throw std::runtime_error("scenario: cannot draw an admissible probe");
      for (int i = 0; i < cfg.dim; ++i) {
        do {
          alpha(i) = probe_dist(rng);
        } while (!(alpha(i) > 0.0));
      }
      if (cfg.kind != ScenarioConfig::Kind::NonlinearWaveform) break;
      // The eigenvalue cap must be reachable from below (nonempty budget)
      // and at most the cap at beta_bar (activity window).
      const Eigen::VectorXd floor = 1e-9 * cfg.spectral.beta_bar;
      if (riccati_lambda_max(cfg.spectral, alpha, floor) <
              cfg.spectral.lambda_bar &&
          cfg.spectral.lambda_bar <= lambda_cap(cfg.spectral, alpha))
        break;
    }
    data.probes.push_back(alpha);

    Eigen::VectorXd beta;
    switch (cfg.responder) {
      case ScenarioConfig::Responder::Cognitive:
        switch (cfg.kind) {
          case ScenarioConfig::Kind::LinearWaveform:
            beta = maximize_linear_budget(cfg.utility, alpha, cfg.pbar);
            break;
          case ScenarioConfig::Kind::NonlinearWaveform:
            beta = maximize_nonlinear_budget(cfg.utility, alpha, cfg.spectral);
            break;
          case ScenarioConfig::Kind::Beam: {
            BeamConfig beam;
            beam.num_targets = cfg.dim;
            beam.pbar = cfg.pbar;
            beta = beam_allocate(cfg.utility, alpha, beam);
            break;
          }
        }
        break;
      case ScenarioConfig::Responder::UniformSimplex:
        beta = random_response(RandomResponderKind::UniformSimplex, cfg.dim,
                               rng);
        break;
      case ScenarioConfig::Responder::RandomCobbDouglas:
        beta = random_response(RandomResponderKind::RandomCobbDouglas, cfg.dim,
                               rng, &alpha);
        break;
    }
    data.responses.push_back(beta);
  }
  return data;
}

}  // namespace specrp
