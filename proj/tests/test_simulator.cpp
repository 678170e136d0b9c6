#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "specrp/random.hpp"
#include "specrp/revealed_prefs.hpp"
#include "specrp/simulator.hpp"

using namespace specrp;

namespace {

UtilitySpec cobb_douglas(std::initializer_list<double> zeta) {
  UtilitySpec u;
  u.kind = UtilitySpec::Kind::CobbDouglas;
  u.exponents = Eigen::VectorXd(static_cast<int>(zeta.size()));
  int i = 0;
  for (double z : zeta) u.exponents(i++) = z;
  return u;
}

}  // namespace

TEST_CASE("linear budget maximizers: closed-form spot checks") {
  const Eigen::VectorXd cd =
      maximize_linear_budget(cobb_douglas({0.5, 1.0}), Eigen::Vector2d(1, 1), 1.0);
  CHECK(cd(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(cd(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

  UtilitySpec det;
  det.kind = UtilitySpec::Kind::Determinant;
  const Eigen::VectorXd bd =
      maximize_linear_budget(det, Eigen::Vector2d(0.5, 0.25), 1.0);
  CHECK(bd(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(bd(1) == doctest::Approx(2.0).epsilon(1e-14));

  UtilitySpec tr;
  tr.kind = UtilitySpec::Kind::Trace;
  const Eigen::VectorXd bt =
      maximize_linear_budget(tr, Eigen::Vector2d(0.2, 0.5), 1.0);
  CHECK(bt(0) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(bt(1) == 0.0);
}

TEST_CASE("linear budget is active at every maximizer") {
  Rng rng = make_rng(child_seed(61, "budget-active"));
  std::uniform_real_distribution<double> u(0.1, 1.1);
  for (int rep = 0; rep < 100; ++rep) {
    Eigen::VectorXd alpha(3);
    for (int i = 0; i < 3; ++i) alpha(i) = u(rng);
    for (const UtilitySpec& spec :
         {cobb_douglas({0.3, 1.2, 0.5}), UtilitySpec{},
          UtilitySpec{UtilitySpec::Kind::Trace, {}}}) {
      const Eigen::VectorXd beta = maximize_linear_budget(spec, alpha, 1.0);
      CHECK(alpha.dot(beta) == doctest::Approx(1.0).epsilon(1e-9));
      CHECK(beta.minCoeff() >= 0.0);
    }
  }
}

TEST_CASE("numeric maximizer agrees with the closed forms") {
  Rng rng = make_rng(child_seed(67, "numeric-vs-closed"));
  std::uniform_real_distribution<double> u(0.2, 1.2);
  for (int rep = 0; rep < 20; ++rep) {
    Eigen::VectorXd alpha(2);
    alpha << u(rng), u(rng);
    for (const UtilitySpec& spec :
         {cobb_douglas({0.5, 1.5}), UtilitySpec{}}) {
      const Eigen::VectorXd closed = maximize_linear_budget(spec, alpha, 1.0);
      const Eigen::VectorXd numeric =
          maximize_linear_budget_numeric(spec, alpha, 1.0);
      CHECK((closed - numeric).cwiseAbs().maxCoeff() < 1e-6);
    }
  }
}

TEST_CASE("nonlinear budget: corner and activity") {
  SpectralBudgetParams p;
  p.A = SmallMatrix(2, 2);
  p.A << 1, 1, 0, 1;
  p.C = SmallMatrix::Identity(2, 2);
  p.beta_bar = Eigen::VectorXd::Constant(2, 10.0);

  const Eigen::VectorXd alpha = Eigen::Vector2d(0.6, 0.9);
  UtilitySpec det;

  SUBCASE("cap at the box corner returns the box corner") {
    p.lambda_bar = lambda_cap(p, alpha);
    const Eigen::VectorXd beta = maximize_nonlinear_budget(det, alpha, p);
    CHECK((beta - p.beta_bar).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("interior cap puts the response on the active surface") {
    p.lambda_bar = 3.6;
    const Eigen::VectorXd beta = maximize_nonlinear_budget(det, alpha, p);
    CHECK(std::abs(riccati_lambda_max(p, alpha, beta) - 3.6) <= 1e-6);
    // no feasible strictly dominating response
    for (int i = 0; i < 2; ++i) {
      Eigen::VectorXd up = beta;
      up(i) += 1e-3;
      const bool in_box = (up.array() <= p.beta_bar.array() + 1e-12).all();
      CHECK((!in_box || riccati_lambda_max(p, alpha, up) > p.lambda_bar));
    }
  }

  SUBCASE("empty feasible set throws") {
    p.lambda_bar = 1.0;  // below max_i 1/alpha_i for this alpha
    CHECK_THROWS_AS(maximize_nonlinear_budget(det, alpha, p),
                    std::invalid_argument);
  }
}

TEST_CASE("beam allocation closed forms and homogeneity") {
  BeamConfig cfg;
  cfg.num_targets = 3;
  cfg.pbar = 1.0;

  const Eigen::VectorXd b1 =
      beam_allocate(cobb_douglas({0.5, 1.0, 2.0}), Eigen::Vector3d(1, 1, 1), cfg);
  CHECK(b1(0) == doctest::Approx(1.0 / 7.0).epsilon(1e-14));
  CHECK(b1(1) == doctest::Approx(2.0 / 7.0).epsilon(1e-14));
  CHECK(b1(2) == doctest::Approx(4.0 / 7.0).epsilon(1e-14));

  const Eigen::VectorXd b2 =
      beam_allocate(cobb_douglas({0.2, 0.3, 0.5}), Eigen::Vector3d(1, 1, 1), cfg);
  CHECK(b2(0) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(b2(1) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(b2(2) == doctest::Approx(0.5).epsilon(1e-14));

  for (double k : {0.5, 2.0, 10.0}) {
    const Eigen::VectorXd scaled = beam_allocate(
        cobb_douglas({0.2, 0.3, 0.5}), Eigen::Vector3d(k, k, k), cfg);
    CHECK((scaled * k - b2).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("predicted precision probe") {
  std::vector<SmallMatrix> covs;
  covs.push_back(SmallMatrix::Identity(2, 2));
  SmallMatrix d(2, 2);
  d << 2, 0, 0, 4;
  covs.push_back(d);
  const Eigen::VectorXd alpha = predicted_precision_probe(covs);
  CHECK(alpha(0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(alpha(1) == doctest::Approx(0.75).epsilon(1e-14));

  // scalar ARE q = r = 1
  TrackerParams p;
  p.A = SmallMatrix::Ones(1, 1);
  p.C = SmallMatrix::Ones(1, 1);
  p.Q = SmallMatrix::Ones(1, 1);
  p.R = SmallMatrix::Ones(1, 1);
  const Eigen::VectorXd scalar = predicted_precision_probe({solve_are(p)});
  CHECK(scalar(0) == doctest::Approx(2.0 / (1.0 + std::sqrt(5.0))).epsilon(1e-9));

  covs.push_back(SmallMatrix::Zero(2, 2));
  CHECK_THROWS(predicted_precision_probe(covs));
}

TEST_CASE("uniform simplex responder: support and acceptance rate") {
  Rng rng = make_rng(child_seed(71, "simplex-responder"));
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  const int draws = 20000;
  for (int i = 0; i < draws; ++i) {
    const Eigen::VectorXd beta =
        random_response(RandomResponderKind::UniformSimplex, 3, rng);
    CHECK(beta.sum() <= 1.0);
    CHECK(beta.minCoeff() >= 0.0);
    CHECK(beta.maxCoeff() <= 1.0);
    mean += beta;
  }
  mean /= draws;
  // uniform density on the corner simplex has coordinate mean 1/4
  for (int i = 0; i < 3; ++i)
    CHECK(mean(i) == doctest::Approx(0.25).epsilon(0.03));

  // rejection acceptance probability is the simplex volume 1/6
  Rng raw = make_rng(child_seed(71, "raw"));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int accepted = 0;
  for (int i = 0; i < 60000; ++i) {
    const double s = unit(raw) + unit(raw) + unit(raw);
    if (s <= 1.0) ++accepted;
  }
  CHECK(accepted / 60000.0 == doctest::Approx(1.0 / 6.0).epsilon(0.05));
}

TEST_CASE("random cobb-douglas responder spends the whole budget") {
  Rng rng = make_rng(child_seed(73, "rcd"));
  std::uniform_real_distribution<double> u(0.1, 1.1);
  for (int rep = 0; rep < 200; ++rep) {
    Eigen::VectorXd alpha(3);
    for (int i = 0; i < 3; ++i) alpha(i) = u(rng);
    const Eigen::VectorXd beta =
        random_response(RandomResponderKind::RandomCobbDouglas, 3, rng, &alpha);
    CHECK(alpha.dot(beta) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(beta.minCoeff() > 0.0);
  }
  CHECK_THROWS(random_response(RandomResponderKind::RandomCobbDouglas, 3, rng));
}

TEST_CASE("scenario defaults match the experiment setups") {
  const ScenarioConfig lin = ScenarioConfig::linear_waveform_defaults();
  CHECK(lin.num_epochs == 50);
  CHECK(lin.dim == 2);
  CHECK(lin.probe_lo == 0.1);
  CHECK(lin.probe_hi == 1.1);

  const ScenarioConfig beam = ScenarioConfig::beam_defaults();
  CHECK(beam.num_epochs == 20);
  CHECK(beam.dim == 3);
  CHECK(beam.probe_hi == 0.05);

  const ProbeResponseDataset d = generate_dataset(lin, 99);
  REQUIRE(d.num_epochs == 50);
  for (const auto& a : d.probes) {
    CHECK(a.minCoeff() >= 0.1);
    CHECK(a.maxCoeff() <= 1.1);
  }
}

TEST_CASE("dataset generation is deterministic") {
  for (const ScenarioConfig& cfg :
       {ScenarioConfig::linear_waveform_defaults(),
        ScenarioConfig::beam_defaults()}) {
    const std::string a = dataset_to_csv(generate_dataset(cfg, 12345));
    const std::string b = dataset_to_csv(generate_dataset(cfg, 12345));
    const std::string c = dataset_to_csv(generate_dataset(cfg, 54321));
    CHECK(a == b);
    CHECK(a != c);
  }
}

TEST_CASE("cognitive datasets are rational, random ones are usually not") {
  ScenarioConfig beam = ScenarioConfig::beam_defaults();
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    CHECK(check_garp(generate_dataset(beam, seed)).consistent);

  beam.responder = ScenarioConfig::Responder::UniformSimplex;
  int violations = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed)
    if (!check_garp(generate_dataset(beam, seed)).consistent) ++violations;
  CHECK(violations >= 180);
}

TEST_CASE("nonlinear cognitive dataset passes the nonlinear test") {
  ScenarioConfig cfg = ScenarioConfig::nonlinear_waveform_defaults();
  cfg.num_epochs = 12;
  const ProbeResponseDataset d = generate_dataset(cfg, 7);
  const NonlinearBudgetSpec budgets = spectral_budgets(d, cfg.spectral);
  CHECK(check_nonlinear_garp(d, budgets).consistent);
  const auto sol = solve_nonlinear_afriat(d, budgets);
  REQUIRE(sol.has_value());
  // every epoch sits on its budget surface
  for (int t = 0; t < d.num_epochs; ++t)
    CHECK(std::abs(budgets.budgets[t](d.responses[t])) <= 1e-6);
}

TEST_CASE("config validation rejects malformed scenarios") {
  ScenarioConfig cfg = ScenarioConfig::linear_waveform_defaults();
  cfg.num_epochs = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg = ScenarioConfig::linear_waveform_defaults();
  cfg.probe_lo = -0.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg = ScenarioConfig::nonlinear_waveform_defaults();
  cfg.spectral.lambda_bar = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

  cfg = ScenarioConfig::linear_waveform_defaults();
  cfg.utility = cobb_douglas({0.5, -1.0});
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
