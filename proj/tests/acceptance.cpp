// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "cli_runner.hpp"
#include "oracles.hpp"
#include "shale/estimator.hpp"
#include "shale/geotemp.hpp"
#include "shale/io.hpp"
#include "shale/outlier_knn.hpp"
#include "shale/validation.hpp"

using namespace shale;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

const double kTableAdsorbed[] = {1.34, 1.81, 0.92, 1.51, 1.39, 0.79, 1.24, 1.88, 0.52};
const double kTablePressure[] = {31.65, 17.02, 16.96, 26.75, 39.43, 28.15, 20.16, 22.40, 0.52};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

Outcome ac1_table() {
  const auto dir = cli::scratch("ac1");
  const auto start = std::chrono::steady_clock::now();
  const auto r = cli::run("estimate --paper-coefficients --input " +
                              cli::data("reservoirs.conf") + " --output-dir '" +
                              dir.string() + "'",
                          dir);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.exit_code != 0) return {false, "estimate exited " + std::to_string(r.exit_code)};
  const auto rows = cli::read_csv(dir / "estimates.csv");
  if (rows.size() != 10) return {false, "expected 9 estimate rows"};
  double worst = 0.0;
  for (std::size_t i = 0; i < 9; ++i) {
    worst = std::max(worst, std::abs(std::stod(rows[i + 1][8]) - kTableAdsorbed[i]));
  }
  return {worst <= 0.02 && secs < 1.0,
          "max |dV| = " + fmt(worst) + " m3/t, runtime " + fmt(secs) + " s"};
}

Outcome ac2_pressure() {
  const auto specs = io::parse_reservoirs(io::read_file(cli::data("reservoirs.conf")));
  if (specs.size() != 9) return {false, "expected 9 reservoirs"};
  double worst = 0.0;
  for (std::size_t i = 0; i < 9; ++i) {
    auto s = specs[i];
    s.pressure_override.reset();
    worst = std::max(worst, std::abs(reservoir_pressure(s) - kTablePressure[i]));
  }
  return {worst <= 0.01, "max |dP| = " + fmt(worst) + " MPa"};
}

Outcome ac3_ols() {
  std::mt19937_64 gen(303);
  std::normal_distribution<double> nd;
  std::uniform_int_distribution<int> ncols(1, 3);
  double worst = 0.0;
  const int systems = 200;
  for (int t = 0; t < systems; ++t) {
    const int n = ncols(gen);
    const int m = std::uniform_int_distribution<int>(n, 50)(gen);
    Eigen::MatrixXd x(m, n);
    Eigen::VectorXd y(m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) x(i, j) = nd(gen);
      y[i] = nd(gen);
    }
    const Eigen::VectorXd ref = oracle::pinv_least_squares(x, y);
    const Eigen::VectorXd w = ols_fit(x, y);
    worst = std::max(worst, (w - ref).norm() / ref.norm());
  }
  return {worst <= 1e-8, std::to_string(systems) + " systems, max relative diff " + fmt(worst)};
}

Outcome ac4_loo() {
  std::mt19937_64 gen(404);
  std::uniform_real_distribution<double> toc(1.0, 12.0), ro(0.6, 3.6), temp(22.0, 88.0);
  std::normal_distribution<double> noise(0.0, 0.2);
  double worst = 0.0;
  int folds = 0;
  const int datasets = 24;
  for (int d = 0; d < datasets; ++d) {
    const bool pl = d % 2 == 0;
    const std::size_t n = 6 + static_cast<std::size_t>(d) * 2;
    std::vector<SampleRecord> rs;
    for (std::size_t i = 0; i < n; ++i) {
      SampleRecord r;
      r.id = "d" + std::to_string(i);
      r.toc = toc(gen);
      r.ro = ro(gen);
      r.temp = temp(gen);
      const double t = *r.temp / 48, c = *r.toc / 4;
      if (pl) {
        r.pl = std::exp(-0.136 * c + 0.715 * std::log(t / (*r.ro / 1.75)) + 1.666 + noise(gen));
      } else {
        r.vl = std::exp(0.421 * c - 0.067 * t * t * t + 0.563 + noise(gen));
      }
      rs.push_back(r);
    }
    const ModelSpec spec{pl ? ModelKind::PlSubmodel : ModelKind::VlSubmodel};
    const auto report = loo_cv(rs, spec);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<SampleRecord> rest;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) rest.push_back(rs[j]);
      }
      const auto m = fit(rest, spec);
      const double obs = pl ? *rs[i].pl : *rs[i].vl;
      const double err = (obs - predict(m, rs[i])) / obs * 100.0;
      worst = std::max(worst, (m.coefficients - report.fold_coefficients[i]).cwiseAbs().maxCoeff());
      worst = std::max(worst, std::abs(err - report.errors[i]));
      ++folds;
    }
  }
  return {worst <= 1e-12, std::to_string(datasets) + " datasets, " + std::to_string(folds) +
                              " folds, max diff " + fmt(worst)};
}

Outcome ac5_knn() {
  std::mt19937_64 gen(505);
  std::uniform_real_distribution<double> temp(20, 89), toc(1, 12), ro(0.5, 3.8), noise(-0.4, 0.4);
  double worst_sum = 0.0;
  bool rescale_ok = true;
  for (int d = 0; d < 20; ++d) {
    std::vector<SampleRecord> rs;
    for (int i = 0; i < 40; ++i) {
      SampleRecord r;
      r.id = std::to_string(i);
      r.temp = temp(gen);
      r.toc = toc(gen);
      r.ro = ro(gen);
      r.pl = std::exp(0.715 * std::log(*r.temp / 48) + 1.0 + noise(gen));
      rs.push_back(r);
    }
    const auto report = detect_outliers(rs, DatasetKind::Pl);
    for (const auto& ws : report.neighbor_weights) {
      double s = 0.0;
      for (double w : ws) s += w;
      worst_sum = std::max(worst_sum, std::abs(s - 1.0));
    }
    for (double c : {0.01, 2.5, 1000.0}) {
      auto scaled = report.distance_weights;
      for (double& w : scaled.weights) w *= c;
      if (detect_outliers(rs, DatasetKind::Pl, scaled, kDefaultNeighbors,
                          kDefaultOutlierThreshold).flagged != report.flagged) {
        rescale_ok = false;
      }
    }
  }

  // 24 clones along a line in geology, all at PL 2; the planted record sits
  // beyond the cloud with PL 20.
  std::vector<SampleRecord> rs;
  for (int i = 0; i < 24; ++i) {
    SampleRecord r;
    r.id = "clone" + std::to_string(i);
    r.temp = 40.0 + i;
    r.toc = 2.0 + 0.1 * i;
    r.ro = 1.5 + 0.01 * i;
    r.pl = 2.0;
    rs.push_back(r);
  }
  SampleRecord planted = rs[12];
  planted.id = "planted";
  planted.temp = 85.0;
  planted.toc = 8.0;
  planted.ro = 2.5;
  planted.pl = 10.0 * 2.0;
  rs.push_back(planted);
  const auto report = detect_outliers(rs, DatasetKind::Pl);
  const bool unique = report.flagged_count() == 1 && report.flagged.back();

  return {worst_sum <= 1e-12 && rescale_ok && unique,
          "weight-sum error " + fmt(worst_sum) + ", rescaling " +
              (rescale_ok ? "invariant" : "CHANGED flags") + ", planted " +
              (unique ? "uniquely flagged" : "NOT uniquely flagged")};
}

Outcome ac6_langmuir() {
  std::mt19937_64 gen(606);
  std::uniform_real_distribution<double> plv(0.5, 15.0), vlv(0.3, 10.0), pr(0.01, 60.0),
      toc(1.0, 12.0), ro(0.6, 3.5), temp(20.0, 88.0);
  const auto pl_model = published_pl_model();
  const auto vl_model = published_vl_model();
  bool half_exact = true, monotone = true;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const LangmuirParams<double> p{plv(gen), vlv(gen)};
    if (langmuir_volume(p.pl, p) != p.vl / 2) half_exact = false;
    const double a = pr(gen), b = a * (1.0 + 1e-6) + 1e-9;
    if (!(langmuir_volume(b, p) > langmuir_volume(a, p))) monotone = false;

    const double c = toc(gen), r = ro(gen), t = temp(gen), pres = pr(gen);
    const double pl = std::exp(-0.136 * (c / 4) + 0.715 * std::log((t / 48) / (r / 1.75)) + 1.666);
    const double vl = std::exp(0.421 * (c / 4) - 0.067 * std::pow(t / 48, 3) + 0.563);
    const double closed = pres * vl / (pres + pl);
    const double composed = estimate_adsorbed_gas(c, r, t, pres, pl_model, vl_model);
    worst = std::max(worst, std::abs(composed - closed) / closed);
  }
  return {half_exact && monotone && worst <= 1e-12,
          std::string("V(PL)=VL/2 ") + (half_exact ? "exact" : "INEXACT") + ", monotone " +
              (monotone ? "yes" : "NO") + ", max composition diff " + fmt(worst)};
}

Outcome ac7_idw() {
  std::mt19937_64 gen(707);
  std::uniform_real_distribution<double> lon(100.0, 120.0), lat(25.0, 45.0), grad(15.0, 45.0);
  bool exact = true, bounded = true;
  for (int d = 0; d < 20; ++d) {
    std::vector<HeatFlowPoint> pts;
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < 30; ++i) {
      pts.push_back({lon(gen), lat(gen), 1000.0, grad(gen)});
      lo = std::min(lo, pts.back().grad_t);
      hi = std::max(hi, pts.back().grad_t);
    }
    for (const auto& p : pts) {
      if (idw_interpolate(pts, {p.lon, p.lat}) != p.grad_t) exact = false;
    }
    for (int q = 0; q < 50; ++q) {
      const double v = idw_interpolate(pts, {lon(gen), lat(gen)});
      if (v < lo || v > hi) bounded = false;
    }
  }
  const std::vector<HeatFlowPoint> pair = {{109.0, 30.0, 1000.0, 18.0}, {111.0, 30.0, 1000.0, 34.0}};
  const double mid = idw_interpolate(pair, {110.0, 30.0});
  const bool symmetric = std::abs(mid - 26.0) <= 1e-9;
  return {exact && bounded && symmetric,
          std::string("exact ") + (exact ? "yes" : "NO") + ", bounded " + (bounded ? "yes" : "NO") +
              ", midpoint " + fmt(mid) + " (mean 26)"};
}

double mean_loo_error(const std::string& fixture, const std::string& kind) {
  const auto dir = cli::scratch("ac8_" + kind);
  const auto r = cli::run("pipeline --kind " + kind + " --input " + cli::data(fixture) +
                              " --output-dir '" + dir.string() + "'",
                          dir);
  if (r.exit_code != 0) return INFINITY;
  const auto rows = cli::read_csv(dir / "loo.csv");
  if (rows.size() < 2) return INFINITY;
  double sum = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) sum += std::abs(std::stod(rows[i][3]));
  return sum / static_cast<double>(rows.size() - 1);
}

Outcome ac8_cross_validation() {
  const double pl_loo = mean_loo_error("fixtures/pl_noiseless.csv", "pl");
  const double vl_loo = mean_loo_error("fixtures/vl_noiseless.csv", "vl");
  const bool loo_ok = pl_loo < 0.1 && vl_loo < 0.1;

  int runs = 0, wins = 0;
  for (const std::string kind : {"pl", "vl"}) {
    const std::string fixture = "fixtures/" + kind + "_compare.csv";
    const std::string proposed = kind + "-submodel";
    for (const std::string scenario : {"overall", "high-t", "high-toc", "high-ro"}) {
      for (int seed = 1; seed <= 5; ++seed) {
        const auto dir = cli::scratch("ac8_cmp");
        const auto r = cli::run("compare --kind " + kind + " --scenario " + scenario +
                                    " --seed " + std::to_string(seed) + " --input " +
                                    cli::data(fixture) + " --output-dir '" + dir.string() + "'",
                                dir);
        ++runs;
        if (r.exit_code != 0) continue;
        std::map<std::string, double> avg;
        for (const auto& row : cli::read_csv(dir / ("comparison_" + scenario + ".csv"))) {
          if (row.size() == 3 && row[0] == "Average") avg[row[1]] = std::stod(row[2]);
        }
        bool best = avg.count(proposed) == 1 && avg.size() >= 2;
        for (const auto& [model, err] : avg) {
          if (model != proposed && !(avg[proposed] < err)) best = false;
        }
        if (best) ++wins;
      }
    }
  }
  return {loo_ok && wins == runs,
          "noiseless LOO mean " + fmt(pl_loo) + "% (pl), " + fmt(vl_loo) + "% (vl); proposed best in " +
              std::to_string(wins) + "/" + std::to_string(runs) +
              " compare runs; supplement-data headline numbers not gated"};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"AC1 reservoir table reproduction", ac1_table},
      {"AC2 depth-derived pressures", ac2_pressure},
      {"AC3 OLS vs pseudo-inverse oracle", ac3_ols},
      {"AC4 LOO vs naive refits", ac4_loo},
      {"AC5 K-NN outlier properties", ac5_knn},
      {"AC6 Langmuir invariants", ac6_langmuir},
      {"AC7 IDW exactness and bounds", ac7_idw},
      {"AC8 cross-validation substitute", ac8_cross_validation},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  }
  return failed == 0 ? 0 : 1;
}
