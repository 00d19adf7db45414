#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "shale/outlier_knn.hpp"

using namespace shale;

namespace {

SampleRecord pl_rec(double temp, double toc, double ro, double pl, std::string id) {
  SampleRecord r;
  r.id = std::move(id);
  r.temp = temp;
  r.toc = toc;
  r.ro = ro;
  r.pl = pl;
  return r;
}

std::vector<SampleRecord> random_pl(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> temp(20, 89), toc(1, 12), ro(0.5, 3.8), noise(-0.4, 0.4);
  std::vector<SampleRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = temp(gen), c = toc(gen), r = ro(gen);
    const double pl = std::exp(-0.136 * c / 4 + 0.715 * std::log((t / 48) / (r / 1.75)) + 1.666 +
                               noise(gen));
    out.push_back(pl_rec(t, c, r, pl, "s" + std::to_string(i)));
  }
  return out;
}

std::vector<oracle::Point> as_points(const std::vector<SampleRecord>& rs) {
  std::vector<oracle::Point> pts;
  for (const auto& r : rs) pts.push_back({{*r.temp, *r.toc, *r.ro}, *r.pl});
  return pts;
}

}  // namespace

TEST_CASE("quartiles by linear interpolation") {
  const std::vector<double> a = {1, 2, 3, 4, 5}, b = {5, 5, 5, 5}, c = {4, 1, 3, 2};
  CHECK(quartiles<double>(a) == std::pair<double, double>{2.0, 4.0});
  CHECK(quartiles<double>(b) == std::pair<double, double>{5.0, 5.0});
  CHECK(quartiles<double>(c) == std::pair<double, double>{1.75, 3.25});
  const std::vector<double> one = {1};
  CHECK_THROWS_AS(quartiles<double>(one), DomainError);
}

TEST_CASE("compute_weights") {
  // Quartiles: temp (2, 4), toc (6, 16).
  std::vector<SampleRecord> rs;
  const double temps[] = {1, 2, 3, 4, 5};
  const double tocs[] = {1, 6, 11, 16, 21};
  for (int i = 0; i < 5; ++i) rs.push_back(pl_rec(temps[i], tocs[i], 1.0 + i, 2, "r"));
  const std::vector<Variable> vars = {Variable::Temp, Variable::Toc};
  const auto w = compute_weights(rs, vars);
  CHECK(w.weights[0] == doctest::Approx(5.0));
  CHECK(w.weights[1] == doctest::Approx(1.0));

  for (auto& r : rs) r.ro = 1.5;
  const std::vector<Variable> with_ro = {Variable::Temp, Variable::Ro};
  CHECK_THROWS_WITH_AS(compute_weights(rs, with_ro), doctest::Contains("ro"), DomainError);
}

TEST_CASE("statistical_distance") {
  DistanceWeights one{{Variable::Temp}, {2.0}};
  const auto a = pl_rec(3, 1, 1, 2, "a"), b = pl_rec(5, 1, 1, 2, "b");
  CHECK(statistical_distance(a, a, one) == 0.0);
  CHECK(statistical_distance(a, b, one) == doctest::Approx(4.0));

  DistanceWeights two{{Variable::Temp, Variable::Toc}, {1.0, 2.0}};
  const auto c = pl_rec(0, 0, 1, 2, "c"), d = pl_rec(3, 4, 1, 2, "d");
  CHECK(statistical_distance(c, d, two) == doctest::Approx(std::sqrt(73.0)));
  CHECK(statistical_distance(d, c, two) == statistical_distance(c, d, two));

  SampleRecord missing = c;
  missing.toc.reset();
  CHECK_THROWS_AS(statistical_distance(missing, d, two), DomainError);
}

TEST_CASE("neighbor weights") {
  const std::vector<double> d = {1.0, 3.0};
  const auto w = neighbor_weights<double>(d);
  CHECK(w[0] == doctest::Approx(0.75));
  CHECK(w[1] == doctest::Approx(0.25));

  const std::vector<double> equal = {2.0, 2.0, 2.0, 2.0, 2.0};
  for (double x : neighbor_weights<double>(equal)) CHECK(x == doctest::Approx(0.2));
  const std::vector<double> zero = {0.0, 0.0, 0.0};
  for (double x : neighbor_weights<double>(zero)) CHECK(x == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("weighted_relative_error worked example") {
  // One scaled feature: test row at 0, neighbours at 1 and 3.
  Eigen::MatrixXd x(3, 1);
  x << 0.0, 1.0, 3.0;
  Eigen::VectorXd y(3);
  y << 4.0, 2.0, 2.0;
  const auto e = weighted_relative_error(x, y, 0, 2);
  CHECK(e.neighbors == std::vector<std::size_t>{1, 2});
  CHECK(e.weights[0] == doctest::Approx(0.75));
  CHECK(e.weights[1] == doctest::Approx(0.25));
  CHECK(e.r == doctest::Approx(1.0));

  y << 2.0, 2.0, 2.0;
  CHECK(weighted_relative_error(x, y, 0, 2).r == 0.0);
  CHECK_THROWS_AS(weighted_relative_error(x, y, 0, 3), DomainError);
}

TEST_CASE("ties break by ascending index") {
  Eigen::MatrixXd x(4, 1);
  x << 0.0, 1.0, -1.0, 1.0;
  Eigen::VectorXd y = Eigen::VectorXd::Constant(4, 2.0);
  const auto e = weighted_relative_error(x, y, 0, 2);
  CHECK(e.neighbors == std::vector<std::size_t>{1, 2});
}

TEST_CASE("detect_outliers matches the brute-force oracle") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto rs = random_pl(seed, 40);
    const auto report = detect_outliers(rs, DatasetKind::Pl);
    const auto expected = oracle::brute_force_r(as_points(rs), 5);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      CHECK(report.r[i] == doctest::Approx(expected[i]).epsilon(1e-12));
      CHECK(report.flagged[i] == (expected[i] > 0.85));
    }
  }
}

TEST_CASE("detect_outliers properties") {
  for (std::uint64_t seed = 11; seed <= 30; ++seed) {
    const auto rs = random_pl(seed, 35);
    const auto report = detect_outliers(rs, DatasetKind::Pl);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      double sum = 0.0;
      for (double w : report.neighbor_weights[i]) {
        CHECK(w >= 0.0);
        sum += w;
      }
      CHECK(std::abs(sum - 1.0) < 1e-12);
      CHECK(report.r[i] >= 0.0);
      // Nearer neighbours never weigh less.
      for (std::size_t j = 1; j < report.neighbor_weights[i].size(); ++j) {
        CHECK(report.neighbor_weights[i][j - 1] >= report.neighbor_weights[i][j]);
      }
    }

    // Common rescaling of the distance weights changes nothing.
    auto scaled = report.distance_weights;
    for (double& w : scaled.weights) w *= 3.7;
    const auto again = detect_outliers(rs, DatasetKind::Pl, scaled, 5, 0.85);
    CHECK(again.flagged == report.flagged);
    CHECK(again.neighbors == report.neighbors);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      CHECK(again.r[i] == doctest::Approx(report.r[i]).epsilon(1e-12));
    }

    // Reordering records permutes but does not change the result.
    std::vector<SampleRecord> rev(rs.rbegin(), rs.rend());
    const auto reversed = detect_outliers(rev, DatasetKind::Pl);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      CHECK(reversed.flagged[rs.size() - 1 - i] == report.flagged[i]);
      CHECK(reversed.r[rs.size() - 1 - i] == doctest::Approx(report.r[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("planted outlier among clones") {
  std::vector<SampleRecord> rs;
  for (int i = 0; i < 21; ++i) {
    rs.push_back(pl_rec(40.0 + i, 2.0 + 0.1 * i, 1.5 + 0.01 * i, 2.0, "c" + std::to_string(i)));
  }
  rs.push_back(pl_rec(80.0, 8.0, 2.5, 20.0, "planted"));
  const auto report = detect_outliers(rs, DatasetKind::Pl);
  CHECK(report.flagged_count() == 1);
  CHECK(report.flagged.back());
  const auto expected = oracle::brute_force_r(as_points(rs), 5);
  CHECK(std::count_if(expected.begin(), expected.end(), [](double r) { return r > 0.85; }) == 1);

  const auto none = detect_outliers(rs, DatasetKind::Pl, 5, std::numeric_limits<double>::infinity());
  CHECK(none.flagged_count() == 0);

  for (auto& r : rs) r.pl = 3.0;
  const auto flat = detect_outliers(rs, DatasetKind::Pl);
  CHECK(flat.flagged_count() == 0);
  for (double r : flat.r) CHECK(r == 0.0);

  CHECK(without_flagged(rs, report).size() == rs.size() - 1);
}

TEST_CASE("VL datasets use temperature and TOC only") {
  CHECK(active_variables(DatasetKind::Vl) == std::vector<Variable>{Variable::Temp, Variable::Toc});
  std::vector<SampleRecord> rs;
  for (int i = 0; i < 8; ++i) {
    SampleRecord r;
    r.id = std::to_string(i);
    r.temp = 30.0 + 5 * i;
    r.toc = 2.0 + (i % 3);
    r.vl = 2.0;
    rs.push_back(r);
  }
  CHECK(detect_outliers(rs, DatasetKind::Vl).flagged_count() == 0);
  rs.resize(5);
  CHECK_THROWS_AS(detect_outliers(rs, DatasetKind::Vl), DomainError);
}
