#include <gtest/gtest.h>

#include "jacobian_check.hpp"
#include "residue_atlas/classifier.hpp"
#include "residue_atlas/oracle.hpp"
#include "spot_suite.hpp"

using namespace residue_atlas;
using spot::ints;
using spot::st;

namespace {

Configuration config(int k, std::vector<int> orders, std::vector<cplx> pts, int inf, cplx c) {
  Configuration x;
  x.k = k;
  x.orders = std::move(orders);
  x.points = std::move(pts);
  x.at_infinity = inf;
  x.scale = c;
  return x;
}

void expect_close(const std::vector<cplx>& a, const std::vector<cplx>& b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); ++i) EXPECT_LT(std::abs(a[i] - b[i]), tol) << i << ": " << a[i] << " vs " << b[i];
}

std::vector<cplx> as_complex(const ResidueTuple& r) {
  std::vector<cplx> out;
  for (auto& x : r) out.push_back(x.to_complex());
  return out;
}

}  // namespace

TEST(Oracle, PartialFractions) {
  // dz/z - dz/(z-1) = -dz / (z (z-1))
  auto c = config(1, {-1, -1}, {0, 1}, -1, -1);
  expect_close(residues_of_configuration(c), {1, -1}, 1e-14);
  // (z-2) dz / (z^2 (z-1)): near 0, (z-2)/(z-1) = 2 + z + ..., at 1 the value -1
  auto d = config(1, {-2, -1, 1}, {0, 1, 2}, -1, 1);
  expect_close(residues_of_configuration(d), {1, -1}, 1e-14);
}

TEST(Oracle, StandardCoordinateKResidue) {
  // (r/z)^k (dz)^k: poles of order -k at 0 and infinity
  for (int k : {2, 3, 4}) {
    cplx r(0.7, -1.3);
    auto c = config(k, {-k, -k}, {0, 0}, 1, std::pow(r, k));
    auto contour = residues_of_configuration(c);
    auto series = series_residues(c);
    expect_close(contour, {std::pow(r, k), std::pow(-r, k)}, 1e-9);
    expect_close(series, contour, 1e-9);
  }
}

TEST(Oracle, ContourMatchesSeries) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> U(-1, 1);
  int checked = 0;
  for (int it = 0; it < 60; ++it) {
    int k = 2 + it % 3;
    // zeros and poles on the sphere, one pole of order -2k or -k at infinity
    std::vector<int> orders{-2 * k, -k, -k - 1, k + 1};
    long long sum = 0;
    for (int m : orders) sum += m;
    orders.push_back(static_cast<int>(-2 * k - sum));
    if (orders.back() <= -k && (-orders.back()) % k) continue;
    std::vector<cplx> pts;
    for (size_t i = 0; i < orders.size(); ++i) pts.push_back({U(rng) * 2, U(rng) * 2});
    auto c = config(k, orders, pts, it % 2 ? 0 : 4, std::polar(1.0, U(rng)));
    if (c.min_distance() < 0.2) continue;
    auto a = residues_of_configuration(c), b = series_residues(c);
    for (size_t i = 0; i < a.size(); ++i) EXPECT_LT(std::abs(a[i] - b[i]), 1e-9 * std::max(1.0, std::abs(b[i])));
    ++checked;
  }
  EXPECT_GT(checked, 20);
}

TEST(Oracle, KthPowerOfAbelianDifferential) {
  // eta with simple poles; xi = eta^k has k-residues Res(eta)^k
  auto eta = config(1, {-1, -1, -1, 1}, {0, 1, {0.3, 0.8}, 0}, 3, {0.4, 1.1});
  auto res = residues_of_configuration(eta);
  for (int k : {2, 3, 6}) {
    auto xi = eta;
    xi.k = k;
    for (auto& m : xi.orders) m *= k;
    xi.scale = std::pow(eta.scale, k);
    auto rk = residues_of_configuration(xi);
    std::vector<cplx> want;
    for (auto& x : res) want.push_back(std::pow(x, k));
    expect_close(rk, want, 1e-9);
  }
}

TEST(Oracle, FitsSquareNet) {
  auto s = st(1, 0, {2}, {-1, -1, -1, -1});
  ResidueTuple r{Cyclo(1), Cyclo::i(), Cyclo(-1), -Cyclo::i()};
  auto rep = fit(s, r);
  ASSERT_TRUE(rep.found);
  EXPECT_LT(rep.residual, 1e-9);
  expect_close(residues_for(s, *rep.config), as_complex(r), 1e-9);
}

TEST(Oracle, FigureTupleIsFound) {
  auto s = st(1, 0, {5}, {-1, -1, -1, -1, -1, -1, -1});
  auto r = ints({3, 1, 1, 1, -2, -2, -2});
  auto rep = fit(s, r);
  ASSERT_TRUE(rep.found);
  expect_close(residues_for(s, *rep.config), as_complex(r), 1e-9);
}

TEST(Oracle, ForbiddenTupleNotFound) {
  auto s = st(1, 0, {2}, {-1, -1, -1, -1});
  auto rep = fit(s, ints({1, 1, -1, -1}));
  EXPECT_FALSE(rep.found);
  EXPECT_GE(rep.starts, 200);
  auto j = rep.to_json();
  EXPECT_EQ(j["found"], false);
}

TEST(Oracle, GaugeInvariance) {
  auto s = st(1, 0, {5}, {-1, -1, -1, -1, -1, -1, -1});
  auto r = ints({3, 1, 1, 1, -2, -2, -2});
  auto rep = fit(s, r);
  ASSERT_TRUE(rep.found);
  auto base = residues_of_configuration(*rep.config);
  const int n = static_cast<int>(rep.config->points.size());
  for (auto [a, b, d] : {std::tuple{1, 2, 3}, {4, 0, 5}, {7, 6, 0}, {2, 5, 1}}) {
    ASSERT_LT(std::max({a, b, d}), n);
    auto g = regauge(*rep.config, a, b, d);
    EXPECT_EQ(g.at_infinity, a);
    expect_close(residues_of_configuration(g), base, 1e-9);
  }
  // k >= 2, infinity moved onto a residue pole
  auto c = config(3, {-3, -6, 3, 0}, {0, 1, 0, {0.5, 0.5}}, 2, {0.3, 0.2});
  c.orders = {-3, -6, 3};
  c.points.pop_back();
  auto g = regauge(c, 0, 1, 2);
  expect_close(residues_of_configuration(g), residues_of_configuration(c), 1e-9);
}

TEST(Oracle, ScalingEquivariance) {
  cplx lambda(-0.6, 1.7);
  auto ab = config(1, {-1, -2, -1, 2}, {0, 1, {0.2, 0.9}, 0}, 3, {1.2, 0.1});
  auto xi = config(3, {-3, -6, -4, 7}, {0, 1, {0.2, 0.9}, 0}, 3, {1.2, 0.1});
  for (auto c : {ab, xi}) {
    auto base = residues_of_configuration(c);
    c.scale *= lambda;
    auto scaled = residues_of_configuration(c);
    for (auto& x : base) x *= lambda;
    expect_close(scaled, base, 1e-9);
  }
}

TEST(Oracle, JacobianMatchesCentralDifferences) {
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    auto smp = jac::sample(rng);
    EXPECT_LT(smp.rel_error, 1e-5) << smp.stratum.to_string();
  }
}

TEST(Oracle, CrossCheck) {
  auto s = st(1, 0, {2}, {-1, -1, -1, -1});
  auto bad = ints({1, 1, -1, -1});
  ResidueTuple good{Cyclo(1), Cyclo::i(), Cyclo(-1), -Cyclo::i()};
  EXPECT_FALSE(cross_check(s, bad, classify(s, bad)).conflict);
  EXPECT_FALSE(cross_check(s, good, classify(s, good)).conflict);
  // injected wrong verdicts
  auto wrong = Decision::realizable("injected", json::object());
  EXPECT_TRUE(cross_check(s, bad, wrong).conflict);
  auto wrong2 = Decision::not_realizable("injected", json::object());
  auto cc = cross_check(s, good, wrong2);
  EXPECT_TRUE(cc.conflict);
  EXPECT_EQ(cc.to_json()["status"], "CONFLICT");
}

TEST(Oracle, SeedsAreReproducible) {
  auto s = st(1, 0, {3}, {-1, -1, -1, -1, -1});
  auto r = ints({2, 1, -1, -1, -1});
  FitOptions o;
  o.seed = 5;
  o.n_starts = 40;
  auto a = fit(s, r, o), b = fit(s, r, o);
  EXPECT_EQ(a.to_json().dump(), b.to_json().dump());
}

TEST(Oracle, ConfigurationJson) {
  auto c = config(3, {-3, -6, 3}, {0, 1, 0}, 2, {0.3, 0.2});
  auto d = Configuration::from_json(json::parse(c.to_json().dump()));
  EXPECT_EQ(d.at_infinity, 2);
  expect_close(residues_of_configuration(d), residues_of_configuration(c), 1e-15);
  EXPECT_THROW(residues_of_configuration(config(1, {-1, -1, 1}, {0, 1, 0}, -1, 1)), std::invalid_argument);
  EXPECT_THROW(residues_of_configuration(config(1, {-1, -1}, {0, 0}, -1, 1)), oracle_error);
  EXPECT_THROW(fit(st(1, 1, {2}, {-1, -1}), ints({1, -1})), std::invalid_argument);
}
