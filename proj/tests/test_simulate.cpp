// SPDX-License-Identifier: MIT
//
// Unit tests for the pathwise simulation engine: determinism, thread-count
// invariance, trajectory structure per regime, the local-time estimators,
// exit stopping, and CSV serialization.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "starwalk/boundary.hpp"
#include "starwalk/csv.hpp"
#include "starwalk/rng.hpp"
#include "starwalk/simulate.hpp"
#include "starwalk/stats.hpp"

using namespace starwalk;

namespace {
SimConfig quick(double dt, double horizon) {
  SimConfig cfg;
  cfg.dt = dt;
  cfg.horizon = horizon;
  return cfg;
}

bool structurally_valid(const Trajectory& tr, int n_edges) {
  if (tr.steps.empty()) return false;
  double prev_t = -1.0, prev_l = -1e-300;
  for (std::size_t i = 0; i < tr.steps.size(); ++i) {
    const TrajectoryStep& s = tr.steps[i];
    if (s.time < prev_t) return false;
    if (s.local_time + 1e-15 < prev_l) return false;
    if (s.edge < 0 || s.edge > n_edges) return false;
    if (s.x < 0.0) return false;
    if (s.edge == 0 && s.x != 0.0) return false;
    if (!s.alive && i + 1 != tr.steps.size()) return false;  // dead = final
    prev_t = s.time;
    prev_l = s.local_time;
  }
  return true;
}
}  // namespace

TEST_SUITE("simulate") {

TEST_CASE("config and start validation") {
  const ProcessParams p = make_walsh({0.5, 0.5});
  Rng rng(1, 0);
  SimConfig bad = quick(0.0, 1.0);
  CHECK_THROWS_AS(simulate_path(p, GraphPoint::vertex(), bad, rng),
                  std::invalid_argument);
  bad = quick(1e-3, -1.0);
  CHECK_THROWS_AS(simulate_path(p, GraphPoint::vertex(), bad, rng),
                  std::invalid_argument);
  bad = quick(1e-3, 1.0);
  bad.eps0 = 0.0;
  CHECK_THROWS_AS(simulate_path(p, GraphPoint::vertex(), bad, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      simulate_path(p, GraphPoint{5, 1.0}, quick(1e-3, 1.0), rng),
      std::invalid_argument);
}

TEST_CASE("same seed reproduces the identical trajectory") {
  const ProcessParams p = make_sticky({0.6, 0.4}, 0.5);
  const SimConfig cfg = quick(1e-3, 0.05);
  Rng r1 = Rng::for_path(5, 0, 9);
  Rng r2 = Rng::for_path(5, 0, 9);
  const Trajectory a = simulate_path(p, GraphPoint::vertex(), cfg, r1, 9);
  const Trajectory b = simulate_path(p, GraphPoint::vertex(), cfg, r2, 9);
  REQUIRE(a.steps.size() == b.steps.size());
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    CHECK(a.steps[i].time == b.steps[i].time);
    CHECK(a.steps[i].edge == b.steps[i].edge);
    CHECK(a.steps[i].x == b.steps[i].x);
    CHECK(a.steps[i].local_time == b.steps[i].local_time);
  }
  Rng r3 = Rng::for_path(5, 0, 10);
  const Trajectory c = simulate_path(p, GraphPoint::vertex(), cfg, r3, 10);
  bool identical = a.steps.size() == c.steps.size();
  if (identical)
    for (std::size_t i = 0; i < a.steps.size(); ++i)
      identical = identical && a.steps[i].x == c.steps[i].x;
  CHECK_FALSE(identical);
}

TEST_CASE("ensembles are invariant under the thread count") {
  const ProcessParams p = make_general({0.5, 0.5}, 0.8, 0.4);
  const SimConfig cfg = quick(1e-3, 0.03);
  const auto seq =
      simulate_ensemble(p, GraphPoint::on_edge(1, 0.1), cfg, 8, 123, 0, 1);
  const auto par =
      simulate_ensemble(p, GraphPoint::on_edge(1, 0.1), cfg, 8, 123, 0, 4);
  REQUIRE(seq.size() == 8);
  REQUIRE(par.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(seq[i].path_id == i);
    REQUIRE(seq[i].steps.size() == par[i].steps.size());
    for (std::size_t j = 0; j < seq[i].steps.size(); ++j) {
      CHECK(seq[i].steps[j].time == par[i].steps[j].time);
      CHECK(seq[i].steps[j].edge == par[i].steps[j].edge);
      CHECK(seq[i].steps[j].x == par[i].steps[j].x);
      CHECK(seq[i].steps[j].local_time == par[i].steps[j].local_time);
      CHECK(seq[i].steps[j].alive == par[i].steps[j].alive);
    }
    CHECK(seq[i].result.killed == par[i].result.killed);
    CHECK(seq[i].result.final_local_time == par[i].result.final_local_time);
  }
}

TEST_CASE("trajectory structure per regime") {
  const SimConfig cfg = quick(1e-3, 0.2);
  SUBCASE("walsh: conservative, runs to the horizon") {
    const auto trs =
        simulate_ensemble(make_walsh({0.7, 0.3}), GraphPoint::vertex(), cfg,
                          20, 7);
    for (const auto& tr : trs) {
      CHECK(structurally_valid(tr, 2));
      CHECK_FALSE(tr.result.killed);
      CHECK(tr.steps.front().time == 0.0);
      CHECK(tr.steps.back().alive);
      CHECK(tr.steps.back().time >= cfg.horizon - 1e-12);
    }
  }
  SUBCASE("elastic with a strong killing rate: paths die") {
    SimConfig c2 = quick(1e-3, 5.0);
    const auto trs = simulate_ensemble(make_elastic({0.5, 0.5}, 8.0),
                                       GraphPoint::vertex(), c2, 20, 11);
    int killed = 0;
    for (const auto& tr : trs) {
      CHECK(structurally_valid(tr, 2));
      if (tr.result.killed) {
        ++killed;
        CHECK(tr.steps.back().alive == false);
        CHECK(tr.steps.back().time ==
              doctest::Approx(tr.result.kill_time).epsilon(1e-12));
        CHECK(tr.result.kill_time > 0.0);
        CHECK(tr.result.final_local_time > 0.0);
      }
    }
    CHECK(killed >= 15);  // P(survive 5s at rate 8 per unit local time) ~ 0
  }
  SUBCASE("sticky: the output clock outruns the driver clock") {
    const auto trs = simulate_ensemble(make_sticky({0.5, 0.5}, 1.0),
                                       GraphPoint::vertex(), cfg, 10, 13);
    for (const auto& tr : trs) {
      CHECK(structurally_valid(tr, 2));
      const TrajectoryStep& last = tr.steps.back();
      // Output clock t = s + gamma L; the walk stops when t first reaches
      // the horizon, at which point the driver clock s = t - gamma L still
      // sits below it.
      CHECK(last.time >= cfg.horizon);
      CHECK(last.time - 1.0 * last.local_time < cfg.horizon + 2.0 * cfg.dt);
      CHECK(last.local_time > 0.0);
    }
  }
}

TEST_CASE("absorbed-killed walker: absorption row, holding, killing") {
  SUBCASE("from an interior point with killing") {
    const auto trs =
        simulate_ensemble(make_absorbed(2, 3.0), GraphPoint::on_edge(1, 0.05),
                          quick(1e-4, 4.0), 40, 17);
    int killed = 0, absorbed_alive = 0;
    for (const auto& tr : trs) {
      CHECK(structurally_valid(tr, 2));
      if (tr.result.killed) {
        ++killed;
        // The path must pass through a vertex row before dying.
        CHECK(tr.steps.back().edge == 0);
        CHECK_FALSE(tr.steps.back().alive);
      } else if (tr.steps.back().edge == 0) {
        ++absorbed_alive;  // absorbed, exponential clock outlived horizon
      }
    }
    // Starting 0.05 from the vertex nearly every path is absorbed well
    // before t = 4, and rate 3 kills most of those within the horizon.
    CHECK(killed >= 30);
  }
  SUBCASE("beta = 0: absorbed but never killed") {
    const auto trs =
        simulate_ensemble(make_absorbed(2, 0.0), GraphPoint::on_edge(1, 0.05),
                          quick(1e-4, 1.0), 10, 19);
    for (const auto& tr : trs) {
      CHECK_FALSE(tr.result.killed);
      CHECK(tr.steps.back().alive);
    }
  }
  SUBCASE("from the vertex the hold starts immediately") {
    const auto trs = simulate_ensemble(make_absorbed(2, 2.0),
                                       GraphPoint::vertex(), quick(1e-3, 50.0),
                                       400, 23);
    double s = 0.0;
    int k = 0;
    for (const auto& tr : trs) {
      REQUIRE(tr.steps.front().edge == 0);
      if (tr.result.killed) {
        s += tr.result.kill_time;
        ++k;
      }
    }
    REQUIRE(k == 400);  // exp(-2*50) leftover is negligible
    // Kill times are Exp(2): mean 0.5, SE 0.5/20.
    CHECK(s / k == doctest::Approx(0.5).epsilon(4.0 * 0.05 / 0.5));
  }
}

TEST_CASE("local-time estimators agree on the vertex occupation scale") {
  // E[L_t] from the vertex at t = 0.5: sqrt(2 t / pi) = 0.5641895835.
  const double t = 0.5, target = std::sqrt(2.0 * t / 3.141592653589793);
  const int n = 2000;
  for (LocalTimeEstimator est :
       {LocalTimeEstimator::Occupation, LocalTimeEstimator::Downcrossing,
        LocalTimeEstimator::BridgeExact}) {
    SimConfig cfg = quick(2.5e-4, t);
    cfg.estimator = est;
    // The crossing counter needs its band a few step-widths wide so that
    // band visits and vertex returns are resolved one per step; its payout
    // is unbiased in the band width, so the wider band costs nothing.
    if (est == LocalTimeEstimator::Downcrossing) cfg.eps0 = 3.0;
    const auto trs = simulate_ensemble(make_walsh({0.5, 0.5}),
                                       GraphPoint::vertex(), cfg, n, 29);
    std::vector<double> ls;
    ls.reserve(n);
    for (const auto& tr : trs) ls.push_back(tr.result.final_local_time);
    const double m = mean(ls), se = std_error(ls);
    // 5 SE plus a dt^{1/2}-scale discretization allowance.
    CHECK(std::abs(m - target) < 5.0 * se + 0.06);
  }
}

TEST_CASE("exit stopping: first passage to a shell is detected") {
  const double eps = 0.3;
  SimConfig cfg = quick(1e-3, 10.0);
  cfg.exit_radius = eps;
  const auto trs = simulate_ensemble(make_walsh({0.6, 0.4}),
                                     GraphPoint::vertex(), cfg, 50, 31);
  int exited = 0;
  for (const auto& tr : trs) {
    CHECK(structurally_valid(tr, 2));
    if (tr.result.exited) {
      ++exited;
      CHECK(tr.result.exit_time > 0.0);
      CHECK(tr.result.exit_time == doctest::Approx(tr.steps.back().time));
      CHECK((tr.result.exit_edge == 1 || tr.result.exit_edge == 2));
      CHECK(tr.steps.back().x == doctest::Approx(eps).epsilon(1e-12));
      // No step before the last may sit at or beyond the shell.
      for (std::size_t i = 0; i + 1 < tr.steps.size(); ++i)
        CHECK(tr.steps[i].x < eps);
    }
  }
  // E[H_eps] = eps^2 = 0.09 << 10, so failing to exit is a ~0 event.
  CHECK(exited == 50);
}

TEST_CASE("csv serialization round-trips structure") {
  const auto trs = simulate_ensemble(make_elastic({0.5, 0.5}, 6.0),
                                     GraphPoint::vertex(), quick(1e-3, 2.0),
                                     3, 37);
  std::ostringstream os;
  write_trajectories_csv(os, trs);
  std::istringstream in(os.str());
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "path_id,time,edge,x,local_time,alive");
  std::size_t rows = 0, dead_rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 5);
    if (line.size() >= 2 && line.compare(line.size() - 2, 2, ",0") == 0)
      ++dead_rows;
  }
  std::size_t expect_rows = 0, expect_dead = 0;
  for (const auto& tr : trs) {
    expect_rows += tr.steps.size();
    if (tr.result.killed) ++expect_dead;
  }
  CHECK(rows == expect_rows);
  CHECK(dead_rows == expect_dead);

  // format_double round-trips exactly.  (Subnormals are left out: glibc's
  // stod reports ERANGE for them even though the text parses fine.)
  for (double v : {0.1, 1.0 / 3.0, 6.02e23, -0.0, 1e-300, 0.5641895835477563}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("thread resolution") {
  CHECK(resolve_threads(5) == 5);
  CHECK(resolve_threads(1) == 1);
  CHECK(resolve_threads(0) >= 1);
  CHECK(resolve_threads(-3) >= 1);
}

}  // TEST_SUITE("simulate")
