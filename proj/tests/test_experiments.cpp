#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "rndop/experiments.hpp"
#include "test_support.hpp"

using namespace rndop;
using namespace rndop::test;

namespace {

McCampaign tiny_campaign() {
  McCampaign c;
  c.mc_init = 500;
  c.mc_algo = 4;
  c.targets = 50;
  c.additional = 3;
  c.master_seed = 42;
  c.jobs = 1;
  c.solver.multistart = 8;
  return c;
}

double rescore(const std::vector<Vec3>& gcs, Mode mode) {
  return max_sq_rndop(anchor_matrix(AnchorSet{gcs}.centered_copy()), dop_kind(mode));
}

}  // namespace

TEST_CASE("init_search returns a feasible, best-of-trials configuration") {
  McCampaign c = tiny_campaign();
  c.mc_init = 1000;
  Rng rng(derive_seed(c.master_seed, "trial.init", 0));
  const AnchorSet best = init_search(c, rng);

  CHECK(best.size() == 4);
  CHECK(best.min_pairwise_distance() >= c.sep.min_distance);
  for (const Vec3& p : best.points()) CHECK(c.box.contains(p));

  // rescoring oracle: replay the identical draw stream and verify the
  // returned score is the minimum over all feasible draws
  Rng replay(derive_seed(c.master_seed, "trial.init", 0));
  double best_seen = 1e300;
  for (std::size_t t = 0; t < c.mc_init; ++t) {
    std::vector<Vec3> draw(4);
    for (auto& p : draw)
      p = {replay.uniform(c.box.lower.x, c.box.upper.x),
           replay.uniform(c.box.lower.y, c.box.upper.y),
           replay.uniform(c.box.lower.z, c.box.upper.z)};
    bool ok = true;
    for (std::size_t i = 0; i < 4 && ok; ++i)
      for (std::size_t j = i + 1; j < 4; ++j)
        if ((draw[i] - draw[j]).norm() < c.sep.min_distance) {
          ok = false;
          break;
        }
    if (!ok) continue;
    try {
      best_seen = std::min(best_seen, rescore(draw, c.mode));
    } catch (const Error&) {
    }
  }
  CHECK(rescore(best.points(), c.mode) == doctest::Approx(best_seen).epsilon(1e-12));
}

TEST_CASE("init_search fails cleanly when the threshold cannot be met") {
  McCampaign c = tiny_campaign();
  c.mc_init = 200;
  c.sep.min_distance = 1000.0;  // larger than the box diameter
  Rng rng(1);
  CHECK_THROWS_AS(init_search(c, rng), Error);
}

TEST_CASE("run_campaign shares initial anchors across methods and rescoring holds") {
  const McCampaign c = tiny_campaign();
  const std::vector<Method> methods{Method::tr, Method::eig};
  const auto records = run_campaign(c, methods);

  REQUIRE(records.size() == 2);
  for (const auto& per_method : records) REQUIRE(per_method.size() == c.mc_algo);

  for (std::size_t t = 0; t < c.mc_algo; ++t) {
    // common random numbers: bitwise identical initial sets
    REQUIRE(records[0][t].initial_gcs.size() == records[1][t].initial_gcs.size());
    for (std::size_t i = 0; i < records[0][t].initial_gcs.size(); ++i)
      for (int k = 0; k < 3; ++k)
        CHECK(records[0][t].initial_gcs[i][k] == records[1][t].initial_gcs[i][k]);

    for (const auto& per_method : records) {
      const TrialRecord& rec = per_method[t];
      CHECK(rec.status == RunStatus::ok);
      CHECK(rec.t_exec_seconds >= 0.0);
      CHECK(rec.final_sq_rndop ==
            doctest::Approx(rescore(rec.final_gcs, c.mode)).epsilon(1e-12));
    }
  }
}

TEST_CASE("run_campaign is reproducible for a fixed master seed") {
  const McCampaign c = tiny_campaign();
  const std::vector<Method> methods{Method::tr};
  const auto a = run_campaign(c, methods);
  const auto b = run_campaign(c, methods);
  for (std::size_t t = 0; t < c.mc_algo; ++t) {
    CHECK(a[0][t].final_sq_rndop == b[0][t].final_sq_rndop);
    REQUIRE(a[0][t].final_gcs.size() == b[0][t].final_gcs.size());
    for (std::size_t i = 0; i < a[0][t].final_gcs.size(); ++i)
      for (int k = 0; k < 3; ++k)
        CHECK(a[0][t].final_gcs[i][k] == b[0][t].final_gcs[i][k]);
  }
}

TEST_CASE("select_configs picks the 10- and 90-percentile ranks") {
  std::vector<TrialRecord> records(500);
  Rng rng(7);
  std::vector<double> values(500);
  for (std::size_t i = 0; i < 500; ++i) values[i] = static_cast<double>(i + 1);
  // shuffle deterministically
  for (std::size_t i = 499; i > 0; --i)
    std::swap(values[i], values[static_cast<std::size_t>(rng.uniform(0.0, double(i + 1)))]);
  for (std::size_t i = 0; i < 500; ++i) {
    records[i].final_sq_rndop = values[i];
    records[i].final_gcs = {{values[i], 0.0, 0.0}};
  }

  const ConfigSelection sel = select_configs(records);
  CHECK(sel.good_sq_rndop == doctest::Approx(50.0));  // rank floor(0.1*500) = 50
  CHECK(sel.bad_sq_rndop == doctest::Approx(450.0));  // rank ceil(0.9*500) = 450
  CHECK(sel.good_sq_rndop <= sel.bad_sq_rndop);

  // sorted input gives the same answer
  std::sort(records.begin(), records.end(),
            [](const TrialRecord& a, const TrialRecord& b) {
              return a.final_sq_rndop < b.final_sq_rndop;
            });
  const ConfigSelection sorted_sel = select_configs(records);
  CHECK(sorted_sel.good_sq_rndop == doctest::Approx(50.0));
  CHECK(sorted_sel.bad_sq_rndop == doctest::Approx(450.0));

  // all-equal records: good and bad coincide in value
  for (auto& r : records) r.final_sq_rndop = 3.25;
  const ConfigSelection flat = select_configs(records);
  CHECK(flat.good_sq_rndop == flat.bad_sq_rndop);

  records.resize(9);
  CHECK_THROWS_AS(select_configs(records), Error);
}

TEST_CASE("coverage target draws have the right radial law") {
  Rng rng(8);
  const double r_cov = 200.0;
  double mean3 = 0.0, mean2 = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) mean3 += draw_coverage_target(Mode::three_d, r_cov, rng).norm();
  for (int i = 0; i < n; ++i) {
    const Vec3 t = draw_coverage_target(Mode::two_d, r_cov, rng);
    CHECK(t.z == 0.0);
    mean2 += t.norm();
  }
  mean3 /= n;
  mean2 /= n;
  // uniform in the ball: E[r] = 0.75 R, sd(r) ~ 0.194 R; in the disc: E[r] = 2R/3
  CHECK(std::abs(mean3 - 0.75 * r_cov) <= 3.0 * 0.194 * r_cov / std::sqrt(double(n)));
  CHECK(std::abs(mean2 - 2.0 * r_cov / 3.0) <= 3.0 * 0.236 * r_cov / std::sqrt(double(n)));
}

TEST_CASE("eval_positioning with zero noise is exact and its CDF is sane") {
  McCampaign c = tiny_campaign();
  c.range_model = {0.0, 0.0};
  c.targets = 200;
  const AnchorSet config = AnchorSet{tetrahedron()}.scaled(10.0).translated({1.0, 2.0, 0.5});

  Rng rng(9);
  const PositioningEval eval = eval_positioning(config, c, Mode::three_d, rng);
  REQUIRE(eval.errors.size() == c.targets);
  CHECK(std::is_sorted(eval.errors.begin(), eval.errors.end()));
  for (double e : eval.errors) CHECK(e < 1e-4);
}

TEST_CASE("eval_positioning draws are method-independent given the same seed") {
  McCampaign c = tiny_campaign();
  c.targets = 64;
  const AnchorSet config_a = AnchorSet{tetrahedron()}.scaled(10.0);
  const AnchorSet config_b = AnchorSet{tetrahedron()}.scaled(12.0);

  // identical streams: the draws (targets, noise, guesses) are shared even
  // though the configurations differ, so paired comparisons are fair
  Rng rng_a(123456);
  Rng rng_b(123456);
  (void)eval_positioning(config_a, c, Mode::three_d, rng_a);
  (void)eval_positioning(config_b, c, Mode::three_d, rng_b);
  CHECK(rng_a.next_u64() == rng_b.next_u64());
}

TEST_CASE("nearest_rank_percentile and percentile ordering") {
  std::vector<double> v{5.0, 1.0, 4.0, 2.0, 3.0};
  CHECK(nearest_rank_percentile(v, 10.0) == 1.0);   // ceil(0.1*5) = 1st
  CHECK(nearest_rank_percentile(v, 50.0) == 3.0);   // ceil(0.5*5) = 3rd
  CHECK(nearest_rank_percentile(v, 90.0) == 5.0);   // ceil(0.9*5) = 5th
  CHECK(nearest_rank_percentile(v, 100.0) == 5.0);
}

TEST_CASE("timing_stats fits and degenerate cases") {
  std::map<int, std::vector<double>> sweep;
  for (int na : {5, 10, 15, 20}) {
    std::vector<double> times;
    for (int i = 0; i < 11; ++i) times.push_back(0.1 * na + 0.001 * i);
    sweep[na] = times;
  }
  const TimingStats stats = timing_stats(sweep);
  REQUIRE(stats.n_additional.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(stats.p10[i] <= stats.p50[i]);
    CHECK(stats.p50[i] <= stats.p90[i]);
  }
  CHECK(stats.fit50.valid);
  CHECK(stats.fit50.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(stats.fit50.slope == doctest::Approx(0.1).epsilon(1e-9));

  // constant series: R^2 undefined, reported as not applicable
  std::map<int, std::vector<double>> flat;
  for (int na : {5, 10, 15}) flat[na] = {1.0, 1.0, 1.0};
  CHECK_FALSE(timing_stats(flat).fit50.valid);

  std::map<int, std::vector<double>> thin;
  thin[5] = {1.0};
  thin[10] = {2.0};
  CHECK_THROWS_AS(timing_stats(thin), Error);
}
