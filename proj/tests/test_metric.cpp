#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "riplayer/metric.hpp"

using namespace riplayer;

namespace {

MetricSpace line(const std::vector<double>& coords) {
  std::vector<std::vector<double>> pts;
  for (double c : coords) pts.push_back({c});
  return MetricSpace::from_points(pts, MetricKind::euclidean);
}

Inclusion line_pair(const std::vector<double>& xs, const std::vector<double>& ys) {
  MetricSpace X = line(xs);
  MetricSpace Y = line(ys);
  std::vector<int> embed;
  for (double v : xs) {
    for (std::size_t i = 0; i < ys.size(); ++i)
      if (ys[i] == v) {
        embed.push_back(static_cast<int>(i));
        break;
      }
  }
  return Inclusion(std::move(X), std::move(Y), std::move(embed));
}

}  // namespace

TEST_CASE("from_points computes line distances") {
  const MetricSpace s = line({0, 1, 3, 7});
  CHECK(s.size() == 4);
  CHECK(s.dist(0, 1) == 1);
  CHECK(s.dist(1, 2) == 2);
  CHECK(s.dist(0, 2) == 3);
  CHECK(s.dist(2, 3) == 4);
  CHECK(s.dist(1, 3) == 6);
  CHECK(s.dist(0, 3) == 7);
  CHECK(s.dist(3, 0) == 7);
  CHECK(s.dist(2, 2) == 0);
}

TEST_CASE("from_points degenerate and error cases") {
  CHECK(line({5}).size() == 1);
  CHECK_THROWS_AS(line({0, 0}), Error);
  try {
    line({0, 0});
  } catch (const Error& e) {
    CHECK(e.code() == Err::DuplicatePoint);
  }
  // dedup merges instead
  CHECK(MetricSpace::from_points({{0}, {0}, {1}}, MetricKind::euclidean, true).size() == 2);
  CHECK_THROWS_AS(MetricSpace::from_points({{0, 1}, {2}}, MetricKind::euclidean), Error);
}

TEST_CASE("metric kinds differ as expected") {
  const std::vector<std::vector<double>> pts{{0, 0}, {3, 4}};
  CHECK(MetricSpace::from_points(pts, MetricKind::euclidean).dist(0, 1) == 5);
  CHECK(MetricSpace::from_points(pts, MetricKind::manhattan).dist(0, 1) == 7);
  CHECK(MetricSpace::from_points(pts, MetricKind::chebyshev).dist(0, 1) == 4);
}

TEST_CASE("from_matrix validates") {
  const MetricSpace ok = MetricSpace::from_matrix({{1}, {3, 2}});
  CHECK(ok.size() == 3);
  CHECK(ok.dist(0, 2) == 3);
  CHECK(ok.dist(1, 2) == 2);

  CHECK(MetricSpace::from_matrix({}).size() == 0);

  try {
    MetricSpace::from_matrix({{1}, {5, 2}});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::TriangleViolation);
    CHECK(std::string(e.what()).find("(0,1,2)") != std::string::npos);
  }
  CHECK_THROWS_AS(MetricSpace::from_matrix({{-1}}), Error);
  try {
    MetricSpace::from_matrix({{0}});
  } catch (const Error& e) {
    CHECK(e.code() == Err::ZeroOffDiagonal);
  }
}

TEST_CASE("config_distance on the line") {
  const MetricSpace s = line({0, 1, 3});
  const auto t = [](std::vector<int> v) { return ConfigTuple::of(std::move(v)); };
  CHECK(config_distance(t({0, 2}), t({0, 2}), s) == 0);
  CHECK(config_distance(t({0, 1}), t({0, 2}), s) == 2);
  CHECK(config_distance(t({1, 0}), t({2, 0}), s) == 2);
  CHECK_THROWS_AS(config_distance(t({0}), t({0, 1}), s), Error);
  CHECK_THROWS_AS(ConfigTuple::of({1, 1}), Error);
}

TEST_CASE("config_distance satisfies the metric axioms on random tuples") {
  std::mt19937_64 rng(7);
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 9; ++i)
    pts.push_back({static_cast<double>(rng() % 1000) / 100.0,
                   static_cast<double>(rng() % 1000) / 100.0});
  const MetricSpace s = MetricSpace::from_points(pts, MetricKind::euclidean, true);
  const auto random_tuple = [&](int len) {
    std::vector<int> ids;
    while (static_cast<int>(ids.size()) < len) {
      const int c = static_cast<int>(rng() % s.size());
      if (std::find(ids.begin(), ids.end(), c) == ids.end()) ids.push_back(c);
    }
    return ConfigTuple::of(std::move(ids));
  };
  for (int trial = 0; trial < 200; ++trial) {
    const int len = 1 + static_cast<int>(rng() % 3);
    const ConfigTuple a = random_tuple(len), b = random_tuple(len), c = random_tuple(len);
    CHECK(config_distance(a, a, s) == 0);
    CHECK(config_distance(a, b, s) == config_distance(b, a, s));
    CHECK(config_distance(a, c, s) <= config_distance(a, b, s) + config_distance(b, c, s));
    if (a.ids != b.ids) CHECK(config_distance(a, b, s) > 0);
  }
}

TEST_CASE("hausdorff_config worked values") {
  // identity inclusion
  const Inclusion same = Inclusion::identity(line({0, 1, 3, 7}));
  CHECK(hausdorff_config(same, 0) == 0);
  CHECK(hausdorff_config(same, 2) == 0);

  // one extra point at 7.2; the expected value is the stored distance
  // d(7, 7.2), which is 0.2 up to the binary representation of 7.2
  const Inclusion e3 = line_pair({0, 1, 3, 7}, {0, 1, 3, 7, 7.2});
  const double expected = e3.sup().dist(3, 4);
  CHECK(expected == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(oracles::hausdorff_oracle(e3, 0) == expected);
  CHECK(hausdorff_config(e3, 0) == expected);

  // distinctness forces a detour
  const Inclusion mid = line_pair({0, 3}, {0, 1, 3});
  CHECK(oracles::hausdorff_oracle(mid, 1) == 2);
  CHECK(hausdorff_config(mid, 1) == 2);
}

TEST_CASE("hausdorff_config error paths") {
  const Inclusion mid = line_pair({0, 3}, {0, 1, 3});
  CHECK_THROWS_AS(hausdorff_config(mid, 2), Error);  // only two points in X
  try {
    hausdorff_config(mid, 1, 2);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::BudgetExceeded);
  }
}

TEST_CASE("hausdorff_config equals the double-loop oracle on random pairs") {
  std::mt19937_64 rng(11);
  const auto u01 = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  for (int trial = 0; trial < 25; ++trial) {
    const int nx = 2 + static_cast<int>(rng() % 5);
    const int extra = static_cast<int>(rng() % 3);
    std::vector<std::vector<double>> xs, ys;
    for (int i = 0; i < nx; ++i) xs.push_back({u01(), u01()});
    ys = xs;
    for (int i = 0; i < extra; ++i) {
      const auto& base = xs[rng() % xs.size()];
      ys.push_back({base[0] + 0.05 * u01() + 1e-6, base[1] + 0.05 * u01()});
    }
    MetricSpace X = MetricSpace::from_points(xs, MetricKind::euclidean);
    MetricSpace Y = MetricSpace::from_points(ys, MetricKind::euclidean);
    std::vector<int> embed(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) embed[i] = static_cast<int>(i);
    const Inclusion pair(std::move(X), std::move(Y), std::move(embed));

    double previous = 0.0;
    for (int k = 0; k + 1 <= nx && k <= 2; ++k) {
      const double got = hausdorff_config(pair, k);
      CHECK(got == oracles::hausdorff_oracle(pair, k));
      CHECK(got >= previous);  // monotone in k
      previous = got;
    }
  }
}
