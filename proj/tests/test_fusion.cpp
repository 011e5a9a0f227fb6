#include <catch2/catch.hpp>

#include <numeric>
#include <random>

#include "topicsum/fusion.hpp"

#include "support/test_util.hpp"

using namespace topicsum;

namespace {

SignalMatrix matrix_of(std::map<std::string, std::vector<double>> values,
                       const std::string& id = "doc", const std::string& topic = "t") {
  SignalMatrix m;
  m.doc_id = id;
  m.topic_text = topic;
  m.values = std::move(values);
  m.n = m.values.empty() ? 0 : static_cast<int>(m.values.begin()->second.size());
  return m;
}

SignalMatrix random_matrix(std::mt19937& rng) {
  std::uniform_int_distribution<int> n_dist(1, 12);
  std::uniform_real_distribution<double> val(0.0, 1.0);
  const int n = n_dist(rng);
  SignalMatrix m;
  m.doc_id = "doc";
  m.topic_text = "t";
  m.n = n;
  for (const char* name : kSignalNames) {
    if (rng() % 2 == 0) continue;
    std::vector<double> vals(static_cast<size_t>(n));
    const bool binary = std::string(name) == "ext" || std::string(name) == "qa";
    for (double& v : vals) v = binary ? static_cast<double>(rng() % 2) : val(rng);
    m.values[name] = std::move(vals);
  }
  if (m.values.empty()) {
    std::vector<double> vals(static_cast<size_t>(n));
    for (double& v : vals) v = val(rng);
    m.values["rule"] = std::move(vals);
  }
  return m;
}

}  // namespace

TEST_CASE("fuse of equal signals reproduces them") {
  const SignalMatrix m =
      matrix_of({{"rule", {0.4, 0.8}}, {"topic_sent", {0.4, 0.8}}});
  FusionConfig cfg;
  cfg.weights = {{"rule", 0.3}, {"topic_sent", 1.7}};
  const FusedLabels fused = fuse(m, cfg);
  CHECK(fused.targets[0] == Approx(0.4).margin(1e-12));
  CHECK(fused.targets[1] == Approx(0.8).margin(1e-12));
}

TEST_CASE("one-hot weights reproduce the selected signal exactly") {
  const SignalMatrix m =
      matrix_of({{"rule", {1.0, 0.0, 0.5}}, {"topic_sent", {0.2, 0.9, 0.1}}});
  FusionConfig cfg;
  cfg.weights = {{"rule", 1.0}, {"topic_sent", 0.0}};
  CHECK(fuse(m, cfg).targets == std::vector<double>{1.0, 0.0, 0.5});
}

TEST_CASE("equal weights average present signals") {
  const SignalMatrix m = matrix_of({{"ext", {1.0, 0.0}}, {"rule", {0.0, 1.0}}});
  const FusionConfig cfg = FusionConfig::equal_weights({"ext", "rule"});
  CHECK(fuse(m, cfg).targets == std::vector<double>{0.5, 0.5});
}

TEST_CASE("fuse fails when no present signal has weight") {
  const SignalMatrix m = matrix_of({{"ext", {1.0}}, {"qa", {0.0}}});
  FusionConfig cfg = FusionConfig::equal_weights(all_signal_names());
  cfg = ablate(cfg, {"ext", "qa"});
  CHECK_THROWS_AS(fuse(m, cfg), DataError);
}

TEST_CASE("negative weights are rejected") {
  const SignalMatrix m = matrix_of({{"rule", {0.5}}});
  FusionConfig cfg;
  cfg.weights = {{"rule", -1.0}};
  CHECK_THROWS_AS(fuse(m, cfg), ConfigError);
}

TEST_CASE("ablate zeroes the dropped names and keeps the rest") {
  FusionConfig cfg = FusionConfig::equal_weights(all_signal_names());
  const FusionConfig dropped = ablate(cfg, {"qa"});
  CHECK(dropped.weights.at("qa") == 0.0);
  int active = 0;
  for (const auto& [name, w] : dropped.weights) active += w > 0.0 ? 1 : 0;
  CHECK(active == 6);
  // empty drop set is the identity
  const FusionConfig same = ablate(cfg, {});
  CHECK(same.weights == cfg.weights);
  CHECK_THROWS_AS(ablate(cfg, {"nope"}), ConfigError);
}

TEST_CASE("fusion invariants on random matrices") {
  std::mt19937 rng(83);
  std::uniform_real_distribution<double> weight_dist(0.0, 3.0);
  for (int trial = 0; trial < 500; ++trial) {
    const SignalMatrix m = random_matrix(rng);
    FusionConfig cfg;
    double mass = 0.0;
    for (const char* name : kSignalNames) {
      const double w = weight_dist(rng);
      cfg.weights[name] = w;
    }
    for (const auto& [name, vals] : m.values) mass += cfg.weights[name];
    if (mass <= 0.0) continue;

    const FusedLabels fused = fuse(m, cfg);

    // convexity bounds
    for (int i = 0; i < m.n; ++i) {
      double lo = 1.0, hi = 0.0;
      for (const auto& [name, vals] : m.values) {
        if (cfg.weights[name] == 0.0) continue;
        lo = std::min(lo, vals[static_cast<size_t>(i)]);
        hi = std::max(hi, vals[static_cast<size_t>(i)]);
      }
      CHECK(fused.targets[static_cast<size_t>(i)] >= lo - 1e-12);
      CHECK(fused.targets[static_cast<size_t>(i)] <= hi + 1e-12);
    }

    // brute-force integrated supervision
    for (int i = 0; i < m.n; ++i) {
      double expect = 0.0;
      for (const auto& [name, vals] : m.values) {
        expect += (cfg.weights[name] / mass) * vals[static_cast<size_t>(i)];
      }
      CHECK(fused.targets[static_cast<size_t>(i)] == Approx(expect).margin(1e-12));
    }

    // renormalization: scaling every weight is a no-op
    FusionConfig scaled = cfg;
    for (auto& [name, w] : scaled.weights) w *= 4.0;
    const FusedLabels fused2 = fuse(m, scaled);
    for (int i = 0; i < m.n; ++i) {
      CHECK(fused2.targets[static_cast<size_t>(i)] ==
            Approx(fused.targets[static_cast<size_t>(i)]).margin(1e-12));
    }
  }
}

TEST_CASE("fusing with weights (2,2) equals fusing with (0.5,0.5)") {
  const SignalMatrix m = matrix_of({{"ext", {1.0, 0.25, 0.0}}, {"rule", {0.0, 0.75, 1.0}}});
  FusionConfig big;
  big.weights = {{"ext", 2.0}, {"rule", 2.0}};
  FusionConfig small;
  small.weights = {{"ext", 0.5}, {"rule", 0.5}};
  CHECK(fuse(m, big).targets == fuse(m, small).targets);
}

TEST_CASE("fusion is permutation equivariant over sentences") {
  std::mt19937 rng(89);
  for (int trial = 0; trial < 50; ++trial) {
    const SignalMatrix m = random_matrix(rng);
    const FusionConfig cfg = FusionConfig::equal_weights(all_signal_names());
    const FusedLabels fused = fuse(m, cfg);

    std::vector<size_t> perm(static_cast<size_t>(m.n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    SignalMatrix permuted = m;
    for (auto& [name, vals] : permuted.values) {
      for (size_t i = 0; i < perm.size(); ++i) vals[i] = m.values.at(name)[perm[i]];
    }
    const FusedLabels fused2 = fuse(permuted, cfg);
    for (size_t i = 0; i < perm.size(); ++i) {
      CHECK(fused2.targets[i] == Approx(fused.targets[perm[i]]).margin(1e-15));
    }
  }
}
