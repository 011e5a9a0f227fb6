#ifndef TOPICSUM_FUSION_HPP
#define TOPICSUM_FUSION_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "topicsum/errors.hpp"
#include "topicsum/signals.hpp"

namespace topicsum {

// Nonnegative weights per signal name. Weights are renormalized over the
// signals actually present in a matrix at fusion time, so the effective
// lambdas always sum to 1.
struct FusionConfig {
  std::map<std::string, double> weights;

  static FusionConfig equal_weights(const std::set<std::string>& names) {
    FusionConfig cfg;
    for (const std::string& n : names) cfg.weights[n] = 1.0;
    return cfg;
  }
};

struct FusedLabels {
  std::string doc_id;
  std::string topic_text;
  std::vector<double> targets;  // soft labels in [0,1]
};

// Integrated supervision: per-sentence convex combination of present signals.
inline FusedLabels fuse(const SignalMatrix& matrix, const FusionConfig& config) {
  for (const auto& [name, w] : config.weights) {
    if (w < 0.0) throw ConfigError("fusion weight for '" + name + "' is negative");
  }
  double mass = 0.0;
  for (const auto& [name, vals] : matrix.values) {
    auto it = config.weights.find(name);
    if (it != config.weights.end()) mass += it->second;
  }
  if (mass <= 0.0) {
    throw DataError("fusion has zero weight mass on present signals for (id=" + matrix.doc_id +
                    ", topic=" + matrix.topic_text + ")");
  }

  FusedLabels out;
  out.doc_id = matrix.doc_id;
  out.topic_text = matrix.topic_text;
  out.targets.assign(static_cast<size_t>(matrix.n), 0.0);
  for (const auto& [name, vals] : matrix.values) {
    auto it = config.weights.find(name);
    if (it == config.weights.end() || it->second == 0.0) continue;
    const double lambda = it->second / mass;
    for (int i = 0; i < matrix.n; ++i) {
      out.targets[static_cast<size_t>(i)] += lambda * vals[static_cast<size_t>(i)];
    }
  }
  for (double& t : out.targets) t = detail::clamp01(t);
  return out;
}

// Supports the "all - {X}" experiment grid: dropped signals get weight 0.
inline FusionConfig ablate(FusionConfig config, const std::set<std::string>& drop) {
  for (const std::string& name : drop) {
    if (!is_signal_name(name)) throw ConfigError("unknown signal in drop list: " + name);
    config.weights[name] = 0.0;
  }
  return config;
}

}  // namespace topicsum

#endif
