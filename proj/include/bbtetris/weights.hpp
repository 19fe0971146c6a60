#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "bbtetris/features.hpp"

namespace bbtetris {

/// Nine named feature weights plus an optional bias (zero for actors and
/// greedy weight sets, the critic's intercept otherwise).
struct LinearWeights {
  FeatureVector theta = FeatureVector::Zero();
  double bias = 0.0;
};

class WeightFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace presets {

LinearWeights dt10();
LinearWeights dt20();
LinearWeights ppo_best();

}  // namespace presets

/// "dt10", "dt20", "ppo-best", or a path to a weight file.
LinearWeights resolve_weights(std::string_view name_or_path);

/// JSON object keyed by feature name (plus optional "bias"), or plain text
/// with 9 or 10 whitespace-separated numbers in feature order.
LinearWeights parse_weights(std::string_view text);
LinearWeights load_weights(const std::filesystem::path& path);

std::string weights_to_json(const LinearWeights& w, int indent = 2);
void save_weights(const std::filesystem::path& path, const LinearWeights& w);

}  // namespace bbtetris
