#include "bbtetris/weights.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <vector>

namespace bbtetris {

namespace {

LinearWeights from_list(std::initializer_list<double> values) {
  LinearWeights w;
  int i = 0;
  for (double v : values) w.theta[i++] = v;
  return w;
}

void check_finite(const LinearWeights& w) {
  if (!w.theta.allFinite() || !std::isfinite(w.bias)) throw WeightFileError("weights must be finite");
}

}  // namespace

namespace presets {

LinearWeights dt10() { return from_list({-2.18, 2.42, -2.17, -3.31, 0.95, -2.22, -0.81, -9.65, 1.27}); }
LinearWeights dt20() { return from_list({-2.68, 1.38, -2.41, -6.32, 2.03, -2.71, -0.43, -9.48, 0.89}); }
LinearWeights ppo_best() { return from_list({-0.51, 0.16, -0.40, -0.75, -0.18, -0.39, -0.17, -0.83, 0.36}); }

}  // namespace presets

LinearWeights resolve_weights(std::string_view name_or_path) {
  if (name_or_path == "dt10") return presets::dt10();
  if (name_or_path == "dt20") return presets::dt20();
  if (name_or_path == "ppo-best") return presets::ppo_best();
  return load_weights(std::filesystem::path(name_or_path));
}

LinearWeights parse_weights(std::string_view text) {
  LinearWeights w;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw WeightFileError(std::string("malformed weight JSON: ") + e.what());
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == "bias") continue;
      bool known = false;
      for (auto name : kFeatureNames) known = known || it.key() == name;
      if (!known && it.key() != "meta") throw WeightFileError("unknown weight key '" + it.key() + "'");
    }
    for (int i = 0; i < kNumFeatures; ++i) {
      const std::string key(kFeatureNames[i]);
      if (!j.contains(key) || !j[key].is_number()) throw WeightFileError("missing numeric weight '" + key + "'");
      w.theta[i] = j[key].get<double>();
    }
    if (j.contains("bias")) {
      if (!j["bias"].is_number()) throw WeightFileError("bias must be a number");
      w.bias = j["bias"].get<double>();
    }
  } else {
    std::istringstream in{std::string(text)};
    in.imbue(std::locale::classic());
    std::vector<double> values;
    std::string token;
    while (in >> token) {
      std::istringstream t(token);
      t.imbue(std::locale::classic());
      double v = 0;
      if (!(t >> v) || !t.eof()) throw WeightFileError("non-numeric token '" + token + "' in weight file");
      values.push_back(v);
    }
    if (values.size() != 9 && values.size() != 10) {
      throw WeightFileError("weight file needs 9 or 10 numbers, found " + std::to_string(values.size()));
    }
    for (int i = 0; i < kNumFeatures; ++i) w.theta[i] = values[i];
    if (values.size() == 10) w.bias = values[9];
  }
  check_finite(w);
  return w;
}

LinearWeights load_weights(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw WeightFileError("cannot open weight file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_weights(buf.str());
}

std::string weights_to_json(const LinearWeights& w, int indent) {
  nlohmann::ordered_json j;
  for (int i = 0; i < kNumFeatures; ++i) j[std::string(kFeatureNames[i])] = w.theta[i];
  j["bias"] = w.bias;
  return j.dump(indent);
}

void save_weights(const std::filesystem::path& path, const LinearWeights& w) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write weight file '" + path.string() + "'");
  out << weights_to_json(w) << '\n';
}

}  // namespace bbtetris
