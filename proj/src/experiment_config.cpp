#include "scmeta/experiment_config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace scmeta {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& msg) {
  throw std::invalid_argument("config: " + msg);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!known.count(item.key())) {
      config_error("unknown key \"" + item.key() + "\" in " + where);
    }
  }
}

double get_number(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) config_error(std::string(key) + " must be a number");
  return obj[key].get<double>();
}

std::vector<double> get_vector(const json& obj, const char* key) {
  std::vector<double> out;
  if (!obj.contains(key)) return out;
  if (!obj[key].is_array()) config_error(std::string(key) + " must be an array");
  for (const auto& v : obj[key]) {
    if (!v.is_number()) config_error(std::string(key) + " entries must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

StreamConfig parse_stream(const json& obj) {
  reject_unknown_keys(obj,
                      {"kind", "lambda", "target_radius", "fixed_target",
                       "sparsity", "feature_scale", "label_scale"},
                      "stream");
  StreamConfig sc;
  if (obj.contains("kind")) {
    const std::string kind = obj["kind"].is_string()
                                 ? obj["kind"].get<std::string>()
                                 : std::string();
    if (kind == "quadratic") {
      sc.kind = StreamKind::QuadraticTracking;
    } else if (kind == "sparse_ridge") {
      sc.kind = StreamKind::SparseRidge;
    } else {
      config_error("stream.kind must be \"quadratic\" or \"sparse_ridge\"");
    }
  }
  sc.lambda = get_number(obj, "lambda", sc.lambda);
  sc.target_radius = get_number(obj, "target_radius", sc.target_radius);
  if (obj.contains("fixed_target")) {
    sc.fixed_target = get_vector(obj, "fixed_target");
  }
  if (obj.contains("sparsity")) {
    if (!obj["sparsity"].is_number_integer()) {
      config_error("stream.sparsity must be an integer");
    }
    sc.sparsity = obj["sparsity"].get<int>();
  }
  sc.feature_scale = get_number(obj, "feature_scale", sc.feature_scale);
  sc.label_scale = get_number(obj, "label_scale", sc.label_scale);
  return sc;
}

SetConfig parse_set(const json& obj) {
  reject_unknown_keys(obj, {"kind", "center", "radius", "lower", "upper"},
                      "set");
  SetConfig sc;
  if (obj.contains("kind")) {
    const std::string kind = obj["kind"].is_string()
                                 ? obj["kind"].get<std::string>()
                                 : std::string();
    if (kind == "ball") {
      sc.kind = SetKind::Ball;
    } else if (kind == "box") {
      sc.kind = SetKind::Box;
    } else {
      config_error("set.kind must be \"ball\" or \"box\"");
    }
  }
  sc.center = get_vector(obj, "center");
  sc.radius = get_number(obj, "radius", sc.radius);
  sc.lower = get_vector(obj, "lower");
  sc.upper = get_vector(obj, "upper");
  return sc;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    config_error(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) config_error("top level must be a JSON object");
  reject_unknown_keys(doc,
                      {"stream", "set", "T", "d", "seed", "delta", "algos",
                       "out", "sc_adagrad_alpha", "adagrad_step_scale",
                       "label"},
                      "top level");

  ExperimentConfig cfg;
  if (doc.contains("stream")) {
    if (!doc["stream"].is_object()) config_error("stream must be an object");
    cfg.stream = parse_stream(doc["stream"]);
  }
  if (doc.contains("set")) {
    if (!doc["set"].is_object()) config_error("set must be an object");
    cfg.set = parse_set(doc["set"]);
  }
  if (doc.contains("T")) {
    if (!doc["T"].is_number_integer()) config_error("T must be an integer");
    cfg.T = doc["T"].get<long long>();
  }
  if (doc.contains("d")) {
    if (!doc["d"].is_number_integer()) config_error("d must be an integer");
    cfg.d = doc["d"].get<int>();
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer() || doc["seed"].get<long long>() < 0) {
      config_error("seed must be a nonnegative integer");
    }
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  cfg.delta = get_number(doc, "delta", cfg.delta);
  if (doc.contains("algos")) {
    if (!doc["algos"].is_array()) config_error("algos must be an array");
    cfg.algos.clear();
    for (const auto& a : doc["algos"]) {
      if (!a.is_string()) config_error("algos entries must be strings");
      cfg.algos.push_back(a.get<std::string>());
    }
  }
  if (doc.contains("out")) {
    if (!doc["out"].is_string()) config_error("out must be a string");
    cfg.out = doc["out"].get<std::string>();
  }
  cfg.sc_adagrad_alpha =
      get_number(doc, "sc_adagrad_alpha", cfg.sc_adagrad_alpha);
  cfg.adagrad_step_scale =
      get_number(doc, "adagrad_step_scale", cfg.adagrad_step_scale);
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) config_error("label must be a string");
    cfg.label = doc["label"].get<std::string>();
  }
  validate_config(cfg);
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("config: cannot open \"" + path + "\"");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.T < 1) config_error("T must be >= 1");
  if (cfg.d < 1) config_error("d must be >= 1");
  if (!(cfg.delta > 0.0) || !std::isfinite(cfg.delta)) {
    config_error("delta must be positive");
  }
  if (!(cfg.stream.lambda > 0.0) || !std::isfinite(cfg.stream.lambda)) {
    config_error("stream.lambda must be positive");
  }
  if (cfg.stream.kind == StreamKind::QuadraticTracking) {
    if (!(cfg.stream.target_radius > 0.0)) {
      config_error("stream.target_radius must be positive");
    }
    if (cfg.stream.fixed_target &&
        static_cast<int>(cfg.stream.fixed_target->size()) != cfg.d) {
      config_error("stream.fixed_target must have d entries");
    }
  } else {
    if (cfg.stream.sparsity < 1) config_error("stream.sparsity must be >= 1");
    if (!(cfg.stream.feature_scale > 0.0)) {
      config_error("stream.feature_scale must be positive");
    }
    if (cfg.stream.label_scale < 0.0) {
      config_error("stream.label_scale must be >= 0");
    }
  }
  if (cfg.set.kind == SetKind::Ball) {
    if (!(cfg.set.radius > 0.0)) config_error("set.radius must be positive");
    if (!cfg.set.center.empty() &&
        static_cast<int>(cfg.set.center.size()) != cfg.d) {
      config_error("set.center must have d entries");
    }
  } else {
    const size_t nl = cfg.set.lower.size();
    const size_t nu = cfg.set.upper.size();
    if ((nl != 1 && nl != static_cast<size_t>(cfg.d)) || nl != nu) {
      config_error("set.lower/upper must both have 1 or d entries");
    }
  }
  for (const std::string& a : cfg.algos) {
    if (a != "meta" && a != "ogd_sc" && a != "sc_adagrad" && a != "adagrad") {
      config_error("unknown algorithm \"" + a + "\"");
    }
  }
}

DecisionSet make_decision_set(const ExperimentConfig& cfg) {
  validate_config(cfg);
  if (cfg.set.kind == SetKind::Ball) {
    Vec center = Vec::Zero(cfg.d);
    for (size_t i = 0; i < cfg.set.center.size(); ++i) {
      center[static_cast<Eigen::Index>(i)] = cfg.set.center[i];
    }
    return DecisionSet::ball(std::move(center), cfg.set.radius);
  }
  Vec lower(cfg.d), upper(cfg.d);
  for (int i = 0; i < cfg.d; ++i) {
    lower[i] = cfg.set.lower.size() == 1 ? cfg.set.lower[0]
                                         : cfg.set.lower[static_cast<size_t>(i)];
    upper[i] = cfg.set.upper.size() == 1 ? cfg.set.upper[0]
                                         : cfg.set.upper[static_cast<size_t>(i)];
  }
  return DecisionSet::box(std::move(lower), std::move(upper));
}

std::unique_ptr<LossStream> make_stream(const ExperimentConfig& cfg) {
  validate_config(cfg);
  if (cfg.stream.kind == StreamKind::QuadraticTracking) {
    if (cfg.stream.fixed_target) {
      Vec u(cfg.d);
      for (int i = 0; i < cfg.d; ++i) {
        u[i] = (*cfg.stream.fixed_target)[static_cast<size_t>(i)];
      }
      return std::make_unique<QuadraticTracking>(
          cfg.d, cfg.T, cfg.stream.lambda, std::move(u),
          cfg.stream.target_radius);
    }
    return std::make_unique<QuadraticTracking>(cfg.d, cfg.T, cfg.stream.lambda,
                                               cfg.stream.target_radius,
                                               cfg.seed);
  }
  return std::make_unique<SparseRidge>(
      cfg.d, cfg.T, cfg.stream.lambda, effective_sparsity(cfg),
      cfg.stream.feature_scale, cfg.stream.label_scale, cfg.seed);
}

int effective_sparsity(const ExperimentConfig& cfg) {
  return std::min(cfg.stream.sparsity, cfg.d);
}

double default_sc_adagrad_alpha(const ExperimentConfig& cfg) {
  return cfg.sc_adagrad_alpha > 0.0 ? cfg.sc_adagrad_alpha
                                    : 1.0 / (2.0 * cfg.stream.lambda);
}

double default_adagrad_step_scale(const DecisionSet& C) {
  return C.diameter() / std::sqrt(2.0);
}

std::vector<ExperimentConfig> standard_configs() {
  std::vector<ExperimentConfig> out;
  const int dims[] = {1, 2, 5, 20};
  const long long horizons[] = {256, 1024, 4096};
  std::uint64_t seed = 101;
  for (StreamKind kind :
       {StreamKind::QuadraticTracking, StreamKind::SparseRidge}) {
    for (int d : dims) {
      for (long long T : horizons) {
        ExperimentConfig cfg;
        cfg.stream.kind = kind;
        cfg.d = d;
        cfg.T = T;
        cfg.seed = seed++;
        cfg.algos = {"meta", "ogd_sc", "sc_adagrad", "adagrad"};
        std::ostringstream name;
        name << (kind == StreamKind::QuadraticTracking ? "quadratic"
                                                       : "sparse_ridge")
             << "_d" << d << "_T" << T;
        cfg.label = name.str();
        out.push_back(std::move(cfg));
      }
    }
  }
  return out;
}

ExperimentConfig golden_config() {
  ExperimentConfig cfg;
  cfg.stream.kind = StreamKind::QuadraticTracking;
  cfg.stream.lambda = 1.0;
  cfg.stream.fixed_target = std::vector<double>{0.5};
  cfg.stream.target_radius = 0.5;
  cfg.set.kind = SetKind::Ball;
  cfg.set.radius = 1.0;
  cfg.T = 4;
  cfg.d = 1;
  cfg.seed = 7;
  cfg.delta = 2.0;
  cfg.label = "golden_d1_T4";
  return cfg;
}

}  // namespace scmeta
