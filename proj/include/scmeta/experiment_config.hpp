#pragma once

#include "scmeta/core.hpp"
#include "scmeta/environments.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace scmeta {

enum class StreamKind { QuadraticTracking, SparseRidge };

struct StreamConfig {
  StreamKind kind = StreamKind::QuadraticTracking;
  double lambda = 1.0;
  // Quadratic tracking.
  double target_radius = 1.0;
  std::optional<std::vector<double>> fixed_target;
  // Sparse ridge.
  int sparsity = 3;  // clamped to d when d < 3
  double feature_scale = 1.0;
  double label_scale = 1.0;
};

enum class SetKind { Ball, Box };

struct SetConfig {
  SetKind kind = SetKind::Ball;
  std::vector<double> center;  // empty = origin
  double radius = 1.0;
  // Box bounds; scalars are broadcast across coordinates by the factory.
  std::vector<double> lower;
  std::vector<double> upper;
};

struct ExperimentConfig {
  StreamConfig stream;
  SetConfig set;
  long long T = 1024;
  int d = 2;
  std::uint64_t seed = 0;
  double delta = 1e-8;
  // The aggregated learner always runs; these add baselines. Valid names:
  // meta, ogd_sc, sc_adagrad, adagrad.
  std::vector<std::string> algos = {"meta"};
  std::string out = "out";
  // Baseline knobs; negative = derive the default (1/(2 lambda) and
  // D/sqrt(2) respectively).
  double sc_adagrad_alpha = -1.0;
  double adagrad_step_scale = -1.0;
  std::string label;  // optional human-readable tag carried into reports
};

// Parses the JSON text of a config file. Unknown keys anywhere in the
// document are configuration errors, as are ill-typed or out-of-range
// values. Missing keys keep their defaults.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

// Full validation of cross-field constraints; throws std::invalid_argument
// naming the offending field. Called by the factories below.
void validate_config(const ExperimentConfig& cfg);

DecisionSet make_decision_set(const ExperimentConfig& cfg);
std::unique_ptr<LossStream> make_stream(const ExperimentConfig& cfg);

int effective_sparsity(const ExperimentConfig& cfg);
double default_sc_adagrad_alpha(const ExperimentConfig& cfg);
double default_adagrad_step_scale(const DecisionSet& C);

// The shipped verification matrix: both stream families, d in {1,2,5,20},
// T in {256,1024,4096}, unit ball, lambda = 1, distinct seeds.
std::vector<ExperimentConfig> standard_configs();

// The frozen-trace configuration (d=1, T=4, constant target).
ExperimentConfig golden_config();

}  // namespace scmeta
