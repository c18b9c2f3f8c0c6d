#include "scmeta/harness.hpp"
#include "scmeta/report_io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace scmeta;

struct FlagOverrides {
  std::string config_path;
  std::string stream;
  long long T = -1;
  int d = -1;
  long long seed = -1;
  double delta = -1.0;
  double lambda = -1.0;
  double target_radius = -1.0;
  int sparsity = -1;
  double feature_scale = -1.0;
  double label_scale = -1.0;
  std::string algos;
  std::string out;
  std::string set;
  double sc_adagrad_alpha = -1.0;
  double adagrad_step_scale = -1.0;
};

void add_common_flags(CLI::App* cmd, FlagOverrides& f) {
  cmd->add_option("--config", f.config_path, "JSON config file");
  cmd->add_option("--stream", f.stream,
                  "Loss stream: quadratic or sparse_ridge");
  cmd->add_option("--T", f.T, "Horizon (rounds)");
  cmd->add_option("--d", f.d, "Dimension");
  cmd->add_option("--seed", f.seed, "RNG seed for the stream");
  cmd->add_option("--delta", f.delta, "Preconditioner floor delta");
  cmd->add_option("--lambda", f.lambda, "Strong convexity modulus");
  cmd->add_option("--target-radius", f.target_radius,
                  "Quadratic tracking target ball radius");
  cmd->add_option("--sparsity", f.sparsity, "Sparse ridge active coordinates");
  cmd->add_option("--feature-scale", f.feature_scale,
                  "Sparse ridge feature magnitude");
  cmd->add_option("--label-scale", f.label_scale,
                  "Sparse ridge label magnitude");
  cmd->add_option("--algos", f.algos,
                  "Comma list: meta,ogd_sc,sc_adagrad,adagrad");
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--set", f.set,
                  "Decision set: ball:RADIUS or box:LOWER:UPPER");
  cmd->add_option("--sc-adagrad-alpha", f.sc_adagrad_alpha,
                  "Step scale for the sc_adagrad baseline");
  cmd->add_option("--adagrad-step-scale", f.adagrad_step_scale,
                  "Step scale for the adagrad baseline");
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

ExperimentConfig resolve_config(const FlagOverrides& f) {
  ExperimentConfig cfg;
  if (!f.config_path.empty()) cfg = load_config_file(f.config_path);
  if (!f.stream.empty()) {
    if (f.stream == "quadratic") {
      cfg.stream.kind = StreamKind::QuadraticTracking;
    } else if (f.stream == "sparse_ridge") {
      cfg.stream.kind = StreamKind::SparseRidge;
    } else {
      throw std::invalid_argument(
          "config: --stream must be quadratic or sparse_ridge");
    }
  }
  if (f.T >= 0) cfg.T = f.T;
  if (f.d >= 0) cfg.d = f.d;
  if (f.seed >= 0) cfg.seed = static_cast<std::uint64_t>(f.seed);
  if (f.delta > 0.0) cfg.delta = f.delta;
  if (f.lambda > 0.0) cfg.stream.lambda = f.lambda;
  if (f.target_radius > 0.0) cfg.stream.target_radius = f.target_radius;
  if (f.sparsity > 0) cfg.stream.sparsity = f.sparsity;
  if (f.feature_scale > 0.0) cfg.stream.feature_scale = f.feature_scale;
  if (f.label_scale >= 0.0) cfg.stream.label_scale = f.label_scale;
  if (!f.algos.empty()) cfg.algos = split_csv(f.algos);
  if (!f.out.empty()) cfg.out = f.out;
  if (!f.set.empty()) {
    const std::vector<std::string> parts = [&] {
      std::vector<std::string> p;
      std::stringstream ss(f.set);
      std::string item;
      while (std::getline(ss, item, ':')) p.push_back(item);
      return p;
    }();
    if (!parts.empty() && parts[0] == "ball" && parts.size() <= 2) {
      cfg.set = SetConfig{};
      cfg.set.kind = SetKind::Ball;
      if (parts.size() == 2) cfg.set.radius = std::stod(parts[1]);
    } else if (!parts.empty() && parts[0] == "box" && parts.size() == 3) {
      cfg.set = SetConfig{};
      cfg.set.kind = SetKind::Box;
      cfg.set.lower = {std::stod(parts[1])};
      cfg.set.upper = {std::stod(parts[2])};
    } else {
      throw std::invalid_argument(
          "config: --set must be ball:RADIUS or box:LOWER:UPPER");
    }
  }
  if (f.sc_adagrad_alpha > 0.0) cfg.sc_adagrad_alpha = f.sc_adagrad_alpha;
  if (f.adagrad_step_scale > 0.0) {
    cfg.adagrad_step_scale = f.adagrad_step_scale;
  }
  validate_config(cfg);
  return cfg;
}

const char* const kCertNames[] = {"lemma1", "lemma2",    "lemma3",
                                  "lemma4", "lemma5",    "potential",
                                  "total_regret"};

std::vector<std::pair<std::string, bool>> cert_list(
    const CertificateOutcome& c) {
  return {{kCertNames[0], c.energy},       {kCertNames[1], c.growth},
          {kCertNames[2], c.aggregation},  {kCertNames[3], c.descent},
          {kCertNames[4], c.expert_bound}, {kCertNames[5], c.potential},
          {kCertNames[6], c.total_regret}};
}

void print_summary(const ExperimentResult& result) {
  const BoundReport& rep = result.report;
  std::printf("label            %s\n",
              result.label.empty() ? "(unnamed)" : result.label.c_str());
  std::printf("constants        G=%.6g D=%.6g lambda=%.6g T=%lld d=%d\n",
              rep.constants.G, rep.constants.D, rep.constants.lambda_sc,
              rep.constants.T, rep.constants.d);
  std::printf("experts          %zu (eta %.6g .. %.6g)\n", rep.experts.size(),
              rep.experts.front().eta, rep.experts.back().eta);
  std::printf("observed regret  %.10g\n", rep.observed_regret);
  std::printf("final bound      %.10g\n", rep.final_bound);
  std::printf("eta_hat          %.10g%s\n", rep.eta_hat,
              rep.eta_hat_clipped ? " (clipped)" : "");
  for (const auto& [name, ok] : cert_list(rep.certs)) {
    std::printf("%-4s %-13s %s\n", ok ? "PASS" : "FAIL", name.c_str(),
                ok ? "" : "<-- certificate violated");
  }
  for (const BaselineTrace& b : result.baselines) {
    std::printf("baseline %-12s regret %.10g\n", b.name.c_str(),
                b.regret.empty() ? 0.0 : b.regret.back());
  }
}

int report_failures(const ExperimentResult& result) {
  for (const auto& [name, ok] : cert_list(result.report.certs)) {
    if (!ok) {
      std::fprintf(stderr, "certificate failed: %s\n", name.c_str());
      return 1;
    }
  }
  return 0;
}

int cmd_run(const FlagOverrides& f) {
  const ExperimentConfig cfg = resolve_config(f);
  const ExperimentResult result = run_experiment(cfg);
  write_report_files(cfg.out, result);
  print_summary(result);
  std::printf("wrote %s/rounds.csv and %s/bounds.json\n", cfg.out.c_str(),
              cfg.out.c_str());
  return report_failures(result);
}

int cmd_sweep(const FlagOverrides& f, long long t_min, long long t_max) {
  if (t_min < 1 || t_max < t_min) {
    throw std::invalid_argument("config: need 1 <= --T-min <= --T-max");
  }
  ExperimentConfig base = resolve_config(f);
  std::ostringstream csv;
  csv << "T,observed_regret,final_bound,lemma3_bound,eta_hat,V_T_S\n";
  int rc = 0;
  for (long long T = t_min; T <= t_max; T *= 2) {
    ExperimentConfig cfg = base;
    cfg.T = T;
    const ExperimentResult result = run_experiment(cfg);
    const BoundReport& rep = result.report;
    char line[256];
    std::snprintf(line, sizeof(line), "%lld,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  T, rep.observed_regret, rep.final_bound,
                  rep.aggregation_bound, rep.eta_hat, rep.v_ts);
    csv << line;
    std::printf("T=%-8lld regret %-14.6g bound %-14.6g %s\n", T,
                rep.observed_regret, rep.final_bound,
                rep.certs.all() ? "ok" : "CERTIFICATE FAILURE");
    if (!rep.certs.all()) rc = 1;
  }
  std::error_code ec;
  std::filesystem::create_directories(base.out, ec);
  const std::string path = base.out + "/sweep.csv";
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("report: cannot open \"" + path + "\"");
  file << csv.str();
  std::printf("wrote %s\n", path.c_str());
  return rc;
}

int cmd_verify(const FlagOverrides& f) {
  std::vector<ExperimentConfig> configs;
  if (!f.config_path.empty()) {
    configs.push_back(resolve_config(f));
  } else {
    configs = standard_configs();
  }
  int failures = 0;
  for (const ExperimentConfig& cfg : configs) {
    const ExperimentResult result = run_experiment(cfg);
    const BoundReport& rep = result.report;
    std::string bad;
    for (const auto& [name, ok] : cert_list(rep.certs)) {
      if (!ok) {
        bad = name;
        break;
      }
    }
    if (bad.empty()) {
      std::printf("PASS %-24s regret %-12.6g <= bound %.6g\n",
                  result.label.c_str(), rep.observed_regret, rep.final_bound);
    } else {
      std::printf("FAIL %-24s certificate %s\n", result.label.c_str(),
                  bad.c_str());
      ++failures;
    }
  }
  if (failures > 0) {
    std::fprintf(stderr, "%d config(s) failed certificate checks\n", failures);
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Parameter-free online learner for strongly convex losses with "
      "runtime regret certificates"};
  app.require_subcommand(1);

  FlagOverrides run_flags, sweep_flags, verify_flags;
  long long t_min = 256, t_max = 4096;

  CLI::App* run = app.add_subcommand("run", "Run one experiment");
  add_common_flags(run, run_flags);

  CLI::App* sweep =
      app.add_subcommand("sweep", "Run a doubling-horizon series");
  add_common_flags(sweep, sweep_flags);
  sweep->add_option("--T-min", t_min, "Smallest horizon");
  sweep->add_option("--T-max", t_max, "Largest horizon");

  CLI::App* verify = app.add_subcommand(
      "verify", "Re-check certificates on the standard config matrix");
  add_common_flags(verify, verify_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_flags);
    if (sweep->parsed()) return cmd_sweep(sweep_flags, t_min, t_max);
    return cmd_verify(verify_flags);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
