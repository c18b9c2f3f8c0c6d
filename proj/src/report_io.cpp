#include "scmeta/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace scmeta {

namespace {

std::string fmt(double v) {
  if (!std::isfinite(v)) {
    throw std::runtime_error("report: refusing to serialize non-finite value");
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

std::string fmt_array(const std::vector<double>& vals) {
  std::string out = "[";
  for (size_t i = 0; i < vals.size(); ++i) {
    if (i) out += ", ";
    out += fmt(vals[i]);
  }
  out += "]";
  return out;
}

}  // namespace

std::string rounds_csv_text(const ExperimentResult& result) {
  const size_t n = result.report.experts.size();
  std::ostringstream out;
  out << "t,loss,regret,phi";
  for (size_t i = 0; i < n; ++i) out << ",w" << i;
  for (size_t i = 0; i < n; ++i) out << ",s" << i;
  out << "\n";
  for (const RoundRecord& r : result.records) {
    out << r.t << ',' << fmt(r.loss) << ',' << fmt(r.regret) << ','
        << fmt(r.phi);
    for (size_t i = 0; i < n; ++i) out << ',' << fmt(r.weights[i]);
    for (size_t i = 0; i < n; ++i) out << ',' << fmt(r.surrogates[i]);
    out << "\n";
  }
  return out.str();
}

std::string bounds_json_text(const ExperimentResult& result) {
  const BoundReport& rep = result.report;
  std::vector<double> etas, alphas, e_t, a_t, energy_lhs, energy_rhs;
  std::vector<double> meta_regret, expert_regret, final_per_eta;
  for (const ExpertBound& eb : rep.experts) {
    etas.push_back(eb.eta);
    alphas.push_back(eb.alpha);
    e_t.push_back(eb.E_T);
    a_t.push_back(eb.A_T);
    energy_lhs.push_back(eb.energy_lhs);
    energy_rhs.push_back(eb.energy_rhs);
    meta_regret.push_back(eb.meta_regret);
    expert_regret.push_back(eb.expert_regret);
    final_per_eta.push_back(eb.final_bound);
  }

  std::ostringstream out;
  out << "{\n";
  out << "  \"label\": \"" << result.label << "\",\n";
  out << "  \"constants\": {\n";
  out << "    \"G\": " << fmt(rep.constants.G) << ",\n";
  out << "    \"D\": " << fmt(rep.constants.D) << ",\n";
  out << "    \"lambda\": " << fmt(rep.constants.lambda_sc) << ",\n";
  out << "    \"T\": " << rep.constants.T << ",\n";
  out << "    \"d\": " << rep.constants.d << ",\n";
  out << "    \"delta\": " << fmt(rep.delta) << "\n";
  out << "  },\n";
  out << "  \"etas\": " << fmt_array(etas) << ",\n";
  out << "  \"alphas\": " << fmt_array(alphas) << ",\n";
  out << "  \"lemma3_bound\": " << fmt(rep.aggregation_bound) << ",\n";
  out << "  \"E_T\": " << fmt_array(e_t) << ",\n";
  out << "  \"A_T\": " << fmt_array(a_t) << ",\n";
  out << "  \"lemma5_bounds\": " << fmt_array(e_t) << ",\n";
  out << "  \"lemma1_lhs\": " << fmt_array(energy_lhs) << ",\n";
  out << "  \"lemma1_rhs\": " << fmt_array(energy_rhs) << ",\n";
  out << "  \"observed_meta_regret\": " << fmt_array(meta_regret) << ",\n";
  out << "  \"observed_expert_regret\": " << fmt_array(expert_regret)
      << ",\n";
  out << "  \"final_bound_per_eta\": " << fmt_array(final_per_eta) << ",\n";
  out << "  \"final_bound\": " << fmt(rep.final_bound) << ",\n";
  out << "  \"observed_regret\": " << fmt(rep.observed_regret) << ",\n";
  out << "  \"V_T_S\": " << fmt(rep.v_ts) << ",\n";
  out << "  \"eta_hat\": " << fmt(rep.eta_hat) << ",\n";
  out << "  \"eta_hat_clipped\": " << fmt_bool(rep.eta_hat_clipped) << ",\n";
  out << "  \"sqrt_regime_bound\": " << fmt(rep.sqrt_regime_bound) << ",\n";
  out << "  \"capped_regime_bound\": " << fmt(rep.capped_regime_bound)
      << ",\n";
  out << "  \"combined_regime_bound\": " << fmt(rep.combined_regime_bound)
      << ",\n";
  out << "  \"phi_initial\": " << fmt(rep.phi_initial) << ",\n";
  out << "  \"phi_final\": " << fmt(rep.phi_final) << ",\n";
  out << "  \"max_phi_increase\": " << fmt(rep.max_phi_increase) << ",\n";
  out << "  \"min_lemma2_slack\": " << fmt(rep.min_growth_slack) << ",\n";
  out << "  \"min_lemma4_slack\": " << fmt(rep.min_descent_slack) << ",\n";
  out << "  \"max_abs_surrogate\": " << fmt(rep.max_abs_surrogate) << ",\n";
  out << "  \"max_grad_norm\": " << fmt(rep.max_grad_norm) << ",\n";
  out << "  \"grad_bound_violations\": " << rep.grad_bound_violations
      << ",\n";
  out << "  \"x_star\": " << fmt_array(std::vector<double>(
             result.x_star.data(), result.x_star.data() + result.x_star.size()))
      << ",\n";
  out << "  \"comparator\": {\n";
  out << "    \"converged\": " << fmt_bool(result.comparator_info.converged)
      << ",\n";
  out << "    \"achieved_tol\": " << fmt(result.comparator_info.achieved_tol)
      << ",\n";
  out << "    \"iterations\": " << result.comparator_info.iterations << "\n";
  out << "  },\n";
  out << "  \"certificates\": {\n";
  out << "    \"lemma1\": " << fmt_bool(rep.certs.energy) << ",\n";
  out << "    \"lemma2\": " << fmt_bool(rep.certs.growth) << ",\n";
  out << "    \"lemma3\": " << fmt_bool(rep.certs.aggregation) << ",\n";
  out << "    \"lemma4\": " << fmt_bool(rep.certs.descent) << ",\n";
  out << "    \"lemma5\": " << fmt_bool(rep.certs.expert_bound) << ",\n";
  out << "    \"potential\": " << fmt_bool(rep.certs.potential) << ",\n";
  out << "    \"total_regret\": " << fmt_bool(rep.certs.total_regret) << "\n";
  out << "  },\n";
  out << "  \"baselines\": {";
  for (size_t i = 0; i < result.baselines.size(); ++i) {
    const BaselineTrace& b = result.baselines[i];
    if (i) out << ",";
    out << "\n    \"" << b.name << "\": {\"regret\": "
        << fmt(b.regret.empty() ? 0.0 : b.regret.back()) << "}";
  }
  if (!result.baselines.empty()) out << "\n  ";
  out << "}\n";
  out << "}\n";
  return out.str();
}

void write_report_files(const std::string& out_dir,
                        const ExperimentResult& result) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw std::runtime_error("report: cannot create directory \"" + out_dir +
                             "\": " + ec.message());
  }
  const auto write = [&](const std::string& name, const std::string& text) {
    const std::string path = out_dir + "/" + name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("report: cannot open \"" + path + "\"");
    f << text;
    if (!f) throw std::runtime_error("report: write failed for \"" + path + "\"");
  };
  write("rounds.csv", rounds_csv_text(result));
  write("bounds.json", bounds_json_text(result));
}

}  // namespace scmeta
