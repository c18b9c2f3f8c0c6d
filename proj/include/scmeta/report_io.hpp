#pragma once

#include "scmeta/harness.hpp"

#include <string>

namespace scmeta {

// Round-by-round trace with the fixed header
// t,loss,regret,phi,w0..wk,s0..sk. Doubles are rendered with %.17g so the
// file is byte-identical across runs of the same config and seed.
std::string rounds_csv_text(const ExperimentResult& result);

// Certificate report. Fixed key order, %.17g doubles, hand-rendered so
// byte-level determinism does not depend on a serializer's choices.
std::string bounds_json_text(const ExperimentResult& result);

// Writes both files into the directory (created if missing).
void write_report_files(const std::string& out_dir,
                        const ExperimentResult& result);

}  // namespace scmeta
