#pragma once

#include <map>
#include <string>
#include <vector>

#include "kldg/config.hpp"
#include "kldg/dg.hpp"
#include "kldg/problems.hpp"
#include "kldg/time_integration.hpp"

namespace kldg {

struct RunReport {
  double final_time = 0.0;
  double wall_seconds = 0.0;
  long steps = 0;
  std::vector<std::string> files;
  struct LimiterWindow {
    double t = 0.0;
    double frac_limited = 0.0;  ///< elements with alpha < 1, averaged over steps
    double frac_changed = 0.0;  ///< elements actually modified
    double min_alpha = 1.0;
    long pressure_passes = 0;
  };
  std::vector<LimiterWindow> limiter_stats;
  std::map<std::string, double> norms;  // present iff the case has a reference
  // final state, kept for in-process consumers (acceptance suite, tests)
  Field solution;
  FaceField faces;
  Mesh mesh;
  GasModel gas;
  std::vector<double> last_alpha;
  std::vector<char> last_changed;
};

/// Execute the full pipeline for one configuration. Deterministic given the
/// config. Writes solution files and a report.json under output.dir unless
/// `write_outputs` is false.
RunReport run(const RunConfig& config, bool write_outputs = true);

}  // namespace kldg
