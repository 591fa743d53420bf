#pragma once

// The job layer behind the command-line tool: validated job specs, the
// stable CSV/JSON formats, the on-disk value cache, and named verification
// suites packaging the analysis checks.

#include <cstdint>
#include <string>

#include "gperiod/analysis.hpp"
#include "gperiod/evaluate.hpp"

namespace gperiod {

enum class Command { plot, analyze, verify, boundary, sweep };

struct JobSpec {
    Command command = Command::analyze;
    int64_t n = 0;
    int64_t omega = 1;
    int64_t r = 1;
    std::string output_path;

    // plot
    int width = 1024;
    int height = 1024;
    int point_radius = 1;
    int64_t color_modulus = 0;  // 0 = choose automatically
    bool svg = false;
    bool overlay = false;

    // verify / boundary
    std::string suite;
    double tol = 0.0;        // 0 = per-suite default
    int64_t d_override = 0;  // orbit size for weyl/boundary when not implied
    int samples = 1024;

    // sweep
    int64_t n_from = 0;
    int64_t n_to = 0;
    int64_t n_step = 1;

    // shared; empty/zero defer to GPERIOD_CACHE_DIR / GPERIOD_THREADS
    std::string cache_dir;
    int threads = 0;
};

struct JobResult {
    int exit_code = 0;       // 0 ok, 1 verification failure, 2 usage, 3 internal
    std::string message;     // one-line summary for the terminal
};

JobResult run(const JobSpec& job);

// Values file: header y,re,im,label; 17 significant digits, so doubles
// round-trip losslessly.
void write_values_csv(const std::string& path, const ValueCloud& cloud);
ValueCloud read_values_csv(const std::string& path);

// Stable JSON document for an analysis report (schema: 1).
std::string report_to_json(const AnalysisReport& report);

}  // namespace gperiod
