#pragma once

#include <string>
#include <vector>

#include "bwsim/metrics.hpp"

namespace bwsim {

// Deterministic SVG renderers. Both operate on the CSV row types so plots
// can be rebuilt from a run directory without re-simulating.

// One panel per core showing the per-period miss trace.
std::string render_trace_svg(const std::vector<PeriodSample>& trace);

// Per-task frame processing time series, one colored polyline each.
// Returns an empty string when there are no frames to draw.
std::string render_frames_svg(const std::vector<FrameRecord>& frames);

std::vector<PeriodSample> parse_trace_csv(const std::string& text);
std::vector<FrameRecord> parse_frames_csv(const std::string& text);

// Render trace.svg / frames.svg from the CSVs in run_dir. Missing trace.csv
// is an error; an empty frame table skips frames.svg with a warning on
// stderr. Returns the list of files written.
std::vector<std::string> plot_run_dir(const std::string& run_dir);

}  // namespace bwsim
