#pragma once

#include <string>
#include <vector>

#include "delta/harness/pipeline.hpp"

namespace delta::harness {

enum class ReportFormat { TableText, Csv, Json };

ReportFormat report_format_from_name(const std::string& name);  // table|csv|json

// Renders aggregate rows with the benchmark-table column set: per-track
// success rates, mean plan lengths with the ground-truth column, mean times,
// and mean expanded nodes. "x" marks a metric with no successful trial.
// Rows keep their order; output is byte-stable. Times are replaced by "-"
// when include_times is unset (replay-mode reports must not embed wall
// clocks).
std::string emit_report(const std::vector<Aggregate>& rows, ReportFormat format,
                        bool include_times);

}  // namespace delta::harness
