#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qse/search/genome.hpp"

namespace qse {

inline constexpr int kReportSchemaVersion = 1;

struct ReportEntry {
  Genome genome;
  double fitness = 0.0;
  std::string experiment;  // human-readable decoded experiment
  std::string match;       // best target parameters, when known

  friend bool operator==(const ReportEntry&, const ReportEntry&) = default;
};

/// Outcome of one search stage for one target category.
struct StageReport {
  int schema = kReportSchemaVersion;
  int stage = 0;
  std::string category;
  std::uint64_t seed = 0;
  bool surrogate = true;
  std::string config_key;
  std::vector<int> truncations;
  long evaluations = 0;
  double wall_time_s = 0.0;
  std::vector<double> generation_best;
  /// Sorted by descending fitness.
  std::vector<ReportEntry> best;
  /// Stage 3 only: best genome's fidelity after continuous refinement of the
  /// grid match, or -1.
  double refined_fidelity = -1.0;
  std::string refined_match;

  /// Equality on everything except wall time.
  bool same_result(const StageReport& other) const;
};

std::string to_json_line(const StageReport& r);
/// Throws ParseError with the given line number.
StageReport from_json_line(const std::string& line, std::size_t line_number = 1);

void append_report(const std::filesystem::path& path, const StageReport& r);
/// Every report in a JSON-lines file; blank lines are skipped.
std::vector<StageReport> read_reports(const std::filesystem::path& path);

}  // namespace qse
