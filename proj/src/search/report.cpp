#include "qse/search/report.hpp"

#include <fstream>

#include <json.hpp>

namespace qse {
namespace {

using nlohmann::json;

}  // namespace

bool StageReport::same_result(const StageReport& o) const {
  return schema == o.schema && stage == o.stage && category == o.category && seed == o.seed &&
         surrogate == o.surrogate && config_key == o.config_key && truncations == o.truncations &&
         evaluations == o.evaluations && generation_best == o.generation_best && best == o.best &&
         refined_fidelity == o.refined_fidelity && refined_match == o.refined_match;
}

std::string to_json_line(const StageReport& r) {
  json best = json::array();
  for (const auto& e : r.best) {
    best.push_back({{"fitness", e.fitness},
                    {"categorical", e.genome.categorical},
                    {"continuous", e.genome.continuous},
                    {"experiment", e.experiment},
                    {"match", e.match}});
  }
  const json j = {{"schema", r.schema},
                  {"stage", r.stage},
                  {"category", r.category},
                  {"seed", r.seed},
                  {"surrogate", r.surrogate},
                  {"config_key", r.config_key},
                  {"truncations", r.truncations},
                  {"evaluations", r.evaluations},
                  {"wall_time_s", r.wall_time_s},
                  {"generation_best", r.generation_best},
                  {"refined_fidelity", r.refined_fidelity},
                  {"refined_match", r.refined_match},
                  {"best", best}};
  return j.dump();
}

StageReport from_json_line(const std::string& line, std::size_t line_number) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("report: ") + e.what(), line_number, e.byte);
  }
  try {
    StageReport r;
    r.schema = j.at("schema").get<int>();
    if (r.schema != kReportSchemaVersion) throw ParseError("unsupported report schema", line_number, 0);
    r.stage = j.at("stage").get<int>();
    r.category = j.at("category").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.surrogate = j.at("surrogate").get<bool>();
    r.config_key = j.at("config_key").get<std::string>();
    r.truncations = j.at("truncations").get<std::vector<int>>();
    r.evaluations = j.at("evaluations").get<long>();
    r.wall_time_s = j.at("wall_time_s").get<double>();
    r.generation_best = j.at("generation_best").get<std::vector<double>>();
    r.refined_fidelity = j.at("refined_fidelity").get<double>();
    r.refined_match = j.at("refined_match").get<std::string>();
    for (const auto& e : j.at("best")) {
      ReportEntry entry;
      entry.fitness = e.at("fitness").get<double>();
      entry.genome.categorical = e.at("categorical").get<std::vector<int>>();
      entry.genome.continuous = e.at("continuous").get<std::vector<double>>();
      entry.experiment = e.at("experiment").get<std::string>();
      entry.match = e.at("match").get<std::string>();
      r.best.push_back(std::move(entry));
    }
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("report: ") + e.what(), line_number, 0);
  }
}

void append_report(const std::filesystem::path& path, const StageReport& r) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error("cannot write report file " + path.string());
  out << to_json_line(r) << "\n";
}

std::vector<StageReport> read_reports(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read report file " + path.string());
  std::vector<StageReport> out;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(from_json_line(line, n));
  }
  return out;
}

}  // namespace qse
