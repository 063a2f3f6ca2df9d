#include "qse/cli/state_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qse {
namespace {

using nlohmann::json;

// 1-based line and 0-based column of a byte position.
std::pair<std::size_t, std::size_t> locate(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  const auto begin = text.begin();
  const std::size_t line = 1 + static_cast<std::size_t>(std::count(begin, begin + static_cast<std::ptrdiff_t>(byte), '\n'));
  const std::size_t last_nl = text.rfind('\n', byte == 0 ? 0 : byte - 1);
  const std::size_t column = (last_nl == std::string::npos || byte == 0) ? byte : byte - last_nl - 1;
  return {line, column};
}

json parse_located(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // The reported byte is one past the offending character.
    const auto [line, column] = locate(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError(what + ": malformed JSON", line, column);
  }
}

[[noreturn]] void fail(const std::string& what) { throw ParseError(what, 1, 0); }

}  // namespace

std::string state_to_json(const SingleModeState& state) {
  json amps = json::array();
  for (Eigen::Index n = 0; n < state.amps().size(); ++n) amps.push_back({state.amps()(n).real(), state.amps()(n).imag()});
  const json j = {{"format", "qse-state"}, {"version", kStateFormatVersion}, {"truncation", state.truncation()},
                  {"amplitudes", amps}};
  return j.dump(1);
}

SingleModeState state_from_json(const std::string& text) {
  const json j = parse_located(text, "state file");
  if (!j.is_object()) fail("state file: expected a JSON object");
  if (j.value("format", std::string{}) != "qse-state") fail("state file: missing format \"qse-state\"");
  if (!j.contains("version") || !j["version"].is_number_integer() || j["version"].get<int>() != kStateFormatVersion)
    fail("state file: unsupported version");
  if (!j.contains("truncation") || !j["truncation"].is_number_integer()) fail("state file: missing truncation");
  const int truncation = j["truncation"].get<int>();
  if (truncation < 0) fail("state file: negative truncation");
  if (!j.contains("amplitudes") || !j["amplitudes"].is_array()) fail("state file: missing amplitudes array");
  const auto& amps = j["amplitudes"];
  if (amps.size() != static_cast<std::size_t>(truncation) + 1) fail("state file: expected truncation + 1 amplitudes");
  CVector<double> v(truncation + 1);
  for (int n = 0; n <= truncation; ++n) {
    const auto& a = amps[static_cast<std::size_t>(n)];
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
      fail("state file: amplitude " + std::to_string(n) + " is not a [re, im] pair");
    v(n) = {a[0].get<double>(), a[1].get<double>()};
  }
  try {
    return SingleModeState(std::move(v));
  } catch (const Error& e) {
    fail(std::string("state file: ") + e.what());
  }
}

void save_state(const std::filesystem::path& path, const SingleModeState& state) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write state file " + path.string());
  out << state_to_json(state) << "\n";
}

SingleModeState load_state(const std::filesystem::path& path) { return state_from_json(read_text_file(path)); }

std::string genome_to_json(const Genome& g) {
  return json{{"categorical", g.categorical}, {"continuous", g.continuous}}.dump();
}

Genome genome_from_json(const std::string& text) {
  const json j = parse_located(text, "genome file");
  try {
    Genome g;
    g.categorical = j.at("categorical").get<std::vector<int>>();
    g.continuous = j.at("continuous").get<std::vector<double>>();
    return g;
  } catch (const json::exception&) {
    fail("genome file: expected integer \"categorical\" and real \"continuous\" arrays");
  }
}

Genome load_genome(const std::filesystem::path& path) { return genome_from_json(read_text_file(path)); }

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace qse
