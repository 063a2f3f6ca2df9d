#pragma once

#include <filesystem>
#include <string>

#include "qse/fock/state.hpp"
#include "qse/search/genome.hpp"

namespace qse {

inline constexpr int kStateFormatVersion = 1;

/// {"format": "qse-state", "version": 1, "truncation": N,
///  "amplitudes": [[re, im], ...]} with N + 1 pairs. Normalized on load.
std::string state_to_json(const SingleModeState& state);
/// Throws ParseError with the line and byte offset of the problem.
SingleModeState state_from_json(const std::string& text);

void save_state(const std::filesystem::path& path, const SingleModeState& state);
SingleModeState load_state(const std::filesystem::path& path);

/// {"categorical": [...], "continuous": [...]}
std::string genome_to_json(const Genome& g);
Genome genome_from_json(const std::string& text);
Genome load_genome(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace qse
