#pragma once

#include <string>
#include <vector>

#include "qse/fock/experiment.hpp"
#include "qse/targets/targets.hpp"

namespace qse {

/// A published experiment together with the target it was designed for.
struct PublishedDesign {
  std::string name;
  TargetKind kind;
  TargetParams target;
  Experiment experiment;
  double reported_fidelity;  // as published, in [0, 1]
  /// Target parameters exactly as printed when they differ in sign from the
  /// member the design actually reproduces (real delta / real z).
  std::optional<TargetParams> printed_target;
};

/// The five benchmark designs (cat, squeezed cat, zombie, ON, cubic phase).
const std::vector<PublishedDesign>& published_designs();

/// The heralded ON-state design: N (<8| (x) I) U_T |z>_12.
const PublishedDesign& published_on_design();

struct DesignCheck {
  std::string name;
  double fidelity = 0.0;
  double printed_fidelity = 0.0;  // against printed_target, if any
  double reported = 0.0;
  double threshold = 0.0;
  double herald_probability = 0.0;
  double leaked_norm = 0.0;
  bool passed = false;
};

/// Reported value minus one tenth of a percentage point.
double verification_threshold(const PublishedDesign& design);

DesignCheck check_design(const PublishedDesign& design, int truncation);

}  // namespace qse
