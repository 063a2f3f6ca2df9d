#include "qse/targets/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qse {
namespace {

using cd = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> closed_range(double lo, double hi, int steps) {
  if (steps <= 1) return {lo};
  std::vector<double> v(steps);
  for (int i = 0; i < steps; ++i) v[i] = lo + (hi - lo) * double(i) / double(steps - 1);
  return v;
}

std::vector<double> angles(int steps) {
  std::vector<double> v(std::max(steps, 1));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = kTwoPi * double(i) / double(v.size());
  return v;
}

std::size_t expected_arity(TargetKind kind) {
  switch (kind) {
    case TargetKind::Cat: return 3;
    case TargetKind::SqueezedCat: return 5;
    case TargetKind::Zombie: return 2;
    case TargetKind::ON: return 2;
    case TargetKind::CubicPhase: return 2;
  }
  return 0;
}

// An odd cat at alpha = 0 is the zero vector.
bool degenerate(TargetKind kind, const TargetParams& p) {
  if (kind != TargetKind::Cat && kind != TargetKind::SqueezedCat) return false;
  return std::abs(p.alpha) < 1e-9 && std::abs(1.0 + std::polar(1.0, p.theta)) < 1e-9;
}

}  // namespace

GridSpec GridSpec::defaults(TargetKind kind) {
  switch (kind) {
    case TargetKind::Cat: return {kind, {50, 25, 25}};
    case TargetKind::SqueezedCat: return {kind, {8, 8, 4, 8, 8}};
    case TargetKind::Zombie: return {kind, {40, 36}};
    case TargetKind::ON: return {kind, {10, 101}};
    case TargetKind::CubicPhase: return {kind, {26, 29}};
  }
  return {kind, {}};
}

std::size_t GridSpec::point_count() const {
  std::size_t total = 1;
  for (int s : steps) total *= static_cast<std::size_t>(std::max(s, 1));
  return total;
}

std::string GridSpec::key() const {
  std::ostringstream os;
  os << to_string(kind);
  for (int s : steps) os << "-" << s;
  return os.str();
}

TargetGrid TargetGrid::build(const GridSpec& spec) {
  return build(TargetFamily::search(spec.kind), spec);
}

TargetGrid TargetGrid::build(const TargetFamily& family, const GridSpec& spec) {
  if (family.kind != spec.kind) throw ShapeError("grid spec kind does not match family");
  if (spec.steps.size() != expected_arity(spec.kind)) {
    throw ShapeError("grid spec for " + to_string(spec.kind) + " needs " +
                     std::to_string(expected_arity(spec.kind)) + " resolutions");
  }
  for (int s : spec.steps) {
    if (s < 1) throw DomainError("grid resolutions must be >= 1");
  }
  TargetGrid grid{family, spec, {}};
  const auto& s = spec.steps;
  auto push = [&](const TargetParams& p) {
    if (!degenerate(spec.kind, p)) grid.points.push_back(p);
  };
  switch (spec.kind) {
    case TargetKind::Cat:
      for (double mag : closed_range(family.min_alpha, family.max_alpha, s[0]))
        for (double arg : angles(s[1]))
          for (double theta : angles(s[2])) push(TargetParams::cat(std::polar(mag, arg), theta));
      break;
    case TargetKind::SqueezedCat:
      for (double mag : closed_range(family.min_alpha, family.max_alpha, s[0]))
        for (double arg : angles(s[1]))
          for (double theta : angles(s[2]))
            for (double r : closed_range(0.0, family.max_squeezing, s[3]))
              for (double phi : angles(s[4]))
                push(TargetParams::squeezed_cat(std::polar(mag, arg), theta, std::polar(r, phi)));
      break;
    case TargetKind::Zombie:
      for (double mag : closed_range(family.min_alpha, family.max_alpha, s[0]))
        for (double arg : angles(s[1])) push(TargetParams::zombie(std::polar(mag, arg)));
      break;
    case TargetKind::ON:
      for (int n = family.min_n; n <= family.max_n; ++n)
        for (double delta : closed_range(family.min_delta, family.max_delta, s[1]))
          push(TargetParams::on(n, delta));
      break;
    case TargetKind::CubicPhase:
      for (double gamma : closed_range(0.0, family.max_gamma, s[0]))
        for (double z : closed_range(family.min_cubic_z, family.max_cubic_z, s[1]))
          push(TargetParams::cubic_phase(gamma, z));
      break;
  }
  return grid;
}

TargetGrid TargetGrid::single(const TargetFamily& family, const TargetParams& params) {
  family.check(params);
  TargetGrid grid{family, GridSpec{family.kind, {}}, {params}};
  return grid;
}

}  // namespace qse
