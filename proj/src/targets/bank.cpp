#include <cmath>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "qse/fock/measure.hpp"
#include "qse/targets/grid.hpp"

namespace qse {
namespace {

constexpr const char* kBankMagic = "QSEBANK2";
constexpr int kBankVersion = 1;

BankRows build_rows(const TargetGrid& grid, int truncation) {
  BankRows rows(static_cast<Eigen::Index>(grid.points.size()), truncation + 1);
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    rows.row(static_cast<Eigen::Index>(i)) =
        make_target(grid.family, grid.points[i], truncation).amps().conjugate().transpose();
  }
  return rows;
}

nlohmann::json bank_key(const TargetGrid& grid, int truncation) {
  return {{"version", kBankVersion},
          {"kind", to_string(grid.family.kind)},
          {"grid", grid.spec.key()},
          {"points", grid.points.size()},
          {"truncation", truncation},
          {"min_alpha", grid.family.min_alpha},
          {"max_alpha", grid.family.max_alpha},
          {"max_delta", grid.family.max_delta},
          {"min_delta", grid.family.min_delta},
          {"min_cubic_z", grid.family.min_cubic_z}};
}

}  // namespace

TargetBank::TargetBank(TargetGrid grid, int truncation)
    : grid_(std::move(grid)), truncation_(truncation), conj_rows_(build_rows(grid_, truncation)) {
  if (grid_.points.empty()) throw ShapeError("target grid is empty");
}

TargetBank::TargetBank(TargetGrid grid, int truncation, BankRows rows)
    : grid_(std::move(grid)), truncation_(truncation), conj_rows_(std::move(rows)) {}

Eigen::VectorXd TargetBank::fidelities(const SingleModeState& state) const {
  CVector<double> v = CVector<double>::Zero(truncation_ + 1);
  const int common = std::min(state.dim(), truncation_ + 1);
  v.head(common) = state.amps().head(common);
  return (conj_rows_ * v).cwiseAbs2();
}

GridMatch TargetBank::best(const SingleModeState& state) const {
  const Eigen::VectorXd f = fidelities(state);
  Eigen::Index i = 0;
  const double m = f.maxCoeff(&i);
  return {std::min(m, 1.0), grid_.points[static_cast<std::size_t>(i)], static_cast<std::size_t>(i)};
}

GridMatch best_fidelity_over_grid(const SingleModeState& state, const TargetBank& bank) {
  return bank.best(state);
}

void TargetBank::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write target bank " + path.string());
  out << kBankMagic << "\n" << bank_key(grid_, truncation_).dump() << "\n";
  out.write(reinterpret_cast<const char*>(conj_rows_.data()),
            static_cast<std::streamsize>(conj_rows_.size() * sizeof(std::complex<double>)));
}

std::shared_ptr<const TargetBank> TargetBank::load(const std::filesystem::path& path,
                                                   const TargetGrid& grid, int truncation) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return nullptr;
  std::string magic;
  std::string header;
  if (!std::getline(in, magic) || magic != kBankMagic) return nullptr;
  if (!std::getline(in, header)) return nullptr;
  nlohmann::json key = nlohmann::json::parse(header, nullptr, false);
  if (key.is_discarded() || key != bank_key(grid, truncation)) return nullptr;
  BankRows rows(static_cast<Eigen::Index>(grid.points.size()), truncation + 1);
  in.read(reinterpret_cast<char*>(rows.data()),
          static_cast<std::streamsize>(rows.size() * sizeof(std::complex<double>)));
  if (!in) return nullptr;
  return std::shared_ptr<const TargetBank>(new TargetBank(grid, truncation, std::move(rows)));
}

std::shared_ptr<const TargetBank> cached_bank(const TargetGrid& grid, int truncation,
                                              const std::filesystem::path& cache_dir) {
  if (cache_dir.empty()) return std::make_shared<const TargetBank>(grid, truncation);
  const auto path = cache_dir / (grid.spec.key() + "-t" + std::to_string(truncation) + ".bank");
  if (auto bank = TargetBank::load(path, grid, truncation)) return bank;
  auto bank = std::make_shared<const TargetBank>(grid, truncation);
  std::filesystem::create_directories(cache_dir);
  bank->save(path);
  return bank;
}

namespace {

struct Coordinate {
  double value;
  double lo;
  double hi;
  bool periodic;
  double step;
};

std::vector<Coordinate> coordinates(const TargetFamily& f, const TargetParams& p,
                                    const GridSpec& spec) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  auto spacing = [&](std::size_t i, double range) {
    const int s = i < spec.steps.size() ? spec.steps[i] : 10;
    return range / std::max(1, s - 1);
  };
  auto angle_step = [&](std::size_t i) {
    const int s = i < spec.steps.size() ? spec.steps[i] : 10;
    return two_pi / std::max(1, s);
  };
  switch (f.kind) {
    case TargetKind::Cat:
      return {{std::abs(p.alpha), 0.0, f.max_alpha, false, spacing(0, f.max_alpha)},
              {std::arg(p.alpha), 0.0, 0.0, true, angle_step(1)},
              {p.theta, 0.0, 0.0, true, angle_step(2)}};
    case TargetKind::SqueezedCat:
      return {{std::abs(p.alpha), 0.0, f.max_alpha, false, spacing(0, f.max_alpha)},
              {std::arg(p.alpha), 0.0, 0.0, true, angle_step(1)},
              {p.theta, 0.0, 0.0, true, angle_step(2)},
              {std::abs(p.z), 0.0, f.max_squeezing, false, spacing(3, f.max_squeezing)},
              {std::arg(p.z), 0.0, 0.0, true, angle_step(4)}};
    case TargetKind::Zombie:
      return {{std::abs(p.alpha), 0.0, f.max_alpha, false, spacing(0, f.max_alpha)},
              {std::arg(p.alpha), 0.0, 0.0, true, angle_step(1)}};
    case TargetKind::ON:
      return {{p.delta, f.min_delta, f.max_delta, false, spacing(1, f.max_delta - f.min_delta)}};
    case TargetKind::CubicPhase:
      return {{p.gamma, 0.0, f.max_gamma, false, spacing(0, f.max_gamma)},
              {p.z.real(), f.min_cubic_z, f.max_cubic_z, false,
               spacing(1, f.max_cubic_z - f.min_cubic_z)}};
  }
  return {};
}

TargetParams from_coordinates(TargetKind kind, const TargetParams& base,
                              const std::vector<Coordinate>& c) {
  TargetParams p = base;
  switch (kind) {
    case TargetKind::Cat:
      p.alpha = std::polar(c[0].value, c[1].value);
      p.theta = c[2].value;
      break;
    case TargetKind::SqueezedCat:
      p.alpha = std::polar(c[0].value, c[1].value);
      p.theta = c[2].value;
      p.z = std::polar(c[3].value, c[4].value);
      break;
    case TargetKind::Zombie: p.alpha = std::polar(c[0].value, c[1].value); break;
    case TargetKind::ON: p.delta = c[0].value; break;
    case TargetKind::CubicPhase:
      p.gamma = c[0].value;
      p.z = c[1].value;
      break;
  }
  return p;
}

}  // namespace

GridMatch polish_match(const SingleModeState& state, const TargetFamily& family,
                       const GridMatch& start, const GridSpec& spec, int iterations) {
  auto coords = coordinates(family, start.params, spec);
  auto score = [&](const std::vector<Coordinate>& c) {
    try {
      return fidelity(state, make_target(family, from_coordinates(family.kind, start.params, c),
                                         state.truncation()));
    } catch (const DomainError&) {
      return -1.0;
    }
  };
  double best = std::max(start.fidelity, score(coords));
  for (int it = 0; it < iterations; ++it) {
    for (auto& coord : coords) {
      bool improved = false;
      for (double sign : {1.0, -1.0}) {
        const double saved = coord.value;
        double trial = saved + sign * coord.step;
        if (!coord.periodic) trial = std::clamp(trial, coord.lo, coord.hi);
        coord.value = trial;
        const double f = score(coords);
        if (f > best) {
          best = f;
          improved = true;
          break;
        }
        coord.value = saved;
      }
      if (!improved) coord.step *= 0.5;
    }
  }
  return {best, from_coordinates(family.kind, start.params, coords), start.index};
}

}  // namespace qse
