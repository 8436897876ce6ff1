#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nibble {

class ScheduleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Per-round decrease of the ratio d_t / s_t: e^{-1/2} / 16.
double ratio_step();

/// Loop condition of the repeat block: run while d_t / s_t >= 1/8.
inline constexpr double kStopRatio = 0.125;

/// 3 ln(max(delta, 2)).
double default_psi(std::uint64_t delta);

struct ScheduleParams {
  std::uint64_t delta = 0;
  double k = 1.0;
  double psi = 0.0;
  double beta = 1.0;
  /// When set, the palette size is fixed to this count and k = delta / colors.
  std::optional<std::uint64_t> colors;

  static ScheduleParams with_k(std::uint64_t delta, double k);
  static ScheduleParams with_colors(std::uint64_t delta, std::uint64_t colors);

  std::uint64_t num_colors() const;
  /// s_0: delta / k, or the fixed color count.
  double initial_palette() const;
  /// d_0 / s_0.
  double initial_ratio() const;

  void validate() const;
};

struct Schedule {
  ScheduleParams params;
  std::vector<double> d;
  std::vector<double> s;
  std::vector<double> e;
  /// Activation probability min(1, 1 / (4 d_t)).
  std::vector<double> p;
  /// Number of rounds of the repeat block; sequences hold t1 + 1 entries.
  std::size_t t1 = 0;
  /// True when d_0 / s_0 < 1/8 and the block never runs.
  bool degenerate = false;

  std::size_t rounds() const noexcept { return t1; }
};

Schedule build_schedule(const ScheduleParams& params);

/// e_t; throws std::out_of_range if t > t1.
double error_budget(const Schedule& schedule, std::size_t t);

/// 3^t sqrt(k psi exp(8 e^{1/2} k) / delta): the coarse error envelope with
/// the worst-case s_{t1} substituted at every step. Comparison only.
double coarse_error_envelope(const ScheduleParams& params, std::size_t t);

/// (delta / k) exp(-8 e^{1/2} k): s_t evaluated at the real-valued horizon
/// t = 16 e^{1/2} k.
double coarse_final_palette(const ScheduleParams& params);

/// 16 e^{1/2} k, the round bound of the repeat block.
double round_bound(double k);

struct FeasibilityMargins {
  /// Require s_{t1} >= s_over_psi * psi.
  double s_over_psi = 10.0;
  /// Require e_{t1} <= e_max.
  double e_max = 0.1;
};

struct FeasibilityReport {
  ScheduleParams params;
  FeasibilityMargins margins;
  std::size_t t1 = 0;
  double s_t1 = 0.0;
  double d_t1 = 0.0;
  double e_t1 = 0.0;
  double coarse_e_t1 = 0.0;
  bool trivial = false;
  bool palette_ok = false;
  bool error_ok = false;
  bool feasible = false;
};

FeasibilityReport feasibility_report(const ScheduleParams& params, FeasibilityMargins margins = {});

/// Scan of k = ln(delta) / divisor over a geometric grid of delta values.
struct FrontierReport {
  double divisor = 67.0;
  FeasibilityMargins margins;
  std::vector<FeasibilityReport> points;
  /// Smallest delta whose repeat block runs at least one round.
  std::uint64_t first_nontrivial_delta = 0;
  /// Smallest scanned nontrivial delta from which every larger scanned delta
  /// is feasible; empty if the largest scanned delta is infeasible.
  std::optional<std::uint64_t> threshold_delta;
  std::size_t infeasible_nontrivial = 0;
};

FrontierReport feasibility_frontier(double divisor, std::uint64_t delta_min, std::uint64_t delta_max,
                                    double grid_ratio, FeasibilityMargins margins = {});

}  // namespace nibble
