#include "nibble/schedule.hpp"

#include <algorithm>
#include <cmath>

namespace nibble {

namespace {

const double kHalfDecay = std::exp(-0.5);

// Refuse schedules whose horizon would not fit comfortably in memory.
constexpr double kMaxRounds = 1e7;

}  // namespace

double ratio_step() { return kHalfDecay / 16.0; }

double default_psi(std::uint64_t delta) {
  return 3.0 * std::log(static_cast<double>(std::max<std::uint64_t>(delta, 2)));
}

ScheduleParams ScheduleParams::with_k(std::uint64_t delta, double k) {
  ScheduleParams p;
  p.delta = delta;
  p.k = k;
  p.psi = default_psi(delta);
  return p;
}

ScheduleParams ScheduleParams::with_colors(std::uint64_t delta, std::uint64_t colors) {
  ScheduleParams p;
  p.delta = delta;
  p.colors = colors;
  p.k = colors == 0 ? 0.0 : static_cast<double>(delta) / static_cast<double>(colors);
  p.psi = default_psi(delta);
  return p;
}

std::uint64_t ScheduleParams::num_colors() const {
  if (colors) return *colors;
  if (!(k > 0.0)) return 0;
  // Tolerate k = delta / c rounding to just above the exact quotient.
  return static_cast<std::uint64_t>(std::floor(static_cast<double>(delta) / k + 1e-9));
}

double ScheduleParams::initial_palette() const {
  if (colors) return static_cast<double>(*colors);
  return static_cast<double>(delta) / k;
}

double ScheduleParams::initial_ratio() const { return static_cast<double>(delta) / initial_palette(); }

void ScheduleParams::validate() const {
  if (!colors && !(k > 0.0 && std::isfinite(k))) throw ScheduleError("k must be positive and finite");
  if (num_colors() < 1) throw ScheduleError("the number of colors floor(delta / k) must be at least 1");
  if (!(psi > 0.0) || !std::isfinite(psi)) throw ScheduleError("psi must be positive");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ScheduleError("beta must be positive");
  if (round_bound(initial_ratio()) > kMaxRounds) throw ScheduleError("k too large: round horizon exceeds 1e7");
}

double round_bound(double k) { return 16.0 * std::exp(0.5) * k; }

Schedule build_schedule(const ScheduleParams& params) {
  params.validate();
  Schedule sched;
  sched.params = params;

  double d = static_cast<double>(params.delta);
  double s = params.initial_palette();
  double e = 0.0;
  const double step = ratio_step();

  auto push = [&] {
    sched.d.push_back(d);
    sched.s.push_back(s);
    sched.e.push_back(e);
    sched.p.push_back(d > 0.0 ? std::min(1.0, 1.0 / (4.0 * d)) : 1.0);
  };

  push();
  sched.degenerate = d / s < kStopRatio;
  while (d / s >= kStopRatio) {
    const double next_e = 3.0 * e + params.beta * std::sqrt(params.psi / s);
    const double next_d = d * (1.0 - step * (s / d)) * kHalfDecay;
    s *= kHalfDecay;
    d = next_d;
    e = next_e;
    push();
  }
  sched.t1 = sched.d.size() - 1;
  return sched;
}

double error_budget(const Schedule& schedule, std::size_t t) {
  if (t > schedule.t1) {
    throw std::out_of_range("round " + std::to_string(t) + " beyond horizon t1 = " + std::to_string(schedule.t1));
  }
  return schedule.e[t];
}

double coarse_error_envelope(const ScheduleParams& params, std::size_t t) {
  const double k = params.initial_ratio();
  const double inner = k * std::exp(8.0 * std::exp(0.5) * k) * params.psi / static_cast<double>(params.delta);
  return std::pow(3.0, static_cast<double>(t)) * std::sqrt(inner);
}

double coarse_final_palette(const ScheduleParams& params) {
  return params.initial_palette() * std::exp(-8.0 * std::exp(0.5) * params.initial_ratio());
}

FeasibilityReport feasibility_report(const ScheduleParams& params, FeasibilityMargins margins) {
  const Schedule sched = build_schedule(params);
  FeasibilityReport r;
  r.params = params;
  r.margins = margins;
  r.t1 = sched.t1;
  r.s_t1 = sched.s.back();
  r.d_t1 = sched.d.back();
  r.e_t1 = sched.e.back();
  r.coarse_e_t1 = coarse_error_envelope(params, sched.t1);
  r.trivial = sched.degenerate;
  r.palette_ok = r.trivial || r.s_t1 >= margins.s_over_psi * params.psi;
  r.error_ok = r.trivial || r.e_t1 <= margins.e_max;
  r.feasible = r.palette_ok && r.error_ok;
  return r;
}

FrontierReport feasibility_frontier(double divisor, std::uint64_t delta_min, std::uint64_t delta_max,
                                    double grid_ratio, FeasibilityMargins margins) {
  if (!(divisor > 0.0)) throw ScheduleError("divisor must be positive");
  if (delta_min < 2 || delta_max < delta_min) throw ScheduleError("need 2 <= delta_min <= delta_max");
  if (!(grid_ratio > 1.0)) throw ScheduleError("grid_ratio must exceed 1");

  FrontierReport report;
  report.divisor = divisor;
  report.margins = margins;

  auto k_of = [divisor](std::uint64_t delta) { return std::log(static_cast<double>(delta)) / divisor; };

  // The block runs iff ln(delta) / divisor >= 1/8; step over the rounding.
  auto onset = static_cast<std::uint64_t>(std::floor(std::exp(divisor * kStopRatio)));
  onset = std::max<std::uint64_t>(onset, 2);
  while (onset > 2 && k_of(onset - 1) >= kStopRatio) --onset;
  while (k_of(onset) < kStopRatio) ++onset;
  report.first_nontrivial_delta = onset;

  std::vector<std::uint64_t> grid;
  for (double x = static_cast<double>(delta_min); x <= static_cast<double>(delta_max); x *= grid_ratio) {
    grid.push_back(static_cast<std::uint64_t>(std::llround(x)));
  }
  grid.push_back(delta_max);
  if (onset >= delta_min && onset <= delta_max) grid.push_back(onset);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  for (std::uint64_t delta : grid) {
    ScheduleParams params = ScheduleParams::with_k(delta, k_of(delta));
    if (params.num_colors() < 1) continue;
    report.points.push_back(feasibility_report(params, margins));
  }

  for (auto it = report.points.rbegin(); it != report.points.rend(); ++it) {
    if (it->trivial) break;
    if (!it->feasible) break;
    report.threshold_delta = it->params.delta;
  }
  for (const auto& pt : report.points) {
    if (!pt.trivial && !pt.feasible) ++report.infeasible_nontrivial;
  }
  return report;
}

}  // namespace nibble
