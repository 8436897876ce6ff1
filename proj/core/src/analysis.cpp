#include "nibble/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace nibble {

AlphaInterval admissible_alpha(const VertexMeasurement& m, const RoundTargets& targets) {
  AlphaInterval out;

  // s_t(u) >= (1 - alpha) S  <=>  alpha >= 1 - s_t(u) / S.
  const double palette_target = targets.s * (1.0 - targets.e);
  if (palette_target > 0.0) out.lo = std::max(0.0, 1.0 - m.palette_size / palette_target);

  // d_t(u) <= f(alpha) D with f(alpha) = (1 - 2 alpha) / (1 - alpha), which
  // falls from 1 to 0 on [0, 1/2]; f(alpha) = r  <=>  alpha = (1 - r) / (2 - r).
  const double degree_target = targets.d * (1.0 + targets.e);
  if (m.average_degree <= 0.0) {
    out.hi = 0.5;
  } else if (degree_target <= 0.0) {
    out.hi = -1.0;
  } else {
    const double r = m.average_degree / degree_target;
    out.hi = r > 1.0 ? -1.0 : std::min(0.5, (1.0 - r) / (2.0 - r));
  }
  return out;
}

InvariantBounds bounds_at(const RoundTargets& targets, double alpha) {
  InvariantBounds b;
  b.palette_floor = (1.0 - alpha) * targets.s * (1.0 - targets.e);
  b.average_cap = (1.0 - 2.0 * alpha) / (1.0 - alpha) * targets.d * (1.0 + targets.e);
  b.max_cap = 2.0 * targets.d * (1.0 + targets.e);
  return b;
}

bool invariant_holds_at(const VertexMeasurement& m, const RoundTargets& targets, double alpha) {
  if (alpha < 0.0 || alpha > 0.5) return false;
  const InvariantBounds b = bounds_at(targets, alpha);
  return m.palette_size >= b.palette_floor && m.average_degree <= b.average_cap && m.max_degree <= b.max_cap;
}

InvariantWitness witness_for(Vertex u, const VertexMeasurement& m, const RoundTargets& targets) {
  InvariantWitness w;
  w.vertex = u;
  w.measured = m;
  const AlphaInterval interval = admissible_alpha(m, targets);
  const double at = std::clamp(interval.lo, 0.0, 0.5);
  w.bounds = bounds_at(targets, at);
  w.palette_ok = interval.lo <= 0.5;
  w.avg_ok = at <= interval.hi;
  w.max_ok = m.max_degree <= w.bounds.max_cap;
  if (!interval.empty() && w.max_ok) w.alpha = interval.lo;
  return w;
}

std::vector<InvariantWitness> check_assumption(const Graph& g, const ColoringState& state, const Schedule& schedule,
                                               std::size_t t) {
  if (t > schedule.t1) throw std::out_of_range("check_assumption: round beyond schedule horizon");
  const RoundTargets targets{schedule.s[t], schedule.d[t], schedule.e[t]};
  const ConflictDegrees degrees(g, state);
  std::vector<InvariantWitness> out;
  out.reserve(state.uncolored_count());
  for (Vertex u : state.uncolored()) {
    const VertexMeasurement m{static_cast<double>(state.palette_size(u)), degrees.average(state, u),
                              static_cast<double>(degrees.maximum(state, u))};
    out.push_back(witness_for(u, m, targets));
  }
  return out;
}

std::size_t count_failures(const std::vector<InvariantWitness>& witnesses) {
  return static_cast<std::size_t>(
      std::count_if(witnesses.begin(), witnesses.end(), [](const InvariantWitness& w) { return !w.ok(); }));
}

double removal_average_bound(double mu, double alpha, double q) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("removal_average_bound: need 0 <= alpha < 1");
  if (!(q > 1.0)) throw DomainError("removal_average_bound: need q > 1");
  if (alpha > 1.0 / q) throw DomainError("removal_average_bound: alpha exceeds 1/q");
  return mu * (1.0 - q * alpha) / (1.0 - alpha);
}

double addition_average(double mu, double alpha, double q) {
  if (!(alpha >= 0.0)) throw DomainError("addition_average: need alpha >= 0");
  if (!(q >= 0.0)) throw DomainError("addition_average: need q >= 0");
  return mu * (1.0 + q * alpha) / (1.0 + alpha);
}

double error_compose(double a, double e) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("error_compose: need 0 < a < 1");
  return -a * e / (1.0 - a);
}

}  // namespace nibble
