#include "nibble/trace.hpp"

#include "json_detail.hpp"

namespace nibble {

namespace detail {

Json to_json(const ScheduleParams& params) {
  Json j;
  j["delta"] = params.delta;
  j["k"] = params.initial_ratio();
  j["num_colors"] = params.num_colors();
  j["psi"] = params.psi;
  j["beta"] = params.beta;
  return j;
}

Json to_json(const Schedule& schedule) {
  Json j;
  j["type"] = "schedule";
  j["params"] = to_json(schedule.params);
  j["t1"] = schedule.t1;
  j["degenerate"] = schedule.degenerate;
  j["d"] = schedule.d;
  j["s"] = schedule.s;
  j["e"] = schedule.e;
  j["p"] = schedule.p;
  return j;
}

Json to_json(const FeasibilityReport& r) {
  Json j;
  j["type"] = "feasibility";
  j["params"] = to_json(r.params);
  j["margins"] = {{"s_over_psi", r.margins.s_over_psi}, {"e_max", r.margins.e_max}};
  j["t1"] = r.t1;
  j["s_t1"] = r.s_t1;
  j["d_t1"] = r.d_t1;
  j["e_t1"] = r.e_t1;
  j["coarse_e_t1"] = r.coarse_e_t1;
  j["trivial"] = r.trivial;
  j["palette_ok"] = r.palette_ok;
  j["error_ok"] = r.error_ok;
  j["feasible"] = r.feasible;
  return j;
}

Json to_json(const EstimatorReport& r) {
  Json j;
  j["type"] = "estimator";
  j["name"] = r.name;
  j["trials"] = r.trials;
  j["empirical_mean"] = r.empirical_mean;
  j["standard_error"] = r.standard_error;
  j["predicted"] = r.predicted;
  j["exact"] = r.exact ? Json(*r.exact) : Json(nullptr);
  j["tolerance_sigmas"] = r.tolerance_sigmas;
  j["window"] = {r.window_lo, r.window_hi};
  j["pass"] = r.pass;
  return j;
}

Json to_json(const RoundTrace& tr) {
  Json j;
  j["t"] = tr.t;
  j["predicted"] = {{"d", tr.predicted_d}, {"s", tr.predicted_s}, {"e", tr.predicted_e}, {"p", tr.activation_p}};
  j["measured"] = {{"uncolored", tr.measured.uncolored},
                   {"s_min", tr.measured.s_min},
                   {"s_max", tr.measured.s_max},
                   {"s_mean", tr.measured.s_mean},
                   {"d_mean", tr.measured.d_mean},
                   {"d_max", tr.measured.d_max}};
  j["counters"] = {{"assigned", tr.assigned_pairs},
                   {"removed_conflict", tr.removed_conflict},
                   {"removed_equalize", tr.removed_equalize},
                   {"newly_colored", tr.newly_colored},
                   {"removed_cleanup", tr.removed_cleanup},
                   {"palette_emptied", tr.palette_emptied}};
  if (tr.invariant_failures >= 0) j["invariant_failures"] = tr.invariant_failures;
  return j;
}

Json to_json(const InvariantWitness& w) {
  Json j;
  j["vertex"] = w.vertex;
  j["alpha"] = w.alpha ? Json(*w.alpha) : Json(nullptr);
  j["palette_ok"] = w.palette_ok;
  j["avg_ok"] = w.avg_ok;
  j["max_ok"] = w.max_ok;
  j["measured"] = {{"s", w.measured.palette_size}, {"d", w.measured.average_degree}, {"d_max", w.measured.max_degree}};
  j["bounds"] = {{"palette_floor", w.bounds.palette_floor},
                 {"average_cap", w.bounds.average_cap},
                 {"max_cap", w.bounds.max_cap}};
  return j;
}

}  // namespace detail

using detail::Json;

std::string schedule_json(const Schedule& schedule) { return detail::to_json(schedule).dump(); }

std::string feasibility_json(const FeasibilityReport& report) { return detail::to_json(report).dump(); }

std::string frontier_json(const FrontierReport& report) {
  Json j;
  j["type"] = "frontier";
  j["divisor"] = report.divisor;
  j["margins"] = {{"s_over_psi", report.margins.s_over_psi}, {"e_max", report.margins.e_max}};
  j["first_nontrivial_delta"] = report.first_nontrivial_delta;
  j["threshold_delta"] = report.threshold_delta ? Json(*report.threshold_delta) : Json(nullptr);
  j["infeasible_nontrivial"] = report.infeasible_nontrivial;
  Json points = Json::array();
  for (const auto& pt : report.points) {
    points.push_back({{"delta", pt.params.delta},
                      {"k", pt.params.k},
                      {"psi", pt.params.psi},
                      {"t1", pt.t1},
                      {"s_t1", pt.s_t1},
                      {"e_t1", pt.e_t1},
                      {"trivial", pt.trivial},
                      {"feasible", pt.feasible}});
  }
  j["points"] = std::move(points);
  return j.dump();
}

std::string round_json(const RoundTrace& trace, std::optional<std::size_t> trial) {
  Json j;
  j["type"] = "round";
  if (trial) j["trial"] = *trial;
  j.update(detail::to_json(trace));
  return j.dump();
}

std::string final_json(const FinalRecord& r) {
  Json j;
  j["type"] = "final";
  if (r.trial) j["trial"] = *r.trial;
  j["policy"] = to_string(r.policy);
  j["attempts_used"] = r.attempts_used;
  j["success"] = r.success;
  j["colors_used"] = r.colors_used;
  j["rounds_run"] = r.rounds_run;
  if (r.empty_palette) {
    j["empty_palette"] = {{"vertex", r.empty_palette->vertex}, {"round", r.empty_palette->round}};
  }
  j["conflicts_remaining"] = r.conflicts_remaining;
  return j.dump();
}

std::string estimator_json(const EstimatorReport& report) { return detail::to_json(report).dump(); }

std::string witnesses_json(std::size_t t, const std::vector<InvariantWitness>& witnesses,
                           std::optional<std::size_t> trial) {
  Json j;
  j["type"] = "witnesses";
  if (trial) j["trial"] = *trial;
  j["t"] = t;
  Json list = Json::array();
  for (const auto& w : witnesses) list.push_back(detail::to_json(w));
  j["witnesses"] = std::move(list);
  return j.dump();
}

std::string coloring_json(const Coloring& coloring) {
  Json j;
  j["num_colors_used"] = coloring.num_colors_used;
  Json colors = Json::array();
  for (Color c : coloring.colors) colors.push_back(c == kNoColor ? Json(nullptr) : Json(c));
  j["colors"] = std::move(colors);
  return j.dump();
}

}  // namespace nibble
