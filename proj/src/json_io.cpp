#include "diolab/json_io.hpp"

namespace diolab::json_io {

namespace {

std::string flag_str(measures::RatioFlag f) {
  switch (f) {
    case measures::RatioFlag::finite:
      return "finite";
    case measures::RatioFlag::zero_over_zero:
      return "zero_over_zero";
    case measures::RatioFlag::positive_over_zero:
      return "positive_over_zero";
    case measures::RatioFlag::skipped:
      return "skipped";
  }
  return "finite";
}

std::string status_str(measures::WindowStatus s) {
  switch (s) {
    case measures::WindowStatus::found:
      return "found";
    case measures::WindowStatus::overshoot:
      return "overshoot";
    case measures::WindowStatus::exhausted:
      return "exhausted";
  }
  return "found";
}

}  // namespace

Json rat_json(const Rat& r) {
  return Json{{"num", rat_num(r).str()}, {"den", rat_den(r).str()}};
}

Json value_json(const Value& v) {
  if (v.exact()) return rat_json(v.rat());
  return Json{{"value", v.approx()}, {"abs_error", v.abs_error()}};
}

Json arcs_json(const torus_sets::ArcUnion& u) {
  Json arr = Json::array();
  for (const auto& [lo, hi] : u.arcs()) arr.push_back(Json::array({rat_json(lo), rat_json(hi)}));
  return arr;
}

Json series_json(const series::SeriesReport& rep) {
  Json cuts = Json::object();
  for (const auto& [name, v] : rep.cutoffs) cuts[name] = v;
  return Json{{"cutoffs", cuts},
              {"partial_sum", value_json(rep.partial_sum)},
              {"term_count", rep.term_count},
              {"last_block_sum", value_json(rep.last_block_sum)},
              {"verdict_hint", series::to_string(rep.verdict_hint)}};
}

Json capital_psi_json(const series::CapitalPsiReport& rep) {
  Json j{{"value", value_json(rep.value)}};
  j["sum_tail_bound"] =
      rep.sum_tail_bound ? value_json(*rep.sum_tail_bound) : Json(nullptr);
  j["value_upper"] = rep.value_upper ? value_json(*rep.value_upper) : Json(nullptr);
  j["tail_unbounded"] = rep.tail_unbounded;
  return j;
}

Json mc_json(const montecarlo::MCReport& rep) {
  Json params = Json::object();
  for (const auto& [k, v] : rep.parameters) params[k] = v;
  return Json{{"samples", rep.samples}, {"hits", rep.hits},
              {"fraction", rep.fraction}, {"stderr", rep.std_error},
              {"seed", rep.seed},         {"parameters", params}};
}

Json overlap_json(const measures::OverlapReport& rep) {
  Json j{{"k", rep.k},
         {"l", rep.l},
         {"lhs", rat_json(rep.lhs)},
         {"rhs", rat_json(rep.rhs)},
         {"indicator", rep.indicator},
         {"M", rat_json(rep.M)}};
  j["ratio"] = rep.ratio ? rat_json(*rep.ratio) : Json(nullptr);
  j["flag"] = flag_str(rep.flag);
  j["skip_reason"] = rep.skip_reason;
  return j;
}

Json window_json(const measures::WindowResult& res) {
  return Json{{"status", status_str(res.status)},
              {"Y", res.Y},
              {"sum", rat_json(res.sum)}};
}

Json solution_json(const montecarlo::Solution& s) {
  return Json{{"p", s.p.c},
              {"q", s.q.c},
              {"residual", rat_json(s.residual)},
              {"coprime_ok", s.coprime_ok}};
}

Json counterexample_json(const montecarlo::CounterexampleReport& rep) {
  return Json{{"sum", rat_json(rep.sum)},
              {"union_exact", rat_json(rep.union_exact)},
              {"union_mc", mc_json(rep.union_mc)}};
}

Json report(const std::string& config_echo, Json result) {
  return Json{{"format_version", kFormatVersion},
              {"config", config_echo},
              {"result", std::move(result)}};
}

std::string to_text(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace diolab::json_io
