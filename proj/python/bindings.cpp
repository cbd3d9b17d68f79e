#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "diolab/config.hpp"
#include "diolab/lemmas.hpp"
#include "diolab/measures.hpp"
#include "diolab/montecarlo.hpp"
#include "diolab/run.hpp"
#include "diolab/series.hpp"
#include "diolab/torus_sets.hpp"
#include "diolab/value.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace pybind11::literals;
using namespace diolab;
using psi::PsiSpec;
using torus_sets::ApproxSet;
using torus_sets::SetMode;

namespace {

/// ints, fractions.Fraction, and "a/b" strings all stringify to the form the
/// strict reader takes; floats do not, which keeps the boundary exact.
Rat rat_in(py::handle h) {
  return config::to_rat(py::str(h).cast<std::string>());
}

py::object fraction(const Rat& r) {
  static py::object Fraction = py::module_::import("fractions").attr("Fraction");
  return Fraction(rat_to_string(r));
}

py::object value_out(const Value& v) {
  if (v.exact()) return fraction(v.rat());
  py::dict d;
  d["value"] = v.approx();
  d["abs_error"] = v.abs_error();
  return d;
}

IntVec vec_in(const std::vector<std::int64_t>& comps) { return IntVec{comps}; }

SetMode mode_in(const std::string& text) {
  if (text == "plain") return SetMode::plain;
  if (text == "coprime") return SetMode::coprime;
  if (text == "filtered") return SetMode::filtered;
  throw py::value_error("mode must be 'plain', 'coprime', or 'filtered'");
}

arith::PhiMode phi_mode_in(const std::string& text) {
  if (text == "joint") return arith::PhiMode::joint;
  if (text == "componentwise") return arith::PhiMode::componentwise;
  throw py::value_error("phi_mode must be 'joint' or 'componentwise'");
}

std::map<std::int64_t, Rat> table_in(const py::dict& values) {
  std::map<std::int64_t, Rat> out;
  for (auto item : values)
    out[item.first.cast<std::int64_t>()] = rat_in(item.second);
  return out;
}

py::dict series_out(const series::SeriesReport& rep) {
  py::dict d;
  py::dict cutoffs;
  for (const auto& [key, val] : rep.cutoffs) cutoffs[py::str(key)] = val;
  d["cutoffs"] = cutoffs;
  d["partial_sum"] = value_out(rep.partial_sum);
  d["term_count"] = rep.term_count;
  d["last_block_sum"] = value_out(rep.last_block_sum);
  d["verdict_hint"] = series::to_string(rep.verdict_hint);
  return d;
}

py::dict mc_out(const montecarlo::MCReport& rep) {
  py::dict d;
  d["samples"] = rep.samples;
  d["hits"] = rep.hits;
  d["fraction"] = rep.fraction;
  d["stderr"] = rep.std_error;
  d["seed"] = rep.seed;
  py::dict params;
  for (const auto& [key, val] : rep.parameters) params[py::str(key)] = val;
  d["parameters"] = params;
  return d;
}

py::dict overlap_out(const measures::OverlapReport& rep) {
  py::dict d;
  d["k"] = rep.k;
  d["l"] = rep.l;
  d["lhs"] = fraction(rep.lhs);
  d["rhs"] = fraction(rep.rhs);
  d["indicator"] = rep.indicator;
  d["M"] = fraction(rep.M);
  d["ratio"] = rep.ratio ? fraction(*rep.ratio) : py::object(py::none());
  switch (rep.flag) {
    case measures::RatioFlag::finite: d["flag"] = "finite"; break;
    case measures::RatioFlag::zero_over_zero: d["flag"] = "zero_over_zero"; break;
    case measures::RatioFlag::positive_over_zero: d["flag"] = "positive_over_zero"; break;
    case measures::RatioFlag::skipped: d["flag"] = "skipped"; break;
  }
  d["skip_reason"] = rep.skip_reason;
  return d;
}

py::dict solution_out(const montecarlo::Solution& s) {
  py::dict d;
  d["p"] = s.p.c;
  d["q"] = s.q.c;
  d["residual"] = fraction(s.residual);
  d["coprime_ok"] = s.coprime_ok;
  return d;
}

montecarlo::RatMatrix matrix_in(const std::vector<std::vector<py::object>>& rows) {
  if (rows.empty()) throw py::value_error("x needs at least one row");
  int n = static_cast<int>(rows.size());
  int m = static_cast<int>(rows[0].size());
  montecarlo::RatMatrix x(n, m);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != m)
      throw py::value_error("x rows must share one length");
    for (int j = 0; j < m; ++j)
      x.at(i, j) = rat_in(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  }
  return x;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() =
      "Exact measures, divergence diagnostics, and seeded Monte Carlo for "
      "coprimality-filtered approximation sets on the torus.";

  py::class_<PsiSpec>(mod, "PsiSpec",
                      "Symbolic approximating function on the nonnegative orthant.")
      .def_static(
          "power_law",
          [](py::handle c, py::handle tau) {
            return PsiSpec::power_law(rat_in(c), rat_in(tau));
          },
          "c"_a, "tau"_a, "psi(q) = c |q|^-tau.")
      .def_static(
          "radial_table",
          [](const py::dict& values) { return PsiSpec::radial_table(table_in(values)); },
          "values"_a, "Finite table keyed by |q|; zero off the table.")
      .def_static(
          "explicit_table",
          [](const py::dict& values) {
            std::map<IntVec, Rat> table;
            for (auto item : values)
              table[vec_in(item.first.cast<std::vector<std::int64_t>>())] =
                  rat_in(item.second);
            return PsiSpec::explicit_table(std::move(table));
          },
          "values"_a, "Finite table keyed by the lattice point itself.")
      .def_static(
          "ds_counterexample",
          [](std::int64_t N, py::handle eta) {
            return PsiSpec::ds_counterexample(N, rat_in(eta));
          },
          "N"_a, "eta"_a, "psi(q) = eta q / N on the divisors q of N.")
      .def_static(
          "catlin_transform",
          [](const PsiSpec& inner, std::int64_t t_max) {
            return PsiSpec::catlin_transform(inner, t_max);
          },
          "inner"_a, "t_max"_a, "Truncated supremum of inner(t q) / t.")
      .def_static(
          "parse", [](const std::string& text) { return PsiSpec::parse(text); },
          "text"_a, "Structured-text form, round-trips with to_config().")
      .def("eval",
           [](const PsiSpec& spec, const std::vector<std::int64_t>& q, unsigned prec) {
             return value_out(spec.eval(vec_in(q), prec));
           },
           "q"_a, "prec"_a = kDefaultPrec,
           "Exact Fraction, or {'value','abs_error'} for enclosures.")
      .def("rational_valued", &PsiSpec::rational_valued)
      .def("to_config", &PsiSpec::to_config);

  py::class_<ApproxSet>(mod, "ApproxSet",
                        "Solution set on T^{nm} described by its 1-D reduction.")
      .def(py::init([](const std::vector<std::int64_t>& q, py::handle epsilon,
                       const std::string& mode, int m,
                       std::optional<std::vector<std::int64_t>> filter) {
             ApproxSet s{static_cast<int>(q.size()), m, vec_in(q), rat_in(epsilon),
                         mode_in(mode), std::move(filter)};
             s.validate();
             return s;
           }),
           "q"_a, "epsilon"_a, "mode"_a = "coprime", "m"_a = 1,
           "filter"_a = py::none())
      .def_readonly("n", &ApproxSet::n)
      .def_readonly("m", &ApproxSet::m)
      .def("measure",
           [](const ApproxSet& s) { return fraction(measures::measure_A(s)); },
           "Exact Lebesgue measure.")
      .def("arcs", [](const ApproxSet& s) {
        py::list out;
        for (const auto& [lo, hi] : s.reduced().arcs())
          out.append(py::make_tuple(fraction(lo), fraction(hi)));
        return out;
      }, "Canonical arcs of the 1-D reduction.");

  mod.def(
      "measure_intersection",
      [](const ApproxSet& a, const ApproxSet& b) {
        return fraction(measures::measure_intersection(a, b));
      },
      "a"_a, "b"_a, "Exact measure of the intersection of two sets.");

  mod.def(
      "pv_overlap_bound",
      [](std::int64_t k, std::int64_t l, py::handle Psi_k, py::handle Psi_l) {
        return overlap_out(measures::pv_overlap_bound(k, l, rat_in(Psi_k), rat_in(Psi_l)));
      },
      "k"_a, "l"_a, "Psi_k"_a, "Psi_l"_a,
      "Pairwise overlap of coprime-filtered sets against the indicator bound.");

  mod.def(
      "overlap_ratio_scan",
      [](const py::dict& Psi, std::int64_t K) {
        py::list out;
        for (const auto& rep : measures::overlap_ratio_scan(table_in(Psi), K))
          out.append(overlap_out(rep));
        return out;
      },
      "Psi"_a, "K"_a, "Audit of every pair 1 <= k < l <= K, worst ratio first.");

  mod.def(
      "chung_erdos_bound",
      [](const std::vector<py::object>& mu,
         const std::vector<std::vector<py::object>>& mu_pair) {
        std::vector<Rat> m1;
        for (const auto& v : mu) m1.push_back(rat_in(v));
        std::vector<std::vector<Rat>> m2;
        for (const auto& row : mu_pair) {
          m2.emplace_back();
          for (const auto& v : row) m2.back().push_back(rat_in(v));
        }
        return fraction(measures::chung_erdos_bound(m1, m2));
      },
      "mu"_a, "mu_pair"_a, "(sum mu)^2 over the pairwise-intersection total.");

  mod.def(
      "window_pair_sum",
      [](const py::dict& Psi, std::int64_t X, std::int64_t Y, int m) {
        return fraction(measures::window_pair_sum(table_in(Psi), X, Y, m));
      },
      "Psi"_a, "X"_a, "Y"_a, "m"_a);

  mod.def(
      "find_window",
      [](const PsiSpec& spec, int m, std::int64_t X, std::int64_t Y_max, unsigned prec) {
        auto res = measures::find_window(
            [&](std::int64_t d) { return spec.eval(vec_in({d}), prec).rat(); }, m, X,
            Y_max);
        py::dict d;
        switch (res.status) {
          case measures::WindowStatus::found: d["status"] = "found"; break;
          case measures::WindowStatus::overshoot: d["status"] = "overshoot"; break;
          case measures::WindowStatus::exhausted: d["status"] = "exhausted"; break;
        }
        d["Y"] = res.Y;
        d["sum"] = fraction(res.sum);
        return d;
      },
      "spec"_a, "m"_a, "X"_a, "Y_max"_a, "prec"_a = kDefaultPrec,
      "Smallest Y whose window sum lands between the dyadic thresholds.");

  mod.def(
      "ds_sum",
      [](const PsiSpec& spec, int n, int m, std::int64_t Q, unsigned prec) {
        return series_out(series::ds_sum(spec, n, m, Q, prec));
      },
      "spec"_a, "n"_a, "m"_a, "Q"_a, "prec"_a = kDefaultPrec,
      "Sum of (phi(g) psi(q) / g)^m over the orthant up to height Q.");
  mod.def(
      "ds_sum_factored",
      [](const PsiSpec& spec, int n, int m, std::int64_t H_prim, std::int64_t D,
         unsigned prec) {
        return series_out(series::ds_sum_factored(spec, n, m, H_prim, D, prec));
      },
      "spec"_a, "n"_a, "m"_a, "H_prim"_a, "D"_a, "prec"_a = kDefaultPrec);
  mod.def(
      "catlin_sum",
      [](const PsiSpec& spec, int n, int m, std::int64_t Q, std::int64_t t_max,
         const std::string& phi_mode, unsigned prec) {
        return series_out(
            series::catlin_sum(spec, n, m, Q, t_max, phi_mode_in(phi_mode), prec));
      },
      "spec"_a, "n"_a, "m"_a, "Q"_a, "t_max"_a, "phi_mode"_a = "joint",
      "prec"_a = kDefaultPrec);
  mod.def(
      "khintchine_sum",
      [](const PsiSpec& spec, int m, std::int64_t Q, unsigned prec) {
        return series_out(series::khintchine_sum(spec, m, Q, prec));
      },
      "spec"_a, "m"_a, "Q"_a, "prec"_a = kDefaultPrec);
  mod.def(
      "kg_sum",
      [](const PsiSpec& spec, int n, int m, std::int64_t Q, unsigned prec) {
        return series_out(series::kg_sum(spec, n, m, Q, prec));
      },
      "spec"_a, "n"_a, "m"_a, "Q"_a, "prec"_a = kDefaultPrec);
  mod.def(
      "bv_sum",
      [](const PsiSpec& spec, int n, int m, std::int64_t Q, unsigned prec) {
        return series_out(series::bv_sum(spec, n, m, Q, prec));
      },
      "spec"_a, "n"_a, "m"_a, "Q"_a, "prec"_a = kDefaultPrec);
  mod.def(
      "hausdorff_ds_sum",
      [](const PsiSpec& spec, int n, int m, py::handle s, std::int64_t Q, unsigned prec) {
        return series_out(series::hausdorff_ds_sum(spec, n, m, rat_in(s), Q, prec));
      },
      "spec"_a, "n"_a, "m"_a, "s"_a, "Q"_a, "prec"_a = kDefaultPrec);
  mod.def(
      "hausdorff_catlin_sum",
      [](const PsiSpec& spec, int n, int m, py::handle s, std::int64_t Q,
         std::int64_t t_max, const std::string& phi_mode, unsigned prec) {
        return series_out(series::hausdorff_catlin_sum(spec, n, m, rat_in(s), Q, t_max,
                                                       phi_mode_in(phi_mode), prec));
      },
      "spec"_a, "n"_a, "m"_a, "s"_a, "Q"_a, "t_max"_a, "phi_mode"_a = "joint",
      "prec"_a = kDefaultPrec);
  mod.def(
      "capital_psi",
      [](const PsiSpec& spec, int n, int m, std::int64_t d, std::int64_t H,
         unsigned prec) {
        auto rep = series::capital_psi(spec, n, m, d, H, prec);
        py::dict out;
        out["value"] = value_out(rep.value);
        out["sum_tail_bound"] =
            rep.sum_tail_bound ? value_out(*rep.sum_tail_bound) : py::object(py::none());
        out["value_upper"] =
            rep.value_upper ? value_out(*rep.value_upper) : py::object(py::none());
        out["tail_unbounded"] = rep.tail_unbounded;
        return out;
      },
      "spec"_a, "n"_a, "m"_a, "d"_a, "H"_a, "prec"_a = kDefaultPrec,
      "Truncated aggregated radius at scale d with a tail bound when one exists.");

  mod.def(
      "hit_fraction",
      [](const PsiSpec& spec, int n, int m, std::int64_t Q, std::int64_t K,
         std::int64_t samples, std::uint64_t seed, std::int64_t q_min, bool coprime,
         const std::string& lattice, unsigned threads) {
        montecarlo::HitParams par;
        par.n = n;
        par.m = m;
        par.Q = Q;
        par.q_min = q_min;
        par.K = K;
        par.samples = samples;
        par.seed = seed;
        par.coprime = coprime;
        par.threads = threads;
        if (lattice == "orthant")
          par.lattice = montecarlo::LatticeMode::orthant;
        else if (lattice == "full")
          par.lattice = montecarlo::LatticeMode::full;
        else
          throw py::value_error("lattice must be 'orthant' or 'full'");
        return mc_out(montecarlo::hit_fraction(spec, par));
      },
      "spec"_a, "n"_a, "m"_a, "Q"_a, "K"_a, "samples"_a, "seed"_a, "q_min"_a = 0,
      "coprime"_a = false, "lattice"_a = "orthant", "threads"_a = 1,
      "Fraction of sampled points with at least K solutions of height <= Q.");

  mod.def(
      "empirical_union_measure",
      [](const std::vector<ApproxSet>& sets, std::int64_t samples, std::uint64_t seed,
         unsigned threads) {
        return mc_out(montecarlo::empirical_union_measure(sets, samples, seed, threads));
      },
      "sets"_a, "samples"_a, "seed"_a, "threads"_a = 1,
      "Monte Carlo union measure with exact membership tests.");

  mod.def(
      "enumerate_solutions",
      [](const std::vector<std::vector<py::object>>& x, const PsiSpec& spec,
         std::int64_t Q, bool coprime) {
        py::list out;
        for (const auto& s : montecarlo::enumerate_solutions(matrix_in(x), spec, Q, coprime))
          out.append(solution_out(s));
        return out;
      },
      "x"_a, "spec"_a, "Q"_a, "coprime"_a = false,
      "Every (p, q) with |q x - p| < psi(q) up to height Q, in (q, p) order.");

  mod.def(
      "lift_solution",
      [](const std::vector<std::int64_t>& p, const std::vector<std::int64_t>& q,
         const PsiSpec& spec, const std::vector<std::vector<py::object>>& x,
         std::int64_t t_max, unsigned prec) {
        auto res = montecarlo::lift_solution(vec_in(p), vec_in(q), spec, matrix_in(x),
                                             t_max, prec);
        py::dict d;
        d["lifted"] = res.lifted ? py::object(py::make_tuple(res.lifted->first.c,
                                                             res.lifted->second.c))
                                 : py::object(py::none());
        d["witness_t"] = res.witness_t;
        d["diagnostic"] = res.diagnostic;
        return d;
      },
      "p"_a, "q"_a, "spec"_a, "x"_a, "t_max"_a, "prec"_a = kDefaultPrec,
      "Multiplies a transform-level solution up to a witness scale.");

  mod.def(
      "counterexample_demo",
      [](std::int64_t N, py::handle eta, std::int64_t samples, std::uint64_t seed,
         unsigned threads) {
        auto rep = montecarlo::counterexample_demo(N, rat_in(eta), samples, seed, threads);
        py::dict d;
        d["sum"] = fraction(rep.sum);
        d["union_exact"] = fraction(rep.union_exact);
        d["union_mc"] = mc_out(rep.union_mc);
        return d;
      },
      "N"_a, "eta"_a, "samples"_a, "seed"_a, "threads"_a = 1,
      "Divergent sum against a small exact union on the divisors of N.");

  mod.def(
      "sample_matrix",
      [](int n, int m, std::uint64_t seed, std::uint64_t index) {
        auto x = montecarlo::sample_matrix(n, m, seed, montecarlo::kHitStream, index);
        py::list rows;
        for (int i = 0; i < n; ++i) {
          py::list row;
          for (int j = 0; j < m; ++j) row.append(fraction(x.at(i, j)));
          rows.append(row);
        }
        return rows;
      },
      "n"_a, "m"_a, "seed"_a, "index"_a = 0,
      "The dyadic sample point the hit test would draw at this index.");

  mod.def(
      "stripe_independence_estimate",
      [](const std::vector<std::int64_t>& q1, const std::vector<std::int64_t>& q2,
         const std::vector<py::object>& v1, const std::vector<py::object>& v2,
         py::handle e1, py::handle e2, std::int64_t samples, std::uint64_t seed,
         unsigned threads) {
        std::vector<Rat> w1, w2;
        for (const auto& v : v1) w1.push_back(rat_in(v));
        for (const auto& v : v2) w2.push_back(rat_in(v));
        auto est = torus_sets::stripe_independence_estimate(
            vec_in(q1), vec_in(q2), w1, w2, rat_in(e1), rat_in(e2), samples, seed,
            threads);
        py::dict d;
        d["estimate"] = est.estimate;
        d["stderr"] = est.stderr_;
        d["product"] = fraction(est.product);
        d["samples"] = est.samples;
        d["seed"] = est.seed;
        return d;
      },
      "q1"_a, "q2"_a, "v1"_a, "v2"_a, "e1"_a, "e2"_a, "samples"_a, "seed"_a,
      "threads"_a = 1, "Intersection of two stripes against the exact product.");

  mod.def(
      "run_all_checks",
      [](std::uint64_t seed) {
        py::list out;
        for (const auto& c : lemmas::run_all_checks(seed)) {
          py::dict d;
          d["name"] = c.name;
          d["pass"] = c.pass;
          d["detail"] = c.detail;
          out.append(d);
        }
        return out;
      },
      "seed"_a, "The randomized sweep of the library's defining identities.");

  mod.def(
      "run_text",
      [](const std::string& config_text, unsigned threads) {
        std::ostringstream out, diag;
        int status = run::run(run::parse_text(config_text), threads, out, diag);
        py::dict d;
        d["status"] = status;
        d["output"] = out.str();
        d["diag"] = diag.str();
        return d;
      },
      "config_text"_a, "threads"_a = 1,
      "Full command dispatch on a config text; mirrors the command line tool.");
}
