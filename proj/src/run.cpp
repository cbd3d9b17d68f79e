#include "diolab/run.hpp"

#include "diolab/json_io.hpp"
#include "diolab/lemmas.hpp"
#include "diolab/measures.hpp"
#include "diolab/montecarlo.hpp"
#include "diolab/series.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

namespace diolab::run {

namespace {

using config::Node;
using json_io::Json;
using torus_sets::ApproxSet;
using torus_sets::SetMode;

const std::set<std::string>& known_commands() {
  static const std::set<std::string> k{"measure",     "intersect", "overlap-scan",
                                       "series",      "window",    "mc",
                                       "counterexample", "lemmas"};
  return k;
}

bool randomized(const std::string& command) {
  return command == "mc" || command == "counterexample" || command == "lemmas";
}

std::string str_at(const Node& node, const std::string& key) {
  auto v = node.maybe_value(key);
  if (!v) throw ConfigError("missing value for key '" + key + "'");
  return *v;
}

std::int64_t int_at(const Node& node, const std::string& key) {
  try {
    return config::to_int(str_at(node, key));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("key '" + key + "': " + e.what());
  }
}

std::int64_t int_or(const Node& node, const std::string& key, std::int64_t fallback) {
  return node.has(key) ? int_at(node, key) : fallback;
}

Rat rat_at(const Node& node, const std::string& key) {
  try {
    return config::to_rat(str_at(node, key));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("key '" + key + "': " + e.what());
  }
}

bool bool_or(const Node& node, const std::string& key, bool fallback) {
  if (!node.has(key)) return fallback;
  try {
    return config::to_bool(str_at(node, key));
  } catch (const std::exception& e) {
    throw ConfigError("key '" + key + "': " + e.what());
  }
}

std::vector<std::int64_t> int_list(const std::string& text, const std::string& key) {
  std::vector<std::int64_t> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    try {
      out.push_back(config::to_int(tok));
    } catch (const std::exception& e) {
      throw ConfigError("key '" + key + "': " + e.what());
    }
  }
  if (out.empty()) throw ConfigError("key '" + key + "': no integers given");
  return out;
}

SetMode mode_from(const std::string& text) {
  if (text == "plain") return SetMode::plain;
  if (text == "coprime") return SetMode::coprime;
  if (text == "filtered") return SetMode::filtered;
  throw ConfigError("unknown set mode '" + text +
                    "' (expected plain, coprime, or filtered)");
}

/// An approximation set block: `q` (direction components), `epsilon`, `mode`,
/// optional `filter` (admissible residues). n comes from the direction, m
/// from the top level.
ApproxSet set_from(const Node& block, int m) {
  ApproxSet s;
  auto comps = int_list(str_at(block, "q"), "q");
  s.n = static_cast<int>(comps.size());
  s.m = m;
  s.q = IntVec{std::move(comps)};
  s.epsilon = rat_at(block, "epsilon");
  s.mode = mode_from(str_at(block, "mode"));
  if (block.has("filter")) s.numerator_filter = int_list(str_at(block, "filter"), "filter");
  return s;
}

const Node& child_at(const Node& node, const std::string& key) {
  const Node* c = node.maybe_child(key);
  if (!c) throw ConfigError("missing block '" + key + "'");
  return *c;
}

const psi::PsiSpec& psi_at(const RunConfig& cfg) {
  if (!cfg.psi) throw ConfigError("command '" + cfg.command + "' needs a psi block");
  return *cfg.psi;
}

std::int64_t cutoff_at(const std::optional<std::int64_t>& v, const char* name) {
  if (!v) throw ConfigError(std::string("missing value for key '") + name + "'");
  return *v;
}

/// Radial rational values of the spec on [1, K], the shape the overlap and
/// window machinery consumes.
std::map<std::int64_t, Rat> radial_values(const psi::PsiSpec& spec, std::int64_t lo,
                                          std::int64_t hi, unsigned prec) {
  std::map<std::int64_t, Rat> out;
  for (std::int64_t d = lo; d <= hi; ++d)
    out[d] = spec.eval(IntVec{{d}}, prec).rat();
  return out;
}

Json cmd_measure(const RunConfig& cfg) {
  ApproxSet s = set_from(child_at(cfg.raw, "set"), cfg.m);
  if (cfg.raw.has("n") && cfg.n != s.n)
    throw ConfigError("n does not match the direction length");
  Json j;
  j["measure"] = json_io::rat_json(measures::measure_A(s));
  return j;
}

Json cmd_intersect(const RunConfig& cfg) {
  ApproxSet a = set_from(child_at(cfg.raw, "set1"), cfg.m);
  ApproxSet b = set_from(child_at(cfg.raw, "set2"), cfg.m);
  Json j;
  j["measure"] = json_io::rat_json(measures::measure_intersection(a, b));
  return j;
}

Json cmd_series(const RunConfig& cfg) {
  const std::string name = str_at(cfg.raw, "name");
  const psi::PsiSpec& spec = psi_at(cfg);
  const unsigned prec = cfg.precision_bits;
  const int n = cfg.n, m = cfg.m;
  auto phi_mode = [&] {
    std::string text = cfg.raw.has("phi_mode") ? str_at(cfg.raw, "phi_mode") : "joint";
    if (text == "joint") return arith::PhiMode::joint;
    if (text == "componentwise") return arith::PhiMode::componentwise;
    throw ConfigError("unknown phi_mode '" + text + "'");
  };
  if (name == "ds")
    return json_io::series_json(series::ds_sum(spec, n, m, cutoff_at(cfg.Q, "Q"), prec));
  if (name == "ds-factored")
    return json_io::series_json(series::ds_sum_factored(
        spec, n, m, cutoff_at(cfg.H, "H"), cutoff_at(cfg.D, "D"), prec));
  if (name == "catlin")
    return json_io::series_json(series::catlin_sum(
        spec, n, m, cutoff_at(cfg.Q, "Q"), cutoff_at(cfg.t_max, "t_max"), phi_mode(), prec));
  if (name == "khintchine")
    return json_io::series_json(
        series::khintchine_sum(spec, m, cutoff_at(cfg.Q, "Q"), prec));
  if (name == "kg")
    return json_io::series_json(series::kg_sum(spec, n, m, cutoff_at(cfg.Q, "Q"), prec));
  if (name == "bv")
    return json_io::series_json(series::bv_sum(spec, n, m, cutoff_at(cfg.Q, "Q"), prec));
  if (name == "hausdorff-ds")
    return json_io::series_json(series::hausdorff_ds_sum(
        spec, n, m, rat_at(cfg.raw, "s"), cutoff_at(cfg.Q, "Q"), prec));
  if (name == "hausdorff-catlin")
    return json_io::series_json(series::hausdorff_catlin_sum(
        spec, n, m, rat_at(cfg.raw, "s"), cutoff_at(cfg.Q, "Q"),
        cutoff_at(cfg.t_max, "t_max"), phi_mode(), prec));
  if (name == "capital-psi")
    return json_io::capital_psi_json(series::capital_psi(
        spec, n, m, cutoff_at(cfg.D, "D"), cutoff_at(cfg.H, "H"), prec));
  throw ConfigError("unknown series name '" + name + "'");
}

Json cmd_window(const RunConfig& cfg) {
  const psi::PsiSpec& spec = psi_at(cfg);
  const unsigned prec = cfg.precision_bits;
  std::int64_t X = int_at(cfg.raw, "X");
  std::int64_t Y_max = cutoff_at(cfg.Q, "Q");
  auto provider = [&](std::int64_t d) { return spec.eval(IntVec{{d}}, prec).rat(); };
  auto res = measures::find_window(provider, cfg.m, X, Y_max);
  Json j = json_io::window_json(res);
  if (res.status == measures::WindowStatus::found)
    j["pair_sum"] = json_io::rat_json(
        measures::window_pair_sum(radial_values(spec, X, res.Y, prec), X, res.Y, cfg.m));
  else
    j["pair_sum"] = nullptr;
  return j;
}

Json cmd_mc_hit(const RunConfig& cfg, unsigned threads) {
  montecarlo::HitParams par;
  par.n = cfg.n;
  par.m = cfg.m;
  par.Q = cutoff_at(cfg.Q, "Q");
  par.q_min = int_or(cfg.raw, "q_min", 0);
  par.K = cutoff_at(cfg.K, "K");
  par.samples = int_at(cfg.raw, "samples");
  par.seed = *cfg.seed;
  par.coprime = bool_or(cfg.raw, "coprime", false);
  par.threads = threads;
  if (cfg.raw.has("lattice")) {
    std::string text = str_at(cfg.raw, "lattice");
    if (text == "orthant")
      par.lattice = montecarlo::LatticeMode::orthant;
    else if (text == "full")
      par.lattice = montecarlo::LatticeMode::full;
    else
      throw ConfigError("unknown lattice '" + text + "' (expected orthant or full)");
  }
  return json_io::mc_json(montecarlo::hit_fraction(psi_at(cfg), par));
}

Json cmd_mc_union(const RunConfig& cfg, unsigned threads) {
  const Node& block = child_at(cfg.raw, "sets");
  std::vector<ApproxSet> sets;
  for (const auto* item : block.all("set")) {
    if (!item->child) throw ConfigError("'set' inside 'sets' must be a block");
    sets.push_back(set_from(*item->child, cfg.m));
  }
  if (sets.empty()) throw ConfigError("'sets' holds no set blocks");
  return json_io::mc_json(montecarlo::empirical_union_measure(
      sets, int_at(cfg.raw, "samples"), *cfg.seed, threads));
}

montecarlo::RatMatrix matrix_from(const Node& block, int n, int m) {
  montecarlo::RatMatrix x(n, m);
  auto rows = block.all("row");
  if (static_cast<int>(rows.size()) != n)
    throw ConfigError("x block needs exactly " + std::to_string(n) + " row items");
  for (int i = 0; i < n; ++i) {
    std::istringstream in(rows[static_cast<std::size_t>(i)]->value);
    std::string tok;
    int j = 0;
    while (in >> tok) {
      if (j >= m) throw ConfigError("x row " + std::to_string(i) + " has more than " +
                                    std::to_string(m) + " entries");
      try {
        x.at(i, j) = config::to_rat(tok);
      } catch (const std::exception& e) {
        throw ConfigError("x row " + std::to_string(i) + ": " + e.what());
      }
      ++j;
    }
    if (j != m)
      throw ConfigError("x row " + std::to_string(i) + " needs " + std::to_string(m) +
                        " entries");
  }
  return x;
}

/// Header line for the record-stream commands: the version, the config echo,
/// and any command-specific context (the realized sample point for
/// enumeration).
Json stream_header(const RunConfig& cfg) {
  Json h;
  h["format_version"] = json_io::kFormatVersion;
  h["config"] = cfg.echo;
  return h;
}

std::string cmd_overlap_scan(const RunConfig& cfg) {
  const psi::PsiSpec& spec = psi_at(cfg);
  std::int64_t K = cutoff_at(cfg.K, "K");
  auto Psi = radial_values(spec, 1, K, cfg.precision_bits);
  std::string text = stream_header(cfg).dump();
  text += '\n';
  for (const auto& rep : measures::overlap_ratio_scan(Psi, K)) {
    text += json_io::overlap_json(rep).dump();
    text += '\n';
  }
  return text;
}

std::string cmd_mc_enumerate(const RunConfig& cfg) {
  const psi::PsiSpec& spec = psi_at(cfg);
  std::int64_t Q = cutoff_at(cfg.Q, "Q");
  bool coprime = bool_or(cfg.raw, "coprime", false);
  montecarlo::RatMatrix x =
      cfg.raw.maybe_child("x")
          ? matrix_from(child_at(cfg.raw, "x"), cfg.n, cfg.m)
          : montecarlo::sample_matrix(
                cfg.n, cfg.m, *cfg.seed, montecarlo::kHitStream,
                static_cast<std::uint64_t>(int_or(cfg.raw, "sample_index", 0)));
  Json header = stream_header(cfg);
  Json rows = Json::array();
  for (int i = 0; i < cfg.n; ++i) {
    Json row = Json::array();
    for (int j = 0; j < cfg.m; ++j) row.push_back(json_io::rat_json(x.at(i, j)));
    rows.push_back(std::move(row));
  }
  header["x"] = std::move(rows);
  std::string text = header.dump();
  text += '\n';
  for (const auto& s : montecarlo::enumerate_solutions(x, spec, Q, coprime)) {
    text += json_io::solution_json(s).dump();
    text += '\n';
  }
  return text;
}

Json cmd_counterexample(const RunConfig& cfg, unsigned threads) {
  return json_io::counterexample_json(
      montecarlo::counterexample_demo(int_at(cfg.raw, "N"), rat_at(cfg.raw, "eta"),
                                      int_at(cfg.raw, "samples"), *cfg.seed, threads));
}

Json cmd_lemmas(const RunConfig& cfg, bool& failed) {
  auto checks = lemmas::run_all_checks(*cfg.seed);
  Json list = Json::array();
  for (const auto& c : checks) {
    Json e;
    e["name"] = c.name;
    e["pass"] = c.pass;
    e["detail"] = c.detail;
    list.push_back(std::move(e));
  }
  Json j;
  j["checks"] = std::move(list);
  j["all_pass"] = lemmas::all_pass(checks);
  failed = !lemmas::all_pass(checks);
  return j;
}

std::string error_line(const std::string& message) {
  Json e;
  e["error"] = message;
  return e.dump() + "\n";
}

}  // namespace

RunConfig from_node(config::Node node) {
  RunConfig cfg;
  Node for_echo;
  for (const auto& item : node.items)
    if (item.key != "out") for_echo.items.push_back(item);
  cfg.echo = config::serialize(for_echo);
  cfg.raw = std::move(node);

  cfg.command = str_at(cfg.raw, "command");
  if (!known_commands().count(cfg.command))
    throw ConfigError("unknown command '" + cfg.command + "'");
  if (auto o = cfg.raw.maybe_value("out")) cfg.out = *o;

  cfg.n = static_cast<int>(int_or(cfg.raw, "n", 1));
  cfg.m = static_cast<int>(int_or(cfg.raw, "m", 1));
  if (cfg.n < 1 || cfg.m < 1) throw ConfigError("n and m must be positive");

  auto opt_int = [&](const char* key) -> std::optional<std::int64_t> {
    if (!cfg.raw.has(key)) return std::nullopt;
    return int_at(cfg.raw, key);
  };
  cfg.Q = opt_int("Q");
  cfg.H = opt_int("H");
  cfg.D = opt_int("D");
  cfg.t_max = opt_int("t_max");
  cfg.K = opt_int("K");

  if (cfg.raw.has("seed")) {
    std::int64_t s = int_at(cfg.raw, "seed");
    if (s < 0) throw ConfigError("seed must be nonnegative");
    cfg.seed = static_cast<std::uint64_t>(s);
  }
  if (randomized(cfg.command) && !cfg.seed)
    throw ConfigError("command '" + cfg.command + "' requires an explicit seed");

  std::int64_t prec = int_or(cfg.raw, "precision_bits", kDefaultPrec);
  if (prec < 4 || prec > 16384)
    throw ConfigError("precision_bits must lie in [4, 16384]");
  cfg.precision_bits = static_cast<unsigned>(prec);

  if (const Node* p = cfg.raw.maybe_child("psi")) {
    try {
      cfg.psi = psi::PsiSpec::from_node(*p);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("psi block: ") + e.what());
    }
  }
  return cfg;
}

RunConfig parse_text(std::string_view text) {
  try {
    return from_node(config::parse(text));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

RunConfig parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

void override_value(config::Node& node, const std::string& key, std::string value) {
  bool placed = false;
  auto& items = node.items;
  for (auto it = items.begin(); it != items.end();) {
    if (it->key != key) {
      ++it;
    } else if (!placed) {
      it->value = value;
      it->child.reset();
      placed = true;
      ++it;
    } else {
      it = items.erase(it);
    }
  }
  if (!placed) node.add_value(key, std::move(value));
}

int run(const RunConfig& cfg, unsigned threads, std::ostream& output,
        std::ostream& diag) {
  if (threads < 1) {
    diag << error_line("threads must be at least 1");
    return kExitConfig;
  }
  try {
    int status = kExitOk;
    std::string text;
    if (cfg.command == "measure") {
      text = json_io::to_text(json_io::report(cfg.echo, cmd_measure(cfg)));
    } else if (cfg.command == "intersect") {
      text = json_io::to_text(json_io::report(cfg.echo, cmd_intersect(cfg)));
    } else if (cfg.command == "overlap-scan") {
      text = cmd_overlap_scan(cfg);
    } else if (cfg.command == "series") {
      text = json_io::to_text(json_io::report(cfg.echo, cmd_series(cfg)));
    } else if (cfg.command == "window") {
      text = json_io::to_text(json_io::report(cfg.echo, cmd_window(cfg)));
    } else if (cfg.command == "mc") {
      std::string mode = str_at(cfg.raw, "mode");
      if (mode == "hit")
        text = json_io::to_text(json_io::report(cfg.echo, cmd_mc_hit(cfg, threads)));
      else if (mode == "union")
        text = json_io::to_text(json_io::report(cfg.echo, cmd_mc_union(cfg, threads)));
      else if (mode == "enumerate")
        text = cmd_mc_enumerate(cfg);
      else
        throw ConfigError("unknown mc mode '" + mode +
                          "' (expected hit, union, or enumerate)");
    } else if (cfg.command == "counterexample") {
      text = json_io::to_text(
          json_io::report(cfg.echo, cmd_counterexample(cfg, threads)));
    } else {
      bool failed = false;
      text = json_io::to_text(json_io::report(cfg.echo, cmd_lemmas(cfg, failed)));
      if (failed) status = kExitOperation;
    }

    if (!cfg.out.empty()) {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file) throw std::runtime_error("cannot open output file: " + cfg.out);
      file << text;
      file.flush();
      if (!file) throw std::runtime_error("write failed: " + cfg.out);
    } else {
      output << text;
      output.flush();
    }
    return status;
  } catch (const ConfigError& e) {
    diag << error_line(e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    diag << error_line(e.what());
    return kExitOperation;
  }
}

}  // namespace diolab::run
