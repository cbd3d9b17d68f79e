#include "diolab/run.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int fail(const std::string& message, int status) {
  nlohmann::ordered_json e;
  e["error"] = message;
  std::cerr << e.dump() << "\n";
  return status;
}

diolab::config::Node load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw diolab::run::ConfigError("cannot read config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return diolab::config::parse(buf.str());
  } catch (const std::exception& e) {
    throw diolab::run::ConfigError(e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "diolab: exact measures, divergence diagnostics, and seeded Monte Carlo "
      "for coprimality-filtered approximation sets"};

  std::string config_path;
  app.add_option("--config", config_path, "configuration file (structured text)")
      ->required();

  std::int64_t n = 0, m = 0, Q = 0, precision_bits = 0;
  std::uint64_t seed = 0;
  std::string out;
  unsigned threads = 1;
  auto* n_opt = app.add_option("--n", n, "override n");
  auto* m_opt = app.add_option("--m", m, "override m");
  auto* q_opt = app.add_option("--Q", Q, "override Q");
  auto* seed_opt = app.add_option("--seed", seed, "override seed");
  auto* out_opt = app.add_option("--out", out, "override the output path");
  auto* prec_opt =
      app.add_option("--precision-bits", precision_bits, "override precision_bits");
  app.add_option("--threads", threads,
                 "worker threads; runtime knob only, never changes output bytes")
      ->check(CLI::Range(1, 256));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(std::string("command line: ") + e.what(), diolab::run::kExitConfig);
  }

  try {
    diolab::config::Node node = load(config_path);
    if (n_opt->count()) diolab::run::override_value(node, "n", std::to_string(n));
    if (m_opt->count()) diolab::run::override_value(node, "m", std::to_string(m));
    if (q_opt->count()) diolab::run::override_value(node, "Q", std::to_string(Q));
    if (seed_opt->count())
      diolab::run::override_value(node, "seed", std::to_string(seed));
    if (out_opt->count()) diolab::run::override_value(node, "out", out);
    if (prec_opt->count())
      diolab::run::override_value(node, "precision_bits", std::to_string(precision_bits));

    diolab::run::RunConfig cfg = diolab::run::from_node(std::move(node));
    return diolab::run::run(cfg, threads, std::cout, std::cerr);
  } catch (const diolab::run::ConfigError& e) {
    return fail(e.what(), diolab::run::kExitConfig);
  } catch (const std::exception& e) {
    return fail(e.what(), diolab::run::kExitOperation);
  }
}
