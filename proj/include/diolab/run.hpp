#pragma once

#include "diolab/config.hpp"
#include "diolab/psi.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace diolab::run {

/// Malformed or incomplete configuration (exit status 2). Everything else
/// thrown during a run is an operation failure (exit status 1).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A validated invocation: the command name, the generic knobs every command
/// shares, and the raw tree for command-specific keys. `echo` is the
/// canonical serialized form of the tree minus any `out` item; reports embed
/// it so identical effective configurations produce identical bytes no
/// matter where the report lands.
struct RunConfig {
  std::string command;
  std::optional<psi::PsiSpec> psi;
  int n = 1;
  int m = 1;
  std::optional<std::int64_t> Q;
  std::optional<std::int64_t> H;
  std::optional<std::int64_t> D;
  std::optional<std::int64_t> t_max;
  std::optional<std::int64_t> K;
  std::optional<std::uint64_t> seed;
  std::string out;  // empty: write to the stream handed to run()
  unsigned precision_bits = kDefaultPrec;
  config::Node raw;
  std::string echo;
};

/// Validates the generic fields: known command, n and m positive, integer
/// knobs parseable, psi block well formed, and an explicit seed on every
/// randomized command (mc, counterexample, lemmas).
RunConfig from_node(config::Node node);
RunConfig parse_text(std::string_view text);
RunConfig parse_file(const std::string& path);

/// Command line override: replaces the first item carrying the key (and
/// drops any repeats), or appends when the key is new.
void override_value(config::Node& node, const std::string& key, std::string value);

inline constexpr int kExitOk = 0;
inline constexpr int kExitOperation = 1;
inline constexpr int kExitConfig = 2;

/// Executes the command. The report goes to cfg.out when set, to `output`
/// otherwise; on failure one {"error": ...} line goes to `diag` and the
/// status says which kind. `threads` is a runtime knob only: it never
/// appears in any report and never changes one byte of the output.
int run(const RunConfig& cfg, unsigned threads, std::ostream& output,
        std::ostream& diag);

}  // namespace diolab::run
