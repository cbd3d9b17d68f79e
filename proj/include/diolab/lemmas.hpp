#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace diolab::lemmas {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // scope of the sweep, or the first counterexample
};

/// Reduced-scale randomized sweep of the library's defining identities and
/// inequalities: exact measure laws, sandwich and dilation bounds, union
/// lower bounds, overlap indicator soundness, transform and threshold
/// algebra, series factorization, enumeration against brute force, lifting,
/// and the divergence-without-fullness bound. Deterministic per seed.
std::vector<CheckResult> run_all_checks(std::uint64_t seed);

bool all_pass(const std::vector<CheckResult>& checks);

}  // namespace diolab::lemmas
