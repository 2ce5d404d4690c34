#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "psync/automaton.hpp"

namespace psync {

struct CheckConfig {
  /// Largest automaton size the size-dependent checks may use.
  std::size_t size_cap = 8;
  std::uint64_t seed = 2024;
};

struct CheckOutcome {
  bool passed = false;
  std::string detail;
};

struct Check {
  std::string name;
  std::string description;
  double time_limit = 0;  // seconds
  std::function<CheckOutcome(const CheckConfig&)> run;
};

struct CheckReport {
  std::string name;
  std::string description;
  CheckOutcome outcome;
  double seconds = 0;
  double time_limit = 0;
  bool ok() const { return outcome.passed && seconds <= time_limit; }
};

/// The six-state example automaton used throughout the documentation.
PartialDfa six_state_example();

/// Random strongly connected partial automata, 2 <= n <= size_cap (at most 8),
/// densities in [0.6, 0.95]. Deterministic in `seed`.
std::vector<PartialDfa> random_partial_corpus(std::size_t count, std::size_t size_cap, std::uint64_t seed);

/// Acceptance checks, named ac01 .. ac10.
std::vector<Check> acceptance_checks();

/// Runs the checks, concurrently if asked; reports are sorted by name.
/// An exception inside a check becomes a failed outcome.
std::vector<CheckReport> run_checks(const std::vector<Check>& checks, const CheckConfig& config, bool concurrent);

}  // namespace psync
