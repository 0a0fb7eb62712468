#pragma once

// Result records shared by the SAP, CVP and IP solvers.

#include "gsieve/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gsieve {

enum class Status {
  ok,
  empty,
  // Every guess ran out of pairs before the sieve finished.
  budget_exhausted,
  // The sieve finished but produced no usable vector.
  not_found,
};

const char* status_name(Status s);

struct GuessStats {
  double beta = 0.0;
  std::size_t initial_pairs = 0;
  std::size_t stages = 0;
  std::size_t survivors = 0;
  std::size_t max_centers = 0;
  std::size_t candidates = 0;
  bool exhausted = false;
  std::optional<double> best_value;
};

struct SolveReport {
  Status status = Status::not_found;
  std::optional<RVector> vector;
  std::optional<IVector> coefficients;
  std::optional<Rational> value;  // exact gauge length or distance of `vector`

  double eps = 0.0;
  double gamma = 0.0;
  double nu = 0.0;
  double budget_multiplier = 1.0;
  std::uint64_t seed = 0;
  std::size_t total_pairs = 0;
  std::vector<GuessStats> guesses;
  std::vector<std::string> warnings;

  double value_double() const { return value ? to_double(*value) : 0.0; }
};

}  // namespace gsieve
