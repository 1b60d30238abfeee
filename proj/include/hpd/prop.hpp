#pragma once

// Seeded randomized property suites over the engine.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hpd/duality_checks.hpp"
#include "hpd/report.hpp"

namespace hpd {

struct PropConfig {
  std::uint64_t seed = 1;
  int cases = 1000;
  int max_length = 5;   // m
  int max_rank = 9;     // N
  int max_symbols = 2;
  EngineOptions engine;
  /// Property-name prefixes to run; empty runs everything.
  std::vector<std::string> only;
};

/// Throws InvalidArgument when bounds exceed m <= 6, N <= 9, symbols <= 3.
void validate_prop_config(const PropConfig& config);

const std::vector<std::string>& property_names();

/// Bounded integers independent of the standard library's distributions, so
/// streams are reproducible across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [lo, hi].
  int uniform(int lo, int hi);
  bool chance(int percent) { return uniform(1, 100) <= percent; }

 private:
  std::mt19937_64 engine_;
};

struct RandomShape {
  int max_length = 5;
  int min_ambient = 2;
  int max_ambient = 9;
  int max_symbols = 2;
};

InvariantExpr random_primitive(Rng& rng, int max_symbols);
LefschetzProfile random_profile(Rng& rng, const std::string& name,
                                int ambient, int length, int max_symbols);

/// One CheckResult per property, named "prop:<property>". A passing result
/// carries lhs = rhs = number of cases; a failing one carries the first
/// counterexample's two sides and its witness.
std::vector<CheckResult> run_properties(const PropConfig& config);

Report run_prop_report(const PropConfig& config);

}  // namespace hpd
