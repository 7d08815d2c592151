#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tetralab/generators.hpp"
#include "tetralab/io.hpp"
#include "tetralab/report.hpp"

namespace tetra::cli {

struct SuiteConfig {
  std::uint64_t seed = 0;
  std::uint64_t count = 200;
  Index min_dim = 2;
  Index max_dim = 8;
  std::optional<Index> degree;  // model truncation; chosen from the tail when absent
  double tail_target = 1e-10;
  std::size_t samples = 20;
  TolerancePolicy pol;
};

struct InstanceResult {
  std::uint64_t index = 0;
  Family family = Family::Symbols;
  Index dim = 0;
  std::uint64_t seed = 0;
  Index degree = -1;  // -1 when no model was built
  CheckReport report;
};

/// Every battery on one triple: both fundamental pairs, the model, the
/// intertwining relation, symbol extraction with Theta_{P*} and the unitary
/// invariants for a random conjugate.
CheckReport instance_battery(const TetrablockTriple& t, std::uint64_t seed, const SuiteConfig& cfg,
                             Index* degree_used = nullptr);

InstanceResult run_instance(std::uint64_t index, const SuiteConfig& cfg);

struct SuiteResult {
  std::vector<InstanceResult> instances;
  std::size_t passed = 0;
  std::size_t checks = 0;
  std::size_t check_failures = 0;
  std::size_t skipped = 0;
  double wall_time = 0.0;  // seconds

  bool all_passed() const noexcept { return passed == instances.size(); }
};

SuiteResult run_suite(const SuiteConfig& cfg);

/// Structured bundle. The wall time is the last top-level field and is the
/// only part that varies between identical runs.
Json suite_to_json(const SuiteConfig& cfg, const SuiteResult& r, bool with_wall_time = true);
std::string suite_to_text(const SuiteConfig& cfg, const SuiteResult& r);

}  // namespace tetra::cli
