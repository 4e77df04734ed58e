#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "laxton/classifier.hpp"

namespace laxton {

struct SweepInstance {
  Int P;
  Int Q;
  std::uint64_t p;
};

struct SweepConfig {
  long P_min = 0, P_max = 0;
  long Q_min = 0, Q_max = 0;
  std::vector<std::uint64_t> primes;
  bool irreducible_only = false;
  long radius = 4;
};

/// (P, Q, p) in lexicographic order, skipping Q = 0, D = 0 and p | Q.
std::vector<SweepInstance> enumerate_instances(const SweepConfig& cfg);

struct SweepRecord {
  SweepInstance instance;
  std::optional<StructureReport> report;
  std::optional<ErrorKind> error_kind;
  std::string error;
  double ms = 0;
};

SweepRecord run_instance(const SweepInstance& inst, long radius);

/// Called once per record, in input order, from one thread.
using SweepSink = std::function<void(const SweepRecord&)>;

/// Workers take instances in chunks; each chunk is emitted in order after it completes.
void run_sweep(const std::vector<SweepInstance>& instances, long radius, int jobs, const SweepSink& sink);
/// Reference: one instance at a time.
void run_sweep_serial(const std::vector<SweepInstance>& instances, long radius, const SweepSink& sink);

}  // namespace laxton
