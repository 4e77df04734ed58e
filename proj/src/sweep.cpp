#include "laxton/sweep.hpp"

#include <algorithm>
#include <chrono>

#include <omp.h>

namespace laxton {

std::vector<SweepInstance> enumerate_instances(const SweepConfig& cfg) {
  std::vector<SweepInstance> out;
  for (long P = cfg.P_min; P <= cfg.P_max; ++P) {
    for (long Q = cfg.Q_min; Q <= cfg.Q_max; ++Q) {
      if (Q == 0 || P * P - 4 * Q == 0) continue;
      if (cfg.irreducible_only && RecurrenceParams(Int(P), Int(Q)).reducible()) continue;
      for (std::uint64_t p : cfg.primes) {
        if (Q % static_cast<long>(p) == 0) continue;
        out.push_back(SweepInstance{Int(P), Int(Q), p});
      }
    }
  }
  return out;
}

SweepRecord run_instance(const SweepInstance& inst, long radius) {
  SweepRecord rec{inst, std::nullopt, std::nullopt, {}, 0};
  auto t0 = std::chrono::steady_clock::now();
  try {
    rec.report = crosscheck_structure(RecurrenceParams(inst.P, inst.Q), inst.p, radius);
  } catch (const Error& e) {
    rec.error_kind = e.kind();
    rec.error = e.what();
  }
  rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

void run_sweep(const std::vector<SweepInstance>& instances, long radius, int jobs, const SweepSink& sink) {
  if (jobs <= 1) return run_sweep_serial(instances, radius, sink);
  const std::size_t chunk = static_cast<std::size_t>(jobs) * 32;
  std::vector<SweepRecord> buf;
  for (std::size_t start = 0; start < instances.size(); start += chunk) {
    std::size_t n = std::min(chunk, instances.size() - start);
    buf.assign(n, SweepRecord{});
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (std::size_t i = 0; i < n; ++i) buf[i] = run_instance(instances[start + i], radius);
    for (const auto& rec : buf) sink(rec);
  }
}

void run_sweep_serial(const std::vector<SweepInstance>& instances, long radius, const SweepSink& sink) {
  for (const auto& inst : instances) sink(run_instance(inst, radius));
}

}  // namespace laxton
