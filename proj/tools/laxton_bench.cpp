// Serial reference vs OpenMP kernels, with a result comparison for each.

#include <chrono>
#include <cstdio>
#include <string>

#include <omp.h>

#include "laxton/sweep.hpp"
#include "laxton/unit_quotient.hpp"

using namespace laxton;

namespace {

template <class F>
double time_ms(F f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string digest(const std::vector<SweepRecord>& recs) {
  std::string out;
  for (auto& r : recs) {
    out += r.instance.P.get_str() + "," + r.instance.Q.get_str() + "," + std::to_string(r.instance.p) + ":";
    out += r.report ? to_string(r.report->verdict) + "," + std::to_string(r.report->g_order) : "err";
    out += ";";
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  long box = argc > 1 ? std::stol(argv[1]) : 6;
  std::uint64_t bound = argc > 2 ? std::stoul(argv[2]) : 60;
  int jobs = omp_get_max_threads();
  bool ok = true;

  SweepConfig cfg;
  cfg.P_min = cfg.Q_min = -box;
  cfg.P_max = cfg.Q_max = box;
  cfg.primes = primes_below(bound);
  auto inst = enumerate_instances(cfg);

  std::vector<SweepRecord> ser, par;
  double ts = time_ms([&] { run_sweep_serial(inst, cfg.radius, [&](const SweepRecord& r) { ser.push_back(r); }); });
  double tp = time_ms([&] { run_sweep(inst, cfg.radius, jobs, [&](const SweepRecord& r) { par.push_back(r); }); });
  bool same = digest(ser) == digest(par);
  ok = ok && same;
  std::printf("sweep box=%ld primes<%lu instances=%zu  serial %.1f ms  parallel(%d) %.1f ms  speedup %.2fx  %s\n", box,
              static_cast<unsigned long>(bound), inst.size(), ts, jobs, tp, ts / tp, same ? "same" : "DIFFERENT");

  struct UQ {
    long P, Q;
    std::uint64_t p;
    unsigned k;
  };
  // Quotients with a few thousand to a few hundred thousand classes.
  for (UQ u : {UQ{1, -1, 101, 2}, UQ{1, 3, 59, 3}, UQ{2, -17, 3, 6}, UQ{1, -31, 5, 4}, UQ{1, -1, 7, 3}}) {
    RecurrenceParams params{Int(u.P), Int(u.Q)};
    std::vector<std::uint64_t> a, b;
    double t_fast = time_ms([&] { a = unit_quotient(params, u.p, u.k); });
    double t_ref = -1;
    std::uint64_t pk = 1;
    for (unsigned i = 0; i < u.k; ++i) pk *= u.p;
    if (pk <= 10000) t_ref = time_ms([&] { b = unit_quotient_reference(params, u.p, u.k); });
    bool agree = t_ref < 0 || a == b;
    ok = ok && agree;
    std::string inv;
    for (auto x : a) inv += std::to_string(x) + " ";
    std::printf("unit_quotient P=%ld Q=%ld p=%lu k=%u  [%s]  parallel %.1f ms", u.P, u.Q, static_cast<unsigned long>(u.p),
                u.k, inv.c_str(), t_fast);
    if (t_ref >= 0)
      std::printf("  reference %.1f ms  %s\n", t_ref, agree ? "same" : "DIFFERENT");
    else
      std::printf("  reference skipped (p^k > 10^4)\n");
  }
  return ok ? 0 : 1;
}
