#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pdi/config.hpp"

namespace pdi {

// One output row: fixed numeric columns per mode plus an error column that
// carries a per-point diagnostic instead of aborting the whole sweep.
struct SweepRow {
  std::vector<double> values;
  std::string error;
};

struct SweepResult {
  std::vector<std::string> columns;
  std::vector<SweepRow> rows;
  int exit_code = 0;  // 0 ok, 2 tolerance failure (oracle-check)
  std::string report;  // human-readable summary (oracle-check table, extract echo)
};

// Evaluates the configured run: one row per grid point, computed
// concurrently with a bounded worker pool and emitted in grid order.
SweepResult evaluate_run(const RunConfig& cfg);

// Writes result rows as CSV: `#`-prefixed header comment block with the
// full parameter echo, then the column header, then one row per point with
// 17-significant-digit lowercase-e numbers. Also writes a JSON-lines
// metadata sidecar (<out>.meta.jsonl) with parameters, regime-check
// results, code version and timing.
void write_csv(const RunConfig& cfg, const SweepResult& result, const std::string& path);

// evaluate_run + write_csv + sidecar; returns the process exit code.
int run_sweep(const RunConfig& cfg);

// Deterministic splittable uniform RNG used for oracle draws (keeps CSV
// output byte-identical for a fixed seed across standard libraries).
struct UniformRng {
  explicit UniformRng(std::uint64_t seed);
  double uniform(double lo, double hi);
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

// Runs fn(i) for i in [0, n) on up to `threads` workers; any exception is
// rethrown on the calling thread after all workers join.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

std::string version_string();

}  // namespace pdi
