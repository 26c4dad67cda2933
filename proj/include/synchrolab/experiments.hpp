#pragma once

// Seeded Monte Carlo harness. Each experiment samples independent trials per
// problem size, records per-trial measurements, aggregates them and checks
// its acceptance bands.
//
// Trial t at size n draws from Seed{master, n}.child(t); results depend only
// on the master seed, never on worker count or scheduling.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "synchrolab/core.hpp"
#include "synchrolab/rng.hpp"

namespace synchrolab {

struct ExperimentConfig {
  std::string experiment;
  std::vector<std::size_t> n_values;  // nonempty, ascending
  std::size_t trials = 30;
  /// Optional per-size trial counts, one per n value; replaces `trials`.
  std::vector<std::size_t> trials_per_n;
  std::uint64_t master_seed = 1;
  std::string output_path;   // CSV; empty for none
  std::string summary_path;  // JSON; empty for none
  std::size_t threads = 0;   // 0: SYNCHROLAB_THREADS or hardware concurrency
  bool record_walltime = false;  // off keeps CSV output byte-reproducible
  nlohmann::json overrides = nlohmann::json::object();

  /// Field names: experiment, n, trials, seed, output, summary, threads,
  /// record_walltime, overrides. `trials` is a count or an array with one
  /// count per n.
  static ExperimentConfig from_json(const nlohmann::json& doc);
  void validate() const;
  std::size_t trials_at(std::size_t n) const;
};

/// Named measurements of one trial, in recording order.
using Measurements = std::vector<std::pair<std::string, double>>;

struct TrialRecord {
  std::string experiment;
  std::size_t n = 0;
  std::size_t trial = 0;
  std::uint64_t seed_stream = 0;
  Measurements values;
  double walltime_ms = 0.0;
};

struct QuantityStats {
  std::size_t count = 0;
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(count)
  double min = 0.0;
  double max = 0.0;
  double median = 0.0;
};

/// stats[n][quantity].
struct SummaryStats {
  std::map<std::size_t, std::map<std::string, QuantityStats>> stats;

  const QuantityStats& at(std::size_t n, const std::string& quantity) const;
  bool has(std::size_t n, const std::string& quantity) const;
};

/// Deterministic, record-order independent aggregation. Throws InvalidInput
/// on an empty list.
SummaryStats summarize(const std::vector<TrialRecord>& records);
QuantityStats summarize_values(std::vector<double> values);

struct Verdict {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialRecord> records;
  SummaryStats summary;
  nlohmann::json thresholds = nlohmann::json::object();
  nlohmann::json derived = nlohmann::json::object();
  std::vector<Verdict> verdicts;

  bool passed() const;
  nlohmann::json summary_json() const;
};

/// CSV header: experiment,n,trial,seed_stream,quantity,value,walltime_ms
void write_csv(std::ostream& out, const std::vector<TrialRecord>& records);

/// Worker count from SYNCHROLAB_THREADS, else hardware concurrency (>= 1).
std::size_t default_thread_count();

/// Runs `trial(n, t, rng)` for every size and trial index, on `threads`
/// workers, and returns the records in (n, trial) order.
using TrialFunction = std::function<Measurements(std::size_t n, std::size_t trial, Rng& rng)>;
std::vector<TrialRecord> run_trials(const ExperimentConfig& config, const TrialFunction& trial);

// Per-automaton measurements, exposed so fixtures can be run through the
// same code path as sampled automata.
Measurements measure_theorem1(const Automaton& aut);
Measurements measure_theorem2(const Automaton& aut);
Measurements measure_theorem3(const Automaton& aut);
Measurements measure_corollary(const Automaton& aut);
Measurements measure_shortest_reset(const Automaton& aut);

/// |image of a^k| with k = ceil(2 sqrt(n ln n)), against sqrt(2 pi n).
ExperimentResult run_theorem1(const ExperimentConfig& config);
/// Interleaved phase-1 image against the unary one on the same automata.
ExperimentResult run_theorem2(const ExperimentConfig& config);
/// All-pairs merge radius against 3 log2 n.
ExperimentResult run_theorem3(const ExperimentConfig& config);
/// Two-phase synchronization: verification, success rate, length scaling.
ExperimentResult run_corollary(const ExperimentConfig& config);
/// Probability that no vertex sits at distance exactly k from a random
/// l-set, against q_k^l. n_values are vertex counts.
ExperimentResult run_extinction_bound(const ExperimentConfig& config);
/// Exact cyclic expectation at the uniform vector against random simplex
/// points; trials = number of challengers. n_values are vertex counts.
ExperimentResult run_uniform_maximizer(const ExperimentConfig& config);
/// Exact shortest reset length of random automata.
ExperimentResult run_shortest_reset_distribution(const ExperimentConfig& config);

/// Dispatches on config.experiment: theorem1, theorem2, theorem3, corollary,
/// extinction_bound, uniform_maximizer, shortest_reset.
ExperimentResult run_experiment(const ExperimentConfig& config);
/// Writes the CSV and summary JSON named in the config, if any.
void write_outputs(const ExperimentResult& result);

}  // namespace synchrolab
