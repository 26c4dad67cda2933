#include "synchrolab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <thread>

#include "synchrolab/error.hpp"
#include "synchrolab/randmodel.hpp"
#include "synchrolab/sync.hpp"

namespace synchrolab {

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InvalidInput("experiment config must be a JSON object");
  ExperimentConfig config;
  try {
    config.experiment = doc.at("experiment").get<std::string>();
    config.n_values = doc.at("n").get<std::vector<std::size_t>>();
    if (doc.contains("trials") && doc.at("trials").is_array()) {
      config.trials_per_n = doc.at("trials").get<std::vector<std::size_t>>();
      if (config.trials_per_n.empty()) throw InvalidInput("trials array is empty");
    } else {
      config.trials = doc.value("trials", config.trials);
    }
    config.master_seed = doc.value("seed", config.master_seed);
    config.output_path = doc.value("output", std::string{});
    config.summary_path = doc.value("summary", std::string{});
    config.threads = doc.value("threads", std::size_t{0});
    config.record_walltime = doc.value("record_walltime", false);
    if (doc.contains("overrides")) config.overrides = doc.at("overrides");
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad experiment config: ") + e.what());
  }
  for (const auto& [key, value] : doc.items()) {
    static const std::vector<std::string> known{"experiment", "n",       "trials",
                                                "seed",       "output",  "summary",
                                                "threads",    "record_walltime",
                                                "overrides"};
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw InvalidInput("unknown experiment config field '" + key + "'");
    }
  }
  config.validate();
  return config;
}

void ExperimentConfig::validate() const {
  if (experiment.empty()) throw InvalidInput("experiment name is empty");
  if (n_values.empty()) throw InvalidInput("experiment needs at least one n");
  if (!std::is_sorted(n_values.begin(), n_values.end()) ||
      std::adjacent_find(n_values.begin(), n_values.end()) != n_values.end()) {
    throw InvalidInput("n values must be strictly ascending");
  }
  if (trials == 0) throw InvalidInput("experiment needs at least one trial");
  if (!trials_per_n.empty()) {
    if (trials_per_n.size() != n_values.size()) {
      throw InvalidInput("trials array needs one count per n value");
    }
    for (std::size_t t : trials_per_n) {
      if (t == 0) throw InvalidInput("experiment needs at least one trial per n");
    }
  }
  if (!overrides.is_object()) throw InvalidInput("overrides must be a JSON object");
}

std::size_t ExperimentConfig::trials_at(std::size_t n) const {
  if (trials_per_n.empty()) return trials;
  const auto it = std::find(n_values.begin(), n_values.end(), n);
  if (it == n_values.end()) throw InvalidInput("n=" + std::to_string(n) + " is not configured");
  return trials_per_n[static_cast<std::size_t>(it - n_values.begin())];
}

std::size_t default_thread_count() {
  if (const char* env = std::getenv("SYNCHROLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

std::vector<TrialRecord> run_trials(const ExperimentConfig& config, const TrialFunction& trial) {
  config.validate();
  struct Job {
    std::size_t n;
    std::size_t index;
  };
  std::vector<Job> jobs;
  for (std::size_t n : config.n_values) {
    for (std::size_t t = 0, m = config.trials_at(n); t < m; ++t) jobs.push_back({n, t});
  }
  std::vector<TrialRecord> records(jobs.size());
  std::vector<std::exception_ptr> failures(jobs.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      const Seed seed = Seed{config.master_seed, jobs[j].n}.child(jobs[j].index);
      TrialRecord& r = records[j];
      r.experiment = config.experiment;
      r.n = jobs[j].n;
      r.trial = jobs[j].index;
      r.seed_stream = seed.value();
      try {
        Rng rng(seed);
        const auto start = std::chrono::steady_clock::now();
        r.values = trial(r.n, r.trial, rng);
        if (config.record_walltime) {
          r.walltime_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
        }
      } catch (...) {
        failures[j] = std::current_exception();
      }
    }
  };

  const std::size_t workers =
      std::min(jobs.size(), config.threads ? config.threads : default_thread_count());
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return records;
}

// ---------------------------------------------------------------------------
// Per-automaton measurements

Measurements measure_theorem1(const Automaton& aut) {
  const std::size_t n = aut.num_states();
  const std::size_t steps = phase1_word_unary(n).size();
  const StateSet reached = iterate_unary_image(aut, kLetterA, steps, StateSet::full(n));
  const StateSet cyclic = cyclic_states(FunctionalGraph::from_letter(aut, kLetterA));
  return {{"image_size", static_cast<double>(reached.size())},
          {"cyclic_states", static_cast<double>(cyclic.size())}};
}

Measurements measure_theorem2(const Automaton& aut) {
  const std::size_t n = aut.num_states();
  const StateSet interleaved = image(aut, phase1_word_interleaved(n), StateSet::full(n));
  const StateSet unary =
      iterate_unary_image(aut, kLetterA, phase1_word_unary(n).size(), StateSet::full(n));
  return {{"image_interleaved", static_cast<double>(interleaved.size())},
          {"image_unary", static_cast<double>(unary.size())}};
}

Measurements measure_theorem3(const Automaton& aut) {
  const auto radius = all_pairs_merge_radius(aut);
  Measurements m{{"mergeable", radius ? 1.0 : 0.0}};
  if (radius) m.emplace_back("radius", static_cast<double>(*radius));
  return m;
}

Measurements measure_corollary(const Automaton& aut) {
  try {
    const SyncReport report = two_phase_synchronize(aut);
    return {{"synchronizable", 1.0},
            {"verified", report.verified ? 1.0 : 0.0},
            {"total_length", static_cast<double>(report.word.size())},
            {"phase1_length", static_cast<double>(report.phase1_length)},
            {"phase2_length", static_cast<double>(report.phase2_length)},
            {"image_size", static_cast<double>(report.intermediate_image_size)}};
  } catch (const NotSynchronizable&) {
    return {{"synchronizable", 0.0}};
  }
}

Measurements measure_shortest_reset(const Automaton& aut) {
  const auto word = exact_shortest_reset(aut);
  if (!word) return {{"synchronizable", 0.0}};
  const double n = static_cast<double>(aut.num_states());
  const double len = static_cast<double>(word->size());
  return {{"synchronizable", 1.0},
          {"length", len},
          {"length_over_sqrt_n", len / std::sqrt(n)},
          {"length_over_cbrt_n", len / std::cbrt(n)}};
}

// ---------------------------------------------------------------------------
// Experiments

namespace {

double threshold(ExperimentResult& result, const std::string& key, double fallback) {
  const double v = result.config.overrides.value(key, fallback);
  result.thresholds[key] = v;
  return v;
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

void add(ExperimentResult& result, std::string name, bool passed, std::string detail) {
  result.verdicts.push_back({std::move(name), passed, std::move(detail)});
}

ExperimentResult begin(const ExperimentConfig& config, const TrialFunction& trial) {
  ExperimentResult result;
  result.config = config;
  result.records = run_trials(config, trial);
  result.summary = summarize(result.records);
  return result;
}

void require_min_n(const ExperimentConfig& config, std::size_t min_n) {
  if (config.n_values.front() < min_n) {
    throw InvalidInput(config.experiment + " needs n >= " + std::to_string(min_n));
  }
}

void require_max_n(const ExperimentConfig& config, std::size_t max_n, bool capacity) {
  if (config.n_values.back() > max_n) {
    const std::string msg = config.experiment + " supports n <= " + std::to_string(max_n);
    if (capacity) throw CapacityError(msg);
    throw InvalidInput(msg);
  }
}

Automaton sample_binary(std::size_t n, Rng& rng) {
  return sample_uniform_automaton(n, 2, rng);
}

// Fraction of a 0/1 quantity, counting trials that did not record it as 0.
double fraction(const ExperimentResult& r, std::size_t n, const std::string& quantity) {
  if (!r.summary.has(n, quantity)) return 0.0;
  const auto& s = r.summary.at(n, quantity);
  return s.mean * static_cast<double>(s.count) / static_cast<double>(r.config.trials_at(n));
}

}  // namespace

ExperimentResult run_theorem1(const ExperimentConfig& config) {
  require_min_n(config, 100);
  ExperimentResult r = begin(config, [](std::size_t n, std::size_t, Rng& rng) {
    return measure_theorem1(sample_binary(n, rng));
  });
  const double low = threshold(r, "ratio_low", 0.3);
  const double high = threshold(r, "ratio_high", 1.15);
  std::size_t below_cyclic = 0;
  for (const auto& rec : r.records) {
    if (rec.values[0].second < rec.values[1].second) ++below_cyclic;
  }
  add(r, "image_contains_cycles", below_cyclic == 0,
      std::to_string(below_cyclic) + " trials with |A| below the cyclic-state count");
  for (std::size_t n : config.n_values) {
    const double scale = std::sqrt(2.0 * std::numbers::pi * static_cast<double>(n));
    const double ratio = r.summary.at(n, "image_size").mean / scale;
    r.derived["ratio_to_sqrt_2pi_n"][std::to_string(n)] = ratio;
    add(r, "ratio_band_n" + std::to_string(n), ratio > low && ratio < high,
        "mean|A|/sqrt(2 pi n) = " + fmt(ratio) + " in (" + fmt(low) + ", " + fmt(high) + ")");
  }
  return r;
}

ExperimentResult run_theorem2(const ExperimentConfig& config) {
  require_min_n(config, 100);
  ExperimentResult r = begin(config, [](std::size_t n, std::size_t, Rng& rng) {
    return measure_theorem2(sample_binary(n, rng));
  });
  const double factor = threshold(r, "stability_factor", 2.0);
  std::vector<double> ratios;
  for (std::size_t n : config.n_values) {
    const double inter = r.summary.at(n, "image_interleaved").mean;
    const double unary = r.summary.at(n, "image_unary").mean;
    const double nn = static_cast<double>(n);
    const double ratio = inter / std::sqrt(nn / std::log2(nn));
    ratios.push_back(ratio);
    r.derived["ratio_to_sqrt_n_over_log2_n"][std::to_string(n)] = ratio;
    r.derived["interleaved_over_unary"][std::to_string(n)] = inter / unary;
    add(r, "interleaved_below_unary_n" + std::to_string(n), inter < unary,
        "mean interleaved " + fmt(inter) + " vs unary " + fmt(unary));
  }
  if (ratios.size() > 1) {
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    const double spread = *hi / *lo;
    r.derived["ratio_spread"] = spread;
    add(r, "ratio_stable", spread < factor,
        "max/min of mean|A|/sqrt(n/log2 n) = " + fmt(spread) + " < " + fmt(factor));
  }
  return r;
}

ExperimentResult run_theorem3(const ExperimentConfig& config) {
  require_min_n(config, 2);
  require_max_n(config, kPairTableLimit, true);
  const double bound_factor = config.overrides.value("bound_factor", 3.0);
  ExperimentResult r = begin(config, [&](std::size_t n, std::size_t, Rng& rng) {
    Measurements m = measure_theorem3(sample_binary(n, rng));
    const double bound = bound_factor * std::log2(static_cast<double>(n));
    const bool within = m.size() > 1 && m[1].second <= bound;
    m.emplace_back("within_bound", within ? 1.0 : 0.0);
    return m;
  });
  threshold(r, "bound_factor", 3.0);
  const double min_fraction = threshold(r, "min_fraction", 0.9);
  for (std::size_t n : config.n_values) {
    const double frac = fraction(r, n, "within_bound");
    r.derived["fraction_within_bound"][std::to_string(n)] = frac;
    r.derived["bound"][std::to_string(n)] = bound_factor * std::log2(static_cast<double>(n));
    add(r, "radius_within_bound_n" + std::to_string(n), frac >= min_fraction,
        "fraction with radius <= " + fmt(bound_factor) + " log2 n: " + fmt(frac) +
            " >= " + fmt(min_fraction));
  }
  return r;
}

ExperimentResult run_corollary(const ExperimentConfig& config) {
  require_min_n(config, 2);
  ExperimentResult r = begin(config, [](std::size_t n, std::size_t, Rng& rng) {
    return measure_corollary(sample_binary(n, rng));
  });
  const double min_sync = threshold(r, "min_sync_fraction", 0.9);
  const double slope_low = threshold(r, "slope_low", 0.4);
  const double slope_high = threshold(r, "slope_high", 0.65);

  std::size_t unverified = 0;
  for (const auto& rec : r.records) {
    for (const auto& [name, value] : rec.values) {
      if (name == "verified" && value != 1.0) ++unverified;
    }
  }
  add(r, "all_words_verified", unverified == 0,
      std::to_string(unverified) + " produced words failed verification");

  std::vector<double> xs, ys;
  for (std::size_t n : config.n_values) {
    const double frac = fraction(r, n, "synchronizable");
    r.derived["sync_fraction"][std::to_string(n)] = frac;
    add(r, "synchronizable_fraction_n" + std::to_string(n), frac >= min_sync,
        "fraction synchronized " + fmt(frac) + " >= " + fmt(min_sync));
    if (r.summary.has(n, "total_length")) {
      const double median = r.summary.at(n, "total_length").median;
      const double nn = static_cast<double>(n);
      r.derived["median_length"][std::to_string(n)] = median;
      r.derived["median_over_sqrt_n_log2_n"][std::to_string(n)] =
          median / std::sqrt(nn * std::log2(nn));
      xs.push_back(std::log(nn));
      ys.push_back(std::log(median));
    }
  }
  if (xs.size() > 1) {
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    const double slope = sxy / sxx;
    r.derived["loglog_slope"] = slope;
    add(r, "length_scaling_slope", slope >= slope_low && slope <= slope_high,
        "log-log slope of median length " + fmt(slope) + " in [" + fmt(slope_low) + ", " +
            fmt(slope_high) + "]");
  }
  return r;
}

namespace {

struct GridPoint {
  std::string vector;
  std::size_t ell;
  std::size_t k;
  std::string key() const {
    return vector + "_l" + std::to_string(ell) + "_k" + std::to_string(k);
  }
};

}  // namespace

ExperimentResult run_extinction_bound(const ExperimentConfig& config) {
  config.validate();
  require_max_n(config, 32, false);
  const auto& ov = config.overrides;
  const auto ells = ov.value("ells", std::vector<std::size_t>{1, 2, 3});
  const auto ks = ov.value("ks", std::vector<std::size_t>{0, 1, 2, 3, 4});
  const auto vectors = ov.value("vectors", std::vector<std::string>{"uniform", "random"});
  if (ells.empty() || ks.empty() || vectors.empty()) throw InvalidInput("empty extinction grid");
  for (const auto& v : vectors) {
    if (v != "uniform" && v != "random") throw InvalidInput("unknown vector kind '" + v + "'");
  }
  for (std::size_t ell : ells) {
    if (ell == 0) throw InvalidInput("target set size must be positive");
  }
  const std::size_t max_k = *std::max_element(ks.begin(), ks.end());

  // One fixed probability vector per size and kind.
  std::map<std::size_t, std::map<std::string, ProbVector>> prob;
  for (std::size_t n : config.n_values) {
    if (n == 0) throw InvalidInput("vertex count must be positive");
    Rng rng(Seed{config.master_seed, n}.child(~std::uint64_t{0}));
    prob[n].emplace("uniform", ProbVector::uniform(n));
    prob[n].emplace("random", sample_simplex_point(n, rng));
  }

  ExperimentResult r = begin(config, [&](std::size_t n, std::size_t, Rng& rng) {
    Measurements m;
    for (const auto& kind : vectors) {
      const FunctionalGraph g = sample_one_out_digraph(prob.at(n).at(kind), rng);
      for (std::size_t ell : ells) {
        if (ell > n) continue;
        const auto dist = distance_to_set(g, sample_subset(n, ell, rng));
        std::vector<bool> present(max_k + 1, false);
        for (const auto& d : dist) {
          if (d && *d <= max_k) present[*d] = true;
        }
        for (std::size_t k : ks) {
          m.emplace_back(GridPoint{kind, ell, k}.key(), present[k] ? 0.0 : 1.0);
        }
      }
    }
    return m;
  });

  const double sigmas = threshold(r, "sigma", 3.0);
  const auto q = qk_sequence(max_k);
  nlohmann::json grid = nlohmann::json::array();
  std::size_t violations = 0;
  for (std::size_t n : config.n_values) {
    for (const auto& kind : vectors) {
      for (std::size_t ell : ells) {
        if (ell > n) continue;
        for (std::size_t k : ks) {
          const GridPoint point{kind, ell, k};
          const auto& s = r.summary.at(n, point.key());
          const double bound = std::pow(q[k], static_cast<double>(ell));
          const bool violated = s.mean < bound - sigmas * s.std_error;
          violations += violated;
          grid.push_back({{"n", n},
                          {"vector", kind},
                          {"ell", ell},
                          {"k", k},
                          {"estimate", s.mean},
                          {"stderr", s.std_error},
                          {"bound", bound},
                          {"violated", violated}});
        }
      }
    }
  }
  r.derived["grid"] = std::move(grid);
  r.derived["probability_vectors"] = nlohmann::json::object();
  for (const auto& [n, kinds] : prob) {
    r.derived["probability_vectors"][std::to_string(n)] = kinds.at("random").values();
  }
  add(r, "no_bound_violation", violations == 0,
      std::to_string(violations) + " grid points below q_k^l - " + fmt(sigmas) + " stderr");
  return r;
}

ExperimentResult run_uniform_maximizer(const ExperimentConfig& config) {
  config.validate();
  require_max_n(config, 6, false);
  if (config.n_values.front() == 0) throw InvalidInput("vertex count must be positive");
  ExperimentResult r = begin(config, [](std::size_t n, std::size_t, Rng& rng) {
    const double uniform = expected_cyclic_exact(ProbVector::uniform(n));
    const double challenger = expected_cyclic_exact(sample_simplex_point(n, rng));
    return Measurements{{"uniform", uniform}, {"challenger", challenger},
                        {"gap", uniform - challenger}};
  });
  const double tol = threshold(r, "gap_tolerance", 1e-12);
  for (std::size_t n : config.n_values) {
    const double worst = r.summary.at(n, "gap").min;
    r.derived["min_gap"][std::to_string(n)] = worst;
    add(r, "uniform_maximizes_n" + std::to_string(n), worst >= -tol,
        "smallest uniform-minus-challenger gap " + fmt(worst) + " >= -" + fmt(tol));
  }
  return r;
}

ExperimentResult run_shortest_reset_distribution(const ExperimentConfig& config) {
  config.validate();
  require_max_n(config, kExactResetLimit, true);
  if (config.n_values.front() == 0) throw InvalidInput("state count must be positive");
  ExperimentResult r = begin(config, [](std::size_t n, std::size_t, Rng& rng) {
    return measure_shortest_reset(sample_binary(n, rng));
  });
  for (std::size_t n : config.n_values) {
    r.derived["sync_fraction"][std::to_string(n)] = fraction(r, n, "synchronizable");
    if (r.summary.has(n, "length")) {
      const double min_len = r.summary.at(n, "length").min;
      const double floor_len = n > 1 ? 1.0 : 0.0;
      add(r, "lengths_consistent_n" + std::to_string(n), min_len >= floor_len,
          "shortest observed reset length " + fmt(min_len));
    }
  }
  return r;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const std::string& name = config.experiment;
  if (name == "theorem1") return run_theorem1(config);
  if (name == "theorem2") return run_theorem2(config);
  if (name == "theorem3") return run_theorem3(config);
  if (name == "corollary") return run_corollary(config);
  if (name == "extinction_bound") return run_extinction_bound(config);
  if (name == "uniform_maximizer") return run_uniform_maximizer(config);
  if (name == "shortest_reset") return run_shortest_reset_distribution(config);
  throw InvalidInput("unknown experiment '" + name + "'");
}

void write_outputs(const ExperimentResult& result) {
  if (!result.config.output_path.empty()) {
    std::ofstream out(result.config.output_path);
    if (!out) throw InvalidInput("cannot write " + result.config.output_path);
    write_csv(out, result.records);
  }
  if (!result.config.summary_path.empty()) {
    std::ofstream out(result.config.summary_path);
    if (!out) throw InvalidInput("cannot write " + result.config.summary_path);
    out << result.summary_json().dump(2) << '\n';
  }
}

}  // namespace synchrolab
