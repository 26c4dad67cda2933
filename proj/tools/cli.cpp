#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "synchrolab/error.hpp"
#include "synchrolab/experiments.hpp"
#include "synchrolab/randmodel.hpp"
#include "synchrolab/sync.hpp"

namespace synchrolab::cli {

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Automaton input_automaton(const std::string& in_path, std::optional<std::size_t> n,
                          std::uint64_t seed) {
  if (!in_path.empty()) return load_dfa(in_path);
  if (!n) throw InvalidInput("give --in <file> or --n <states>");
  return sample_uniform_automaton(*n, 2, Seed{seed, 0});
}

std::string format_distance(const std::optional<std::uint32_t>& d) {
  return d ? std::to_string(*d) : std::string("inf");
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synchronizing words in random automata"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Sample a uniform random automaton");
  std::size_t gen_n = 0, gen_k = 2;
  std::uint64_t gen_seed = 1;
  std::string gen_out = "-";
  gen->add_option("--n", gen_n, "Number of states")->required()->check(CLI::PositiveNumber);
  gen->add_option("--k", gen_k, "Alphabet size")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "Master seed");
  gen->add_option("--out", gen_out, "Output dfa file ('-' for stdout)");

  // sync
  auto* sync = app.add_subcommand("sync", "Two-phase synchronization, report as JSON");
  std::string sync_in;
  std::optional<std::size_t> sync_n;
  std::uint64_t sync_seed = 1;
  auto* sync_in_opt = sync->add_option("--in", sync_in, "Input dfa file");
  sync->add_option("--n", sync_n, "Sample a fresh automaton with this many states")
      ->excludes(sync_in_opt);
  sync->add_option("--seed", sync_seed, "Master seed for --n");

  // pairs
  auto* pairs = app.add_subcommand("pairs", "All-pairs merge radius");
  std::string pairs_in;
  pairs->add_option("--in", pairs_in, "Input dfa file")->required();

  // exact
  auto* exact = app.add_subcommand("exact", "Exact shortest reset word (n <= 24)");
  std::string exact_in;
  exact->add_option("--in", exact_in, "Input dfa file")->required();

  // cyclic
  auto* cyclic = app.add_subcommand("cyclic", "Cyclic-state count or exact expectation");
  std::string cyclic_in, cyclic_p;
  Letter cyclic_letter = 0;
  auto* cyclic_in_opt = cyclic->add_option("--in", cyclic_in, "Input dfa file");
  auto* cyclic_p_opt = cyclic->add_option(
      "--p-json", cyclic_p, "Probability vector as a JSON array, or a file containing one");
  cyclic_in_opt->excludes(cyclic_p_opt);
  cyclic->add_option("--letter", cyclic_letter, "Letter whose map is analysed")
      ->needs(cyclic_in_opt);

  // gw
  auto* gw = app.add_subcommand("gw", "Galton-Watson extinction sequence q_0..q_K");
  std::size_t gw_k = 0;
  gw->add_option("--K", gw_k, "Last index")->required();

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run a named Monte Carlo experiment");
  std::string exp_config, exp_out, exp_summary;
  std::size_t exp_threads = 0;
  experiment->add_option("--config", exp_config, "Experiment config JSON file")->required();
  experiment->add_option("--out", exp_out, "CSV path (overrides the config)");
  experiment->add_option("--summary", exp_summary, "Summary JSON path (overrides the config)");
  experiment->add_option("--threads", exp_threads, "Worker count (overrides the config)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return kInvalidInput;
  }

  try {
    if (*gen) {
      const Automaton aut = sample_uniform_automaton(gen_n, gen_k, Seed{gen_seed, 0});
      if (gen_out == "-") {
        write_dfa(out, aut);
      } else {
        save_dfa(gen_out, aut);
        out << "wrote " << gen_n << "-state automaton to " << gen_out << '\n';
      }
    } else if (*sync) {
      const Automaton aut = input_automaton(sync_in, sync_n, sync_seed);
      const SyncReport report = two_phase_synchronize(aut);
      nlohmann::json doc{{"n", aut.num_states()},
                         {"word", report.word.to_string()},
                         {"length", report.word.size()},
                         {"phase1_length", report.phase1_length},
                         {"phase2_length", report.phase2_length},
                         {"intermediate_image_size", report.intermediate_image_size},
                         {"verified", report.verified}};
      out << doc.dump() << '\n';
    } else if (*pairs) {
      const Automaton aut = load_dfa(pairs_in);
      const auto radius = all_pairs_merge_radius(aut);
      const double bound = 3.0 * std::log2(static_cast<double>(aut.num_states()));
      out << "n=" << aut.num_states() << " radius=" << format_distance(radius)
          << " bound_3log2n=" << bound << '\n';
    } else if (*exact) {
      const Automaton aut = load_dfa(exact_in);
      const auto word = exact_shortest_reset(aut);
      if (!word) {
        err << "not synchronizable: no subset sequence reaches a singleton\n";
        return kNotSynchronizable;
      }
      out << "length=" << word->size() << " word=" << word->to_string() << '\n';
    } else if (*cyclic) {
      if (!cyclic_p.empty()) {
        const std::string text =
            cyclic_p.find('[') != std::string::npos ? cyclic_p : read_text(cyclic_p);
        const ProbVector p = ProbVector::from_json(text);
        const double expected = p.size() <= kMaxExactCyclicVertices
                                    ? expected_cyclic_exact(p)
                                    : expected_cyclic_symmetric(p);
        out << std::setprecision(17) << "vertices=" << p.size()
            << " expected_cyclic=" << expected << '\n';
      } else if (!cyclic_in.empty()) {
        const Automaton aut = load_dfa(cyclic_in);
        const StateSet states = cyclic_states(FunctionalGraph::from_letter(aut, cyclic_letter));
        out << "n=" << aut.num_states() << " cyclic_states=" << states.size() << '\n';
      } else {
        throw InvalidInput("give --in <file> or --p-json <vector>");
      }
    } else if (*gw) {
      out << std::setprecision(10);
      for (double q : qk_sequence(gw_k)) out << q << '\n';
    } else if (*experiment) {
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(read_text(exp_config));
      } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("config is not valid JSON: ") + e.what());
      }
      ExperimentConfig config = ExperimentConfig::from_json(doc);
      if (!exp_out.empty()) config.output_path = exp_out;
      if (!exp_summary.empty()) config.summary_path = exp_summary;
      if (exp_threads) config.threads = exp_threads;
      const ExperimentResult result = run_experiment(config);
      write_outputs(result);
      for (const auto& v : result.verdicts) {
        out << (v.passed ? "PASS " : "FAIL ") << v.name << ": " << v.detail << '\n';
      }
      out << config.experiment << ": " << result.records.size() << " trials, "
          << (result.passed() ? "all checks passed" : "some checks failed") << '\n';
    }
  } catch (const NotSynchronizable& e) {
    const auto [x, y] = e.stuck_pair();
    err << "not synchronizable: stuck pair (" << x << ", " << y << ")\n";
    return kNotSynchronizable;
  } catch (const CapacityError& e) {
    err << "capacity exceeded: " << e.what() << '\n';
    return kCapacity;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kOk;
}

}  // namespace synchrolab::cli
