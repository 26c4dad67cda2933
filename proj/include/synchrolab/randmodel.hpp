#pragma once

// Random automata, random 1-out digraphs and the quantities used to analyse
// them: cyclic vertices, distances to a set, the critical Poisson
// Galton-Watson extinction sequence and the exact cyclic-vertex expectation.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "synchrolab/core.hpp"
#include "synchrolab/rng.hpp"

namespace synchrolab {

/// Non-negative weights on vertices summing to 1 (within 1e-12).
class ProbVector {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit ProbVector(std::vector<double> p);
  static ProbVector uniform(std::size_t n);
  /// Accepts a JSON array of reals.
  static ProbVector from_json(std::string_view text);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t v) const { return p_[v]; }
  const std::vector<double>& values() const { return p_; }
  bool is_uniform() const;

 private:
  std::vector<double> p_;
};

/// A uniformly random point of the probability simplex on n vertices.
ProbVector sample_simplex_point(std::size_t n, Rng& rng);

/// Digraph with exactly one out-edge per vertex.
class FunctionalGraph {
 public:
  explicit FunctionalGraph(std::vector<State> succ);
  static FunctionalGraph from_letter(const Automaton& aut, Letter c);

  std::size_t size() const { return succ_.size(); }
  State succ(State v) const { return succ_[v]; }
  const std::vector<State>& successors() const { return succ_; }
  /// A one-letter automaton with the same transitions ("dfa v1" with k = 1).
  Automaton as_automaton() const;

  bool operator==(const FunctionalGraph&) const = default;

 private:
  std::vector<State> succ_;
};

/// Each of the n·k transitions independently uniform on [0, n). Letters are
/// drawn in order, each as n uniform successors.
Automaton sample_uniform_automaton(std::size_t n, std::size_t k, Seed seed);
Automaton sample_uniform_automaton(std::size_t n, std::size_t k, Rng& rng);
/// Each vertex's successor drawn independently from p. For the uniform vector
/// this is the same draw as one letter of sample_uniform_automaton.
FunctionalGraph sample_one_out_digraph(const ProbVector& p, Seed seed);
FunctionalGraph sample_one_out_digraph(const ProbVector& p, Rng& rng);

/// Vertices on a directed cycle, found in O(n).
StateSet cyclic_states(const FunctionalGraph& g);

/// prod_{i=1}^{t-1} (1 - i/n): probability that a uniform successor walk has
/// not revisited a vertex after t steps. 1 for t <= 1, 0 for t > n.
double survival_probability(std::size_t n, std::size_t t);

/// Exact E|cyclic_states| for sample_one_out_digraph(p), as the sum over
/// nonempty vertex subsets C of |C|! prod_{y in C} p_y. Enumerates subsets;
/// throws CapacityError above kMaxExactCyclicVertices.
inline constexpr std::size_t kMaxExactCyclicVertices = 25;
double expected_cyclic_exact(const ProbVector& p);
/// Same quantity via elementary symmetric polynomials, sum_j j! e_j(p), in
/// O(n^2) for any size.
double expected_cyclic_symmetric(const ProbVector& p);

/// q_0 = 0, q_{k+1} = exp(-(1 - q_k)): extinction of a Poisson(1)
/// Galton-Watson tree before generation k.
std::vector<double> qk_sequence(std::size_t max_k);

/// Whether (1 - (a/b) x)^(b-a) >= exp(-a x). Requires a <= b and x in (0, 1].
bool check_bernoulli_inequality(std::uint64_t a, std::uint64_t b, double x);

/// Shortest-path length from every vertex to the set S (nullopt when S is
/// unreachable), by breadth-first search over reversed edges.
std::vector<std::optional<std::uint32_t>> distance_to_set(const FunctionalGraph& g,
                                                          const StateSet& targets);

/// Uniform `size`-subset of [0, n).
StateSet sample_subset(std::size_t n, std::size_t size, Rng& rng);

}  // namespace synchrolab
