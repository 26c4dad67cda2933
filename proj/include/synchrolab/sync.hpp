#pragma once

// Synchronizing-word construction: image-shrinking prefixes, pair merging in
// the pair automaton, greedy pairwise synchronization, the two-phase
// pipeline and an exact power-set oracle.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "synchrolab/core.hpp"

namespace synchrolab {

inline constexpr Letter kLetterA = 0;
inline constexpr Letter kLetterB = 1;

/// a^k with k = ceil(2 sqrt(n ln n)).
Word phase1_word_unary(std::size_t n);
/// a^s (b a^s)^r with s = ceil(sqrt n) and r = ceil(sqrt(log2 n)).
Word phase1_word_interleaved(std::size_t n);

struct PairDistanceResult {
  std::optional<std::uint32_t> distance;  // nullopt: no merge found
  std::optional<Word> witness;            // present iff distance is
};

/// Default search depth for forward pair search: ceil(6 log2 n) + 8.
std::uint32_t default_pair_max_len(std::size_t n);
/// Forward pair searches give up once this many pairs have been visited.
inline constexpr std::size_t kPairSearchVisitLimit = std::size_t{1} << 24;

/// Breadth-first search in the pair automaton from {x, y} until a diagonal
/// pair appears. Reports no merge if none exists within `max_len` letters or
/// the reachable pairs run out.
PairDistanceResult pair_shortest_merge(const Automaton& aut, State x, State y,
                                       std::uint32_t max_len);
PairDistanceResult pair_shortest_merge(const Automaton& aut, State x, State y);

struct PairMerge {
  State x = 0;
  State y = 0;
  std::uint32_t distance = 0;
  Word witness;
};

/// Among all pairs of distinct `members` (sorted ascending), the one with the
/// shortest merging word, ties going to the lexicographically smallest pair.
/// One breadth-first search runs from all pairs at once, sharing visited
/// pairs. nullopt if no pair merges within `max_len` letters.
std::optional<PairMerge> closest_pair_merge(const Automaton& aut,
                                            std::span<const State> members,
                                            std::uint32_t max_len);

/// Largest n for which the full pair-distance table is built.
inline constexpr std::size_t kPairTableLimit = 20000;

/// Merge distance of every unordered pair of states, built by one
/// multi-source backward search from the diagonal over the reversed pair
/// automaton. Read-only and shareable once built.
class PairDistanceTable {
 public:
  /// Throws CapacityError if n > kPairTableLimit.
  explicit PairDistanceTable(const Automaton& aut);

  std::size_t num_states() const { return n_; }
  std::optional<std::uint32_t> distance(State x, State y) const;
  /// A shortest merging word for {x, y}; the first letter (in alphabet order)
  /// that makes progress is taken at every step.
  std::optional<Word> witness(State x, State y) const;
  /// Maximum distance over all pairs, nullopt if some pair never merges.
  std::optional<std::uint32_t> radius() const;

 private:
  static std::size_t index(State x, State y) {
    if (x > y) std::swap(x, y);
    return static_cast<std::size_t>(y) * (y + 1) / 2 + x;
  }
  std::uint32_t raw(State x, State y) const;

  Automaton aut_;
  std::size_t n_;
  // Exactly one of these is populated: 16-bit distances unless some pair is
  // farther than 65534 from the diagonal.
  std::vector<std::uint16_t> dist16_;
  std::vector<std::uint32_t> dist32_;
};

/// max over unordered pairs of the merge distance; nullopt if some pair
/// cannot merge. Throws CapacityError above kPairTableLimit states.
std::optional<std::uint32_t> all_pairs_merge_radius(const Automaton& aut);

struct GreedyOptions {
  /// Build the backward pair table when n <= table_limit; otherwise pick
  /// pairs with closest_pair_merge. The table costs O(n^2) up front, which
  /// dominates whenever the set being synchronized is much smaller than n.
  std::size_t table_limit = 0;
  /// Forward search depth; 0 selects default_pair_max_len(n).
  std::uint32_t max_len = 0;
};

/// Repeatedly merges a closest pair of the current set (ties broken by the
/// lexicographically smallest pair) and maps the whole set through the
/// merging word, until one state remains. Throws NotSynchronizable naming a
/// pair that cannot be merged.
Word greedy_synchronize(const Automaton& aut, const StateSet& from,
                        const GreedyOptions& options = {});
/// Same, reusing a prebuilt table.
Word greedy_synchronize(const Automaton& aut, const StateSet& from,
                        const PairDistanceTable& table);

struct SyncReport {
  Word word;
  std::size_t phase1_length = 0;
  std::size_t phase2_length = 0;
  std::size_t intermediate_image_size = 0;  // |image of the phase-1 word|
  bool verified = false;
};

/// Interleaved phase-1 word followed by greedy synchronization of its image.
/// Requires a two-letter alphabet and n >= 2.
SyncReport two_phase_synchronize(const Automaton& aut, const GreedyOptions& options = {});

inline constexpr std::size_t kExactResetLimit = 24;

/// A minimum-length reset word by breadth-first search over subsets of the
/// state set, nullopt if the automaton is not synchronizable. Throws
/// CapacityError above kExactResetLimit states.
std::optional<Word> exact_shortest_reset(const Automaton& aut);

}  // namespace synchrolab
