#include <algorithm>
#include <array>
#include <bit>
#include <memory>

#include "synchrolab/error.hpp"
#include "synchrolab/sync.hpp"

namespace synchrolab {

namespace {

struct Candidate {
  State x = 0;
  State y = 0;
  std::optional<std::uint32_t> distance;
  std::optional<Word> witness;
};

// Maps `members` through `w` and returns the sorted, deduplicated result.
std::vector<State> advance(const Automaton& aut, const std::vector<State>& members, const Word& w) {
  std::vector<State> out;
  out.reserve(members.size());
  for (State x : members) {
    for (Letter c : w) x = aut.next(x, c);
    out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <typename PickPair>
Word greedy_loop(const Automaton& aut, const StateSet& from, PickPair pick) {
  if (from.empty()) throw InvalidInput("greedy synchronization needs a nonempty set");
  if (from.universe() != aut.num_states()) {
    throw InvalidInput("state set universe does not match automaton");
  }
  std::vector<State> current = from.sorted();
  Word result;
  while (current.size() > 1) {
    Candidate best = pick(current);
    if (!best.distance) throw NotSynchronizable(current[0], current[1]);
    result.append(*best.witness);
    current = advance(aut, current, *best.witness);
  }
  return result;
}

}  // namespace

Word greedy_synchronize(const Automaton& aut, const StateSet& from,
                        const PairDistanceTable& table) {
  if (table.num_states() != aut.num_states()) {
    throw InvalidInput("pair table was built for a different automaton");
  }
  return greedy_loop(aut, from, [&](const std::vector<State>& current) {
    Candidate best;
    for (std::size_t i = 0; i < current.size(); ++i) {
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        const auto d = table.distance(current[i], current[j]);
        if (d && (!best.distance || *d < *best.distance)) {
          best.x = current[i];
          best.y = current[j];
          best.distance = d;
          if (*d == 1) break;
        }
      }
      if (best.distance == 1u) break;
    }
    if (best.distance) best.witness = table.witness(best.x, best.y);
    return best;
  });
}

Word greedy_synchronize(const Automaton& aut, const StateSet& from,
                        const GreedyOptions& options) {
  const std::size_t n = aut.num_states();
  if (n <= options.table_limit && from.size() > 1) {
    return greedy_synchronize(aut, from, PairDistanceTable(aut));
  }
  const std::uint32_t max_len = options.max_len ? options.max_len : default_pair_max_len(n);
  return greedy_loop(aut, from, [&](const std::vector<State>& current) {
    Candidate best;
    if (auto found = closest_pair_merge(aut, current, max_len)) {
      best = Candidate{found->x, found->y, found->distance, std::move(found->witness)};
    }
    return best;
  });
}

SyncReport two_phase_synchronize(const Automaton& aut, const GreedyOptions& options) {
  if (aut.num_letters() != 2) {
    throw InvalidInput("two-phase synchronization needs a two-letter alphabet, got " +
                       std::to_string(aut.num_letters()));
  }
  const std::size_t n = aut.num_states();
  if (n < 2) throw InvalidInput("two-phase synchronization needs n >= 2");

  SyncReport report;
  const Word prefix = phase1_word_interleaved(n);
  const StateSet reached = image(aut, prefix, StateSet::full(n));
  const Word suffix = greedy_synchronize(aut, reached, options);
  report.phase1_length = prefix.size();
  report.phase2_length = suffix.size();
  report.intermediate_image_size = reached.size();
  report.word = prefix + suffix;
  report.verified = is_reset_word(aut, report.word);
  return report;
}

std::optional<Word> exact_shortest_reset(const Automaton& aut) {
  const std::size_t n = aut.num_states();
  if (n > kExactResetLimit) {
    throw CapacityError("exact reset search over 2^" + std::to_string(n) +
                        " subsets exceeds limit of " + std::to_string(kExactResetLimit) +
                        " states");
  }
  if (n == 1) return Word{};
  const std::size_t k = aut.num_letters();
  if (k > 255) throw CapacityError("exact reset search supports at most 255 letters");
  using Mask = std::uint32_t;

  // chunk_image[c][j][b]: image under letter c of the states 8j..8j+7 selected by byte b.
  constexpr std::size_t kChunks = (kExactResetLimit + 7) / 8;
  std::vector<std::array<std::array<Mask, 256>, kChunks>> chunk_image(k);
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t j = 0; j < kChunks; ++j) {
      for (std::size_t b = 0; b < 256; ++b) {
        Mask m = 0;
        for (std::size_t bit = 0; bit < 8; ++bit) {
          const std::size_t x = 8 * j + bit;
          if (((b >> bit) & 1U) && x < n) {
            m |= Mask{1} << aut.next(static_cast<State>(x), static_cast<Letter>(c));
          }
        }
        chunk_image[c][j][b] = m;
      }
    }
  }
  auto step = [&](Mask s, std::size_t c) {
    Mask out = 0;
    for (std::size_t j = 0; s != 0; ++j, s >>= 8) out |= chunk_image[c][j][s & 0xFFU];
    return out;
  };

  const std::size_t subsets = std::size_t{1} << n;
  const Mask full = static_cast<Mask>(subsets - 1);
  // via[s] = 1 + letter that first reached s (0: unvisited); parent[s] its predecessor.
  std::vector<std::uint8_t> via(subsets, 0);
  std::vector<Mask> parent(subsets, 0);
  std::vector<Mask> queue{full};
  via[full] = 1;  // marks the root as visited; never followed back

  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Mask s = queue[head];
    for (std::size_t c = 0; c < k; ++c) {
      const Mask t = step(s, c);
      if (via[t]) continue;
      via[t] = static_cast<std::uint8_t>(c + 1);
      parent[t] = s;
      if (std::has_single_bit(t)) {
        std::vector<Letter> letters;
        for (Mask at = t; at != full; at = parent[at]) letters.push_back(via[at] - 1);
        std::reverse(letters.begin(), letters.end());
        return Word(std::move(letters));
      }
      queue.push_back(t);
    }
  }
  return std::nullopt;
}

}  // namespace synchrolab
