#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <absl/container/flat_hash_map.h>

#include "synchrolab/error.hpp"
#include "synchrolab/sync.hpp"

namespace synchrolab {

std::uint32_t default_pair_max_len(std::size_t n) {
  const double lg = n < 2 ? 0.0 : std::log2(static_cast<double>(n));
  return static_cast<std::uint32_t>(std::ceil(6.0 * lg)) + 8;
}

namespace {

using PairKey = std::uint64_t;

PairKey pack(State x, State y) {
  if (x > y) std::swap(x, y);
  return (static_cast<PairKey>(x) << 32) | y;
}
State first_of(PairKey key) { return static_cast<State>(key >> 32); }
State second_of(PairKey key) { return static_cast<State>(key & 0xFFFFFFFFULL); }

struct Visit {
  PairKey parent;
  Letter letter;
};

}  // namespace

PairDistanceResult pair_shortest_merge(const Automaton& aut, State x, State y) {
  return pair_shortest_merge(aut, x, y, default_pair_max_len(aut.num_states()));
}

PairDistanceResult pair_shortest_merge(const Automaton& aut, State x, State y,
                                       std::uint32_t max_len) {
  aut.check_state(x);
  aut.check_state(y);
  if (x == y) return {0, Word{}};
  const std::array<State, 2> members{std::min(x, y), std::max(x, y)};
  auto found = closest_pair_merge(aut, members, max_len);
  if (!found) return {};
  return {found->distance, std::move(found->witness)};
}

std::optional<PairMerge> closest_pair_merge(const Automaton& aut,
                                            std::span<const State> members,
                                            std::uint32_t max_len) {
  absl::flat_hash_map<PairKey, Visit> visited;
  std::vector<PairKey> frontier;
  for (std::size_t i = 0; i < members.size(); ++i) {
    aut.check_state(members[i]);
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (members[i] == members[j]) {
        return PairMerge{members[i], members[j], 0, Word{}};
      }
      const PairKey root = pack(members[i], members[j]);
      // A root is its own parent.
      if (visited.emplace(root, Visit{root, 0}).second) frontier.push_back(root);
    }
  }

  auto trace = [&](PairKey from, Letter last) {
    std::vector<Letter> letters{last};
    PairKey at = from;
    for (;;) {
      const Visit& v = visited.at(at);
      if (v.parent == at) break;
      letters.push_back(v.letter);
      at = v.parent;
    }
    std::reverse(letters.begin(), letters.end());
    const auto depth = static_cast<std::uint32_t>(letters.size());
    return PairMerge{first_of(at), second_of(at), depth, Word(std::move(letters))};
  };

  // Level by level; within a level, pairs stay grouped in root order, so the
  // first diagonal hit belongs to the smallest root at minimal distance.
  std::vector<PairKey> next;
  const auto k = static_cast<Letter>(aut.num_letters());
  for (std::uint32_t depth = 1; depth <= max_len && !frontier.empty(); ++depth) {
    next.clear();
    for (PairKey key : frontier) {
      const State u = first_of(key);
      const State v = second_of(key);
      for (Letter c = 0; c < k; ++c) {
        const State u2 = aut.next(u, c);
        const State v2 = aut.next(v, c);
        if (u2 == v2) return trace(key, c);
        const PairKey child = pack(u2, v2);
        if (visited.emplace(child, Visit{key, c}).second) {
          next.push_back(child);
          if (visited.size() > kPairSearchVisitLimit) {
            throw CapacityError("pair search visited more than " +
                                std::to_string(kPairSearchVisitLimit) + " pairs");
          }
        }
      }
    }
    frontier.swap(next);
  }
  return std::nullopt;
}

namespace {

// Reverse transitions of one letter in CSR form.
struct Preimages {
  std::vector<std::uint32_t> offset;
  std::vector<State> sources;

  std::span<const State> of(State y) const {
    return {sources.data() + offset[y], offset[y + 1] - offset[y]};
  }
};

Preimages build_preimages(std::span<const State> map) {
  const std::size_t n = map.size();
  Preimages pre;
  pre.offset.assign(n + 1, 0);
  for (State y : map) ++pre.offset[y + 1];
  std::partial_sum(pre.offset.begin(), pre.offset.end(), pre.offset.begin());
  pre.sources.resize(n);
  std::vector<std::uint32_t> fill(pre.offset.begin(), pre.offset.end() - 1);
  // Ascending x within each bucket, so x < y pairs come out ordered.
  for (std::size_t x = 0; x < n; ++x) pre.sources[fill[map[x]]++] = static_cast<State>(x);
  return pre;
}

std::pair<State, State> unpack_index(std::size_t i) {
  auto y = static_cast<std::size_t>((std::sqrt(8.0 * static_cast<double>(i) + 1.0) - 1.0) / 2.0);
  while (y * (y + 1) / 2 > i) --y;
  while ((y + 1) * (y + 2) / 2 <= i) ++y;
  return {static_cast<State>(i - y * (y + 1) / 2), static_cast<State>(y)};
}

// Fills `dist` (indexed by unordered pair, diagonal included) by backward
// search from the diagonal. Returns false if a distance does not fit in Dist.
template <typename Dist>
bool backward_search(const Automaton& aut, std::vector<Dist>& dist) {
  constexpr Dist kUnreached = std::numeric_limits<Dist>::max();
  const std::size_t n = aut.num_states();
  const std::size_t pairs = n * (n + 1) / 2;
  dist.assign(pairs, kUnreached);

  std::vector<Preimages> pre;
  for (Letter c = 0; c < aut.num_letters(); ++c) pre.push_back(build_preimages(aut.letter_map(c)));

  auto index = [](State x, State y) { return static_cast<std::size_t>(y) * (y + 1) / 2 + x; };

  std::vector<std::uint32_t> queue;
  queue.reserve(n);
  for (State x = 0; x < n; ++x) {
    dist[index(x, x)] = 0;
    queue.push_back(static_cast<std::uint32_t>(index(x, x)));
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto [u, v] = unpack_index(queue[head]);
    const Dist d = dist[queue[head]];
    if (d + 1 >= kUnreached) return false;
    const auto step = static_cast<Dist>(d + 1);
    for (const Preimages& p : pre) {
      const auto from_u = p.of(u);
      const auto from_v = p.of(v);
      for (State x : from_u) {
        for (State y : from_v) {
          if (u == v && x >= y) continue;
          const std::size_t i = x < y ? index(x, y) : index(y, x);
          if (dist[i] == kUnreached) {
            dist[i] = step;
            queue.push_back(static_cast<std::uint32_t>(i));
          }
        }
      }
    }
  }
  return true;
}

}  // namespace

PairDistanceTable::PairDistanceTable(const Automaton& aut) : aut_(aut), n_(aut.num_states()) {
  if (n_ > kPairTableLimit) {
    throw CapacityError("pair table for " + std::to_string(n_) + " states exceeds limit of " +
                        std::to_string(kPairTableLimit));
  }
  if (!backward_search(aut_, dist16_)) {
    dist16_.clear();
    dist16_.shrink_to_fit();
    backward_search(aut_, dist32_);
  }
}

std::uint32_t PairDistanceTable::raw(State x, State y) const {
  const std::size_t i = index(x, y);
  if (!dist16_.empty()) {
    const std::uint16_t d = dist16_[i];
    return d == std::numeric_limits<std::uint16_t>::max()
               ? std::numeric_limits<std::uint32_t>::max()
               : d;
  }
  return dist32_[i];
}

std::optional<std::uint32_t> PairDistanceTable::distance(State x, State y) const {
  aut_.check_state(x);
  aut_.check_state(y);
  const std::uint32_t d = raw(x, y);
  if (d == std::numeric_limits<std::uint32_t>::max()) return std::nullopt;
  return d;
}

std::optional<Word> PairDistanceTable::witness(State x, State y) const {
  auto d = distance(x, y);
  if (!d) return std::nullopt;
  Word w;
  for (std::uint32_t remaining = *d; remaining > 0; --remaining) {
    bool stepped = false;
    for (Letter c = 0; c < aut_.num_letters() && !stepped; ++c) {
      const State x2 = aut_.next(x, c);
      const State y2 = aut_.next(y, c);
      if (raw(x2, y2) == remaining - 1) {
        w.push_back(c);
        x = x2;
        y = y2;
        stepped = true;
      }
    }
    if (!stepped) throw Error("pair table is inconsistent");
  }
  return w;
}

std::optional<std::uint32_t> PairDistanceTable::radius() const {
  std::uint32_t best = 0;
  for (State y = 1; y < n_; ++y) {
    for (State x = 0; x < y; ++x) {
      const std::uint32_t d = raw(x, y);
      if (d == std::numeric_limits<std::uint32_t>::max()) return std::nullopt;
      best = std::max(best, d);
    }
  }
  return best;
}

std::optional<std::uint32_t> all_pairs_merge_radius(const Automaton& aut) {
  if (aut.num_states() < 2) throw InvalidInput("merge radius needs at least two states");
  return PairDistanceTable(aut).radius();
}

}  // namespace synchrolab
