#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "synchrolab/error.hpp"
#include "synchrolab/randmodel.hpp"
#include "synchrolab/sync.hpp"

using namespace synchrolab;

namespace {

std::size_t interleaved_length(std::size_t n) {
  const auto s = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  const auto r = static_cast<std::size_t>(std::ceil(std::sqrt(std::log2(static_cast<double>(n)))));
  return s + r * (s + 1);
}

// Largest forward distance over all pairs, or nullopt if one never merges.
std::optional<std::uint32_t> forward_radius(const Automaton& aut) {
  std::uint32_t best = 0;
  for (State x = 0; x < aut.num_states(); ++x) {
    for (State y = x + 1; y < aut.num_states(); ++y) {
      const auto r = pair_shortest_merge(aut, x, y, 1000);
      if (!r.distance) return std::nullopt;
      best = std::max(best, *r.distance);
    }
  }
  return best;
}

}  // namespace

TEST_CASE("unary phase-1 word") {
  CHECK(phase1_word_unary(2).to_string() == "aaa");
  CHECK(phase1_word_unary(100).size() == 43);
  for (std::size_t n = 2; n < 500; n += 7) {
    const Word w = phase1_word_unary(n);
    CHECK(w.size() >= 2);
    CHECK(w.count(kLetterA) == w.size());
  }
  CHECK_THROWS_AS(phase1_word_unary(1), InvalidInput);
}

TEST_CASE("interleaved phase-1 word") {
  CHECK(phase1_word_interleaved(16).to_string() == "aaaabaaaabaaaa");
  CHECK(phase1_word_interleaved(2).to_string() == "aabaa");
  CHECK(phase1_word_interleaved(1000).size() == 164);
  CHECK(phase1_word_interleaved(10000).size() == 504);
  CHECK(phase1_word_interleaved(100000).size() == 1907);
  for (std::size_t n = 2; n < 3000; n += 13) {
    const Word w = phase1_word_interleaved(n);
    CHECK(w.size() == interleaved_length(n));
    const auto r = static_cast<std::size_t>(std::ceil(std::sqrt(std::log2(static_cast<double>(n)))));
    CHECK(w.count(kLetterB) == r);
  }
  // Perfect squares sit exactly on the ceiling boundary.
  CHECK(phase1_word_interleaved(4).to_string() == "aabaabaa");
  CHECK(phase1_word_interleaved(10201).count(kLetterA) == 101 * 5);
  CHECK_THROWS_AS(phase1_word_interleaved(0), InvalidInput);
}

TEST_CASE("pair merge examples") {
  const auto perm = oracle::permutation_automaton(5);
  const auto constant = oracle::constant_automaton(5);
  CHECK(pair_shortest_merge(perm, 2, 2).distance == 0u);
  CHECK(pair_shortest_merge(perm, 2, 2).witness == Word{});
  CHECK_FALSE(pair_shortest_merge(perm, 0, 3).distance.has_value());
  CHECK_FALSE(pair_shortest_merge(perm, 0, 3).witness.has_value());
  const auto c = pair_shortest_merge(constant, 1, 4);
  CHECK(c.distance == 1u);
  CHECK(c.witness == Word::parse("a"));
  CHECK_THROWS_AS(pair_shortest_merge(perm, 0, 5), InvalidInput);

  // C_4: {1, 3} is the farthest pair; "a" takes it to {0, 2}, then "baaab".
  const auto c4 = cerny_automaton(4);
  CHECK(pair_shortest_merge(c4, 0, 2).distance == 5u);
  CHECK(pair_shortest_merge(c4, 0, 2).witness == Word::parse("baaab"));
  CHECK(pair_shortest_merge(c4, 1, 3).distance == 6u);
  // A cap below the true distance reports no merge.
  CHECK_FALSE(pair_shortest_merge(c4, 1, 3, 5).distance.has_value());
  CHECK(all_pairs_merge_radius(c4) == 6u);
}

TEST_CASE("pair distances are minimal against word enumeration") {
  Rng rng(Seed{31, 0});
  for (int rep = 0; rep < 150; ++rep) {
    const std::size_t n = 2 + rng.below(7);
    const auto aut = oracle::random_automaton(n, 2, rng);
    const auto maps = oracle::maps_of(aut);
    for (State x = 0; x < n; ++x) {
      for (State y = x + 1; y < n; ++y) {
        const auto got = pair_shortest_merge(aut, x, y, 6);
        const auto want = oracle::pair_distance(maps, x, y, 6);
        REQUIRE(got.distance.has_value() == want.has_value());
        if (!want) continue;
        CHECK(*got.distance == *want);
        REQUIRE(got.witness.has_value());
        CHECK(got.witness->size() == *want);
        CHECK(apply_word(aut, *got.witness, x) == apply_word(aut, *got.witness, y));
      }
    }
  }
}

TEST_CASE("closest pair merge picks the smallest pair at minimal distance") {
  Rng rng(Seed{32, 0});
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rng.below(15);
    const auto aut = oracle::random_automaton(n, 2, rng);
    std::vector<State> members;
    for (State x = 0; x < n; ++x) {
      if (rng.below(2)) members.push_back(x);
    }
    if (members.size() < 2) continue;
    std::optional<std::uint32_t> best;
    std::pair<State, State> best_pair;
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const auto d = pair_shortest_merge(aut, members[i], members[j], 40).distance;
        if (d && (!best || *d < *best)) {
          best = d;
          best_pair = {members[i], members[j]};
        }
      }
    }
    const auto got = closest_pair_merge(aut, members, 40);
    REQUIRE(got.has_value() == best.has_value());
    if (!got) continue;
    CHECK(got->distance == *best);
    CHECK(std::make_pair(got->x, got->y) == best_pair);
    CHECK(got->witness.size() == got->distance);
    CHECK(apply_word(aut, got->witness, got->x) == apply_word(aut, got->witness, got->y));
  }
}

TEST_CASE("pair table agrees with forward search for n <= 64") {
  Rng rng(Seed{33, 0});
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 2 + rng.below(63);
    const auto aut = oracle::random_automaton(n, 2, rng);
    const PairDistanceTable table(aut);
    for (State x = 0; x < n; ++x) {
      for (State y = x; y < n; ++y) {
        const auto fwd = pair_shortest_merge(aut, x, y, 1000);
        CHECK(table.distance(x, y) == fwd.distance);
        CHECK(table.distance(y, x) == fwd.distance);
        const auto w = table.witness(x, y);
        REQUIRE(w.has_value() == fwd.distance.has_value());
        if (w) {
          CHECK(w->size() == *fwd.distance);
          CHECK(apply_word(aut, *w, x) == apply_word(aut, *w, y));
        }
      }
    }
    CHECK(table.radius() == forward_radius(aut));
  }
}

TEST_CASE("merge radius examples and guards") {
  CHECK(all_pairs_merge_radius(oracle::constant_automaton(7)) == 1u);
  CHECK_FALSE(all_pairs_merge_radius(oracle::permutation_automaton(7)).has_value());
  CHECK_THROWS_AS(all_pairs_merge_radius(oracle::constant_automaton(1)), InvalidInput);
  CHECK_THROWS_AS(PairDistanceTable(oracle::constant_automaton(kPairTableLimit + 1)),
                  CapacityError);
}

TEST_CASE("radius on all sixteen two-state automata") {
  const auto all = oracle::all_automata(2, 2);
  REQUIRE(all.size() == 16);
  std::size_t mergeable = 0;
  for (const auto& aut : all) {
    const auto r = all_pairs_merge_radius(aut);
    CHECK(r == forward_radius(aut));
    const auto brute = oracle::pair_distance(oracle::maps_of(aut), 0, 1, 4);
    CHECK(r.has_value() == brute.has_value());
    if (r) {
      CHECK(*r == *brute);
      ++mergeable;
    }
  }
  // A pair on two states merges unless both letters are permutations.
  CHECK(mergeable == 16 - 4);
}

TEST_CASE("greedy synchronization examples") {
  const auto constant = oracle::constant_automaton(6);
  CHECK(greedy_synchronize(constant, StateSet::of(6, {3})) == Word{});
  CHECK(greedy_synchronize(constant, StateSet::full(6)) == Word::parse("a"));

  const auto c4 = cerny_automaton(4);
  const Word w = greedy_synchronize(c4, StateSet::full(4));
  CHECK(is_reset_word(c4, w));
  CHECK(w.size() >= 9);

  try {
    greedy_synchronize(oracle::permutation_automaton(4), StateSet::full(4));
    FAIL("expected NotSynchronizable");
  } catch (const NotSynchronizable& e) {
    CHECK(e.stuck_pair() == std::pair<std::uint32_t, std::uint32_t>{0, 1});
  }
  CHECK_THROWS_AS(greedy_synchronize(c4, StateSet(4)), InvalidInput);
  CHECK_THROWS_AS(greedy_synchronize(c4, StateSet::full(5)), InvalidInput);
}

TEST_CASE("greedy with a prebuilt table") {
  Rng rng(Seed{34, 0});
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 2 + rng.below(40);
    const auto aut = oracle::random_automaton(n, 2, rng);
    const PairDistanceTable table(aut);
    if (!table.radius()) {
      CHECK_THROWS_AS(greedy_synchronize(aut, StateSet::full(n), table), NotSynchronizable);
      CHECK_THROWS_AS(greedy_synchronize(aut, StateSet::full(n)), NotSynchronizable);
      continue;
    }
    const Word a = greedy_synchronize(aut, StateSet::full(n), table);
    const Word b = greedy_synchronize(aut, StateSet::full(n), GreedyOptions{1000, 0});
    const Word c = greedy_synchronize(aut, StateSet::full(n));
    CHECK(a == b);
    CHECK(is_reset_word(aut, a));
    CHECK(is_reset_word(aut, c));
  }
  CHECK_THROWS_AS(greedy_synchronize(cerny_automaton(4), StateSet::full(4),
                                     PairDistanceTable(cerny_automaton(5))),
                  InvalidInput);
}

TEST_CASE("two-phase synchronization") {
  const auto constant = oracle::constant_automaton(9);
  const SyncReport r = two_phase_synchronize(constant);
  CHECK(r.verified);
  CHECK(r.intermediate_image_size == 1);
  CHECK(r.phase2_length == 0);
  CHECK(r.phase1_length == phase1_word_interleaved(9).size());
  CHECK(r.word.size() == r.phase1_length + r.phase2_length);

  CHECK_THROWS_AS(two_phase_synchronize(oracle::permutation_automaton(6)), NotSynchronizable);
  CHECK_THROWS_AS(two_phase_synchronize(Automaton::from_letter_maps({{0, 0}})), InvalidInput);
  CHECK_THROWS_AS(two_phase_synchronize(oracle::constant_automaton(1)), InvalidInput);

  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto aut = sample_uniform_automaton(300, 2, Seed{35, s});
    try {
      const SyncReport rep = two_phase_synchronize(aut);
      CHECK(rep.verified);
      CHECK(is_reset_word(aut, rep.word));
      CHECK(rep.word.size() == rep.phase1_length + rep.phase2_length);
      CHECK(rep.intermediate_image_size ==
            image(aut, phase1_word_interleaved(300), StateSet::full(300)).size());
    } catch (const NotSynchronizable&) {
      CHECK_FALSE(all_pairs_merge_radius(aut).has_value());
    }
  }
}

TEST_CASE("exact shortest reset") {
  CHECK(exact_shortest_reset(oracle::constant_automaton(5)) == Word::parse("a"));
  CHECK(exact_shortest_reset(oracle::constant_automaton(1)) == Word{});
  CHECK_FALSE(exact_shortest_reset(oracle::permutation_automaton(5)).has_value());
  CHECK(exact_shortest_reset(cerny_automaton(3)) == Word::parse("baab"));
  CHECK(exact_shortest_reset(cerny_automaton(4)) == Word::parse("baaabaaab"));
  CHECK(exact_shortest_reset(cerny_automaton(5)) == Word::parse("baaaabaaaabaaaab"));
  for (std::size_t n = 2; n <= 8; ++n) {
    const auto w = exact_shortest_reset(cerny_automaton(n));
    REQUIRE(w.has_value());
    CHECK(w->size() == (n - 1) * (n - 1));
  }
  CHECK_THROWS_AS(exact_shortest_reset(oracle::constant_automaton(25)), CapacityError);
}

TEST_CASE("exact length matches word enumeration on small automata") {
  Rng rng(Seed{36, 0});
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 1 + rng.below(5);
    const auto aut = oracle::random_automaton(n, 2, rng);
    const auto maps = oracle::maps_of(aut);
    std::set<State> full;
    for (State x = 0; x < n; ++x) full.insert(x);
    std::optional<std::size_t> shortest;
    for (std::size_t len = 0; len <= 10 && !shortest; ++len) {
      for (const auto& w : oracle::all_words(2, len)) {
        if (oracle::image_of(maps, w, full).size() == 1) {
          shortest = len;
          break;
        }
      }
    }
    const auto got = exact_shortest_reset(aut);
    // Shortest reset words on n <= 5 states have length at most 16.
    if (shortest) {
      REQUIRE(got.has_value());
      CHECK(got->size() == *shortest);
      CHECK(is_reset_word(aut, *got));
    } else if (got) {
      CHECK(got->size() > 10);
    }
  }
}

TEST_CASE("radius <= exact <= greedy for n <= 12") {
  Rng rng(Seed{37, 0});
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rng.below(11);
    const auto aut = oracle::random_automaton(n, 2, rng);
    const auto radius = all_pairs_merge_radius(aut);
    const auto exact = exact_shortest_reset(aut);
    CHECK(radius.has_value() == exact.has_value());
    if (!exact) continue;
    CHECK(is_reset_word(aut, *exact));
    CHECK(*radius <= exact->size());
    const Word greedy = greedy_synchronize(aut, StateSet::full(n));
    CHECK(is_reset_word(aut, greedy));
    CHECK(exact->size() <= greedy.size());
  }
}
