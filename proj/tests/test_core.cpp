#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "synchrolab/core.hpp"
#include "synchrolab/error.hpp"
#include "synchrolab/rng.hpp"

using namespace synchrolab;

namespace {

// n=2: a swaps, b sends everything to 0.
Automaton swap_and_reset() { return Automaton::from_letter_maps({{1, 0}, {0, 0}}); }

// n=3 unary chain 0->1->2->2.
Automaton chain3() { return Automaton::from_letter_maps({{1, 2, 2}}); }

std::vector<State> members(const StateSet& s) { return s.sorted(); }

}  // namespace

TEST_CASE("word parsing and formatting") {
  CHECK(Word::parse("abba") == Word{0, 1, 1, 0});
  CHECK(Word::parse("").empty());
  CHECK(Word{0, 1, 2}.to_string() == "abc");
  CHECK(Word::repeat(1, 3).to_string() == "bbb");
  CHECK((Word::parse("ab") + Word::parse("ba")).to_string() == "abba");
  CHECK(Word::parse("aabab").count(0) == 3);
  CHECK_THROWS_AS(Word::parse("aB"), InvalidInput);
  CHECK_THROWS_AS(Word::parse("a b"), InvalidInput);
}

TEST_CASE("automaton construction rejects malformed tables") {
  CHECK_THROWS_AS(Automaton::from_letter_maps({}), InvalidInput);
  CHECK_THROWS_AS(Automaton::from_letter_maps({{}}), InvalidInput);
  CHECK_THROWS_AS(Automaton::from_letter_maps({{0, 2}}), InvalidInput);
  CHECK_THROWS_AS(Automaton::from_letter_maps({{0, 1}, {0}}), InvalidInput);
  CHECK_THROWS_AS(Automaton::from_rows({{0, 1}, {1}}), InvalidInput);

  const auto by_rows = Automaton::from_rows({{1, 0}, {0, 0}});
  CHECK(by_rows == swap_and_reset());
  CHECK(by_rows.num_states() == 2);
  CHECK(by_rows.num_letters() == 2);
}

TEST_CASE("apply_word") {
  const auto aut = swap_and_reset();
  CHECK(apply_word(aut, Word{}, 1) == 1);
  CHECK(apply_word(aut, Word::parse("ab"), 0) == 0);
  CHECK(apply_word(aut, Word::parse("a"), 0) == 1);
  CHECK(apply_word(cerny_automaton(4), Word::parse("a"), 3) == 0);

  CHECK_THROWS_AS(apply_word(aut, Word{}, 2), InvalidInput);
  CHECK_THROWS_AS(apply_word(aut, Word::parse("c"), 0), InvalidInput);
}

TEST_CASE("image") {
  const auto full3 = StateSet::full(3);
  CHECK(image(chain3(), Word{}, full3) == full3);
  CHECK(members(image(chain3(), Word::parse("aa"), full3)) == std::vector<State>{2});
  CHECK(members(image(oracle::constant_automaton(5), Word::parse("a"), StateSet::full(5))) ==
        std::vector<State>{0});
  CHECK_THROWS_AS(image(chain3(), Word::parse("b"), full3), InvalidInput);
  CHECK_THROWS_AS(image(chain3(), Word{}, StateSet::full(4)), InvalidInput);
}

TEST_CASE("is_reset_word") {
  CHECK(is_reset_word(oracle::constant_automaton(4), Word::parse("a")));
  CHECK_FALSE(is_reset_word(oracle::constant_automaton(4), Word{}));
  CHECK(is_reset_word(cerny_automaton(4), Word::parse("baaabaaab")));
  CHECK_FALSE(is_reset_word(cerny_automaton(4), Word::parse("baaabaaa")));
  const auto perm = oracle::permutation_automaton(5);
  for (const char* w : {"a", "ab", "bbb", "abababa"}) {
    CHECK_FALSE(is_reset_word(perm, Word::parse(w)));
  }
  CHECK(is_reset_word(oracle::constant_automaton(1), Word{}));
}

TEST_CASE("iterate_unary_image examples") {
  const auto full3 = StateSet::full(3);
  CHECK(members(iterate_unary_image(chain3(), 0, 1, full3)) == std::vector<State>{1, 2});
  CHECK(members(iterate_unary_image(chain3(), 0, 0, full3)) == std::vector<State>{0, 1, 2});

  const auto perm = oracle::permutation_automaton(6);
  CHECK(iterate_unary_image(perm, 1, 17, StateSet::full(6)) == StateSet::full(6));
  CHECK(iterate_unary_image(oracle::constant_automaton(6), 0, 3, StateSet::full(6)).size() == 1);
  CHECK_THROWS_AS(iterate_unary_image(chain3(), 1, 1, full3), InvalidInput);
}

TEST_CASE("state set layouts") {
  for (std::size_t limit : {std::size_t{0}, kDenseStateSetLimit}) {
    StateSet s(10, limit);
    CHECK(s.is_dense() == (limit != 0));
    CHECK(s.empty());
    CHECK(s.insert(7));
    CHECK(s.insert(2));
    CHECK_FALSE(s.insert(7));
    CHECK(s.size() == 2);
    CHECK(s.contains(2));
    CHECK_FALSE(s.contains(3));
    CHECK(s.sorted() == std::vector<State>{2, 7});
    CHECK_THROWS_AS(s.insert(10), InvalidInput);
  }
  // Equality ignores layout and insertion order.
  const std::vector<State> a{5, 1, 3}, b{3, 5, 1};
  CHECK(StateSet::of(8, a) == StateSet::of(8, b, 0));
  CHECK_FALSE(StateSet::of(8, a) == StateSet::of(9, a));
  CHECK(StateSet::full(4).size() == 4);
}

TEST_CASE("sparse layout gives the same images") {
  synchrolab::Rng rng(Seed{11, 0});
  for (int rep = 0; rep < 20; ++rep) {
    const auto aut = oracle::random_automaton(40, 2, rng);
    const auto w = Word::parse("abbaabab");
    CHECK(image(aut, w, StateSet::full(40)) == image(aut, w, StateSet::full(40, 0)));
    CHECK(iterate_unary_image(aut, 1, 9, StateSet::full(40, 0)) ==
          iterate_unary_image(aut, 1, 9, StateSet::full(40)));
  }
}

TEST_CASE("cerny automaton") {
  const auto c4 = cerny_automaton(4);
  CHECK(c4.letter_map(0)[3] == 0);
  CHECK(c4.letter_map(1)[0] == 1);
  for (State x = 1; x < 4; ++x) CHECK(c4.next(x, 1) == x);
  CHECK_THROWS_AS(cerny_automaton(0), InvalidInput);
}

TEST_CASE("dfa text format") {
  const auto aut = cerny_automaton(5);
  std::stringstream buf;
  write_dfa(buf, aut);
  CHECK(buf.str().rfind("dfa v1 5 2\n", 0) == 0);
  CHECK(read_dfa(buf) == aut);

  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_dfa(in);
  };
  CHECK(parse("dfa v1 2 1\n1\n0\n") == Automaton::from_letter_maps({{1, 0}}));
  CHECK_THROWS_AS(parse("dfa v2 2 1\n1\n0\n"), InvalidInput);
  CHECK_THROWS_AS(parse("dfa v1 2 1\n1\n"), InvalidInput);
  CHECK_THROWS_AS(parse("dfa v1 2 1\n1\n2\n"), InvalidInput);
  CHECK_THROWS_AS(parse("dfa v1 2 1\n1\n0\n0\n"), InvalidInput);
  CHECK_THROWS_AS(parse("dfa v1 0 1\n"), InvalidInput);
  CHECK_THROWS_AS(load_dfa("/nonexistent/x.dfa"), InvalidInput);
}

// Randomized properties against per-state application.

TEST_CASE("image agrees with per-state application") {
  synchrolab::Rng rng(Seed{3, 1});
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rng.below(30);
    const std::size_t k = 1 + rng.below(3);
    const auto aut = oracle::random_automaton(n, k, rng);
    const auto maps = oracle::maps_of(aut);
    std::vector<Letter> w(rng.below(12));
    for (auto& c : w) c = static_cast<Letter>(rng.below(k));
    std::set<State> from;
    std::vector<State> from_list;
    for (State x = 0; x < n; ++x) {
      if (rng.below(2)) {
        from.insert(x);
        from_list.push_back(x);
      }
    }
    const auto got = image(aut, Word(w), StateSet::of(n, from_list)).sorted();
    const auto want = oracle::image_of(maps, w, from);
    CHECK(got == std::vector<State>(want.begin(), want.end()));
    for (State x = 0; x < n; ++x) CHECK(apply_word(aut, Word(w), x) == oracle::run(maps, w, x));
  }
}

TEST_CASE("composition, monotonicity and reset closure") {
  synchrolab::Rng rng(Seed{3, 2});
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rng.below(12);
    const auto aut = oracle::random_automaton(n, 2, rng);
    auto random_word = [&] {
      Word w;
      for (std::size_t i = rng.below(10); i > 0; --i) w.push_back(static_cast<Letter>(rng.below(2)));
      return w;
    };
    const Word u = random_word(), v = random_word();
    for (State x = 0; x < n; ++x) {
      CHECK(apply_word(aut, u + v, x) == apply_word(aut, v, apply_word(aut, u, x)));
    }
    const auto full = StateSet::full(n);
    CHECK(image(aut, u + v, full).size() <= image(aut, u, full).size());
    if (is_reset_word(aut, u)) CHECK(is_reset_word(aut, u + v));
  }
}

TEST_CASE("iterate_unary_image agrees with image for t <= 50, n <= 100") {
  synchrolab::Rng rng(Seed{3, 3});
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 1 + rng.below(100);
    const auto aut = oracle::random_automaton(n, 2, rng);
    std::vector<State> from_list;
    for (State x = 0; x < n; ++x) {
      if (rng.below(3)) from_list.push_back(x);
    }
    const auto from = StateSet::of(n, from_list);
    const Letter c = static_cast<Letter>(rng.below(2));
    for (std::size_t t = 0; t <= 50; t += 1 + rng.below(7)) {
      CHECK(iterate_unary_image(aut, c, t, from) == image(aut, Word::repeat(c, t), from));
    }
  }
}
