#pragma once

// Deterministic finite automata over a small alphabet: transition tables,
// words, state sets and their images.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace synchrolab {

using State = std::uint32_t;
using Letter = std::uint32_t;

/// A finite sequence of letters. Textually, letter 0 is 'a', 1 is 'b', ...
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}

  /// Parses a letter string such as "abba". Throws InvalidInput on
  /// characters outside 'a'..'z'.
  static Word parse(std::string_view text);
  static Word repeat(Letter letter, std::size_t count);

  std::string to_string() const;

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  std::span<const Letter> letters() const { return letters_; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  void push_back(Letter letter) { letters_.push_back(letter); }
  void append(const Word& other);
  Word operator+(const Word& other) const;
  std::size_t count(Letter letter) const;

  bool operator==(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

/// Complete deterministic automaton on states [0, n) with letters [0, k).
/// Immutable after construction.
class Automaton {
 public:
  /// `rows[x][c]` is the target of state x under letter c.
  static Automaton from_rows(const std::vector<std::vector<State>>& rows);
  /// `maps[c][x]` is the target of state x under letter c.
  static Automaton from_letter_maps(std::vector<std::vector<State>> maps);

  std::size_t num_states() const { return n_; }
  std::size_t num_letters() const { return k_; }

  State next(State x, Letter c) const { return table_[c * n_ + x]; }
  /// The whole map of one letter, indexed by state.
  std::span<const State> letter_map(Letter c) const {
    return {table_.data() + c * n_, n_};
  }

  /// Throws InvalidInput if x is not a state or a letter of w is out of range.
  void check_state(State x) const;
  void check_word(const Word& w) const;

  bool operator==(const Automaton&) const = default;

 private:
  Automaton(std::size_t n, std::size_t k, std::vector<State> table)
      : n_(n), k_(k), table_(std::move(table)) {}

  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<State> table_;  // letter-major: table_[c * n + x]
};

/// Default cut-over between the dense and sorted-list StateSet layouts.
inline constexpr std::size_t kDenseStateSetLimit = std::size_t{1} << 24;

/// Subset of [0, n). Up to `dense_limit` states it keeps a membership bitmap
/// next to an insertion-ordered element list; above that, a sorted list.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(std::size_t universe,
                    std::size_t dense_limit = kDenseStateSetLimit);

  static StateSet full(std::size_t universe,
                       std::size_t dense_limit = kDenseStateSetLimit);
  static StateSet of(std::size_t universe, std::span<const State> members,
                     std::size_t dense_limit = kDenseStateSetLimit);
  static StateSet of(std::size_t universe, std::initializer_list<State> members) {
    return of(universe, std::span<const State>(members.begin(), members.size()));
  }

  /// Returns false if x was already present. Throws InvalidInput if x is
  /// outside the universe.
  bool insert(State x);
  bool contains(State x) const;

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::size_t universe() const { return universe_; }
  bool is_dense() const { return dense_; }

  /// Members in an unspecified but deterministic order.
  std::span<const State> members() const { return members_; }
  std::vector<State> sorted() const;

  friend bool operator==(const StateSet& a, const StateSet& b);

 private:
  std::size_t universe_ = 0;
  bool dense_ = true;
  std::vector<std::uint64_t> bits_;
  std::vector<State> members_;
};

State apply_word(const Automaton& aut, const Word& w, State x);
StateSet image(const Automaton& aut, const Word& w, const StateSet& from);
bool is_reset_word(const Automaton& aut, const Word& w);
/// image(aut, letter^steps, from), evaluated one shrinking set at a time.
StateSet iterate_unary_image(const Automaton& aut, Letter letter,
                             std::size_t steps, const StateSet& from);

/// The Cerny automaton C_n: 'a' shifts i to i+1 mod n, 'b' sends 0 to 1 and
/// fixes every other state. Its shortest reset word has length (n-1)^2.
Automaton cerny_automaton(std::size_t n);

/// "dfa v1" text format: a header `dfa v1 <n> <k>` followed by one line per
/// state listing its k targets.
void write_dfa(std::ostream& out, const Automaton& aut);
Automaton read_dfa(std::istream& in);
Automaton load_dfa(const std::string& path);
void save_dfa(const std::string& path, const Automaton& aut);

}  // namespace synchrolab
