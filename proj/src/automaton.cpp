#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "synchrolab/core.hpp"
#include "synchrolab/error.hpp"

namespace synchrolab {

Automaton Automaton::from_rows(const std::vector<std::vector<State>>& rows) {
  if (rows.empty()) throw InvalidInput("automaton needs at least one state");
  const std::size_t n = rows.size();
  const std::size_t k = rows.front().size();
  std::vector<std::vector<State>> maps(k, std::vector<State>(n));
  for (std::size_t x = 0; x < n; ++x) {
    if (rows[x].size() != k) {
      throw InvalidInput("state " + std::to_string(x) + " has " +
                         std::to_string(rows[x].size()) + " transitions, expected " +
                         std::to_string(k));
    }
    for (std::size_t c = 0; c < k; ++c) maps[c][x] = rows[x][c];
  }
  return from_letter_maps(std::move(maps));
}

Automaton Automaton::from_letter_maps(std::vector<std::vector<State>> maps) {
  if (maps.empty()) throw InvalidInput("automaton needs at least one letter");
  const std::size_t n = maps.front().size();
  if (n == 0) throw InvalidInput("automaton needs at least one state");
  std::vector<State> table;
  table.reserve(n * maps.size());
  for (const auto& map : maps) {
    if (map.size() != n) throw InvalidInput("letter maps differ in length");
    for (State target : map) {
      if (target >= n) {
        throw InvalidInput("transition target " + std::to_string(target) +
                           " is not a state");
      }
    }
    table.insert(table.end(), map.begin(), map.end());
  }
  return Automaton(n, maps.size(), std::move(table));
}

void Automaton::check_state(State x) const {
  if (x >= n_) {
    throw InvalidInput("state " + std::to_string(x) + " out of range for " +
                       std::to_string(n_) + " states");
  }
}

void Automaton::check_word(const Word& w) const {
  for (Letter c : w) {
    if (c >= k_) {
      throw InvalidInput("letter " + std::to_string(c) + " out of range for " +
                         std::to_string(k_) + " letters");
    }
  }
}

State apply_word(const Automaton& aut, const Word& w, State x) {
  aut.check_state(x);
  aut.check_word(w);
  for (Letter c : w) x = aut.next(x, c);
  return x;
}

namespace {

// Rewrites `current` to its image under each letter in turn. `marks` must be
// all-zero on entry and is all-zero again on return.
void shrink_through(const Automaton& aut, std::span<const Letter> letters,
                    std::vector<State>& current, std::vector<std::uint8_t>& marks) {
  std::vector<State> next;
  next.reserve(current.size());
  for (Letter c : letters) {
    const auto map = aut.letter_map(c);
    next.clear();
    for (State x : current) {
      const State y = map[x];
      if (!marks[y]) {
        marks[y] = 1;
        next.push_back(y);
      }
    }
    for (State y : next) marks[y] = 0;
    current.swap(next);
  }
}

StateSet to_state_set(const StateSet& like, const std::vector<State>& members) {
  StateSet out(like.universe(), like.is_dense() ? like.universe() : 0);
  for (State x : members) out.insert(x);
  return out;
}

}  // namespace

StateSet image(const Automaton& aut, const Word& w, const StateSet& from) {
  aut.check_word(w);
  if (from.universe() != aut.num_states()) {
    throw InvalidInput("state set universe does not match automaton");
  }
  std::vector<State> current(from.members().begin(), from.members().end());
  std::vector<std::uint8_t> marks(aut.num_states(), 0);
  shrink_through(aut, w.letters(), current, marks);
  return to_state_set(from, current);
}

bool is_reset_word(const Automaton& aut, const Word& w) {
  return image(aut, w, StateSet::full(aut.num_states())).size() == 1;
}

StateSet iterate_unary_image(const Automaton& aut, Letter letter,
                             std::size_t steps, const StateSet& from) {
  if (letter >= aut.num_letters()) {
    throw InvalidInput("letter " + std::to_string(letter) + " out of range");
  }
  if (from.universe() != aut.num_states()) {
    throw InvalidInput("state set universe does not match automaton");
  }
  const auto map = aut.letter_map(letter);
  std::vector<State> current(from.members().begin(), from.members().end());
  std::vector<State> next;
  next.reserve(current.size());
  std::vector<std::uint8_t> marks(aut.num_states(), 0);
  for (std::size_t t = 0; t < steps; ++t) {
    next.clear();
    for (State x : current) {
      const State y = map[x];
      if (!marks[y]) {
        marks[y] = 1;
        next.push_back(y);
      }
    }
    for (State y : next) marks[y] = 0;
    const bool stable = next.size() == current.size() &&
                        std::equal(next.begin(), next.end(), current.begin());
    current.swap(next);
    if (stable) break;  // f(A) = A pointwise in order; further steps are identity
  }
  return to_state_set(from, current);
}

Automaton cerny_automaton(std::size_t n) {
  if (n == 0) throw InvalidInput("Cerny automaton needs n >= 1");
  std::vector<State> shift(n), merge(n);
  for (std::size_t i = 0; i < n; ++i) {
    shift[i] = static_cast<State>((i + 1) % n);
    merge[i] = static_cast<State>(i);
  }
  if (n > 1) merge[0] = 1;
  return Automaton::from_letter_maps({std::move(shift), std::move(merge)});
}

void write_dfa(std::ostream& out, const Automaton& aut) {
  const std::size_t n = aut.num_states();
  const std::size_t k = aut.num_letters();
  out << "dfa v1 " << n << ' ' << k << '\n';
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t c = 0; c < k; ++c) {
      if (c) out << ' ';
      out << aut.next(static_cast<State>(x), static_cast<Letter>(c));
    }
    out << '\n';
  }
}

Automaton read_dfa(std::istream& in) {
  std::string magic, version;
  long long n = 0, k = 0;
  if (!(in >> magic >> version >> n >> k) || magic != "dfa" || version != "v1") {
    throw InvalidInput("missing 'dfa v1 <n> <k>' header");
  }
  if (n <= 0 || k <= 0) throw InvalidInput("dfa header needs n >= 1 and k >= 1");
  std::vector<std::vector<State>> maps(static_cast<std::size_t>(k),
                                       std::vector<State>(static_cast<std::size_t>(n)));
  for (long long x = 0; x < n; ++x) {
    for (long long c = 0; c < k; ++c) {
      long long target = -1;
      if (!(in >> target)) {
        throw InvalidInput("dfa body truncated at state " + std::to_string(x));
      }
      if (target < 0 || target >= n) {
        throw InvalidInput("transition target " + std::to_string(target) +
                           " out of range at state " + std::to_string(x));
      }
      maps[c][x] = static_cast<State>(target);
    }
  }
  std::string extra;
  if (in >> extra) throw InvalidInput("trailing data after dfa body");
  return Automaton::from_letter_maps(std::move(maps));
}

Automaton load_dfa(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  return read_dfa(in);
}

void save_dfa(const std::string& path, const Automaton& aut) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  write_dfa(out, aut);
}

}  // namespace synchrolab
