#include <algorithm>

#include "synchrolab/core.hpp"
#include "synchrolab/error.hpp"

namespace synchrolab {

StateSet::StateSet(std::size_t universe, std::size_t dense_limit)
    : universe_(universe), dense_(universe <= dense_limit) {
  if (dense_) bits_.assign((universe + 63) / 64, 0);
}

StateSet StateSet::full(std::size_t universe, std::size_t dense_limit) {
  StateSet set(universe, dense_limit);
  set.members_.resize(universe);
  for (std::size_t x = 0; x < universe; ++x) set.members_[x] = static_cast<State>(x);
  if (set.dense_) {
    std::fill(set.bits_.begin(), set.bits_.end(), ~std::uint64_t{0});
    if (universe % 64 != 0) set.bits_.back() = (std::uint64_t{1} << (universe % 64)) - 1;
  }
  return set;
}

StateSet StateSet::of(std::size_t universe, std::span<const State> members,
                      std::size_t dense_limit) {
  StateSet set(universe, dense_limit);
  for (State x : members) set.insert(x);
  return set;
}

bool StateSet::insert(State x) {
  if (x >= universe_) {
    throw InvalidInput("state " + std::to_string(x) + " outside universe of size " +
                       std::to_string(universe_));
  }
  if (dense_) {
    std::uint64_t& word = bits_[x / 64];
    const std::uint64_t mask = std::uint64_t{1} << (x % 64);
    if (word & mask) return false;
    word |= mask;
    members_.push_back(x);
    return true;
  }
  auto pos = std::lower_bound(members_.begin(), members_.end(), x);
  if (pos != members_.end() && *pos == x) return false;
  members_.insert(pos, x);
  return true;
}

bool StateSet::contains(State x) const {
  if (x >= universe_) return false;
  if (dense_) return (bits_[x / 64] >> (x % 64)) & 1U;
  return std::binary_search(members_.begin(), members_.end(), x);
}

std::vector<State> StateSet::sorted() const {
  std::vector<State> out = members_;
  if (dense_) std::sort(out.begin(), out.end());
  return out;
}

bool operator==(const StateSet& a, const StateSet& b) {
  if (a.universe_ != b.universe_ || a.size() != b.size()) return false;
  return std::all_of(a.members_.begin(), a.members_.end(),
                     [&](State x) { return b.contains(x); });
}

}  // namespace synchrolab
