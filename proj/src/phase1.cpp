#include <cmath>

#include "synchrolab/error.hpp"
#include "synchrolab/sync.hpp"

namespace synchrolab {

namespace {

std::size_t ceil_sqrt(std::size_t n) {
  auto s = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (s * s > n) --s;
  while (s * s < n) ++s;
  return s;
}

void require_two_states(std::size_t n) {
  if (n < 2) throw InvalidInput("phase-1 words need n >= 2, got " + std::to_string(n));
}

}  // namespace

Word phase1_word_unary(std::size_t n) {
  require_two_states(n);
  const double nn = static_cast<double>(n);
  const auto length = static_cast<std::size_t>(std::ceil(2.0 * std::sqrt(nn * std::log(nn))));
  return Word::repeat(kLetterA, length);
}

Word phase1_word_interleaved(std::size_t n) {
  require_two_states(n);
  const std::size_t block = ceil_sqrt(n);
  const auto rounds = static_cast<std::size_t>(
      std::ceil(std::sqrt(std::log2(static_cast<double>(n)))));
  const Word a_block = Word::repeat(kLetterA, block);
  Word w = a_block;
  for (std::size_t r = 0; r < rounds; ++r) {
    w.push_back(kLetterB);
    w.append(a_block);
  }
  return w;
}

}  // namespace synchrolab
