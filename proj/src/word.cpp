#include "synchrolab/core.hpp"

#include <algorithm>

#include "synchrolab/error.hpp"

namespace synchrolab {

Word Word::parse(std::string_view text) {
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char ch : text) {
    if (ch < 'a' || ch > 'z') {
      throw InvalidInput(std::string("invalid letter '") + ch + "' in word");
    }
    letters.push_back(static_cast<Letter>(ch - 'a'));
  }
  return Word(std::move(letters));
}

Word Word::repeat(Letter letter, std::size_t count) {
  return Word(std::vector<Letter>(count, letter));
}

std::string Word::to_string() const {
  std::string text;
  text.reserve(letters_.size());
  for (Letter c : letters_) {
    if (c >= 26) {
      throw InvalidInput("letter " + std::to_string(c) +
                         " has no textual form");
    }
    text.push_back(static_cast<char>('a' + c));
  }
  return text;
}

void Word::append(const Word& other) {
  letters_.insert(letters_.end(), other.letters_.begin(), other.letters_.end());
}

Word Word::operator+(const Word& other) const {
  Word joined = *this;
  joined.append(other);
  return joined;
}

std::size_t Word::count(Letter letter) const {
  return static_cast<std::size_t>(
      std::count(letters_.begin(), letters_.end(), letter));
}

}  // namespace synchrolab
