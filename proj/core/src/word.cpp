#include "sigdev/word.hpp"

#include <algorithm>

namespace sigdev {

bool Word::valid() const {
  if (d < 1) return false;
  return std::all_of(letters.begin(), letters.end(),
                     [this](int l) { return l >= 1 && l <= d; });
}

WordStats word_stats(const Word& w) {
  WordStats s;
  s.multiplicities.assign(w.d, 0);
  s.positions.assign(w.d, {});
  for (int pos = 0; pos < w.length(); ++pos) {
    const int letter = w.letters[pos];
    ++s.multiplicities[letter - 1];
    s.positions[letter - 1].push_back(pos + 1);
  }
  s.c_w = 1.0;
  for (int r : s.multiplicities)
    for (int t = 2; t <= r; ++t) s.c_w *= t;
  return s;
}

std::size_t word_index(const Word& w) {
  std::size_t idx = 0;
  std::size_t stride = 1;
  for (int l : w.letters) {
    idx += static_cast<std::size_t>(l - 1) * stride;
    stride *= static_cast<std::size_t>(w.d);
  }
  return idx;
}

Word word_from_index(std::size_t index, int length, int d) {
  Word w;
  w.d = d;
  w.letters.resize(length);
  for (int i = 0; i < length; ++i) {
    w.letters[i] = static_cast<int>(index % d) + 1;
    index /= d;
  }
  return w;
}

std::size_t level_size(int d, int length) {
  std::size_t n = 1;
  for (int i = 0; i < length; ++i) n *= static_cast<std::size_t>(d);
  return n;
}

std::vector<Word> permutation_class(const Word& w) {
  std::vector<int> letters = w.letters;
  std::sort(letters.begin(), letters.end());
  std::vector<Word> out;
  do {
    out.push_back(Word(letters, w.d));
  } while (std::next_permutation(letters.begin(), letters.end()));
  return out;
}

std::vector<Word> all_words(int d, int length) {
  std::vector<Word> out;
  const std::size_t n = level_size(d, length);
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(word_from_index(i, length, d));
  return out;
}

}  // namespace sigdev
