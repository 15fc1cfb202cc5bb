#pragma once

#include <cstddef>
#include <vector>

namespace sigdev {

// A word over the alphabet {1..d}: an ordered tuple of letters. The empty
// word denotes level 0 of the tensor algebra.
struct Word {
  std::vector<int> letters;
  int d = 1;

  Word() = default;
  Word(std::vector<int> ls, int dim) : letters(std::move(ls)), d(dim) {}

  int length() const { return static_cast<int>(letters.size()); }
  bool empty() const { return letters.empty(); }
  bool valid() const;

  bool operator==(const Word& o) const = default;
};

// Multiplicities, occurrence positions and the combinatorial constant of a
// word. positions[i-1] lists the 1-based locations where letter i occurs,
// in increasing order; c_w = prod_i multiplicity(i)!.
struct WordStats {
  std::vector<int> multiplicities;            // indexed by letter-1
  std::vector<std::vector<int>> positions;    // indexed by letter-1
  double c_w = 1.0;
};

WordStats word_stats(const Word& w);

// Word <-> flat index bijection inside a fixed level: base-d little-endian
// encoding of (letters - 1). Index 0 is (1,1,...,1).
std::size_t word_index(const Word& w);
Word word_from_index(std::size_t index, int length, int d);

// Number of words of a given length (d^length).
std::size_t level_size(int d, int length);

// All distinct rearrangements of w (the permutation class I ~ w),
// in lexicographic order.
std::vector<Word> permutation_class(const Word& w);

// All words of a given length over {1..d}, in index order.
std::vector<Word> all_words(int d, int length);

}  // namespace sigdev
