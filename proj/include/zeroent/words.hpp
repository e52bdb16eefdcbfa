#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "zeroent/matrix.hpp"

namespace zeroent {

/// A word in generators and their inverses: letter k > 0 stands for g_k,
/// letter -k for g_k^{-1} (1-based).
struct Word {
  std::vector<int> letters;

  std::size_t length() const noexcept { return letters.size(); }
  friend bool operator==(const Word&, const Word&) = default;
};

/// "g1 g2^-1", or "e" for the empty word.
std::string to_string(const Word& w);

Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
/// Group commutator a^-1 b^-1 a b.
Word commutator(const Word& a, const Word& b);

/// Generators together with their exact inverses; every generator must be unimodular.
class WordAlphabet {
 public:
  explicit WordAlphabet(std::vector<IntMatrix> generators);

  std::size_t size() const noexcept { return gens_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  const IntMatrix& letter(int k) const;
  IntMatrix evaluate(const Word& w) const;

 private:
  std::size_t dim_ = 0;
  std::vector<IntMatrix> gens_;
  std::vector<IntMatrix> invs_;
};

struct WordElement {
  Word word;
  IntMatrix matrix;
};

/// Breadth-first enumeration of distinct group elements reachable by words of
/// length <= max_length, identity first, letters in the order g1..gr then
/// g1^-1..gr^-1. Each element is visited once with a shortest word. The visitor
/// returns false to stop early; at most max_elements elements are visited.
/// Returns true if the ball was exhausted without stopping or hitting the cap.
bool for_each_word(const WordAlphabet& alphabet, std::size_t max_length, std::size_t max_elements,
                   const std::function<bool(const WordElement&)>& visit);

std::vector<WordElement> word_ball(const WordAlphabet& alphabet, std::size_t max_length,
                                   std::size_t max_elements);

}  // namespace zeroent
