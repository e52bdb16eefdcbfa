#include "zeroent/words.hpp"

#include <map>

#include "zeroent/errors.hpp"
#include "zeroent/linalg.hpp"

namespace zeroent {

std::string to_string(const Word& w) {
  if (w.letters.empty()) return "e";
  std::string s;
  for (int k : w.letters) {
    if (!s.empty()) s += " ";
    s += "g" + std::to_string(k > 0 ? k : -k);
    if (k < 0) s += "^-1";
  }
  return s;
}

Word inverse(const Word& w) {
  Word out;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) out.letters.push_back(-*it);
  return out;
}

Word concat(const Word& a, const Word& b) {
  Word out = a;
  for (int k : b.letters) {
    if (!out.letters.empty() && out.letters.back() == -k)
      out.letters.pop_back();
    else
      out.letters.push_back(k);
  }
  return out;
}

Word commutator(const Word& a, const Word& b) { return concat(concat(inverse(a), inverse(b)), concat(a, b)); }

WordAlphabet::WordAlphabet(std::vector<IntMatrix> generators) : gens_(std::move(generators)) {
  if (gens_.empty()) return;
  dim_ = gens_.front().dim();
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (gens_[i].dim() != dim_)
      throw PreconditionError("generator " + std::to_string(i + 1) + " has the wrong dimension");
    invs_.push_back(unimodular_inverse(gens_[i]));
  }
}

const IntMatrix& WordAlphabet::letter(int k) const {
  std::size_t i = static_cast<std::size_t>(k > 0 ? k : -k) - 1;
  if (k == 0 || i >= gens_.size()) throw PreconditionError("word letter out of range");
  return k > 0 ? gens_[i] : invs_[i];
}

IntMatrix WordAlphabet::evaluate(const Word& w) const {
  IntMatrix m = IntMatrix::identity(dim_);
  for (int k : w.letters) m = m * letter(k);
  return m;
}

bool for_each_word(const WordAlphabet& alphabet, std::size_t max_length, std::size_t max_elements,
                   const std::function<bool(const WordElement&)>& visit) {
  std::vector<int> letters;
  for (std::size_t i = 1; i <= alphabet.size(); ++i) letters.push_back(static_cast<int>(i));
  for (std::size_t i = 1; i <= alphabet.size(); ++i) letters.push_back(-static_cast<int>(i));

  using Key = std::vector<Integer>;
  auto key = [](const IntMatrix& m) { return Key(m.entries().begin(), m.entries().end()); };
  std::map<Key, bool> seen;
  std::vector<WordElement> frontier{{Word{}, IntMatrix::identity(alphabet.dim())}};
  seen.emplace(key(frontier.front().matrix), true);
  std::size_t visited = 0;
  for (std::size_t len = 0;; ++len) {
    for (const auto& e : frontier) {
      if (visited == max_elements) return false;
      ++visited;
      if (!visit(e)) return false;
    }
    if (len == max_length) return true;
    std::vector<WordElement> next;
    for (const auto& e : frontier)
      for (int k : letters) {
        if (!e.word.letters.empty() && e.word.letters.back() == -k) continue;
        IntMatrix m = e.matrix * alphabet.letter(k);
        if (!seen.emplace(key(m), true).second) continue;
        Word w = e.word;
        w.letters.push_back(k);
        next.push_back({std::move(w), std::move(m)});
      }
    if (next.empty()) return true;
    frontier = std::move(next);
  }
}

std::vector<WordElement> word_ball(const WordAlphabet& alphabet, std::size_t max_length,
                                   std::size_t max_elements) {
  std::vector<WordElement> out;
  for_each_word(alphabet, max_length, max_elements, [&](const WordElement& e) {
    out.push_back(e);
    return true;
  });
  return out;
}

}  // namespace zeroent
