#pragma once

#include "guesscost/error.hpp"
#include "guesscost/word.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_set>

namespace guesscost {

/// Named, ordered set of distinct symbols. Symbol order is the enumeration order.
class Alphabet {
 public:
  Alphabet(std::string name, Word symbols) : name_(std::move(name)), symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw Error(ErrorKind::InvalidAlphabet, "alphabet '" + name_ + "' is empty");
    std::unordered_set<char32_t> seen;
    for (char32_t c : symbols_) {
      if (!seen.insert(c).second) {
        throw Error(ErrorKind::InvalidAlphabet,
                    "alphabet '" + name_ + "' repeats symbol '" + to_utf8(Word(1, c)) + "'");
      }
    }
  }

  const std::string& name() const noexcept { return name_; }
  const Word& symbols() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }

  bool contains(char32_t c) const { return symbols_.find(c) != Word::npos; }
  std::size_t index_of(char32_t c) const { return symbols_.find(c); }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::string name_;
  Word symbols_;
};

/// Symbols present in both alphabets.
inline std::size_t shared_symbol_count(const Alphabet& a, const Alphabet& b) {
  return static_cast<std::size_t>(
      std::count_if(a.symbols().begin(), a.symbols().end(), [&](char32_t c) { return b.contains(c); }));
}

inline std::optional<Alphabet> builtin_alphabet(const std::string& name) {
  auto range = [](char32_t lo, char32_t hi) {
    Word w;
    for (char32_t c = lo; c <= hi; ++c) w.push_back(c);
    return w;
  };
  if (name == "digits") return Alphabet(name, range(U'0', U'9'));
  if (name == "ascii-lower") return Alphabet(name, range(U'a', U'z'));
  if (name == "ascii-upper") return Alphabet(name, range(U'A', U'Z'));
  if (name == "ascii-printable") return Alphabet(name, range(0x20, 0x7E));
  return std::nullopt;
}

}  // namespace guesscost
