#pragma once

#include "guesscost/alphabet.hpp"
#include "guesscost/error.hpp"
#include "guesscost/mangle.hpp"
#include "guesscost/numeric.hpp"
#include "guesscost/word.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

namespace guesscost {

inline constexpr std::uint64_t kDefaultMaterializeCap = 10'000'000;

/// Duplicate-free, ordered list of words with O(1) membership.
class WordSource {
 public:
  enum class Ordering { File, Frequency };

  WordSource(std::string name, std::vector<Word> words, Ordering ordering = Ordering::File, std::string path = {})
      : name_(std::move(name)), path_(std::move(path)), ordering_(ordering), words_(std::move(words)) {
    index_.reserve(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i].empty()) throw Error(ErrorKind::Domain, "source '" + name_ + "' contains an empty word");
      if (!index_.emplace(words_[i], i).second) {
        throw Error(ErrorKind::DuplicateInInput,
                    "source '" + name_ + "' repeats word '" + to_utf8(words_[i]) + "'");
      }
      folded_[lowercase(words_[i])].push_back(i);
    }
  }

  const std::string& name() const noexcept { return name_; }
  const std::string& path() const noexcept { return path_; }
  Ordering ordering() const noexcept { return ordering_; }
  const std::vector<Word>& words() const noexcept { return words_; }
  std::size_t size() const noexcept { return words_.size(); }

  std::optional<std::size_t> index_of(const Word& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Word& w) const { return index_.count(w) != 0; }

  /// Indices of words equal to `w` up to ASCII case.
  std::span<const std::size_t> case_insensitive_matches(const Word& w) const {
    auto it = folded_.find(lowercase(w));
    if (it == folded_.end()) return {};
    return it->second;
  }

 private:
  std::string name_;
  std::string path_;
  Ordering ordering_;
  std::vector<Word> words_;
  std::unordered_map<Word, std::size_t> index_;
  std::unordered_map<Word, std::vector<std::size_t>> folded_;
};

using SourceRef = std::shared_ptr<const WordSource>;

inline SourceRef make_source(std::string name, std::vector<Word> words) {
  return std::make_shared<const WordSource>(std::move(name), std::move(words));
}

inline bool same_source(const SourceRef& a, const SourceRef& b) {
  return a == b || (a->name() == b->name() && a->words() == b->words());
}

struct ExhaustiveLayer {
  Alphabet alphabet;
  std::size_t min_len;
  std::size_t max_len;
};

struct WordListLayer {
  SourceRef source;
};

struct MangledLayer {
  SourceRef source;
  std::vector<MangleRule> rules;
  // Base indices grouped by variant_key, only for keys shared by several bases.
  std::shared_ptr<const std::unordered_map<Word, std::vector<std::size_t>>> shared_keys;
};

struct CombinedLayer {
  SourceRef source;
  std::size_t k;
  Word separator;
};

namespace detail {

/// Sardinas-Patterson test on the code {w + separator : w in words}.
inline bool uniquely_decodable(const std::vector<Word>& words, const Word& separator) {
  std::vector<Word> code;
  code.reserve(words.size());
  for (const Word& w : words) code.push_back(w + separator);
  std::sort(code.begin(), code.end());
  std::unordered_map<Word, char> members;
  members.reserve(code.size());
  for (const Word& c : code) members.emplace(c, 0);

  std::set<Word> seen;
  std::vector<Word> frontier;
  auto add = [&](Word x) {
    if (!x.empty() && seen.insert(x).second) frontier.push_back(std::move(x));
  };
  // Codewords that are proper prefixes of other codewords.
  for (const Word& c : code) {
    for (std::size_t len = 1; len < c.size(); ++len) {
      if (members.count(c.substr(0, len))) add(c.substr(len));
    }
  }
  while (!frontier.empty()) {
    Word y = std::move(frontier.back());
    frontier.pop_back();
    if (members.count(y)) return false;
    for (std::size_t len = 1; len < y.size(); ++len) {
      if (members.count(y.substr(0, len))) add(y.substr(len));
    }
    for (auto it = std::upper_bound(code.begin(), code.end(), y);
         it != code.end() && it->compare(0, y.size(), y) == 0; ++it) {
      add(it->substr(y.size()));
    }
  }
  return true;
}

/// Every variant of a base word has the base word's key, so bases with
/// different keys have disjoint variant blocks.
inline Word variant_key(const Word& w) {
  Word key;
  key.reserve(w.size());
  for (char32_t c : w) {
    c = to_lower(c);
    switch (c) {
      case U'@': c = U'a'; break;
      case U'3': c = U'e'; break;
      case U'l':
      case U'1': c = U'i'; break;
      case U'0': c = U'o'; break;
      case U'$': c = U's'; break;
      default:
        if (c >= U'0' && c <= U'9') c = U'#';
        break;
    }
    key.push_back(c);
  }
  while (!key.empty() && (key.back() == U'e' || key.back() == U'i' || key.back() == U'o' || key.back() == U'#')) {
    key.pop_back();
  }
  return key;
}

inline bool in_block(const MangledLayer& m, const Word& base, const Word& v) {
  if (v == base) return true;
  return std::any_of(m.rules.begin(), m.rules.end(), [&](const MangleRule& r) { return rule_produces(r, base, v); });
}

/// Whether `v`, taken from the block of base `pos`, already appeared in an earlier block.
inline bool in_earlier_block(const MangledLayer& m, std::size_t pos, const Word& v) {
  if (!m.shared_keys) return false;
  auto it = m.shared_keys->find(variant_key(v));
  if (it == m.shared_keys->end()) return false;
  for (std::size_t j : it->second) {
    if (j >= pos) break;
    if (in_block(m, m.source->words()[j], v)) return true;
  }
  return false;
}

}  // namespace detail

/// One stratum of an attacker strategy. Immutable; copies share sources.
class LayerSpec {
 public:
  using Variant = std::variant<ExhaustiveLayer, WordListLayer, MangledLayer, CombinedLayer>;

  static LayerSpec exhaustive(Alphabet alphabet, std::size_t min_len, std::size_t max_len) {
    if (min_len < 1) throw Error(ErrorKind::Domain, "exhaustive layer needs min_len >= 1");
    if (min_len > max_len) throw Error(ErrorKind::Domain, "exhaustive layer needs min_len <= max_len");
    Natural size = 0;
    const Natural base = alphabet.size();
    for (std::size_t n = min_len; n <= max_len; ++n) size += pow_natural(base, n);
    return LayerSpec(ExhaustiveLayer{std::move(alphabet), min_len, max_len}, std::move(size), true);
  }

  static LayerSpec wordlist(SourceRef source) {
    Natural size = source->size();
    return LayerSpec(WordListLayer{std::move(source)}, std::move(size), true);
  }

  static LayerSpec mangled(SourceRef source, std::vector<MangleRule> rules) {
    Natural size = 0;
    std::unordered_map<Word, std::vector<std::size_t>> groups;
    const auto& words = source->words();
    for (std::size_t i = 0; i < words.size(); ++i) {
      size += variant_block_size(words[i], rules);
      groups[detail::variant_key(words[i])].push_back(i);
    }
    std::erase_if(groups, [](const auto& g) { return g.second.size() < 2; });
    // Blocks sharing a key may repeat each other's variants; count those once.
    for (const auto& [key, members] : groups) {
      std::unordered_set<Word> seen;
      for (std::size_t i : members) {
        for (Word& v : mangle(words[i], rules)) {
          if (!seen.insert(std::move(v)).second) --size;
        }
      }
    }
    auto shared = groups.empty()
                      ? nullptr
                      : std::make_shared<const std::unordered_map<Word, std::vector<std::size_t>>>(std::move(groups));
    return LayerSpec(MangledLayer{std::move(source), std::move(rules), std::move(shared)}, std::move(size), true);
  }

  static LayerSpec combined(SourceRef source, std::size_t k, Word separator = {}) {
    if (k < 2) throw Error(ErrorKind::Domain, "combined layer needs k >= 2");
    const bool ud = detail::uniquely_decodable(source->words(), separator);
    Natural tuples = pow_natural(source->size(), k);
    return LayerSpec(CombinedLayer{std::move(source), k, std::move(separator)}, std::move(tuples), ud);
  }

  const Variant& variant() const noexcept { return *variant_; }

  template <class T>
  const T* as() const noexcept {
    return std::get_if<T>(variant_.get());
  }

  std::string kind_name() const {
    switch (variant_->index()) {
      case 0: return "exhaustive";
      case 1: return "wordlist";
      case 2: return "mangle";
      default: return "combine";
    }
  }

  /// Declared size when it is known without enumeration; for a combined layer
  /// over an ambiguous base this is the tuple count, an upper bound.
  const Natural& size_bound() const noexcept { return size_bound_; }
  bool size_is_exact() const noexcept { return exact_; }

  friend bool operator==(const LayerSpec& a, const LayerSpec& b) {
    if (a.variant_->index() != b.variant_->index()) return false;
    if (auto x = a.as<ExhaustiveLayer>()) {
      auto y = b.as<ExhaustiveLayer>();
      return x->alphabet == y->alphabet && x->min_len == y->min_len && x->max_len == y->max_len;
    }
    if (auto x = a.as<WordListLayer>()) return same_source(x->source, b.as<WordListLayer>()->source);
    if (auto x = a.as<MangledLayer>()) {
      auto y = b.as<MangledLayer>();
      return same_source(x->source, y->source) && x->rules == y->rules;
    }
    auto x = a.as<CombinedLayer>();
    auto y = b.as<CombinedLayer>();
    return same_source(x->source, y->source) && x->k == y->k && x->separator == y->separator;
  }

 private:
  LayerSpec(Variant v, Natural size_bound, bool exact)
      : variant_(std::make_shared<const Variant>(std::move(v))), size_bound_(std::move(size_bound)), exact_(exact) {}

  std::shared_ptr<const Variant> variant_;
  Natural size_bound_;
  bool exact_;
};

/// Lazy, restartable enumeration of a layer in its canonical order.
class LayerCursor {
 public:
  explicit LayerCursor(LayerSpec layer) : layer_(std::move(layer)) {
    if (auto e = layer_.as<ExhaustiveLayer>()) {
      length_ = e->min_len;
      digits_.assign(length_, 0);
    } else if (auto c = layer_.as<CombinedLayer>()) {
      digits_.assign(c->k, 0);
      done_ = c->source->size() == 0;
    }
  }

  std::optional<Word> next() {
    if (done_) return std::nullopt;
    if (auto e = layer_.as<ExhaustiveLayer>()) return next_exhaustive(*e);
    if (auto l = layer_.as<WordListLayer>()) {
      if (pos_ >= l->source->size()) return finish();
      return l->source->words()[pos_++];
    }
    if (auto m = layer_.as<MangledLayer>()) return next_mangled(*m);
    return next_combined(*layer_.as<CombinedLayer>());
  }

 private:
  std::optional<Word> finish() {
    done_ = true;
    return std::nullopt;
  }

  // Odometer over `digits_`, rightmost position fastest. Returns false on wrap.
  bool advance(std::size_t radix) {
    for (std::size_t i = digits_.size(); i-- > 0;) {
      if (++digits_[i] < radix) return true;
      digits_[i] = 0;
    }
    return false;
  }

  std::optional<Word> next_exhaustive(const ExhaustiveLayer& e) {
    Word w(length_, U'\0');
    for (std::size_t i = 0; i < length_; ++i) w[i] = e.alphabet.symbols()[digits_[i]];
    if (!advance(e.alphabet.size())) {
      if (++length_ > e.max_len) {
        done_ = true;
      } else {
        digits_.assign(length_, 0);
      }
    }
    return w;
  }

  std::optional<Word> next_mangled(const MangledLayer& m) {
    while (true) {
      if (!variants_) {
        if (pos_ >= m.source->size()) return finish();
        variants_.emplace(m.source->words()[pos_], &m.rules);
      }
      if (auto v = variants_->next()) {
        if (detail::in_earlier_block(m, pos_, *v)) continue;
        return v;
      }
      variants_.reset();
      ++pos_;
    }
  }

  std::optional<Word> next_combined(const CombinedLayer& c);

  LayerSpec layer_;
  bool done_ = false;
  std::size_t pos_ = 0;
  std::size_t length_ = 0;
  std::vector<std::size_t> digits_;
  std::optional<VariantCursor> variants_;
};

namespace detail {

inline Word join_tuple(const CombinedLayer& c, std::span<const std::size_t> tuple) {
  Word w;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) w += c.separator;
    w += c.source->words()[tuple[i]];
  }
  return w;
}

/// Lexicographically smallest base-index tuple whose join equals `v`, if any.
inline std::optional<std::vector<std::size_t>> first_parse(const CombinedLayer& c, const Word& v) {
  const std::size_t n = v.size();
  // feasible[(pos, parts)]: v[pos:] splits into exactly `parts` words.
  std::map<std::pair<std::size_t, std::size_t>, bool> memo;
  std::function<bool(std::size_t, std::size_t)> feasible = [&](std::size_t pos, std::size_t parts) -> bool {
    auto key = std::make_pair(pos, parts);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool ok = false;
    for (std::size_t end = pos + 1; end <= n && !ok; ++end) {
      if (!c.source->contains(v.substr(pos, end - pos))) continue;
      if (parts == 1) {
        ok = end == n;
      } else if (v.compare(end, c.separator.size(), c.separator) == 0 && end + c.separator.size() <= n) {
        ok = feasible(end + c.separator.size(), parts - 1);
      }
    }
    memo[key] = ok;
    return ok;
  };
  if (!feasible(0, c.k)) return std::nullopt;

  std::vector<std::size_t> tuple;
  std::size_t pos = 0;
  for (std::size_t parts = c.k; parts > 0; --parts) {
    std::optional<std::pair<std::size_t, std::size_t>> best;  // (index, next pos)
    for (std::size_t end = pos + 1; end <= n; ++end) {
      auto idx = c.source->index_of(v.substr(pos, end - pos));
      if (!idx) continue;
      std::size_t next = end;
      if (parts == 1) {
        if (end != n) continue;
      } else {
        if (end + c.separator.size() > n || v.compare(end, c.separator.size(), c.separator) != 0) continue;
        next = end + c.separator.size();
        if (!feasible(next, parts - 1)) continue;
      }
      if (!best || *idx < best->first) best = std::make_pair(*idx, next);
    }
    tuple.push_back(best->first);
    pos = best->second;
  }
  return tuple;
}

}  // namespace detail

inline std::optional<Word> LayerCursor::next_combined(const CombinedLayer& c) {
  while (true) {
    Word w = detail::join_tuple(c, digits_);
    const bool canonical = layer_.size_is_exact() || detail::first_parse(c, w) == digits_;
    if (!advance(c.source->size())) done_ = true;
    if (canonical) return w;
    if (done_) return std::nullopt;
  }
}

/// Calls `fn` for each word of `layer` in canonical order until it returns false.
template <class Fn>
void for_each_word(const LayerSpec& layer, Fn&& fn) {
  LayerCursor cursor(layer);
  while (auto w = cursor.next()) {
    if (!fn(*w)) return;
  }
}

/// Exact count of the declared word set.
inline Natural cardinality(const LayerSpec& layer, std::uint64_t cap = kDefaultMaterializeCap) {
  if (layer.size_is_exact()) return layer.size_bound();
  if (layer.size_bound() > cap) {
    throw Error(ErrorKind::CapExceeded, "counting an ambiguous combination layer needs " + layer.size_bound().str() +
                                            " enumerations (cap " + std::to_string(cap) + ")");
  }
  Natural n = 0;
  for_each_word(layer, [&](const Word&) {
    ++n;
    return true;
  });
  return n;
}

/// Whole layer as a vector; CapExceeded above `cap`.
inline std::vector<Word> materialize(const LayerSpec& layer, std::uint64_t cap = kDefaultMaterializeCap) {
  if (layer.size_bound() > cap) {
    throw Error(ErrorKind::CapExceeded,
                layer.kind_name() + " layer of size " + layer.size_bound().str() + " exceeds cap " + std::to_string(cap));
  }
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(layer.size_bound()));
  for_each_word(layer, [&](const Word& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

namespace detail {

// Above this many ambiguous leet positions, preimage search falls back to enumeration.
inline constexpr std::size_t kMaxLeetPreimages = 1u << 16;

inline std::optional<std::vector<Word>> leet_preimages(const Word& v) {
  std::vector<std::vector<char32_t>> choices;
  std::size_t total = 1;
  for (char32_t c : v) {
    if (leet_of(c) != c) return std::vector<Word>{};  // a leetable letter survived
    std::vector<char32_t> options{c};
    switch (c) {
      case U'@': options.push_back(U'a'); break;
      case U'3': options.push_back(U'e'); break;
      case U'1': options.push_back(U'i'), options.push_back(U'l'); break;
      case U'0': options.push_back(U'o'); break;
      case U'$': options.push_back(U's'); break;
      default: break;
    }
    total *= options.size();
    if (total > kMaxLeetPreimages) return std::nullopt;
    choices.push_back(std::move(options));
  }
  std::vector<Word> out{Word{}};
  for (const auto& options : choices) {
    std::vector<Word> grown;
    grown.reserve(out.size() * options.size());
    for (const Word& prefix : out) {
      for (char32_t c : options) grown.push_back(prefix + c);
    }
    out = std::move(grown);
  }
  return out;
}

/// Structural inversion; nullopt when it cannot decide cheaply.
inline std::optional<bool> mangled_contains(const MangledLayer& m, const Word& v) {
  const WordSource& src = *m.source;
  if (src.contains(v)) return true;
  for (const MangleRule& rule : m.rules) {
    using K = MangleRule::Kind;
    switch (rule.kind) {
      case K::Identity: break;
      case K::FirstCap:
      case K::AllCaps:
      case K::AllCase:
        for (std::size_t i : src.case_insensitive_matches(v)) {
          if (rule_produces(rule, src.words()[i], v)) return true;
        }
        break;
      case K::Leet: {
        auto pre = leet_preimages(v);
        if (!pre) return std::nullopt;
        for (const Word& b : *pre) {
          if (src.contains(b)) return true;
        }
        break;
      }
      case K::SuffixDigits:
        if (v.size() > rule.digits) {
          Word base = v.substr(0, v.size() - rule.digits);
          if (src.contains(base) && rule_produces(rule, base, v)) return true;
        }
        break;
    }
  }
  return false;
}

}  // namespace detail

/// Membership in the declared word set of `layer`.
inline bool contains(const LayerSpec& layer, const Word& w, std::uint64_t cap = kDefaultMaterializeCap) {
  if (auto e = layer.as<ExhaustiveLayer>()) {
    if (w.size() < e->min_len || w.size() > e->max_len) return false;
    return std::all_of(w.begin(), w.end(), [&](char32_t c) { return e->alphabet.contains(c); });
  }
  if (auto l = layer.as<WordListLayer>()) return l->source->contains(w);
  if (auto c = layer.as<CombinedLayer>()) return detail::first_parse(*c, w).has_value();
  const auto& m = *layer.as<MangledLayer>();
  if (auto decided = detail::mangled_contains(m, w)) return *decided;
  if (layer.size_bound() > cap) {
    throw Error(ErrorKind::CapExceeded, "membership fallback would enumerate " + layer.size_bound().str() +
                                            " words (cap " + std::to_string(cap) + ")");
  }
  bool found = false;
  for_each_word(layer, [&](const Word& x) {
    found = x == w;
    return !found;
  });
  return found;
}

/// A layer counts as explicit when it can be walked word by word within the cap.
inline bool is_explicit(const LayerSpec& layer, std::uint64_t cap = kDefaultMaterializeCap) {
  return layer.as<WordListLayer>() != nullptr || layer.size_bound() <= cap;
}

/// |L_1 ∩ ... ∩ L_m| when decidable by rule, nullopt otherwise.
inline std::optional<Natural> intersection_size_all(std::span<const LayerSpec> layers,
                                                    std::uint64_t cap = kDefaultMaterializeCap) {
  if (layers.empty()) return std::nullopt;
  if (std::all_of(layers.begin(), layers.end(), [](const LayerSpec& l) { return l.as<ExhaustiveLayer>(); })) {
    std::size_t lo = 0;
    std::size_t hi = SIZE_MAX;
    for (const LayerSpec& l : layers) {
      lo = std::max(lo, l.as<ExhaustiveLayer>()->min_len);
      hi = std::min(hi, l.as<ExhaustiveLayer>()->max_len);
    }
    const Alphabet& first = layers.front().as<ExhaustiveLayer>()->alphabet;
    std::size_t shared = 0;
    for (char32_t c : first.symbols()) {
      shared += std::all_of(layers.begin() + 1, layers.end(),
                            [&](const LayerSpec& l) { return l.as<ExhaustiveLayer>()->alphabet.contains(c); })
                    ? 1
                    : 0;
    }
    Natural total = 0;
    for (std::size_t n = lo; n <= hi; ++n) total += pow_natural(shared, n);
    return total;
  }

  const LayerSpec* walk = nullptr;
  for (const LayerSpec& l : layers) {
    if (is_explicit(l, cap) && (!walk || l.size_bound() < walk->size_bound())) walk = &l;
  }
  if (!walk) return std::nullopt;
  try {
    Natural count = 0;
    for_each_word(*walk, [&](const Word& w) {
      bool everywhere = true;
      for (const LayerSpec& other : layers) {
        if (&other != walk && !contains(other, w, cap)) {
          everywhere = false;
          break;
        }
      }
      if (everywhere) ++count;
      return true;
    });
    return count;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::CapExceeded) return std::nullopt;
    throw;
  }
}

/// |a ∩ b|, or nullopt ("undecidable") when neither rule applies.
inline std::optional<Natural> intersection_size(const LayerSpec& a, const LayerSpec& b,
                                                std::uint64_t cap = kDefaultMaterializeCap) {
  const LayerSpec both[] = {a, b};
  return intersection_size_all(both, cap);
}

struct EffectiveLayer {
  LayerSpec spec;
  std::size_t declared_index;  // 0-based position in the declared list
  Natural declared_size;
  Natural effective_size;
};

struct EffectiveLayers {
  std::vector<EffectiveLayer> layers;
  std::vector<std::string> warnings;
  Natural removed_overlap = 0;
};

namespace detail {

// Inclusion-exclusion over earlier layers is capped at 2^16 terms.
inline constexpr std::size_t kMaxOverlapPartners = 16;

[[noreturn]] inline void undecidable(std::size_t earlier, std::size_t later) {
  throw Error(ErrorKind::UndecidableOverlap, "cannot decide the overlap of layers " + std::to_string(earlier + 1) +
                                                 " and " + std::to_string(later + 1) +
                                                 "; set assume_disjoint if they are known to be disjoint");
}

/// |declared[i] ∩ (declared[0] ∪ ... ∪ declared[i-1])|.
inline Natural overlap_with_earlier(const std::vector<LayerSpec>& declared, std::size_t i, std::uint64_t cap) {
  const LayerSpec& layer = declared[i];
  if (i == 0) return 0;

  if (is_explicit(layer, cap)) {
    Natural count = 0;
    try {
      for_each_word(layer, [&](const Word& w) {
        for (std::size_t j = 0; j < i; ++j) {
          if (contains(declared[j], w, cap)) {
            ++count;
            break;
          }
        }
        return true;
      });
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CapExceeded) throw;
      undecidable(0, i);
    }
    return count;
  }

  std::vector<std::size_t> partners;
  for (std::size_t j = 0; j < i; ++j) {
    auto pair = intersection_size(declared[j], layer, cap);
    if (!pair) undecidable(j, i);
    if (*pair != 0) partners.push_back(j);
  }
  if (partners.size() > kMaxOverlapPartners) undecidable(partners.front(), i);

  Natural positive = 0;
  Natural negative = 0;
  const std::size_t subsets = std::size_t{1} << partners.size();
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    std::vector<LayerSpec> group{layer};
    for (std::size_t b = 0; b < partners.size(); ++b) {
      if (mask & (std::size_t{1} << b)) group.push_back(declared[partners[b]]);
    }
    auto size = intersection_size_all(group, cap);
    if (!size) undecidable(partners[static_cast<std::size_t>(std::countr_zero(mask))], i);
    if ((group.size() - 1) % 2 == 1) {
      positive += *size;
    } else {
      negative += *size;
    }
  }
  return positive - negative;
}

}  // namespace detail

/// Earlier-wins deduplication of a declared layer list. Layers whose words
/// are all covered earlier are dropped with a warning.
inline EffectiveLayers effective_layers(const std::vector<LayerSpec>& declared, bool assume_disjoint,
                                        std::uint64_t cap = kDefaultMaterializeCap) {
  EffectiveLayers out;
  for (std::size_t i = 0; i < declared.size(); ++i) {
    Natural size = cardinality(declared[i], cap);
    Natural overlap = assume_disjoint ? Natural(0) : detail::overlap_with_earlier(declared, i, cap);
    Natural effective = size - overlap;
    out.removed_overlap += overlap;
    if (effective == 0) {
      out.warnings.push_back("layer " + std::to_string(i + 1) + " (" + declared[i].kind_name() +
                             ") adds no new words and is dropped");
      continue;
    }
    out.layers.push_back({declared[i], i, std::move(size), std::move(effective)});
  }
  return out;
}

}  // namespace guesscost
