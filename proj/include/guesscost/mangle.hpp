#pragma once

#include "guesscost/error.hpp"
#include "guesscost/numeric.hpp"
#include "guesscost/word.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace guesscost {

/// One deterministic word transformation. Every rule maps a base word to a
/// fixed, ordered list of variants; `allcase` is the only rule whose list
/// grows exponentially (2^cased-letters), so it is never materialized for counting.
struct MangleRule {
  enum class Kind { Identity, FirstCap, AllCaps, AllCase, Leet, SuffixDigits };

  Kind kind = Kind::Identity;
  unsigned digits = 0;  // SuffixDigits only: 1 or 2

  static MangleRule identity() { return {Kind::Identity, 0}; }
  static MangleRule firstcap() { return {Kind::FirstCap, 0}; }
  static MangleRule allcaps() { return {Kind::AllCaps, 0}; }
  static MangleRule allcase() { return {Kind::AllCase, 0}; }
  static MangleRule leet() { return {Kind::Leet, 0}; }
  static MangleRule suffix_digits(unsigned d) {
    if (d != 1 && d != 2) throw Error(ErrorKind::Domain, "suffix_digits takes 1 or 2 digits");
    return {Kind::SuffixDigits, d};
  }

  std::string name() const {
    switch (kind) {
      case Kind::Identity: return "identity";
      case Kind::FirstCap: return "firstcap";
      case Kind::AllCaps: return "allcaps";
      case Kind::AllCase: return "allcase";
      case Kind::Leet: return "leet";
      case Kind::SuffixDigits: return "suffix_digits" + std::to_string(digits);
    }
    return "?";
  }

  static std::optional<MangleRule> from_name(const std::string& name) {
    if (name == "identity") return identity();
    if (name == "firstcap") return firstcap();
    if (name == "allcaps") return allcaps();
    if (name == "allcase") return allcase();
    if (name == "leet") return leet();
    if (name == "suffix_digits1") return suffix_digits(1);
    if (name == "suffix_digits2") return suffix_digits(2);
    return std::nullopt;
  }

  friend bool operator==(const MangleRule&, const MangleRule&) = default;
};

namespace detail {

inline char32_t leet_of(char32_t c) {
  switch (c) {
    case U'a': return U'@';
    case U'e': return U'3';
    case U'i': return U'1';
    case U'l': return U'1';
    case U'o': return U'0';
    case U's': return U'$';
    default: return c;
  }
}

inline Word apply_firstcap(Word w) {
  if (!w.empty()) w[0] = to_upper(w[0]);
  return w;
}

inline Word apply_allcaps(Word w) {
  for (auto& c : w) c = to_upper(c);
  return w;
}

inline Word apply_leet(Word w) {
  for (auto& c : w) c = leet_of(c);
  return w;
}

inline std::size_t cased_count(const Word& w) {
  std::size_t n = 0;
  for (char32_t c : w) n += is_cased(c) ? 1 : 0;
  return n;
}

/// True iff `v` differs from `w` only in the case of ASCII letters.
inline bool same_case_class(const Word& w, const Word& v) {
  if (w.size() != v.size()) return false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == v[i]) continue;
    if (!is_cased(w[i]) || to_lower(w[i]) != to_lower(v[i])) return false;
  }
  return true;
}

inline Word digit_suffix(unsigned value, unsigned width) {
  Word s(width, U'0');
  for (unsigned i = width; i-- > 0; value /= 10) s[i] = U'0' + static_cast<char32_t>(value % 10);
  return s;
}

inline unsigned pow10u(unsigned d) {
  unsigned r = 1;
  while (d--) r *= 10;
  return r;
}

/// Variants of a non-allcase rule, in emission order.
inline std::vector<Word> small_variants(const MangleRule& rule, const Word& w) {
  switch (rule.kind) {
    case MangleRule::Kind::Identity: return {w};
    case MangleRule::Kind::FirstCap: return {apply_firstcap(w)};
    case MangleRule::Kind::AllCaps: return {apply_allcaps(w)};
    case MangleRule::Kind::Leet: return {apply_leet(w)};
    case MangleRule::Kind::SuffixDigits: {
      std::vector<Word> out;
      const unsigned n = pow10u(rule.digits);
      out.reserve(n);
      for (unsigned i = 0; i < n; ++i) out.push_back(w + digit_suffix(i, rule.digits));
      return out;
    }
    case MangleRule::Kind::AllCase: break;
  }
  return {};
}

}  // namespace detail

/// Whether `rule` applied to `base` yields `v`.
inline bool rule_produces(const MangleRule& rule, const Word& base, const Word& v) {
  using K = MangleRule::Kind;
  switch (rule.kind) {
    case K::Identity: return v == base;
    case K::FirstCap: return v == detail::apply_firstcap(base);
    case K::AllCaps: return v == detail::apply_allcaps(base);
    case K::AllCase: return detail::same_case_class(base, v);
    case K::Leet: return v == detail::apply_leet(base);
    case K::SuffixDigits: {
      if (v.size() != base.size() + rule.digits || v.compare(0, base.size(), base) != 0) return false;
      for (std::size_t i = base.size(); i < v.size(); ++i) {
        if (v[i] < U'0' || v[i] > U'9') return false;
      }
      return true;
    }
  }
  return false;
}

/// Lazy cursor over the variant block of one base word: identity first, then
/// each rule's variants in declaration order, skipping anything an earlier
/// rule (or identity) already produced.
class VariantCursor {
 public:
  VariantCursor(Word base, const std::vector<MangleRule>* rules) : base_(std::move(base)), rules_(rules) {}

  std::optional<Word> next() {
    if (!identity_done_) {
      identity_done_ = true;
      return base_;
    }
    while (auto candidate = raw_next()) {
      if (!produced_earlier(*candidate)) return candidate;
    }
    return std::nullopt;
  }

 private:
  std::optional<Word> raw_next() {
    while (rule_ < rules_->size()) {
      const MangleRule& rule = (*rules_)[rule_];
      if (rule.kind == MangleRule::Kind::AllCase) {
        if (!started_) {
          started_ = true;
          mask_.assign(detail::cased_count(base_), 0);
          return case_variant();
        }
        if (advance_mask()) return case_variant();
      } else {
        if (!started_) {
          started_ = true;
          small_ = detail::small_variants(rule, base_);
          small_pos_ = 0;
        }
        if (small_pos_ < small_.size()) return small_[small_pos_++];
      }
      ++rule_;
      started_ = false;
    }
    return std::nullopt;
  }

  // Variants within one rule's list are distinct, so only earlier rules matter.
  bool produced_earlier(const Word& v) const {
    if (v == base_) return true;
    for (std::size_t r = 0; r < rule_; ++r) {
      if (rule_produces((*rules_)[r], base_, v)) return true;
    }
    return false;
  }

  // Binary counter over cased positions; position 0 is the least significant bit.
  bool advance_mask() {
    for (auto& bit : mask_) {
      if (bit == 0) {
        bit = 1;
        return true;
      }
      bit = 0;
    }
    return false;
  }

  Word case_variant() const {
    Word v = base_;
    std::size_t j = 0;
    for (auto& c : v) {
      if (!is_cased(c)) continue;
      c = mask_[j++] ? to_upper(c) : to_lower(c);
    }
    return v;
  }

  Word base_;
  const std::vector<MangleRule>* rules_;
  bool identity_done_ = false;
  std::size_t rule_ = 0;
  bool started_ = false;
  std::vector<unsigned char> mask_;
  std::vector<Word> small_;
  std::size_t small_pos_ = 0;
};

/// Full variant block of `w`, identity first, duplicates dropped.
inline std::vector<Word> mangle(const Word& w, const std::vector<MangleRule>& rules) {
  std::vector<Word> out;
  VariantCursor cursor(w, &rules);
  while (auto v = cursor.next()) out.push_back(std::move(*v));
  return out;
}

/// Exact size of the variant block of `w` without materializing `allcase`.
inline Natural variant_block_size(const Word& w, const std::vector<MangleRule>& rules) {
  Natural total = 1;  // identity
  std::unordered_set<Word> earlier{w};
  bool allcase_seen = false;
  for (const MangleRule& rule : rules) {
    if (rule.kind == MangleRule::Kind::AllCase) {
      if (allcase_seen) continue;
      allcase_seen = true;
      std::size_t inside = 0;
      for (const Word& u : earlier) inside += detail::same_case_class(w, u) ? 1 : 0;
      total += pow_natural(2, detail::cased_count(w)) - inside;
      continue;
    }
    for (Word& v : detail::small_variants(rule, w)) {
      if (allcase_seen && detail::same_case_class(w, v)) continue;
      if (earlier.insert(std::move(v)).second) total += 1;
    }
  }
  return total;
}

}  // namespace guesscost
