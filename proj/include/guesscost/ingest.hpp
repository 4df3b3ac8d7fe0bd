#pragma once

#include "guesscost/alphabet.hpp"
#include "guesscost/error.hpp"
#include "guesscost/layer.hpp"
#include "guesscost/mangle.hpp"
#include "guesscost/numeric.hpp"
#include "guesscost/strategy.hpp"
#include "guesscost/word.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace guesscost {

namespace detail {

struct Line {
  std::size_t number;
  std::string_view text;
};

/// LF-separated lines with a trailing CR removed.
inline std::vector<Line> split_lines(std::string_view bytes) {
  std::vector<Line> out;
  std::size_t start = 0;
  std::size_t number = 1;
  while (start < bytes.size()) {
    std::size_t end = bytes.find('\n', start);
    if (end == std::string_view::npos) end = bytes.size();
    std::string_view line = bytes.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back({number++, line});
    start = end + 1;
  }
  return out;
}

inline bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t'; });
}

inline bool is_comment(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  return first != std::string_view::npos && s[first] == '#';
}

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\t') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

inline void check_utf8(const Line& line) {
  try {
    (void)from_utf8(line.text);
  } catch (const Error& e) {
    throw ParseError(ErrorKind::InvalidUtf8, line.number, 0, e.what());
  }
}

inline bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace detail

/// Decimal natural, digits only.
inline std::optional<Natural> parse_natural(std::string_view s) {
  if (!detail::all_digits(s)) return std::nullopt;
  return Natural(std::string(s));
}

/// "3", "1/4", "0.05" and their negatives, exactly.
inline std::optional<Rational> parse_rational(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = parse_natural(s.substr(0, slash));
    auto den = parse_natural(s.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    value = Rational(*num, *den);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = s.substr(0, dot);
    const std::string_view frac = s.substr(dot + 1);
    if ((!whole.empty() && !detail::all_digits(whole)) || !detail::all_digits(frac)) return std::nullopt;
    const Natural w = whole.empty() ? Natural(0) : Natural(std::string(whole));
    const Natural scale = pow_natural(10, frac.size());
    value = Rational(w * scale + Natural(std::string(frac)), scale);
  } else {
    auto n = parse_natural(s);
    if (!n) return std::nullopt;
    value = Rational(*n);
  }
  return negative ? Rational(-value) : value;
}

struct WordListParse {
  std::vector<Word> words;
  std::vector<std::string> warnings;
};

/// One word per line, optionally followed by a TAB and a decimal count.
/// Blank lines and lines starting with '#' are skipped; the first occurrence
/// of a repeated word wins. Frequency ordering sorts by count descending
/// (missing counts are 0), ties in file order.
inline WordListParse parse_wordlist(std::string_view bytes, WordSource::Ordering ordering = WordSource::Ordering::File) {
  struct Record {
    Word word;
    Natural count;
  };
  std::vector<Record> records;
  std::unordered_set<Word> seen;
  WordListParse out;
  for (const auto& line : detail::split_lines(bytes)) {
    if (line.text.empty() || line.text.front() == '#') continue;
    detail::check_utf8(line);
    if (detail::is_blank(line.text)) continue;
    std::string_view word = line.text;
    Natural count = 0;
    if (auto tab = line.text.find('\t'); tab != std::string_view::npos) {
      word = line.text.substr(0, tab);
      const std::string_view rest = line.text.substr(tab + 1);
      if (rest.find('\t') != std::string_view::npos) {
        throw ParseError(ErrorKind::MalformedLine, line.number, 0, "more than one TAB");
      }
      auto parsed = parse_natural(rest);
      if (!parsed) {
        throw ParseError(ErrorKind::NegativeOrNonNumericCount, line.number, tab + 2,
                         "count '" + std::string(rest) + "' is not a non-negative decimal integer");
      }
      count = std::move(*parsed);
    }
    if (word.empty()) throw ParseError(ErrorKind::MalformedLine, line.number, 1, "empty word");
    Word w = from_utf8(word);
    if (!seen.insert(w).second) {
      out.warnings.push_back("line " + std::to_string(line.number) + ": duplicate word '" + std::string(word) +
                             "' ignored");
      continue;
    }
    records.push_back({std::move(w), std::move(count)});
  }
  if (ordering == WordSource::Ordering::Frequency) {
    std::stable_sort(records.begin(), records.end(), [](const Record& a, const Record& b) { return a.count > b.count; });
  }
  out.words.reserve(records.size());
  for (auto& r : records) out.words.push_back(std::move(r.word));
  return out;
}

struct AlphabetDecl {
  std::string name;
  Word symbols;
  friend bool operator==(const AlphabetDecl&, const AlphabetDecl&) = default;
};

struct SourceDecl {
  std::string name;
  std::string path;
  WordSource::Ordering order = WordSource::Ordering::File;
  friend bool operator==(const SourceDecl&, const SourceDecl&) = default;
};

struct LayerDecl {
  enum class Kind { Exhaustive, WordList, Mangle, Combine };
  Kind kind = Kind::WordList;
  std::string alphabet;  // exhaustive
  std::size_t min_len = 0;
  std::size_t max_len = 0;
  std::string source;  // wordlist, mangle, combine
  std::vector<MangleRule> rules;
  std::size_t k = 0;
  Word separator;
  friend bool operator==(const LayerDecl&, const LayerDecl&) = default;
};

/// A strategy as written in a file; sources are not loaded yet.
struct StrategyFile {
  std::vector<AlphabetDecl> alphabets;
  std::vector<SourceDecl> sources;
  std::vector<LayerDecl> layers;
  bool assume_disjoint = false;
  friend bool operator==(const StrategyFile&, const StrategyFile&) = default;
};

namespace detail {

class KeyValues {
 public:
  KeyValues(const std::vector<Token>& tokens, std::size_t first, std::size_t line) : line_(line) {
    for (std::size_t i = first; i < tokens.size(); ++i) {
      const auto eq = tokens[i].text.find('=');
      if (eq == std::string_view::npos || eq == 0) {
        throw ParseError(ErrorKind::Syntax, line, tokens[i].column,
                         "expected key=value, got '" + std::string(tokens[i].text) + "'");
      }
      std::string key(tokens[i].text.substr(0, eq));
      if (values_.count(key)) throw ParseError(ErrorKind::Syntax, line, tokens[i].column, "repeated key '" + key + "'");
      values_[key] = {std::string(tokens[i].text.substr(eq + 1)), tokens[i].column + eq + 1};
    }
  }

  std::optional<std::string> take(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    last_column_ = it->second.second;
    std::string v = std::move(it->second.first);
    values_.erase(it);
    return v;
  }

  std::string require(const std::string& key) {
    auto v = take(key);
    if (!v) throw ParseError(ErrorKind::MissingRequiredKey, line_, 0, "missing required key '" + key + "'");
    return *v;
  }

  std::size_t require_count(const std::string& key) {
    const std::string v = require(key);
    if (!all_digits(v) || v.size() > 9) {
      throw ParseError(ErrorKind::Syntax, line_, last_column_, key + " must be a decimal integer");
    }
    return std::stoul(v);
  }

  void finish() const {
    if (!values_.empty()) {
      const auto& [key, value] = *values_.begin();
      throw ParseError(ErrorKind::Syntax, line_, value.second - key.size() - 1, "unknown key '" + key + "'");
    }
  }

  std::size_t last_column() const noexcept { return last_column_; }

 private:
  std::size_t line_;
  std::size_t last_column_ = 0;
  std::map<std::string, std::pair<std::string, std::size_t>> values_;
};

}  // namespace detail

/// Parses the line-oriented strategy format:
///
///   alphabet NAME = SYMBOLS
///   source NAME = PATH [order=file|frequency]
///   layer exhaustive alphabet=NAME min_len=N max_len=N
///   layer wordlist source=NAME
///   layer mangle source=NAME rules=r1,r2,...
///   layer combine source=NAME k=N [sep=STRING]
///   assume_disjoint true|false
inline StrategyFile parse_strategy(std::string_view text) {
  StrategyFile file;
  std::unordered_set<std::string> alphabet_names;
  std::unordered_set<std::string> source_names;

  for (const auto& line : detail::split_lines(text)) {
    if (detail::is_blank(line.text) || detail::is_comment(line.text)) continue;
    detail::check_utf8(line);
    const auto tokens = detail::tokenize(line.text);
    const std::string_view head = tokens[0].text;
    auto syntax = [&](std::size_t column, const std::string& msg) {
      return ParseError(ErrorKind::Syntax, line.number, column, msg);
    };

    if (head == "alphabet" || head == "source") {
      if (tokens.size() < 4 || tokens[2].text != "=") {
        throw syntax(tokens.size() > 2 ? tokens[2].column : tokens.back().column + tokens.back().text.size(),
                     "expected '" + std::string(head) + " NAME = VALUE'");
      }
      std::string name(tokens[1].text);
      if (head == "alphabet") {
        if (tokens.size() != 4) throw syntax(tokens[4].column, "alphabet symbols must be contiguous");
        if (alphabet_names.count(name) || builtin_alphabet(name)) {
          throw syntax(tokens[1].column, "alphabet '" + name + "' is already defined");
        }
        Word symbols = from_utf8(tokens[3].text);
        try {
          (void)Alphabet(name, symbols);
        } catch (const Error& e) {
          throw ParseError(ErrorKind::InvalidAlphabet, line.number, tokens[3].column, e.what());
        }
        alphabet_names.insert(name);
        file.alphabets.push_back({std::move(name), std::move(symbols)});
      } else {
        if (source_names.count(name)) throw syntax(tokens[1].column, "source '" + name + "' is already defined");
        SourceDecl decl{name, std::string(tokens[3].text), WordSource::Ordering::File};
        detail::KeyValues kv(tokens, 4, line.number);
        if (auto order = kv.take("order")) {
          if (*order == "frequency") {
            decl.order = WordSource::Ordering::Frequency;
          } else if (*order != "file") {
            throw syntax(kv.last_column(), "order must be 'file' or 'frequency'");
          }
        }
        kv.finish();
        source_names.insert(name);
        file.sources.push_back(std::move(decl));
      }
      continue;
    }

    if (head == "assume_disjoint") {
      if (tokens.size() != 2 || (tokens[1].text != "true" && tokens[1].text != "false")) {
        throw syntax(tokens.size() > 1 ? tokens[1].column : head.size() + 1, "expected 'assume_disjoint true|false'");
      }
      file.assume_disjoint = tokens[1].text == "true";
      continue;
    }

    if (head != "layer") throw syntax(tokens[0].column, "unknown directive '" + std::string(head) + "'");
    if (tokens.size() < 2) throw syntax(head.size() + 1, "layer needs a kind");

    LayerDecl decl;
    detail::KeyValues kv(tokens, 2, line.number);
    auto need_source = [&] {
      std::string s = kv.require("source");
      if (!source_names.count(s)) {
        throw ParseError(ErrorKind::UnknownSource, line.number, kv.last_column(), "source '" + s + "' is not declared");
      }
      return s;
    };
    const std::string_view kind = tokens[1].text;
    if (kind == "exhaustive") {
      decl.kind = LayerDecl::Kind::Exhaustive;
      decl.alphabet = kv.require("alphabet");
      if (!alphabet_names.count(decl.alphabet) && !builtin_alphabet(decl.alphabet)) {
        throw ParseError(ErrorKind::UnknownAlphabet, line.number, kv.last_column(),
                         "alphabet '" + decl.alphabet + "' is neither declared nor built in");
      }
      decl.min_len = kv.require_count("min_len");
      decl.max_len = kv.require_count("max_len");
      if (decl.min_len < 1 || decl.min_len > decl.max_len) {
        throw syntax(kv.last_column(), "need 1 <= min_len <= max_len");
      }
    } else if (kind == "wordlist") {
      decl.kind = LayerDecl::Kind::WordList;
      decl.source = need_source();
    } else if (kind == "mangle") {
      decl.kind = LayerDecl::Kind::Mangle;
      decl.source = need_source();
      const std::string rules = kv.require("rules");
      std::size_t column = kv.last_column();
      std::size_t start = 0;
      while (start <= rules.size()) {
        std::size_t end = rules.find(',', start);
        if (end == std::string::npos) end = rules.size();
        const std::string name = rules.substr(start, end - start);
        auto rule = MangleRule::from_name(name);
        if (!rule) {
          throw ParseError(ErrorKind::UnknownRule, line.number, column + start, "unknown mangle rule '" + name + "'");
        }
        decl.rules.push_back(*rule);
        start = end + 1;
      }
    } else if (kind == "combine") {
      decl.kind = LayerDecl::Kind::Combine;
      decl.source = need_source();
      decl.k = kv.require_count("k");
      if (decl.k < 2) throw syntax(kv.last_column(), "k must be at least 2");
      if (auto sep = kv.take("sep")) decl.separator = from_utf8(*sep);
    } else {
      throw syntax(tokens[1].column, "unknown layer kind '" + std::string(kind) + "'");
    }
    kv.finish();
    file.layers.push_back(std::move(decl));
  }
  return file;
}

/// Canonical text form; parse_strategy(serialize_strategy(f)) == f.
inline std::string serialize_strategy(const StrategyFile& file) {
  std::ostringstream out;
  for (const auto& a : file.alphabets) out << "alphabet " << a.name << " = " << to_utf8(a.symbols) << "\n";
  for (const auto& s : file.sources) {
    out << "source " << s.name << " = " << s.path
        << (s.order == WordSource::Ordering::Frequency ? " order=frequency" : " order=file") << "\n";
  }
  out << "assume_disjoint " << (file.assume_disjoint ? "true" : "false") << "\n";
  for (const auto& l : file.layers) {
    switch (l.kind) {
      case LayerDecl::Kind::Exhaustive:
        out << "layer exhaustive alphabet=" << l.alphabet << " min_len=" << l.min_len << " max_len=" << l.max_len;
        break;
      case LayerDecl::Kind::WordList: out << "layer wordlist source=" << l.source; break;
      case LayerDecl::Kind::Mangle: {
        out << "layer mangle source=" << l.source << " rules=";
        for (std::size_t i = 0; i < l.rules.size(); ++i) out << (i ? "," : "") << l.rules[i].name();
        break;
      }
      case LayerDecl::Kind::Combine:
        out << "layer combine source=" << l.source << " k=" << l.k << " sep=" << to_utf8(l.separator);
        break;
    }
    out << "\n";
  }
  return out.str();
}

/// Reads the bytes of a named source file.
using SourceLoader = std::function<std::string(const std::string& path)>;

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Loader resolving relative paths against `base_dir`.
inline SourceLoader file_loader(std::filesystem::path base_dir) {
  return [base = std::move(base_dir)](const std::string& path) {
    std::filesystem::path p(path);
    return read_file(p.is_absolute() ? p : base / p);
  };
}

struct LoadedStrategy {
  Strategy strategy;
  std::vector<std::string> warnings;
};

inline LoadedStrategy build_strategy(const StrategyFile& file, const SourceLoader& loader,
                                     std::uint64_t cap = kDefaultMaterializeCap) {
  std::vector<std::string> warnings;
  std::map<std::string, Alphabet> alphabets;
  for (const auto& a : file.alphabets) alphabets.emplace(a.name, Alphabet(a.name, a.symbols));
  std::map<std::string, SourceRef> sources;
  for (const auto& s : file.sources) {
    WordListParse parsed;
    try {
      parsed = parse_wordlist(loader(s.path), s.order);
    } catch (const Error& e) {
      throw Error(e.kind(), "source '" + s.name + "' (" + s.path + "): " + e.what());
    }
    for (auto& w : parsed.warnings) warnings.push_back("source '" + s.name + "': " + w);
    sources[s.name] = std::make_shared<const WordSource>(s.name, std::move(parsed.words), s.order, s.path);
  }
  auto alphabet = [&](const std::string& name) {
    if (auto it = alphabets.find(name); it != alphabets.end()) return it->second;
    if (auto builtin = builtin_alphabet(name)) return *builtin;
    throw Error(ErrorKind::UnknownAlphabet, "alphabet '" + name + "'");
  };
  auto source = [&](const std::string& name) {
    auto it = sources.find(name);
    if (it == sources.end()) throw Error(ErrorKind::UnknownSource, "source '" + name + "'");
    return it->second;
  };

  std::vector<LayerSpec> layers;
  for (const auto& l : file.layers) {
    switch (l.kind) {
      case LayerDecl::Kind::Exhaustive: layers.push_back(LayerSpec::exhaustive(alphabet(l.alphabet), l.min_len, l.max_len)); break;
      case LayerDecl::Kind::WordList: layers.push_back(LayerSpec::wordlist(source(l.source))); break;
      case LayerDecl::Kind::Mangle: layers.push_back(LayerSpec::mangled(source(l.source), l.rules)); break;
      case LayerDecl::Kind::Combine: layers.push_back(LayerSpec::combined(source(l.source), l.k, l.separator)); break;
    }
  }
  Strategy strategy(std::move(layers), file.assume_disjoint, cap);
  for (const auto& w : strategy.warnings()) warnings.push_back(w);
  return {std::move(strategy), std::move(warnings)};
}

inline LoadedStrategy load_strategy(const std::filesystem::path& path, std::uint64_t cap = kDefaultMaterializeCap) {
  const StrategyFile file = parse_strategy(read_file(path));
  return build_strategy(file, file_loader(path.parent_path()), cap);
}

/// One entry per line: `layer K weight R` or `password WORD weight R`.
inline Distribution parse_distribution(std::string_view text) {
  std::vector<Distribution::Entry> entries;
  for (const auto& line : detail::split_lines(text)) {
    if (detail::is_blank(line.text) || detail::is_comment(line.text)) continue;
    detail::check_utf8(line);
    const auto tokens = detail::tokenize(line.text);
    if (tokens.size() != 4 || tokens[2].text != "weight" ||
        (tokens[0].text != "layer" && tokens[0].text != "password")) {
      throw ParseError(ErrorKind::Syntax, line.number, tokens[0].column,
                       "expected 'layer K weight R' or 'password WORD weight R'");
    }
    auto weight = parse_rational(tokens[3].text);
    if (!weight) throw ParseError(ErrorKind::Syntax, line.number, tokens[3].column, "weight is not a number");
    if (*weight <= 0) {
      throw ParseError(ErrorKind::NonPositiveWeight, line.number, tokens[3].column, "weight must be positive");
    }
    if (tokens[0].text == "layer") {
      auto k = parse_natural(tokens[1].text);
      if (!k || *k == 0 || *k > 1'000'000'000) {
        throw ParseError(ErrorKind::Syntax, line.number, tokens[1].column, "layer index must be a positive integer");
      }
      entries.push_back({LayerIndex{static_cast<std::size_t>(*k)}, *weight});
    } else {
      entries.push_back({from_utf8(tokens[1].text), *weight});
    }
  }
  if (entries.empty()) throw Error(ErrorKind::ZeroTotalWeight, "distribution has no entries");
  return Distribution(std::move(entries));
}

}  // namespace guesscost
