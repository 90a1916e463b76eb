// Copyright (c) 2026 The phonfront Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PHONFRONT_INVENTORY_HPP_
#define PHONFRONT_INVENTORY_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "phonfront/error.hpp"
#include "phonfront/feature.hpp"
#include "phonfront/text.hpp"

namespace phonfront {

enum class Language : std::uint8_t { kEnglish, kMandarin };

constexpr std::string_view language_tag(Language lang) {
  return lang == Language::kEnglish ? "en" : "cmn";
}

inline std::optional<Language> language_from_tag(std::string_view tag) {
  if (tag == "en") return Language::kEnglish;
  if (tag == "cmn") return Language::kMandarin;
  return std::nullopt;
}

// Lexical tone is specified for Mandarin only.
constexpr bool is_tonal(Language lang) { return lang == Language::kMandarin; }

enum class PhonemeKind : std::uint8_t { kConsonant, kVowel };

enum class LookupMode : std::uint8_t {
  kContrastive,   // features needed for contrast within the language
  kCrossLingual,  // plus the optional (parenthesised) features
};

inline std::optional<LookupMode> lookup_mode_from_name(std::string_view name) {
  if (name == "contrastive") return LookupMode::kContrastive;
  if (name == "cross_lingual" || name == "cross-lingual") return LookupMode::kCrossLingual;
  return std::nullopt;
}

struct Phoneme {
  std::string symbol;
  Language language = Language::kEnglish;
  FeatureBundle contrastive;
  FeatureBundle optional;
  // Row rebuilt from running text rather than transcribed verbatim.
  bool reconstructed = false;

  PhonemeKind kind() const {
    return contrastive.contains(Feature::kVocalic) ? PhonemeKind::kVowel : PhonemeKind::kConsonant;
  }

  FeatureBundle bundle(LookupMode mode) const {
    return mode == LookupMode::kContrastive ? contrastive : contrastive | optional;
  }
};

struct InventoryCounts {
  std::size_t total;
  std::size_t consonants;
  std::size_t vowels;
};

constexpr InventoryCounts expected_counts(Language lang) {
  return lang == Language::kEnglish ? InventoryCounts{38, 24, 14} : InventoryCounts{37, 21, 16};
}

class Inventory {
 public:
  Inventory() = default;
  Inventory(Language language, std::vector<Phoneme> phonemes, std::string version)
      : language_(language), phonemes_(std::move(phonemes)), version_(std::move(version)) {
    for (std::size_t i = 0; i < phonemes_.size(); ++i) index_.emplace(phonemes_[i].symbol, i);
  }

  Language language() const { return language_; }
  const std::string& version() const { return version_; }
  std::size_t size() const { return phonemes_.size(); }

  // File order.
  const std::vector<Phoneme>& phonemes() const { return phonemes_; }

  const Phoneme* find(std::string_view symbol) const {
    auto it = index_.find(symbol);
    return it == index_.end() ? nullptr : &phonemes_[it->second];
  }

  // Throws kUnknownSymbol with the closest symbols as a hint.
  const Phoneme& at(std::string_view symbol) const {
    if (const Phoneme* p = find(symbol)) return *p;
    std::vector<std::string> symbols;
    for (const auto& p : phonemes_) symbols.push_back(p.symbol);
    throw Error(ErrorCode::kUnknownSymbol,
                "/" + std::string(symbol) + "/ is not in the " +
                    std::string(language_tag(language_)) +
                    " inventory; nearest: " + join(nearest_strings(symbol, symbols), " "));
  }

 private:
  Language language_ = Language::kEnglish;
  std::vector<Phoneme> phonemes_;
  std::string version_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

inline FeatureBundle lookup(const Inventory& inv, std::string_view symbol, LookupMode mode) {
  return inv.at(symbol).bundle(mode);
}

/// Every invariant failure of a phoneme list, in file order.
inline std::vector<std::string> check_inventory(Language lang, const std::vector<Phoneme>& phonemes) {
  std::vector<std::string> failures;
  std::size_t consonants = 0;
  std::size_t vowels = 0;
  for (const auto& p : phonemes) {
    const std::string who = "/" + p.symbol + "/";
    bool cons = p.contrastive.contains(Feature::kConsonantal);
    bool voc = p.contrastive.contains(Feature::kVocalic);
    if (cons == voc) {
      failures.push_back(who + ": needs exactly one of CONSONANTAL/VOCALIC in contrastive");
    }
    consonants += cons;
    vowels += voc;
    if (!(p.contrastive & p.optional).empty()) {
      failures.push_back(who + ": contrastive and optional overlap in " +
                         to_string(p.contrastive & p.optional));
    }
    for (const auto& v : validate_bundle(p.contrastive | p.optional)) {
      failures.push_back(who + ": exclusion pair " + v.describe());
    }
    const FeatureBundle all = p.contrastive | p.optional;
    if (voc && !p.contrastive.contains(Feature::kSonorant)) failures.push_back(who + ": VOCALIC without SONORANT");
    if (p.contrastive.contains(Feature::kSonorant) && !p.contrastive.contains(Feature::kVoice)) {
      failures.push_back(who + ": SONORANT without VOICE");
    }
    if (lang == Language::kEnglish && all.contains(Feature::kSpreadGlottis)) {
      failures.push_back(who + ": SPREAD_GLOTTIS is not contrastive in en");
    }
    if (lang == Language::kMandarin && cons && all.contains(Feature::kRhotic)) {
      failures.push_back(who + ": cmn has no RHOTIC consonant");
    }
    if (all.contains(Feature::kRadical) && !(lang == Language::kEnglish && p.symbol == "h")) {
      failures.push_back(who + ": RADICAL is reserved for en /h/");
    }
  }
  auto want = expected_counts(lang);
  auto tag = std::string(language_tag(lang));
  if (phonemes.size() != want.total) {
    failures.push_back(tag + ": " + std::to_string(phonemes.size()) + " phonemes, expected " +
                       std::to_string(want.total));
  }
  if (consonants != want.consonants) {
    failures.push_back(tag + ": " + std::to_string(consonants) + " CONSONANTAL, expected " +
                       std::to_string(want.consonants));
  }
  if (vowels != want.vowels) {
    failures.push_back(tag + ": " + std::to_string(vowels) + " VOCALIC, expected " +
                       std::to_string(want.vowels));
  }
  return failures;
}

struct InventoryRows {
  std::vector<Phoneme> phonemes;
  std::string version;
};

/// Schema-level parse only: five tab-separated columns
/// `symbol kind contrastive optional reconstructed`. Count and bundle
/// invariants are checked separately by check_inventory().
inline InventoryRows parse_inventory_rows(Language lang, std::istream& in,
                                          std::string_view source = "inventory") {
  InventoryRows rows;
  std::map<std::string, std::size_t, std::less<>> seen;
  for_each_data_line(
      in,
      [&](std::size_t line_no, const std::vector<std::string_view>& f) {
        auto where = std::string(source) + ":" + std::to_string(line_no);
        if (f.size() != 5) {
          throw Error(ErrorCode::kSchema,
                      where + ": expected 5 fields, found " + std::to_string(f.size()));
        }
        Phoneme p;
        p.symbol = std::string(f[0]);
        p.language = lang;
        if (p.symbol.empty()) throw Error(ErrorCode::kSchema, where + ": empty symbol");
        if (auto it = seen.find(p.symbol); it != seen.end()) {
          throw Error(ErrorCode::kSchema, where + ": duplicate symbol /" + p.symbol +
                                              "/ (first on line " + std::to_string(it->second) +
                                              ")");
        }
        seen.emplace(p.symbol, line_no);
        try {
          p.contrastive = parse_feature_list(f[2]);
          p.optional = parse_feature_list(f[3]);
        } catch (const Error& e) {
          throw Error(ErrorCode::kSchema, where + ": " + e.message());
        }
        if (f[4] == "true") {
          p.reconstructed = true;
        } else if (f[4] != "false") {
          throw Error(ErrorCode::kSchema, where + ": reconstructed flag must be true or false");
        }
        PhonemeKind expected;
        if (f[1] == "consonant") {
          expected = PhonemeKind::kConsonant;
        } else if (f[1] == "vowel") {
          expected = PhonemeKind::kVowel;
        } else {
          throw Error(ErrorCode::kSchema, where + ": kind must be consonant or vowel");
        }
        if (expected != p.kind()) {
          throw Error(ErrorCode::kSchema, where + ": kind '" + std::string(f[1]) +
                                              "' disagrees with CONSONANTAL/VOCALIC");
        }
        rows.phonemes.push_back(std::move(p));
      },
      [&](std::string_view comment) {
        if (auto v = version_from_comment(comment); !v.empty()) rows.version = std::string(v);
      });
  return rows;
}

inline Inventory parse_inventory(Language lang, std::istream& in,
                                 std::string_view source = "inventory") {
  auto rows = parse_inventory_rows(lang, in, source);
  auto failures = check_inventory(lang, rows.phonemes);
  if (!failures.empty()) {
    std::string msg = std::string(source) + ": " + std::to_string(failures.size()) +
                      " invariant violation(s)";
    for (const auto& f : failures) msg += "\n  " + f;
    throw Error(ErrorCode::kInvariant, msg);
  }
  return Inventory(lang, std::move(rows.phonemes), std::move(rows.version));
}

inline Inventory load_inventory(Language lang, const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_inventory(lang, in, path.filename().string());
}

struct InventoryStats {
  Language language = Language::kEnglish;
  std::size_t total = 0;
  std::size_t consonants = 0;
  std::size_t vowels = 0;
  std::array<std::size_t, kFeatureCount> per_feature{};

  std::size_t count(Feature f) const { return per_feature[index_of(f)]; }
};

// Feature counts use cross-lingual bundles.
inline InventoryStats inventory_stats(const Inventory& inv) {
  InventoryStats stats;
  stats.language = inv.language();
  stats.total = inv.size();
  for (const auto& p : inv.phonemes()) {
    (p.kind() == PhonemeKind::kVowel ? stats.vowels : stats.consonants)++;
    auto b = p.bundle(LookupMode::kCrossLingual);
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      if (b.contains(feature_at(i))) ++stats.per_feature[i];
    }
  }
  return stats;
}

inline std::string format_stats(const InventoryStats& stats) {
  std::ostringstream out;
  out << "language: " << language_tag(stats.language) << '\n'
      << "phonemes: " << stats.total << '\n'
      << "consonants: " << stats.consonants << '\n'
      << "vowels: " << stats.vowels << '\n';
  for (const auto& info : kFeatureTable) {
    out << info.name << ": " << stats.count(info.feature) << '\n';
  }
  return out.str();
}

}  // namespace phonfront

#endif  // PHONFRONT_INVENTORY_HPP_
