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

// Pinyin syllables -> underlying Mandarin phonemes, erhua, and the
// dental/alveolo-palatal allophony.

#ifndef PHONFRONT_MANDARIN_HPP_
#define PHONFRONT_MANDARIN_HPP_

#include <algorithm>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "phonfront/error.hpp"
#include "phonfront/inventory.hpp"
#include "phonfront/pinyin.hpp"
#include "phonfront/segment.hpp"
#include "phonfront/text.hpp"

namespace phonfront {

// Final key used for the syllabic segment of zi ci si zhi chi shi ri.
inline constexpr std::string_view kApicalFinalKey = "i:apical";

inline bool takes_apical_vowel(std::string_view initial) {
  return initial == "z" || initial == "c" || initial == "s" || initial == "zh" ||
         initial == "ch" || initial == "sh" || initial == "r";
}

using PhonemeString = std::vector<std::string>;

/// Initial and final decompositions. File keys are `b-` for initials and
/// `-ai` for finals, each mapped to a space-separated phoneme sequence.
class PinyinTable {
 public:
  static PinyinTable parse(std::istream& in, std::string_view source = "pinyin") {
    PinyinTable t;
    for_each_data_line(in, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
      auto where = std::string(source) + ":" + std::to_string(line_no);
      if (f.size() != 2) throw Error(ErrorCode::kSchema, where + ": expected key and phonemes");
      std::string_view key = f[0];
      PhonemeString phonemes;
      for (auto p : split_whitespace(f[1])) phonemes.emplace_back(p);
      if (phonemes.empty()) throw Error(ErrorCode::kSchema, where + ": empty phoneme sequence");
      std::map<std::string, PhonemeString, std::less<>>* target = nullptr;
      if (key.size() > 1 && key.back() == '-') {
        key.remove_suffix(1);
        target = &t.initials_;
      } else if (key.size() > 1 && key.front() == '-') {
        key.remove_prefix(1);
        target = &t.finals_;
      } else {
        throw Error(ErrorCode::kSchema, where + ": key must look like 'b-' or '-ai'");
      }
      if (!target->emplace(std::string(key), std::move(phonemes)).second) {
        throw Error(ErrorCode::kSchema, where + ": duplicate key " + std::string(f[0]));
      }
    });
    return t;
  }

  static PinyinTable load(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse(in, path.filename().string());
  }

  const PhonemeString* initial(std::string_view key) const {
    auto it = initials_.find(key);
    return it == initials_.end() ? nullptr : &it->second;
  }
  const PhonemeString* final(std::string_view key) const {
    auto it = finals_.find(key);
    return it == finals_.end() ? nullptr : &it->second;
  }

  const std::map<std::string, PhonemeString, std::less<>>& initials() const { return initials_; }
  const std::map<std::string, PhonemeString, std::less<>>& finals() const { return finals_; }

  std::vector<std::string> check_against(const Inventory& cmn) const {
    std::vector<std::string> failures;
    auto check = [&](const auto& map, std::string_view kind) {
      for (const auto& [key, seq] : map) {
        for (const auto& p : seq) {
          if (!cmn.find(p)) {
            failures.push_back(std::string(kind) + " " + key + " -> /" + p + "/ not in inventory");
          }
        }
      }
    };
    check(initials_, "initial");
    check(finals_, "final");
    return failures;
  }

 private:
  std::map<std::string, PhonemeString, std::less<>> initials_;
  std::map<std::string, PhonemeString, std::less<>> finals_;
};

/// Erhua rewrites: the longest suffix of a final's phoneme string found in
/// the table is replaced by its rhotacized counterpart.
class ErhuaRules {
 public:
  struct Rule {
    PhonemeString suffix;
    PhonemeString replacement;
  };

  static ErhuaRules parse(std::istream& in, std::string_view source = "erhua") {
    ErhuaRules r;
    for_each_data_line(in, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
      auto where = std::string(source) + ":" + std::to_string(line_no);
      if (f.size() != 2) throw Error(ErrorCode::kSchema, where + ": expected suffix and replacement");
      Rule rule;
      for (auto p : split_whitespace(f[0])) rule.suffix.emplace_back(p);
      for (auto p : split_whitespace(f[1])) rule.replacement.emplace_back(p);
      if (rule.suffix.empty() || rule.replacement.empty()) {
        throw Error(ErrorCode::kSchema, where + ": empty sequence");
      }
      r.rules_.push_back(std::move(rule));
    });
    std::stable_sort(r.rules_.begin(), r.rules_.end(), [](const Rule& a, const Rule& b) {
      return a.suffix.size() > b.suffix.size();
    });
    return r;
  }

  static ErhuaRules load(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse(in, path.filename().string());
  }

  // False when no rule applies; `final` is untouched then.
  bool apply(PhonemeString& final) const {
    for (const auto& rule : rules_) {
      if (rule.suffix.size() > final.size()) continue;
      if (!std::equal(rule.suffix.begin(), rule.suffix.end(), final.end() - rule.suffix.size())) {
        continue;
      }
      final.erase(final.end() - rule.suffix.size(), final.end());
      final.insert(final.end(), rule.replacement.begin(), rule.replacement.end());
      return true;
    }
    return false;
  }

  const std::vector<Rule>& rules() const { return rules_; }

 private:
  std::vector<Rule> rules_;
};

/// Surface allophones with their context and feature bundles. The file
/// has `surface underlying triggers contrastive optional` per line.
class AllophonySet {
 public:
  struct Rule {
    std::string underlying;
    std::vector<std::string> triggers;  // phonemes that must follow
    Phoneme surface;
  };

  static AllophonySet parse(std::istream& in, std::string_view source = "allophones") {
    AllophonySet set;
    for_each_data_line(in, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
      auto where = std::string(source) + ":" + std::to_string(line_no);
      if (f.size() != 5) throw Error(ErrorCode::kSchema, where + ": expected 5 fields");
      Rule rule;
      rule.surface.symbol = std::string(f[0]);
      rule.surface.language = Language::kMandarin;
      rule.underlying = std::string(f[1]);
      for (auto t : split(f[2], ',')) rule.triggers.emplace_back(trim(t));
      try {
        rule.surface.contrastive = parse_feature_list(f[3]);
        rule.surface.optional = parse_feature_list(f[4]);
      } catch (const Error& e) {
        throw Error(ErrorCode::kSchema, where + ": " + e.message());
      }
      if (set.find_rule(rule.underlying)) {
        throw Error(ErrorCode::kSchema, where + ": second rule for /" + rule.underlying + "/");
      }
      set.rules_.push_back(std::move(rule));
    });
    return set;
  }

  static AllophonySet load(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse(in, path.filename().string());
  }

  const Rule* find_rule(std::string_view underlying) const {
    for (const auto& r : rules_) {
      if (r.underlying == underlying) return &r;
    }
    return nullptr;
  }

  const Phoneme* find_surface(std::string_view symbol) const {
    for (const auto& r : rules_) {
      if (r.surface.symbol == symbol) return &r.surface;
    }
    return nullptr;
  }

  bool is_surface_allophone(std::string_view symbol) const { return find_surface(symbol) != nullptr; }

  const std::vector<Rule>& rules() const { return rules_; }

  std::vector<std::string> check_against(const Inventory& cmn) const {
    std::vector<std::string> failures;
    for (const auto& r : rules_) {
      if (!cmn.find(r.underlying)) failures.push_back("/" + r.underlying + "/ not in inventory");
      for (const auto& t : r.triggers) {
        if (!cmn.find(t)) failures.push_back("trigger /" + t + "/ not in inventory");
      }
      if (cmn.find(r.surface.symbol)) {
        failures.push_back("[" + r.surface.symbol + "] is also an inventory phoneme");
      }
      for (const auto& v : validate_bundle(r.surface.contrastive | r.surface.optional)) {
        failures.push_back("[" + r.surface.symbol + "]: exclusion pair " + v.describe());
      }
    }
    return failures;
  }

 private:
  std::vector<Rule> rules_;
};

/// Decomposes one syllable into underlying phonemes. The tone goes on
/// every VOCALIC segment; apical syllables have none, so it goes on the
/// syllabic segment instead. The syllable's break lands on its last segment.
inline SegmentSequence syllable_to_segments(const PinyinSyllable& syl, const PinyinTable& table,
                                            const ErhuaRules& erhua, const Inventory& cmn) {
  const std::string label = syl.spelling();
  PhonemeString onset;
  if (syl.initial) {
    const PhonemeString* ini = table.initial(*syl.initial);
    if (!ini) {
      throw Error(ErrorCode::kDecompositionGap, "no decomposition for initial '" + *syl.initial +
                                                    "' in '" + label + "'");
    }
    onset = *ini;
  }
  std::string_view final_key = syl.final;
  if (syl.initial && takes_apical_vowel(*syl.initial) && syl.final == "i") {
    final_key = kApicalFinalKey;
  }
  const PhonemeString* fin = table.final(final_key);
  if (!fin) {
    throw Error(ErrorCode::kDecompositionGap,
                "no decomposition for final '" + syl.final + "' in '" + label + "'");
  }
  PhonemeString rhyme = *fin;
  if (syl.erhua && !erhua.apply(rhyme)) {
    throw Error(ErrorCode::kDecompositionGap,
                "final '" + syl.final + "' in '" + label + "' has no rhotacized counterpart");
  }

  SegmentSequence seq;
  for (const auto& p : onset) seq.segments.push_back(make_segment(Language::kMandarin, p));
  const std::size_t rhyme_begin = seq.size();
  for (const auto& p : rhyme) seq.segments.push_back(make_segment(Language::kMandarin, p));

  bool any_vocalic = false;
  for (auto& s : seq.segments) {
    if (cmn.at(s.phoneme).kind() == PhonemeKind::kVowel) {
      s.tone = syl.tone;
      any_vocalic = true;
    }
  }
  if (!any_vocalic) {
    for (std::size_t i = rhyme_begin; i < seq.size(); ++i) seq[i].tone = syl.tone;
  }
  if (!seq.empty()) seq.segments.back().prosody_break_after = syl.break_after;
  return seq;
}

/// Rewrites surface symbols of Mandarin segments from the underlying
/// phoneme and the next segment. Recomputing from the underlying form
/// makes the pass idempotent.
inline SegmentSequence apply_allophony(SegmentSequence seq, const AllophonySet& rules) {
  for (std::size_t i = 0; i < seq.size(); ++i) {
    Segment& s = seq[i];
    if (s.language != Language::kMandarin) continue;
    const auto* rule = rules.find_rule(s.phoneme);
    if (!rule) continue;
    bool triggered = false;
    if (i + 1 < seq.size() && seq[i + 1].language == Language::kMandarin) {
      const auto& next = seq[i + 1].phoneme;
      triggered = std::find(rule->triggers.begin(), rule->triggers.end(), next) !=
                  rule->triggers.end();
    }
    s.surface = triggered ? rule->surface.symbol : s.phoneme;
  }
  return seq;
}

}  // namespace phonfront

#endif  // PHONFRONT_MANDARIN_HPP_
