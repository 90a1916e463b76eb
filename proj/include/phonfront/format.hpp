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

#ifndef PHONFRONT_FORMAT_HPP_
#define PHONFRONT_FORMAT_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "phonfront/arpabet.hpp"
#include "phonfront/error.hpp"
#include "phonfront/segment.hpp"
#include "phonfront/text.hpp"

namespace phonfront {

enum class Notation : std::uint8_t { kIpa, kSampa, kArpabet };

inline std::optional<Notation> notation_from_name(std::string_view name) {
  if (name == "ipa") return Notation::kIpa;
  if (name == "sampa") return Notation::kSampa;
  if (name == "arpabet") return Notation::kArpabet;
  return std::nullopt;
}

// IPA -> SAMPA (English) / SAMPA-SC (Mandarin) and IPA -> ARPABET label.
class SymbolMap {
 public:
  // English SAMPA comes from the aligned columns of the ARPABET table.
  static SymbolMap build(const ArpabetTable& arpabet, std::istream& cmn_sampa,
                         std::string_view source = "cmn.sampa") {
    SymbolMap m;
    for (const auto& [key, e] : arpabet.entries()) {
      for (std::size_t i = 0; i < e.ipa.size(); ++i) {
        auto [it, inserted] = m.en_sampa_.emplace(e.ipa[i], e.sampa[i]);
        if (!inserted && it->second != e.sampa[i]) {
          throw Error(ErrorCode::kSchema, "arpabet: /" + e.ipa[i] + "/ has two SAMPA renderings");
        }
      }
      if (e.ipa.size() == 1) m.arpabet_.emplace(e.ipa.front(), e.label);
    }
    for_each_data_line(cmn_sampa, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
      auto where = std::string(source) + ":" + std::to_string(line_no);
      if (f.size() != 2) throw Error(ErrorCode::kSchema, where + ": expected ipa and sampa");
      if (!m.cmn_sampa_.emplace(std::string(f[0]), std::string(f[1])).second) {
        throw Error(ErrorCode::kSchema, where + ": duplicate symbol " + std::string(f[0]));
      }
    });
    return m;
  }

  static SymbolMap load(const ArpabetTable& arpabet, const std::filesystem::path& cmn_sampa) {
    auto in = open_input(cmn_sampa);
    return build(arpabet, in, cmn_sampa.filename().string());
  }

  std::optional<std::string> sampa(Language lang, std::string_view ipa) const {
    const auto& table = lang == Language::kEnglish ? en_sampa_ : cmn_sampa_;
    auto it = table.find(ipa);
    if (it == table.end()) return std::nullopt;
    return it->second;
  }

  std::optional<std::string> arpabet(std::string_view ipa) const {
    auto it = arpabet_.find(ipa);
    if (it == arpabet_.end()) return std::nullopt;
    return it->second;
  }

  // Distinct SAMPA symbols across both languages.
  std::size_t sampa_vocabulary_size() const {
    std::set<std::string> all;
    for (const auto& [ipa, s] : en_sampa_) all.insert(s);
    for (const auto& [ipa, s] : cmn_sampa_) all.insert(s);
    return all.size();
  }

  const std::map<std::string, std::string, std::less<>>& cmn_sampa() const { return cmn_sampa_; }

 private:
  std::map<std::string, std::string, std::less<>> en_sampa_;
  std::map<std::string, std::string, std::less<>> cmn_sampa_;
  std::map<std::string, std::string, std::less<>> arpabet_;
};

/// Space-separated rendering of the surface symbols. Tones follow the
/// symbol as a digit, prosodic breaks become `#n` tokens. The ARPABET
/// notation prints English labels with stress; Mandarin segments have no
/// ARPABET label and fall back to SAMPA-SC. Unmapped symbols print as IPA.
inline std::string format_sequence(const SegmentSequence& seq, Notation notation,
                                   const SymbolMap& symbols) {
  std::string out;
  for (const auto& s : seq.segments) {
    if (!out.empty()) out += ' ';
    std::optional<std::string> token;
    if (notation == Notation::kArpabet && s.language == Language::kEnglish) {
      token = symbols.arpabet(s.surface);
      if (token && s.stress) *token += static_cast<char>('0' + *s.stress);
    } else if (notation != Notation::kIpa) {
      token = symbols.sampa(s.language, s.surface);
    }
    out += token.value_or(s.surface);
    if (s.tone) out += static_cast<char>('0' + *s.tone);
    if (s.prosody_break_after > 0) out += " #" + std::to_string(s.prosody_break_after);
  }
  return out;
}

}  // namespace phonfront

#endif  // PHONFRONT_FORMAT_HPP_
