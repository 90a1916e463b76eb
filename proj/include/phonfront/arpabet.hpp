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

// ARPABET (CMU) token streams -> English segments, via the SAMPA/IPA table.

#ifndef PHONFRONT_ARPABET_HPP_
#define PHONFRONT_ARPABET_HPP_

#include <cctype>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phonfront/error.hpp"
#include "phonfront/inventory.hpp"
#include "phonfront/segment.hpp"
#include "phonfront/text.hpp"

namespace phonfront {

struct ArpabetToken {
  std::string label;
  std::optional<int> stress;

  friend bool operator==(const ArpabetToken&, const ArpabetToken&) = default;
};

struct ArpabetEntry {
  std::string label;                // bare label, e.g. "AH"
  std::optional<int> stress_guard;  // set for stress-qualified rows such as AH0
  std::vector<std::string> sampa;
  std::vector<std::string> ipa;
};

class ArpabetTable {
 public:
  ArpabetTable() = default;

  static ArpabetTable parse(std::istream& in, std::string_view source = "arpabet") {
    ArpabetTable table;
    for_each_data_line(in, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
      auto where = std::string(source) + ":" + std::to_string(line_no);
      if (f.size() != 3) throw Error(ErrorCode::kSchema, where + ": expected arpabet, sampa, ipa");
      ArpabetEntry e;
      std::string_view key = f[0];
      if (!key.empty() && std::isdigit(static_cast<unsigned char>(key.back()))) {
        e.stress_guard = key.back() - '0';
        key.remove_suffix(1);
      }
      if (key.empty()) throw Error(ErrorCode::kSchema, where + ": empty label");
      for (char c : key) {
        if (!std::isupper(static_cast<unsigned char>(c))) {
          throw Error(ErrorCode::kSchema, where + ": label must be upper-case letters");
        }
      }
      e.label = std::string(key);
      for (auto s : split_whitespace(f[1])) e.sampa.emplace_back(s);
      for (auto s : split_whitespace(f[2])) e.ipa.emplace_back(s);
      if (e.ipa.empty() || e.ipa.size() != e.sampa.size()) {
        throw Error(ErrorCode::kSchema, where + ": sampa and ipa sequences must align");
      }
      std::string full = std::string(f[0]);
      if (table.entries_.count(full)) {
        throw Error(ErrorCode::kSchema, where + ": duplicate label " + full);
      }
      table.entries_.emplace(full, std::move(e));
    });
    return table;
  }

  static ArpabetTable load(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse(in, path.filename().string());
  }

  // Stress-qualified row first, then the bare label.
  const ArpabetEntry* resolve(std::string_view label, std::optional<int> stress) const {
    if (stress) {
      auto it = entries_.find(std::string(label) + static_cast<char>('0' + *stress));
      if (it != entries_.end()) return &it->second;
    }
    auto it = entries_.find(std::string(label));
    return it == entries_.end() ? nullptr : &it->second;
  }

  bool has_label(std::string_view label) const {
    for (int s = 0; s <= 2; ++s) {
      if (resolve(label, s)) return true;
    }
    return resolve(label, std::nullopt) != nullptr;
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (const auto& [key, e] : entries_) {
      if (out.empty() || out.back() != e.label) out.push_back(e.label);
    }
    return out;
  }

  const std::map<std::string, ArpabetEntry, std::less<>>& entries() const { return entries_; }

  // Table rows whose phonemes are missing from the inventory.
  std::vector<std::string> check_against(const Inventory& en) const {
    std::vector<std::string> failures;
    for (const auto& [key, e] : entries_) {
      for (const auto& sym : e.ipa) {
        if (!en.find(sym)) failures.push_back(key + " -> /" + sym + "/ not in inventory");
      }
    }
    return failures;
  }

  // A label is vocalic when its first phoneme is VOCALIC.
  bool is_vowel_label(std::string_view label, const Inventory& en) const {
    const ArpabetEntry* e = resolve(label, std::nullopt);
    if (!e) e = resolve(label, 1);
    if (!e) e = resolve(label, 0);
    if (!e) return false;
    const Phoneme* p = en.find(e->ipa.front());
    return p && p->kind() == PhonemeKind::kVowel;
  }

  // Reverse map for single-phoneme rows: IPA symbol -> bare label.
  std::optional<std::string> label_for(std::string_view ipa) const {
    for (const auto& [key, e] : entries_) {
      if (e.ipa.size() == 1 && e.ipa.front() == ipa) return e.label;
    }
    return std::nullopt;
  }

 private:
  std::map<std::string, ArpabetEntry, std::less<>> entries_;
};

/// Splits one token into label and stress digit. `index` is the token
/// position reported in errors.
inline ArpabetToken split_arpabet_token(std::string_view token, std::size_t index) {
  std::size_t i = 0;
  std::string label;
  while (i < token.size() && std::isalpha(static_cast<unsigned char>(token[i]))) {
    label += static_cast<char>(std::toupper(static_cast<unsigned char>(token[i])));
    ++i;
  }
  std::string_view rest = token.substr(i);
  if (label.empty()) {
    throw Error(ErrorCode::kUnknownToken,
                "token " + std::to_string(index) + " '" + std::string(token) + "'", index);
  }
  ArpabetToken out{label, std::nullopt};
  if (rest.empty()) return out;
  for (char c : rest) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw Error(ErrorCode::kUnknownToken,
                  "token " + std::to_string(index) + " '" + std::string(token) + "'", index);
    }
  }
  if (rest.size() != 1 || rest[0] > '2') {
    throw Error(ErrorCode::kMalformedStress,
                "token " + std::to_string(index) + " '" + std::string(token) +
                    "': stress must be a single digit 0-2",
                index);
  }
  out.stress = rest[0] - '0';
  return out;
}

// "#1".."#3" as a prosody marker, 0 if the token is not one.
inline int prosody_marker_level(std::string_view token) {
  if (token.size() == 2 && token[0] == '#' && token[1] >= '1' && token[1] <= '3') {
    return token[1] - '0';
  }
  return 0;
}

/// Whitespace-separated ARPABET tokens to English segments. Diphthong
/// labels expand to nucleus + glide with the stress on the nucleus.
/// Prosody markers #1..#3 attach to the preceding segment.
inline SegmentSequence parse_arpabet(std::string_view text, const ArpabetTable& table,
                                     const Inventory& en) {
  SegmentSequence seq;
  auto tokens = split_whitespace(text);
  for (std::size_t index = 0; index < tokens.size(); ++index) {
    std::string_view raw = tokens[index];
    if (int level = prosody_marker_level(raw)) {
      if (seq.empty()) {
        throw Error(ErrorCode::kUnknownToken,
                    "prosody marker at token 0 has no preceding segment", index);
      }
      seq.segments.back().prosody_break_after = level;
      continue;
    }
    ArpabetToken tok = split_arpabet_token(raw, index);
    const ArpabetEntry* entry = table.resolve(tok.label, tok.stress);
    if (!entry) {
      auto hint = nearest_strings(tok.label, table.labels());
      throw Error(ErrorCode::kUnknownToken,
                  "token " + std::to_string(index) + " '" + std::string(raw) +
                      "' is not an ARPABET label; nearest: " + join(hint, " "),
                  index);
    }
    if (tok.stress && !table.is_vowel_label(tok.label, en)) {
      throw Error(ErrorCode::kMalformedStress,
                  "token " + std::to_string(index) + " '" + std::string(raw) +
                      "': stress on a consonant label",
                  index);
    }
    for (std::size_t k = 0; k < entry->ipa.size(); ++k) {
      Segment s = make_segment(Language::kEnglish, en.at(entry->ipa[k]).symbol);
      if (k == 0) s.stress = tok.stress;
      seq.segments.push_back(std::move(s));
    }
  }
  return seq;
}

}  // namespace phonfront

#endif  // PHONFRONT_ARPABET_HPP_
