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

// Locating and loading the bundled data tables as one immutable snapshot.

#ifndef PHONFRONT_RESOURCES_HPP_
#define PHONFRONT_RESOURCES_HPP_

#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "phonfront/arpabet.hpp"
#include "phonfront/encoder.hpp"
#include "phonfront/error.hpp"
#include "phonfront/feature.hpp"
#include "phonfront/format.hpp"
#include "phonfront/inventory.hpp"
#include "phonfront/mandarin.hpp"
#include "phonfront/pinyin.hpp"
#include "phonfront/xling.hpp"

#ifndef PHONFRONT_DEFAULT_DATA_DIR
#define PHONFRONT_DEFAULT_DATA_DIR "data"
#endif

namespace phonfront {

inline constexpr const char* kDataDirEnv = "PHONFRONT_DATA";

/// $PHONFRONT_DATA when set and non-empty, else the build-time data dir.
inline std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv(kDataDirEnv); env && *env) return env;
  return PHONFRONT_DEFAULT_DATA_DIR;
}

struct DataPaths {
  std::filesystem::path contract;
  std::filesystem::path en_inventory;
  std::filesystem::path cmn_inventory;
  std::filesystem::path allophones;
  std::filesystem::path arpabet;
  std::filesystem::path cmn_sampa;
  std::filesystem::path pinyin;
  std::filesystem::path erhua;
  std::filesystem::path syllabary;
  std::filesystem::path conflicts;

  static DataPaths in(const std::filesystem::path& dir) {
    return {dir / "features.contract", dir / "en.inventory.tsv", dir / "cmn.inventory.tsv",
            dir / "cmn.allophones.tsv", dir / "arpabet.tsv",     dir / "cmn.sampa.tsv",
            dir / "pinyin.tsv",         dir / "cmn.erhua.tsv",   dir / "syllabary.txt",
            dir / "conflicts.tsv"};
  }
};

struct Resources {
  Inventory en;
  Inventory cmn;
  AllophonySet allophones;
  ArpabetTable arpabet;
  SymbolMap symbols;
  PinyinTable pinyin;
  ErhuaRules erhua;
  Syllabary syllabary;
  ConflictTable conflicts;

  static Resources load(const DataPaths& paths) {
    verify_feature_contract(paths.contract);
    Resources r;
    r.en = load_inventory(Language::kEnglish, paths.en_inventory);
    r.cmn = load_inventory(Language::kMandarin, paths.cmn_inventory);
    r.allophones = AllophonySet::load(paths.allophones);
    r.arpabet = ArpabetTable::load(paths.arpabet);
    r.symbols = SymbolMap::load(r.arpabet, paths.cmn_sampa);
    r.pinyin = PinyinTable::load(paths.pinyin);
    r.erhua = ErhuaRules::load(paths.erhua);
    r.syllabary = Syllabary::load(paths.syllabary);
    r.conflicts = ConflictTable::load(paths.conflicts);
    return r;
  }

  static Resources load(const std::filesystem::path& dir) { return load(DataPaths::in(dir)); }
  static Resources load_default() { return load(default_data_dir()); }

  PhonemeResolver resolver() const { return PhonemeResolver(en, cmn, allophones); }
};

struct ValidationReport {
  std::vector<std::string> failures;
  std::size_t syllables_checked = 0;
  std::size_t sampa_vocabulary = 0;

  bool ok() const { return failures.empty(); }
};

/// Cross-checks every table against the inventories and decomposes every
/// legal syllable with every tone, plain and (where defined) rhotacized.
inline ValidationReport validate_resources(const Resources& r) {
  ValidationReport rep;
  auto add = [&rep](const std::vector<std::string>& more) {
    rep.failures.insert(rep.failures.end(), more.begin(), more.end());
  };
  add(check_inventory(Language::kEnglish, r.en.phonemes()));
  add(check_inventory(Language::kMandarin, r.cmn.phonemes()));
  add(r.arpabet.check_against(r.en));
  add(r.pinyin.check_against(r.cmn));
  add(r.allophones.check_against(r.cmn));
  for (const auto& rule : r.erhua.rules()) {
    for (const auto* seq : {&rule.suffix, &rule.replacement}) {
      for (const auto& p : *seq) {
        if (!r.cmn.find(p)) rep.failures.push_back("erhua rule uses /" + p + "/, not in inventory");
      }
    }
  }
  for (const auto& p : r.cmn.phonemes()) {
    if (!r.symbols.sampa(Language::kMandarin, p.symbol)) {
      rep.failures.push_back("cmn /" + p.symbol + "/ has no SAMPA-SC symbol");
    }
  }
  for (const auto& rule : r.allophones.rules()) {
    if (!r.symbols.sampa(Language::kMandarin, rule.surface.symbol)) {
      rep.failures.push_back("cmn [" + rule.surface.symbol + "] has no SAMPA-SC symbol");
    }
  }
  for (const auto& p : r.en.phonemes()) {
    if (!r.symbols.sampa(Language::kEnglish, p.symbol)) {
      rep.failures.push_back("en /" + p.symbol + "/ has no SAMPA symbol");
    }
  }
  for (const auto& spelling : r.syllabary.syllables()) {
    for (int tone = 1; tone <= 5; ++tone) {
      PinyinSyllable syl = split_spelling(spelling);
      syl.tone = tone;
      try {
        (void)syllable_to_segments(syl, r.pinyin, r.erhua, r.cmn);
      } catch (const Error& e) {
        rep.failures.push_back(spelling + std::to_string(tone) + ": " + e.what());
      }
      ++rep.syllables_checked;
    }
  }
  rep.sampa_vocabulary = r.symbols.sampa_vocabulary_size();
  return rep;
}

}  // namespace phonfront

#endif  // PHONFRONT_RESOURCES_HPP_
