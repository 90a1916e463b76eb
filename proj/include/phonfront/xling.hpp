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

// FUL-style match / mismatch / no-mismatch comparison between feature
// bundles, nearest-native-category mapping, and inventory comparison.

#ifndef PHONFRONT_XLING_HPP_
#define PHONFRONT_XLING_HPP_

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phonfront/error.hpp"
#include "phonfront/feature.hpp"
#include "phonfront/inventory.hpp"
#include "phonfront/text.hpp"

namespace phonfront {

/// Unordered pairs of antagonistic features. Lookup is symmetric.
class ConflictTable {
 public:
  ConflictTable() = default;

  static ConflictTable defaults() {
    ConflictTable t;
    for (const auto& p : kExclusionPairs) t.add(p.first, p.second);
    return t;
  }

  static ConflictTable parse(std::istream& in, std::string_view source = "conflicts") {
    ConflictTable t;
    for_each_data_line(in, [&](std::size_t line_no, const std::vector<std::string_view>& f) {
      auto where = std::string(source) + ":" + std::to_string(line_no);
      if (f.size() != 2) throw Error(ErrorCode::kSchema, where + ": expected FEATURE_A and FEATURE_B");
      auto a = feature_from_name(f[0]);
      auto b = feature_from_name(f[1]);
      if (!a || !b) {
        throw Error(ErrorCode::kSchema, where + ": unknown feature " + std::string(!a ? f[0] : f[1]));
      }
      if (*a == *b) throw Error(ErrorCode::kSchema, where + ": a feature cannot conflict with itself");
      t.add(*a, *b);
    });
    return t;
  }

  static ConflictTable load(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse(in, path.filename().string());
  }

  void add(Feature a, Feature b) { pairs_.insert(ordered(a, b)); }

  bool conflicts(Feature a, Feature b) const { return pairs_.count(ordered(a, b)) > 0; }

  std::size_t size() const { return pairs_.size(); }

  std::vector<FeaturePair> pairs() const {
    std::vector<FeaturePair> out;
    for (const auto& [a, b] : pairs_) out.push_back({a, b});
    return out;
  }

  friend bool operator==(const ConflictTable&, const ConflictTable&) = default;

 private:
  static std::pair<Feature, Feature> ordered(Feature a, Feature b) {
    return index_of(a) <= index_of(b) ? std::pair{a, b} : std::pair{b, a};
  }

  std::set<std::pair<Feature, Feature>> pairs_;
};

enum class MatchPolicy : std::uint8_t {
  kSymmetric,   // normalise by the larger bundle
  kAsymmetric,  // normalise by the lexical bundle: unmatched surface features cost nothing
};

inline std::optional<MatchPolicy> match_policy_from_name(std::string_view name) {
  if (name == "symmetric") return MatchPolicy::kSymmetric;
  if (name == "asymmetric") return MatchPolicy::kAsymmetric;
  return std::nullopt;
}

struct MatchReport {
  FeatureBundle matches;                          // in both bundles
  std::vector<std::pair<Feature, Feature>> mismatches;  // (surface, lexical) conflict pairs
  FeatureBundle nomismatches;                     // surface-only, conflicting with nothing lexical
  double score = 0.0;

  // Surface features taking part in at least one mismatch pair.
  FeatureBundle mismatched_surface() const {
    FeatureBundle out;
    for (const auto& [s, l] : mismatches) out.insert(s);
    return out;
  }
};

/// Each surface feature is a match (also lexical), a mismatch (surface-only
/// and in conflict with some lexical feature) or a no-mismatch.
/// score = (|matches| - |mismatch pairs|) / max(|surface|, |lexical|, 1),
/// clamped to [-1, 1] so custom conflict tables cannot leave the range.
inline MatchReport ful_match(const FeatureBundle& surface, const FeatureBundle& lexical,
                             const ConflictTable& table,
                             MatchPolicy policy = MatchPolicy::kSymmetric) {
  MatchReport r;
  r.matches = surface & lexical;
  const auto lexical_features = lexical.members();
  for (Feature s : (surface - lexical).members()) {
    bool conflicted = false;
    for (Feature l : lexical_features) {
      if (table.conflicts(s, l)) {
        r.mismatches.emplace_back(s, l);
        conflicted = true;
      }
    }
    if (!conflicted) r.nomismatches.insert(s);
  }
  std::size_t denom = policy == MatchPolicy::kSymmetric ? std::max(surface.size(), lexical.size())
                                                        : lexical.size();
  denom = std::max<std::size_t>(denom, 1);
  const double raw = (static_cast<double>(r.matches.size()) - static_cast<double>(r.mismatches.size())) /
                     static_cast<double>(denom);
  r.score = std::clamp(raw, -1.0, 1.0);
  return r;
}

struct NativeCandidate {
  const Phoneme* phoneme = nullptr;
  MatchReport report;
};

struct NativeMapping {
  std::vector<NativeCandidate> ranking;
  // The source carries lexical tone and the target language has none; tone
  // is never part of the score.
  bool no_native_tonal_contrast = false;
};

/// Scores every target phoneme against `p` (p is the surface, the target
/// phoneme the lexical entry). Order: score descending, then fewer
/// mismatches, then symbol byte order.
inline NativeMapping nearest_native(const Phoneme& p, const Inventory& target, LookupMode mode,
                                    const ConflictTable& table,
                                    MatchPolicy policy = MatchPolicy::kSymmetric) {
  NativeMapping out;
  out.no_native_tonal_contrast = is_tonal(p.language) && !is_tonal(target.language());
  const FeatureBundle surface = p.bundle(mode);
  for (const auto& q : target.phonemes()) {
    out.ranking.push_back({&q, ful_match(surface, q.bundle(mode), table, policy)});
  }
  std::sort(out.ranking.begin(), out.ranking.end(), [](const NativeCandidate& a, const NativeCandidate& b) {
    if (a.report.score != b.report.score) return a.report.score > b.report.score;
    if (a.report.mismatches.size() != b.report.mismatches.size()) {
      return a.report.mismatches.size() < b.report.mismatches.size();
    }
    return a.phoneme->symbol < b.phoneme->symbol;
  });
  return out;
}

// Obstruent pairs whose bundles differ in exactly one LARYNGEAL feature.
struct LaryngealPair {
  std::string first;
  std::string second;
  Feature feature;
};

struct LaryngealProfile {
  std::vector<LaryngealPair> pairs;

  std::map<Feature, std::size_t> counts() const {
    std::map<Feature, std::size_t> out;
    for (const auto& p : pairs) ++out[p.feature];
    return out;
  }

  // Feature with the most minimal pairs; ties go to the earlier feature.
  std::optional<Feature> dominant() const {
    std::optional<Feature> best;
    std::size_t best_count = 0;
    for (const auto& [f, n] : counts()) {
      if (n > best_count) {
        best = f;
        best_count = n;
      }
    }
    return best;
  }
};

inline LaryngealProfile laryngeal_profile(const Inventory& inv, LookupMode mode = LookupMode::kContrastive) {
  LaryngealProfile out;
  const auto& ph = inv.phonemes();
  for (std::size_t i = 0; i < ph.size(); ++i) {
    const FeatureBundle a = ph[i].bundle(mode);
    if (!a.contains(Feature::kObstruent)) continue;
    for (std::size_t j = i + 1; j < ph.size(); ++j) {
      const FeatureBundle b = ph[j].bundle(mode);
      if (!b.contains(Feature::kObstruent)) continue;
      const auto diff = ((a - b) | (b - a)).members();
      if (diff.size() == 1 && node_of(diff.front()) == Node::kLaryngeal) {
        // Unmarked member first.
        bool a_marked = a.contains(diff.front());
        out.pairs.push_back({a_marked ? ph[j].symbol : ph[i].symbol,
                             a_marked ? ph[i].symbol : ph[j].symbol, diff.front()});
      }
    }
  }
  return out;
}

struct InventoryDiff {
  Language a;
  Language b;
  FeatureBundle only_in_a;  // features specified somewhere in a, nowhere in b
  FeatureBundle only_in_b;
  std::vector<std::string> unmatched_a;  // no score-1 counterpart in b
  std::vector<std::string> unmatched_b;
  LaryngealProfile laryngeal_a;
  LaryngealProfile laryngeal_b;

  bool empty() const {
    return only_in_a.empty() && only_in_b.empty() && unmatched_a.empty() && unmatched_b.empty() &&
           laryngeal_a.counts() == laryngeal_b.counts();
  }
};

inline FeatureBundle features_used(const Inventory& inv) {
  FeatureBundle out;
  for (const auto& p : inv.phonemes()) out = out | p.contrastive | p.optional;
  return out;
}

inline InventoryDiff inventory_diff(const Inventory& a, const Inventory& b,
                                    LookupMode mode = LookupMode::kContrastive,
                                    const ConflictTable& table = ConflictTable::defaults()) {
  InventoryDiff d{a.language(), b.language(), {}, {}, {}, {}, {}, {}};
  const FeatureBundle fa = features_used(a);
  const FeatureBundle fb = features_used(b);
  d.only_in_a = fa - fb;
  d.only_in_b = fb - fa;
  auto unmatched = [&](const Inventory& x, const Inventory& y) {
    std::vector<std::string> out;
    for (const auto& p : x.phonemes()) {
      const FeatureBundle s = p.bundle(mode);
      bool found = std::any_of(y.phonemes().begin(), y.phonemes().end(), [&](const Phoneme& q) {
        return ful_match(s, q.bundle(mode), table).score == 1.0;
      });
      if (!found) out.push_back(p.symbol);
    }
    return out;
  };
  d.unmatched_a = unmatched(a, b);
  d.unmatched_b = unmatched(b, a);
  d.laryngeal_a = laryngeal_profile(a, mode);
  d.laryngeal_b = laryngeal_profile(b, mode);
  return d;
}

inline std::string format_diff(const InventoryDiff& d) {
  const std::string ta(language_tag(d.a));
  const std::string tb(language_tag(d.b));
  std::string out;
  out += "features only in " + ta + ": " + to_feature_list(d.only_in_a) + "\n";
  out += "features only in " + tb + ": " + to_feature_list(d.only_in_b) + "\n";
  out += "phonemes of " + ta + " without an identical " + tb + " bundle: " + join(d.unmatched_a, " ") + "\n";
  out += "phonemes of " + tb + " without an identical " + ta + " bundle: " + join(d.unmatched_b, " ") + "\n";
  auto profile = [&](const std::string& tag, const LaryngealProfile& p) {
    std::string line = "laryngeal obstruent contrasts in " + tag + ":";
    for (const auto& [f, n] : p.counts()) line += " " + std::string(name_of(f)) + "=" + std::to_string(n);
    if (auto dom = p.dominant()) line += " (dominant " + std::string(name_of(*dom)) + ")";
    return line + "\n";
  };
  out += profile(ta, d.laryngeal_a);
  out += profile(tb, d.laryngeal_b);
  return out;
}

}  // namespace phonfront

#endif  // PHONFRONT_XLING_HPP_
