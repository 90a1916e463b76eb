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

// The closed universe of monovalent FUL features, their geometry nodes,
// the exclusion constraints between them and the 20-bit vector layout.

#ifndef PHONFRONT_FEATURE_HPP_
#define PHONFRONT_FEATURE_HPP_

#include <array>
#include <bit>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "phonfront/error.hpp"
#include "phonfront/text.hpp"

namespace phonfront {

inline constexpr std::size_t kFeatureCount = 20;

// Version of the canonical order below; the rawbin format carries it.
inline constexpr int kFeatureContractVersion = 1;

// Declaration order is the canonical index order. Frozen: the binary
// serialization depends on it.
enum class Feature : std::uint8_t {
  kConsonantal,
  kVocalic,
  kObstruent,
  kSonorant,
  kVoice,
  kSpreadGlottis,
  kPlosive,
  kContinuant,
  kStrident,
  kNasal,
  kLateral,
  kRhotic,
  kLabial,
  kCoronal,
  kDorsal,
  kRadical,
  kHigh,
  kLow,
  kAtr,
  kRtr,
};

enum class Node : std::uint8_t {
  kRoot,
  kLaryngeal,
  kConstriction,
  kMannerMisc,
  kArticulator,
  kTongueHeight,
  kTongueRoot,
};

struct FeatureInfo {
  Feature feature;
  std::string_view name;
  Node node;
};

inline constexpr std::array<FeatureInfo, kFeatureCount> kFeatureTable = {{
    {Feature::kConsonantal, "CONSONANTAL", Node::kRoot},
    {Feature::kVocalic, "VOCALIC", Node::kRoot},
    {Feature::kObstruent, "OBSTRUENT", Node::kRoot},
    {Feature::kSonorant, "SONORANT", Node::kRoot},
    {Feature::kVoice, "VOICE", Node::kLaryngeal},
    {Feature::kSpreadGlottis, "SPREAD_GLOTTIS", Node::kLaryngeal},
    {Feature::kPlosive, "PLOSIVE", Node::kConstriction},
    {Feature::kContinuant, "CONTINUANT", Node::kConstriction},
    {Feature::kStrident, "STRIDENT", Node::kMannerMisc},
    {Feature::kNasal, "NASAL", Node::kMannerMisc},
    {Feature::kLateral, "LATERAL", Node::kMannerMisc},
    {Feature::kRhotic, "RHOTIC", Node::kMannerMisc},
    {Feature::kLabial, "LABIAL", Node::kArticulator},
    {Feature::kCoronal, "CORONAL", Node::kArticulator},
    {Feature::kDorsal, "DORSAL", Node::kArticulator},
    {Feature::kRadical, "RADICAL", Node::kArticulator},
    {Feature::kHigh, "HIGH", Node::kTongueHeight},
    {Feature::kLow, "LOW", Node::kTongueHeight},
    {Feature::kAtr, "ATR", Node::kTongueRoot},
    {Feature::kRtr, "RTR", Node::kTongueRoot},
}};

constexpr std::size_t index_of(Feature f) { return static_cast<std::size_t>(f); }

constexpr Feature feature_at(std::size_t index) {
  return kFeatureTable.at(index).feature;
}

constexpr std::string_view name_of(Feature f) {
  return kFeatureTable[index_of(f)].name;
}

constexpr Node node_of(Feature f) { return kFeatureTable[index_of(f)].node; }

constexpr std::string_view node_name(Node n) {
  switch (n) {
    case Node::kRoot: return "ROOT";
    case Node::kLaryngeal: return "LARYNGEAL";
    case Node::kConstriction: return "CONSTRICTION";
    case Node::kMannerMisc: return "MANNER_MISC";
    case Node::kArticulator: return "ARTICULATOR";
    case Node::kTongueHeight: return "TONGUE_HEIGHT";
    case Node::kTongueRoot: return "TONGUE_ROOT";
  }
  return "?";
}

constexpr std::optional<Feature> feature_from_name(std::string_view name) {
  for (const auto& info : kFeatureTable) {
    if (info.name == name) return info.feature;
  }
  return std::nullopt;
}

struct FeaturePair {
  Feature first;
  Feature second;

  friend constexpr bool operator==(const FeaturePair&, const FeaturePair&) = default;
};

// Pairs of which at most one may be present in a bundle.
inline constexpr std::array<FeaturePair, 6> kExclusionPairs = {{
    {Feature::kConsonantal, Feature::kVocalic},
    {Feature::kObstruent, Feature::kSonorant},
    {Feature::kPlosive, Feature::kContinuant},
    {Feature::kHigh, Feature::kLow},
    {Feature::kAtr, Feature::kRtr},
    {Feature::kVoice, Feature::kSpreadGlottis},
}};

class FeatureBundle {
 public:
  constexpr FeatureBundle() = default;
  constexpr FeatureBundle(std::initializer_list<Feature> features) {
    for (Feature f : features) insert(f);
  }

  static constexpr FeatureBundle from_mask(std::uint32_t mask) {
    FeatureBundle b;
    b.bits_ = mask & kAllBits;
    return b;
  }

  constexpr std::uint32_t mask() const { return bits_; }
  constexpr bool contains(Feature f) const { return (bits_ >> index_of(f)) & 1U; }
  constexpr void insert(Feature f) { bits_ |= 1U << index_of(f); }
  constexpr void erase(Feature f) { bits_ &= ~(1U << index_of(f)); }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool empty() const { return bits_ == 0; }

  constexpr bool is_subset_of(const FeatureBundle& other) const {
    return (bits_ & ~other.bits_) == 0;
  }

  // Members in canonical order.
  std::vector<Feature> members() const {
    std::vector<Feature> out;
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      if ((bits_ >> i) & 1U) out.push_back(feature_at(i));
    }
    return out;
  }

  friend constexpr FeatureBundle operator|(FeatureBundle a, FeatureBundle b) {
    return from_mask(a.bits_ | b.bits_);
  }
  friend constexpr FeatureBundle operator&(FeatureBundle a, FeatureBundle b) {
    return from_mask(a.bits_ & b.bits_);
  }
  // Set difference.
  friend constexpr FeatureBundle operator-(FeatureBundle a, FeatureBundle b) {
    return from_mask(a.bits_ & ~b.bits_);
  }
  friend constexpr bool operator==(const FeatureBundle&, const FeatureBundle&) = default;
  friend constexpr auto operator<=>(const FeatureBundle&, const FeatureBundle&) = default;

 private:
  static constexpr std::uint32_t kAllBits = (1U << kFeatureCount) - 1;
  std::uint32_t bits_ = 0;
};

inline std::string to_string(const FeatureBundle& bundle) {
  std::string out = "{";
  bool first = true;
  for (Feature f : bundle.members()) {
    if (!first) out += ", ";
    out += name_of(f);
    first = false;
  }
  return out + "}";
}

// Comma-separated names in canonical order, "-" for the empty bundle.
inline std::string to_feature_list(const FeatureBundle& bundle) {
  if (bundle.empty()) return "-";
  std::string out;
  for (Feature f : bundle.members()) {
    if (!out.empty()) out += ',';
    out += name_of(f);
  }
  return out;
}

/// Parses "A,B,C" (or "-" / empty) into a bundle. Unknown names raise a
/// schema error naming the offending token.
inline FeatureBundle parse_feature_list(std::string_view text) {
  FeatureBundle bundle;
  text = trim(text);
  if (text.empty() || text == "-") return bundle;
  for (std::string_view token : split(text, ',')) {
    token = trim(token);
    auto f = feature_from_name(token);
    if (!f) {
      throw Error(ErrorCode::kSchema, "unknown feature name '" + std::string(token) + "'");
    }
    bundle.insert(*f);
  }
  return bundle;
}

struct Violation {
  FeaturePair pair;

  std::string describe() const {
    return std::string(name_of(pair.first)) + "/" + std::string(name_of(pair.second));
  }
  friend bool operator==(const Violation&, const Violation&) = default;
};

// Violations are reported in exclusion-table order, each pair in that
// table's orientation, so {A,B} and {B,A} yield identical output.
inline std::vector<Violation> validate_bundle(const FeatureBundle& bundle) {
  std::vector<Violation> out;
  for (const auto& pair : kExclusionPairs) {
    if (bundle.contains(pair.first) && bundle.contains(pair.second)) {
      out.push_back({pair});
    }
  }
  return out;
}

inline bool is_valid_bundle(const FeatureBundle& bundle) {
  return validate_bundle(bundle).empty();
}

// Fixed-width binary encoding of a bundle; position i is feature index i.
class FeatureVector {
 public:
  FeatureVector() = default;
  explicit FeatureVector(std::bitset<kFeatureCount> bits) : bits_(bits) {}

  static constexpr std::size_t size() { return kFeatureCount; }
  bool operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, bool value) { bits_.set(i, value); }
  std::size_t count() const { return bits_.count(); }
  const std::bitset<kFeatureCount>& bits() const { return bits_; }

  // "0100..." with position 0 first.
  std::string to_string() const {
    std::string s(kFeatureCount, '0');
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      if (bits_[i]) s[i] = '1';
    }
    return s;
  }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  std::bitset<kFeatureCount> bits_;
};

namespace detail {

inline void throw_on_violations(const std::vector<Violation>& violations) {
  if (violations.empty()) return;
  std::string msg = "exclusion pair violated:";
  for (const auto& v : violations) msg += " " + v.describe();
  throw Error(ErrorCode::kConstraintViolation, msg);
}

}  // namespace detail

inline FeatureVector bundle_to_vector(const FeatureBundle& bundle) {
  detail::throw_on_violations(validate_bundle(bundle));
  return FeatureVector(std::bitset<kFeatureCount>(bundle.mask()));
}

inline FeatureBundle vector_to_bundle(const FeatureVector& vec) {
  auto bundle = FeatureBundle::from_mask(static_cast<std::uint32_t>(vec.bits().to_ulong()));
  detail::throw_on_violations(validate_bundle(bundle));
  return bundle;
}

// Raw 0/1 values, e.g. a row read from an external matrix.
inline FeatureBundle vector_to_bundle(std::span<const std::uint8_t> bits) {
  if (bits.size() != kFeatureCount) {
    throw Error(ErrorCode::kLength, "feature vector has length " + std::to_string(bits.size()) +
                                        ", expected " + std::to_string(kFeatureCount));
  }
  FeatureVector vec;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) {
      throw Error(ErrorCode::kConstraintViolation,
                  "non-binary value at position " + std::to_string(i));
    }
    vec.set(i, bits[i] != 0);
  }
  return vector_to_bundle(vec);
}

/// Checks a features.contract file against the compiled-in order. The
/// file lists `version <tab> N` followed by `index <tab> NAME <tab> NODE`.
inline void verify_feature_contract(std::istream& in, std::string_view source = "contract") {
  std::string line;
  std::size_t line_no = 0;
  std::size_t next_index = 0;
  bool saw_version = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    auto fields = split(view, '\t');
    auto where = std::string(source) + ":" + std::to_string(line_no);
    if (fields.size() == 2 && fields[0] == "version") {
      if (fields[1] != std::to_string(kFeatureContractVersion)) {
        throw Error(ErrorCode::kVersionMismatch, where + ": contract version " +
                                                     std::string(fields[1]) + ", built for " +
                                                     std::to_string(kFeatureContractVersion));
      }
      saw_version = true;
      continue;
    }
    if (fields.size() != 3) {
      throw Error(ErrorCode::kSchema, where + ": expected index, name and node");
    }
    if (next_index >= kFeatureCount || fields[0] != std::to_string(next_index) ||
        fields[1] != name_of(feature_at(next_index)) ||
        fields[2] != node_name(node_of(feature_at(next_index)))) {
      throw Error(ErrorCode::kSchema, where + ": entry does not match canonical feature " +
                                          std::to_string(next_index));
    }
    ++next_index;
  }
  if (!saw_version) throw Error(ErrorCode::kSchema, std::string(source) + ": missing version");
  if (next_index != kFeatureCount) {
    throw Error(ErrorCode::kSchema, std::string(source) + ": lists " +
                                        std::to_string(next_index) + " features, expected " +
                                        std::to_string(kFeatureCount));
  }
}

inline void verify_feature_contract(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  verify_feature_contract(in, path.string());
}

}  // namespace phonfront

#endif  // PHONFRONT_FEATURE_HPP_
