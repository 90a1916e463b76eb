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

// Segment sequences -> model input: a binary feature row per segment plus
// tone and prosody codes, and the projection into the 256-wide text
// embedding (192 dense + 32 tone + 32 prosody).

#ifndef PHONFRONT_ENCODER_HPP_
#define PHONFRONT_ENCODER_HPP_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "phonfront/error.hpp"
#include "phonfront/feature.hpp"
#include "phonfront/inventory.hpp"
#include "phonfront/mandarin.hpp"
#include "phonfront/segment.hpp"

namespace phonfront {

inline constexpr std::size_t kToneVocabulary = 6;
inline constexpr std::size_t kProsodyVocabulary = 4;
inline constexpr std::size_t kFeatureEmbeddingWidth = 192;
inline constexpr std::size_t kToneEmbeddingWidth = 32;
inline constexpr std::size_t kProsodyEmbeddingWidth = 32;
inline constexpr std::size_t kProjectedWidth =
    kFeatureEmbeddingWidth + kToneEmbeddingWidth + kProsodyEmbeddingWidth;

// 0 = untoned (English, Mandarin onsets); 1-4 lexical tones; 5 = neutral.
struct ToneCode {
  std::uint8_t value = 0;
  friend bool operator==(const ToneCode&, const ToneCode&) = default;
};

// 0 = none, 1 = prosodic word, 2 = phrase, 3 = utterance-final.
struct ProsodyCode {
  std::uint8_t value = 0;
  friend bool operator==(const ProsodyCode&, const ProsodyCode&) = default;
};

inline ToneCode make_tone_code(int value) {
  if (value < 0 || value >= static_cast<int>(kToneVocabulary)) {
    throw Error(ErrorCode::kConstraintViolation, "tone code " + std::to_string(value) + " outside 0-5");
  }
  return {static_cast<std::uint8_t>(value)};
}

inline ProsodyCode make_prosody_code(int value) {
  if (value < 0 || value >= static_cast<int>(kProsodyVocabulary)) {
    throw Error(ErrorCode::kConstraintViolation,
                "prosody code " + std::to_string(value) + " outside 0-3");
  }
  return {static_cast<std::uint8_t>(value)};
}

// Row-major float matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<float> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0F) {}

  float& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  float at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

struct EncodedUtterance {
  std::vector<FeatureVector> features;
  std::vector<ToneCode> tones;
  std::vector<ProsodyCode> prosody;

  std::size_t size() const { return features.size(); }

  // Equal lengths, valid rows, codes in range.
  void validate() const {
    if (tones.size() != features.size() || prosody.size() != features.size()) {
      throw Error(ErrorCode::kShapeMismatch, "features, tones and prosody differ in length");
    }
    for (std::size_t i = 0; i < features.size(); ++i) {
      vector_to_bundle(features[i]);
      make_tone_code(tones[i].value);
      make_prosody_code(prosody[i].value);
    }
  }

  friend bool operator==(const EncodedUtterance&, const EncodedUtterance&) = default;
};

// Symbol and language of each row, carried alongside for jsonl output.
struct SegmentLabel {
  std::string symbol;
  Language language = Language::kEnglish;
  friend bool operator==(const SegmentLabel&, const SegmentLabel&) = default;
};

/// Resolves a segment to the feature record of its surface form: an
/// inventory phoneme, or a Mandarin allophone after allophony.
class PhonemeResolver {
 public:
  PhonemeResolver(const Inventory& en, const Inventory& cmn, const AllophonySet& allophones)
      : en_(&en), cmn_(&cmn), allophones_(&allophones) {}

  const Phoneme& resolve(const Segment& s) const {
    const Inventory& inv = s.language == Language::kEnglish ? *en_ : *cmn_;
    if (s.surface != s.phoneme && s.language == Language::kMandarin) {
      if (const Phoneme* p = allophones_->find_surface(s.surface)) return *p;
    }
    if (const Phoneme* p = inv.find(s.surface)) return *p;
    return inv.at(s.phoneme);
  }

  const Inventory& inventory(Language lang) const {
    return lang == Language::kEnglish ? *en_ : *cmn_;
  }

 private:
  const Inventory* en_;
  const Inventory* cmn_;
  const AllophonySet* allophones_;
};

inline EncodedUtterance encode_utterance(const SegmentSequence& seq, LookupMode mode,
                                         const PhonemeResolver& resolver) {
  EncodedUtterance enc;
  enc.features.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const Segment& s = seq[i];
    try {
      enc.features.push_back(bundle_to_vector(resolver.resolve(s).bundle(mode)));
      enc.tones.push_back(make_tone_code(s.tone.value_or(0)));
      enc.prosody.push_back(make_prosody_code(s.prosody_break_after));
    } catch (const Error& e) {
      throw Error(e.code(), "segment " + std::to_string(i) + ": " + e.message(), i);
    }
  }
  return enc;
}

inline std::vector<SegmentLabel> segment_labels(const SegmentSequence& seq) {
  std::vector<SegmentLabel> labels;
  for (const auto& s : seq.segments) labels.push_back({s.surface, s.language});
  return labels;
}

struct ProjectionWeights {
  Matrix feature_matrix{kFeatureCount, kFeatureEmbeddingWidth};
  Matrix tone_table{kToneVocabulary, kToneEmbeddingWidth};
  Matrix prosody_table{kProsodyVocabulary, kProsodyEmbeddingWidth};
  std::string version = "zero";

  void validate() const {
    auto check = [](const Matrix& m, std::size_t r, std::size_t c, std::string_view name) {
      if (m.rows != r || m.cols != c || m.data.size() != r * c) {
        throw Error(ErrorCode::kShapeMismatch, std::string(name) + " is " +
                                                   std::to_string(m.rows) + "x" +
                                                   std::to_string(m.cols) + ", expected " +
                                                   std::to_string(r) + "x" + std::to_string(c));
      }
      for (float v : m.data) {
        if (!std::isfinite(v)) throw Error(ErrorCode::kShapeMismatch, std::string(name) + " has a non-finite value");
      }
    };
    check(feature_matrix, kFeatureCount, kFeatureEmbeddingWidth, "feature_matrix");
    check(tone_table, kToneVocabulary, kToneEmbeddingWidth, "tone_table");
    check(prosody_table, kProsodyVocabulary, kProsodyEmbeddingWidth, "prosody_table");
  }
};

inline constexpr std::uint32_t kDefaultWeightSeed = 20211007;

/// Deterministic uniform(-limit, limit) weights with limit =
/// sqrt(6 / (fan_in + fan_out)). Values come straight from the raw
/// mt19937 stream, whose output sequence is fixed by the standard, so the
/// weights are identical on every platform.
inline ProjectionWeights seeded_weights(std::uint32_t seed = kDefaultWeightSeed) {
  ProjectionWeights w;
  std::mt19937 gen(seed);
  auto fill = [&gen](Matrix& m) {
    const float limit = std::sqrt(6.0F / static_cast<float>(m.rows + m.cols));
    for (float& v : m.data) {
      // 24 high bits -> [0, 1) exactly representable in float.
      const float unit = static_cast<float>(gen() >> 8) * (1.0F / 16777216.0F);
      v = (2.0F * unit - 1.0F) * limit;
    }
  };
  fill(w.feature_matrix);
  fill(w.tone_table);
  fill(w.prosody_table);
  w.version = "seeded-" + std::to_string(seed);
  return w;
}

/// Text weights file:
///
///     version <id>
///     feature_matrix <rows> <cols>
///     <rows lines of cols floats>
///     tone_table <rows> <cols>
///     ...
///     prosody_table <rows> <cols>
///     ...
inline ProjectionWeights read_weights(std::istream& in, std::string_view source = "weights") {
  ProjectionWeights w;
  std::string word;
  bool seen[3] = {false, false, false};
  while (in >> word) {
    if (!word.empty() && word[0] == '#') {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    if (word == "version") {
      in >> w.version;
      continue;
    }
    Matrix* sections[3] = {&w.feature_matrix, &w.tone_table, &w.prosody_table};
    int slot = word == "feature_matrix" ? 0 : word == "tone_table" ? 1 : word == "prosody_table" ? 2 : -1;
    if (slot < 0) {
      throw Error(ErrorCode::kSchema, std::string(source) + ": unknown section '" + word + "'");
    }
    Matrix* target = sections[slot];
    std::size_t rows = 0;
    std::size_t cols = 0;
    if (!(in >> rows >> cols)) {
      throw Error(ErrorCode::kSchema, std::string(source) + ": " + word + " needs rows and cols");
    }
    Matrix m(rows, cols);
    for (float& v : m.data) {
      if (!(in >> v)) {
        throw Error(ErrorCode::kTruncated, std::string(source) + ": " + word + " ends early");
      }
    }
    *target = std::move(m);
    seen[slot] = true;
  }
  if (!seen[0] || !seen[1] || !seen[2]) {
    throw Error(ErrorCode::kSchema, std::string(source) + ": missing a weight section");
  }
  w.validate();
  return w;
}

inline ProjectionWeights load_weights(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_weights(in, path.filename().string());
}

inline void write_weights(std::ostream& out, const ProjectionWeights& w) {
  out << "version " << w.version << '\n';
  auto dump = [&out](std::string_view name, const Matrix& m) {
    out << name << ' ' << m.rows << ' ' << m.cols << '\n';
    out << std::setprecision(9);
    for (std::size_t r = 0; r < m.rows; ++r) {
      for (std::size_t c = 0; c < m.cols; ++c) out << (c ? " " : "") << m.at(r, c);
      out << '\n';
    }
  };
  dump("feature_matrix", w.feature_matrix);
  dump("tone_table", w.tone_table);
  dump("prosody_table", w.prosody_table);
}

/// Row i = [features_i * feature_matrix | tone_table[tone_i] | prosody_table[prosody_i]].
inline Matrix project(const EncodedUtterance& enc, const ProjectionWeights& w) {
  w.validate();
  if (enc.tones.size() != enc.size() || enc.prosody.size() != enc.size()) {
    throw Error(ErrorCode::kShapeMismatch, "features, tones and prosody differ in length");
  }
  Matrix out(enc.size(), kProjectedWidth);
  for (std::size_t i = 0; i < enc.size(); ++i) {
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      if (!enc.features[i][f]) continue;
      for (std::size_t c = 0; c < kFeatureEmbeddingWidth; ++c) {
        out.at(i, c) += w.feature_matrix.at(f, c);
      }
    }
    const std::size_t tone = enc.tones[i].value;
    const std::size_t prosody = enc.prosody[i].value;
    if (tone >= kToneVocabulary || prosody >= kProsodyVocabulary) {
      throw Error(ErrorCode::kShapeMismatch, "code out of range at row " + std::to_string(i));
    }
    for (std::size_t c = 0; c < kToneEmbeddingWidth; ++c) {
      out.at(i, kFeatureEmbeddingWidth + c) = w.tone_table.at(tone, c);
    }
    for (std::size_t c = 0; c < kProsodyEmbeddingWidth; ++c) {
      out.at(i, kFeatureEmbeddingWidth + kToneEmbeddingWidth + c) = w.prosody_table.at(prosody, c);
    }
  }
  return out;
}

}  // namespace phonfront

#endif  // PHONFRONT_ENCODER_HPP_
