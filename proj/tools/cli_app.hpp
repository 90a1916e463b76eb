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

// The phonfront command-line surface. run_cli() takes its streams as
// parameters so the whole command set can be driven in-process.
//
// Exit status: 0 success, 1 input/data error, 2 config/schema error.

#ifndef PHONFRONT_TOOLS_CLI_APP_HPP_
#define PHONFRONT_TOOLS_CLI_APP_HPP_

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "phonfront/phonfront.hpp"

namespace phonfront::cli {

enum class OutputFormat : std::uint8_t { kJsonl, kRawbin, kTsv };

inline std::optional<OutputFormat> output_format_from_name(std::string_view name) {
  if (name == "jsonl") return OutputFormat::kJsonl;
  if (name == "rawbin") return OutputFormat::kRawbin;
  if (name == "tsv") return OutputFormat::kTsv;
  return std::nullopt;
}

/// `key = value` lines; `#` starts a comment line. Keys are checked
/// against the known set so typos surface as config errors.
class ConfigFile {
 public:
  static constexpr std::array<std::string_view, 18> kKeys = {
      "data_dir",   "contract", "en_inventory", "cmn_inventory", "allophones", "arpabet",
      "cmn_sampa",  "pinyin",   "erhua",        "syllabary",     "conflicts",  "lang",
      "mode",       "format",   "notation",     "weights",       "policy",     "strict"};

  static ConfigFile parse(std::istream& in, std::string_view source) {
    ConfigFile c;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::string_view view = trim(line);
      if (view.empty() || view.front() == '#') continue;
      auto where = std::string(source) + ":" + std::to_string(line_no);
      auto eq = view.find('=');
      if (eq == std::string_view::npos) throw Error(ErrorCode::kConfig, where + ": expected key = value");
      std::string key(trim(view.substr(0, eq)));
      std::string value(trim(view.substr(eq + 1)));
      if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
        throw Error(ErrorCode::kConfig, where + ": unknown key '" + key + "'");
      }
      if (!c.values_.emplace(key, value).second) {
        throw Error(ErrorCode::kConfig, where + ": duplicate key '" + key + "'");
      }
    }
    return c;
  }

  static ConfigFile load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kConfig, "cannot open config file " + path.string());
    auto c = parse(in, path.string());
    c.base_ = path.parent_path();
    return c;
  }

  std::optional<std::string> get(std::string_view key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  // Relative paths are taken relative to the config file.
  std::optional<std::filesystem::path> path(std::string_view key) const {
    auto v = get(key);
    if (!v) return std::nullopt;
    std::filesystem::path p(*v);
    return p.is_relative() ? base_ / p : p;
  }

 private:
  std::map<std::string, std::string, std::less<>> values_;
  std::filesystem::path base_;
};

// Output to a file goes through a sibling temp file that is renamed into
// place on commit, so readers never see a partial file.
class OutputSink {
 public:
  OutputSink(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
      return;
    }
    target_ = path;
    temp_ = target_;
    temp_ += ".tmp." + std::to_string(::getpid());
    file_ = std::make_unique<std::ofstream>(temp_, std::ios::binary | std::ios::trunc);
    if (!*file_) throw Error(ErrorCode::kIo, "cannot write " + temp_.string());
    stream_ = file_.get();
  }

  OutputSink(const OutputSink&) = delete;
  OutputSink& operator=(const OutputSink&) = delete;

  ~OutputSink() {
    if (file_) {
      file_.reset();
      std::error_code ec;
      std::filesystem::remove(temp_, ec);
    }
  }

  std::ostream& stream() { return *stream_; }

  void commit() {
    if (!file_) {
      stream_->flush();
      return;
    }
    file_->flush();
    bool good = static_cast<bool>(*file_);
    file_->close();
    file_.reset();
    std::error_code ec;
    if (good) std::filesystem::rename(temp_, target_, ec);
    if (!good || ec) {
      std::filesystem::remove(temp_, ec);
      throw Error(ErrorCode::kIo, "cannot write " + target_.string());
    }
  }

 private:
  std::ostream* stream_ = nullptr;
  std::unique_ptr<std::ofstream> file_;
  std::filesystem::path target_;
  std::filesystem::path temp_;
};

struct Options {
  std::string config;
  std::string lang;
  std::string mode;
  std::string format;
  std::string notation;
  std::string weights;
  std::string policy;
  std::string output;
  std::string input;
  bool strict = false;
  bool project = false;
  bool stats = false;
  bool validate = false;
  std::string diff;
  std::string source_lang;
  std::string target_lang;
  std::size_t top = 3;
};

// Flag wins over config key wins over default.
inline std::string setting(const std::string& flag, const ConfigFile& cfg, std::string_view key,
                           std::string_view fallback) {
  if (!flag.empty()) return flag;
  return cfg.get(key).value_or(std::string(fallback));
}

inline DataPaths data_paths(const ConfigFile& cfg) {
  DataPaths p = DataPaths::in(cfg.path("data_dir").value_or(default_data_dir()));
  auto override_path = [&](std::string_view key, std::filesystem::path& target) {
    if (auto v = cfg.path(key)) target = *v;
  };
  override_path("contract", p.contract);
  override_path("en_inventory", p.en_inventory);
  override_path("cmn_inventory", p.cmn_inventory);
  override_path("allophones", p.allophones);
  override_path("arpabet", p.arpabet);
  override_path("cmn_sampa", p.cmn_sampa);
  override_path("pinyin", p.pinyin);
  override_path("erhua", p.erhua);
  override_path("syllabary", p.syllabary);
  override_path("conflicts", p.conflicts);
  return p;
}

template <typename T>
T parse_choice(std::optional<T> value, std::string_view what, const std::string& given) {
  if (!value) throw Error(ErrorCode::kConfig, "invalid " + std::string(what) + " '" + given + "'");
  return *value;
}

inline Language parse_language(const std::string& tag) {
  return parse_choice(language_from_tag(tag), "language", tag);
}

inline bool parse_bool(const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no" || text.empty()) return false;
  throw Error(ErrorCode::kConfig, "invalid boolean '" + text + "'");
}

class Runner {
 public:
  Runner(const Options& opt, std::istream& in, std::ostream& out, std::ostream& err)
      : opt_(opt), in_(in), out_(out), err_(err) {
    if (!opt.config.empty()) cfg_ = ConfigFile::load(opt.config);
    strict_ = opt.strict || parse_bool(cfg_.get("strict").value_or(""));
  }

  int transcribe() {
    const auto lang = input_language();
    const auto notation =
        parse_choice(notation_from_name(setting(opt_.notation, cfg_, "notation", "sampa")), "notation",
                     setting(opt_.notation, cfg_, "notation", "sampa"));
    const Resources res = Resources::load(data_paths(cfg_));
    OutputSink sink(opt_.output, out_);
    int status = for_each_line([&](std::size_t, const std::string& line) {
      sink.stream() << format_sequence(transcribe_line(line, lang, res), notation, res.symbols) << '\n';
    });
    sink.commit();
    return status;
  }

  int encode() {
    const auto lang = input_language();
    const auto mode = lookup_mode();
    const std::string format_name = setting(opt_.format, cfg_, "format", "jsonl");
    const auto format = parse_choice(output_format_from_name(format_name), "format", format_name);
    const Resources res = Resources::load(data_paths(cfg_));
    std::optional<ProjectionWeights> weights;
    if (opt_.project) {
      const std::string path = setting(opt_.weights, cfg_, "weights", "");
      weights = path.empty() ? seeded_weights() : load_weights(path);
      weights->validate();
    }
    const PhonemeResolver resolver = res.resolver();
    OutputSink sink(opt_.output, out_);
    std::ostream& os = sink.stream();
    if (format == OutputFormat::kTsv) os << tsv_header();
    int status = for_each_line([&](std::size_t line_no, const std::string& line) {
      const SegmentSequence seq = transcribe_line(line, lang, res);
      const EncodedUtterance enc = encode_utterance(seq, mode, resolver);
      if (weights) {
        const Matrix m = project(enc, *weights);
        if (format == OutputFormat::kRawbin) os << serialize_rawbin(m);
        if (format == OutputFormat::kJsonl) os << serialize_jsonl(m, line_no);
        if (format == OutputFormat::kTsv) write_tsv(os, m, line_no);
      } else {
        const auto labels = segment_labels(seq);
        if (format == OutputFormat::kRawbin) os << serialize_rawbin(enc);
        if (format == OutputFormat::kJsonl) os << serialize_jsonl(enc, labels, line_no);
        if (format == OutputFormat::kTsv) write_tsv(os, enc, labels, line_no);
      }
    });
    sink.commit();
    return status;
  }

  int inventory() {
    const Language lang = parse_language(setting(opt_.lang, cfg_, "lang", "en"));
    const DataPaths paths = data_paths(cfg_);
    const auto& path = lang == Language::kEnglish ? paths.en_inventory : paths.cmn_inventory;
    if (opt_.validate) {
      verify_feature_contract(paths.contract);
      auto in = open_input(path);
      auto rows = parse_inventory_rows(lang, in, path.filename().string());
      auto failures = check_inventory(lang, rows.phonemes);
      for (const auto& f : failures) err_ << path.filename().string() << ": " << f << '\n';
      out_ << language_tag(lang) << ": " << failures.size() << " invariant violation(s)\n";
      return failures.empty() ? 0 : exit_status_for(ErrorCode::kInvariant);
    }
    verify_feature_contract(paths.contract);
    const Inventory inv = load_inventory(lang, path);
    if (!opt_.diff.empty()) {
      const Language other_lang = parse_language(opt_.diff);
      const Inventory other = load_inventory(
          other_lang, other_lang == Language::kEnglish ? paths.en_inventory : paths.cmn_inventory);
      out_ << format_diff(inventory_diff(inv, other, lookup_mode(), ConflictTable::load(paths.conflicts)));
      return 0;
    }
    out_ << format_stats(inventory_stats(inv));
    return 0;
  }

  int map_l2() {
    const Language source = parse_language(opt_.source_lang);
    const Language target = parse_language(opt_.target_lang);
    const auto mode = lookup_mode();
    const std::string policy_name = setting(opt_.policy, cfg_, "policy", "symmetric");
    const auto policy = parse_choice(match_policy_from_name(policy_name), "policy", policy_name);
    const Resources res = Resources::load(data_paths(cfg_));
    const Inventory& src = source == Language::kEnglish ? res.en : res.cmn;
    const Inventory& tgt = target == Language::kEnglish ? res.en : res.cmn;
    OutputSink sink(opt_.output, out_);
    std::ostream& os = sink.stream();
    os << "# " << language_tag(source) << " -> " << language_tag(target) << ", mode "
       << (mode == LookupMode::kContrastive ? "contrastive" : "cross_lingual") << ", policy "
       << policy_name << '\n';
    if (is_tonal(source) && !is_tonal(target)) os << "# no native tonal contrast in target\n";
    os << "source\tcandidates (symbol:score:mismatches, best first)\n";
    for (const auto& p : src.phonemes()) {
      const NativeMapping m = nearest_native(p, tgt, mode, res.conflicts, policy);
      os << p.symbol;
      const std::size_t n = opt_.top == 0 ? m.ranking.size() : std::min(opt_.top, m.ranking.size());
      for (std::size_t i = 0; i < n; ++i) {
        const auto& c = m.ranking[i];
        os << '\t' << c.phoneme->symbol << ':' << format_score(c.report.score) << ':'
           << c.report.mismatches.size();
      }
      os << '\n';
    }
    sink.commit();
    return 0;
  }

  int validate() {
    const Resources res = Resources::load(data_paths(cfg_));
    const ValidationReport rep = validate_resources(res);
    for (const auto& f : rep.failures) err_ << f << '\n';
    out_ << "en phonemes: " << res.en.size() << '\n'
         << "cmn phonemes: " << res.cmn.size() << '\n'
         << "syllable/tone combinations decomposed: " << rep.syllables_checked << '\n'
         << "sampa vocabulary: " << rep.sampa_vocabulary << '\n'
         << "failures: " << rep.failures.size() << '\n';
    return rep.ok() ? 0 : exit_status_for(ErrorCode::kInvariant);
  }

  static std::string format_score(double score) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", score);
    return buf;
  }

 private:
  InputLanguage input_language() const {
    const std::string name = setting(opt_.lang, cfg_, "lang", "");
    if (name.empty()) throw Error(ErrorCode::kConfig, "--lang is required (en, cmn or mixed)");
    return parse_choice(input_language_from_name(name), "language", name);
  }

  LookupMode lookup_mode() const {
    const std::string name = setting(opt_.mode, cfg_, "mode", "contrastive");
    return parse_choice(lookup_mode_from_name(name), "mode", name);
  }

  static std::string tsv_header() {
    std::string h = "utt\tindex\tsymbol\tlang\ttone\tprosody";
    for (const auto& info : kFeatureTable) h += "\t" + std::string(info.name);
    return h + "\n";
  }

  static void write_tsv(std::ostream& os, const EncodedUtterance& enc, const std::vector<SegmentLabel>& labels,
                        std::size_t utt) {
    for (std::size_t i = 0; i < enc.size(); ++i) {
      os << utt << '\t' << i << '\t' << labels[i].symbol << '\t' << language_tag(labels[i].language) << '\t'
         << int{enc.tones[i].value} << '\t' << int{enc.prosody[i].value};
      for (std::size_t f = 0; f < kFeatureCount; ++f) os << '\t' << (enc.features[i][f] ? 1 : 0);
      os << '\n';
    }
  }

  static void write_tsv(std::ostream& os, const Matrix& m, std::size_t utt) {
    char buf[32];
    for (std::size_t r = 0; r < m.rows; ++r) {
      os << utt << '\t' << r;
      for (std::size_t c = 0; c < m.cols; ++c) {
        std::snprintf(buf, sizeof buf, "%.9g", static_cast<double>(m.at(r, c)));
        os << '\t' << buf;
      }
      os << '\n';
    }
  }

  // Streams input lines; blank lines are skipped. A failing line is
  // reported with its number and skipped, unless --strict.
  template <typename Fn>
  int for_each_line(Fn&& fn) {
    std::ifstream file;
    std::istream* in = &in_;
    const std::string input = opt_.input;
    if (!input.empty() && input != "-") {
      file.open(input);
      if (!file) throw Error(ErrorCode::kIo, "cannot open input " + input);
      in = &file;
    }
    int status = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(*in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (trim(line).empty()) continue;
      try {
        fn(line_no, line);
      } catch (const Error& e) {
        err_ << "line " << line_no << ": " << e.what() << '\n';
        if (strict_) throw;
        if (status == 0) status = exit_status_for(e.code());
      }
    }
    return status;
  }

  Options opt_;
  ConfigFile cfg_;
  bool strict_ = false;
  std::istream& in_;
  std::ostream& out_;
  std::ostream& err_;
};

inline int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Phonological front end: ARPABET/pinyin to feature-based TTS input."};
  app.require_subcommand(1);
  app.add_option("--config", opt.config, "key = value configuration file");

  auto add_common = [&](CLI::App* sub, bool with_io) {
    sub->add_option("--lang", opt.lang, "input language: en, cmn or mixed (en:/cmn: token prefixes)");
    if (with_io) {
      sub->add_option("--output,-o", opt.output, "output file (default stdout); written atomically");
      sub->add_option("input", opt.input, "input file, one utterance per line (default stdin)");
      sub->add_flag("--strict", opt.strict, "stop at the first failing line");
    }
  };

  auto* transcribe = app.add_subcommand("transcribe", "render utterances as IPA, SAMPA or ARPABET");
  add_common(transcribe, true);
  transcribe->add_option("--notation", opt.notation, "ipa, sampa (default) or arpabet");

  auto* encode = app.add_subcommand("encode", "encode utterances as feature rows or projected matrices");
  add_common(encode, true);
  encode->add_option("--mode", opt.mode, "contrastive (default) or cross_lingual");
  encode->add_option("--format", opt.format, "jsonl (default), rawbin or tsv");
  encode->add_flag("--project", opt.project, "emit the 256-wide projected matrix");
  encode->add_option("--weights", opt.weights, "projection weights file (default: seeded weights)");

  auto* inventory = app.add_subcommand("inventory", "inventory statistics, validation and comparison");
  add_common(inventory, false);
  inventory->add_flag("--stats", opt.stats, "phoneme and feature counts (default)");
  inventory->add_flag("--validate", opt.validate, "list every invariant violation");
  inventory->add_option("--diff", opt.diff, "compare against another language's inventory");
  inventory->add_option("--mode", opt.mode, "lookup mode for --diff");

  auto* map_l2 = app.add_subcommand("map-l2", "nearest native categories for each source phoneme");
  map_l2->add_option("source", opt.source_lang, "source language")->required();
  map_l2->add_option("target", opt.target_lang, "target language")->required();
  map_l2->add_option("--mode", opt.mode, "contrastive (default) or cross_lingual");
  map_l2->add_option("--top", opt.top, "candidates per row, 0 = all (default 3)");
  map_l2->add_option("--policy", opt.policy, "symmetric (default) or asymmetric");
  map_l2->add_option("--output,-o", opt.output, "output file (default stdout)");

  auto* validate = app.add_subcommand("validate", "cross-check all data tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help requests exit 0; every other parse failure is a config error.
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : exit_status_for(ErrorCode::kConfig);
  }

  try {
    Runner runner(opt, in, out, err);
    if (*transcribe) return runner.transcribe();
    if (*encode) return runner.encode();
    if (*inventory) return runner.inventory();
    if (*map_l2) return runner.map_l2();
    if (*validate) return runner.validate();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_status_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace phonfront::cli

#endif  // PHONFRONT_TOOLS_CLI_APP_HPP_
