/*
Copyright 2026 The glottalkit Authors. All rights reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "glottalkit/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "glottalkit/error.hpp"

namespace glottalkit {
namespace {

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

// Lines with their 1-based numbers; CR and a leading BOM are stripped and
// blank lines skipped.
std::vector<std::pair<std::size_t, std::string_view>> Lines(std::string_view text) {
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.emplace_back(number, line);
  }
  return out;
}

ManifestRow ParseRowFields(std::span<const std::string_view> f, std::size_t line,
                           const std::filesystem::path& base_dir) {
  auto fail = [&](const std::string& what) {
    return Error(ErrorCode::kParse, fmt::format("manifest line {}: {}", line, what));
  };
  ManifestRow row;
  row.speaker_id = std::string(f[0]);
  if (row.speaker_id.empty()) throw fail("empty speaker_id");
  const auto label = ParseQuality(f[1]);
  if (!label) throw fail(fmt::format("unknown label '{}'", f[1]));
  row.label = *label;
  row.vowel = std::string(f[2]);
  row.repetition = std::string(f[3]);
  const auto variant = ParseSourceVariant(f[4]);
  if (!variant) throw fail(fmt::format("unknown variant '{}'", f[4]));
  row.variant = *variant;
  if (f[5].empty()) throw fail("empty path");
  row.path = std::filesystem::path(std::string(f[5]));
  if (row.path.is_relative() && !base_dir.empty()) row.path = base_dir / row.path;
  return row;
}

std::string RowPrefix(const ManifestRow& r) {
  return fmt::format("{},{},{},{},{},{}", r.speaker_id, QualityName(r.label), r.vowel,
                     r.repetition, SourceVariantName(r.variant), r.path.generic_string());
}

double ParseDouble(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  Require(ec == std::errc() && ptr == s.data() + s.size(), ErrorCode::kParse,
          fmt::format("feature CSV line {}: bad number '{}'", line, s));
  return v;
}

}  // namespace

std::vector<ManifestRow> ParseManifest(std::string_view text,
                                       const std::filesystem::path& base_dir) {
  const auto lines = Lines(text);
  Require(!lines.empty() && lines.front().second == kManifestHeader, ErrorCode::kParse,
          fmt::format("manifest line 1: header must be '{}'", kManifestHeader));
  std::vector<ManifestRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = SplitFields(lines[i].second);
    Require(fields.size() == 6, ErrorCode::kParse,
            fmt::format("manifest line {}: expected 6 fields, got {}", lines[i].first,
                        fields.size()));
    rows.push_back(ParseRowFields(fields, lines[i].first, base_dir));
  }
  return rows;
}

std::vector<ManifestRow> ReadManifest(const std::filesystem::path& path) {
  return ParseManifest(ReadTextFile(path), path.parent_path());
}

std::string FormatManifest(std::span<const ManifestRow> rows) {
  std::string out(kManifestHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += RowPrefix(r);
    out += '\n';
  }
  return out;
}

void WriteManifest(const std::filesystem::path& path, std::span<const ManifestRow> rows) {
  WriteTextFile(path, FormatManifest(rows));
}

LabeledDataset::LabeledDataset(std::vector<ManifestRow> records, RowMatrix features,
                               FeatureKind kind)
    : records_(std::move(records)), features_(std::move(features)), kind_(kind) {
  Require(!records_.empty(), ErrorCode::kEmptyInput, "dataset has no records");
  Require(static_cast<std::size_t>(features_.rows()) == records_.size(),
          ErrorCode::kDimensionMismatch, "dataset feature rows do not match record count");
  if (features_.cols() > 0) {
    // Validates the dimension against the kind.
    FeatureVector(std::vector<double>(Row(features_, 0).begin(), Row(features_, 0).end()), kind_);
  }
}

std::vector<VoiceQuality> LabeledDataset::labels() const {
  std::vector<VoiceQuality> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.label);
  return out;
}

std::vector<std::string> LabeledDataset::Speakers() const {
  std::set<std::string> s;
  for (const auto& r : records_) s.insert(r.speaker_id);
  return {s.begin(), s.end()};
}

std::vector<std::size_t> LabeledDataset::RecordsOf(std::string_view speaker) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (records_[i].speaker_id == speaker) out.push_back(i);
  }
  return out;
}

RowMatrix LabeledDataset::Rows(std::span<const std::size_t> indices) const {
  RowMatrix out(static_cast<Eigen::Index>(indices.size()), features_.cols());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    out.row(static_cast<Eigen::Index>(k)) = features_.row(static_cast<Eigen::Index>(indices[k]));
  }
  return out;
}

std::vector<VoiceQuality> LabeledDataset::Labels(std::span<const std::size_t> indices) const {
  std::vector<VoiceQuality> out;
  out.reserve(indices.size());
  for (auto i : indices) out.push_back(records_[i].label);
  return out;
}

LabeledDataset LabeledDataset::Subset(std::span<const std::size_t> indices) const {
  std::vector<ManifestRow> recs;
  for (auto i : indices) recs.push_back(records_[i]);
  return LabeledDataset(std::move(recs), Rows(indices), kind_);
}

std::string FormatFeatureCsv(const LabeledDataset& ds) {
  std::string out(kManifestHeader);
  out += ",kind";
  for (std::size_t j = 0; j < ds.dim(); ++j) out += fmt::format(",x{}", j);
  out += '\n';
  const std::string_view kind = FeatureKindName(ds.kind());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    out += RowPrefix(ds.record(i));
    out += ',';
    out += kind;
    // Shortest round-trip representation.
    for (double v : Row(ds.features(), static_cast<Eigen::Index>(i))) out += fmt::format(",{}", v);
    out += '\n';
  }
  return out;
}

LabeledDataset ParseFeatureCsv(std::string_view text) {
  const auto lines = Lines(text);
  Require(!lines.empty(), ErrorCode::kParse, "feature CSV is empty");
  const auto header = SplitFields(lines.front().second);
  Require(header.size() > 7 && lines.front().second.substr(0, kManifestHeader.size()) ==
                                   kManifestHeader && header[6] == "kind",
          ErrorCode::kParse, "feature CSV header malformed");
  const std::size_t dim = header.size() - 7;
  Require(lines.size() > 1, ErrorCode::kEmptyInput, "feature CSV has no rows");

  std::vector<ManifestRow> recs;
  RowMatrix x(static_cast<Eigen::Index>(lines.size() - 1), static_cast<Eigen::Index>(dim));
  std::optional<FeatureKind> kind;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [number, line] = lines[i];
    const auto f = SplitFields(line);
    Require(f.size() == header.size(), ErrorCode::kParse,
            fmt::format("feature CSV line {}: expected {} fields, got {}", number,
                        header.size(), f.size()));
    recs.push_back(ParseRowFields(std::span(f).first(6), number, {}));
    const auto k = ParseFeatureKind(f[6]);
    Require(k.has_value() && (!kind || *kind == *k), ErrorCode::kParse,
            fmt::format("feature CSV line {}: bad or inconsistent kind '{}'", number, f[6]));
    kind = k;
    for (std::size_t j = 0; j < dim; ++j) {
      x(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j)) =
          ParseDouble(f[7 + j], number);
    }
  }
  return LabeledDataset(std::move(recs), std::move(x), *kind);
}

void WriteFeatureCsv(const std::filesystem::path& path, const LabeledDataset& ds) {
  WriteTextFile(path, FormatFeatureCsv(ds));
}

LabeledDataset ReadFeatureCsv(const std::filesystem::path& path) {
  return ParseFeatureCsv(ReadTextFile(path));
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  Require(in.good(), ErrorCode::kIo, fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  Require(out.good(), ErrorCode::kIo, fmt::format("cannot write {}", path.string()));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  Require(out.good(), ErrorCode::kIo, fmt::format("write failed for {}", path.string()));
}

}  // namespace glottalkit
