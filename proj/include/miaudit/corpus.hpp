// Copyright 2026 The miaudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "miaudit/common.hpp"

namespace miaudit {

/// A document / reference-summary pair.
struct Sample {
  std::string id;
  std::string document;
  std::string reference_summary;
};

/// A sample with its ground-truth membership (1 = in the target's training
/// set).
struct LabeledSample {
  Sample sample;
  int membership = 0;
};

/// Partition tags of the attacker/defender data split.
enum class Partition { kATrain, kAOut, kBIn, kBOut };

inline const char* to_string(Partition p) {
  switch (p) {
    case Partition::kATrain: return "A_train";
    case Partition::kAOut: return "A_out";
    case Partition::kBIn: return "B_in";
    case Partition::kBOut: return "B_out";
  }
  return "?";
}

inline Partition partition_from_string(std::string_view s) {
  if (s == "A_train") return Partition::kATrain;
  if (s == "A_out") return Partition::kAOut;
  if (s == "B_in") return Partition::kBIn;
  if (s == "B_out") return Partition::kBOut;
  throw DataError("unknown partition tag: " + std::string(s));
}

/// The frozen data split: every corpus id is assigned exactly one partition,
/// and the balanced member subsample (a_in_ids, drawn from A_train) is stored
/// so that evaluation sets replay identically.
struct SplitManifest {
  std::uint64_t seed = 0;
  std::map<std::string, Partition> assignments;
  std::vector<std::string> a_in_ids;

  std::size_t count(Partition p) const {
    std::size_t n = 0;
    for (const auto& [id, tag] : assignments)
      if (tag == p) ++n;
    return n;
  }

  /// Ids with the given tag, in lexicographic order.
  std::vector<std::string> ids_for(Partition p) const {
    std::vector<std::string> out;
    for (const auto& [id, tag] : assignments)
      if (tag == p) out.push_back(id);
    return out;
  }
};

/// Checks the structural invariants: a_in_ids are distinct, drawn from
/// A_train, and as many as there are A_out ids.
inline void validate_manifest(const SplitManifest& m) {
  std::unordered_set<std::string> seen;
  for (const std::string& id : m.a_in_ids) {
    auto it = m.assignments.find(id);
    if (it == m.assignments.end() || it->second != Partition::kATrain)
      throw DataError("manifest: a_in id not tagged A_train: " + id);
    if (!seen.insert(id).second)
      throw DataError("manifest: duplicate a_in id: " + id);
  }
  if (m.a_in_ids.empty()) throw DataError("manifest: a_in_ids empty");
  if (m.a_in_ids.size() != m.count(Partition::kAOut))
    throw DataError("manifest: |A_in| != |A_out|");
}

/// Loads a line-delimited JSON corpus: one object per line with string fields
/// "id", "document", "summary". Blank lines are ignored. Duplicate ids, empty
/// ids/documents, and unparsable lines are rejected with the line number.
inline std::vector<Sample> load_corpus(const std::string& path) {
  std::string text = read_text_file(path);
  std::vector<Sample> samples;
  std::unordered_set<std::string> ids;
  std::size_t lineno = 0;
  for (const std::string& line : split_lines(text)) {
    ++lineno;
    if (trim(line).empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": malformed JSON record");
    for (const char* key : {"id", "document", "summary"}) {
      if (!j.contains(key) || !j[key].is_string())
        throw DataError(path + ":" + std::to_string(lineno) +
                        ": missing string field \"" + key + "\"");
    }
    Sample s{j["id"].get<std::string>(), j["document"].get<std::string>(),
             j["summary"].get<std::string>()};
    if (s.id.empty())
      throw DataError(path + ":" + std::to_string(lineno) + ": empty id");
    if (s.document.empty())
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": empty document for id " + s.id);
    if (!ids.insert(s.id).second)
      throw DataError(path + ":" + std::to_string(lineno) +
                      ": duplicate id " + s.id);
    samples.push_back(std::move(s));
  }
  if (samples.empty()) throw DataError("empty corpus: " + path);
  return samples;
}

inline void save_corpus(const std::vector<Sample>& samples,
                        const std::string& path) {
  std::string out;
  for (const Sample& s : samples) {
    nlohmann::json j{{"id", s.id},
                     {"document", s.document},
                     {"summary", s.reference_summary}};
    out += j.dump();
    out += '\n';
  }
  write_text_file(path, out);
}

/// Splits a corpus into B_in / B_out / A_train / A_out and draws the balanced
/// member subsample A_in, all from one seeded stream:
///
///   1. ids are sorted lexicographically, then Fisher-Yates shuffled
///      (for i = N-1..1: swap(a[i], a[j]) with j = next_below(i+1));
///   2. the first floor(bob_fraction*N) ids form B_all; its first half
///      (rounded down) is B_in, the rest B_out;
///   3. of the remainder, the first holdout_count ids are A_out and the rest
///      A_train;
///   4. a_in_ids are holdout_count ids drawn from A_train without replacement
///      by continuing the same stream (partial Fisher-Yates from the front).
///
/// The shuffle is over ids, so the split is independent of file line order.
inline SplitManifest make_splits(const std::vector<Sample>& samples,
                                 double bob_fraction,
                                 std::size_t holdout_count,
                                 std::uint64_t seed) {
  const std::size_t n = samples.size();
  if (!(bob_fraction > 0.0 && bob_fraction < 1.0))
    throw ConfigError("bob_fraction out of range (0,1): " +
                      format_double(bob_fraction));
  if (n < 4) throw DataError("corpus too small: " + std::to_string(n));
  if (holdout_count == 0) throw ConfigError("holdout_count must be positive");
  if (2.0 * static_cast<double>(holdout_count) >
      (1.0 - bob_fraction) * static_cast<double>(n))
    throw ConfigError("holdout_count too large for corpus of " +
                      std::to_string(n));

  std::vector<std::string> ids;
  ids.reserve(n);
  {
    std::unordered_set<std::string> seen;
    for (const Sample& s : samples) {
      if (!seen.insert(s.id).second)
        throw DataError("duplicate sample id: " + s.id);
      ids.push_back(s.id);
    }
  }
  std::sort(ids.begin(), ids.end());

  SplitMix64 rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::size_t j = static_cast<std::size_t>(rng.next_below(i + 1));
    std::swap(ids[i], ids[j]);
  }

  const std::size_t b_all =
      static_cast<std::size_t>(bob_fraction * static_cast<double>(n));
  const std::size_t b_in = b_all / 2;
  const std::size_t a_all = n - b_all;
  if (holdout_count * 2 > a_all)
    throw ConfigError("holdout_count too large after Bob's share");

  SplitManifest m;
  m.seed = seed;
  for (std::size_t i = 0; i < n; ++i) {
    Partition tag;
    if (i < b_in) {
      tag = Partition::kBIn;
    } else if (i < b_all) {
      tag = Partition::kBOut;
    } else if (i < b_all + holdout_count) {
      tag = Partition::kAOut;
    } else {
      tag = Partition::kATrain;
    }
    m.assignments.emplace(ids[i], tag);
  }

  // A_train ids in shuffled order; partial Fisher-Yates draws A_in.
  std::vector<std::string> train(ids.begin() +
                                     static_cast<std::ptrdiff_t>(b_all + holdout_count),
                                 ids.end());
  for (std::size_t k = 0; k < holdout_count; ++k) {
    std::size_t j =
        k + static_cast<std::size_t>(rng.next_below(train.size() - k));
    std::swap(train[k], train[j]);
  }
  m.a_in_ids.assign(train.begin(),
                    train.begin() + static_cast<std::ptrdiff_t>(holdout_count));
  validate_manifest(m);
  return m;
}

/// The balanced audit set: A_in samples labeled 1 (in a_in_ids order) followed
/// by A_out samples labeled 0 (in id order).
inline std::vector<LabeledSample> draw_eval_set(
    const SplitManifest& manifest, const std::vector<Sample>& corpus) {
  validate_manifest(manifest);
  std::unordered_map<std::string, const Sample*> by_id;
  for (const Sample& s : corpus) by_id.emplace(s.id, &s);
  auto lookup = [&](const std::string& id) -> const Sample& {
    auto it = by_id.find(id);
    if (it == by_id.end())
      throw DataError("manifest id missing from corpus: " + id);
    return *it->second;
  };
  std::vector<LabeledSample> out;
  for (const std::string& id : manifest.a_in_ids)
    out.push_back({lookup(id), 1});
  for (const std::string& id : manifest.ids_for(Partition::kAOut))
    out.push_back({lookup(id), 0});
  return out;
}

// ---------------------------------------------------------------------------
// Manifest file format: a single JSON document
//   {"seed": u64, "assignments": {"<id>": "<tag>", ...}, "a_in_ids": [...]}
// with the literal tags "A_train", "A_out", "B_in", "B_out".
// ---------------------------------------------------------------------------

inline std::string manifest_to_json(const SplitManifest& m) {
  nlohmann::json assignments = nlohmann::json::object();
  for (const auto& [id, tag] : m.assignments) assignments[id] = to_string(tag);
  nlohmann::json j{{"seed", m.seed},
                   {"assignments", assignments},
                   {"a_in_ids", m.a_in_ids}};
  return j.dump(2) + "\n";
}

inline SplitManifest manifest_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("seed") ||
      !j.contains("assignments") || !j.contains("a_in_ids"))
    throw DataError("malformed split manifest");
  SplitManifest m;
  m.seed = j["seed"].get<std::uint64_t>();
  for (const auto& [id, tag] : j["assignments"].items())
    m.assignments.emplace(id, partition_from_string(tag.get<std::string>()));
  m.a_in_ids = j["a_in_ids"].get<std::vector<std::string>>();
  validate_manifest(m);
  return m;
}

inline void save_manifest(const SplitManifest& m, const std::string& path) {
  write_text_file(path, manifest_to_json(m));
}

inline SplitManifest load_manifest(const std::string& path) {
  return manifest_from_json(read_text_file(path));
}

}  // namespace miaudit
