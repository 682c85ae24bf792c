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
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "miaudit/common.hpp"

namespace miaudit {

/// Ordered lowercase word tokens.
using TokenSeq = std::vector<std::string>;

/// Precision / recall / F1 triple for an overlap metric. Each component is in
/// [0,1]; f1 is 0 whenever p + r == 0.
struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static RougeScore from_pr(double p, double r) {
    RougeScore s;
    s.precision = p;
    s.recall = r;
    s.f1 = (p + r > 0.0) ? 2.0 * p * r / (p + r) : 0.0;
    return s;
  }
};

/// Deterministic, locale-free tokenizer: ASCII letters are lowercased, ASCII
/// digits kept, bytes >= 0x80 kept verbatim (multibyte sequences survive
/// intact), and every other byte splits. Punctuation-only input yields an
/// empty sequence.
inline TokenSeq tokenize(std::string_view text) {
  TokenSeq out;
  std::string cur;
  for (unsigned char c : text) {
    if (c >= 'A' && c <= 'Z') {
      cur.push_back(static_cast<char>(c | 0x20));
    } else if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c >= 0x80) {
      cur.push_back(static_cast<char>(c));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

namespace detail {

// n-grams keyed by the tokens joined with 0x1f (never appears in a token).
inline std::unordered_map<std::string, int> ngram_counts(const TokenSeq& t,
                                                         std::size_t n) {
  std::unordered_map<std::string, int> counts;
  if (t.size() < n) return counts;
  for (std::size_t i = 0; i + n <= t.size(); ++i) {
    std::string key = t[i];
    for (std::size_t j = 1; j < n; ++j) {
      key.push_back('\x1f');
      key.append(t[i + j]);
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace detail

/// ROUGE-N with clipped n-gram counts: the overlap of each n-gram is capped at
/// its multiplicity in the reference. Either side shorter than n scores zero.
inline RougeScore rouge_n(const TokenSeq& candidate, const TokenSeq& reference,
                          std::size_t n) {
  if (n < 1) throw ConfigError("rouge_n: n must be >= 1");
  if (candidate.size() < n || reference.size() < n) return RougeScore{};
  auto cand = detail::ngram_counts(candidate, n);
  auto ref = detail::ngram_counts(reference, n);
  long long overlap = 0;
  for (const auto& [key, count] : cand) {
    auto it = ref.find(key);
    if (it != ref.end()) overlap += std::min(count, it->second);
  }
  double cand_total = static_cast<double>(candidate.size() - n + 1);
  double ref_total = static_cast<double>(reference.size() - n + 1);
  return RougeScore::from_pr(static_cast<double>(overlap) / cand_total,
                             static_cast<double>(overlap) / ref_total);
}

/// ROUGE-L over the whole sequences (no sentence segmentation): LCS length by
/// dynamic programming, P = LCS/|candidate|, R = LCS/|reference|.
inline RougeScore rouge_l(const TokenSeq& candidate, const TokenSeq& reference) {
  if (candidate.empty() || reference.empty()) return RougeScore{};
  const std::size_t m = candidate.size(), n = reference.size();
  std::vector<std::size_t> prev(n + 1, 0), cur(n + 1, 0);
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      cur[j] = (candidate[i - 1] == reference[j - 1])
                   ? prev[j - 1] + 1
                   : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  double lcs = static_cast<double>(prev[n]);
  return RougeScore::from_pr(lcs / static_cast<double>(m),
                             lcs / static_cast<double>(n));
}

/// Cosine similarity of term-frequency vectors over unigrams and bigrams of
/// the tokenized texts, clamped to [0,1]. Either side tokenizing to nothing
/// scores 0. This is the built-in stand-in for a neural sentence-similarity
/// model; see SimilarityScorer for plugging in an external one.
inline double semantic_score(std::string_view candidate,
                             std::string_view reference) {
  TokenSeq c = tokenize(candidate), r = tokenize(reference);
  if (c.empty() || r.empty()) return 0.0;
  auto tf = [](const TokenSeq& t) {
    auto m = detail::ngram_counts(t, 1);
    for (auto& [key, count] : detail::ngram_counts(t, 2)) m[key] += count;
    return m;
  };
  auto cv = tf(c), rv = tf(r);
  double dot = 0.0, cn = 0.0, rn = 0.0;
  for (const auto& [key, count] : cv) {
    cn += static_cast<double>(count) * count;
    auto it = rv.find(key);
    if (it != rv.end()) dot += static_cast<double>(count) * it->second;
  }
  for (const auto& [key, count] : rv) rn += static_cast<double>(count) * count;
  double denom = std::sqrt(cn) * std::sqrt(rn);
  if (denom <= 0.0) return 0.0;
  return std::clamp(dot / denom, 0.0, 1.0);
}

/// Contract for similarity scorers exposed to the feature builder. score(x,x)
/// must be 1 for non-empty x; scores need not be symmetric in their arguments.
class SimilarityScorer {
 public:
  virtual ~SimilarityScorer() = default;
  virtual std::string_view name() const = 0;
  virtual double score(std::string_view candidate,
                       std::string_view reference) const = 0;
};

/// The default "semantic" scorer: TF cosine over unigrams+bigrams.
class TfCosineScorer final : public SimilarityScorer {
 public:
  std::string_view name() const override { return "semantic"; }
  double score(std::string_view candidate,
               std::string_view reference) const override {
    return semantic_score(candidate, reference);
  }
};

/// Sentence splitter shared by the augmenters and the extractive mock path.
/// A sentence ends at '.', '?' or '!' followed by whitespace or end of text,
/// or at a newline. Terminators stay attached; segments are trimmed and empty
/// segments dropped.
inline std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    std::string t = trim(cur);
    if (!t.empty()) out.push_back(std::move(t));
    cur.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\n') {
      flush();
      continue;
    }
    cur.push_back(c);
    if ((c == '.' || c == '?' || c == '!') &&
        (i + 1 == text.size() ||
         std::isspace(static_cast<unsigned char>(text[i + 1])))) {
      flush();
    }
  }
  flush();
  return out;
}

}  // namespace miaudit
