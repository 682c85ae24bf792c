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
//
// Brute-force reference implementations used only by tests. These stay
// deliberately naive and independent of the library code paths they check.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "miaudit/common.hpp"
#include "miaudit/textmetrics.hpp"

namespace miaudit::testoracle {

/// Random token sequence of length in [0,max_len] over {t0..t(alphabet-1)}.
inline TokenSeq random_tokens(SplitMix64& rng, std::size_t max_len,
                              std::size_t alphabet) {
  std::size_t len = rng.next_below(max_len + 1);
  TokenSeq out;
  out.reserve(len);
  for (std::size_t i = 0; i < len; ++i)
    out.push_back("t" + std::to_string(rng.next_below(alphabet)));
  return out;
}

/// Clipped n-gram overlap by explicit multiset matching: every candidate
/// n-gram consumes at most one unused equal reference n-gram.
inline RougeScore rouge_n_bruteforce(const TokenSeq& cand, const TokenSeq& ref,
                                     std::size_t n) {
  if (cand.size() < n || ref.size() < n) return RougeScore{};
  auto grams = [n](const TokenSeq& t) {
    std::vector<TokenSeq> gs;
    for (std::size_t i = 0; i + n <= t.size(); ++i)
      gs.emplace_back(t.begin() + static_cast<std::ptrdiff_t>(i),
                      t.begin() + static_cast<std::ptrdiff_t>(i + n));
    return gs;
  };
  std::vector<TokenSeq> cg = grams(cand), rg = grams(ref);
  std::vector<bool> used(rg.size(), false);
  std::size_t overlap = 0;
  for (const TokenSeq& g : cg) {
    for (std::size_t j = 0; j < rg.size(); ++j) {
      if (!used[j] && rg[j] == g) {
        used[j] = true;
        ++overlap;
        break;
      }
    }
  }
  return RougeScore::from_pr(
      static_cast<double>(overlap) / static_cast<double>(cg.size()),
      static_cast<double>(overlap) / static_cast<double>(rg.size()));
}

/// LCS length by memoized recursion.
inline std::size_t lcs_recursive(const TokenSeq& a, const TokenSeq& b) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  std::function<std::size_t(std::size_t, std::size_t)> go =
      [&](std::size_t i, std::size_t j) -> std::size_t {
    if (i == a.size() || j == b.size()) return 0;
    auto key = std::make_pair(i, j);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::size_t val;
    if (a[i] == b[j]) {
      val = 1 + go(i + 1, j + 1);
    } else {
      val = std::max(go(i + 1, j), go(i, j + 1));
    }
    memo[key] = val;
    return val;
  };
  return go(0, 0);
}

/// AUC as the probability a random positive outscores a random negative,
/// counting ties as one half. O(n^2) by construction.
inline double auc_pairwise(const std::vector<double>& scores,
                           const std::vector<int>& labels) {
  double wins = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != 0) continue;
      ++pairs;
      if (scores[i] > scores[j]) {
        wins += 1.0;
      } else if (scores[i] == scores[j]) {
        wins += 0.5;
      }
    }
  }
  return wins / static_cast<double>(pairs);
}

}  // namespace miaudit::testoracle
