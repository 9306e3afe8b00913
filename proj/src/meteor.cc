// Copyright 2026 The debatecheck Authors
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

#include "debatecheck/meteor.h"

#include <cctype>
#include <map>

#include "debatecheck/assignment.h"
#include "debatecheck/errors.h"
#include "debatecheck/stemmer.h"

namespace debatecheck {
namespace {

constexpr long kNodeLimit = 200000;

enum class Link { kNone, kExact, kStem };

// Branch-and-bound search for the alignment with the required exact and stem
// match counts and the fewest chunks. Candidate positions are decided left to
// right; chunk count never decreases along a branch, which gives the bound.
class ChunkSearch {
 public:
  ChunkSearch(const std::vector<std::string>& cand,
              const std::vector<std::string>& ref)
      : cand_(cand), ref_(ref) {
    for (const auto& w : cand) cand_stem_.push_back(PorterStem(w));
    for (const auto& w : ref) ref_stem_.push_back(PorterStem(w));

    std::map<std::string, int> cc, rc;
    for (const auto& w : cand) ++cc[w];
    for (const auto& w : ref) ++rc[w];
    // A word with more candidate than reference occurrences has candidate
    // leftovers after the exact stage, and vice versa.
    for (const auto& w : cand) cand_excess_.push_back(cc[w] > rc[w]);
    for (const auto& w : ref) ref_excess_.push_back(rc[w] > cc[w]);
    for (const auto& [w, n] : cc) {
      auto it = rc.find(w);
      if (it != rc.end()) exact_budget_[w] = std::min(n, it->second);
    }
    std::map<std::string, int> cand_left, ref_left;
    for (const auto& [w, n] : cc) {
      int left = n - (rc.count(w) ? rc[w] : 0);
      if (left > 0) cand_left[PorterStem(w)] += left;
    }
    for (const auto& [w, n] : rc) {
      int left = n - (cc.count(w) ? cc[w] : 0);
      if (left > 0) ref_left[PorterStem(w)] += left;
    }
    for (const auto& [s, n] : cand_left) {
      auto it = ref_left.find(s);
      if (it != ref_left.end()) stem_budget_[s] = std::min(n, it->second);
    }
    for (const auto& [w, n] : exact_budget_) exact_total_ += n;
    for (const auto& [s, n] : stem_budget_) stem_total_ += n;

    // Suffix counts for the feasibility bound.
    const int n = static_cast<int>(cand.size());
    exact_suffix_.assign(n + 1, {});
    stem_suffix_.assign(n + 1, {});
    for (int i = n - 1; i >= 0; --i) {
      exact_suffix_[i] = exact_suffix_[i + 1];
      stem_suffix_[i] = stem_suffix_[i + 1];
      ++exact_suffix_[i][cand[i]];
      if (cand_excess_[i]) ++stem_suffix_[i][cand_stem_[i]];
    }
  }

  int exact_total() const { return exact_total_; }
  int stem_total() const { return stem_total_; }

  // Returns the minimum chunk count; `exhaustive` is false if the node limit
  // cut the search short.
  int Solve(bool* exhaustive) {
    const int n = static_cast<int>(cand_.size());
    link_to_.assign(n, -1);
    ref_used_.assign(ref_.size(), false);
    best_ = GreedyChunks();
    Dfs(0, 0);
    *exhaustive = nodes_ <= kNodeLimit;
    return best_;
  }

 private:
  // Staged leftmost matching; always reaches the required counts.
  int GreedyChunks() const {
    const int n = static_cast<int>(cand_.size());
    std::vector<int> to(n, -1);
    std::vector<bool> used(ref_.size(), false);
    std::map<std::string, int> exact_left = exact_budget_;
    for (int i = 0; i < n; ++i) {
      auto it = exact_left.find(cand_[i]);
      if (it == exact_left.end() || it->second == 0) continue;
      for (std::size_t j = 0; j < ref_.size(); ++j) {
        if (!used[j] && ref_[j] == cand_[i]) {
          to[i] = static_cast<int>(j);
          used[j] = true;
          --it->second;
          break;
        }
      }
    }
    std::map<std::string, int> stem_left = stem_budget_;
    for (int i = 0; i < n; ++i) {
      if (to[i] >= 0 || !cand_excess_[i]) continue;
      auto it = stem_left.find(cand_stem_[i]);
      if (it == stem_left.end() || it->second == 0) continue;
      for (std::size_t j = 0; j < ref_.size(); ++j) {
        if (!used[j] && ref_excess_[j] && ref_stem_[j] == cand_stem_[i] &&
            ref_[j] != cand_[i]) {
          to[i] = static_cast<int>(j);
          used[j] = true;
          --it->second;
          break;
        }
      }
    }
    int chunks = 0;
    for (int i = 0; i < n; ++i) {
      if (to[i] < 0) continue;
      if (i == 0 || to[i - 1] < 0 || to[i - 1] + 1 != to[i]) ++chunks;
    }
    return chunks;
  }

  bool Feasible(int i) const {
    for (const auto& [w, budget] : exact_budget_) {
      int need = budget - Used(exact_used_, w);
      auto it = exact_suffix_[i].find(w);
      int avail = it == exact_suffix_[i].end() ? 0 : it->second;
      if (need > avail) return false;
    }
    for (const auto& [s, budget] : stem_budget_) {
      int need = budget - Used(stem_used_, s);
      auto it = stem_suffix_[i].find(s);
      int avail = it == stem_suffix_[i].end() ? 0 : it->second;
      if (need > avail) return false;
    }
    return true;
  }

  static int Used(const std::map<std::string, int>& m, const std::string& k) {
    auto it = m.find(k);
    return it == m.end() ? 0 : it->second;
  }

  void Dfs(int i, int chunks) {
    if (++nodes_ > kNodeLimit) return;
    if (chunks >= best_) return;
    if (!Feasible(i)) return;
    if (i == static_cast<int>(cand_.size())) {
      best_ = chunks;
      return;
    }

    const int prev = i > 0 ? link_to_[i - 1] : -1;
    std::vector<std::pair<int, Link>> options;
    auto exact_it = exact_budget_.find(cand_[i]);
    bool exact_room = exact_it != exact_budget_.end() &&
                      Used(exact_used_, cand_[i]) < exact_it->second;
    auto stem_it = stem_budget_.find(cand_stem_[i]);
    bool stem_room = cand_excess_[i] && stem_it != stem_budget_.end() &&
                     Used(stem_used_, cand_stem_[i]) < stem_it->second;
    for (std::size_t j = 0; j < ref_.size(); ++j) {
      if (ref_used_[j]) continue;
      if (exact_room && ref_[j] == cand_[i]) {
        options.emplace_back(static_cast<int>(j), Link::kExact);
      } else if (stem_room && ref_excess_[j] && ref_stem_[j] == cand_stem_[i] &&
                 ref_[j] != cand_[i]) {
        options.emplace_back(static_cast<int>(j), Link::kStem);
      }
    }
    // Extending the current chunk first finds good incumbents early.
    std::stable_partition(options.begin(), options.end(),
                          [&](const auto& o) { return prev >= 0 && o.first == prev + 1; });

    for (const auto& [j, kind] : options) {
      bool continues = prev >= 0 && j == prev + 1;
      auto& used = kind == Link::kExact ? exact_used_ : stem_used_;
      const std::string& key = kind == Link::kExact ? cand_[i] : cand_stem_[i];
      ++used[key];
      ref_used_[j] = true;
      link_to_[i] = j;
      Dfs(i + 1, chunks + (continues ? 0 : 1));
      link_to_[i] = -1;
      ref_used_[j] = false;
      --used[key];
    }
    Dfs(i + 1, chunks);
  }

  const std::vector<std::string>& cand_;
  const std::vector<std::string>& ref_;
  std::vector<std::string> cand_stem_, ref_stem_;
  std::vector<bool> cand_excess_, ref_excess_;
  std::map<std::string, int> exact_budget_, stem_budget_;
  std::map<std::string, int> exact_used_, stem_used_;
  std::vector<std::map<std::string, int>> exact_suffix_, stem_suffix_;
  int exact_total_ = 0;
  int stem_total_ = 0;
  std::vector<int> link_to_;
  std::vector<bool> ref_used_;
  int best_ = 0;
  long nodes_ = 0;
};

}  // namespace

std::vector<std::string> MeteorTokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    std::size_t b = 0, e = cur.size();
    while (b < e && std::ispunct(static_cast<unsigned char>(cur[b]))) ++b;
    while (e > b && std::ispunct(static_cast<unsigned char>(cur[e - 1]))) --e;
    if (e > b) tokens.push_back(cur.substr(b, e - b));
    cur.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  flush();
  return tokens;
}

MeteorStats MeteorDetailed(const std::vector<std::string>& candidate,
                           const std::vector<std::string>& reference) {
  MeteorStats s;
  s.candidate_length = static_cast<int>(candidate.size());
  s.reference_length = static_cast<int>(reference.size());
  if (candidate.empty() || reference.empty()) return s;

  ChunkSearch search(candidate, reference);
  s.exact_matches = search.exact_total();
  s.stem_matches = search.stem_total();
  s.matches = s.exact_matches + s.stem_matches;
  if (s.matches == 0) return s;
  s.chunks = search.Solve(&s.exhaustive);

  const double m = s.matches;
  s.precision = m / s.candidate_length;
  s.recall = m / s.reference_length;
  s.fmean = 10.0 * s.precision * s.recall / (s.recall + 9.0 * s.precision);
  const double frag = static_cast<double>(s.chunks) / m;
  s.penalty = 0.5 * frag * frag * frag;
  s.score = s.fmean * (1.0 - s.penalty);
  return s;
}

double Meteor(std::string_view candidate, std::string_view reference) {
  return MeteorDetailed(MeteorTokenize(candidate), MeteorTokenize(reference))
      .score;
}

double EvidenceScore(const std::vector<EvidenceItem>& predicted,
                     const std::vector<EvidenceItem>& gold) {
  if (gold.empty()) throw EmptyGold("evidence score needs gold evidence");
  if (predicted.empty()) return 0.0;
  auto text = [](const EvidenceItem& e) { return e.question + " " + e.answer; };
  std::vector<std::vector<std::string>> pred_tokens, gold_tokens;
  for (const auto& e : predicted) pred_tokens.push_back(MeteorTokenize(text(e)));
  for (const auto& e : gold) gold_tokens.push_back(MeteorTokenize(text(e)));
  std::vector<std::vector<double>> w(predicted.size(),
                                     std::vector<double>(gold.size()));
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    for (std::size_t j = 0; j < gold.size(); ++j) {
      w[i][j] = MeteorDetailed(pred_tokens[i], gold_tokens[j]).score;
    }
  }
  return MaxWeightAssignment(w).total / static_cast<double>(gold.size());
}

}  // namespace debatecheck
