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

#include "debatecheck/stemmer.h"

namespace debatecheck {
namespace {

// Direct transcription of the reference algorithm. `b` holds the word, `k`
// the index of its last letter and `j` a general offset set by Ends().
class Stemmer {
 public:
  explicit Stemmer(std::string_view w) : b_(w), k_(static_cast<int>(w.size()) - 1) {}

  std::string Run() {
    if (k_ <= 1) return b_;
    Step1ab();
    if (k_ > 0) {
      Step1c();
      Step2();
      Step3();
      Step4();
      Step5();
    }
    return b_.substr(0, k_ + 1);
  }

 private:
  bool Cons(int i) const {
    switch (b_[i]) {
      case 'a':
      case 'e':
      case 'i':
      case 'o':
      case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !Cons(i - 1);
      default:
        return true;
    }
  }

  // Number of consonant-vowel sequences in b[0..j].
  int M() const {
    int n = 0;
    int i = 0;
    for (;;) {
      if (i > j_) return n;
      if (!Cons(i)) break;
      ++i;
    }
    ++i;
    for (;;) {
      for (;;) {
        if (i > j_) return n;
        if (Cons(i)) break;
        ++i;
      }
      ++i;
      ++n;
      for (;;) {
        if (i > j_) return n;
        if (!Cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool VowelInStem() const {
    for (int i = 0; i <= j_; ++i) {
      if (!Cons(i)) return true;
    }
    return false;
  }

  bool DoubleC(int j) const {
    if (j < 1) return false;
    if (b_[j] != b_[j - 1]) return false;
    return Cons(j);
  }

  bool Cvc(int i) const {
    if (i < 2 || !Cons(i) || Cons(i - 1) || !Cons(i - 2)) return false;
    char ch = b_[i];
    return !(ch == 'w' || ch == 'x' || ch == 'y');
  }

  bool Ends(std::string_view s) {
    int len = static_cast<int>(s.size());
    if (len > k_ + 1) return false;
    if (std::string_view(b_).substr(k_ - len + 1, len) != s) return false;
    j_ = k_ - len;
    return true;
  }

  void SetTo(std::string_view s) {
    b_.replace(j_ + 1, k_ - j_, s);
    k_ = j_ + static_cast<int>(s.size());
  }

  void R(std::string_view s) {
    if (M() > 0) SetTo(s);
  }

  void Step1ab() {
    if (b_[k_] == 's') {
      if (Ends("sses")) {
        k_ -= 2;
      } else if (Ends("ies")) {
        SetTo("i");
      } else if (b_[k_ - 1] != 's') {
        --k_;
      }
    }
    if (Ends("eed")) {
      if (M() > 0) --k_;
    } else if ((Ends("ed") || Ends("ing")) && VowelInStem()) {
      k_ = j_;
      if (Ends("at")) {
        SetTo("ate");
      } else if (Ends("bl")) {
        SetTo("ble");
      } else if (Ends("iz")) {
        SetTo("ize");
      } else if (DoubleC(k_)) {
        --k_;
        char ch = b_[k_];
        if (ch == 'l' || ch == 's' || ch == 'z') ++k_;
      } else if (M() == 1 && Cvc(k_)) {
        SetTo("e");
      }
    }
  }

  void Step1c() {
    if (Ends("y") && VowelInStem()) b_[k_] = 'i';
  }

  // Tries each (suffix, replacement) in order; stops at the first suffix
  // that matches, whether or not the replacement applies.
  template <std::size_t N>
  void Replace(const std::pair<std::string_view, std::string_view> (&rules)[N]) {
    for (const auto& [suffix, repl] : rules) {
      if (Ends(suffix)) {
        R(repl);
        return;
      }
    }
  }

  void Step2() {
    if (k_ < 1) return;
    switch (b_[k_ - 1]) {
      case 'a': {
        static constexpr std::pair<std::string_view, std::string_view> r[] = {
            {"ational", "ate"}, {"tional", "tion"}};
        Replace(r);
        break;
      }
      case 'c': {
        static constexpr std::pair<std::string_view, std::string_view> r[] = {
            {"enci", "ence"}, {"anci", "ance"}};
        Replace(r);
        break;
      }
      case 'e': {
        static constexpr std::pair<std::string_view, std::string_view> r[] = {
            {"izer", "ize"}};
        Replace(r);
        break;
      }
      case 'l': {
        static constexpr std::pair<std::string_view, std::string_view> r[] = {
            {"bli", "ble"}, {"alli", "al"},   {"entli", "ent"},
            {"eli", "e"},   {"ousli", "ous"}};
        Replace(r);
        break;
      }
      case 'o': {
        static constexpr std::pair<std::string_view, std::string_view> r[] = {
            {"ization", "ize"}, {"ation", "ate"}, {"ator", "ate"}};
        Replace(r);
        break;
      }
      case 's': {
        static constexpr std::pair<std::string_view, std::string_view> r[] = {
            {"alism", "al"},
            {"iveness", "ive"},
            {"fulness", "ful"},
            {"ousness", "ous"}};
        Replace(r);
        break;
      }
      case 't': {
        static constexpr std::pair<std::string_view, std::string_view> r[] = {
            {"aliti", "al"}, {"iviti", "ive"}, {"biliti", "ble"}};
        Replace(r);
        break;
      }
      case 'g': {
        static constexpr std::pair<std::string_view, std::string_view> r[] = {
            {"logi", "log"}};
        Replace(r);
        break;
      }
      default:
        break;
    }
  }

  void Step3() {
    switch (b_[k_]) {
      case 'e': {
        static constexpr std::pair<std::string_view, std::string_view> r[] = {
            {"icate", "ic"}, {"ative", ""}, {"alize", "al"}};
        Replace(r);
        break;
      }
      case 'i': {
        static constexpr std::pair<std::string_view, std::string_view> r[] = {
            {"iciti", "ic"}};
        Replace(r);
        break;
      }
      case 'l': {
        static constexpr std::pair<std::string_view, std::string_view> r[] = {
            {"ical", "ic"}, {"ful", ""}};
        Replace(r);
        break;
      }
      case 's': {
        static constexpr std::pair<std::string_view, std::string_view> r[] = {
            {"ness", ""}};
        Replace(r);
        break;
      }
      default:
        break;
    }
  }

  void Step4() {
    if (k_ < 1) return;
    bool hit = false;
    switch (b_[k_ - 1]) {
      case 'a':
        hit = Ends("al");
        break;
      case 'c':
        hit = Ends("ance") || Ends("ence");
        break;
      case 'e':
        hit = Ends("er");
        break;
      case 'i':
        hit = Ends("ic");
        break;
      case 'l':
        hit = Ends("able") || Ends("ible");
        break;
      case 'n':
        hit = Ends("ant") || Ends("ement") || Ends("ment") || Ends("ent");
        break;
      case 'o':
        hit = (Ends("ion") && j_ >= 0 && (b_[j_] == 's' || b_[j_] == 't')) ||
              Ends("ou");
        break;
      case 's':
        hit = Ends("ism");
        break;
      case 't':
        hit = Ends("ate") || Ends("iti");
        break;
      case 'u':
        hit = Ends("ous");
        break;
      case 'v':
        hit = Ends("ive");
        break;
      case 'z':
        hit = Ends("ize");
        break;
      default:
        break;
    }
    if (hit && M() > 1) k_ = j_;
  }

  void Step5() {
    j_ = k_;
    if (b_[k_] == 'e') {
      int a = M();
      if (a > 1 || (a == 1 && !Cvc(k_ - 1))) --k_;
    }
    if (b_[k_] == 'l' && DoubleC(k_) && M() > 1) --k_;
  }

  std::string b_;
  int k_;
  int j_ = 0;
};

}  // namespace

std::string PorterStem(std::string_view word) { return Stemmer(word).Run(); }

}  // namespace debatecheck
