#include <algorithm>
#include <bitset>
#include <iostream>
#include <map>

#include "doctest.h"
#include "goldman/error.hpp"
#include "goldman/free_group.hpp"
#include "oracles.hpp"

using namespace goldman;

namespace {

const Alphabet kAB({"a", "b"});

Word w(std::string_view text) { return parse_word(kAB, text); }

// Deletes one cancelling pair at a time until none is left.
std::vector<Letter> naive_reduce(std::vector<Letter> v) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      if (v[i].gen == v[i + 1].gen && v[i].inv != v[i + 1].inv) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i), v.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return v;
}

// Calls f on every letter sequence of length len over the given rank.
template <class F>
void for_each_raw(int rank, int len, F&& f) {
  std::vector<Letter> v(static_cast<std::size_t>(len));
  std::vector<int> digit(static_cast<std::size_t>(len), 0);
  const int base = 2 * rank;
  for (;;) {
    for (int i = 0; i < len; ++i) v[i] = {digit[i] / 2, digit[i] % 2 == 1};
    f(v);
    int i = len - 1;
    while (i >= 0 && ++digit[i] == base) digit[i--] = 0;
    if (i < 0) return;
  }
}

}  // namespace

TEST_SUITE("freegroup") {
  TEST_CASE("free_reduce examples") {
    CHECK(w("a b b'") == w("a"));
    CHECK(free_reduce(std::vector<Letter>{}).empty());
    CHECK(w("a a' a") == w("a"));
    std::vector<RawLetter> raw{{"a", false}, {"b", false}, {"b", true}};
    CHECK(free_reduce(kAB, raw) == w("a"));
    std::vector<RawLetter> bad{{"a", false}, {"c", false}};
    CHECK_THROWS_AS(free_reduce(kAB, bad), UnknownSymbol);
  }

  TEST_CASE("free_reduce is idempotent and shortening, rank <= 3, length <= 10") {
    long count = 0;
    for (int rank = 1; rank <= 3; ++rank) {
      for (int len = 0; len <= 10; ++len) {
        for_each_raw(rank, len, [&](const std::vector<Letter>& raw) {
          const Word r = free_reduce(raw);
          ++count;
          if (r.size() > raw.size() || free_reduce(r.letters()) != r) {
            FAIL("free_reduce misbehaves");
          }
        });
      }
    }
    CHECK(count > 60'000'000);
  }

  TEST_CASE("free_reduce matches pairwise deletion, rank 2, length <= 8") {
    for (int len = 0; len <= 8; ++len) {
      for_each_raw(2, len, [&](const std::vector<Letter>& raw) {
        if (free_reduce(raw).letters() != naive_reduce(raw)) FAIL("reduction differs from pairwise deletion");
      });
    }
  }

  TEST_CASE("cyclic_reduce examples") {
    auto r = cyclic_reduce(w("b a b'"));
    CHECK(r.core.word() == w("a"));
    CHECK(r.conjugator == w("b"));
    auto s = cyclic_reduce(w("a b"));
    CHECK(s.core.word() == w("a b"));
    CHECK(s.conjugator.empty());
    const Word x = w("b' a' b a b' a b");
    auto t = cyclic_reduce(x);
    CHECK(t.conjugator * t.core.word() * t.conjugator.inverse() == x);
    CHECK(is_cyclically_reduced(t.core.word()));
  }

  TEST_CASE("cyclic_reduce recomposes, all words of length <= 8") {
    for (const Word& x : words_up_to(2, 8)) {
      auto r = cyclic_reduce(x);
      REQUIRE(r.conjugator * r.core.word() * r.conjugator.inverse() == x);
      REQUIRE(is_cyclically_reduced(r.core.word()));
    }
  }

  TEST_CASE("canonical rotation is the least rotation") {
    for (const Word& x : words_up_to(2, 6)) {
      if (!is_cyclically_reduced(x)) continue;
      std::vector<Letter> best = x.letters();
      for (std::size_t k = 1; k < x.size(); ++k) {
        std::vector<Letter> rot(x.letters().begin() + static_cast<std::ptrdiff_t>(k), x.letters().end());
        rot.insert(rot.end(), x.letters().begin(), x.letters().begin() + static_cast<std::ptrdiff_t>(k));
        best = std::min(best, rot);
      }
      REQUIRE(cyclic_word(x).letters() == best);
    }
    // +1 sorts before -1.
    CHECK(cyclic_word(w("a' b' a b")).letters() == w("a b a' b'").letters());
  }

  TEST_CASE("conjugate_in_free examples") {
    CHECK(conjugate_in_free(w("a b"), w("b a")));
    CHECK_FALSE(conjugate_in_free(w("a"), w("b")));
  }

  TEST_CASE("conjugate_in_free agrees with conjugator search, length <= 4") {
    const auto words = words_up_to(2, 4);
    for (const Word& u : words) {
      for (const Word& v : words) {
        REQUIRE(conjugate_in_free(u, v) == oracle::free_conjugate(u, v, 2, 4));
      }
    }
  }

  TEST_CASE("conjugate_in_free is an equivalence relation, length <= 5") {
    const auto words = words_up_to(2, 5);
    REQUIRE(words.size() <= 512);
    std::vector<std::bitset<512>> rel(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
      for (std::size_t j = 0; j < words.size(); ++j) rel[i][j] = conjugate_in_free(words[i], words[j]);
    }
    for (std::size_t i = 0; i < words.size(); ++i) {
      REQUIRE(rel[i][i]);
      for (std::size_t j = 0; j < words.size(); ++j) {
        if (rel[i][j]) {
          REQUIRE(rel[j][i]);
          REQUIRE(rel[i] == rel[j]);
        }
      }
    }
  }

  TEST_CASE("is_power_of") {
    CHECK(is_power_of(w("a a a"), w("a")) == 3);
    CHECK(is_power_of(Word(), w("a")) == 0);
    CHECK_FALSE(is_power_of(w("b a b'"), w("a")).has_value());
    CHECK(is_power_of(w("b' a' b' a'"), w("a b")) == -2);
    CHECK_THROWS_AS(is_power_of(w("a"), Word()), EmptyBase);
    for (const Word& x : words_up_to(2, 3)) {
      if (x.empty()) continue;
      for (int p = -4; p <= 4; ++p) REQUIRE(is_power_of(x.pow(p), x) == p);
    }
  }

  TEST_CASE("not_proper_power") {
    CHECK(not_proper_power(w("a b")));
    CHECK_FALSE(not_proper_power(w("a b a b")));
    CHECK(not_proper_power(w("a b a' b'")));
    CHECK_THROWS_AS(not_proper_power(w("b a b'")), NotCyclicallyReduced);
    for (const Word& x : words_up_to(2, 8)) {
      if (x.empty() || !is_cyclically_reduced(x)) continue;
      REQUIRE(not_proper_power(x) == !oracle::proper_power(x));
    }
  }

  TEST_CASE("double_coset_solve examples") {
    auto s = double_coset_solve(w("a a b a"), w("b"), w("a"), w("a"));
    REQUIRE(s.has_value());
    CHECK(*s == CosetSolution{2, 1});
    auto t = double_coset_solve(w("b"), w("b"), w("a"), w("a"));
    REQUIRE(t.has_value());
    CHECK(*t == CosetSolution{0, 0});
    CHECK_THROWS_AS(double_coset_solve(w("a"), w("a"), Word(), w("a")), EmptyBase);
  }

  TEST_CASE("double_coset_solutions agree with the bounded oracle, length <= 4") {
    const auto words = words_up_to(2, 4);
    const std::vector<std::pair<Word, Word>> bases{{w("a"), w("a")}, {w("a"), w("b")}, {w("a b"), w("a b'")}};
    for (const auto& [xl, xr] : bases) {
      for (const Word& x : words) {
        for (const Word& v : words) {
          const auto found = double_coset_solutions(x, v, xl, xr);
          const auto brute = oracle::double_coset(x, v, xl, xr, 8);
          const int bound = double_coset_bound(x, v, xl, xr);
          REQUIRE(double_coset_solve(x, v, xl, xr).has_value() == !brute.empty());
          for (const auto& s : found) REQUIRE(xl.pow(s.p) * v * xr.pow(s.q) == x);
          for (const auto& s : brute) {
            if (std::abs(s.p) <= bound && std::abs(s.q) <= bound) {
              REQUIRE(std::find(found.begin(), found.end(), s) != found.end());
            }
          }
        }
      }
    }
  }

  TEST_CASE("double_coset_min is the least element over the window") {
    const std::vector<std::pair<Word, Word>> bases{{w("a"), w("a")}, {w("a"), w("b")}, {w("a b"), w("b")}};
    for (const auto& [xl, xr] : bases) {
      for (const Word& x : words_up_to(2, 3)) {
        const CosetRep rep = double_coset_min(x, xl, xr);
        REQUIRE(xl.pow(rep.p) * x * xr.pow(rep.q) == rep.rep);
        for (int p = -8; p <= 8; ++p) {
          for (int q = -8; q <= 8; ++q) {
            REQUIRE_FALSE(shortlex_less(xl.pow(p) * x * xr.pow(q), rep.rep));
          }
        }
        const CosetRep right = right_coset_min(x, xr);
        for (int q = -8; q <= 8; ++q) REQUIRE_FALSE(shortlex_less(x * xr.pow(q), right.rep));
      }
    }
  }

  TEST_CASE("reverse_bar") {
    CHECK(reverse_bar(w("a b")) == w("b' a'"));
    CHECK(reverse_bar(Word()).empty());
    for (const Word& x : words_up_to(2, 6)) REQUIRE(reverse_bar(reverse_bar(x)) == x);
  }

  TEST_CASE("conjugate_to_inverse_probe examples") {
    CHECK_FALSE(conjugate_to_inverse_probe(w("b"), w("a")));
    CHECK_FALSE(conjugate_to_inverse_probe(w("a b"), w("a")));
    CHECK_FALSE(conjugate_to_inverse_probe(w("b a b"), w("a")));
  }

  TEST_CASE("g^-1 never lies in <x> g <x>, lengths <= 4") {
    const auto words = words_up_to(2, 4);
    for (const Word& x : words) {
      if (x.empty() || !is_cyclically_reduced(x) || !not_proper_power(x)) continue;
      for (const Word& g : words) {
        if (is_power_of(g, x)) continue;
        REQUIRE_FALSE(conjugate_to_inverse_probe(g, x));
      }
    }
  }

  TEST_CASE("g a^m g a^n is never trivial for g outside <a>, length <= 4") {
    const Word a = w("a");
    for (const Word& g : words_up_to(2, 4)) {
      if (is_power_of(g, a)) continue;
      for (int m = -5; m <= 5; ++m) {
        for (int n = -5; n <= 5; ++n) {
          if (m == 0 || n == 0) continue;
          REQUIRE_FALSE((g * a.pow(m) * g * a.pow(n)).empty());
        }
      }
    }
  }

  TEST_CASE("parse and format") {
    CHECK(format_word(kAB, w("a b a' b'")) == "a b a' b'");
    CHECK(w("ab'a") == w("a b' a"));
    CHECK(format_word(kAB, Word()) == "1");
    CHECK(w("1").empty());
    CHECK_THROWS_AS(w("a c"), UnknownSymbol);
    const Alphabet long_names({"a", "a1"});
    CHECK(parse_word(long_names, "a1a") == Word{{1, false}, {0, false}});
    for (const Word& x : words_up_to(2, 4)) REQUIRE(parse_word(kAB, format_word(kAB, x)) == x);
  }

  TEST_CASE("words_up_to counts reduced words") {
    for (int len = 0; len <= 6; ++len) {
      long expected = 1, layer = 4;
      for (int k = 1; k <= len; ++k, layer *= 3) expected += layer;
      CHECK(static_cast<long>(words_up_to(2, len).size()) == expected);
    }
  }
}
