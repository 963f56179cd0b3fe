#include <set>

#include "doctest.h"
#include "goldman/amalgam.hpp"
#include "goldman/error.hpp"
#include "oracles.hpp"

using namespace goldman;

namespace {

const Alphabet kG({"a1", "b1"});
const Alphabet kH({"a2", "b2"});

AmalgamCtx genus2() { return AmalgamCtx(kG, kH, parse_word(kG, "a1 b1 a1' b1'"), parse_word(kH, "b2 a2 b2' a2'")); }

CyclicAmalgamSeq seq(const AmalgamCtx& ctx, std::string_view text) {
  return cyclic_reduce_seq(ctx, parse_amalgam_seq(ctx, text));
}

std::vector<Word> nonempty(int max_len) {
  std::vector<Word> out;
  for (Word& w : words_up_to(2, max_len)) {
    if (!w.empty()) out.push_back(std::move(w));
  }
  return out;
}

// Cyclically reduced sequences with the given even n and word length, starting in G or H.
std::vector<CyclicAmalgamSeq> alternating(const AmalgamCtx& ctx, int n, int max_len, bool both_starts) {
  std::vector<Word> pool;
  for (const Word& w : nonempty(max_len)) {
    if (!ctx.c_exponent(Factor::G, w)) pool.push_back(w);
  }
  std::vector<CyclicAmalgamSeq> out;
  for (Factor start : {Factor::G, Factor::H}) {
    if (start == Factor::H && !both_starts) break;
    std::vector<std::size_t> d(static_cast<std::size_t>(n), 0);
    for (;;) {
      CyclicAmalgamSeq s;
      Factor f = start;
      for (int i = 0; i < n; ++i, f = other(f)) s.terms.push_back({f, pool[d[i]]});
      out.push_back(std::move(s));
      int i = n - 1;
      while (i >= 0 && ++d[i] == pool.size()) d[i--] = 0;
      if (i < 0) break;
    }
  }
  return out;
}

std::vector<CyclicAmalgamSeq> small_classes(const AmalgamCtx& ctx, int max_len) {
  std::vector<CyclicAmalgamSeq> out;
  for (Factor f : {Factor::G, Factor::H}) {
    for (const Word& w : nonempty(max_len)) {
      if (is_cyclically_reduced(w)) out.push_back({{{f, w}}});
    }
  }
  auto two = alternating(ctx, 2, max_len, true);
  out.insert(out.end(), two.begin(), two.end());
  return out;
}

std::vector<AmalgamTerm> inverse_of(std::span<const AmalgamTerm> s) {
  std::vector<AmalgamTerm> out;
  for (auto it = s.rbegin(); it != s.rend(); ++it) out.push_back({it->factor, it->word.inverse()});
  return out;
}

}  // namespace

TEST_SUITE("amalgam") {
  TEST_CASE("context validation") {
    CHECK_NOTHROW(genus2());
    CHECK_THROWS_AS(AmalgamCtx(kG, kH, parse_word(kG, "a1 a1"), parse_word(kH, "a2")), InvalidContext);
    CHECK_THROWS_AS(AmalgamCtx(kG, kH, Word(), parse_word(kH, "a2")), InvalidContext);
    CHECK_THROWS_AS(AmalgamCtx(kG, kH, parse_word(kG, "b1 a1 b1'"), parse_word(kH, "a2")), InvalidContext);
    CHECK_NOTHROW(AmalgamCtx::unchecked(kG, kH, parse_word(kG, "a1 a1"), parse_word(kH, "a2 a2 a2")));
  }

  TEST_CASE("seq_reduce examples") {
    const AmalgamCtx ctx = genus2();
    const Word a1 = parse_word(kG, "a1"), b1 = parse_word(kG, "b1"), a2 = parse_word(kH, "a2");
    CHECK(seq_reduce(ctx, std::vector<AmalgamTerm>{{Factor::G, a1}, {Factor::G, b1}}).terms ==
          std::vector<AmalgamTerm>{{Factor::G, a1 * b1}});
    CHECK(seq_reduce(ctx, std::vector<AmalgamTerm>{{Factor::G, a1}, {Factor::H, ctx.embedding(Factor::H)}}).terms ==
          std::vector<AmalgamTerm>{{Factor::G, a1 * ctx.embedding(Factor::G)}});
    CHECK(seq_reduce(ctx, std::vector<AmalgamTerm>{{Factor::G, a1}, {Factor::H, a2}, {Factor::H, a2.inverse()}})
              .terms == std::vector<AmalgamTerm>{{Factor::G, a1}});
    CHECK_THROWS_AS(seq_reduce(ctx, std::vector<AmalgamTerm>{{Factor::G, Word::generator(3)}}), WrongAlphabet);
  }

  TEST_CASE("seq_reduce keeps the element and reaches reduced form") {
    const AmalgamCtx ctx = genus2();
    std::vector<AmalgamTerm> pool;
    for (Factor f : {Factor::G, Factor::H}) {
      for (const Word& w : nonempty(2)) pool.push_back({f, w});
      pool.push_back({f, ctx.embedding(f)});
      pool.push_back({f, ctx.embedding(f).inverse()});
    }
    for (const auto& t1 : pool) {
      for (const auto& t2 : pool) {
        for (const auto& t3 : pool) {
          const std::vector<AmalgamTerm> raw{t1, t2, t3};
          const AmalgamSeq r = seq_reduce(ctx, raw);
          REQUIRE(is_reduced(ctx, r.terms));
          REQUIRE(oracle::amalgam_normal_form(ctx, r.terms) == oracle::amalgam_normal_form(ctx, raw));
        }
      }
    }
  }

  TEST_CASE("reduced sequences are nontrivial and collapse only against their inverse") {
    const AmalgamCtx ctx = genus2();
    for (int n = 1; n <= 4; ++n) {
      std::vector<CyclicAmalgamSeq> seqs;
      if (n % 2 == 0) {
        seqs = alternating(ctx, n, n == 4 ? 1 : 2, true);
      } else {
        // Odd n: alternating sequences that need not be cyclically reduced.
        for (const auto& s : alternating(ctx, n + 1, n == 3 ? 1 : 2, true)) {
          seqs.push_back({{s.terms.begin(), s.terms.end() - 1}});
        }
      }
      for (const auto& s : seqs) {
        REQUIRE(is_reduced(ctx, s.terms));
        REQUIRE_FALSE(oracle::amalgam_normal_form(ctx, s.terms) == oracle::AmalgamNormalForm{});
        const auto inv = inverse_of(s.terms);
        for (std::size_t k = 0; k <= inv.size(); ++k) {
          std::vector<AmalgamTerm> raw = s.terms;
          raw.insert(raw.end(), inv.begin(), inv.begin() + static_cast<std::ptrdiff_t>(k));
          REQUIRE(seq_reduce(ctx, raw).size() == s.size() - k);
        }
      }
    }
  }

  TEST_CASE("cyclic_reduce_seq examples") {
    const AmalgamCtx ctx = genus2();
    const Word a1 = parse_word(kG, "a1"), a2 = parse_word(kH, "a2");
    CHECK(cyclic_reduce_seq(ctx, AmalgamSeq{{{Factor::G, a1}, {Factor::H, a2}, {Factor::G, a1.inverse()}}}).terms ==
          std::vector<AmalgamTerm>{{Factor::H, a2}});
    CHECK(cyclic_reduce_seq(ctx, AmalgamSeq{{{Factor::G, a1}, {Factor::H, a2}}}).terms ==
          std::vector<AmalgamTerm>{{Factor::G, a1}, {Factor::H, a2}});
  }

  TEST_CASE("cyclic reduction keeps n across rotations and conjugations") {
    const AmalgamCtx ctx = genus2();
    std::vector<AmalgamTerm> conjugators;
    for (Factor f : {Factor::G, Factor::H}) {
      for (const Word& w : nonempty(1)) conjugators.push_back({f, w});
    }
    for (int n : {2, 4}) {
      for (const auto& s : alternating(ctx, n, n == 4 ? 1 : 2, false)) {
        for (std::size_t k = 0; k < s.size(); ++k) {
          std::vector<AmalgamTerm> rot(s.terms.begin() + static_cast<std::ptrdiff_t>(k), s.terms.end());
          rot.insert(rot.end(), s.terms.begin(), s.terms.begin() + static_cast<std::ptrdiff_t>(k));
          const auto c = cyclic_reduce_seq(ctx, AmalgamSeq{rot});
          REQUIRE(c.size() == s.size());
          REQUIRE(conjugacy_test_amalgam(ctx, c, s));
        }
        for (const auto& z : conjugators) {
          std::vector<AmalgamTerm> raw{z};
          raw.insert(raw.end(), s.terms.begin(), s.terms.end());
          raw.push_back({z.factor, z.word.inverse()});
          const auto c = cyclic_reduce_seq(ctx, seq_reduce(ctx, raw));
          REQUIRE(c.size() == s.size());
          REQUIRE(is_cyclically_reduced(ctx, c.terms));
          REQUIRE(conjugacy_test_amalgam(ctx, c, s));
        }
      }
    }
  }

  TEST_CASE("conjugacy examples") {
    const AmalgamCtx ctx = genus2();
    const Word xg = ctx.embedding(Factor::G), xh = ctx.embedding(Factor::H);
    const Word a1 = parse_word(kG, "a1"), a2 = parse_word(kH, "a2");
    const CyclicAmalgamSeq s{{{Factor::G, a1}, {Factor::H, a2}}};
    CHECK(conjugacy_test_amalgam(ctx, s, CyclicAmalgamSeq{{{Factor::H, a2}, {Factor::G, a1}}}));
    const CyclicAmalgamSeq shifted{{{Factor::G, xg * a1}, {Factor::H, a2 * xh.inverse()}}};
    CHECK(conjugacy_test_amalgam(ctx, shifted, s));
    const std::vector<CyclicAmalgamSeq> pair{shifted, s};
    const auto comp = oracle::amalgam_components(ctx, pair, 1);
    CHECK(comp[0] == comp[1]);
    CHECK_FALSE(conjugacy_test_amalgam(ctx, CyclicAmalgamSeq{{{Factor::G, a1 * xg}, {Factor::H, a2}}}, s));
  }

  TEST_CASE("n <= 1 conjugacy crosses factors through C") {
    const AmalgamCtx ctx = genus2();
    const Word xg = ctx.embedding(Factor::G), xh = ctx.embedding(Factor::H);
    CHECK(conjugacy_test_amalgam(ctx, {{{Factor::G, xg}}}, {{{Factor::H, xh}}}));
    CHECK(conjugacy_test_amalgam(ctx, {{{Factor::G, xg.pow(2)}}}, {{{Factor::H, cyclic_word(xh.pow(2)).word()}}}));
    CHECK_FALSE(conjugacy_test_amalgam(ctx, {{{Factor::G, xg}}}, {{{Factor::H, xh.inverse()}}}));
    CHECK(conjugacy_test_amalgam(ctx, {}, {}));
  }

  TEST_CASE("conjugacy agrees with conjugator search, n <= 2, word length <= 1") {
    const AmalgamCtx ctx = genus2();
    const auto seqs = small_classes(ctx, 1);
    const auto comp = oracle::amalgam_components(ctx, seqs, 2);
    for (std::size_t i = 0; i < seqs.size(); ++i) {
      for (std::size_t j = 0; j < seqs.size(); ++j) {
        REQUIRE(conjugacy_test_amalgam(ctx, seqs[i], seqs[j]) == (comp[i] == comp[j]));
      }
    }
  }

  TEST_CASE("coset cycles") {
    const AmalgamCtx ctx = genus2();
    const Word xg = ctx.embedding(Factor::G);
    const CyclicAmalgamSeq s = seq(ctx, "G:a1 | H:a2");
    CHECK(coset_cycle(ctx, s, CosetFlavor::Product).size() == 2);
    CHECK_THROWS_AS(coset_cycle(ctx, seq(ctx, "G:a1"), CosetFlavor::Element), TooShort);
    const CyclicAmalgamSeq moved{{{Factor::G, xg * s.terms[0].word * xg}, s.terms[1]}};
    CHECK(coset_cycle(ctx, moved, CosetFlavor::Element) == coset_cycle(ctx, s, CosetFlavor::Element));
    // The product key of (a1, a2) depends only on C a1 a2 C: shifting through the seam leaves it.
    const Word xh = ctx.embedding(Factor::H);
    const CyclicAmalgamSeq seam{{{Factor::G, s.terms[0].word * xg}, {Factor::H, xh.inverse() * s.terms[1].word}}};
    CHECK(coset_cycle(ctx, seam, CosetFlavor::Product)[0] == coset_cycle(ctx, s, CosetFlavor::Product)[0]);
  }

  TEST_CASE("conjugate sequences have rotation-equal cycles, n <= 4") {
    const AmalgamCtx ctx = genus2();
    std::vector<CyclicAmalgamSeq> seqs = alternating(ctx, 2, 1, true);
    auto four = alternating(ctx, 4, 1, true);
    seqs.insert(seqs.end(), four.begin(), four.end());
    for (const auto& s : seqs) {
      for (const auto& t : seqs) {
        if (!conjugacy_test_amalgam(ctx, s, t)) continue;
        REQUIRE(rotation_equal(coset_cycle(ctx, s, CosetFlavor::Product), coset_cycle(ctx, t, CosetFlavor::Product)));
        REQUIRE(rotation_equal(coset_cycle(ctx, s, CosetFlavor::Element), coset_cycle(ctx, t, CosetFlavor::Element)));
        REQUIRE(conjugacy_invariant(ctx, s) == conjugacy_invariant(ctx, t));
      }
    }
  }

  TEST_CASE("inserting the curve at sites of different parity never gives conjugates") {
    const AmalgamCtx ctx = genus2();
    for (auto [n, len] : {std::pair{2, 2}, std::pair{4, 1}}) {
      for (const auto& s : alternating(ctx, n, len, false)) {
        for (std::size_t i = 0; i < s.size(); ++i) {
          const auto si = insert_at(ctx, s, i, ctx.embedding(s.terms[i].factor));
          REQUIRE(si.size() == s.size());
          for (std::size_t j = i + 1; j < s.size(); j += 2) {
            const auto sj = insert_at(ctx, s, j, ctx.embedding(s.terms[j].factor));
            REQUIRE_FALSE(conjugacy_test_amalgam(ctx, si, sj));
          }
          const auto r = reverse_bar(s);
          for (std::size_t j = 0; j < r.size(); ++j) {
            REQUIRE_FALSE(conjugacy_test_amalgam(ctx, si, insert_at(ctx, r, j, ctx.embedding(r.terms[j].factor))));
          }
        }
      }
    }
  }

  TEST_CASE("excluded hypotheses give conjugate insertions") {
    const AmalgamCtx ctx = genus2();
    // A sequence that is a proper power: (w1, w2, w1, w2).
    const CyclicAmalgamSeq s = seq(ctx, "G:a1 | H:a2 | G:a1 | H:a2");
    const Word xg = ctx.embedding(Factor::G);
    CHECK(conjugacy_test_amalgam(ctx, insert_at(ctx, s, 0, xg), insert_at(ctx, s, 2, xg)));

    // Embedding words that are proper powers: x^3 y = x y^4 when x^2 = y^3.
    const Alphabet gx({"x"}), hy({"y"});
    const AmalgamCtx bad = AmalgamCtx::unchecked(gx, hy, parse_word(gx, "x x"), parse_word(hy, "y y y"));
    const CyclicAmalgamSeq base{{{Factor::G, parse_word(gx, "x")}, {Factor::H, parse_word(hy, "y")}}};
    const auto left = insert_at(bad, base, 0, bad.embedding(Factor::G));
    const auto right = insert_at(bad, base, 1, bad.embedding(Factor::H));
    CHECK(conjugacy_test_amalgam(bad, left, right));
    CHECK(oracle::amalgam_normal_form(bad, left.terms) == oracle::amalgam_normal_form(bad, right.terms));
  }

  TEST_CASE("reverse_bar is the inverse element") {
    const AmalgamCtx ctx = genus2();
    for (const auto& s : alternating(ctx, 2, 2, true)) {
      std::vector<AmalgamTerm> raw = s.terms;
      const auto r = reverse_bar(s);
      raw.insert(raw.end(), r.terms.begin(), r.terms.end());
      REQUIRE(oracle::amalgam_normal_form(ctx, raw) == oracle::AmalgamNormalForm{});
      REQUIRE(reverse_bar(r) == s);
    }
  }

  TEST_CASE("sequence text") {
    const AmalgamCtx ctx = genus2();
    const AmalgamSeq s = parse_amalgam_seq(ctx, "G:a1 b1 | H:a2'");
    CHECK(format_amalgam_seq(ctx, s.terms) == "G:a1 b1 | H:a2'");
    CHECK(format_amalgam_seq(ctx, parse_amalgam_seq(ctx, "1").terms) == "1");
    CHECK_THROWS_AS(parse_amalgam_seq(ctx, "K:a1"), ParseError);
    CHECK_THROWS_AS(parse_amalgam_seq(ctx, "a1"), ParseError);
    CHECK_THROWS_AS(parse_amalgam_seq(ctx, "G:a2"), UnknownSymbol);
  }
}
