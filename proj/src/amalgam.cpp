#include "goldman/amalgam.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "goldman/error.hpp"

namespace goldman {

namespace {

void check_embedding(const Alphabet& alphabet, const Word& x, const char* label, bool check_powers) {
  if (x.empty()) throw InvalidContext(std::string(label) + " must be nonempty");
  if (x.max_gen() >= alphabet.rank()) throw InvalidContext(std::string(label) + " uses letters outside its factor");
  if (!is_cyclically_reduced(x)) throw InvalidContext(std::string(label) + " must be cyclically reduced");
  if (check_powers && !not_proper_power(x)) throw InvalidContext(std::string(label) + " must not be a proper power");
}

std::vector<AmalgamTerm> merge_adjacent(std::span<const AmalgamTerm> terms) {
  std::vector<AmalgamTerm> out;
  out.reserve(terms.size());
  for (const AmalgamTerm& t : terms) {
    if (t.word.empty()) continue;
    if (!out.empty() && out.back().factor == t.factor) {
      out.back().word *= t.word;
      if (out.back().word.empty()) out.pop_back();
    } else {
      out.push_back(t);
    }
  }
  return out;
}

// Conjugacy-class label of a single factor element, closed under x_G^p <-> x_H^p.
std::pair<Factor, CyclicWord> factor_label(const AmalgamCtx& ctx, const AmalgamTerm& t) {
  std::pair<Factor, CyclicWord> best{t.factor, cyclic_word(t.word)};
  if (auto p = conjugate_power_exponent(t.word, ctx.embedding(t.factor))) {
    const Factor o = other(t.factor);
    std::pair<Factor, CyclicWord> alt{o, cyclic_word(ctx.embedding(o).pow(*p))};
    if (alt < best) best = std::move(alt);
  }
  return best;
}

// Follows w_i = x^-p_i v_i x^p_{i+1} around the cycle from a seeded p_0, p_1.
bool chain_closes(const AmalgamCtx& ctx, const std::vector<AmalgamTerm>& w,
                  const std::vector<const AmalgamTerm*>& v, int p0, int p1) {
  const std::size_t n = w.size();
  int p = p1;
  for (std::size_t i = 1; i < n; ++i) {
    const Word& x = ctx.embedding(w[i].factor);
    auto next = is_power_of(v[i]->word.inverse() * x.pow(p) * w[i].word, x);
    if (!next) return false;
    p = *next;
  }
  return p == p0;
}

}  // namespace

AmalgamCtx::AmalgamCtx(Alphabet g, Alphabet h, Word xg, Word xh)
    : AmalgamCtx(std::move(g), std::move(h), std::move(xg), std::move(xh), true) {}

AmalgamCtx AmalgamCtx::unchecked(Alphabet g, Alphabet h, Word xg, Word xh) {
  return AmalgamCtx(std::move(g), std::move(h), std::move(xg), std::move(xh), false);
}

AmalgamCtx::AmalgamCtx(Alphabet g, Alphabet h, Word xg, Word xh, bool check_powers)
    : g_(std::move(g)), h_(std::move(h)), xg_(std::move(xg)), xh_(std::move(xh)) {
  check_embedding(g_, xg_, "xG", check_powers);
  check_embedding(h_, xh_, "xH", check_powers);
}

std::optional<int> AmalgamCtx::c_exponent(Factor f, const Word& w) const {
  return is_power_of(w, embedding(f));
}

bool is_reduced(const AmalgamCtx& ctx, std::span<const AmalgamTerm> terms) {
  if (terms.size() == 1) return !terms[0].word.empty();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0 && terms[i].factor == terms[i - 1].factor) return false;
    if (ctx.c_exponent(terms[i].factor, terms[i].word)) return false;
  }
  return true;
}

bool is_cyclically_reduced(const AmalgamCtx& ctx, std::span<const AmalgamTerm> terms) {
  if (!is_reduced(ctx, terms)) return false;
  return terms.size() < 2 || terms.front().factor != terms.back().factor;
}

AmalgamSeq seq_reduce(const AmalgamCtx& ctx, std::span<const AmalgamTerm> raw) {
  for (const AmalgamTerm& t : raw) {
    if (t.word.max_gen() >= ctx.alphabet(t.factor).rank()) {
      throw WrongAlphabet(std::string("word uses letters outside factor ") + factor_name(t.factor));
    }
  }
  std::vector<AmalgamTerm> cur = merge_adjacent(raw);
  for (;;) {
    if (cur.size() < 2) break;
    auto it = std::find_if(cur.begin(), cur.end(), [&](const AmalgamTerm& t) {
      return ctx.c_exponent(t.factor, t.word).has_value();
    });
    if (it == cur.end()) break;
    const int p = *ctx.c_exponent(it->factor, it->word);
    it->factor = other(it->factor);
    it->word = ctx.embedding(it->factor).pow(p);
    cur = merge_adjacent(cur);
  }
  return AmalgamSeq{std::move(cur)};
}

CyclicAmalgamSeq cyclic_reduce_seq(const AmalgamCtx& ctx, const AmalgamSeq& s) {
  std::vector<AmalgamTerm> terms = seq_reduce(ctx, s.terms).terms;
  while (terms.size() >= 2 && terms.front().factor == terms.back().factor) {
    terms.front().word = terms.back().word * terms.front().word;
    terms.pop_back();
    terms = seq_reduce(ctx, terms).terms;
  }
  if (terms.size() == 1) terms[0].word = cyclic_word(terms[0].word).word();
  return CyclicAmalgamSeq{std::move(terms)};
}

CyclicAmalgamSeq as_cyclic(const AmalgamCtx& ctx, std::vector<AmalgamTerm> terms) {
  for (const AmalgamTerm& t : terms) {
    if (t.word.max_gen() >= ctx.alphabet(t.factor).rank()) {
      throw WrongAlphabet(std::string("word uses letters outside factor ") + factor_name(t.factor));
    }
  }
  if (!is_cyclically_reduced(ctx, terms)) throw NotCyclicallyReduced("amalgam sequence is not cyclically reduced");
  return CyclicAmalgamSeq{std::move(terms)};
}

bool conjugacy_test_amalgam(const AmalgamCtx& ctx, const CyclicAmalgamSeq& s,
                            const CyclicAmalgamSeq& t) {
  const std::size_t n = s.size();
  if (n != t.size()) return false;
  if (n == 0) return true;
  if (n == 1) return factor_label(ctx, s.terms[0]) == factor_label(ctx, t.terms[0]);

  std::vector<const AmalgamTerm*> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (t.terms[k].factor != s.terms[0].factor) continue;
    for (std::size_t i = 0; i < n; ++i) v[i] = &t.terms[(i + k) % n];
    const Word& x = ctx.embedding(s.terms[0].factor);
    // w_0 = x^P v_0 x^Q gives p_0 = -P, p_1 = Q.
    for (const CosetSolution& sol : double_coset_solutions(s.terms[0].word, v[0]->word, x, x)) {
      if (chain_closes(ctx, s.terms, v, -sol.p, sol.q)) return true;
    }
  }
  return false;
}

CosetCycle coset_cycle(const AmalgamCtx& ctx, const CyclicAmalgamSeq& s, CosetFlavor flavor) {
  const std::size_t n = s.size();
  if (n < 2) throw TooShort("coset cycle needs at least two terms");
  CosetCycle out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const AmalgamTerm& u = s.terms[i];
    const Word& xu = ctx.embedding(u.factor);
    if (flavor == CosetFlavor::Element) {
      out.push_back(CosetKey{{static_cast<int>(u.factor)}, {double_coset_min(u.word, xu, xu).rep}});
    } else {
      const AmalgamTerm& v = s.terms[(i + 1) % n];
      const Word& xv = ctx.embedding(v.factor);
      CosetKey key = pair_key(u.word, v.word, xu, xu, xv, xv);
      key.tags = {static_cast<int>(u.factor)};
      out.push_back(std::move(key));
    }
  }
  return out;
}

CosetCycle conjugacy_invariant(const AmalgamCtx& ctx, const CyclicAmalgamSeq& s) {
  if (s.size() == 0) return {};
  if (s.size() == 1) {
    auto [f, w] = factor_label(ctx, s.terms[0]);
    return {CosetKey{{static_cast<int>(f)}, {w.word()}}};
  }
  return canonical_rotation(coset_cycle(ctx, s, CosetFlavor::Product));
}

CyclicAmalgamSeq reverse_bar(const CyclicAmalgamSeq& s) {
  CyclicAmalgamSeq out;
  out.terms.reserve(s.size());
  for (auto it = s.terms.rbegin(); it != s.terms.rend(); ++it) {
    out.terms.push_back({it->factor, it->word.inverse()});
  }
  return out;
}

CyclicAmalgamSeq insert_at(const AmalgamCtx& ctx, const CyclicAmalgamSeq& s, std::size_t i,
                           const Word& a) {
  AmalgamSeq raw{s.terms};
  raw.terms.at(i).word *= a;
  return cyclic_reduce_seq(ctx, raw);
}

AmalgamSeq parse_amalgam_seq(const AmalgamCtx& ctx, std::string_view text) {
  std::vector<AmalgamTerm> raw;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t bar = text.find('|', start);
    if (bar == std::string_view::npos) bar = text.size();
    std::string_view part = text.substr(start, bar - start);
    while (!part.empty() && std::isspace(static_cast<unsigned char>(part.front()))) part.remove_prefix(1);
    while (!part.empty() && std::isspace(static_cast<unsigned char>(part.back()))) part.remove_suffix(1);
    if (!part.empty() && part != "1") {
      const std::size_t colon = part.find(':');
      if (colon == std::string_view::npos) throw ParseError("missing factor tag in '" + std::string(part) + "'");
      std::string_view tag = part.substr(0, colon);
      while (!tag.empty() && std::isspace(static_cast<unsigned char>(tag.back()))) tag.remove_suffix(1);
      Factor f;
      if (tag == "G") {
        f = Factor::G;
      } else if (tag == "H") {
        f = Factor::H;
      } else {
        throw ParseError("unknown factor tag '" + std::string(tag) + "'");
      }
      raw.push_back({f, parse_word(ctx.alphabet(f), part.substr(colon + 1))});
    }
    start = bar + 1;
  }
  return seq_reduce(ctx, raw);
}

std::string format_amalgam_seq(const AmalgamCtx& ctx, std::span<const AmalgamTerm> terms) {
  if (terms.empty()) return "1";
  std::string out;
  for (const AmalgamTerm& t : terms) {
    if (!out.empty()) out += " | ";
    out += factor_name(t.factor);
    out += ':';
    out += format_word(ctx.alphabet(t.factor), t.word);
  }
  return out;
}

}  // namespace goldman
