#include "goldman/hnn.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>
#include <utility>

#include "goldman/error.hpp"

namespace goldman {

namespace {

void check_base(const Alphabet& alphabet, const Word& w, const char* label) {
  if (w.empty()) throw InvalidContext(std::string(label) + " must be nonempty");
  if (w.max_gen() >= alphabet.rank()) throw InvalidContext(std::string(label) + " uses letters outside G");
  if (!is_cyclically_reduced(w)) throw InvalidContext(std::string(label) + " must be cyclically reduced");
  if (!not_proper_power(w)) throw InvalidContext(std::string(label) + " must not be a proper power");
}

// Pinch t^prev g t^next: returns the replacement word when it collapses.
std::optional<Word> pinch(const HnnCtx& ctx, int prev, const Word& g, int next) {
  if (prev == -1 && next == 1) {
    if (auto p = ctx.subgroup_exponent(1, g)) return ctx.b().pow(*p);
  } else if (prev == 1 && next == -1) {
    if (auto p = ctx.subgroup_exponent(-1, g)) return ctx.a().pow(*p);
  }
  return std::nullopt;
}

// Conjugacy label of an element of G, closed under a^p <-> b^p.
CyclicWord base_label(const HnnCtx& ctx, const Word& w) {
  std::set<CyclicWord> seen{cyclic_word(w)};
  std::vector<CyclicWord> todo{cyclic_word(w)};
  while (!todo.empty()) {
    const Word cur = todo.back().word();
    todo.pop_back();
    for (int eps : {1, -1}) {
      if (auto p = conjugate_power_exponent(cur, ctx.base(eps))) {
        CyclicWord image = cyclic_word(ctx.base(-eps).pow(*p));
        if (seen.insert(image).second) todo.push_back(std::move(image));
      }
    }
  }
  return *seen.begin();
}

// Follows g_i = L_i^-p_i h_i R_i^p_{i+1} from a seeded p_0, p_1.
bool chain_closes(const HnnCtx& ctx, const CyclicHnnSeq& s, const std::vector<const Word*>& h,
                  int p0, int p1) {
  const std::size_t n = s.n();
  int p = p1;
  for (std::size_t i = 1; i < n; ++i) {
    const Word& left = ctx.base(-s.eps[i - 1]);
    const Word& right = ctx.base(s.eps[i]);
    auto next = is_power_of(h[i]->inverse() * left.pow(p) * s.g[i], right);
    if (!next) return false;
    p = *next;
  }
  return p == p0;
}

}  // namespace

HnnCtx::HnnCtx(Alphabet g, Word a, Word b, std::string stable)
    : g_(std::move(g)), a_(std::move(a)), b_(std::move(b)), t_(std::move(stable)) {
  check_base(g_, a_, "a");
  check_base(g_, b_, "b");
  if (g_.find(t_)) throw InvalidContext("stable letter '" + t_ + "' clashes with a generator of G");
  if (t_.empty()) throw InvalidContext("stable letter name must be nonempty");
}

Word phi_apply(const HnnCtx& ctx, const Word& w, int direction) {
  auto p = ctx.subgroup_exponent(direction, w);
  if (!p) throw NotInSubgroup(direction > 0 ? "word is not in A" : "word is not in B");
  return ctx.base(-direction).pow(*p);
}

HnnSeq britton_reduce(const HnnCtx& ctx, std::span<const HnnToken> raw) {
  HnnSeq out;
  out.g.emplace_back();
  for (const HnnToken& tok : raw) {
    if (tok.eps == 0) {
      if (tok.word.max_gen() >= ctx.alphabet().rank()) throw WrongAlphabet("word uses letters outside G");
      out.g.back() *= tok.word;
      continue;
    }
    if (!out.eps.empty()) {
      if (auto image = pinch(ctx, out.eps.back(), out.g.back(), tok.eps)) {
        out.eps.pop_back();
        out.g.pop_back();
        out.g.back() *= *image;
        continue;
      }
    }
    out.eps.push_back(tok.eps > 0 ? 1 : -1);
    out.g.emplace_back();
  }
  return out;
}

bool is_reduced(const HnnCtx& ctx, const HnnSeq& s) {
  for (std::size_t i = 1; i < s.n(); ++i) {
    if (pinch(ctx, s.eps[i - 1], s.g[i], s.eps[i])) return false;
  }
  return true;
}

bool is_cyclically_reduced(const HnnCtx& ctx, const CyclicHnnSeq& s) {
  const std::size_t n = s.n();
  if (n == 0) return s.g.size() == 1;
  if (s.g.size() != n) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (pinch(ctx, s.eps[(i + n - 1) % n], s.g[i], s.eps[i])) return false;
  }
  return true;
}

std::vector<HnnToken> tokens_of(const HnnSeq& s) {
  std::vector<HnnToken> out;
  for (std::size_t i = 0; i < s.g.size(); ++i) {
    out.push_back({s.g[i], 0});
    if (i < s.n()) out.push_back({Word(), s.eps[i]});
  }
  return out;
}

std::vector<HnnToken> tokens_of(const CyclicHnnSeq& s) {
  std::vector<HnnToken> out;
  for (std::size_t i = 0; i < s.g.size(); ++i) {
    out.push_back({s.g[i], 0});
    if (i < s.n()) out.push_back({Word(), s.eps[i]});
  }
  return out;
}

CyclicHnnSeq cyclic_reduce_hnn(const HnnCtx& ctx, const HnnSeq& s) {
  HnnSeq cur = britton_reduce(ctx, tokens_of(s));
  for (;;) {
    const std::size_t n = cur.n();
    if (n == 0) return CyclicHnnSeq{{cyclic_word(cur.g[0]).word()}, {}};
    // Fold the trailing word into g_0 by conjugation.
    std::vector<Word> g(cur.g.begin(), cur.g.end() - 1);
    g[0] = cur.g.back() * g[0];
    auto image = pinch(ctx, cur.eps.back(), g[0], cur.eps.front());
    if (!image) return CyclicHnnSeq{std::move(g), cur.eps};
    // t^e_n g_0 t^e_1 collapses; conjugate by t^e_n and re-reduce.
    std::vector<HnnToken> raw{{*image, 0}};
    for (std::size_t i = 1; i < n; ++i) {
      raw.push_back({g[i], 0});
      if (i + 1 < n) raw.push_back({Word(), cur.eps[i]});
    }
    cur = britton_reduce(ctx, raw);
  }
}

CyclicHnnSeq as_cyclic(const HnnCtx& ctx, std::vector<Word> g, std::vector<int> eps) {
  for (const Word& w : g) {
    if (w.max_gen() >= ctx.alphabet().rank()) throw WrongAlphabet("word uses letters outside G");
  }
  for (int& e : eps) {
    if (e != 1 && e != -1) throw ParseError("stable letter exponent must be +1 or -1");
  }
  CyclicHnnSeq s{std::move(g), std::move(eps)};
  if (!is_cyclically_reduced(ctx, s)) throw NotCyclicallyReduced("HNN sequence is not cyclically reduced");
  return s;
}

bool collins_conjugacy(const HnnCtx& ctx, const CyclicHnnSeq& s, const CyclicHnnSeq& r) {
  const std::size_t n = s.n();
  if (n != r.n()) return false;
  if (n == 0) return base_label(ctx, s.g[0]) == base_label(ctx, r.g[0]);

  std::vector<const Word*> h(n);
  for (std::size_t k = 0; k < n; ++k) {
    bool match = true;
    for (std::size_t i = 0; i < n && match; ++i) match = s.eps[i] == r.eps[(i + k) % n];
    if (!match) continue;
    for (std::size_t i = 0; i < n; ++i) h[i] = &r.g[(i + k) % n];
    const Word& left = ctx.base(-s.eps[n - 1]);
    const Word& right = ctx.base(s.eps[0]);
    // g_0 = L^P h_0 R^Q gives p_0 = -P, p_1 = Q.
    for (const CosetSolution& sol : double_coset_solutions(s.g[0], *h[0], left, right)) {
      if (chain_closes(ctx, s, h, -sol.p, sol.q)) return true;
    }
  }
  return false;
}

CosetCycle coset_cycle_hnn(const HnnCtx& ctx, const CyclicHnnSeq& s, CosetFlavor flavor) {
  const std::size_t n = s.n();
  if (flavor == CosetFlavor::Product && n < 2) throw TooShort("HNN coset cycle needs n >= 2");
  if (n < 1) throw TooShort("HNN element cycle needs n >= 1");
  CosetCycle out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int prev = s.eps[(i + n - 1) % n];
    const int mid = s.eps[i];
    if (flavor == CosetFlavor::Element) {
      out.push_back(CosetKey{{prev, mid}, {double_coset_min(s.g[i], ctx.base(-prev), ctx.base(mid)).rep}});
    } else {
      const int next = s.eps[(i + 1) % n];
      CosetKey key = pair_key(s.g[i], s.g[(i + 1) % n], ctx.base(-prev), ctx.base(mid), ctx.base(-mid),
                              ctx.base(next));
      key.tags = {prev, mid, next};
      out.push_back(std::move(key));
    }
  }
  return out;
}

CosetCycle conjugacy_invariant(const HnnCtx& ctx, const CyclicHnnSeq& s) {
  if (s.n() == 0) return {CosetKey{{0}, {base_label(ctx, s.g[0]).word()}}};
  return canonical_rotation(coset_cycle_hnn(ctx, s, CosetFlavor::Element));
}

CyclicHnnSeq reverse_bar(const CyclicHnnSeq& s) {
  const std::size_t n = s.n();
  if (n == 0) return CyclicHnnSeq{{s.g[0].inverse()}, {}};
  // t^-e_n g_{n-1}^-1 t^-e_{n-1} ... g_0^-1, rotated so that t^-e_n comes last.
  CyclicHnnSeq out;
  for (std::size_t j = 0; j < n; ++j) {
    out.g.push_back(s.g[n - 1 - j].inverse());
    out.eps.push_back(j + 1 < n ? -s.eps[n - 2 - j] : -s.eps[n - 1]);
  }
  return out;
}

CyclicHnnSeq insert_before(const HnnCtx& ctx, const CyclicHnnSeq& s, std::size_t i, const Word& u) {
  CyclicHnnSeq raw = s;
  raw.g.at(i) *= u;
  std::vector<HnnToken> toks = tokens_of(raw);
  return cyclic_reduce_hnn(ctx, britton_reduce(ctx, toks));
}

std::optional<SeparationWitness> separation_probe(const HnnCtx& ctx, int max_exp, int max_len) {
  for (const Word& g : words_up_to(ctx.alphabet().rank(), max_len)) {
    for (int n = -max_exp; n <= max_exp; ++n) {
      if (n == 0) continue;
      const Word conj = g * ctx.b().pow(n) * g.inverse();
      if (auto m = is_power_of(conj, ctx.a()); m && *m != 0 && std::abs(*m) <= max_exp) {
        return SeparationWitness{*m, n, g};
      }
    }
  }
  return std::nullopt;
}

std::vector<HnnToken> parse_hnn_tokens(const HnnCtx& ctx, std::string_view text) {
  std::vector<HnnToken> out;
  std::string segment;
  auto flush = [&] {
    out.push_back({parse_word(ctx.alphabet(), segment), 0});
    segment.clear();
  };
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    const std::string_view chunk = text.substr(i, end - i);
    i = end;
    int eps = 0;
    if (chunk == "^+" || chunk == ctx.stable()) {
      eps = 1;
    } else if (chunk == "^-" || chunk == ctx.stable() + "'") {
      eps = -1;
    }
    if (eps == 0) {
      segment += ' ';
      segment += chunk;
      continue;
    }
    flush();
    out.push_back({Word(), eps});
  }
  flush();
  return out;
}

HnnSeq parse_hnn_seq(const HnnCtx& ctx, std::string_view text) {
  return britton_reduce(ctx, parse_hnn_tokens(ctx, text));
}

std::string format_hnn_seq(const HnnCtx& ctx, const CyclicHnnSeq& s) {
  std::string out;
  for (std::size_t i = 0; i < s.g.size(); ++i) {
    if (!out.empty()) out += ' ';
    out += format_word(ctx.alphabet(), s.g[i]);
    if (i < s.n()) out += s.eps[i] > 0 ? " ^+" : " ^-";
  }
  return out;
}

}  // namespace goldman
