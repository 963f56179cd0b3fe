#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "goldman/amalgam.hpp"
#include "goldman/coset.hpp"
#include "goldman/free_group.hpp"

namespace goldman {

// A word over G when eps == 0, otherwise the stable letter t^eps.
struct HnnToken {
  Word word;
  int eps = 0;
};

// g_0 t^e_1 g_1 ... t^e_n g_n; g.size() == eps.size() + 1.
struct HnnSeq {
  std::vector<Word> g;
  std::vector<int> eps;

  std::size_t n() const { return eps.size(); }
  friend bool operator==(const HnnSeq&, const HnnSeq&) = default;
};

// g_0 t^e_1 g_1 t^e_2 ... g_{n-1} t^e_n; eps[i] follows g[i]. For n == 0, g holds one word.
struct CyclicHnnSeq {
  std::vector<Word> g;
  std::vector<int> eps;

  std::size_t n() const { return eps.size(); }
  friend bool operator==(const CyclicHnnSeq&, const CyclicHnnSeq&) = default;
};

class HnnCtx {
 public:
  HnnCtx(Alphabet g, Word a, Word b, std::string stable = "t");

  const Alphabet& alphabet() const { return g_; }
  const Word& a() const { return a_; }
  const Word& b() const { return b_; }
  const std::string& stable() const { return t_; }
  // Generator of C_eps: a for +1, b for -1.
  const Word& base(int eps) const { return eps > 0 ? a_ : b_; }
  std::optional<int> subgroup_exponent(int eps, const Word& w) const { return is_power_of(w, base(eps)); }

  friend bool operator==(const HnnCtx&, const HnnCtx&) = default;

 private:
  Alphabet g_;
  Word a_;
  Word b_;
  std::string t_;
};

Word phi_apply(const HnnCtx& ctx, const Word& w, int direction);

HnnSeq britton_reduce(const HnnCtx& ctx, std::span<const HnnToken> raw);
bool is_reduced(const HnnCtx& ctx, const HnnSeq& s);
bool is_cyclically_reduced(const HnnCtx& ctx, const CyclicHnnSeq& s);
CyclicHnnSeq cyclic_reduce_hnn(const HnnCtx& ctx, const HnnSeq& s);
CyclicHnnSeq as_cyclic(const HnnCtx& ctx, std::vector<Word> g, std::vector<int> eps);

std::vector<HnnToken> tokens_of(const HnnSeq& s);
std::vector<HnnToken> tokens_of(const CyclicHnnSeq& s);

bool collins_conjugacy(const HnnCtx& ctx, const CyclicHnnSeq& s, const CyclicHnnSeq& r);

// Product flavor needs n >= 2, element flavor n >= 1.
CosetCycle coset_cycle_hnn(const HnnCtx& ctx, const CyclicHnnSeq& s,
                           CosetFlavor flavor = CosetFlavor::Product);

// Equal for conjugate sequences; used to bucket before pairwise tests.
CosetCycle conjugacy_invariant(const HnnCtx& ctx, const CyclicHnnSeq& s);

CyclicHnnSeq reverse_bar(const CyclicHnnSeq& s);
// Replaces g[i] by g[i] * u, i.e. u is placed just before t^eps[i].
CyclicHnnSeq insert_before(const HnnCtx& ctx, const CyclicHnnSeq& s, std::size_t i, const Word& u);

struct SeparationWitness {
  int m = 0;
  int n = 0;
  Word g;
};
// Searches a^m = g b^n g^-1 with 0 < |m|,|n| <= max_exp and |g| <= max_len.
std::optional<SeparationWitness> separation_probe(const HnnCtx& ctx, int max_exp = 4, int max_len = 3);

std::vector<HnnToken> parse_hnn_tokens(const HnnCtx& ctx, std::string_view text);
HnnSeq parse_hnn_seq(const HnnCtx& ctx, std::string_view text);
std::string format_hnn_seq(const HnnCtx& ctx, const CyclicHnnSeq& s);

}  // namespace goldman
