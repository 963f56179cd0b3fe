#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "goldman/coset.hpp"
#include "goldman/free_group.hpp"

namespace goldman {

enum class Factor : std::uint8_t { G = 0, H = 1 };

inline Factor other(Factor f) { return f == Factor::G ? Factor::H : Factor::G; }
inline const char* factor_name(Factor f) { return f == Factor::G ? "G" : "H"; }

struct AmalgamTerm {
  Factor factor = Factor::G;
  Word word;

  friend bool operator==(const AmalgamTerm&, const AmalgamTerm&) = default;
  friend auto operator<=>(const AmalgamTerm&, const AmalgamTerm&) = default;
};

struct AmalgamSeq {
  std::vector<AmalgamTerm> terms;

  std::size_t size() const { return terms.size(); }
  friend bool operator==(const AmalgamSeq&, const AmalgamSeq&) = default;
};

struct CyclicAmalgamSeq {
  std::vector<AmalgamTerm> terms;

  std::size_t size() const { return terms.size(); }
  friend bool operator==(const CyclicAmalgamSeq&, const CyclicAmalgamSeq&) = default;
};

// G *_C H with C infinite cyclic, embedded as <xG> and <xH>.
class AmalgamCtx {
 public:
  AmalgamCtx(Alphabet g, Alphabet h, Word xg, Word xh);
  // Skips the proper-power check; for contexts whose subgroup is not malnormal.
  static AmalgamCtx unchecked(Alphabet g, Alphabet h, Word xg, Word xh);

  const Alphabet& alphabet(Factor f) const { return f == Factor::G ? g_ : h_; }
  const Word& embedding(Factor f) const { return f == Factor::G ? xg_ : xh_; }
  // p with w = embedding(f)^p.
  std::optional<int> c_exponent(Factor f, const Word& w) const;

  friend bool operator==(const AmalgamCtx&, const AmalgamCtx&) = default;

 private:
  AmalgamCtx(Alphabet g, Alphabet h, Word xg, Word xh, bool check_powers);

  Alphabet g_;
  Alphabet h_;
  Word xg_;
  Word xh_;
};

bool is_reduced(const AmalgamCtx& ctx, std::span<const AmalgamTerm> terms);
bool is_cyclically_reduced(const AmalgamCtx& ctx, std::span<const AmalgamTerm> terms);

AmalgamSeq seq_reduce(const AmalgamCtx& ctx, std::span<const AmalgamTerm> raw);
CyclicAmalgamSeq cyclic_reduce_seq(const AmalgamCtx& ctx, const AmalgamSeq& s);
// Checks the invariants and wraps without rewriting.
CyclicAmalgamSeq as_cyclic(const AmalgamCtx& ctx, std::vector<AmalgamTerm> terms);

bool conjugacy_test_amalgam(const AmalgamCtx& ctx, const CyclicAmalgamSeq& s,
                            const CyclicAmalgamSeq& t);

enum class CosetFlavor { Element, Product };
CosetCycle coset_cycle(const AmalgamCtx& ctx, const CyclicAmalgamSeq& s, CosetFlavor flavor);
// Equal for conjugate sequences; used to bucket before pairwise tests.
CosetCycle conjugacy_invariant(const AmalgamCtx& ctx, const CyclicAmalgamSeq& s);

// Sequence of the inverse element, (w_n^-1, ..., w_1^-1).
CyclicAmalgamSeq reverse_bar(const CyclicAmalgamSeq& s);
// Replaces w_i by w_i * a (0-based i). a must lie in w_i's factor.
CyclicAmalgamSeq insert_at(const AmalgamCtx& ctx, const CyclicAmalgamSeq& s, std::size_t i,
                           const Word& a);

AmalgamSeq parse_amalgam_seq(const AmalgamCtx& ctx, std::string_view text);
std::string format_amalgam_seq(const AmalgamCtx& ctx, std::span<const AmalgamTerm> terms);

}  // namespace goldman
