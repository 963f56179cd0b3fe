#pragma once

#include <vector>

#include "goldman/coset.hpp"
#include "goldman/decomposition.hpp"

namespace goldman {

struct Term {
  long coeff = 0;
  ConjClassRep rep;
};

struct FormalSum {
  std::vector<Term> terms;

  bool empty() const { return terms.empty(); }
};

struct BracketResult {
  FormalSum sum;
  int s_convention = 1;
  long t = 0;
  long g = 0;
};

struct UnorientedResult {
  FormalSum sum;  // one representative per hat class
  long u = 0;
};

long t_count(const SurfaceDecomposition& d, const ConjClassRep& y);
long i_count(const SurfaceDecomposition& d, const ConjClassRep& y);
long g_count(const FormalSum& sum);
long g_count(const BracketResult& r);

// Merges conjugate reps, drops zero coefficients; keeps first-seen order.
FormalSum collect(const SurfaceDecomposition& d, std::vector<Term> raw);
// As collect, but z and its reverse are identified.
FormalSum collect_hat(const SurfaceDecomposition& d, std::vector<Term> raw);

// Uncollected insertion terms of [x^power, y].
std::vector<Term> bracket_terms(const SurfaceDecomposition& d, const ConjClassRep& y, int power = 1);

BracketResult bracket_separating(const AmalgamCtx& ctx, const CyclicAmalgamSeq& y);
BracketResult bracket_nonseparating(const HnnCtx& ctx, const CyclicHnnSeq& y);
BracketResult torus_bracket(TorusClass p, TorusClass q);
// [x, y] with x the curve of the decomposition.
BracketResult bracket(const SurfaceDecomposition& d, const ConjClassRep& y);
BracketResult power_bracket(const SurfaceDecomposition& d, int n, const ConjClassRep& y);

UnorientedResult unoriented_bracket(const SurfaceDecomposition& d, const ConjClassRep& y, int power = 1);

ConjClassRep dehn_twist(const SurfaceDecomposition& d, const ConjClassRep& y, int direction);

struct AdResult {
  FormalSum sum;  // [y, x]
  std::vector<CosetCycle> term_cycles;
  bool cycles_match = true;
  bool t_match = true;
  bool pattern_match = true;

  bool ok() const { return cycles_match && t_match && pattern_match; }
};
AdResult ad_apply(const SurfaceDecomposition& d, const ConjClassRep& y);

// Element cycle for sequences, empty when the class is too short.
CosetCycle element_cycle(const SurfaceDecomposition& d, const ConjClassRep& y);

}  // namespace goldman
