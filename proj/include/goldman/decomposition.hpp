#pragma once

#include <compare>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "goldman/amalgam.hpp"
#include "goldman/hnn.hpp"

namespace goldman {

// Class a^k c^l on the torus.
struct TorusClass {
  int k = 0;
  int l = 0;

  friend bool operator==(const TorusClass&, const TorusClass&) = default;
  friend auto operator<=>(const TorusClass&, const TorusClass&) = default;
};

using ConjClassRep = std::variant<CyclicAmalgamSeq, CyclicHnnSeq, TorusClass>;

struct SeparatingDecomp {
  AmalgamCtx ctx;
  std::optional<Alphabet> ambient;
  // Image of each ambient generator.
  std::vector<std::vector<AmalgamTerm>> generator_map;
  // Ambient word of each factor generator, indexed [factor][gen]; empty when unknown.
  std::vector<std::vector<Word>> eval_map;
};

struct NonSeparatingDecomp {
  HnnCtx ctx;
  std::optional<Alphabet> ambient;
  std::vector<std::vector<HnnToken>> generator_map;
  // Ambient word of each generator of G, then of t; empty when unknown.
  std::vector<Word> eval_map;
  std::optional<Word> eval_stable;
};

struct TorusDecomp {
  TorusClass curve{1, 0};
  std::string a = "a";
  std::string c = "c";
};

struct SurfaceDecomposition {
  std::string name;
  std::variant<SeparatingDecomp, NonSeparatingDecomp, TorusDecomp> kind;

  const char* kind_name() const;
};

// Throws MixedContext when rep does not belong to d.
void check_context(const SurfaceDecomposition& d, const ConjClassRep& rep);
bool conjugate(const SurfaceDecomposition& d, const ConjClassRep& lhs, const ConjClassRep& rhs);
ConjClassRep reverse_bar(const SurfaceDecomposition& d, const ConjClassRep& rep);
CosetCycle conjugacy_invariant(const SurfaceDecomposition& d, const ConjClassRep& rep);
std::string format_class(const SurfaceDecomposition& d, const ConjClassRep& rep);

}  // namespace goldman
