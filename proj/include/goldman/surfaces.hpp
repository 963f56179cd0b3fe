#pragma once

#include <climits>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "goldman/decomposition.hpp"

namespace goldman {

std::vector<std::string> builtin_names();
// Throws UnknownName.
SurfaceDecomposition builtin(std::string_view name);

// Registry entry or bare amalgam/HNN context, as JSON text.
SurfaceDecomposition decomposition_from_json(std::string_view text, std::string_view fallback_name = "custom");
SurfaceDecomposition load_decomposition_file(const std::string& path);

// Accepts ambient words, factor-tagged amalgam text, HNN text or "k,l" on the torus.
ConjClassRep word_to_class(const SurfaceDecomposition& d, std::string_view text);
ConjClassRep ambient_word_to_class(const SurfaceDecomposition& d, const Word& w);

// Ambient value of a sequence through the eval map; nullopt when the decomposition has none.
std::optional<Word> ambient_image(const SurfaceDecomposition& d, const ConjClassRep& rep);
std::optional<Word> ambient_image(const SeparatingDecomp& d, std::span<const AmalgamTerm> terms);
std::optional<Word> ambient_image(const NonSeparatingDecomp& d, std::span<const HnnToken> tokens);

// The class of the curve itself.
ConjClassRep curve_class(const SurfaceDecomposition& d, int power = 1);
// p with rep conjugate to the p-th power of the curve, searched over 1 <= |p| <= max_power.
std::optional<int> curve_power(const SurfaceDecomposition& d, const ConjClassRep& rep, int max_power = 16);

struct Bounds {
  int min_n = 0;
  int max_n = 2;
  int max_len = 2;
  bool dedup = true;
};

struct Caps {
  int max_n = 6;
  int max_len = 4;
  std::int64_t max_work = 1'000'000;

  // GOLDMAN_MAX_WORK=N sets max_work and lifts the n and length caps.
  static Caps from_env();
};

// Pull-based enumeration of cyclically reduced representatives. Sequence kinds use
// min_n/max_n as term counts; the torus ignores them and yields |k|,|l| <= max_len.
class ClassEnumeration {
 public:
  ClassEnumeration(SurfaceDecomposition d, Bounds bounds, Caps caps = Caps::from_env());
  ClassEnumeration(const ClassEnumeration&) = delete;
  ClassEnumeration& operator=(const ClassEnumeration&) = delete;

  std::optional<ConjClassRep> next();
  std::vector<ConjClassRep> collect_all();
  // Candidates before deduplication and the cyclic-reduction filter.
  std::int64_t planned() const { return planned_; }
  const SurfaceDecomposition& decomposition() const { return d_; }

 private:
  struct Stage {
    int n = 0;
    std::vector<const std::vector<Word>*> pools;  // one per digit; empty for the torus
    std::vector<std::size_t> radix;
    bool masks = false;  // HNN: every epsilon pattern
    Factor first = Factor::G;
  };

  void add_stage(Stage stage);
  std::optional<ConjClassRep> next_raw();
  bool advance();
  std::optional<ConjClassRep> build() const;

  SurfaceDecomposition d_;
  Bounds bounds_;
  std::int64_t planned_ = 0;
  std::vector<Stage> stages_;
  std::size_t stage_ = 0;
  bool started_ = false;
  std::vector<std::size_t> digits_;
  std::uint32_t mask_ = 0;
  std::vector<Word> pool_g_, pool_h_, pool_g1_, pool_h1_, pool_all_, pool_cyc_;
  std::map<CosetCycle, std::vector<ConjClassRep>> buckets_;
};

std::vector<ConjClassRep> enumerate_classes(const SurfaceDecomposition& d, Bounds bounds,
                                            Caps caps = Caps::from_env());

// i(x_j, y) for each decomposition; MixedContext when y does not parse in one of them.
std::vector<long> thurston_vector(std::span<const SurfaceDecomposition> decomps, std::string_view y);

}  // namespace goldman
