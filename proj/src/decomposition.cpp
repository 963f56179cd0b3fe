#include "goldman/decomposition.hpp"

#include "goldman/error.hpp"

namespace goldman {

const char* SurfaceDecomposition::kind_name() const {
  switch (kind.index()) {
    case 0:
      return "separating";
    case 1:
      return "nonseparating";
    default:
      return "torus";
  }
}

void check_context(const SurfaceDecomposition& d, const ConjClassRep& rep) {
  if (d.kind.index() != rep.index()) {
    throw MixedContext("class does not belong to the " + std::string(d.kind_name()) + " decomposition '" +
                       d.name + "'");
  }
}

bool conjugate(const SurfaceDecomposition& d, const ConjClassRep& lhs, const ConjClassRep& rhs) {
  check_context(d, lhs);
  check_context(d, rhs);
  if (const auto* sep = std::get_if<SeparatingDecomp>(&d.kind)) {
    return conjugacy_test_amalgam(sep->ctx, std::get<CyclicAmalgamSeq>(lhs), std::get<CyclicAmalgamSeq>(rhs));
  }
  if (const auto* non = std::get_if<NonSeparatingDecomp>(&d.kind)) {
    return collins_conjugacy(non->ctx, std::get<CyclicHnnSeq>(lhs), std::get<CyclicHnnSeq>(rhs));
  }
  return std::get<TorusClass>(lhs) == std::get<TorusClass>(rhs);
}

ConjClassRep reverse_bar(const SurfaceDecomposition& d, const ConjClassRep& rep) {
  check_context(d, rep);
  if (const auto* s = std::get_if<CyclicAmalgamSeq>(&rep)) return reverse_bar(*s);
  if (const auto* s = std::get_if<CyclicHnnSeq>(&rep)) return reverse_bar(*s);
  const auto& t = std::get<TorusClass>(rep);
  return TorusClass{-t.k, -t.l};
}

CosetCycle conjugacy_invariant(const SurfaceDecomposition& d, const ConjClassRep& rep) {
  check_context(d, rep);
  if (const auto* sep = std::get_if<SeparatingDecomp>(&d.kind)) {
    return conjugacy_invariant(sep->ctx, std::get<CyclicAmalgamSeq>(rep));
  }
  if (const auto* non = std::get_if<NonSeparatingDecomp>(&d.kind)) {
    return conjugacy_invariant(non->ctx, std::get<CyclicHnnSeq>(rep));
  }
  const auto& t = std::get<TorusClass>(rep);
  return {CosetKey{{t.k, t.l}, {}}};
}

std::string format_class(const SurfaceDecomposition& d, const ConjClassRep& rep) {
  check_context(d, rep);
  if (const auto* sep = std::get_if<SeparatingDecomp>(&d.kind)) {
    return format_amalgam_seq(sep->ctx, std::get<CyclicAmalgamSeq>(rep).terms);
  }
  if (const auto* non = std::get_if<NonSeparatingDecomp>(&d.kind)) {
    return format_hnn_seq(non->ctx, std::get<CyclicHnnSeq>(rep));
  }
  const auto& t = std::get<TorusClass>(rep);
  return std::to_string(t.k) + "," + std::to_string(t.l);
}

}  // namespace goldman
