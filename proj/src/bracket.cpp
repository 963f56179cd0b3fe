#include "goldman/bracket.hpp"

#include <cstdlib>
#include <utility>

#include "goldman/error.hpp"

namespace goldman {

namespace {

long det(TorusClass p, TorusClass q) {
  return static_cast<long>(p.k) * q.l - static_cast<long>(p.l) * q.k;
}

// +1 when the insertion site sits in H, -1 in G; matches (-1)^i when w_1 is in G.
long site_sign(Factor f) { return f == Factor::G ? -1 : 1; }

BracketResult finish(const SurfaceDecomposition& d, const ConjClassRep& y, std::vector<Term> raw) {
  BracketResult r;
  r.sum = collect(d, std::move(raw));
  r.t = t_count(d, y);
  r.g = g_count(r.sum);
  return r;
}

FormalSum collect_by(std::vector<Term> raw, auto&& same) {
  FormalSum out;
  for (Term& term : raw) {
    bool merged = false;
    for (Term& seen : out.terms) {
      if (same(seen.rep, term.rep)) {
        seen.coeff += term.coeff;
        merged = true;
        break;
      }
    }
    if (!merged) out.terms.push_back(std::move(term));
  }
  std::erase_if(out.terms, [](const Term& t) { return t.coeff == 0; });
  return out;
}

bool rotation_equal_eps(const std::vector<int>& lhs, const std::vector<int>& rhs) {
  if (lhs.size() != rhs.size()) return false;
  const std::size_t n = lhs.size();
  if (n == 0) return true;
  for (std::size_t k = 0; k < n; ++k) {
    bool same = true;
    for (std::size_t i = 0; i < n && same; ++i) same = lhs[i] == rhs[(i + k) % n];
    if (same) return true;
  }
  return false;
}

}  // namespace

long t_count(const SurfaceDecomposition& d, const ConjClassRep& y) {
  check_context(d, y);
  if (const auto* s = std::get_if<CyclicAmalgamSeq>(&y)) return s->size() <= 1 ? 0 : static_cast<long>(s->size());
  if (const auto* s = std::get_if<CyclicHnnSeq>(&y)) return static_cast<long>(s->n());
  return std::labs(det(std::get<TorusDecomp>(d.kind).curve, std::get<TorusClass>(y)));
}

long i_count(const SurfaceDecomposition& d, const ConjClassRep& y) { return t_count(d, y); }

long g_count(const FormalSum& sum) {
  long total = 0;
  for (const Term& t : sum.terms) total += std::labs(t.coeff);
  return total;
}

long g_count(const BracketResult& r) { return g_count(r.sum); }

FormalSum collect(const SurfaceDecomposition& d, std::vector<Term> raw) {
  for (const Term& t : raw) check_context(d, t.rep);
  return collect_by(std::move(raw),
                    [&](const ConjClassRep& a, const ConjClassRep& b) { return conjugate(d, a, b); });
}

FormalSum collect_hat(const SurfaceDecomposition& d, std::vector<Term> raw) {
  for (const Term& t : raw) check_context(d, t.rep);
  return collect_by(std::move(raw), [&](const ConjClassRep& a, const ConjClassRep& b) {
    return conjugate(d, a, b) || conjugate(d, a, reverse_bar(d, b));
  });
}

std::vector<Term> bracket_terms(const SurfaceDecomposition& d, const ConjClassRep& y, int power) {
  check_context(d, y);
  if (power < 1) throw Error("power must be positive");
  std::vector<Term> raw;
  if (const auto* sep = std::get_if<SeparatingDecomp>(&d.kind)) {
    const auto& s = std::get<CyclicAmalgamSeq>(y);
    if (s.size() <= 1) return raw;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const Factor f = s.terms[i].factor;
      raw.push_back({site_sign(f) * power, insert_at(sep->ctx, s, i, sep->ctx.embedding(f).pow(power))});
    }
  } else if (const auto* non = std::get_if<NonSeparatingDecomp>(&d.kind)) {
    const auto& s = std::get<CyclicHnnSeq>(y);
    for (std::size_t i = 0; i < s.n(); ++i) {
      const int e = s.eps[i];
      raw.push_back({static_cast<long>(e) * power, insert_before(non->ctx, s, i, non->ctx.base(e).pow(power))});
    }
  } else {
    const TorusClass x = std::get<TorusDecomp>(d.kind).curve;
    const TorusClass xn{x.k * power, x.l * power};
    const TorusClass& q = std::get<TorusClass>(y);
    if (const long c = det(xn, q); c != 0) raw.push_back({c, TorusClass{xn.k + q.k, xn.l + q.l}});
  }
  return raw;
}

BracketResult bracket_separating(const AmalgamCtx& ctx, const CyclicAmalgamSeq& y) {
  return bracket(SurfaceDecomposition{"", SeparatingDecomp{ctx, std::nullopt, {}, {}}}, y);
}

BracketResult bracket_nonseparating(const HnnCtx& ctx, const CyclicHnnSeq& y) {
  return bracket(SurfaceDecomposition{"", NonSeparatingDecomp{ctx, std::nullopt, {}, {}, std::nullopt}}, y);
}

BracketResult torus_bracket(TorusClass p, TorusClass q) {
  return bracket(SurfaceDecomposition{"", TorusDecomp{p}}, q);
}

BracketResult bracket(const SurfaceDecomposition& d, const ConjClassRep& y) { return power_bracket(d, 1, y); }

BracketResult power_bracket(const SurfaceDecomposition& d, int n, const ConjClassRep& y) {
  return finish(d, y, bracket_terms(d, y, n));
}

UnorientedResult unoriented_bracket(const SurfaceDecomposition& d, const ConjClassRep& y, int power) {
  std::vector<Term> raw = bracket_terms(d, y, power);
  std::vector<Term> rev = bracket_terms(d, reverse_bar(d, y), power);
  raw.insert(raw.end(), std::make_move_iterator(rev.begin()), std::make_move_iterator(rev.end()));
  UnorientedResult r;
  r.sum = collect_hat(d, std::move(raw));
  r.u = g_count(r.sum);
  return r;
}

ConjClassRep dehn_twist(const SurfaceDecomposition& d, const ConjClassRep& y, int direction) {
  check_context(d, y);
  if (direction != 1 && direction != -1) throw Error("twist direction must be +1 or -1");
  if (const auto* sep = std::get_if<SeparatingDecomp>(&d.kind)) {
    const auto& s = std::get<CyclicAmalgamSeq>(y);
    if (s.size() < 2) throw TooShort("Dehn twist needs a sequence with n >= 2");
    AmalgamSeq raw{s.terms};
    for (AmalgamTerm& t : raw.terms) {
      t.word *= sep->ctx.embedding(t.factor).pow(t.factor == Factor::G ? direction : -direction);
    }
    return cyclic_reduce_seq(sep->ctx, raw);
  }
  if (const auto* non = std::get_if<NonSeparatingDecomp>(&d.kind)) {
    const auto& s = std::get<CyclicHnnSeq>(y);
    if (s.n() < 1) throw TooShort("Dehn twist needs a sequence with n >= 1");
    CyclicHnnSeq raw = s;
    for (std::size_t i = 0; i < s.n(); ++i) {
      // Direction +1 inserts a before t and b^-1 before t^-1.
      raw.g[i] *= non->ctx.base(s.eps[i]).pow(s.eps[i] * direction);
    }
    return cyclic_reduce_hnn(non->ctx, britton_reduce(non->ctx, tokens_of(raw)));
  }
  const TorusClass x = std::get<TorusDecomp>(d.kind).curve;
  const TorusClass& q = std::get<TorusClass>(y);
  const long c = det(x, q) * direction;
  return TorusClass{static_cast<int>(q.k + c * x.k), static_cast<int>(q.l + c * x.l)};
}

CosetCycle element_cycle(const SurfaceDecomposition& d, const ConjClassRep& y) {
  check_context(d, y);
  if (const auto* sep = std::get_if<SeparatingDecomp>(&d.kind)) {
    const auto& s = std::get<CyclicAmalgamSeq>(y);
    return s.size() < 2 ? CosetCycle{} : coset_cycle(sep->ctx, s, CosetFlavor::Element);
  }
  if (const auto* non = std::get_if<NonSeparatingDecomp>(&d.kind)) {
    const auto& s = std::get<CyclicHnnSeq>(y);
    return s.n() < 1 ? CosetCycle{} : coset_cycle_hnn(non->ctx, s, CosetFlavor::Element);
  }
  return {};
}

AdResult ad_apply(const SurfaceDecomposition& d, const ConjClassRep& y) {
  AdResult r;
  r.sum = collect(d, bracket_terms(d, y, 1));
  for (Term& t : r.sum.terms) t.coeff = -t.coeff;
  const long t_y = t_count(d, y);
  const CosetCycle cycle_y = element_cycle(d, y);
  for (const Term& t : r.sum.terms) {
    r.term_cycles.push_back(element_cycle(d, t.rep));
    r.cycles_match = r.cycles_match && rotation_equal(r.term_cycles.back(), cycle_y);
    r.t_match = r.t_match && t_count(d, t.rep) == t_y;
    if (const auto* s = std::get_if<CyclicHnnSeq>(&t.rep)) {
      r.pattern_match = r.pattern_match && rotation_equal_eps(s->eps, std::get<CyclicHnnSeq>(y).eps);
    }
  }
  return r;
}

}  // namespace goldman
