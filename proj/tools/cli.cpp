#include "cli.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "goldman/bracket.hpp"
#include "goldman/error.hpp"
#include "goldman/surfaces.hpp"
#include "json.hpp"
#include "oracles.hpp"

namespace goldman::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::vector<std::string> builtins;
  std::vector<std::string> ctx_files;
  std::optional<std::string> x;
  std::optional<std::string> y;
  std::string format = "json";
  int power = 1;
  int direction = 1;
  int min_n = 0;
  int max_n = 2;
  int max_len = 2;
  bool oracle = false;
  std::uint64_t seed = 1;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class Output {
 public:
  Output(std::ostream& out, std::string format) : out_(out), format_(std::move(format)) {}

  const std::string& format() const { return format_; }
  void json(const Json& j) { out_ << j.dump(2) << '\n'; }
  void line(const std::string& s) { out_ << s << '\n'; }

  static std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  }

 private:
  std::ostream& out_;
  std::string format_;
};

std::vector<SurfaceDecomposition> decompositions(const Options& o) {
  std::vector<SurfaceDecomposition> out;
  for (const std::string& name : o.builtins) out.push_back(builtin(name));
  for (const std::string& path : o.ctx_files) out.push_back(load_decomposition_file(path));
  return out;
}

SurfaceDecomposition single(const Options& o) {
  auto all = decompositions(o);
  if (all.size() != 1) throw UsageError("give exactly one of --builtin or --ctx");
  return std::move(all.front());
}

const std::string& required(const std::optional<std::string>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing ") + flag);
  return *v;
}

// The decomposition whose curve is x, and the power of that curve x equals.
struct Curve {
  SurfaceDecomposition d;
  int power = 1;
};

Curve resolve_curve(SurfaceDecomposition d, const Options& o) {
  if (o.power < 1) throw UsageError("--power must be a positive integer");
  if (!o.x) return {std::move(d), o.power};
  const ConjClassRep rep = word_to_class(d, *o.x);
  if (auto* tor = std::get_if<TorusDecomp>(&d.kind)) {
    const TorusClass x = std::get<TorusClass>(rep);
    const int g = std::gcd(x.k, x.l);
    if (g == 0) return {std::move(d), 0};
    tor->curve = {x.k / g, x.l / g};
    return {std::move(d), g * o.power};
  }
  auto p = curve_power(d, rep);
  if (!p) {
    throw UsageError("x = '" + *o.x + "' is not a power of the simple curve defining decomposition '" + d.name +
                     "'. The bracket needs one class to be simple with a supplied decomposition; the bracket of "
                     "two non-simple classes is outside the scope of this tool.");
  }
  return {std::move(d), *p * o.power};
}

// [x^p, y]; negative p uses [xbar^n, y] = reverse of [x^n, ybar] term by term.
BracketResult oriented_bracket(const Curve& c, const ConjClassRep& y) {
  if (c.power == 0) {
    BracketResult r;
    r.t = t_count(c.d, y);
    return r;
  }
  if (c.power > 0) return power_bracket(c.d, c.power, y);
  BracketResult r = power_bracket(c.d, -c.power, reverse_bar(c.d, y));
  for (Term& t : r.sum.terms) t.rep = reverse_bar(c.d, t.rep);
  return r;
}

UnorientedResult oriented_unoriented(const Curve& c, const ConjClassRep& y) {
  if (c.power == 0) return {};
  return unoriented_bracket(c.d, y, std::abs(c.power));
}

Json terms_json(const SurfaceDecomposition& d, const FormalSum& sum) {
  Json terms = Json::array();
  for (const Term& t : sum.terms) terms.push_back({{"coeff", t.coeff}, {"class", format_class(d, t.rep)}});
  return terms;
}

void print_terms(Output& out, const SurfaceDecomposition& d, const FormalSum& sum) {
  if (out.format() == "csv") {
    out.line("coeff,class");
    for (const Term& t : sum.terms) out.line(std::to_string(t.coeff) + "," + Output::csv_field(format_class(d, t.rep)));
    return;
  }
  if (sum.empty()) out.line("0");
  for (const Term& t : sum.terms) out.line((t.coeff > 0 ? "+" : "") + std::to_string(t.coeff) + "  " + format_class(d, t.rep));
}

int cmd_bracket(const Options& o, Output& out) {
  auto all = decompositions(o);
  if (all.empty() && o.x && o.y) {
    throw UsageError("no decomposition supplied for x or y. The bracket of two classes neither of which comes with "
                     "a simple-curve decomposition is outside the scope of this tool; pass --builtin or --ctx for x.");
  }
  const Curve c = resolve_curve(single(o), o);
  const ConjClassRep y = word_to_class(c.d, required(o.y, "--y"));
  const BracketResult r = oriented_bracket(c, y);
  if (out.format() == "json") {
    Json j;
    j["s_convention"] = r.s_convention;
    j["terms"] = terms_json(c.d, r.sum);
    j["t"] = r.t;
    j["g"] = r.g;
    if (c.power != 1) j["power"] = c.power;
    out.json(j);
  } else {
    print_terms(out, c.d, r.sum);
    if (out.format() == "text") {
      out.line("t=" + std::to_string(r.t) + " g=" + std::to_string(r.g) + " (sign convention s=+1)");
    }
  }
  return kOk;
}

int cmd_unoriented(const Options& o, Output& out) {
  const Curve c = resolve_curve(single(o), o);
  const ConjClassRep y = word_to_class(c.d, required(o.y, "--y"));
  const UnorientedResult r = oriented_unoriented(c, y);
  if (out.format() == "json") {
    Json j;
    j["terms"] = terms_json(c.d, r.sum);
    j["u"] = r.u;
    out.json(j);
  } else {
    print_terms(out, c.d, r.sum);
    if (out.format() == "text") out.line("u=" + std::to_string(r.u));
  }
  return kOk;
}

int cmd_counts(const Options& o, Output& out) {
  const Curve c = resolve_curve(single(o), o);
  const ConjClassRep y = word_to_class(c.d, required(o.y, "--y"));
  const long t = t_count(c.d, y);
  const long g = oriented_bracket(c, y).g;
  const long i = std::abs(c.power) * i_count(c.d, y);
  const long u = oriented_unoriented(c, y).u;
  if (out.format() == "json") {
    Json j{{"t", t}, {"g", g}, {"i", i}, {"u", u}};
    if (c.power != 1) j["power"] = c.power;
    out.json(j);
  } else if (out.format() == "csv") {
    out.line("t,g,i,u");
    out.line(std::to_string(t) + "," + std::to_string(g) + "," + std::to_string(i) + "," + std::to_string(u));
  } else {
    out.line("t=" + std::to_string(t) + " g=" + std::to_string(g) + " i=" + std::to_string(i) +
             " u=" + std::to_string(u));
  }
  return kOk;
}

Bounds bounds_of(const Options& o) { return Bounds{o.min_n, o.max_n, o.max_len, true}; }

int cmd_enumerate(const Options& o, Output& out) {
  const SurfaceDecomposition d = single(o);
  ClassEnumeration e(d, bounds_of(o));
  std::vector<ConjClassRep> classes = e.collect_all();
  if (out.format() == "json") {
    Json list = Json::array();
    for (const auto& y : classes) list.push_back({{"class", format_class(d, y)}, {"t", t_count(d, y)}});
    out.json(Json{{"decomposition", d.name}, {"count", classes.size()}, {"classes", list}});
  } else if (out.format() == "csv") {
    out.line("class,t");
    for (const auto& y : classes) out.line(Output::csv_field(format_class(d, y)) + "," + std::to_string(t_count(d, y)));
  } else {
    for (const auto& y : classes) out.line(format_class(d, y));
    out.line(std::to_string(classes.size()) + " classes");
  }
  return kOk;
}

int cmd_thurston(const Options& o, Output& out) {
  const auto all = decompositions(o);
  if (all.empty()) throw UsageError("thurston needs at least one --builtin or --ctx");
  const std::string& y = required(o.y, "--y");
  const std::vector<long> v = thurston_vector(all, y);
  if (out.format() == "json") {
    Json entries = Json::array();
    for (std::size_t k = 0; k < all.size(); ++k) entries.push_back({{"decomposition", all[k].name}, {"i", v[k]}});
    out.json(Json{{"y", y}, {"vector", entries}});
  } else if (out.format() == "csv") {
    out.line("decomposition,i");
    for (std::size_t k = 0; k < all.size(); ++k) out.line(Output::csv_field(all[k].name) + "," + std::to_string(v[k]));
  } else {
    std::string line;
    for (long value : v) line += (line.empty() ? "" : " ") + std::to_string(value);
    out.line(line);
  }
  return kOk;
}

int cmd_dehn_twist(const Options& o, Output& out) {
  const SurfaceDecomposition d = single(o);
  if (o.direction != 1 && o.direction != -1) throw UsageError("--direction must be 1 or -1");
  const ConjClassRep y = word_to_class(d, required(o.y, "--y"));
  const ConjClassRep z = dehn_twist(d, y, o.direction);
  if (out.format() == "json") {
    out.json(Json{{"class", format_class(d, z)}, {"direction", o.direction}, {"t", t_count(d, z)}});
  } else if (out.format() == "csv") {
    out.line("class,direction,t");
    out.line(Output::csv_field(format_class(d, z)) + "," + std::to_string(o.direction) + "," +
             std::to_string(t_count(d, z)));
  } else {
    out.line(format_class(d, z));
  }
  return kOk;
}

struct Violation {
  std::string check;
  std::string cls;
  std::string detail;
};

std::optional<Violation> check_class(const SurfaceDecomposition& d, const ConjClassRep& y) {
  const std::string text = format_class(d, y);
  auto fail = [&](std::string check, std::string detail) {
    return std::optional<Violation>(Violation{std::move(check), text, std::move(detail)});
  };
  const long t = t_count(d, y);
  const BracketResult b = bracket(d, y);
  if (b.g != t) return fail("g = t", "g=" + std::to_string(b.g) + " t=" + std::to_string(t));
  const long u = unoriented_bracket(d, y).u;
  if (u != 2 * t) return fail("u = 2t", "u=" + std::to_string(u) + " t=" + std::to_string(t));
  for (int n : {2, 3}) {
    const long gn = power_bracket(d, n, y).g;
    if (gn != n * b.g) return fail("g(x^n) = n g", "n=" + std::to_string(n) + " g(x^n)=" + std::to_string(gn));
    const long un = unoriented_bracket(d, y, n).u;
    if (un != n * u) return fail("u(x^n) = n u", "n=" + std::to_string(n) + " u(x^n)=" + std::to_string(un));
  }
  if (!ad_apply(d, y).ok()) return fail("ad invariance", "a term of [y,x] leaves the invariant subspace");
  bool twistable = true;
  if (const auto* s = std::get_if<CyclicAmalgamSeq>(&y)) twistable = s->size() >= 2;
  if (const auto* s = std::get_if<CyclicHnnSeq>(&y)) twistable = s->n() >= 1;
  if (twistable) {
    for (int dir : {1, -1}) {
      const ConjClassRep z = dehn_twist(d, y, dir);
      if (t_count(d, z) != t) return fail("twist keeps t", "direction " + std::to_string(dir));
      if (!conjugate(d, dehn_twist(d, z, -dir), y)) return fail("twist inverse", "direction " + std::to_string(dir));
    }
  }
  if (const auto* q = std::get_if<TorusClass>(&y)) {
    const TorusClass x = std::get<TorusDecomp>(d.kind).curve;
    const long det = static_cast<long>(x.k) * q->l - static_cast<long>(x.l) * q->k;
    const bool ok = det == 0 ? b.sum.empty()
                             : b.sum.terms.size() == 1 && b.sum.terms[0].coeff == det &&
                                   std::get<TorusClass>(b.sum.terms[0].rep) == TorusClass{x.k + q->k, x.l + q->l};
    if (!ok) return fail("torus formula", "bracket differs from det(x,y) (x+y)");
  }
  return std::nullopt;
}

// Agreement of the conjugacy test with the brute-force oracle on the raw enumeration.
std::optional<Violation> oracle_sweep(const SurfaceDecomposition& d, const Options& o, long& checked) {
  ClassEnumeration e(d, Bounds{o.min_n, o.max_n, o.max_len, false});
  const std::vector<ConjClassRep> all = e.collect_all();
  std::vector<std::size_t> comp;
  if (const auto* sep = std::get_if<SeparatingDecomp>(&d.kind)) {
    std::vector<CyclicAmalgamSeq> seqs;
    for (const auto& r : all) seqs.push_back(std::get<CyclicAmalgamSeq>(r));
    comp = oracle::amalgam_components(sep->ctx, seqs, o.max_len);
  } else if (const auto* non = std::get_if<NonSeparatingDecomp>(&d.kind)) {
    if (non->eval_map.empty() || !non->eval_stable) throw UsageError("oracle mode needs an eval map in the decomposition");
    std::vector<CyclicHnnSeq> seqs;
    for (const auto& r : all) seqs.push_back(std::get<CyclicHnnSeq>(r));
    comp = oracle::hnn_components(*non, seqs, o.max_len);
  } else {
    for (std::size_t i = 0; i < all.size(); ++i) comp.push_back(i);
  }
  std::map<std::size_t, std::size_t> first;
  std::map<CosetCycle, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < all.size(); ++i) {
    auto [it, fresh] = first.emplace(comp[i], i);
    ++checked;
    if (!fresh) {
      if (!conjugate(d, all[it->second], all[i])) {
        return Violation{"oracle: conjugate", format_class(d, all[i]), "oracle finds a conjugator to " +
                                                                           format_class(d, all[it->second])};
      }
      continue;
    }
    buckets[conjugacy_invariant(d, all[i])].push_back(i);
  }
  for (const auto& [key, reps] : buckets) {
    for (std::size_t a = 0; a < reps.size(); ++a) {
      for (std::size_t b = a + 1; b < reps.size(); ++b) {
        if (conjugate(d, all[reps[a]], all[reps[b]])) {
          return Violation{"oracle: non-conjugate", format_class(d, all[reps[a]]),
                           "test claims conjugacy with " + format_class(d, all[reps[b]])};
        }
      }
    }
  }
  // Cross-bucket pairs are sampled.
  std::vector<std::size_t> reps;
  for (const auto& [c, i] : first) reps.push_back(i);
  std::mt19937_64 rng(o.seed);
  for (int k = 0; k < 2000 && reps.size() > 1; ++k) {
    const std::size_t a = reps[rng() % reps.size()], b = reps[rng() % reps.size()];
    if (a != b && conjugate(d, all[a], all[b])) {
      return Violation{"oracle: non-conjugate", format_class(d, all[a]), "test claims conjugacy with " +
                                                                             format_class(d, all[b])};
    }
  }
  return std::nullopt;
}

int cmd_verify(const Options& o, Output& out) {
  const SurfaceDecomposition d = single(o);
  ClassEnumeration e(d, bounds_of(o));
  long checked = 0;
  std::optional<Violation> violation;
  while (auto y = e.next()) {
    ++checked;
    if ((violation = check_class(d, *y))) break;
  }
  long oracle_checked = 0;
  if (!violation && o.oracle) violation = oracle_sweep(d, o, oracle_checked);
  const int violations = violation ? 1 : 0;
  if (out.format() == "json") {
    Json j{{"decomposition", d.name}, {"checked", checked}};
    if (o.oracle) j["oracle_checked"] = oracle_checked;
    j["violations"] = violations;
    if (violation) j["counterexample"] = {{"check", violation->check}, {"class", violation->cls}, {"detail", violation->detail}};
    out.json(j);
  } else if (out.format() == "csv") {
    out.line("decomposition,checked,violations");
    out.line(Output::csv_field(d.name) + "," + std::to_string(checked) + "," + std::to_string(violations));
  } else {
    out.line("checked " + std::to_string(checked) + " classes, " + std::to_string(violations) + " violations");
    if (o.oracle) out.line("oracle compared " + std::to_string(oracle_checked) + " sequences");
    if (violation) out.line("counterexample: " + violation->check + " on " + violation->cls + ": " + violation->detail);
  }
  return violation ? kViolation : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Goldman bracket of a simple closed curve with an arbitrary class", "goldman"};
  app.require_subcommand(1);
  Options o;

  auto add_source = [&](CLI::App* sub, bool many) {
    auto* b = sub->add_option("--builtin", o.builtins, "Built-in decomposition");
    auto* c = sub->add_option("--ctx", o.ctx_files, "Decomposition or context JSON file");
    if (!many) {
      b->expected(0, 1);
      c->expected(0, 1);
    }
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  };
  auto add_bounds = [&](CLI::App* sub) {
    sub->add_option("--min-n", o.min_n, "Smallest term count");
    sub->add_option("--max-n", o.max_n, "Largest term count");
    sub->add_option("--max-len", o.max_len, "Largest factor-word length");
  };
  auto add_xy = [&](CLI::App* sub) {
    sub->add_option("--x", o.x, "Simple class x (defaults to the decomposition curve)");
    sub->add_option("--y", o.y, "Class y");
    sub->add_option("--power", o.power, "Use x^n");
  };

  std::map<CLI::App*, int (*)(const Options&, Output&)> handlers;
  auto* bracket_cmd = app.add_subcommand("bracket", "Oriented bracket [x, y]");
  add_source(bracket_cmd, false);
  add_xy(bracket_cmd);
  handlers[bracket_cmd] = cmd_bracket;
  auto* unoriented_cmd = app.add_subcommand("unoriented", "Unoriented bracket");
  add_source(unoriented_cmd, false);
  add_xy(unoriented_cmd);
  handlers[unoriented_cmd] = cmd_unoriented;
  auto* counts_cmd = app.add_subcommand("counts", "t, g, i and u");
  add_source(counts_cmd, false);
  add_xy(counts_cmd);
  handlers[counts_cmd] = cmd_counts;
  auto* verify_cmd = app.add_subcommand("verify", "Sweep the enumeration and check the identities");
  add_source(verify_cmd, false);
  add_bounds(verify_cmd);
  verify_cmd->add_flag("--oracle", o.oracle, "Also compare the conjugacy test with the brute-force oracle");
  verify_cmd->add_option("--seed", o.seed, "Seed for sampled pairs");
  handlers[verify_cmd] = cmd_verify;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "List class representatives");
  add_source(enumerate_cmd, false);
  add_bounds(enumerate_cmd);
  handlers[enumerate_cmd] = cmd_enumerate;
  auto* thurston_cmd = app.add_subcommand("thurston", "Intersection vector over several decompositions");
  add_source(thurston_cmd, true);
  thurston_cmd->add_option("--y", o.y, "Class y");
  handlers[thurston_cmd] = cmd_thurston;
  auto* twist_cmd = app.add_subcommand("dehn-twist", "Dehn twist along the decomposition curve");
  add_source(twist_cmd, false);
  twist_cmd->add_option("--y", o.y, "Class y");
  twist_cmd->add_option("--direction", o.direction, "1 or -1");
  handlers[twist_cmd] = cmd_dehn_twist;

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Error& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  Output output(out, o.format);
  for (auto& [sub, handler] : handlers) {
    if (!sub->parsed()) continue;
    try {
      return handler(o, output);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kUsage;
    }
  }
  err << "error: no subcommand\n";
  return kUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace goldman::cli
