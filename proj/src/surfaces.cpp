#include "goldman/surfaces.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "goldman/bracket.hpp"
#include "goldman/error.hpp"
#include "json.hpp"

namespace goldman {

namespace {

using nlohmann::json;

constexpr const char* kGenus2 = R"({
  "name": "genus2_separating",
  "kind": "separating",
  "ctx": {"G": ["a1", "b1"], "H": ["a2", "b2"], "xG": "a1 b1 a1' b1'", "xH": "b2 a2 b2' a2'"},
  "ambient": ["a1", "b1", "a2", "b2"],
  "map": {"a1": "G:a1", "b1": "G:b1", "a2": "H:a2", "b2": "H:b2"}
})";

constexpr const char* kOnceHoled = R"({
  "name": "onceholed_torus_nonsep",
  "kind": "nonseparating",
  "ctx": {"G": ["u", "v"], "a": "u", "b": "v", "t": "t"},
  "ambient": ["a", "b"],
  "map": {"a": "u", "b": "t"},
  "eval": {"u": "a", "v": "b' a b", "t": "b"}
})";

constexpr const char* kClosedTorus = R"({
  "name": "closed_torus",
  "kind": "torus",
  "ctx": {"x": "1,0"}
})";

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("expected an integer, got '" + std::string(s) + "'");
  return value;
}

TorusClass parse_torus(std::string_view text) {
  const std::size_t comma = text.find(',');
  if (comma == std::string_view::npos) throw ParseError("expected 'k,l', got '" + std::string(text) + "'");
  return {parse_int(text.substr(0, comma)), parse_int(text.substr(comma + 1))};
}

Alphabet alphabet_of(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw InvalidContext(std::string("missing generator list '") + key + "'");
  auto names = j.at(key).get<std::vector<std::string>>();
  if (names.empty()) throw InvalidContext(std::string("generator list '") + key + "' is empty");
  std::vector<std::string> sorted = names;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidContext(std::string("duplicate generator in '") + key + "'");
  }
  return Alphabet(std::move(names));
}

std::string string_at(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) throw InvalidContext(std::string("missing string field '") + key + "'");
  return j.at(key).get<std::string>();
}

Word eval_word(const std::vector<Word>& images, const Word& w) {
  Word out;
  for (const Letter& l : w.letters()) out *= l.inv ? images.at(l.gen).inverse() : images.at(l.gen);
  return out;
}

std::vector<AmalgamTerm> inverse_terms(const std::vector<AmalgamTerm>& terms) {
  std::vector<AmalgamTerm> out;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) out.push_back({it->factor, it->word.inverse()});
  return out;
}

std::vector<HnnToken> inverse_tokens(const std::vector<HnnToken>& tokens) {
  std::vector<HnnToken> out;
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) out.push_back({it->word.inverse(), -it->eps});
  return out;
}

SurfaceDecomposition load_separating(const json& j, std::string name) {
  const json& c = j.at("ctx");
  Alphabet g = alphabet_of(c, "G");
  Alphabet h = alphabet_of(c, "H");
  Word xg = parse_word(g, string_at(c, "xG"));
  Word xh = parse_word(h, string_at(c, "xH"));
  AmalgamCtx ctx(std::move(g), std::move(h), std::move(xg), std::move(xh));
  SeparatingDecomp sep{ctx, std::nullopt, {}, {}};
  if (j.contains("ambient")) {
    sep.ambient = alphabet_of(j, "ambient");
    if (!j.contains("map")) throw InvalidContext("ambient alphabet given without a generator map");
    for (const std::string& gen : sep.ambient->names()) {
      if (!j.at("map").contains(gen)) throw InvalidContext("generator map misses '" + gen + "'");
      sep.generator_map.push_back(parse_amalgam_seq(ctx, j.at("map").at(gen).get<std::string>()).terms);
    }
    if (j.contains("eval")) {
      sep.eval_map.resize(2);
      for (Factor f : {Factor::G, Factor::H}) {
        const json& e = j.at("eval").at(factor_name(f));
        for (const std::string& gen : ctx.alphabet(f).names()) {
          if (!e.contains(gen)) throw InvalidContext("eval map misses '" + gen + "'");
          sep.eval_map[static_cast<int>(f)].push_back(parse_word(*sep.ambient, e.at(gen).get<std::string>()));
        }
      }
    }
  }
  return {std::move(name), std::move(sep)};
}

SurfaceDecomposition load_nonseparating(const json& j, std::string name) {
  const json& c = j.at("ctx");
  Alphabet g = alphabet_of(c, "G");
  Word a = parse_word(g, string_at(c, "a"));
  Word b = parse_word(g, string_at(c, "b"));
  HnnCtx ctx(g, std::move(a), std::move(b), c.contains("t") ? string_at(c, "t") : "t");
  NonSeparatingDecomp non{ctx, std::nullopt, {}, {}, std::nullopt};
  if (j.contains("ambient")) {
    non.ambient = alphabet_of(j, "ambient");
    if (non.ambient->find(ctx.stable())) throw InvalidContext("stable letter clashes with an ambient generator");
    if (!j.contains("map")) throw InvalidContext("ambient alphabet given without a generator map");
    for (const std::string& gen : non.ambient->names()) {
      if (!j.at("map").contains(gen)) throw InvalidContext("generator map misses '" + gen + "'");
      non.generator_map.push_back(parse_hnn_tokens(ctx, j.at("map").at(gen).get<std::string>()));
    }
    if (j.contains("eval")) {
      const json& e = j.at("eval");
      for (const std::string& gen : g.names()) {
        if (!e.contains(gen)) throw InvalidContext("eval map misses '" + gen + "'");
        non.eval_map.push_back(parse_word(*non.ambient, e.at(gen).get<std::string>()));
      }
      if (!e.contains(ctx.stable())) throw InvalidContext("eval map misses the stable letter");
      non.eval_stable = parse_word(*non.ambient, e.at(ctx.stable()).get<std::string>());
    }
  }
  return {std::move(name), std::move(non)};
}

SurfaceDecomposition load_torus(const json& j, std::string name) {
  TorusDecomp tor;
  if (j.contains("ctx")) {
    const json& c = j.at("ctx");
    if (c.contains("x")) tor.curve = parse_torus(string_at(c, "x"));
    if (c.contains("a")) tor.a = string_at(c, "a");
    if (c.contains("c")) tor.c = string_at(c, "c");
  }
  if (std::gcd(tor.curve.k, tor.curve.l) != 1) throw InvalidContext("torus curve must be primitive to be simple");
  if (tor.a == tor.c) throw InvalidContext("torus basis names must differ");
  return {std::move(name), tor};
}

ConjClassRep sequence_text_to_class(const SurfaceDecomposition& d, std::string_view text) {
  if (const auto* sep = std::get_if<SeparatingDecomp>(&d.kind)) {
    return cyclic_reduce_seq(sep->ctx, parse_amalgam_seq(sep->ctx, text));
  }
  const auto& non = std::get<NonSeparatingDecomp>(d.kind);
  return cyclic_reduce_hnn(non.ctx, parse_hnn_seq(non.ctx, text));
}

std::int64_t saturating_mul(std::int64_t a, std::int64_t b) {
  constexpr std::int64_t kMax = INT64_MAX / 4;
  if (a == 0 || b == 0) return 0;
  return a > kMax / b ? kMax : a * b;
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"genus2_separating", "onceholed_torus_nonsep", "closed_torus"};
}

SurfaceDecomposition builtin(std::string_view name) {
  if (name == "genus2_separating") return decomposition_from_json(kGenus2);
  if (name == "onceholed_torus_nonsep") return decomposition_from_json(kOnceHoled);
  if (name == "closed_torus") return decomposition_from_json(kClosedTorus);
  throw UnknownName("unknown built-in decomposition '" + std::string(name) + "'");
}

SurfaceDecomposition decomposition_from_json(std::string_view text, std::string_view fallback_name) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidContext("decomposition must be a JSON object");
  try {
    std::string name = j.contains("name") ? j.at("name").get<std::string>() : std::string(fallback_name);
    std::string kind;
    if (j.contains("kind")) {
      kind = j.at("kind").get<std::string>();
    } else if (j.contains("xG")) {
      kind = "separating";
      j = json{{"ctx", j}};
    } else if (j.contains("a") && j.contains("b")) {
      kind = "nonseparating";
      j = json{{"ctx", j}};
    } else {
      throw InvalidContext("cannot tell the decomposition kind");
    }
    if (kind != "torus" && !j.contains("ctx")) throw InvalidContext("missing 'ctx'");
    if (kind == "separating") return load_separating(j, std::move(name));
    if (kind == "nonseparating") return load_nonseparating(j, std::move(name));
    if (kind == "torus") return load_torus(j, std::move(name));
    throw InvalidContext("unknown decomposition kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw InvalidContext(std::string("malformed decomposition: ") + e.what());
  }
}

SurfaceDecomposition load_decomposition_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return decomposition_from_json(buf.str(), std::filesystem::path(path).stem().string());
}

ConjClassRep ambient_word_to_class(const SurfaceDecomposition& d, const Word& w) {
  if (const auto* sep = std::get_if<SeparatingDecomp>(&d.kind)) {
    if (!sep->ambient) throw InvalidContext("decomposition '" + d.name + "' has no ambient alphabet");
    std::vector<AmalgamTerm> raw;
    for (const Letter& l : w.letters()) {
      const auto& image = sep->generator_map.at(l.gen);
      if (l.inv) {
        auto inv = inverse_terms(image);
        raw.insert(raw.end(), inv.begin(), inv.end());
      } else {
        raw.insert(raw.end(), image.begin(), image.end());
      }
    }
    return cyclic_reduce_seq(sep->ctx, seq_reduce(sep->ctx, raw));
  }
  if (const auto* non = std::get_if<NonSeparatingDecomp>(&d.kind)) {
    if (!non->ambient) throw InvalidContext("decomposition '" + d.name + "' has no ambient alphabet");
    std::vector<HnnToken> raw;
    for (const Letter& l : w.letters()) {
      const auto& image = non->generator_map.at(l.gen);
      if (l.inv) {
        auto inv = inverse_tokens(image);
        raw.insert(raw.end(), inv.begin(), inv.end());
      } else {
        raw.insert(raw.end(), image.begin(), image.end());
      }
    }
    return cyclic_reduce_hnn(non->ctx, britton_reduce(non->ctx, raw));
  }
  TorusClass out;
  for (const Letter& l : w.letters()) (l.gen == 0 ? out.k : out.l) += l.inv ? -1 : 1;
  return out;
}

ConjClassRep word_to_class(const SurfaceDecomposition& d, std::string_view text) {
  text = trim(text);
  if (const auto* tor = std::get_if<TorusDecomp>(&d.kind)) {
    if (text.find(',') != std::string_view::npos) return parse_torus(text);
    return ambient_word_to_class(d, parse_word(Alphabet({tor->a, tor->c}), text));
  }
  if (const auto* sep = std::get_if<SeparatingDecomp>(&d.kind)) {
    if (text.find(':') != std::string_view::npos || !sep->ambient) return sequence_text_to_class(d, text);
    return ambient_word_to_class(d, parse_word(*sep->ambient, text));
  }
  const auto& non = std::get<NonSeparatingDecomp>(d.kind);
  if (non.ambient) {
    try {
      return ambient_word_to_class(d, parse_word(*non.ambient, text));
    } catch (const UnknownSymbol&) {
      // Not an ambient word; read it as HNN text.
    }
  }
  return sequence_text_to_class(d, text);
}

std::optional<Word> ambient_image(const SeparatingDecomp& d, std::span<const AmalgamTerm> terms) {
  if (d.eval_map.empty()) return std::nullopt;
  Word out;
  for (const AmalgamTerm& t : terms) out *= eval_word(d.eval_map[static_cast<int>(t.factor)], t.word);
  return out;
}

std::optional<Word> ambient_image(const NonSeparatingDecomp& d, std::span<const HnnToken> tokens) {
  if (d.eval_map.empty() || !d.eval_stable) return std::nullopt;
  Word out;
  for (const HnnToken& tok : tokens) {
    out *= eval_word(d.eval_map, tok.word);
    if (tok.eps != 0) out *= d.eval_stable->pow(tok.eps);
  }
  return out;
}

std::optional<Word> ambient_image(const SurfaceDecomposition& d, const ConjClassRep& rep) {
  check_context(d, rep);
  if (const auto* sep = std::get_if<SeparatingDecomp>(&d.kind)) {
    return ambient_image(*sep, std::get<CyclicAmalgamSeq>(rep).terms);
  }
  if (const auto* non = std::get_if<NonSeparatingDecomp>(&d.kind)) {
    return ambient_image(*non, tokens_of(std::get<CyclicHnnSeq>(rep)));
  }
  return std::nullopt;
}

ConjClassRep curve_class(const SurfaceDecomposition& d, int power) {
  if (const auto* sep = std::get_if<SeparatingDecomp>(&d.kind)) {
    return cyclic_reduce_seq(sep->ctx, seq_reduce(sep->ctx, std::vector<AmalgamTerm>{
                                                                {Factor::G, sep->ctx.embedding(Factor::G).pow(power)}}));
  }
  if (const auto* non = std::get_if<NonSeparatingDecomp>(&d.kind)) {
    return CyclicHnnSeq{{cyclic_word(non->ctx.a().pow(power)).word()}, {}};
  }
  const TorusClass x = std::get<TorusDecomp>(d.kind).curve;
  return TorusClass{x.k * power, x.l * power};
}

std::optional<int> curve_power(const SurfaceDecomposition& d, const ConjClassRep& rep, int max_power) {
  check_context(d, rep);
  if (const auto* t = std::get_if<TorusClass>(&rep)) {
    const TorusClass x = std::get<TorusDecomp>(d.kind).curve;
    const int p = x.k != 0 ? t->k / x.k : t->l / x.l;
    if (p != 0 && t->k == p * x.k && t->l == p * x.l) return p;
    return std::nullopt;
  }
  if (const auto* s = std::get_if<CyclicAmalgamSeq>(&rep); s && s->size() != 1) return std::nullopt;
  if (const auto* s = std::get_if<CyclicHnnSeq>(&rep); s && s->n() != 0) return std::nullopt;
  for (int p = 1; p <= max_power; ++p) {
    for (int sign : {1, -1}) {
      if (conjugate(d, rep, curve_class(d, sign * p))) return sign * p;
    }
  }
  return std::nullopt;
}

Caps Caps::from_env() {
  Caps caps;
  if (const char* env = std::getenv("GOLDMAN_MAX_WORK")) {
    std::string_view s = trim(env);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || value <= 0) {
      throw ParseError("GOLDMAN_MAX_WORK must be a positive integer");
    }
    caps.max_work = value;
    caps.max_n = INT_MAX;
    caps.max_len = INT_MAX;
  }
  return caps;
}

ClassEnumeration::ClassEnumeration(SurfaceDecomposition d, Bounds bounds, Caps caps)
    : d_(std::move(d)), bounds_(bounds) {
  if (bounds.min_n < 0 || bounds.max_n < 0 || bounds.max_len < 0) throw Error("bounds must be nonnegative");
  // The torus lattice is cheap; only sequence kinds are capped.
  const bool capped = !std::holds_alternative<TorusDecomp>(d_.kind);
  if (capped && bounds.max_n > caps.max_n) {
    throw BoundsTooLarge("max n " + std::to_string(bounds.max_n) + " exceeds the cap " + std::to_string(caps.max_n));
  }
  if (capped && bounds.max_len > caps.max_len) {
    throw BoundsTooLarge("max length " + std::to_string(bounds.max_len) + " exceeds the cap " +
                         std::to_string(caps.max_len));
  }
  if (const auto* sep = std::get_if<SeparatingDecomp>(&d_.kind)) {
    for (Factor f : {Factor::G, Factor::H}) {
      auto& pool = f == Factor::G ? pool_g_ : pool_h_;
      auto& pool1 = f == Factor::G ? pool_g1_ : pool_h1_;
      for (Word& w : words_up_to(sep->ctx.alphabet(f).rank(), bounds.max_len)) {
        if (w.empty()) continue;
        if (is_cyclically_reduced(w)) pool1.push_back(w);
        if (!sep->ctx.c_exponent(f, w)) pool.push_back(std::move(w));
      }
    }
    if (bounds.min_n <= 1) {
      add_stage({1, {&pool_g1_}, {}, false, Factor::G});
      add_stage({1, {&pool_h1_}, {}, false, Factor::H});
    }
    for (int n = std::max(2, bounds.min_n + bounds.min_n % 2); n <= bounds.max_n; n += 2) {
      Stage st{n, {}, {}, false, Factor::G};
      for (int i = 0; i < n; ++i) st.pools.push_back(i % 2 == 0 ? &pool_g_ : &pool_h_);
      add_stage(std::move(st));
    }
  } else if (const auto* non = std::get_if<NonSeparatingDecomp>(&d_.kind)) {
    for (Word& w : words_up_to(non->ctx.alphabet().rank(), bounds.max_len)) {
      if (!w.empty() && is_cyclically_reduced(w)) pool_cyc_.push_back(w);
      pool_all_.push_back(std::move(w));
    }
    if (bounds.min_n == 0) add_stage({0, {&pool_cyc_}, {}, false, Factor::G});
    for (int n = std::max(1, bounds.min_n); n <= bounds.max_n; ++n) {
      if (n > 30) throw BoundsTooLarge("HNN enumeration supports n <= 30");
      add_stage({n, std::vector<const std::vector<Word>*>(n, &pool_all_), {}, true, Factor::G});
    }
  } else {
    const std::size_t side = 2 * static_cast<std::size_t>(bounds.max_len) + 1;
    Stage st;
    st.radix = {side, side};
    add_stage(std::move(st));
  }
  if (capped && planned_ > caps.max_work) {
    throw BoundsTooLarge("enumeration would visit " + std::to_string(planned_) + " candidates, above the cap " +
                         std::to_string(caps.max_work) + " (set GOLDMAN_MAX_WORK to raise it)");
  }
}

void ClassEnumeration::add_stage(Stage stage) {
  if (stage.radix.empty()) {
    for (const auto* pool : stage.pools) stage.radix.push_back(pool->size());
  }
  std::int64_t count = stage.masks ? (std::int64_t{1} << stage.n) : 1;
  for (std::size_t r : stage.radix) count = saturating_mul(count, static_cast<std::int64_t>(r));
  planned_ = std::min<std::int64_t>(planned_ + count, INT64_MAX / 4);
  stages_.push_back(std::move(stage));
}

bool ClassEnumeration::advance() {
  const Stage& st = stages_[stage_];
  if (st.masks && ++mask_ < (std::uint32_t{1} << st.n)) return true;
  mask_ = 0;
  for (std::size_t i = digits_.size(); i-- > 0;) {
    if (++digits_[i] < st.radix[i]) return true;
    digits_[i] = 0;
  }
  return false;
}

std::optional<ConjClassRep> ClassEnumeration::build() const {
  const Stage& st = stages_[stage_];
  if (const auto* non = std::get_if<NonSeparatingDecomp>(&d_.kind)) {
    CyclicHnnSeq s;
    for (std::size_t i = 0; i < digits_.size(); ++i) s.g.push_back((*st.pools[i])[digits_[i]]);
    for (int i = 0; i < st.n; ++i) s.eps.push_back((mask_ >> i) & 1U ? -1 : 1);
    if (st.n > 0 && !is_cyclically_reduced(non->ctx, s)) return std::nullopt;
    return s;
  }
  if (std::holds_alternative<SeparatingDecomp>(d_.kind)) {
    CyclicAmalgamSeq s;
    Factor f = st.first;
    for (std::size_t i = 0; i < digits_.size(); ++i, f = other(f)) s.terms.push_back({f, (*st.pools[i])[digits_[i]]});
    return s;
  }
  const int side = static_cast<int>(bounds_.max_len);
  TorusClass t{static_cast<int>(digits_[0]) - side, static_cast<int>(digits_[1]) - side};
  if (t == TorusClass{}) return std::nullopt;
  return t;
}

std::optional<ConjClassRep> ClassEnumeration::next_raw() {
  while (stage_ < stages_.size()) {
    const Stage& st = stages_[stage_];
    if (!started_) {
      started_ = true;
      digits_.assign(st.radix.size(), 0);
      mask_ = 0;
      if (std::find(st.radix.begin(), st.radix.end(), std::size_t{0}) != st.radix.end()) {
        ++stage_;
        started_ = false;
        continue;
      }
    } else if (!advance()) {
      ++stage_;
      started_ = false;
      continue;
    }
    if (auto rep = build()) return rep;
  }
  return std::nullopt;
}

std::optional<ConjClassRep> ClassEnumeration::next() {
  while (auto rep = next_raw()) {
    if (!bounds_.dedup) return rep;
    auto& bucket = buckets_[conjugacy_invariant(d_, *rep)];
    const bool seen =
        std::any_of(bucket.begin(), bucket.end(), [&](const ConjClassRep& r) { return conjugate(d_, r, *rep); });
    if (!seen) {
      bucket.push_back(*rep);
      return rep;
    }
  }
  return std::nullopt;
}

std::vector<ConjClassRep> ClassEnumeration::collect_all() {
  std::vector<ConjClassRep> out;
  while (auto rep = next()) out.push_back(std::move(*rep));
  return out;
}

std::vector<ConjClassRep> enumerate_classes(const SurfaceDecomposition& d, Bounds bounds, Caps caps) {
  ClassEnumeration e(d, bounds, caps);
  return e.collect_all();
}

std::vector<long> thurston_vector(std::span<const SurfaceDecomposition> decomps, std::string_view y) {
  std::vector<long> out;
  for (const SurfaceDecomposition& d : decomps) {
    ConjClassRep rep;
    try {
      rep = word_to_class(d, y);
    } catch (const UnknownSymbol& e) {
      throw MixedContext("'" + std::string(y) + "' is not a class of decomposition '" + d.name + "': " + e.what());
    } catch (const ParseError& e) {
      throw MixedContext("'" + std::string(y) + "' is not a class of decomposition '" + d.name + "': " + e.what());
    }
    out.push_back(i_count(d, rep));
  }
  return out;
}

}  // namespace goldman
