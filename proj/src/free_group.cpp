#include "goldman/free_group.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <tuple>
#include <unordered_set>

#include "goldman/error.hpp"

namespace goldman {

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

void push_reduced(std::vector<Letter>& out, Letter l) {
  if (!out.empty() && out.back() == l.inverse()) {
    out.pop_back();
  } else {
    out.push_back(l);
  }
}

std::vector<Letter> least_rotation(const std::vector<Letter>& v, std::size_t* shift) {
  const std::size_t n = v.size();
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t i = 0; i < n; ++i) {
      const Letter& a = v[(r + i) % n];
      const Letter& b = v[(best + i) % n];
      if (a < b) {
        best = r;
        break;
      }
      if (b < a) break;
    }
  }
  if (shift) *shift = best;
  std::vector<Letter> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(v[(best + i) % n]);
  return out;
}

bool coset_order(int p1, int q1, int p2, int q2) {
  return std::make_tuple(std::abs(p1) + std::abs(q1), p1, q1) <
         std::make_tuple(std::abs(p2) + std::abs(q2), p2, q2);
}

// Candidates q minimising |y * x^q|; the length is convex in q when x is cyclically reduced.
std::vector<int> minimising_exponents(const Word& y, const Word& x) {
  std::vector<int> best{0};
  std::size_t best_len = y.size();
  for (int dir : {1, -1}) {
    const Word step = x.pow(dir);
    Word cur = y;
    std::size_t prev = y.size();
    for (int q = dir;; q += dir) {
      cur *= step;
      if (cur.size() > prev) break;
      prev = cur.size();
      if (cur.size() < best_len) {
        best_len = cur.size();
        best.clear();
      }
      if (cur.size() == best_len) best.push_back(q);
    }
  }
  return best;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw InvalidContext("alphabet must have rank >= 1");
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (!is_identifier(n)) throw InvalidContext("generator name '" + n + "' is not an identifier");
    if (!seen.insert(n).second) throw InvalidContext("duplicate generator name '" + n + "'");
  }
}

std::optional<int> Alphabet::find(std::string_view symbol) const {
  for (int i = 0; i < rank(); ++i) {
    if (names_[i] == symbol) return i;
  }
  return std::nullopt;
}

Word::Word(std::span<const Letter> letters) {
  letters_.reserve(letters.size());
  for (const Letter& l : letters) push_reduced(letters_, l);
}

Word::Word(std::initializer_list<Letter> letters)
    : Word(std::span<const Letter>(letters.begin(), letters.size())) {}

Word Word::generator(int gen, bool inv) { return Word{Letter{gen, inv}}; }

Word Word::inverse() const {
  Word out;
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.letters_.push_back(it->inverse());
  return out;
}

Word Word::pow(int p) const {
  if (p < 0) return inverse().pow(-p);
  Word out;
  out.letters_.reserve(letters_.size() * static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) out *= *this;
  return out;
}

int Word::max_gen() const {
  int m = -1;
  for (const Letter& l : letters_) m = std::max(m, l.gen);
  return m;
}

Word operator*(const Word& lhs, const Word& rhs) {
  Word out = lhs;
  out *= rhs;
  return out;
}

Word& Word::operator*=(const Word& rhs) {
  if (const std::size_t need = letters_.size() + rhs.size(); need > letters_.capacity()) {
    letters_.reserve(std::max(need, 2 * letters_.capacity()));
  }
  for (const Letter& l : rhs.letters_) push_reduced(letters_, l);
  return *this;
}

bool shortlex_less(const Word& lhs, const Word& rhs) {
  if (lhs.size() != rhs.size()) return lhs.size() < rhs.size();
  return lhs < rhs;
}

Word free_reduce(std::span<const Letter> raw) { return Word(raw); }

Word free_reduce(const Alphabet& alphabet, std::span<const RawLetter> raw) {
  std::vector<Letter> letters;
  letters.reserve(raw.size());
  for (const RawLetter& r : raw) {
    auto gen = alphabet.find(r.symbol);
    if (!gen) throw UnknownSymbol("unknown symbol '" + r.symbol + "'");
    letters.push_back({*gen, r.inv});
  }
  return Word(letters);
}

CyclicReduction cyclic_reduce(const Word& w) {
  const auto& l = w.letters();
  std::size_t i = 0;
  std::size_t j = l.size();
  while (j - i >= 2 && l[i] == l[j - 1].inverse()) {
    ++i;
    --j;
  }
  std::vector<Letter> core(l.begin() + i, l.begin() + j);
  std::size_t shift = 0;
  CyclicReduction out;
  out.core.letters_ = least_rotation(core, &shift);
  std::vector<Letter> conj(l.begin(), l.begin() + i);
  conj.insert(conj.end(), core.begin(), core.begin() + shift);
  out.conjugator = Word(conj);
  return out;
}

CyclicWord cyclic_word(const Word& w) { return cyclic_reduce(w).core; }

bool is_cyclically_reduced(const Word& w) {
  return w.size() < 2 || w.front() != w.back().inverse();
}

bool conjugate_in_free(const Word& u, const Word& v) { return cyclic_word(u) == cyclic_word(v); }

std::optional<int> is_power_of(const Word& w, const Word& x) {
  if (x.empty()) throw EmptyBase("is_power_of: empty base word");
  // root is cyclically reduced, so root^m is the plain m-fold concatenation.
  auto exponent = [](const Word& inner, const Word& root) -> std::optional<int> {
    if (inner.empty()) return 0;
    const std::size_t r = root.size();
    if (inner.size() % r != 0) return std::nullopt;
    const int m = static_cast<int>(inner.size() / r);
    bool pos = true, neg = true;
    for (std::size_t i = 0; i < inner.size() && (pos || neg); ++i) {
      pos = pos && inner[i] == root[i % r];
      neg = neg && inner[i] == root[r - 1 - i % r].inverse();
    }
    if (pos) return m;
    if (neg) return -m;
    return std::nullopt;
  };
  if (is_cyclically_reduced(x)) return exponent(w, x);
  const CyclicReduction cr = cyclic_reduce(x);
  return exponent(cr.conjugator.inverse() * w * cr.conjugator, cr.core.word());
}

std::optional<int> conjugate_power_exponent(const Word& w, const Word& x) {
  if (x.empty()) throw EmptyBase("conjugate_power_exponent: empty base word");
  const CyclicWord cw = cyclic_word(w);
  if (cw.empty()) return 0;
  const Word root = cyclic_word(x).word();
  if (cw.size() % root.size() != 0) return std::nullopt;
  const int m = static_cast<int>(cw.size() / root.size());
  if (cyclic_word(root.pow(m)) == cw) return m;
  if (cyclic_word(root.pow(-m)) == cw) return -m;
  return std::nullopt;
}

bool not_proper_power(const Word& x) {
  if (x.empty() || !is_cyclically_reduced(x)) {
    throw NotCyclicallyReduced("not_proper_power: word must be nonempty and cyclically reduced");
  }
  const std::size_t n = x.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = x[i] == x[i - d];
    if (periodic) return false;
  }
  return true;
}

int double_coset_bound(const Word& w, const Word& v, const Word& xL, const Word& xR) {
  if (xL.empty() || xR.empty()) throw EmptyBase("double coset: empty subgroup generator");
  const std::size_t m = std::min(xL.size(), xR.size());
  return static_cast<int>((w.size() + v.size() + m - 1) / m) + 2;
}

std::vector<CosetSolution> double_coset_solutions(const Word& w, const Word& v, const Word& xL,
                                                  const Word& xR) {
  const int bound = double_coset_bound(w, v, xL, xR);
  const Word v_inv = v.inverse();
  const Word step = xL.inverse();
  std::vector<CosetSolution> out;
  // left = xL^-p * w, starting from p = -bound.
  Word left = xL.pow(bound) * w;
  for (int p = -bound; p <= bound; ++p, left = step * left) {
    auto q = is_power_of(v_inv * left, xR);
    if (q && std::abs(*q) <= bound) out.push_back({p, *q});
  }
  std::sort(out.begin(), out.end(),
            [](const CosetSolution& a, const CosetSolution& b) { return coset_order(a.p, a.q, b.p, b.q); });
  return out;
}

std::optional<CosetSolution> double_coset_solve(const Word& w, const Word& v, const Word& xL,
                                                const Word& xR) {
  auto all = double_coset_solutions(w, v, xL, xR);
  if (all.empty()) return std::nullopt;
  return all.front();
}

Word reverse_bar(const Word& w) { return w.inverse(); }

bool conjugate_to_inverse_probe(const Word& g, const Word& x) {
  return double_coset_solve(g.inverse(), g, x, x).has_value();
}

CosetRep double_coset_min(const Word& w, const Word& xL, const Word& xR) {
  if (xL.empty() || xR.empty()) throw EmptyBase("double coset: empty subgroup generator");
  const std::size_t m = std::min(xL.size(), xR.size());
  const int bound = static_cast<int>((2 * w.size() + m - 1) / m) + 2;
  std::optional<CosetRep> best;
  Word left = xL.pow(-bound) * w;
  for (int p = -bound; p <= bound; ++p, left = xL * left) {
    for (int q : minimising_exponents(left, xR)) {
      Word cand = left * xR.pow(q);
      if (!best || shortlex_less(cand, best->rep) ||
          (cand == best->rep && coset_order(p, q, best->p, best->q))) {
        best = CosetRep{std::move(cand), p, q};
      }
    }
  }
  return *best;
}

CosetRep right_coset_min(const Word& w, const Word& xR) {
  if (xR.empty()) throw EmptyBase("coset: empty subgroup generator");
  std::optional<CosetRep> best;
  for (int q : minimising_exponents(w, xR)) {
    Word cand = w * xR.pow(q);
    if (!best || shortlex_less(cand, best->rep) ||
        (cand == best->rep && coset_order(0, q, 0, best->q))) {
      best = CosetRep{std::move(cand), 0, q};
    }
  }
  return *best;
}

Word parse_word(const Alphabet& alphabet, std::string_view text) {
  std::vector<Letter> letters;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    // Longest generator name that prefixes the remaining text.
    std::optional<int> gen;
    std::size_t len = 0;
    for (int g = 0; g < alphabet.rank(); ++g) {
      const std::string& n = alphabet.name(g);
      if (n.size() > len && text.substr(i, n.size()) == n) {
        gen = g;
        len = n.size();
      }
    }
    if (!gen) {
      if (text[i] == '1' && (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])))) {
        ++i;
        continue;
      }
      std::size_t end = i;
      while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
      throw UnknownSymbol("unknown symbol '" + std::string(text.substr(i, end - i)) + "'");
    }
    i += len;
    bool inv = false;
    while (i < text.size() && text[i] == '\'') {
      inv = !inv;
      ++i;
    }
    letters.push_back({*gen, inv});
  }
  return Word(letters);
}

std::string format_word(const Alphabet& alphabet, const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const Letter& l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += alphabet.name(l.gen);
    if (l.inv) out += '\'';
  }
  return out;
}

std::vector<Word> words_up_to(int rank, int max_len) {
  std::vector<Word> out{Word()};
  std::size_t begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (int g = 0; g < rank; ++g) {
        for (bool inv : {false, true}) {
          const Letter l{g, inv};
          if (!out[i].empty() && out[i].back() == l.inverse()) continue;
          std::vector<Letter> next = out[i].letters();
          next.push_back(l);
          out.emplace_back(next);
        }
      }
    }
    begin = end;
  }
  return out;
}

}  // namespace goldman
