#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace goldman {

// A generator index with an exponent sign. Ordered by (gen, sign) with +1 before -1.
struct Letter {
  int gen = 0;
  bool inv = false;

  Letter inverse() const { return {gen, !inv}; }
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  int rank() const { return static_cast<int>(names_.size()); }
  const std::string& name(int gen) const { return names_.at(gen); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<int> find(std::string_view symbol) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> names_;
};

struct RawLetter {
  std::string symbol;
  bool inv = false;
};

// Freely reduced word. Every constructor path reduces.
class Word {
 public:
  Word() = default;
  explicit Word(std::span<const Letter> letters);
  Word(std::initializer_list<Letter> letters);

  static Word generator(int gen, bool inv = false);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  const Letter& front() const { return letters_.front(); }
  const Letter& back() const { return letters_.back(); }

  Word inverse() const;
  Word pow(int p) const;
  // Largest generator index used, or -1 for the identity.
  int max_gen() const;

  friend Word operator*(const Word& lhs, const Word& rhs);
  Word& operator*=(const Word& rhs);

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

// Length first, then lexicographic.
bool shortlex_less(const Word& lhs, const Word& rhs);

struct CyclicReduction;

class CyclicWord {
 public:
  CyclicWord() = default;

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Word word() const { return Word(letters_); }

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
  friend auto operator<=>(const CyclicWord&, const CyclicWord&) = default;

 private:
  friend CyclicReduction cyclic_reduce(const Word& w);
  std::vector<Letter> letters_;
};

struct CyclicReduction {
  CyclicWord core;
  Word conjugator;  // w = conjugator * core * conjugator^-1
};

Word free_reduce(std::span<const Letter> raw);
Word free_reduce(const Alphabet& alphabet, std::span<const RawLetter> raw);

CyclicReduction cyclic_reduce(const Word& w);
CyclicWord cyclic_word(const Word& w);
bool is_cyclically_reduced(const Word& w);
bool conjugate_in_free(const Word& u, const Word& v);

std::optional<int> is_power_of(const Word& w, const Word& x);
// p with w conjugate to x^p, if any.
std::optional<int> conjugate_power_exponent(const Word& w, const Word& x);
bool not_proper_power(const Word& x);

struct CosetSolution {
  int p = 0;
  int q = 0;
  friend bool operator==(const CosetSolution&, const CosetSolution&) = default;
};

int double_coset_bound(const Word& w, const Word& v, const Word& xL, const Word& xR);
// All (p, q) inside the search window with w = xL^p v xR^q, smallest |p|+|q| first.
std::vector<CosetSolution> double_coset_solutions(const Word& w, const Word& v, const Word& xL,
                                                  const Word& xR);
std::optional<CosetSolution> double_coset_solve(const Word& w, const Word& v, const Word& xL,
                                                const Word& xR);

Word reverse_bar(const Word& w);
bool conjugate_to_inverse_probe(const Word& g, const Word& x);

// rep = xL^p * w * xR^q is the shortlex-least element of the double coset.
struct CosetRep {
  Word rep;
  int p = 0;
  int q = 0;
};
CosetRep double_coset_min(const Word& w, const Word& xL, const Word& xR);
CosetRep right_coset_min(const Word& w, const Word& xR);

Word parse_word(const Alphabet& alphabet, std::string_view text);
std::string format_word(const Alphabet& alphabet, const Word& w);

// Every reduced word of length <= max_len over the given rank, in shortlex order.
std::vector<Word> words_up_to(int rank, int max_len);

}  // namespace goldman
