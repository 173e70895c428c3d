#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "randgroup/rng.hpp"

namespace randgroup {

using BigInt = boost::multiprecision::cpp_int;

// One signed generator occurrence: generator index in [1, m], sign +1 or -1.
struct Letter {
  int gen = 1;
  int sign = +1;

  Letter inverse() const { return Letter{gen, -sign}; }
  bool operator==(const Letter&) const = default;
  auto operator<=>(const Letter&) const = default;

  // Dense code 2(gen-1) + [sign < 0], the alphabet of the string indexes.
  int code() const { return 2 * (gen - 1) + (sign < 0 ? 1 : 0); }
  static Letter from_code(int c) { return Letter{c / 2 + 1, c % 2 == 0 ? +1 : -1}; }
};

inline bool cancels(Letter a, Letter b) { return a.gen == b.gen && a.sign != b.sign; }

bool is_reduced(std::span<const Letter> letters);
bool is_cyclically_reduced(std::span<const Letter> letters);

// A freely reduced word over the generators. The empty word is valid and is
// the identity element.
class Word {
 public:
  Word() = default;

  // Wraps a letter sequence that must already be freely reduced; throws
  // std::invalid_argument otherwise.
  static Word from_reduced(std::vector<Letter> letters);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const { return letters_; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }
  bool operator==(const Word&) const = default;

 private:
  explicit Word(std::vector<Letter> v) : letters_(std::move(v)) {}
  std::vector<Letter> letters_;
};

// Iterated cancellation of adjacent inverse pairs; the result is the unique
// freely reduced form. Idempotent.
Word free_reduce(std::span<const Letter> raw);

// Strips mutually inverse first/last letters until none remain. Input must be
// freely reduced.
Word cyclic_reduce(const Word& w);

// Reversed sequence with all signs flipped.
Word invert(const Word& w);

// Concatenation followed by free reduction.
Word reduced_product(const Word& a, const Word& b);

// Letter-case encoding: generator i prints as the i-th lowercase letter and
// its inverse as the uppercase letter. Words with a generator beyond 26 are
// printed entirely in the numeric form "g3"/"G3"; parsing accepts both forms
// but not a mixture.
std::string format_letter(Letter l);
std::string format_word(std::span<const Letter> letters);
inline std::string format_word(const Word& w) { return format_word(std::span(w.letters())); }

// Throws std::invalid_argument on malformed input. The result is raw: it is
// not required to be reduced.
std::vector<Letter> parse_letters(std::string_view text);

// Number of reduced words of length ell over m generators: 2m(2m-1)^(ell-1),
// exactly. ell = 0 counts only the empty word.
BigInt count_reduced_words(int m, int ell);

// Uniform over all reduced words of length ell: first letter uniform over the
// 2m signed generators, each subsequent letter uniform over the 2m-1 letters
// that do not cancel the previous one. Deterministic per seed.
Word sample_reduced_word(int m, int ell, Rng& rng);

}  // namespace randgroup
