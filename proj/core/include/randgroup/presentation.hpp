#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "randgroup/rng.hpp"
#include "randgroup/words.hpp"

namespace randgroup {

// Rounded relator count (2m-1)^(d*ell) of the density model, half-up.
// Throws std::overflow_error past 2^63 (use an explicit count override).
std::int64_t relator_count(int m, int ell, double density);

// Parse/validation failure for the presentation file format. `where` is the
// offending field, e.g. "relators[3]".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// A sampled presentation <a_1,...,a_m | R> of the density model. Immutable
// after creation; every relator is freely and cyclically reduced, has length
// exactly ell, and the relators are pairwise distinct as plain words.
class Presentation {
 public:
  static Presentation create(int m, int ell, double density,
                             std::vector<Word> relators,
                             std::optional<std::uint64_t> seed = std::nullopt);

  int m() const { return m_; }
  int ell() const { return ell_; }
  double density() const { return density_; }
  std::optional<std::uint64_t> seed() const { return seed_; }
  int size() const { return static_cast<int>(relators_.size()); }
  const Word& relator(int i) const { return relators_.at(static_cast<std::size_t>(i)); }
  const std::vector<Word>& relators() const { return relators_; }

  // Letter codes of relator i concatenated with itself (2*ell codes), in the
  // given orientation. Cyclic subwords of length <= ell are windows of this.
  std::span<const std::int32_t> doubled(int i, bool inverted) const;

  // Letter at cyclic position `pos` of relator i read with `orientation` +1
  // or -1 (the -1 reading is the letter sequence of the inverse word).
  Letter oriented_letter(int i, int orientation, int pos) const;

  bool operator==(const Presentation& other) const;

 private:
  Presentation() = default;

  int m_ = 2;
  int ell_ = 1;
  double density_ = 0.0;
  std::optional<std::uint64_t> seed_;
  std::vector<Word> relators_;
  // doubled_[2*i] is relator i forward, doubled_[2*i+1] inverted
  std::vector<std::vector<std::int32_t>> doubled_;
};

// Samples `count_override` (default: relator_count) distinct cyclically
// reduced relators, rejecting and redrawing words that are not cyclically
// reduced or already present. Throws std::runtime_error when the rejection
// loop exceeds 100x the target count (density too high for this ell), and
// std::invalid_argument when the target exceeds `count_cap`.
Presentation sample_presentation(int m, int ell, double density, Rng& rng,
                                 std::optional<std::int64_t> count_override = std::nullopt,
                                 std::int64_t count_cap = 1'000'000,
                                 std::optional<std::uint64_t> seed_provenance = std::nullopt);

// Convenience overload seeding a fresh stream and recording the seed.
Presentation sample_presentation(int m, int ell, double density, std::uint64_t seed,
                                 std::optional<std::int64_t> count_override = std::nullopt,
                                 std::int64_t count_cap = 1'000'000);

// JSON document with fields m, ell, density, seed (integer or null),
// relators (array of letter-case strings).
std::string presentation_to_json(const Presentation& p);
Presentation presentation_from_json(const std::string& text);

void store(const Presentation& p, std::ostream& sink);
Presentation load(std::istream& source);

}  // namespace randgroup
