#pragma once

#include <optional>
#include <string>
#include <vector>

#include "randgroup/diagram.hpp"
#include "randgroup/pieces.hpp"
#include "randgroup/presentation.hpp"
#include "randgroup/rng.hpp"
#include "randgroup/words.hpp"

namespace randgroup {

// One replacement of a subword matching more than half of a relator by the
// inverse of the complementary part.
struct DehnStep {
  int position = 0;  // start index in the current word
  int relator = 0;
  Orientation orientation = Orientation::same;
  int rotation = 0;  // cyclic offset of the matched subword in the oriented relator
  int matched_length = 0;
  Word replacement;
};

struct DehnTrace {
  std::vector<DehnStep> steps;
  Word final;
};

// Finds the leftmost subword of w matching more than ell/2 consecutive
// letters of a cyclic relator (either orientation); among those the longest,
// then the smallest (relator, orientation, rotation). Absent if none.
// In cyclic mode the word is treated as a cyclic word: matching windows may
// wrap past the end (position is the cyclic start index).
std::optional<DehnStep> dehn_step(const Word& w, const Presentation& p,
                                  bool cyclic = false);

// Iterates dehn_step with free reduction after each replacement until no step
// applies. Each step strictly shortens the word, so at most |w| steps run.
// Cyclic mode additionally reduces cyclically between steps, so the final
// word of a cyclic trace is defined up to the recorded splices.
DehnTrace dehn_reduce(const Word& w, const Presentation& p, bool cyclic = false);

// One step of a trace applied to a word: splice the replacement over the
// matched range and freely reduce.
Word apply_step(const Word& w, const DehnStep& step);

struct GreendlingerReport {
  // max(ell/2, ell/2 + (ell/2)(1 - 5d - eps)): the theorem's run bound,
  // floored at the ell/2 a Dehn step needs once d passes 1/5
  double run_threshold = 0.0;
  double total_threshold = 0.0;  // ell (1 - 5d/2 - eps)
  std::vector<int> strong_faces;  // max consecutive boundary run > run_threshold
  std::vector<int> weak_faces;    // total boundary edges >= total_threshold
  bool holds = false;             // at least two strong faces
};

// The Greendlinger property of a reduced diagram with at least two faces.
GreendlingerReport greendlinger_check(const Diagram& d, double density, double eps);

// Free reduction of a product of k conjugates g r^{±1} g^{-1} with random
// g of length <= ell; represents the identity by construction.
Word random_trivial_word(const Presentation& p, int k, Rng& rng);

// One step per line: position, relator, orientation, rotation,
// matched_length, replacement word.
std::string trace_to_text(const DehnTrace& trace);

}  // namespace randgroup
