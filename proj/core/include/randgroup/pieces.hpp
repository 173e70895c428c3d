#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "randgroup/presentation.hpp"
#include "randgroup/words.hpp"

namespace randgroup {

// Relative orientation of two relator occurrences. `same` compares both
// relators as written, `inverse` compares against the inverted second one.
enum class Orientation : std::uint8_t { same = 0, inverse = 1 };

inline int face_orientation(Orientation o) { return o == Orientation::same ? +1 : -1; }

// A maximal common cyclic subword between two relator occurrences. Offsets
// are cyclic start positions (0-based); offset_j indexes into relator j read
// in the match orientation. Occurrences with i == j, same orientation and
// equal offsets are not matches.
struct PieceMatch {
  int i = 0;
  int j = 0;
  int offset_i = 0;
  int offset_j = 0;
  Orientation orientation = Orientation::same;
  int length = 0;
  // rotation/inversion coincidence: the match spans all of ell
  bool full_length = false;
};

// Maximal piece between relators i and j over all offsets and both
// orientations; i == j scans self-overlaps at distinct occurrences. The
// witness is the lexicographically smallest (offset_i, offset_j, orientation)
// attaining the maximum.
PieceMatch max_common_piece(const Presentation& p, int i, int j);

struct PieceSpectrum {
  // histogram[L] = number of unordered relator pairs {i <= j} whose maximal
  // piece has length L
  std::vector<std::int64_t> histogram;
  // global maximum with smallest (i, j, offset_i, offset_j, orientation)
  PieceMatch max;
};

// Indexed fast path (per-relator suffix automata + self-overlap shift scans).
// Must agree exactly with the brute-force pairwise oracle.
PieceSpectrum piece_spectrum(const Presentation& p);

struct CancellationReport {
  bool holds = false;
  PieceMatch worst;
};

// C'(lambda) with lambda = num/den: holds iff every piece is strictly shorter
// than lambda * ell. Comparison is exact integer arithmetic.
CancellationReport small_cancellation_check(const Presentation& p,
                                            long long lambda_num,
                                            long long lambda_den);

// First piece of length >= min_length between two distinct relators, in scan
// order: second relator ascending, then orientation (same before inverse),
// then window offset, then first relator ascending. The returned match is
// extended to its maximal length around the found window.
std::optional<PieceMatch> find_sharing_pair(const Presentation& p, int min_length);

// Enumerates the same candidates in the same order, calling fn on each until
// it returns true. Used by the construction searches.
void scan_sharing_pairs(const Presentation& p, int min_length,
                        const std::function<bool(const PieceMatch&)>& fn);

// A cyclic occurrence of a word inside an oriented relator: relator with
// orientation `same` contains x at `offset`; orientation `inverse` means the
// inverted relator does.
struct RelatorOccurrence {
  int relator = 0;
  Orientation orientation = Orientation::same;
  int offset = 0;
  bool full_length = false;
};

// First relator containing x as a cyclic subword in either orientation, in
// (relator, orientation, offset) scan order. |x| must be <= ell.
std::optional<RelatorOccurrence> find_relator_containing(const Presentation& p,
                                                         const Word& x);

// All cyclic occurrences of the code sequence x, canonical (relator,
// orientation, offset) order, at most max_hits of them.
std::vector<RelatorOccurrence> find_occurrences(
    const Presentation& p, std::span<const std::int32_t> x,
    std::size_t max_hits = static_cast<std::size_t>(-1));

std::vector<std::int32_t> word_codes(const Word& w);

}  // namespace randgroup
