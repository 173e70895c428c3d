#pragma once

// Brute-force piece oracle: exhaustive offset x offset x orientation scan on
// Word values, independent of the indexed fast path in the library. Kept
// permanently as the reference for spectrum and witness checks.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "randgroup/presentation.hpp"
#include "randgroup/words.hpp"

namespace randgroup::test {

inline Letter cyclic_letter(const Word& w, int pos, bool inverted) {
  const int n = static_cast<int>(w.size());
  pos = ((pos % n) + n) % n;
  if (!inverted) {
    return w[static_cast<std::size_t>(pos)];
  }
  return w[static_cast<std::size_t>(n - 1 - pos)].inverse();
}

// Longest agreement of the cyclic windows, capped at the word length.
inline int oracle_window_match(const Word& a, int oa, const Word& b, bool inverted,
                               int ob, int cap) {
  int k = 0;
  while (k < cap &&
         cyclic_letter(a, oa + k, false) == cyclic_letter(b, ob + k, inverted)) {
    ++k;
  }
  return k;
}

inline int oracle_pair_max(const Word& a, const Word& b, bool same_word) {
  const int n = static_cast<int>(a.size());
  int best = 0;
  for (int inverted = 0; inverted < 2; ++inverted) {
    for (int oa = 0; oa < n; ++oa) {
      for (int ob = 0; ob < n; ++ob) {
        if (same_word && inverted == 0 && oa == ob) {
          continue;
        }
        best = std::max(best, oracle_window_match(a, oa, b, inverted == 1, ob, n));
      }
    }
  }
  return best;
}

struct OracleSpectrum {
  std::vector<std::int64_t> histogram;
  int max = 0;
  int max_i = 0;
  int max_j = 0;
};

inline OracleSpectrum oracle_spectrum(const Presentation& p) {
  OracleSpectrum out;
  out.histogram.assign(static_cast<std::size_t>(p.ell()) + 1, 0);
  int best = -1;
  for (int i = 0; i < p.size(); ++i) {
    for (int j = i; j < p.size(); ++j) {
      int length = oracle_pair_max(p.relator(i), p.relator(j), i == j);
      ++out.histogram[static_cast<std::size_t>(length)];
      if (length > best) {
        best = length;
        out.max_i = i;
        out.max_j = j;
      }
    }
  }
  out.max = best;
  return out;
}

}  // namespace randgroup::test
