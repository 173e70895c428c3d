#include "randgroup/pieces.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "randgroup/suffix_automaton.hpp"

namespace randgroup {

namespace {

// Agreement length of the cyclic windows starting at oi in relator i (as
// written) and oj in relator j read with `orient`, capped at ell.
int window_match_length(const Presentation& p, int i, int oi, int j,
                        Orientation orient, int oj, int cap) {
  auto a = p.doubled(i, false);
  auto b = p.doubled(j, orient == Orientation::inverse);
  int k = 0;
  while (k < cap && a[static_cast<std::size_t>(oi + k)] == b[static_cast<std::size_t>(oj + k)]) {
    ++k;
  }
  return k;
}

// Maximal self-overlap of the cyclic word at distinct offsets (same
// orientation): scans every offset shift with linear extension walks.
int self_same_max(std::span<const std::int32_t> dd, int ell) {
  int best = 0;
  std::vector<int> ext(dd.size() + 1, 0);
  for (int s = 1; s < ell; ++s) {
    const int limit = 2 * ell - s;
    ext[static_cast<std::size_t>(limit)] = 0;
    for (int t = limit - 1; t >= 0; --t) {
      ext[static_cast<std::size_t>(t)] =
          dd[static_cast<std::size_t>(t)] == dd[static_cast<std::size_t>(t + s)]
              ? ext[static_cast<std::size_t>(t + 1)] + 1
              : 0;
    }
    for (int t = 0; t + s < ell; ++t) {
      best = std::max(best, std::min(ext[static_cast<std::size_t>(t)], ell));
    }
    if (best == ell) {
      break;
    }
  }
  return best;
}

// Maximal piece length between relators i and j (fast path building blocks).
int pair_max_length(const Presentation& p, const SuffixAutomaton& sam_i, int i, int j) {
  const int ell = p.ell();
  int best;
  if (i == j) {
    best = self_same_max(p.doubled(i, false), ell);
    best = std::max(best, static_cast<int>(sam_i.max_factor(p.doubled(i, true), ell)));
  } else {
    best = sam_i.max_factor(p.doubled(j, false), ell);
    best = std::max(best, static_cast<int>(sam_i.max_factor(p.doubled(j, true), ell)));
  }
  return best;
}

// Lexicographically smallest witness (offset_i, offset_j, orientation) of a
// match of exactly `length` between i and j.
PieceMatch witness_for(const Presentation& p, int i, int j, int length) {
  const int ell = p.ell();
  PieceMatch out{i, j, 0, 0, Orientation::same, length, length == ell};
  if (length == 0) {
    return out;
  }
  for (int oi = 0; oi < ell; ++oi) {
    for (int oj = 0; oj < ell; ++oj) {
      for (Orientation orient : {Orientation::same, Orientation::inverse}) {
        if (i == j && orient == Orientation::same && oi == oj) {
          continue;
        }
        if (window_match_length(p, i, oi, j, orient, oj, length) == length) {
          out.offset_i = oi;
          out.offset_j = oj;
          out.orientation = orient;
          return out;
        }
      }
    }
  }
  throw std::logic_error("witness_for: no witness at the computed maximum");
}

std::uint64_t const kHashBase = 0x100000001b3ULL;

std::vector<std::uint64_t> prefix_hashes(std::span<const std::int32_t> codes) {
  std::vector<std::uint64_t> h(codes.size() + 1, 0);
  for (std::size_t k = 0; k < codes.size(); ++k) {
    h[k + 1] = h[k] * kHashBase + static_cast<std::uint64_t>(codes[k] + 1);
  }
  return h;
}

}  // namespace

std::vector<std::int32_t> word_codes(const Word& w) {
  std::vector<std::int32_t> out;
  out.reserve(w.size());
  for (const Letter& l : w) {
    out.push_back(l.code());
  }
  return out;
}

PieceMatch max_common_piece(const Presentation& p, int i, int j) {
  if (i < 0 || i >= p.size() || j < 0 || j >= p.size()) {
    throw std::invalid_argument("max_common_piece: relator index out of range");
  }
  SuffixAutomaton sam_i(2 * p.m());
  sam_i.add_string(p.doubled(std::min(i, j), false));
  // the automaton is symmetric in the pair; build it on min(i, j) and ask for
  // the length with arguments in canonical order, the witness in call order
  int length = pair_max_length(p, sam_i, std::min(i, j), std::max(i, j));
  return witness_for(p, i, j, length);
}

PieceSpectrum piece_spectrum(const Presentation& p) {
  const int n = p.size();
  const int ell = p.ell();
  PieceSpectrum out;
  out.histogram.assign(static_cast<std::size_t>(ell) + 1, 0);
  int best = -1;
  int best_i = 0;
  int best_j = 0;
  for (int i = 0; i < n; ++i) {
    SuffixAutomaton sam_i(2 * p.m());
    sam_i.add_string(p.doubled(i, false));
    for (int j = i; j < n; ++j) {
      int length = pair_max_length(p, sam_i, i, j);
      ++out.histogram[static_cast<std::size_t>(length)];
      if (length > best) {
        best = length;
        best_i = i;
        best_j = j;
      }
    }
  }
  out.max = witness_for(p, best_i, best_j, best);
  return out;
}

CancellationReport small_cancellation_check(const Presentation& p,
                                            long long lambda_num,
                                            long long lambda_den) {
  if (lambda_num < 1 || lambda_den < 1 || lambda_num > lambda_den) {
    throw std::invalid_argument("small_cancellation_check: lambda must lie in (0, 1]");
  }
  PieceSpectrum spectrum = piece_spectrum(p);
  CancellationReport report;
  report.worst = spectrum.max;
  report.holds = static_cast<long long>(spectrum.max.length) * lambda_den <
                 lambda_num * static_cast<long long>(p.ell());
  return report;
}

void scan_sharing_pairs(const Presentation& p, int min_length,
                        const std::function<bool(const PieceMatch&)>& fn) {
  if (min_length < 1) {
    throw std::invalid_argument("scan_sharing_pairs: min_length must be >= 1");
  }
  const int ell = p.ell();
  const int n = p.size();
  if (min_length > ell || n < 2) {
    return;
  }

  std::uint64_t base_pow = 1;
  for (int k = 0; k < min_length; ++k) {
    base_pow *= kHashBase;
  }
  auto whash = [&](const std::vector<std::uint64_t>& prefix, int offset) {
    return prefix[static_cast<std::size_t>(offset + min_length)] -
           prefix[static_cast<std::size_t>(offset)] * base_pow;
  };

  struct Entry {
    std::int32_t relator;
    std::int32_t offset;
  };
  std::unordered_map<std::uint64_t, std::vector<Entry>> windows;
  windows.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(ell));

  auto extend_maximal = [&](int i, int oi, int j, Orientation orient, int oj) {
    int length = min_length;
    auto a = p.doubled(i, false);
    auto b = p.doubled(j, orient == Orientation::inverse);
    // right, then left, capped at ell
    while (length < ell &&
           a[static_cast<std::size_t>((oi + length) % ell)] ==
               b[static_cast<std::size_t>((oj + length) % ell)]) {
      ++length;
    }
    while (length < ell) {
      int ni = (oi + ell - 1) % ell;
      int nj = (oj + ell - 1) % ell;
      if (a[static_cast<std::size_t>(ni)] != b[static_cast<std::size_t>(nj)]) {
        break;
      }
      oi = ni;
      oj = nj;
      ++length;
    }
    return PieceMatch{i, j, oi, oj, orient, length, length == ell};
  };

  for (int j = 0; j < n; ++j) {
    auto prefix_fwd = prefix_hashes(p.doubled(j, false));
    auto prefix_inv = prefix_hashes(p.doubled(j, true));
    for (Orientation orient : {Orientation::same, Orientation::inverse}) {
      const auto& prefix = orient == Orientation::same ? prefix_fwd : prefix_inv;
      for (int oj = 0; oj < ell; ++oj) {
        auto it = windows.find(whash(prefix, oj));
        if (it == windows.end()) {
          continue;
        }
        for (const Entry& e : it->second) {
          if (window_match_length(p, e.relator, e.offset, j, orient, oj, min_length) ==
              min_length) {
            if (fn(extend_maximal(e.relator, e.offset, j, orient, oj))) {
              return;
            }
          }
        }
      }
    }
    for (int oj = 0; oj < ell; ++oj) {
      windows[whash(prefix_fwd, oj)].push_back(Entry{j, oj});
    }
  }
}

std::optional<PieceMatch> find_sharing_pair(const Presentation& p, int min_length) {
  std::optional<PieceMatch> found;
  scan_sharing_pairs(p, min_length, [&](const PieceMatch& match) {
    found = match;
    return true;
  });
  return found;
}

std::vector<RelatorOccurrence> find_occurrences(const Presentation& p,
                                                std::span<const std::int32_t> x,
                                                std::size_t max_hits) {
  std::vector<RelatorOccurrence> hits;
  const int ell = p.ell();
  const int len = static_cast<int>(x.size());
  if (len == 0 || len > ell || max_hits == 0) {
    return hits;
  }
  for (int i = 0; i < p.size(); ++i) {
    for (Orientation orient : {Orientation::same, Orientation::inverse}) {
      auto dd = p.doubled(i, orient == Orientation::inverse);
      for (int off = 0; off < ell; ++off) {
        int k = 0;
        while (k < len && dd[static_cast<std::size_t>(off + k)] == x[static_cast<std::size_t>(k)]) {
          ++k;
        }
        if (k == len) {
          hits.push_back(RelatorOccurrence{i, orient, off, len == ell});
          if (hits.size() >= max_hits) {
            return hits;
          }
        }
      }
    }
  }
  return hits;
}

std::optional<RelatorOccurrence> find_relator_containing(const Presentation& p,
                                                         const Word& x) {
  if (x.empty()) {
    throw std::invalid_argument("find_relator_containing: x must be nonempty");
  }
  if (static_cast<int>(x.size()) > p.ell()) {
    throw std::invalid_argument("find_relator_containing: |x| must be <= ell");
  }
  auto hits = find_occurrences(p, word_codes(x), 1);
  if (hits.empty()) {
    return std::nullopt;
  }
  return hits.front();
}

}  // namespace randgroup
