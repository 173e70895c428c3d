#include "randgroup/dehn.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "randgroup/suffix_automaton.hpp"

namespace randgroup {

namespace {

// Longest corpus factor (over all doubled relators, both orientations)
// starting at each position of the codes, capped at ell.
std::vector<int> max_match_starting_at(std::span<const std::int32_t> codes,
                                       const Presentation& p) {
  const int n = static_cast<int>(codes.size());
  const int ell = p.ell();
  std::vector<int> start_len(static_cast<std::size_t>(n), 0);
  if (n == 0) {
    return start_len;
  }
  CrossMatcher matcher(codes, 2 * p.m());
  for (int i = 0; i < p.size(); ++i) {
    matcher.scan_stream(p.doubled(i, false));
    matcher.scan_stream(p.doubled(i, true));
  }
  const auto end_len = matcher.best_ending_at();

  // factors are closed under substrings, so maxlen(start) shrinks by at most
  // one per shift: two-pointer conversion from end-anchored to start-anchored
  int len = 0;
  for (int s = 0; s < n; ++s) {
    len = std::max(len - 1, 0);
    while (s + len < n && end_len[static_cast<std::size_t>(s + len)] >= len + 1) {
      ++len;
    }
    start_len[static_cast<std::size_t>(s)] = std::min(len, ell);
  }
  return start_len;
}

}  // namespace

std::optional<DehnStep> dehn_step(const Word& w, const Presentation& p,
                                  bool cyclic) {
  const int ell = p.ell();
  const int threshold = ell / 2 + 1;  // matched_length > ell/2
  const int n = static_cast<int>(w.size());
  if (n < threshold) {
    return std::nullopt;
  }
  auto codes = word_codes(w);
  if (cyclic) {
    // windows may wrap: scan the doubled word, starts restricted to [0, n)
    codes.insert(codes.end(), codes.begin(), codes.begin() + n);
  }
  const auto start_len = max_match_starting_at(codes, p);

  for (int s = 0; s < n; ++s) {
    int length = start_len[static_cast<std::size_t>(s)];
    if (cyclic) {
      length = std::min(length, n);  // a window never exceeds the cyclic word
    }
    if (length < threshold) {
      continue;
    }
    auto window = std::span(codes).subspan(static_cast<std::size_t>(s),
                                           static_cast<std::size_t>(length));
    auto hits = find_occurrences(p, window, 1);
    if (hits.empty()) {
      throw std::logic_error("dehn_step: index and scan disagree");
    }
    const RelatorOccurrence& occ = hits.front();
    std::vector<Letter> rest;
    rest.reserve(static_cast<std::size_t>(ell - length));
    for (int k = length; k < ell; ++k) {
      rest.push_back(
          p.oriented_letter(occ.relator, face_orientation(occ.orientation), occ.offset + k));
    }
    DehnStep step;
    step.position = s;
    step.relator = occ.relator;
    step.orientation = occ.orientation;
    step.rotation = occ.offset;
    step.matched_length = length;
    step.replacement = invert(Word::from_reduced(std::move(rest)));
    return step;
  }
  return std::nullopt;
}

Word apply_step(const Word& w, const DehnStep& step) {
  if (step.position < 0 ||
      step.position + step.matched_length > static_cast<int>(w.size())) {
    throw std::invalid_argument("apply_step: step range outside the word");
  }
  std::vector<Letter> raw;
  raw.reserve(w.size() - static_cast<std::size_t>(step.matched_length) +
              step.replacement.size());
  raw.insert(raw.end(), w.begin(), w.begin() + step.position);
  raw.insert(raw.end(), step.replacement.begin(), step.replacement.end());
  raw.insert(raw.end(), w.begin() + step.position + step.matched_length, w.end());
  return free_reduce(raw);
}

namespace {

// splice for a wrapped match: keep the cyclic complement starting after the
// window, then append the replacement
Word apply_cyclic_step(const Word& w, const DehnStep& step) {
  const int n = static_cast<int>(w.size());
  std::vector<Letter> raw;
  const int tail_start = (step.position + step.matched_length) % n;
  for (int k = 0; k < n - step.matched_length; ++k) {
    raw.push_back(w[static_cast<std::size_t>((tail_start + k) % n)]);
  }
  raw.insert(raw.end(), step.replacement.begin(), step.replacement.end());
  return free_reduce(raw);
}

}  // namespace

DehnTrace dehn_reduce(const Word& w, const Presentation& p, bool cyclic) {
  DehnTrace trace;
  Word current = cyclic ? cyclic_reduce(w) : w;
  const std::size_t step_budget = w.size() + 1;
  while (auto step = dehn_step(current, p, cyclic)) {
    const bool wrapped =
        step->position + step->matched_length > static_cast<int>(current.size());
    Word next = wrapped ? apply_cyclic_step(current, *step) : apply_step(current, *step);
    if (next.size() >= current.size()) {
      throw std::logic_error("dehn_reduce: step did not shrink the word");
    }
    trace.steps.push_back(std::move(*step));
    current = cyclic ? cyclic_reduce(next) : std::move(next);
    if (trace.steps.size() > step_budget) {
      throw std::logic_error("dehn_reduce: step budget exceeded");
    }
  }
  trace.final = std::move(current);
  return trace;
}

GreendlingerReport greendlinger_check(const Diagram& d, double density, double eps) {
  if (d.face_count() < 2) {
    throw std::invalid_argument("greendlinger_check: needs at least two faces");
  }
  const double ell = d.ell();
  GreendlingerReport report;
  // beyond d = 1/5 the theorem's bound drops below ell/2; a usable face still
  // needs a run the Dehn algorithm can consume, so the threshold floors there
  report.run_threshold =
      std::max(ell / 2.0, ell / 2.0 + (ell / 2.0) * (1.0 - 5.0 * density - eps));
  report.total_threshold = ell * (1.0 - 2.5 * density - eps);
  const auto stats = face_boundary_stats(d);
  for (int f = 0; f < d.face_count(); ++f) {
    const auto& s = stats[static_cast<std::size_t>(f)];
    if (static_cast<double>(s.max_run) > report.run_threshold) {
      report.strong_faces.push_back(f);
    }
    if (static_cast<double>(s.total) >= report.total_threshold) {
      report.weak_faces.push_back(f);
    }
  }
  report.holds = report.strong_faces.size() >= 2;
  return report;
}

Word random_trivial_word(const Presentation& p, int k, Rng& rng) {
  if (k < 0) {
    throw std::invalid_argument("random_trivial_word: k must be >= 0");
  }
  std::vector<Letter> raw;
  for (int t = 0; t < k; ++t) {
    const int glen = static_cast<int>(rng.below(static_cast<std::uint64_t>(p.ell()) + 1));
    Word g = sample_reduced_word(p.m(), glen, rng);
    const int r = static_cast<int>(rng.below(static_cast<std::uint64_t>(p.size())));
    const bool inv = rng.below(2) == 1;
    const Word& rel = p.relator(r);
    raw.insert(raw.end(), g.begin(), g.end());
    if (inv) {
      Word ri = invert(rel);
      raw.insert(raw.end(), ri.begin(), ri.end());
    } else {
      raw.insert(raw.end(), rel.begin(), rel.end());
    }
    Word gi = invert(g);
    raw.insert(raw.end(), gi.begin(), gi.end());
  }
  return free_reduce(raw);
}

std::string trace_to_text(const DehnTrace& trace) {
  std::ostringstream out;
  for (const DehnStep& s : trace.steps) {
    out << s.position << ' ' << s.relator << ' '
        << (s.orientation == Orientation::same ? "same" : "inverse") << ' ' << s.rotation
        << ' ' << s.matched_length << ' '
        << (s.replacement.empty() ? "-" : format_word(s.replacement)) << '\n';
  }
  out << "final " << (trace.final.empty() ? "-" : format_word(trace.final)) << '\n';
  return out.str();
}

}  // namespace randgroup
