#include "randgroup/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace randgroup {

namespace {

int ceil_of(double x) { return static_cast<int>(std::ceil(x - 1e-9)); }

PieceMatch truncated(const PieceMatch& match, int length) {
  PieceMatch out = match;
  out.length = length;
  out.full_length = false;
  return out;
}

std::vector<std::int32_t> inverted_codes(const std::vector<Letter>& letters) {
  std::vector<std::int32_t> out;
  out.reserve(letters.size());
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    out.push_back(it->inverse().code());
  }
  return out;
}

// Searches one 3-face block avoiding the excluded relator indices. Returns
// the result plus the circuit run data needed by the counterexample join.
std::optional<ThreeFaceResult> three_face_search(const Presentation& p, double eps,
                                                 const std::set<int>& excluded) {
  const int ell = p.ell();
  const double d = p.density();
  const int t_w = std::max(1, ceil_of((2.0 * d - eps) * ell));
  const int h = std::max(1, ceil_of((d - eps) * ell / 2.0));
  if (t_w > ell - 1 || h > ell - t_w || 2 * h > ell - 1) {
    return std::nullopt;
  }

  std::optional<ThreeFaceResult> result;
  scan_sharing_pairs(p, t_w, [&](const PieceMatch& found) {
    if (excluded.contains(found.i) || excluded.contains(found.j)) {
      return false;
    }
    std::optional<Diagram> base_opt;
    try {
      base_opt = glue_two_relators(p, truncated(found, t_w));
    } catch (const std::exception&) {
      return false;  // cancellable pair; keep scanning
    }
    const Diagram& base = *base_opt;

    const auto& circuit = base.boundary_circuit();
    const int B = static_cast<int>(circuit.size());
    // junction where face 0's boundary run hands over to face 1's
    int jpos = -1;
    for (int t = 0; t < B; ++t) {
      int fa = base.half_edges()[static_cast<std::size_t>(circuit[static_cast<std::size_t>(t)])].face;
      int fb = base.half_edges()[static_cast<std::size_t>(circuit[static_cast<std::size_t>((t + 1) % B)])].face;
      if (fa == 0 && fb == 1) {
        jpos = t;
        break;
      }
    }
    if (jpos < 0 || 2 * h > B - 1) {
      return false;
    }
    BoundaryArc arc{((jpos - h + 1) % B + B) % B, 2 * h};
    std::vector<Letter> x_letters;
    x_letters.reserve(static_cast<std::size_t>(2 * h));
    for (int k = 0; k < 2 * h; ++k) {
      x_letters.push_back(
          base.half_edges()[static_cast<std::size_t>(
                                circuit[static_cast<std::size_t>((arc.start + k) % B)])]
              .label);
    }
    for (const RelatorOccurrence& occ :
         find_occurrences(p, inverted_codes(x_letters))) {
      if (excluded.contains(occ.relator)) {
        continue;
      }
      try {
        Diagram three = glue_relator_to_boundary(base, p, occ, arc);
        ThreeFaceResult r{std::move(three),
                          {found.i, found.j, occ.relator},
                          t_w,
                          h,
                          {0, 0}};
        const auto stats = face_boundary_stats(r.diagram);
        r.retained = {stats[0].total, stats[1].total};
        // geometry of the construction: each of r1, r2 keeps ell - t_w - h
        if (r.retained[0] != ell - t_w - h || r.retained[1] != ell - t_w - h) {
          continue;
        }
        result = std::move(r);
        return true;
      } catch (const std::exception&) {
        continue;  // mismatch or cancellable r3; keep searching
      }
    }
    return false;
  });
  return result;
}

// Circuit positions of face `face` in the block, rotated to be contiguous.
std::vector<int> face_run_positions(const Diagram& d, int face) {
  const auto& circuit = d.boundary_circuit();
  const int B = static_cast<int>(circuit.size());
  // rotate to a position not owned by the face so the run reads contiguously
  int anchor = 0;
  while (anchor < B &&
         d.half_edges()[static_cast<std::size_t>(circuit[static_cast<std::size_t>(anchor)])]
                 .face == face) {
    ++anchor;
  }
  std::vector<int> out;
  for (int t = 0; t < B; ++t) {
    int pos = (anchor + t) % B;
    if (d.half_edges()[static_cast<std::size_t>(circuit[static_cast<std::size_t>(pos)])].face ==
        face) {
      out.push_back(pos);
    }
  }
  return out;
}

}  // namespace

std::optional<Diagram> build_two_face(const Presentation& p, double eps) {
  const int ell = p.ell();
  const int target = std::max(1, ceil_of((2.0 * p.density() - eps) * ell));
  if (target > ell - 1) {
    return std::nullopt;
  }
  std::optional<Diagram> out;
  scan_sharing_pairs(p, target, [&](const PieceMatch& found) {
    try {
      out = glue_two_relators(p, truncated(found, target));
      return true;
    } catch (const std::exception&) {
      return false;
    }
  });
  return out;
}

std::optional<ThreeFaceResult> build_three_face(const Presentation& p, double eps) {
  if (p.density() >= 0.4) {
    throw std::invalid_argument("build_three_face: requires d < 2/5");
  }
  return three_face_search(p, eps, {});
}

std::optional<CounterexampleResult> build_counterexample(const Presentation& p,
                                                         double eps) {
  auto block1 = three_face_search(p, eps, {});
  if (!block1) {
    return std::nullopt;
  }
  std::set<int> used(block1->relators.begin(), block1->relators.end());
  if (used.size() != 3) {
    return std::nullopt;  // the first triple reused a relator; no independent pair
  }
  auto block2 = three_face_search(p, eps, used);
  if (!block2) {
    return std::nullopt;
  }

  const int ell = p.ell();
  const int region = std::max(1, ell / 5);
  auto region_of = [&](const Diagram& d) {
    std::vector<int> run = face_run_positions(d, 2);
    if (run.size() < 3) {
      return std::vector<int>{};
    }
    // keep the join away from the run ends so the joined faces become bad
    run.erase(run.begin());
    run.pop_back();
    const int len = static_cast<int>(run.size());
    const int take = std::min(region, len);
    const int lo = (len - take) / 2;
    return std::vector<int>(run.begin() + lo, run.begin() + lo + take);
  };
  const auto region1 = region_of(block1->diagram);
  const auto region2 = region_of(block2->diagram);

  for (int pos1 : region1) {
    Letter l1 = block1->diagram.half_edges()
                    [static_cast<std::size_t>(
                        block1->diagram.boundary_circuit()[static_cast<std::size_t>(pos1)])]
                        .label;
    for (int pos2 : region2) {
      Letter l2 = block2->diagram.half_edges()
                      [static_cast<std::size_t>(
                          block2->diagram.boundary_circuit()[static_cast<std::size_t>(pos2)])]
                          .label;
      if (!(l2 == l1.inverse())) {
        continue;
      }
      try {
        Diagram joined = glue_diagrams_along(block1->diagram, BoundaryArc{pos1, 1},
                                             block2->diagram, BoundaryArc{pos2, 1});
        CounterexampleResult out{std::move(joined),
                                 {block1->relators[0], block1->relators[1],
                                  block1->relators[2], block2->relators[0],
                                  block2->relators[1], block2->relators[2]}};
        return out;
      } catch (const std::exception&) {
        continue;
      }
    }
  }
  return std::nullopt;
}

bool verify_no_dehn_face(const Diagram& d) {
  for (const FaceBoundaryStats& s : face_boundary_stats(d)) {
    if (2 * s.max_run > d.ell()) {
      return false;
    }
  }
  return true;
}

}  // namespace randgroup
