#include "randgroup/diagram.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace randgroup {

namespace {

// Disjoint-set over n slots, path halving.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::int32_t find(std::int32_t x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] =
          parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) {
      parent_[static_cast<std::size_t>(b)] = a;
    }
  }

 private:
  std::vector<std::int32_t> parent_;
};

}  // namespace

Diagram Diagram::single_face(const Presentation& p, int relator, int orientation,
                             int rotation) {
  if (relator < 0 || relator >= p.size()) {
    throw std::invalid_argument("single_face: relator index out of range");
  }
  if (orientation != +1 && orientation != -1) {
    throw std::invalid_argument("single_face: orientation must be +1 or -1");
  }
  const int ell = p.ell();
  rotation = ((rotation % ell) + ell) % ell;
  std::vector<HalfEdge> half(static_cast<std::size_t>(ell));
  for (int k = 0; k < ell; ++k) {
    half[static_cast<std::size_t>(k)] = HalfEdge{
        HalfEdge::kBoundary, (k + 1) % ell, 0,
        p.oriented_letter(relator, orientation, rotation + k)};
  }
  return from_parts(ell, std::move(half), {FaceRecord{relator, orientation, rotation, 0}});
}

Diagram Diagram::from_parts(int ell, std::vector<HalfEdge> half_edges,
                            std::vector<FaceRecord> faces) {
  Diagram d;
  d.ell_ = ell;
  d.half_ = std::move(half_edges);
  d.faces_ = std::move(faces);
  d.derive();
  return d;
}

void Diagram::derive() {
  const auto H = static_cast<std::int32_t>(half_.size());
  if (H == 0 || faces_.empty()) {
    throw std::invalid_argument("diagram: needs at least one face and one half-edge");
  }
  for (std::int32_t h = 0; h < H; ++h) {
    const HalfEdge& e = half_[static_cast<std::size_t>(h)];
    if (e.next < 0 || e.next >= H) {
      throw std::invalid_argument("diagram: next index out of range");
    }
    if (e.face < 0 || e.face >= static_cast<std::int32_t>(faces_.size())) {
      throw std::invalid_argument("diagram: face index out of range");
    }
    if (e.twin != HalfEdge::kBoundary) {
      if (e.twin < 0 || e.twin >= H || e.twin == h ||
          half_[static_cast<std::size_t>(e.twin)].twin != h) {
        throw std::invalid_argument("diagram: twin is not an involution");
      }
    }
  }
  for (const FaceRecord& f : faces_) {
    if (f.start < 0 || f.start >= H) {
      throw std::invalid_argument("diagram: face start out of range");
    }
  }

  // Vertices: origins of half-edges, identified through interior edges
  // (origin of twin(e) is the head of e, i.e. the origin of next(e)).
  UnionFind uf(static_cast<std::size_t>(H));
  for (std::int32_t h = 0; h < H; ++h) {
    const HalfEdge& e = half_[static_cast<std::size_t>(h)];
    if (e.twin != HalfEdge::kBoundary) {
      uf.unite(e.twin, e.next);
    }
  }
  vertex_.assign(static_cast<std::size_t>(H), -1);
  std::vector<std::int32_t> root_to_id(static_cast<std::size_t>(H), -1);
  std::int32_t next_id = 0;
  for (std::int32_t h = 0; h < H; ++h) {
    std::int32_t r = uf.find(h);
    if (root_to_id[static_cast<std::size_t>(r)] == -1) {
      root_to_id[static_cast<std::size_t>(r)] = next_id++;
    }
    vertex_[static_cast<std::size_t>(h)] = root_to_id[static_cast<std::size_t>(r)];
  }
  vertex_count_ = next_id;

  boundary_length_ = 0;
  std::int64_t interior_sides = 0;
  for (const HalfEdge& e : half_) {
    if (e.twin == HalfEdge::kBoundary) {
      ++boundary_length_;
    } else {
      ++interior_sides;
    }
  }
  interior_edges_ = interior_sides / 2;
  edge_count_ = interior_edges_ + boundary_length_;

  // Connectivity of the 1-skeleton.
  UnionFind cc(static_cast<std::size_t>(vertex_count_));
  for (std::int32_t h = 0; h < H; ++h) {
    cc.unite(vertex_[static_cast<std::size_t>(h)],
             vertex_[static_cast<std::size_t>(half_[static_cast<std::size_t>(h)].next)]);
  }
  connected_ = true;
  for (std::int32_t v = 1; v < vertex_count_; ++v) {
    if (cc.find(v) != cc.find(0)) {
      connected_ = false;
      break;
    }
  }

  // Boundary circuits by corner walk: after a boundary side, pivot around its
  // head through interior edges until the next boundary side.
  auto boundary_succ = [&](std::int32_t h) {
    std::int32_t j = half_[static_cast<std::size_t>(h)].next;
    std::int32_t guard = 0;
    while (half_[static_cast<std::size_t>(j)].twin != HalfEdge::kBoundary) {
      j = half_[static_cast<std::size_t>(half_[static_cast<std::size_t>(j)].twin)].next;
      if (++guard > H) {
        throw std::invalid_argument("diagram: corner walk does not terminate");
      }
    }
    return j;
  };
  circuits_.clear();
  std::vector<char> visited(static_cast<std::size_t>(H), 0);
  for (std::int32_t h = 0; h < H; ++h) {
    if (half_[static_cast<std::size_t>(h)].twin != HalfEdge::kBoundary ||
        visited[static_cast<std::size_t>(h)]) {
      continue;
    }
    std::vector<std::int32_t> circuit;
    std::int32_t cur = h;
    do {
      if (visited[static_cast<std::size_t>(cur)]) {
        throw std::invalid_argument("diagram: boundary circuits are inconsistent");
      }
      visited[static_cast<std::size_t>(cur)] = 1;
      circuit.push_back(cur);
      cur = boundary_succ(cur);
    } while (cur != h);
    circuits_.push_back(std::move(circuit));
  }
}

const std::vector<std::int32_t>& Diagram::boundary_circuit() const {
  if (circuits_.size() != 1) {
    throw std::logic_error("diagram: not a single-circuit diagram");
  }
  return circuits_.front();
}

std::vector<std::int32_t> Diagram::face_cycle(int f) const {
  const auto H = static_cast<std::int32_t>(half_.size());
  std::vector<std::int32_t> cycle;
  std::int32_t start = faces_.at(static_cast<std::size_t>(f)).start;
  std::int32_t cur = start;
  do {
    cycle.push_back(cur);
    cur = half_[static_cast<std::size_t>(cur)].next;
  } while (cur != start && static_cast<std::int32_t>(cycle.size()) <= H);
  return cycle;
}

std::vector<Letter> Diagram::boundary_letters() const {
  std::vector<Letter> out;
  for (std::int32_t h : boundary_circuit()) {
    out.push_back(half_[static_cast<std::size_t>(h)].label);
  }
  return out;
}

std::vector<std::int32_t> Diagram::boundary_codes() const {
  std::vector<std::int32_t> out;
  for (std::int32_t h : boundary_circuit()) {
    out.push_back(half_[static_cast<std::size_t>(h)].label.code());
  }
  return out;
}

ValidationReport validate(const Diagram& d, const Presentation& p) {
  ValidationReport report;
  auto fail = [&](std::string msg) {
    report.valid = false;
    report.violations.push_back(std::move(msg));
  };

  if (d.ell() != p.ell()) {
    fail("diagram ell differs from presentation ell");
  }

  const auto& half = d.half_edges();
  const auto H = static_cast<std::int32_t>(half.size());

  for (std::int32_t h = 0; h < H; ++h) {
    std::int32_t t = half[static_cast<std::size_t>(h)].twin;
    if (t == HalfEdge::kBoundary) {
      continue;
    }
    if (half[static_cast<std::size_t>(t)].twin != h) {
      fail("twin is not an involution at half-edge " + std::to_string(h));
      continue;
    }
    if (!(half[static_cast<std::size_t>(h)].label ==
          half[static_cast<std::size_t>(t)].label.inverse())) {
      fail("twinned labels are not mutually inverse at half-edge " + std::to_string(h));
    }
  }

  std::vector<char> in_cycle(static_cast<std::size_t>(H), 0);
  for (int f = 0; f < d.face_count(); ++f) {
    const FaceRecord& rec = d.faces()[static_cast<std::size_t>(f)];
    if (rec.relator < 0 || rec.relator >= p.size()) {
      fail("face " + std::to_string(f) + ": relator index out of range");
      continue;
    }
    if (rec.orientation != +1 && rec.orientation != -1) {
      fail("face " + std::to_string(f) + ": orientation must be +1 or -1");
      continue;
    }
    auto cycle = d.face_cycle(f);
    if (static_cast<int>(cycle.size()) != p.ell()) {
      fail("face " + std::to_string(f) + ": cycle length " +
           std::to_string(cycle.size()) + " != ell");
      continue;
    }
    for (std::size_t c = 0; c < cycle.size(); ++c) {
      std::int32_t h = cycle[c];
      if (in_cycle[static_cast<std::size_t>(h)]) {
        fail("half-edge " + std::to_string(h) + " appears in two face cycles");
      }
      in_cycle[static_cast<std::size_t>(h)] = 1;
      if (half[static_cast<std::size_t>(h)].face != f) {
        fail("half-edge " + std::to_string(h) + " has wrong face field");
      }
      Letter expected = p.oriented_letter(rec.relator, rec.orientation,
                                          rec.rotation + static_cast<int>(c));
      if (!(half[static_cast<std::size_t>(h)].label == expected)) {
        fail("face " + std::to_string(f) + ": cycle does not spell its relator at position " +
             std::to_string(c));
        break;
      }
    }
  }
  for (std::int32_t h = 0; h < H; ++h) {
    if (!in_cycle[static_cast<std::size_t>(h)]) {
      fail("half-edge " + std::to_string(h) + " belongs to no face cycle");
    }
  }

  if (!d.connected()) {
    fail("diagram is not connected");
  }
  if (d.euler_characteristic() != 1) {
    fail("Euler characteristic V - E + F = " + std::to_string(d.euler_characteristic()) +
         " != 1");
  }
  if (d.boundary_circuits().size() != 1) {
    fail("expected one boundary circuit, found " +
         std::to_string(d.boundary_circuits().size()));
  }
  return report;
}

namespace {

// Mirror test across an interior edge: the two faces cancel iff walking
// forward around one face reads the inverse of walking backward around the
// other, for the full relator length.
bool cancellable_across(const Diagram& d, std::int32_t h) {
  const auto& half = d.half_edges();
  std::int32_t t = half[static_cast<std::size_t>(h)].twin;
  const FaceRecord& fa = d.faces()[static_cast<std::size_t>(half[static_cast<std::size_t>(h)].face)];
  const FaceRecord& fb = d.faces()[static_cast<std::size_t>(half[static_cast<std::size_t>(t)].face)];
  if (fa.relator != fb.relator || fa.orientation != -fb.orientation) {
    return false;
  }
  auto cyc_a = d.face_cycle(half[static_cast<std::size_t>(h)].face);
  auto cyc_b = d.face_cycle(half[static_cast<std::size_t>(t)].face);
  const int ell = static_cast<int>(cyc_a.size());
  if (static_cast<int>(cyc_b.size()) != ell) {
    return false;
  }
  int pos_a = static_cast<int>(std::find(cyc_a.begin(), cyc_a.end(), h) - cyc_a.begin());
  int pos_b = static_cast<int>(std::find(cyc_b.begin(), cyc_b.end(), t) - cyc_b.begin());
  for (int k = 0; k < ell; ++k) {
    Letter la = half[static_cast<std::size_t>(cyc_a[static_cast<std::size_t>((pos_a + k) % ell)])].label;
    Letter lb = half[static_cast<std::size_t>(cyc_b[static_cast<std::size_t>(((pos_b - k) % ell + ell) % ell)])].label;
    if (!(la == lb.inverse())) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool is_reduced_diagram(const Diagram& d) {
  const auto& half = d.half_edges();
  for (std::int32_t h = 0; h < static_cast<std::int32_t>(half.size()); ++h) {
    std::int32_t t = half[static_cast<std::size_t>(h)].twin;
    if (t == HalfEdge::kBoundary || t < h) {
      continue;
    }
    if (cancellable_across(d, h)) {
      return false;
    }
  }
  return true;
}

IsoperimetryReport isoperimetric_check(const Diagram& d, double density, double eps) {
  if (!d.is_disc()) {
    throw std::invalid_argument("isoperimetric_check: disc diagrams only");
  }
  IsoperimetryReport report;
  report.faces = d.face_count();
  report.boundary = d.boundary_length();
  report.threshold = 1.0 - 2.0 * density - eps;
  const double scale = static_cast<double>(d.ell()) * static_cast<double>(report.faces);
  report.ratio = static_cast<double>(report.boundary) / scale;
  const double target = report.threshold * scale;
  report.holds =
      report.boundary >= static_cast<std::int64_t>(std::ceil(target - 1e-9));
  return report;
}

Diagram glue_two_relators(const Presentation& p, const PieceMatch& match) {
  const int ell = p.ell();
  const int i = match.i;
  const int j = match.j;
  const int L = match.length;
  if (i < 0 || i >= p.size() || j < 0 || j >= p.size()) {
    throw std::invalid_argument("glue_two_relators: relator index out of range");
  }
  if (L < 1) {
    throw std::invalid_argument("glue_two_relators: empty match");
  }
  if (L >= ell) {
    throw std::invalid_argument("glue_two_relators: full-length match would close a sphere");
  }
  if (i == j && match.orientation == Orientation::same && match.offset_i == match.offset_j) {
    throw std::invalid_argument("glue_two_relators: a match needs distinct occurrences");
  }
  {
    auto a = p.doubled(i, false);
    auto b = p.doubled(j, match.orientation == Orientation::inverse);
    for (int k = 0; k < L; ++k) {
      if (a[static_cast<std::size_t>(match.offset_i + k)] !=
          b[static_cast<std::size_t>(match.offset_j + k)]) {
        throw std::invalid_argument("glue_two_relators: match does not hold");
      }
    }
  }

  const int orient_b = match.orientation == Orientation::same ? -1 : +1;
  std::vector<HalfEdge> half(static_cast<std::size_t>(2 * ell));
  for (int q = 0; q < ell; ++q) {
    half[static_cast<std::size_t>(q)] =
        HalfEdge{HalfEdge::kBoundary, (q + 1) % ell, 0, p.oriented_letter(i, +1, q)};
    half[static_cast<std::size_t>(ell + q)] =
        HalfEdge{HalfEdge::kBoundary, ell + (q + 1) % ell, 1,
                 p.oriented_letter(j, orient_b, q)};
  }
  for (int k = 0; k < L; ++k) {
    const int a = (match.offset_i + k) % ell;
    const int b = ell + (((ell - 1 - match.offset_j - k) % ell + ell) % ell);
    half[static_cast<std::size_t>(a)].twin = b;
    half[static_cast<std::size_t>(b)].twin = a;
    if (!(half[static_cast<std::size_t>(b)].label ==
          half[static_cast<std::size_t>(a)].label.inverse())) {
      throw std::logic_error("glue_two_relators: twin label mismatch");
    }
  }
  Diagram d = Diagram::from_parts(
      ell, std::move(half),
      {FaceRecord{i, +1, 0, 0}, FaceRecord{j, orient_b, 0, ell}});
  if (!is_reduced_diagram(d)) {
    throw std::runtime_error("glue_two_relators: unreduced gluing (cancellable pair)");
  }
  return d;
}

Diagram glue_relator_to_boundary(const Diagram& d, const Presentation& p,
                                 const RelatorOccurrence& occ, BoundaryArc arc) {
  if (!d.is_disc()) {
    throw std::invalid_argument("glue_relator_to_boundary: disc diagrams only");
  }
  const int ell = d.ell();
  if (ell != p.ell()) {
    throw std::invalid_argument("glue_relator_to_boundary: ell mismatch");
  }
  const auto& circuit = d.boundary_circuit();
  const int B = static_cast<int>(circuit.size());
  const int L = arc.length;
  if (L < 1 || L > ell - 1) {
    throw std::invalid_argument("glue_relator_to_boundary: arc length must lie in [1, ell-1]");
  }
  if (L >= B) {
    throw std::invalid_argument("glue_relator_to_boundary: arc exceeds the boundary");
  }
  if (arc.start < 0 || arc.start >= B) {
    throw std::invalid_argument("glue_relator_to_boundary: arc start out of range");
  }
  if (occ.relator < 0 || occ.relator >= p.size() || occ.offset < 0 || occ.offset >= ell) {
    throw std::invalid_argument("glue_relator_to_boundary: bad occurrence");
  }

  const int orient = face_orientation(occ.orientation);
  std::vector<std::int32_t> arc_ids(static_cast<std::size_t>(L));
  for (int k = 0; k < L; ++k) {
    arc_ids[static_cast<std::size_t>(k)] =
        circuit[static_cast<std::size_t>((arc.start + k) % B)];
  }
  // the new face must spell invert(arc word) at occ.offset
  for (int k = 0; k < L; ++k) {
    Letter face_letter = p.oriented_letter(occ.relator, orient, occ.offset + k);
    Letter arc_letter =
        d.half_edges()[static_cast<std::size_t>(arc_ids[static_cast<std::size_t>(L - 1 - k)])]
            .label;
    if (!(face_letter == arc_letter.inverse())) {
      throw std::invalid_argument(
          "glue_relator_to_boundary: occurrence does not match the boundary arc");
    }
  }
  // arc must be a simple path
  {
    std::vector<int> verts;
    verts.reserve(static_cast<std::size_t>(L) + 1);
    verts.push_back(d.vertex_of(arc_ids[0]));
    for (int k = 0; k < L; ++k) {
      verts.push_back(d.head_of(arc_ids[static_cast<std::size_t>(k)]));
    }
    std::vector<int> sorted = verts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("glue_relator_to_boundary: non-disc result (arc not simple)");
    }
  }

  std::vector<HalfEdge> half = d.half_edges();
  const auto H = static_cast<std::int32_t>(half.size());
  const int new_face = d.face_count();
  for (int q = 0; q < ell; ++q) {
    half.push_back(HalfEdge{HalfEdge::kBoundary, H + (q + 1) % ell, new_face,
                            p.oriented_letter(occ.relator, orient, q)});
  }
  for (int k = 0; k < L; ++k) {
    const int qk = ((occ.offset + L - 1 - k) % ell + ell) % ell;
    const std::int32_t a = arc_ids[static_cast<std::size_t>(k)];
    const std::int32_t b = H + qk;
    half[static_cast<std::size_t>(a)].twin = b;
    half[static_cast<std::size_t>(b)].twin = a;
  }
  std::vector<FaceRecord> faces = d.faces();
  faces.push_back(FaceRecord{occ.relator, orient, 0, H});
  Diagram out = Diagram::from_parts(ell, std::move(half), std::move(faces));
  if (!out.is_disc()) {
    throw std::runtime_error("glue_relator_to_boundary: non-disc result");
  }
  if (!is_reduced_diagram(out)) {
    throw std::runtime_error("glue_relator_to_boundary: cancellable pair");
  }
  return out;
}

Diagram glue_diagrams_along(const Diagram& a, BoundaryArc arc_a, const Diagram& b,
                            BoundaryArc arc_b) {
  if (!a.is_disc() || !b.is_disc()) {
    throw std::invalid_argument("glue_diagrams_along: disc diagrams only");
  }
  if (a.ell() != b.ell()) {
    throw std::invalid_argument("glue_diagrams_along: ell mismatch");
  }
  if (arc_a.length != arc_b.length || arc_a.length < 1) {
    throw std::invalid_argument("glue_diagrams_along: arcs must share a positive length");
  }
  const int L = arc_a.length;
  const auto& ca = a.boundary_circuit();
  const auto& cb = b.boundary_circuit();
  const int Ba = static_cast<int>(ca.size());
  const int Bb = static_cast<int>(cb.size());
  if (L > Ba || L > Bb || arc_a.start < 0 || arc_a.start >= Ba || arc_b.start < 0 ||
      arc_b.start >= Bb) {
    throw std::invalid_argument("glue_diagrams_along: arc out of range");
  }

  std::vector<std::int32_t> ids_a(static_cast<std::size_t>(L));
  std::vector<std::int32_t> ids_b(static_cast<std::size_t>(L));
  for (int k = 0; k < L; ++k) {
    ids_a[static_cast<std::size_t>(k)] = ca[static_cast<std::size_t>((arc_a.start + k) % Ba)];
    ids_b[static_cast<std::size_t>(k)] = cb[static_cast<std::size_t>((arc_b.start + k) % Bb)];
  }
  // arc words must be w and invert(w)
  for (int k = 0; k < L; ++k) {
    Letter la = a.half_edges()[static_cast<std::size_t>(ids_a[static_cast<std::size_t>(k)])].label;
    Letter lb =
        b.half_edges()[static_cast<std::size_t>(ids_b[static_cast<std::size_t>(L - 1 - k)])].label;
    if (!(lb == la.inverse())) {
      throw std::invalid_argument("glue_diagrams_along: arc words do not match");
    }
  }
  auto check_simple = [](const Diagram& d, const std::vector<std::int32_t>& ids) {
    std::vector<int> verts;
    verts.push_back(d.vertex_of(ids[0]));
    for (std::int32_t h : ids) {
      verts.push_back(d.head_of(h));
    }
    std::vector<int> sorted = verts;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  };
  if (!check_simple(a, ids_a) || !check_simple(b, ids_b)) {
    throw std::invalid_argument("glue_diagrams_along: arc not simple");
  }

  const auto shift = static_cast<std::int32_t>(a.half_edges().size());
  const int face_shift = a.face_count();
  std::vector<HalfEdge> half = a.half_edges();
  half.reserve(half.size() + b.half_edges().size());
  for (HalfEdge e : b.half_edges()) {
    if (e.twin != HalfEdge::kBoundary) {
      e.twin += shift;
    }
    e.next += shift;
    e.face += face_shift;
    half.push_back(e);
  }
  for (int k = 0; k < L; ++k) {
    const std::int32_t ha = ids_a[static_cast<std::size_t>(k)];
    const std::int32_t hb = shift + ids_b[static_cast<std::size_t>(L - 1 - k)];
    half[static_cast<std::size_t>(ha)].twin = hb;
    half[static_cast<std::size_t>(hb)].twin = ha;
  }
  std::vector<FaceRecord> faces = a.faces();
  for (FaceRecord f : b.faces()) {
    f.start += shift;
    faces.push_back(f);
  }
  Diagram out = Diagram::from_parts(a.ell(), std::move(half), std::move(faces));
  if (!out.is_disc()) {
    throw std::runtime_error("glue_diagrams_along: non-disc gluing");
  }
  for (int k = 0; k < L; ++k) {
    if (cancellable_across(out, ids_a[static_cast<std::size_t>(k)])) {
      throw std::runtime_error("glue_diagrams_along: unreduced around w");
    }
  }
  return out;
}

bool macroscopic_cancellation_check(const Diagram& a, const Diagram& b,
                                    std::int64_t w_length, double density,
                                    double eps) {
  const double bound =
      density * static_cast<double>(a.boundary_length() + b.boundary_length()) *
      (1.0 + eps);
  return static_cast<double>(w_length) <= bound;
}

std::vector<Diagram> remove_face(const Diagram& d, int face) {
  if (face < 0 || face >= d.face_count()) {
    throw std::invalid_argument("remove_face: face index out of range");
  }
  if (d.face_count() == 1) {
    return {};
  }
  const auto& half = d.half_edges();
  const auto H = static_cast<std::int32_t>(half.size());

  // edge-connected components of the remaining faces
  UnionFind uf(static_cast<std::size_t>(d.face_count()));
  for (std::int32_t h = 0; h < H; ++h) {
    const HalfEdge& e = half[static_cast<std::size_t>(h)];
    if (e.twin == HalfEdge::kBoundary) {
      continue;
    }
    int fa = e.face;
    int fb = half[static_cast<std::size_t>(e.twin)].face;
    if (fa != face && fb != face) {
      uf.unite(fa, fb);
    }
  }
  std::vector<int> comp_of_face(static_cast<std::size_t>(d.face_count()), -1);
  int comp_count = 0;
  for (int f = 0; f < d.face_count(); ++f) {
    if (f == face) {
      continue;
    }
    int root = uf.find(f);
    int seen = -1;
    for (int g = 0; g < f; ++g) {
      if (g != face && uf.find(g) == root) {
        seen = comp_of_face[static_cast<std::size_t>(g)];
        break;
      }
    }
    comp_of_face[static_cast<std::size_t>(f)] = seen == -1 ? comp_count++ : seen;
  }

  std::vector<Diagram> out;
  out.reserve(static_cast<std::size_t>(comp_count));
  for (int c = 0; c < comp_count; ++c) {
    std::vector<std::int32_t> id_map(static_cast<std::size_t>(H), -1);
    std::vector<std::int32_t> members;
    for (std::int32_t h = 0; h < H; ++h) {
      int f = half[static_cast<std::size_t>(h)].face;
      if (f != face && comp_of_face[static_cast<std::size_t>(f)] == c) {
        id_map[static_cast<std::size_t>(h)] = static_cast<std::int32_t>(members.size());
        members.push_back(h);
      }
    }
    std::vector<int> face_map(static_cast<std::size_t>(d.face_count()), -1);
    std::vector<FaceRecord> faces;
    for (int f = 0; f < d.face_count(); ++f) {
      if (f != face && comp_of_face[static_cast<std::size_t>(f)] == c) {
        face_map[static_cast<std::size_t>(f)] = static_cast<int>(faces.size());
        FaceRecord rec = d.faces()[static_cast<std::size_t>(f)];
        rec.start = id_map[static_cast<std::size_t>(rec.start)];
        faces.push_back(rec);
      }
    }
    std::vector<HalfEdge> part;
    part.reserve(members.size());
    for (std::int32_t h : members) {
      HalfEdge e = half[static_cast<std::size_t>(h)];
      if (e.twin != HalfEdge::kBoundary) {
        e.twin = half[static_cast<std::size_t>(e.twin)].face == face
                     ? HalfEdge::kBoundary
                     : id_map[static_cast<std::size_t>(e.twin)];
      }
      e.next = id_map[static_cast<std::size_t>(e.next)];
      e.face = face_map[static_cast<std::size_t>(e.face)];
      part.push_back(e);
    }
    out.push_back(Diagram::from_parts(d.ell(), std::move(part), std::move(faces)));
  }
  return out;
}

std::vector<int> depth_profile(const Diagram& d) {
  const auto& half = d.half_edges();
  const int F = d.face_count();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(F));
  std::vector<int> depth(static_cast<std::size_t>(F), INT_MAX);
  std::deque<int> queue;
  for (const HalfEdge& e : half) {
    if (e.twin == HalfEdge::kBoundary) {
      if (depth[static_cast<std::size_t>(e.face)] != 1) {
        depth[static_cast<std::size_t>(e.face)] = 1;
        queue.push_back(e.face);
      }
    } else {
      adj[static_cast<std::size_t>(e.face)].push_back(
          half[static_cast<std::size_t>(e.twin)].face);
    }
  }
  while (!queue.empty()) {
    int f = queue.front();
    queue.pop_front();
    for (int g : adj[static_cast<std::size_t>(f)]) {
      if (depth[static_cast<std::size_t>(g)] == INT_MAX) {
        depth[static_cast<std::size_t>(g)] = depth[static_cast<std::size_t>(f)] + 1;
        queue.push_back(g);
      }
    }
  }
  return depth;
}

NarrownessReport narrowness_check(const Diagram& d, double C) {
  if (C <= 0.0 || C > 1.0) {
    throw std::invalid_argument("narrowness_check: C must lie in (0, 1]");
  }
  NarrownessReport report;
  report.alpha = C == 1.0 ? 0.0 : 1.0 / std::log(1.0 / (1.0 - C));
  const auto depths = depth_profile(d);
  const auto F = static_cast<double>(d.face_count());
  report.max_depth = *std::max_element(depths.begin(), depths.end());
  report.depth_bound = 1.0 + report.alpha * std::log(F);
  report.holds = report.max_depth != INT_MAX &&
                 static_cast<double>(report.max_depth) <= report.depth_bound + 1e-9;
  for (int k = 2; k <= report.max_depth && report.holds; ++k) {
    std::int64_t at_least_k = 0;
    for (int dep : depths) {
      if (dep >= k) {
        ++at_least_k;
      }
    }
    const double allowed = std::pow(1.0 - C, k - 1) * F;
    if (static_cast<double>(at_least_k) > allowed + 1e-9) {
      report.holds = false;
    }
  }
  return report;
}

CutResult quarter_cut(const Diagram& d) {
  if (d.face_count() < 2) {
    throw std::invalid_argument("quarter_cut: no cut needed for a single face");
  }
  if (!d.is_disc()) {
    throw std::invalid_argument("quarter_cut: disc diagrams only");
  }
  const auto& circuit = d.boundary_circuit();
  const int L = static_cast<int>(circuit.size());
  if (L < 4) {
    throw std::runtime_error("quarter_cut: boundary too short to mark quarters");
  }

  // 1-skeleton adjacency, neighbor lists sorted for deterministic paths
  const int V = d.vertex_count();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(V));
  const auto& half = d.half_edges();
  for (std::int32_t h = 0; h < static_cast<std::int32_t>(half.size()); ++h) {
    const HalfEdge& e = half[static_cast<std::size_t>(h)];
    if (e.twin != HalfEdge::kBoundary && e.twin < h) {
      continue;  // one side per interior edge
    }
    int u = d.vertex_of(h);
    int v = d.head_of(h);
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }

  const int q = L / 4;
  auto arc_vertices = [&](int from, int to) {
    // circuit positions from..to inclusive (cyclic)
    std::vector<int> out;
    int t = from;
    while (true) {
      out.push_back(d.vertex_of(circuit[static_cast<std::size_t>(t % L)]));
      if (t % L == to % L) {
        break;
      }
      ++t;
    }
    return out;
  };
  std::vector<int> positions_of_vertex;  // first circuit position per vertex
  positions_of_vertex.assign(static_cast<std::size_t>(V), -1);
  for (int t = 0; t < L; ++t) {
    int v = d.vertex_of(circuit[static_cast<std::size_t>(t)]);
    if (positions_of_vertex[static_cast<std::size_t>(v)] == -1) {
      positions_of_vertex[static_cast<std::size_t>(v)] = t;
    }
  }

  auto bfs_from = [&](const std::vector<int>& sources) {
    std::vector<int> dist(static_cast<std::size_t>(V), INT_MAX);
    std::deque<int> queue;
    for (int s : sources) {
      if (dist[static_cast<std::size_t>(s)] != 0) {
        dist[static_cast<std::size_t>(s)] = 0;
        queue.push_back(s);
      }
    }
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int u : adj[static_cast<std::size_t>(v)]) {
        if (dist[static_cast<std::size_t>(u)] == INT_MAX) {
          dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
          queue.push_back(u);
        }
      }
    }
    return dist;
  };

  std::optional<CutResult> best;
  for (int pairing = 0; pairing < 2; ++pairing) {
    std::vector<int> src = pairing == 0 ? arc_vertices(0, q) : arc_vertices(q, 2 * q);
    std::vector<int> dst =
        pairing == 0 ? arc_vertices(2 * q, 3 * q) : arc_vertices(3 * q, L % L);
    auto dist_t = bfs_from(dst);
    int len = INT_MAX;
    int start = -1;
    for (int s : src) {
      if (dist_t[static_cast<std::size_t>(s)] < len ||
          (dist_t[static_cast<std::size_t>(s)] == len && s < start)) {
        len = dist_t[static_cast<std::size_t>(s)];
        start = s;
      }
    }
    if (len == INT_MAX || len == 0) {
      continue;
    }
    std::vector<int> path{start};
    int v = start;
    while (dist_t[static_cast<std::size_t>(v)] > 0) {
      for (int u : adj[static_cast<std::size_t>(v)]) {
        if (dist_t[static_cast<std::size_t>(u)] == dist_t[static_cast<std::size_t>(v)] - 1) {
          v = u;
          break;
        }
      }
      path.push_back(v);
    }
    int pos_p = positions_of_vertex[static_cast<std::size_t>(path.front())];
    int pos_q = positions_of_vertex[static_cast<std::size_t>(path.back())];
    std::int64_t s1 = ((pos_q - pos_p) % L + L) % L;
    std::int64_t s2 = L - s1;
    if (std::min(s1, s2) < L / 4) {
      continue;
    }
    CutResult candidate;
    candidate.path = std::move(path);
    candidate.length = len;
    candidate.part_edges[0] = s1;
    candidate.part_edges[1] = s2;
    if (!best || candidate.length < best->length ||
        (candidate.length == best->length && candidate.path < best->path)) {
      best = std::move(candidate);
    }
  }
  if (!best) {
    throw std::runtime_error("quarter_cut: no valid cut found");
  }
  return *best;
}

std::vector<FaceBoundaryStats> face_boundary_stats(const Diagram& d) {
  std::vector<FaceBoundaryStats> out(static_cast<std::size_t>(d.face_count()));
  const auto& half = d.half_edges();
  for (int f = 0; f < d.face_count(); ++f) {
    auto cycle = d.face_cycle(f);
    const int n = static_cast<int>(cycle.size());
    std::vector<char> on_boundary(static_cast<std::size_t>(n));
    int total = 0;
    for (int c = 0; c < n; ++c) {
      on_boundary[static_cast<std::size_t>(c)] =
          half[static_cast<std::size_t>(cycle[static_cast<std::size_t>(c)])].twin ==
          HalfEdge::kBoundary;
      total += on_boundary[static_cast<std::size_t>(c)];
    }
    FaceBoundaryStats& stats = out[static_cast<std::size_t>(f)];
    stats.total = total;
    if (total == 0) {
      continue;
    }
    if (total == n) {
      stats.max_run = n;
      stats.runs = 1;
      continue;
    }
    // rotate to a non-boundary position, then count linear runs
    int anchor = 0;
    while (on_boundary[static_cast<std::size_t>(anchor)]) {
      ++anchor;
    }
    int run = 0;
    for (int c = 1; c <= n; ++c) {
      if (on_boundary[static_cast<std::size_t>((anchor + c) % n)]) {
        ++run;
        stats.max_run = std::max(stats.max_run, run);
      } else {
        if (run > 0) {
          ++stats.runs;
        }
        run = 0;
      }
    }
  }
  return out;
}

BadFaceDecomposition bad_face_decomposition(const Diagram& d) {
  BadFaceDecomposition out;
  const auto stats = face_boundary_stats(d);
  const int F = d.face_count();
  out.face_class.resize(static_cast<std::size_t>(F));
  for (int f = 0; f < F; ++f) {
    const auto& s = stats[static_cast<std::size_t>(f)];
    out.face_class[static_cast<std::size_t>(f)] =
        s.total == 0 ? FaceClass::internal : (s.runs >= 2 ? FaceClass::bad : FaceClass::good);
  }

  UnionFind uf(static_cast<std::size_t>(F));
  const auto& half = d.half_edges();
  for (std::int32_t h = 0; h < static_cast<std::int32_t>(half.size()); ++h) {
    const HalfEdge& e = half[static_cast<std::size_t>(h)];
    if (e.twin == HalfEdge::kBoundary) {
      continue;
    }
    int fa = e.face;
    int fb = half[static_cast<std::size_t>(e.twin)].face;
    if (out.face_class[static_cast<std::size_t>(fa)] != FaceClass::bad &&
        out.face_class[static_cast<std::size_t>(fb)] != FaceClass::bad) {
      uf.unite(fa, fb);
    }
  }
  std::vector<int> part_of(static_cast<std::size_t>(F), -1);
  for (int f = 0; f < F; ++f) {
    if (out.face_class[static_cast<std::size_t>(f)] == FaceClass::bad) {
      continue;
    }
    int root = uf.find(f);
    int idx = -1;
    for (int g = 0; g < f; ++g) {
      if (out.face_class[static_cast<std::size_t>(g)] != FaceClass::bad &&
          uf.find(g) == root) {
        idx = part_of[static_cast<std::size_t>(g)];
        break;
      }
    }
    if (idx == -1) {
      idx = static_cast<int>(out.parts.size());
      out.parts.emplace_back();
    }
    part_of[static_cast<std::size_t>(f)] = idx;
    out.parts[static_cast<std::size_t>(idx)].push_back(f);
  }

  std::vector<std::vector<int>> touching(out.parts.size());
  for (std::int32_t h = 0; h < static_cast<std::int32_t>(half.size()); ++h) {
    const HalfEdge& e = half[static_cast<std::size_t>(h)];
    if (e.twin == HalfEdge::kBoundary) {
      continue;
    }
    int fa = e.face;
    int fb = half[static_cast<std::size_t>(e.twin)].face;
    bool a_bad = out.face_class[static_cast<std::size_t>(fa)] == FaceClass::bad;
    bool b_bad = out.face_class[static_cast<std::size_t>(fb)] == FaceClass::bad;
    if (!a_bad && b_bad) {
      touching[static_cast<std::size_t>(part_of[static_cast<std::size_t>(fa)])].push_back(fb);
    }
  }
  for (std::size_t idx = 0; idx < out.parts.size(); ++idx) {
    auto& bad_faces = touching[idx];
    std::sort(bad_faces.begin(), bad_faces.end());
    bad_faces.erase(std::unique(bad_faces.begin(), bad_faces.end()), bad_faces.end());
    if (bad_faces.size() == 1) {
      out.extremal_parts.push_back(static_cast<int>(idx));
    }
  }
  return out;
}

using nlohmann::json;

std::string diagram_to_json(const Diagram& d) {
  json doc;
  doc["ell"] = d.ell();
  json he = json::array();
  for (const HalfEdge& e : d.half_edges()) {
    he.push_back(json::array({e.twin, e.next, e.face, format_letter(e.label)}));
  }
  doc["half_edges"] = std::move(he);
  json fs = json::array();
  for (const FaceRecord& f : d.faces()) {
    fs.push_back(json::array({f.relator, f.orientation, f.rotation, f.start}));
  }
  doc["faces"] = std::move(fs);
  doc["boundary_circuits"] = d.boundary_circuits();
  return doc.dump(2) + "\n";
}

Diagram diagram_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("document", e.what());
  }
  if (!doc.contains("ell") || !doc["ell"].is_number_integer()) {
    throw ParseError("ell", "missing or non-integer");
  }
  if (!doc.contains("half_edges") || !doc["half_edges"].is_array()) {
    throw ParseError("half_edges", "missing or not an array");
  }
  if (!doc.contains("faces") || !doc["faces"].is_array()) {
    throw ParseError("faces", "missing or not an array");
  }
  std::vector<HalfEdge> half;
  for (std::size_t k = 0; k < doc["half_edges"].size(); ++k) {
    const json& row = doc["half_edges"][k];
    const std::string where = "half_edges[" + std::to_string(k) + "]";
    if (!row.is_array() || row.size() != 4 || !row[3].is_string()) {
      throw ParseError(where, "expected [twin, next, face, label]");
    }
    auto letters = parse_letters(row[3].get<std::string>());
    if (letters.size() != 1) {
      throw ParseError(where, "label must be a single letter");
    }
    half.push_back(HalfEdge{row[0].get<std::int32_t>(), row[1].get<std::int32_t>(),
                            row[2].get<std::int32_t>(), letters[0]});
  }
  std::vector<FaceRecord> faces;
  for (std::size_t k = 0; k < doc["faces"].size(); ++k) {
    const json& row = doc["faces"][k];
    const std::string where = "faces[" + std::to_string(k) + "]";
    if (!row.is_array() || row.size() != 4) {
      throw ParseError(where, "expected [relator, orientation, rotation, start]");
    }
    faces.push_back(FaceRecord{row[0].get<int>(), row[1].get<int>(), row[2].get<int>(),
                               row[3].get<std::int32_t>()});
  }
  try {
    Diagram d = Diagram::from_parts(doc["ell"].get<int>(), std::move(half), std::move(faces));
    if (doc.contains("boundary_circuits")) {
      auto stored = doc["boundary_circuits"].get<std::vector<std::vector<std::int32_t>>>();
      if (stored != d.boundary_circuits()) {
        throw ParseError("boundary_circuits", "stored circuits do not match the map");
      }
    }
    return d;
  } catch (const std::invalid_argument& e) {
    throw ParseError("document", e.what());
  }
}

}  // namespace randgroup
