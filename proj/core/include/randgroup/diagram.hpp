#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "randgroup/pieces.hpp"
#include "randgroup/presentation.hpp"
#include "randgroup/words.hpp"

namespace randgroup {

// One side of an edge, directed head-to-tail around its face. Interior edges
// consist of two twinned sides carrying mutually inverse labels; sides on the
// diagram boundary have twin == kBoundary.
struct HalfEdge {
  static constexpr std::int32_t kBoundary = -1;
  std::int32_t twin = kBoundary;
  std::int32_t next = 0;  // successor inside the face cycle
  std::int32_t face = 0;
  Letter label;
};

// A face carries an oriented, rotated relator: cycle position c spells letter
// (rotation + c) of the relator read with `orientation`.
struct FaceRecord {
  int relator = 0;
  int orientation = +1;
  int rotation = 0;
  std::int32_t start = 0;  // one half-edge of the cycle
};

// A van Kampen diagram as a half-edge combinatorial map. Vertices are derived
// from the twin/next structure (origins of twinned successors coincide), the
// boundary circuits by corner walks. Immutable after construction; the gluing
// operations return new diagrams.
class Diagram {
 public:
  static Diagram single_face(const Presentation& p, int relator,
                             int orientation = +1, int rotation = 0);

  // Assembles a diagram from raw parts and derives vertices, circuits and
  // counts. Structural impossibilities (dangling indices, broken corner
  // walks) throw std::invalid_argument; semantic violations (wrong spelling,
  // non-disc topology) are left for validate() to report.
  static Diagram from_parts(int ell, std::vector<HalfEdge> half_edges,
                            std::vector<FaceRecord> faces);

  int ell() const { return ell_; }
  int face_count() const { return static_cast<int>(faces_.size()); }
  const std::vector<HalfEdge>& half_edges() const { return half_; }
  const std::vector<FaceRecord>& faces() const { return faces_; }

  // |∂D| in edges, summed over all boundary circuits.
  std::int64_t boundary_length() const { return boundary_length_; }
  int vertex_count() const { return vertex_count_; }
  // interior pairs count once, boundary sides once
  std::int64_t edge_count() const { return edge_count_; }
  std::int64_t interior_edge_count() const { return interior_edges_; }
  bool connected() const { return connected_; }
  std::int64_t euler_characteristic() const {
    return vertex_count_ - edge_count_ + face_count();
  }
  // connected, Euler characteristic 1, single boundary circuit
  bool is_disc() const {
    return connected_ && euler_characteristic() == 1 && circuits_.size() == 1;
  }

  const std::vector<std::vector<std::int32_t>>& boundary_circuits() const {
    return circuits_;
  }
  // the unique circuit of a disc diagram
  const std::vector<std::int32_t>& boundary_circuit() const;

  int vertex_of(std::int32_t h) const {
    return vertex_[static_cast<std::size_t>(h)];
  }
  int head_of(std::int32_t h) const {
    return vertex_[static_cast<std::size_t>(half_[static_cast<std::size_t>(h)].next)];
  }

  std::vector<std::int32_t> face_cycle(int f) const;

  // Letters along the boundary circuit of a disc diagram. May be unreduced.
  std::vector<Letter> boundary_letters() const;
  std::vector<std::int32_t> boundary_codes() const;

 private:
  Diagram() = default;
  void derive();

  int ell_ = 0;
  std::vector<HalfEdge> half_;
  std::vector<FaceRecord> faces_;

  std::vector<std::int32_t> vertex_;
  int vertex_count_ = 0;
  std::int64_t edge_count_ = 0;
  std::int64_t interior_edges_ = 0;
  std::int64_t boundary_length_ = 0;
  bool connected_ = true;
  std::vector<std::vector<std::int32_t>> circuits_;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> violations;
};

// Checks every diagram invariant against the presentation: twin involution,
// inverse twin labels, face cycles spelling their relators, connectivity,
// Euler characteristic 1, and a single boundary circuit covering all
// boundary sides.
ValidationReport validate(const Diagram& d, const Presentation& p);

// True iff no interior edge has its two sides in faces carrying the same
// relator with opposite orientations and mirror-matching rotation.
bool is_reduced_diagram(const Diagram& d);

struct IsoperimetryReport {
  std::int64_t faces = 0;
  std::int64_t boundary = 0;
  double ratio = 0.0;      // |∂D| / (ell |D|)
  double threshold = 0.0;  // 1 - 2d - eps
  bool holds = false;
};

// Exact integer comparison |∂D| >= ceil((1-2d-eps) ell |D|). Disc diagrams
// only.
IsoperimetryReport isoperimetric_check(const Diagram& d, double density, double eps);

// The 2-face diagram glued along the matched subword; |∂D| = 2 ell - 2 length.
// Throws on full-length matches (sphere) and on cancellable gluings.
Diagram glue_two_relators(const Presentation& p, const PieceMatch& match);

// A window of the boundary circuit: `length` consecutive boundary edges
// starting at circuit position `start`.
struct BoundaryArc {
  int start = 0;
  int length = 0;
};

// Glues a new face along a boundary arc. The occurrence must satisfy: the
// oriented relator contains invert(arc word) at `occ.offset`. |D| grows by
// one and |∂D| changes by ell - 2 length.
Diagram glue_relator_to_boundary(const Diagram& d, const Presentation& p,
                                 const RelatorOccurrence& occ, BoundaryArc arc);

// Glues two disc diagrams along boundary arcs spelling w and invert(w).
// Rejects non-disc results and cancellable pairs across the glued path
// ("reduced around w").
Diagram glue_diagrams_along(const Diagram& a, BoundaryArc arc_a, const Diagram& b,
                            BoundaryArc arc_b);

// |w| <= d (|∂D1| + |∂D2|) (1 + eps): the macroscopic small cancellation
// bound for diagrams glued along a subword of length w_length.
bool macroscopic_cancellation_check(const Diagram& a, const Diagram& b,
                                    std::int64_t w_length, double density,
                                    double eps);

// Connected components (by shared edges) left after removing the open face.
// Components need not be discs; annular ones report is_disc() == false.
std::vector<Diagram> remove_face(const Diagram& d, int face);

// Distance 1 = face sharing an edge with the boundary; BFS over edge
// adjacency. Unreachable faces (none in diagrams built here) get INT_MAX.
std::vector<int> depth_profile(const Diagram& d);

struct NarrownessReport {
  bool holds = false;
  int max_depth = 0;
  double alpha = 0.0;
  double depth_bound = 0.0;  // 1 + alpha log |D|
};

// max depth <= 1 + alpha log|D| with alpha = 1/log(1/(1-C)), and the count of
// faces at depth >= k is at most (1-C)^(k-1) |D| for every k.
NarrownessReport narrowness_check(const Diagram& d, double C);

struct CutResult {
  std::vector<int> path;  // vertex ids, endpoints on the boundary
  int length = 0;         // edges
  std::int64_t part_edges[2] = {0, 0};
};

// Splits a disc diagram along a shortest 1-skeleton path between opposite
// quarter arcs of the boundary; both parts keep at least floor(|∂D|/4)
// boundary edges. Throws for |D| < 2.
CutResult quarter_cut(const Diagram& d);

struct FaceBoundaryStats {
  int total = 0;    // boundary edges of the face
  int max_run = 0;  // longest consecutive block on the boundary
  int runs = 0;     // number of maximal blocks
};

std::vector<FaceBoundaryStats> face_boundary_stats(const Diagram& d);

enum class FaceClass : std::uint8_t { internal = 0, good = 1, bad = 2 };

struct BadFaceDecomposition {
  std::vector<FaceClass> face_class;
  // maximal bad-face-free parts (face ids, ascending)
  std::vector<std::vector<int>> parts;
  // indices into `parts` that touch exactly one bad face
  std::vector<int> extremal_parts;
};

BadFaceDecomposition bad_face_decomposition(const Diagram& d);

// Deterministic structured-text serialization; serialized equality is
// isomorphism-as-built.
std::string diagram_to_json(const Diagram& d);
Diagram diagram_from_json(const std::string& text);

}  // namespace randgroup
