#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "randgroup/diagram.hpp"
#include "randgroup/presentation.hpp"
#include "randgroup/rng.hpp"

namespace randgroup {

struct GrowthResult {
  Diagram diagram;
  bool reached_target = false;
};

// Grows a disc diagram from one random face by repeatedly gluing a relator
// along a boundary arc whose inverse occurs in some relator: arcs are tried
// from the longest feasible length up to ceil((d - eps) ell), the arc is
// drawn uniformly among the feasible ones, and the relator occurrence is the
// first in canonical scan order that keeps the diagram reduced. Stops early
// (flagged) when no gluing exists.
GrowthResult grow_random_diagram(const Presentation& p, int target_faces, Rng& rng,
                                 double eps = 0.05);

struct PieceExperimentConfig {
  int m = 2;
  int ell = 60;
  std::vector<double> densities;
  int trials = 0;
  double eps = 0.05;  // reserved; piece rows carry raw ratios
  std::uint64_t master_seed = 0;
};

struct GreendlingerExperimentConfig {
  int m = 2;
  int ell = 60;
  std::vector<double> densities;
  int faces = 4;
  int trials = 0;
  double eps = 0.05;
  std::uint64_t master_seed = 0;
};

struct IsoperimetryExperimentConfig {
  int m = 2;
  int ell = 60;
  std::vector<double> densities;
  std::vector<int> faces_grid;
  int trials = 0;
  double eps = 0.05;
  std::uint64_t master_seed = 0;
};

// Each experiment emits one deterministic CSV (header; per-trial rows;
// summary rows). Identical configs and master seeds give byte-identical
// output for any worker count. Floats print with 6 significant digits.
std::string run_piece_experiment(const PieceExperimentConfig& cfg, int workers = 1);
std::string run_greendlinger_experiment(const GreendlingerExperimentConfig& cfg,
                                        int workers = 1);
std::string run_isoperimetry_experiment(const IsoperimetryExperimentConfig& cfg,
                                        int workers = 1);

}  // namespace randgroup
