#include "randgroup/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "randgroup/constructions.hpp"
#include "randgroup/dehn.hpp"
#include "randgroup/pieces.hpp"
#include "randgroup/suffix_automaton.hpp"

namespace randgroup {

namespace {

std::string fmt6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

// Runs count tasks over a small thread pool; results land in task order, so
// output never depends on scheduling.
template <class F>
void run_indexed(int workers, int count, F&& task) {
  workers = std::max(1, workers);
  if (workers == 1 || count <= 1) {
    for (int i = 0; i < count; ++i) {
      task(i);
    }
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(std::min(workers, count)));
  for (int w = 0; w < std::min(workers, count); ++w) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        task(i);
      }
    });
  }
  for (auto& t : pool) {
    t.join();
  }
}

}  // namespace

GrowthResult grow_random_diagram(const Presentation& p, int target_faces, Rng& rng,
                                 double eps) {
  if (target_faces < 1) {
    throw std::invalid_argument("grow_random_diagram: target_faces must be >= 1");
  }
  const int ell = p.ell();
  const double d = p.density();
  const int arc_cap = std::max(
      1, std::min(ell - 1, static_cast<int>(std::ceil((d - eps) * ell - 1e-9))));

  const int start = static_cast<int>(rng.below(static_cast<std::uint64_t>(p.size())));
  Diagram diagram = Diagram::single_face(p, start, +1, 0);

  while (diagram.face_count() < target_faces) {
    const auto& circuit = diagram.boundary_circuit();
    const int B = static_cast<int>(circuit.size());
    std::vector<std::int32_t> doubled;
    doubled.reserve(static_cast<std::size_t>(2 * B));
    for (int rep = 0; rep < 2; ++rep) {
      for (std::int32_t h : circuit) {
        doubled.push_back(diagram.half_edges()[static_cast<std::size_t>(h)].label.code());
      }
    }

    // longest relator factor ending at every boundary position
    CrossMatcher matcher(doubled, 2 * p.m());
    for (int i = 0; i < p.size(); ++i) {
      matcher.scan_stream(p.doubled(i, false));
      matcher.scan_stream(p.doubled(i, true));
    }
    const auto best = matcher.best_ending_at();

    bool glued = false;
    for (int len = std::min(arc_cap, B - 1); len >= 1 && !glued; --len) {
      std::vector<int> starts;
      for (int s = 0; s < B; ++s) {
        if (best[static_cast<std::size_t>(s + len - 1)] >= len) {
          starts.push_back(s);
        }
      }
      while (!starts.empty()) {
        const std::size_t pick =
            static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(starts.size())));
        const int s = starts[pick];
        std::vector<std::int32_t> arc_inv;
        arc_inv.reserve(static_cast<std::size_t>(len));
        for (int k = len - 1; k >= 0; --k) {
          arc_inv.push_back(Letter::from_code(doubled[static_cast<std::size_t>(s + k)])
                                .inverse()
                                .code());
        }
        bool done = false;
        for (const RelatorOccurrence& occ : find_occurrences(p, arc_inv)) {
          try {
            diagram = glue_relator_to_boundary(diagram, p, occ, BoundaryArc{s, len});
            done = true;
            break;
          } catch (const std::exception&) {
            continue;  // cancellable or degenerate; try the next occurrence
          }
        }
        if (done) {
          glued = true;
          break;
        }
        starts.erase(starts.begin() + static_cast<long>(pick));
      }
    }
    if (!glued) {
      return GrowthResult{std::move(diagram), false};
    }
  }
  return GrowthResult{std::move(diagram), true};
}

std::string run_piece_experiment(const PieceExperimentConfig& cfg, int workers) {
  if (cfg.densities.empty()) {
    throw std::invalid_argument("run_piece_experiment: density grid must be nonempty");
  }
  std::ostringstream out;
  out << "record,d,trial,seed,max_piece,max_piece_ratio,mean_ratio,q05,q50,q95\n";
  if (cfg.trials == 0) {
    return out.str();
  }

  struct Row {
    std::uint64_t seed;
    int max_piece;
  };
  const int D = static_cast<int>(cfg.densities.size());
  std::vector<Row> rows(static_cast<std::size_t>(D) * static_cast<std::size_t>(cfg.trials));
  run_indexed(workers, D * cfg.trials, [&](int idx) {
    const int di = idx / cfg.trials;
    const int trial = idx % cfg.trials;
    const std::uint64_t seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(di),
                                           static_cast<std::uint64_t>(trial));
    Rng rng(seed);
    Presentation p = sample_presentation(cfg.m, cfg.ell, cfg.densities[static_cast<std::size_t>(di)],
                                         rng, std::nullopt, 1'000'000, seed);
    rows[static_cast<std::size_t>(idx)] = Row{seed, piece_spectrum(p).max.length};
  });

  for (int di = 0; di < D; ++di) {
    const double d = cfg.densities[static_cast<std::size_t>(di)];
    std::vector<double> ratios;
    ratios.reserve(static_cast<std::size_t>(cfg.trials));
    for (int trial = 0; trial < cfg.trials; ++trial) {
      const Row& row = rows[static_cast<std::size_t>(di * cfg.trials + trial)];
      const double ratio = static_cast<double>(row.max_piece) / cfg.ell;
      ratios.push_back(ratio);
      out << "trial," << fmt6(d) << ',' << trial << ',' << row.seed << ','
          << row.max_piece << ',' << fmt6(ratio) << ",,,,\n";
    }
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    auto quantile = [&](double q) {
      const auto idx = static_cast<std::size_t>(
          std::floor(q * static_cast<double>(sorted.size() - 1)));
      return sorted[idx];
    };
    double mean = 0.0;
    for (double r : ratios) {
      mean += r;
    }
    mean /= static_cast<double>(ratios.size());
    out << "summary," << fmt6(d) << ",,,,," << fmt6(mean) << ',' << fmt6(quantile(0.05))
        << ',' << fmt6(quantile(0.50)) << ',' << fmt6(quantile(0.95)) << '\n';
  }
  return out.str();
}

std::string run_greendlinger_experiment(const GreendlingerExperimentConfig& cfg,
                                        int workers) {
  if (cfg.densities.empty()) {
    throw std::invalid_argument("run_greendlinger_experiment: density grid must be nonempty");
  }
  if (cfg.faces < 2) {
    throw std::invalid_argument("run_greendlinger_experiment: faces must be >= 2");
  }
  std::ostringstream out;
  out << "record,d,trial,seed,faces,boundary,gl_holds,strong_faces,weak_faces,"
         "ce_found,ce_no_dehn_face,pass_rate\n";
  if (cfg.trials == 0) {
    return out.str();
  }

  struct Row {
    std::uint64_t seed;
    int faces;
    std::int64_t boundary;
    int holds;  // -1: diagram too small to check
    int strong;
    int weak;
  };
  const int D = static_cast<int>(cfg.densities.size());
  std::vector<Row> rows(static_cast<std::size_t>(D) * static_cast<std::size_t>(cfg.trials));
  struct CeRow {
    std::uint64_t seed;
    bool found;
    bool no_dehn;
  };
  std::vector<CeRow> ce(static_cast<std::size_t>(D));

  run_indexed(workers, D * (cfg.trials + 1), [&](int idx) {
    const int di = idx / (cfg.trials + 1);
    const int item = idx % (cfg.trials + 1);
    const double d = cfg.densities[static_cast<std::size_t>(di)];
    const std::uint64_t seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(di),
                                           static_cast<std::uint64_t>(item));
    Rng rng(seed);
    Presentation p = sample_presentation(cfg.m, cfg.ell, d, rng, std::nullopt,
                                         1'000'000, seed);
    if (item < cfg.trials) {
      GrowthResult grown = grow_random_diagram(p, cfg.faces, rng, cfg.eps);
      Row row{seed, grown.diagram.face_count(), grown.diagram.boundary_length(), -1, 0, 0};
      if (grown.diagram.face_count() >= 2) {
        GreendlingerReport report = greendlinger_check(grown.diagram, d, cfg.eps);
        row.holds = report.holds ? 1 : 0;
        row.strong = static_cast<int>(report.strong_faces.size());
        row.weak = static_cast<int>(report.weak_faces.size());
      }
      rows[static_cast<std::size_t>(di * cfg.trials + item)] = row;
    } else {
      CeRow row{seed, false, false};
      auto built = build_counterexample(p, cfg.eps);
      if (built) {
        row.found = true;
        row.no_dehn = verify_no_dehn_face(built->diagram);
      }
      ce[static_cast<std::size_t>(di)] = row;
    }
  });

  for (int di = 0; di < D; ++di) {
    const double d = cfg.densities[static_cast<std::size_t>(di)];
    int passes = 0;
    for (int trial = 0; trial < cfg.trials; ++trial) {
      const Row& row = rows[static_cast<std::size_t>(di * cfg.trials + trial)];
      passes += row.holds == 1;
      out << "trial," << fmt6(d) << ',' << trial << ',' << row.seed << ',' << row.faces
          << ',' << row.boundary << ',' << (row.holds < 0 ? std::string("") : std::to_string(row.holds))
          << ',' << row.strong << ',' << row.weak << ",,,\n";
    }
    const CeRow& c = ce[static_cast<std::size_t>(di)];
    out << "ce," << fmt6(d) << ",," << c.seed << ",,,,,," << (c.found ? 1 : 0) << ','
        << (c.found ? (c.no_dehn ? "1" : "0") : "") << ",\n";
    out << "summary," << fmt6(d) << ",,,,,,,,,,"
        << fmt6(static_cast<double>(passes) / static_cast<double>(cfg.trials)) << '\n';
  }
  return out.str();
}

std::string run_isoperimetry_experiment(const IsoperimetryExperimentConfig& cfg,
                                        int workers) {
  if (cfg.densities.empty() || cfg.faces_grid.empty()) {
    throw std::invalid_argument("run_isoperimetry_experiment: grids must be nonempty");
  }
  std::ostringstream out;
  out << "record,d,faces_target,trial,seed,faces,boundary,ratio,threshold,holds,"
         "min_ratio,violations\n";
  if (cfg.trials == 0) {
    return out.str();
  }

  struct Row {
    std::uint64_t seed;
    int faces;
    std::int64_t boundary;
    double ratio;
    double threshold;
    int holds;
  };
  const int D = static_cast<int>(cfg.densities.size());
  const int FG = static_cast<int>(cfg.faces_grid.size());
  std::vector<Row> rows(static_cast<std::size_t>(D) * static_cast<std::size_t>(FG) *
                        static_cast<std::size_t>(cfg.trials));
  run_indexed(workers, D * FG * cfg.trials, [&](int idx) {
    const int trial = idx % cfg.trials;
    const int fi = (idx / cfg.trials) % FG;
    const int di = idx / (cfg.trials * FG);
    const double d = cfg.densities[static_cast<std::size_t>(di)];
    const std::uint64_t seed =
        derive_seed(cfg.master_seed,
                    static_cast<std::uint64_t>(di) * static_cast<std::uint64_t>(FG) +
                        static_cast<std::uint64_t>(fi),
                    static_cast<std::uint64_t>(trial));
    Rng rng(seed);
    Presentation p = sample_presentation(cfg.m, cfg.ell, d, rng, std::nullopt,
                                         1'000'000, seed);
    GrowthResult grown =
        grow_random_diagram(p, cfg.faces_grid[static_cast<std::size_t>(fi)], rng, cfg.eps);
    IsoperimetryReport report = isoperimetric_check(grown.diagram, d, cfg.eps);
    rows[static_cast<std::size_t>(idx)] = Row{seed,
                                              grown.diagram.face_count(),
                                              report.boundary,
                                              report.ratio,
                                              report.threshold,
                                              report.holds ? 1 : 0};
  });

  for (int di = 0; di < D; ++di) {
    for (int fi = 0; fi < FG; ++fi) {
      const double d = cfg.densities[static_cast<std::size_t>(di)];
      const int target = cfg.faces_grid[static_cast<std::size_t>(fi)];
      double min_ratio = 1.0;
      int violations = 0;
      for (int trial = 0; trial < cfg.trials; ++trial) {
        const Row& row =
            rows[static_cast<std::size_t>((di * FG + fi) * cfg.trials + trial)];
        min_ratio = std::min(min_ratio, row.ratio);
        violations += row.holds == 0;
        out << "trial," << fmt6(d) << ',' << target << ',' << trial << ',' << row.seed
            << ',' << row.faces << ',' << row.boundary << ',' << fmt6(row.ratio) << ','
            << fmt6(row.threshold) << ',' << row.holds << ",,\n";
      }
      out << "summary," << fmt6(d) << ',' << target << ",,,,,,,," << fmt6(min_ratio)
          << ',' << violations << '\n';
    }
  }
  return out.str();
}

}  // namespace randgroup
