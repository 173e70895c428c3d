// Command line front end: sampling, overlap analysis, diagram checks, the
// explicit constructions, the closed-form bounds and the Monte Carlo
// experiments. Exit code 0 on success, 2 when a requested check fails, 1 on
// errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "randgroup/bounds.hpp"
#include "randgroup/constructions.hpp"
#include "randgroup/dehn.hpp"
#include "randgroup/diagram.hpp"
#include "randgroup/experiments.hpp"
#include "randgroup/pieces.hpp"
#include "randgroup/presentation.hpp"
#include "randgroup/words.hpp"

namespace {

using namespace randgroup;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitCheckFailed = 2;

Presentation read_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  return load(in);
}

Diagram read_diagram(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return diagram_from_json(buf.str());
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
  out << text;
}

std::vector<double> parse_grid(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(std::stod(item));
  }
  return out;
}

std::vector<int> parse_int_grid(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(std::stoi(item));
  }
  return out;
}

std::pair<long long, long long> parse_lambda(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    return {std::stoll(text), 1};
  }
  return {std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1))};
}

std::string describe(const PieceMatch& match) {
  std::ostringstream out;
  out << "piece i=" << match.i << " j=" << match.j << " offset_i=" << match.offset_i
      << " offset_j=" << match.offset_j << " orientation="
      << (match.orientation == Orientation::same ? "same" : "inverse")
      << " length=" << match.length;
  if (match.full_length) {
    out << " (full-length coincidence)";
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random group presentations in the density model"};
  app.require_subcommand(1);

  int m = 2;
  int ell = 60;
  double density = 0.1;
  double epsilon = 0.05;
  std::uint64_t seed = 1;
  std::string in_path;
  std::string out_path;
  std::string pres_path;

  // sample
  auto* sample = app.add_subcommand("sample", "sample a presentation");
  std::optional<std::int64_t> count_override;
  std::int64_t count_cap = 1'000'000;
  sample->add_option("--m", m, "generator count")->capture_default_str();
  sample->add_option("--ell", ell, "relator length")->capture_default_str();
  sample->add_option("--density", density, "density in [0,1]")->capture_default_str();
  sample->add_option("--seed", seed, "random seed")->capture_default_str();
  sample->add_option("--count", count_override, "explicit relator count");
  sample->add_option("--cap", count_cap, "relator count cap")->capture_default_str();
  sample->add_option("--out", out_path, "output file (default stdout)");

  // pieces
  auto* pieces = app.add_subcommand("pieces", "piece spectrum of a presentation");
  std::string csv_path;
  pieces->add_option("--in", in_path, "presentation file")->required();
  pieces->add_option("--csv", csv_path, "write the (length,count) histogram CSV");

  // cancellation
  auto* cancellation =
      app.add_subcommand("cancellation", "C'(lambda) small cancellation check");
  std::string lambda_text = "1/6";
  cancellation->add_option("--in", in_path, "presentation file")->required();
  cancellation->add_option("--lambda", lambda_text, "threshold, e.g. 1/6")
      ->capture_default_str();

  // dehn
  auto* dehn = app.add_subcommand("dehn", "run the Dehn algorithm on a word");
  std::string word_text;
  int trivial_k = -1;
  bool require_empty = false;
  bool cyclic = false;
  std::string trace_path;
  dehn->add_option("--in", in_path, "presentation file")->required();
  dehn->add_option("--word", word_text, "input word (letter-case form)");
  dehn->add_option("--trivial", trivial_k,
                   "generate a random trivial word from k conjugates");
  dehn->add_option("--seed", seed, "seed for --trivial")->capture_default_str();
  dehn->add_flag("--require-empty", require_empty,
                 "exit 2 unless the word reduces to the empty word");
  dehn->add_flag("--cyclic", cyclic, "treat the word as a cyclic word");
  dehn->add_option("--trace", trace_path, "write the step trace");

  // diagram
  auto* diagram_cmd = app.add_subcommand("diagram", "validate or check a diagram");
  auto* dvalidate = diagram_cmd->add_subcommand("validate", "structural invariants");
  dvalidate->add_option("--pres", pres_path, "presentation file")->required();
  dvalidate->add_option("--in", in_path, "diagram file")->required();
  auto* dcheck = diagram_cmd->add_subcommand("check", "isoperimetry and Greendlinger");
  std::optional<double> density_override;
  dcheck->add_option("--pres", pres_path, "presentation file")->required();
  dcheck->add_option("--in", in_path, "diagram file")->required();
  dcheck->add_option("--epsilon", epsilon, "slack")->capture_default_str();
  dcheck->add_option("--density", density_override, "density override");

  // construct
  auto* construct = app.add_subcommand("construct", "the paper's explicit diagrams");
  std::string kind;
  construct->add_option("kind", kind, "two-face | three-face | counterexample")
      ->required();
  construct->add_option("--in", in_path, "presentation file")->required();
  construct->add_option("--epsilon", epsilon, "slack")->capture_default_str();
  construct->add_option("--out", out_path, "diagram output file");

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "closed-form constants");
  double C = 0.5;
  double eps_prime = 0.01;
  double beta = 0.0;
  int k_max = 64;
  bounds_cmd->add_option("--C", C, "isoperimetric constant")->capture_default_str();
  bounds_cmd->add_option("--ell", ell, "relator length")->capture_default_str();
  bounds_cmd->add_option("--density", density, "density")->capture_default_str();
  bounds_cmd->add_option("--epsilon", epsilon, "slack")->capture_default_str();
  bounds_cmd->add_option("--eps-prime", eps_prime, "second slack")
      ->capture_default_str();
  bounds_cmd->add_option("--beta", beta, "beta for the bootstrap (default 1-2d-eps/2)");
  bounds_cmd->add_option("--kmax", k_max, "bootstrap steps")->capture_default_str();

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Monte Carlo runs");
  std::string exp_kind;
  std::string densities_text = "0.05,0.10,0.15";
  std::string faces_text = "4";
  int trials = 100;
  int faces = 4;
  int workers = 1;
  experiment->add_option("kind", exp_kind, "pieces | greendlinger | isoperimetry")
      ->required();
  experiment->add_option("--m", m, "generator count")->capture_default_str();
  experiment->add_option("--ell", ell, "relator length")->capture_default_str();
  experiment->add_option("--densities", densities_text, "comma separated d grid")
      ->capture_default_str();
  experiment->add_option("--trials", trials, "trials per grid point")
      ->capture_default_str();
  experiment->add_option("--faces", faces, "target faces (greendlinger)")
      ->capture_default_str();
  experiment->add_option("--faces-grid", faces_text, "faces grid (isoperimetry)")
      ->capture_default_str();
  experiment->add_option("--epsilon", epsilon, "slack")->capture_default_str();
  experiment->add_option("--seed", seed, "master seed")->capture_default_str();
  experiment->add_option("--workers", workers, "worker threads")->capture_default_str();
  experiment->add_option("--out", out_path, "CSV output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sample) {
      Presentation p = sample_presentation(m, ell, density, seed, count_override, count_cap);
      write_text(out_path, presentation_to_json(p));
      return kExitOk;
    }

    if (*pieces) {
      Presentation p = read_presentation(in_path);
      PieceSpectrum spectrum = piece_spectrum(p);
      std::cout << describe(spectrum.max) << '\n';
      if (!csv_path.empty()) {
        std::ostringstream csv;
        csv << "length,count\n";
        for (std::size_t len = 0; len < spectrum.histogram.size(); ++len) {
          if (spectrum.histogram[len] > 0) {
            csv << len << ',' << spectrum.histogram[len] << '\n';
          }
        }
        write_text(csv_path, csv.str());
      }
      return kExitOk;
    }

    if (*cancellation) {
      Presentation p = read_presentation(in_path);
      auto [num, den] = parse_lambda(lambda_text);
      CancellationReport report = small_cancellation_check(p, num, den);
      std::cout << "C'(" << lambda_text << ") " << (report.holds ? "holds" : "fails")
                << "; worst " << describe(report.worst) << '\n';
      return report.holds ? kExitOk : kExitCheckFailed;
    }

    if (*dehn) {
      Presentation p = read_presentation(in_path);
      Word w;
      if (!word_text.empty()) {
        w = free_reduce(parse_letters(word_text));
      } else if (trivial_k >= 0) {
        Rng rng(seed);
        w = random_trivial_word(p, trivial_k, rng);
      } else {
        throw std::runtime_error("pass --word or --trivial");
      }
      DehnTrace trace = dehn_reduce(w, p, cyclic);
      std::cout << "input length " << w.size() << ", steps " << trace.steps.size()
                << ", final length " << trace.final.size() << '\n';
      if (!trace.final.empty()) {
        std::cout << "final " << format_word(trace.final) << '\n';
      }
      if (!trace_path.empty()) {
        write_text(trace_path, trace_to_text(trace));
      }
      if (require_empty && !trace.final.empty()) {
        return kExitCheckFailed;
      }
      return kExitOk;
    }

    if (*dvalidate) {
      Presentation p = read_presentation(pres_path);
      Diagram d = read_diagram(in_path);
      ValidationReport report = validate(d, p);
      if (report.valid) {
        std::cout << "valid: faces " << d.face_count() << ", boundary "
                  << d.boundary_length() << ", vertices " << d.vertex_count()
                  << ", edges " << d.edge_count() << '\n';
        return kExitOk;
      }
      for (const std::string& v : report.violations) {
        std::cout << "violation: " << v << '\n';
      }
      return kExitCheckFailed;
    }

    if (*dcheck) {
      Presentation p = read_presentation(pres_path);
      Diagram d = read_diagram(in_path);
      ValidationReport vr = validate(d, p);
      if (!vr.valid) {
        for (const std::string& v : vr.violations) {
          std::cout << "violation: " << v << '\n';
        }
        return kExitCheckFailed;
      }
      const double dd = density_override.value_or(p.density());
      bool ok = true;
      std::cout << "reduced: " << (is_reduced_diagram(d) ? "yes" : "no") << '\n';
      IsoperimetryReport iso = isoperimetric_check(d, dd, epsilon);
      std::cout << "isoperimetry: |dD|=" << iso.boundary << " ratio=" << iso.ratio
                << " threshold=" << iso.threshold << ' '
                << (iso.holds ? "holds" : "fails") << '\n';
      ok = ok && iso.holds;
      if (d.face_count() >= 2) {
        GreendlingerReport gl = greendlinger_check(d, dd, epsilon);
        std::cout << "greendlinger: strong=" << gl.strong_faces.size()
                  << " weak=" << gl.weak_faces.size() << " threshold=" << gl.run_threshold
                  << ' ' << (gl.holds ? "holds" : "fails") << '\n';
        ok = ok && gl.holds;
      }
      return ok ? kExitOk : kExitCheckFailed;
    }

    if (*construct) {
      Presentation p = read_presentation(in_path);
      std::optional<Diagram> result;
      if (kind == "two-face") {
        result = build_two_face(p, epsilon);
        if (result) {
          std::cout << "two-face diagram: boundary " << result->boundary_length()
                    << " = 2*ell - 2*piece\n";
        }
      } else if (kind == "three-face") {
        auto three = build_three_face(p, epsilon);
        if (three) {
          std::cout << "three-face diagram: relators " << three->relators[0] << ','
                    << three->relators[1] << ',' << three->relators[2] << " w="
                    << three->w_length << " x=2*" << three->x_half << " boundary "
                    << three->diagram.boundary_length() << " retained "
                    << three->retained[0] << '/' << three->retained[1] << '\n';
          result = std::move(three->diagram);
        }
      } else if (kind == "counterexample") {
        auto ce = build_counterexample(p, epsilon);
        if (ce) {
          std::cout << "counterexample: boundary " << ce->diagram.boundary_length()
                    << ", no-dehn-face "
                    << (verify_no_dehn_face(ce->diagram) ? "yes" : "no") << '\n';
          result = std::move(ce->diagram);
        }
      } else {
        throw std::runtime_error("unknown construction kind: " + kind);
      }
      if (!result) {
        std::cout << "construction not found\n";
        return kExitCheckFailed;
      }
      if (!out_path.empty()) {
        write_text(out_path, diagram_to_json(*result));
      }
      return kExitOk;
    }

    if (*bounds_cmd) {
      const double b = beta != 0.0 ? beta : 1.0 - 2.0 * density - epsilon / 2.0;
      std::cout << "alpha(C)            = " << alpha(C) << '\n';
      std::cout << "min_K(C)            = " << min_K(C) << '\n';
      std::cout << "min_A(C)            = " << min_A(C) << '\n';
      auto side = side_conditions(C, min_A(C));
      std::cout << "side conditions     = " << (side.hold ? "hold" : "fail") << '\n';
      auto boot = bootstrap_beta(b, min_A(C), k_max);
      std::cout << "bootstrap inf       = " << boot.inf_lemma << " (lemma), "
                << boot.inf_paper << " (paper), deficit " << boot.analytic_deficit
                << '\n';
      std::cout << "delta bound         = " << delta_bound(ell, density, epsilon) << '\n';
      auto thresholds = greendlinger_threshold(ell, density, epsilon);
      std::cout << "greendlinger run    = " << thresholds.consecutive << '\n';
      std::cout << "greendlinger total  = " << thresholds.total << '\n';
      auto margin = counterexample_margin(ell, density, epsilon, eps_prime);
      std::cout << "counterexample marg = " << margin.margin << " ("
                << (margin.contradiction ? "contradiction" : "no contradiction")
                << "), eps* = " << margin.eps_star << '\n';
      return kExitOk;
    }

    if (*experiment) {
      std::string csv;
      if (exp_kind == "pieces") {
        PieceExperimentConfig cfg;
        cfg.m = m;
        cfg.ell = ell;
        cfg.densities = parse_grid(densities_text);
        cfg.trials = trials;
        cfg.eps = epsilon;
        cfg.master_seed = seed;
        csv = run_piece_experiment(cfg, workers);
      } else if (exp_kind == "greendlinger") {
        GreendlingerExperimentConfig cfg;
        cfg.m = m;
        cfg.ell = ell;
        cfg.densities = parse_grid(densities_text);
        cfg.faces = faces;
        cfg.trials = trials;
        cfg.eps = epsilon;
        cfg.master_seed = seed;
        csv = run_greendlinger_experiment(cfg, workers);
      } else if (exp_kind == "isoperimetry") {
        IsoperimetryExperimentConfig cfg;
        cfg.m = m;
        cfg.ell = ell;
        cfg.densities = parse_grid(densities_text);
        cfg.faces_grid = parse_int_grid(faces_text);
        cfg.trials = trials;
        cfg.eps = epsilon;
        cfg.master_seed = seed;
        csv = run_isoperimetry_experiment(cfg, workers);
      } else {
        throw std::runtime_error("unknown experiment kind: " + exp_kind);
      }
      write_text(out_path, csv);
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitOk;
}
