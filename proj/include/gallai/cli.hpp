#pragma once

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gallai/boundary.hpp"
#include "gallai/constructions.hpp"
#include "gallai/core.hpp"
#include "gallai/io.hpp"
#include "gallai/matching.hpp"
#include "gallai/normalize.hpp"
#include "gallai/search.hpp"
#include "gallai/verifier.hpp"

namespace gallai::cli {

// Exit codes: 0 success / expected-absent, 1 property violation or
// counterexample, 2 usage or format error.

namespace detail {

inline std::string fmt(double x) { return format_double(x); }

inline void print_check(std::ostream& os, const ColouringTemplate& t, bool all) {
  auto sizes = t.class_sizes();
  auto dens = t.density_vector();
  os << "n: " << t.vertex_count() << "\n";
  os << "class sizes: " << sizes[0] << " " << sizes[1] << " " << sizes[2] << "\n";
  os << "density vector: " << fmt(dens.rho[0]) << " " << fmt(dens.rho[1]) << " "
     << fmt(dens.rho[2]) << "\n";
  os << "rainbow edges: " << t.rainbow_edges().size() << "\n";
  os << "bichromatic edges: " << t.bichromatic_edges().size() << "\n";
  auto triangles = t.rainbow_triangles();
  os << "gallai: " << (triangles.empty() ? "true" : "false") << "\n";
  os << "rainbow triangles: " << triangles.size() << "\n";
  const std::size_t cap = all ? triangles.size() : std::min<std::size_t>(triangles.size(), 20);
  for (std::size_t i = 0; i < cap; ++i)
    os << "  {" << triangles[i][0] << "," << triangles[i][1] << "," << triangles[i][2] << "}\n";
  if (cap < triangles.size())
    os << "  ... " << (triangles.size() - cap) << " more (use --all)\n";
  os << "g value: " << fmt(t.g_value()) << "\n";
}

inline void write_boundary_csv(const std::string& path, const std::vector<BoundaryGridRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << "alpha1,alpha2,label,alpha3\n";
  for (const auto& r : rows) {
    out << fmt(r.alpha1) << ',' << fmt(r.alpha2) << ',' << r.label << ',';
    if (r.alpha3) out << fmt(*r.alpha3);
    out << '\n';
  }
}

inline void write_trace_csv(const std::string& path, const NormalizationTrace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << "step,action,edge,colour_from,colour_to,g_after\n";
  for (const auto& r : trace.records)
    out << r.step << ',' << r.action << ',' << r.edge.first << '-' << r.edge.second << ','
        << r.colour_from << ',' << r.colour_to << ',' << fmt(r.g_after) << '\n';
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& os = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"3-colouring template toolkit: constructions, rainbow-triangle analysis, "
               "forcing boundaries and certified verification"};
  app.require_subcommand(1);

  // construct
  std::string kind_str;
  int c_a = 0, c_b = 0, c_c = 0;
  std::string out_path, trace_path, init_path;
  auto* construct = app.add_subcommand("construct", "build an F or H template");
  construct->add_option("--kind", kind_str, "F or H")->required()->check(CLI::IsMember({"F", "H"}));
  construct->add_option("--a", c_a, "size of part A")->required();
  construct->add_option("--b", c_b, "size of part B")->required();
  construct->add_option("--c", c_c, "size of part C")->required();
  construct->add_option("--out", out_path, "output template file")->required();

  // check
  std::string check_path;
  bool check_all = false;
  auto* check = app.add_subcommand("check", "report structure of a template file");
  check->add_option("file", check_path, "template file")->required();
  check->add_flag("--all", check_all, "print the full rainbow triangle list");

  // classify
  double a1 = 0, a2 = 0, a3 = 0;
  auto* classify_cmd = app.add_subcommand("classify", "classify a density pair");
  classify_cmd->add_option("--a1", a1, "alpha1")->required();
  classify_cmd->add_option("--a2", a2, "alpha2")->required();

  // boundary
  int resolution = 0;
  auto* boundary_cmd = app.add_subcommand("boundary", "emit the region grid as CSV");
  boundary_cmd->add_option("--resolution", resolution, "grid resolution")->required();
  boundary_cmd->add_option("--out", out_path, "output CSV file")->required();

  // verify-appendix
  int grid = 8000;
  auto* verify_cmd = app.add_subcommand("verify-appendix", "certify k(d) >= 0 on [0,1]");
  verify_cmd->add_option("--grid", grid, "grid point count (default 8000)");

  // lemma28
  double step = 0.01, sum_bound = 1.0;
  bool relax7 = false;
  auto* lemma_cmd = app.add_subcommand("lemma28", "search the easy-case inequality system");
  lemma_cmd->add_option("--a1", a1, "alpha1")->required();
  lemma_cmd->add_option("--a2", a2, "alpha2")->required();
  lemma_cmd->add_option("--step", step, "grid step (default 0.01)");
  lemma_cmd->add_option("--sum-bound", sum_bound, "profile sum bound (default 1)");
  lemma_cmd->add_flag("--relax7", relax7, "treat inequality (7) as non-strict");

  // search
  int n = 0;
  std::string objective_str = "sum";
  bool exhaustive = false;
  std::uint64_t budget = 10000, seed = 0;
  auto* search_cmd = app.add_subcommand("search", "optimize an objective over gallai templates");
  search_cmd->add_option("--n", n, "vertex count")->required();
  search_cmd->add_option("--objective", objective_str, "sum|min|geomean")
      ->check(CLI::IsMember({"sum", "min", "geomean"}));
  search_cmd->add_flag("--exhaustive", exhaustive, "exhaustive enumeration (n <= 5)");
  search_cmd->add_option("--budget", budget, "local search step budget");
  search_cmd->add_option("--seed", seed, "random seed");
  search_cmd->add_option("--init", init_path, "initial template file");

  // normalize
  std::string norm_path;
  double c_param = 6.0;
  auto* normalize_cmd = app.add_subcommand("normalize", "run the hard-case cleanup");
  normalize_cmd->add_option("file", norm_path, "template file")->required();
  normalize_cmd->add_option("--c", c_param, "constant C (default 6)");
  normalize_cmd->add_option("--out", out_path, "output template file")->required();
  normalize_cmd->add_option("--trace", trace_path, "trace CSV file")->required();

  // blowup
  std::string blow_path;
  int blow_k = 1;
  auto* blow_cmd = app.add_subcommand("blowup", "balanced blow-up of a template");
  blow_cmd->add_option("file", blow_path, "template file")->required();
  blow_cmd->add_option("--k", blow_k, "blow-up factor")->required();
  blow_cmd->add_option("--out", out_path, "output template file")->required();

  // witness
  int w_n = 0;
  auto* witness_cmd = app.add_subcommand("witness", "non-forcing witness construction");
  witness_cmd->add_option("--a1", a1, "alpha1")->required();
  witness_cmd->add_option("--a2", a2, "alpha2")->required();
  witness_cmd->add_option("--a3", a3, "alpha3")->required();
  witness_cmd->add_option("--n", w_n, "vertex count")->required();
  witness_cmd->add_option("--out", out_path, "output template file")->required();

  std::vector<const char*> argv;
  argv.push_back("gallai");
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, os, err);
    return 2;
  }

  try {
    if (*construct) {
      auto kind = kind_str == "F" ? ConstructionKind::F : ConstructionKind::H;
      ColouringTemplate t = build_construction(kind, c_a, c_b, c_c);
      write_template_file(t, out_path);
      auto sizes = t.class_sizes();
      os << kind_str << "(" << c_a << "," << c_b << "," << c_c << "): n=" << t.vertex_count()
         << " sizes " << sizes[0] << "/" << sizes[1] << "/" << sizes[2] << " -> " << out_path
         << "\n";
      return 0;
    }
    if (*check) {
      detail::print_check(os, read_template_file(check_path), check_all);
      return 0;
    }
    if (*classify_cmd) {
      RegionClassification c = classify(a1, a2);
      os << to_string(c.label);
      if (c.canonical)
        os << ", x=" << detail::fmt(c.canonical->x) << ", y=" << detail::fmt(c.canonical->y)
           << ", z=" << detail::fmt(c.canonical->z);
      if (c.alpha3) os << ", alpha3=" << detail::fmt(*c.alpha3);
      if (c.on_shared_curve) os << " (on the R1'/R2 boundary curve)";
      os << "\n";
      return 0;
    }
    if (*boundary_cmd) {
      detail::write_boundary_csv(out_path, boundary_grid(resolution));
      os << "wrote " << resolution * resolution << " rows to " << out_path << "\n";
      return 0;
    }
    if (*verify_cmd) {
      LipschitzCertificate cert;
      try {
        cert = verify_appendix(grid);
      } catch (const CertificationFailure& e) {
        err << e.what() << "\n";
        return 1;
      }
      os << "interval: [" << detail::fmt(cert.a) << ", " << detail::fmt(cert.b) << "]\n";
      os << "grid points: " << cert.grid_count << "\n";
      os << "lipschitz bound: " << detail::fmt(cert.lipschitz_bound) << "\n";
      os << "grid min: " << detail::fmt(cert.grid_min) << " at d=" << detail::fmt(cert.grid_argmin)
         << "\n";
      os << "spacing: " << detail::fmt(cert.spacing) << "\n";
      os << "certified lower bound: " << detail::fmt(cert.certified_lower_bound) << "\n";
      os << "success: " << (cert.success ? "true" : "false") << "\n";
      return 0;
    }
    if (*lemma_cmd) {
      auto found = lemma28_search(a1, a2, step, sum_bound, relax7);
      if (!found) {
        os << "no profile with a12+a13+a23+d <= " << detail::fmt(sum_bound)
           << " satisfies (5)-(11) at step " << detail::fmt(step) << "\n";
        return 0;
      }
      os << "feasible profile: a12=" << detail::fmt(found->a12) << " a13=" << detail::fmt(found->a13)
         << " a23=" << detail::fmt(found->a23) << " d=" << detail::fmt(found->d) << "\n";
      return 1;
    }
    if (*search_cmd) {
      Objective obj = objective_str == "sum"   ? Objective::Sum
                      : objective_str == "min" ? Objective::MinClass
                                               : Objective::GeometricMean;
      SearchResult res;
      if (exhaustive) {
        res = enumerate_gallai(n, obj, n >= 5);
      } else {
        ColouringTemplate init =
            init_path.empty()
                ? ColouringTemplate(n, std::array<std::vector<Edge>, 3>{})
                : read_template_file(init_path);
        res = local_search(n, obj, init, budget, seed);
      }
      os << "objective " << res.objective << ": value " << detail::fmt(res.value)
         << (res.exhaustive ? " (exhaustive optimum, " : " (local search, ")
         << res.templates_visited << " templates)\n";
      os << to_json(res.best) << "\n";
      return 0;
    }
    if (*normalize_cmd) {
      ColouringTemplate t = read_template_file(norm_path);
      std::pair<ColouringTemplate, NormalizationTrace> result;
      try {
        result = normalize_hard_case(t, c_param);
      } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return 1;
      }
      write_template_file(result.first, out_path);
      detail::write_trace_csv(trace_path, result.second);
      os << "g before: " << detail::fmt(result.second.g_before)
         << ", g after: " << detail::fmt(result.second.g_after)
         << ", early exit: " << (result.second.early_exit ? "true" : "false") << ", "
         << result.second.records.size() << " actions\n";
      return 0;
    }
    if (*blow_cmd) {
      write_template_file(read_template_file(blow_path).blow_up(blow_k), out_path);
      os << "wrote " << out_path << "\n";
      return 0;
    }
    if (*witness_cmd) {
      NonForcingWitness w;
      try {
        w = witness_non_forcing(a1, a2, a3, w_n);
      } catch (const std::domain_error& e) {
        err << e.what() << "\n";
        return 1;
      }
      write_template_file(w.tmpl, out_path);
      os << "case " << w.case_label << ": F(" << w.params.a << "," << w.params.b << ","
         << w.params.c << ") -> " << out_path << "\n";
      return 0;
    }
  } catch (const TemplateFormatError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace gallai::cli
