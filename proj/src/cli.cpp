#include "rainbow/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rainbow/density.hpp"
#include "rainbow/errors.hpp"
#include "rainbow/extremal.hpp"
#include "rainbow/io.hpp"
#include "rainbow/parallel.hpp"
#include "rainbow/regularity.hpp"
#include "rainbow/sampling.hpp"
#include "rainbow/search.hpp"

namespace rainbow::cli {

using nlohmann::json;

namespace {

std::vector<Table> nonempty_blocks(const StepGraphonSystem& W) {
  std::vector<Table> out;
  for (ColorSet I = 1; I < W.set_count(); ++I) out.push_back(W.block(I));
  return out;
}

void emit_json(const json& j, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") out << j.dump(2) << '\n';
  else write_text_file(path, j.dump(2) + "\n");
}

// "id:color,id:color"
void apply_psi(TemplateSpec& t, const std::string& text) {
  if (text.empty()) return;
  t.psi.assignments.clear();
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto colon = item.find(':');
    require(colon != std::string::npos, "--psi expects id:color pairs");
    try {
      t.psi.assignments[std::stoi(item.substr(0, colon))] = std::stoi(item.substr(colon + 1));
    } catch (const std::exception&) {
      throw ValidationError("--psi expects id:color pairs, got \"" + item + "\"");
    }
  }
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ValidationError("expected a comma separated integer list, got \"" + text + "\"");
    }
  }
  return out;
}

json regularity_to_json(const RegularityResult& r, int n) {
  json rounds = json::array();
  for (const auto& x : r.rounds)
    rounds.push_back({{"parts", x.parts}, {"discrepancy", x.discrepancy}, {"residual_l2", x.residual_l2}});
  return {{"n", n},
          {"parts", r.parts},
          {"cell_of", r.cell_of},
          {"rounds", rounds},
          {"final_residual_l2", r.final_residual_l2},
          {"certificate", {{"lower", r.certificate.lower}, {"upper", r.certificate.upper}}}};
}

std::string structure_text(const ZeroStructure& S) {
  std::ostringstream o;
  for (Color c = 1; c <= S.k; ++c) {
    o << "color " << c << ":";
    for (int a = 0; a < S.m; ++a) {
      o << (a ? " / " : " ");
      for (int b = 0; b < S.m; ++b) o << (S.at(c, a, b) ? '1' : '0');
    }
    o << '\n';
  }
  return o.str();
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rainbow densities, cut norms and extremal numbers of graph systems", "rainbow"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 0;
  app.add_option("--threads", threads, "Worker cap (0 = all cores)");
  bool version = false;
  app.add_flag("--version", version, "Print the schema version");

  std::uint64_t seed = 0;
  std::string sys_path, sys_b, tmpl_path, graph_path, out_path, psi_text;

  auto* c_density = app.add_subcommand("density", "Homomorphism density of a template");
  std::string mode = "rainbow";
  c_density->add_option("--template", tmpl_path)->required();
  c_density->add_option("--system", sys_path)->required();
  c_density->add_option("--mode", mode)->check(CLI::IsMember({"rainbow", "colored", "induced"}));
  c_density->add_option("--psi", psi_text, "Override the pre-coloring, id:color,...");

  auto* c_cut = app.add_subcommand("cutnorm", "Cut norm of a system or cut distance of two");
  bool exact = false, heuristic = false;
  int restarts = 200;
  c_cut->add_option("--a", sys_path)->required();
  c_cut->add_option("--b", sys_b);
  auto* f_exact = c_cut->add_flag("--exact", exact);
  c_cut->add_flag("--heuristic", heuristic)->excludes(f_exact);
  c_cut->add_option("--seed", seed);
  c_cut->add_option("--restarts", restarts, "Coupling restarts for delta");

  auto* c_sample = app.add_subcommand("sample", "Sample G(n, W)");
  int n = 0;
  c_sample->add_option("--system", sys_path)->required();
  c_sample->add_option("--n", n)->required()->check(CLI::NonNegativeNumber);
  c_sample->add_option("--seed", seed);
  c_sample->add_option("--out", out_path);

  auto* c_trace = app.add_subcommand("trace", "Cut distance of G(n, W) to W over n and seeds");
  std::string ns_text = "100,200,400", csv_path;
  int seeds = 10;
  bool no_lower = false;
  c_trace->add_option("--system", sys_path)->required();
  c_trace->add_option("--ns", ns_text);
  c_trace->add_option("--seeds", seeds)->check(CLI::PositiveNumber);
  c_trace->add_option("--seed", seed, "Base seed");
  c_trace->add_option("--csv", csv_path);
  c_trace->add_flag("--no-lower", no_lower, "Skip the template lower bound");

  auto* c_reg = app.add_subcommand("regularity", "Weak regularity partition of a graph system");
  int parts = 64;
  double tol = kDefaultRegularityTolerance;
  c_reg->add_option("--graph", graph_path)->required();
  c_reg->add_option("--parts", parts)->check(CLI::PositiveNumber);
  c_reg->add_option("--seed", seed);
  c_reg->add_option("--tol", tol);
  c_reg->add_option("--out", out_path);

  auto* c_search = app.add_subcommand("search", "Find a rainbow copy of a template");
  c_search->add_option("--graph", graph_path)->required();
  c_search->add_option("--template", tmpl_path)->required();
  c_search->add_option("--psi", psi_text);

  auto* c_ext = app.add_subcommand("extremal-exact", "Exact rainbow extremal number at tiny n");
  int k = 0, iterations = 200;
  bool randomized = false;
  c_ext->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  c_ext->add_option("--k", k)->required();
  c_ext->add_option("--template", tmpl_path)->required();
  c_ext->add_option("--psi", psi_text);
  c_ext->add_flag("--randomized", randomized, "Local search lower bound past the size guard");
  c_ext->add_option("--iterations", iterations);
  c_ext->add_option("--seed", seed);
  c_ext->add_option("--out", out_path, "Witness graph system JSON");

  auto* c_pi = app.add_subcommand("pi-star", "Rainbow Turan density of a tree at m parts");
  int m = 0;
  std::string export_dir;
  int opt_restarts = 64;
  c_pi->add_option("--tree", tmpl_path)->required();
  c_pi->add_option("--k", k)->required();
  c_pi->add_option("--m", m)->required()->check(CLI::PositiveNumber);
  c_pi->add_option("--psi", psi_text);
  c_pi->add_option("--seed", seed);
  c_pi->add_option("--restarts", opt_restarts);
  c_pi->add_option("--export-programs", export_dir);

  auto* c_con = app.add_subcommand("construct", "Explicit constructions");
  std::string kind;
  int l = 2;
  std::string alphas_text;
  c_con->add_option("--kind", kind)->required()->check(CLI::IsMember({"star-free", "bipartite", "thm14"}));
  c_con->add_option("--k", k);
  c_con->add_option("--l", l);
  c_con->add_option("--n", n);
  c_con->add_option("--alphas", alphas_text);
  c_con->add_option("--out", out_path);

  auto* c_check = app.add_subcommand("check", "Admissibility of a system");
  c_check->add_option("--system", sys_path)->required();

  // --version alone is allowed without a subcommand.
  if (std::find(args.begin(), args.end(), "--version") != args.end() && args.size() == 1) {
    out << "rainbow schema " << kSchemaVersion << '\n';
    return kExitOk;
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  if (version) out << "rainbow schema " << kSchemaVersion << '\n';

  try {
    set_thread_count(threads);
    if (*c_density) {
      TemplateSpec t = load_template(tmpl_path);
      apply_psi(t, psi_text);
      const StepGraphonSystem W = system_from_json(read_json_file(sys_path));
      const DensityMode dm = mode == "colored"   ? DensityMode::Colored
                             : mode == "induced" ? DensityMode::Induced
                                                 : DensityMode::Rainbow;
      out << fmt12(density({t.graph, t.psi, W, dm})) << '\n';
    } else if (*c_cut) {
      const StepGraphonSystem A = system_from_json(read_json_file(sys_path));
      if (sys_b.empty()) {
        const auto tuple = nonempty_blocks(A);
        if (exact) {
          out << "value " << fmt12(cut_norm_exact(tuple, A.sizes()).value) << '\n';
        } else if (heuristic) {
          out << "value " << fmt12(cut_norm_heuristic(tuple, A.sizes(), 20, seed).value) << '\n';
        } else {
          const Interval iv = cut_norm_interval(tuple, A.sizes(), seed);
          out << "lower " << fmt12(iv.lower) << "\nupper " << fmt12(iv.upper) << '\n';
        }
      } else {
        const StepGraphonSystem B = system_from_json(read_json_file(sys_b));
        require(A.colors() == B.colors(), "systems have different color counts");
        if (A.sizes() == B.sizes() && (exact || heuristic)) {
          const auto diff = difference_tables(A, B);
          const double v = exact ? cut_norm_exact(diff, A.sizes()).value
                                 : cut_norm_heuristic(diff, A.sizes(), 20, seed).value;
          out << "value " << fmt12(v) << '\n';
        } else if (A.sizes() == B.sizes()) {
          const Interval iv = d_box_interval(A, B, seed);
          out << "lower " << fmt12(iv.lower) << "\nupper " << fmt12(iv.upper) << '\n';
        } else {
          require(!exact, "--exact needs two systems on the same partition");
          CouplingSearchOptions opt;
          opt.restarts = restarts;
          opt.seed = seed;
          const Interval iv = delta_box(A, B, opt);
          out << "delta_lower " << fmt12(iv.lower) << "\ndelta_upper " << fmt12(iv.upper) << '\n';
        }
      }
    } else if (*c_sample) {
      const StepGraphonSystem W = system_from_json(read_json_file(sys_path));
      const SampledGraph G = sample_random_graph(n, W, seed);
      json j = graph_system_to_json(G.graph);
      j["labels"] = G.labels;
      emit_json(j, out_path, out);
      if (!out_path.empty() && out_path != "-")
        for (Color c = 1; c <= W.colors(); ++c)
          out << "edges " << c << ' ' << G.graph.edge_count(c) << '\n';
    } else if (*c_trace) {
      const StepGraphonSystem W = system_from_json(read_json_file(sys_path));
      const std::vector<int> ns = parse_int_list(ns_text);
      const auto rows = convergence_trace(W, ns, seeds, seed, !no_lower);
      if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        require(static_cast<bool>(f), "cannot write " + csv_path);
        write_trace_csv(f, rows);
      }
      const auto med = median_upper_by_n(rows, ns);
      for (std::size_t i = 0; i < ns.size(); ++i)
        out << "n " << ns[i] << " median_upper " << fmt12(med[i]) << '\n';
    } else if (*c_reg) {
      const GraphSystem G = graph_system_from_json(read_json_file(graph_path));
      const RegularityResult r = weak_regularity_partition(G, parts, seed, tol);
      emit_json(regularity_to_json(r, G.vertex_count()), out_path, out);
      if (!out_path.empty() && out_path != "-")
        out << "parts " << r.parts << "\ncertificate " << fmt12(r.certificate.lower) << ' '
            << fmt12(r.certificate.upper) << '\n';
    } else if (*c_search) {
      TemplateSpec t = load_template(tmpl_path);
      apply_psi(t, psi_text);
      const GraphSystem G = graph_system_from_json(read_json_file(graph_path));
      if (auto copy = find_rainbow_copy(G, t.graph, t.psi)) {
        json j = {{"found", true}, {"vertex_map", copy->vertex_map}, {"edge_colors", copy->edge_colors}};
        out << j.dump() << '\n';
      } else {
        out << json{{"found", false}}.dump() << '\n';
      }
    } else if (*c_ext) {
      TemplateSpec t = load_template(tmpl_path);
      apply_psi(t, psi_text);
      ExtremalOptions opt{randomized, iterations, seed};
      const ExtremalResult r = exact_extremal_number(n, k, t.graph, t.psi, opt);
      out << r.value << '\n' << (r.exact ? "exact" : "lower bound (randomized search)") << '\n';
      if (!out_path.empty() && r.value >= 0) write_text_file(out_path, graph_system_to_json(r.witness).dump(2) + "\n");
    } else if (*c_pi) {
      TemplateSpec t = load_template(tmpl_path);
      apply_psi(t, psi_text);
      t.psi.k = k;
      OptimizerOptions opt;
      opt.seed = seed;
      opt.restarts = opt_restarts;
      int index = 0;
      if (!export_dir.empty()) std::filesystem::create_directories(export_dir);
      auto each = [&](const ZeroStructure&, const MinQuadraticProgram& P, const OptimizeResult&) {
        if (export_dir.empty()) return;
        const std::string base = export_dir + "/program_" + std::to_string(index++);
        write_text_file(base + ".json", export_program_json(P) + "\n");
        write_text_file(base + ".txt", export_program_text(P));
      };
      const PiStarResult r = pi_star_tree(t.graph, t.psi, k, m, opt, each);
      out << fmt12(r.value) << '\n';
      out << "lower bound (exact once m reaches the structure bound)\n";
      out << "structures " << r.structures << '\n';
      if (r.structures > 0) {
        out << "point";
        for (double x : r.point) out << ' ' << fmt12(x);
        out << '\n' << structure_text(r.structure);
      }
    } else if (*c_con) {
      if (kind == "star-free") {
        emit_json(system_to_json(construction_lemma72(k)), out_path, out);
      } else if (kind == "bipartite") {
        emit_json(system_to_json(construction_bipartite(k, l)), out_path, out);
      } else {
        std::vector<double> alphas;
        std::istringstream in(alphas_text);
        std::string item;
        while (std::getline(in, item, ',')) {
          try {
            alphas.push_back(std::stod(item));
          } catch (const std::exception&) {
            throw ValidationError("--alphas expects comma separated numbers");
          }
        }
        emit_json(graph_system_to_json(construction_thm14(n, alphas)), out_path, out);
      }
    } else if (*c_check) {
      const StepGraphonSystem W = system_from_json(read_json_file(sys_path));
      const AdmissibilityReport rep = is_admissible(W);
      if (rep.admissible) {
        out << "admissible\n";
      } else {
        out << "not admissible\nwitness set {" << to_text(rep.set) << "} cell " << rep.row << ' '
            << rep.col << " overline " << fmt12(rep.value) << '\n';
      }
    }
  } catch (const ScaleGuardError& e) {
    err << "scale guard: " << e.what() << '\n';
    return kExitScale;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const json::exception& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace rainbow::cli
