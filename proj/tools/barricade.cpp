#include "barricade/gallery.hpp"
#include "barricade/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

// 0 = success / all match, 1 = verdict mismatch, 2 = usage or schema error,
// 3 = resource failure.
constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

void emit(const barricade::Json& report, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << report.dump(2) << "\n";
  }
}

int run_scenario_command(const std::string& path, const barricade::RunOptions& opt,
                         const std::string& out_path, bool solve_only) {
  barricade::Scenario s = barricade::parse_scenario(path);
  if (solve_only) {
    std::vector<barricade::Task> kept;
    for (const auto& t : s.tasks)
      if (std::holds_alternative<barricade::SolveTask>(t)) kept.push_back(t);
    s.tasks = std::move(kept);
  }
  barricade::Json report = barricade::run(s, opt);
  emit(report, out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"barricade: support functions, barrier cones, separation certificates"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, gallery_name;
  bool all_gallery = false, parallel = false, no_meta = false;
  double tol = -1.0;
  int max_iter = barricade::kMaxIter;
  long long seed = -1;
  int slice_n = 6;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--tol", tol, "override the separation/kkt tolerance");
    cmd->add_option("--seed", seed, "override the scenario seed");
    cmd->add_option("--max-iter", max_iter, "iteration budget for iterative routines");
    cmd->add_flag("--parallel", parallel, "run independent tasks concurrently");
    cmd->add_flag("--no-meta", no_meta, "omit wall-time metadata (byte-stable output)");
    cmd->add_option("--out", out_path, "write the report to a file instead of stdout");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "run every task of a scenario file");
  analyze->add_option("scenario", scenario_path, "scenario JSON file")->required();
  add_common(analyze);

  CLI::App* solve = app.add_subcommand("solve", "run only the solve tasks of a scenario file");
  solve->add_option("scenario", scenario_path, "scenario JSON file")->required();
  add_common(solve);

  CLI::App* gallery = app.add_subcommand("gallery", "run canonical fixtures and check verdicts");
  gallery->add_option("name", gallery_name, "gallery item name");
  gallery->add_flag("--all", all_gallery, "run the whole gallery");
  gallery->add_option("-n,--truncation", slice_n, "truncation dimension for slice fixtures");
  add_common(gallery);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  barricade::RunOptions opt;
  opt.parallel = parallel;
  opt.with_meta = !no_meta;
  opt.max_iter = max_iter;
  if (tol > 0) opt.tol_override = tol;
  if (seed >= 0) opt.seed_override = static_cast<unsigned>(seed);

  try {
    if (analyze->parsed()) return run_scenario_command(scenario_path, opt, out_path, false);
    if (solve->parsed()) return run_scenario_command(scenario_path, opt, out_path, true);

    // gallery
    std::vector<std::string> names;
    if (all_gallery) {
      names = barricade::gallery_names();
    } else if (!gallery_name.empty()) {
      names.push_back(gallery_name);
    } else {
      std::cerr << "gallery: provide a name or --all; known items:\n";
      for (const auto& n : barricade::gallery_names()) std::cerr << "  " << n << "\n";
      return kExitUsage;
    }
    barricade::Json combined = barricade::Json::array();
    bool all_match = true;
    for (const auto& name : names) {
      barricade::GalleryOutcome res;
      try {
        res = barricade::run_gallery_item(name, opt, slice_n);
      } catch (const std::out_of_range& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
      }
      all_match = all_match && res.matched;
      res.report["matched"] = res.matched;
      if (!res.matched) {
        barricade::Json mism = barricade::Json::array();
        for (const auto& m : res.mismatches) mism.push_back(m);
        res.report["mismatches"] = mism;
      }
      combined.push_back(std::move(res.report));
      std::cerr << (res.matched ? "[ ok ] " : "[FAIL] ") << name << "\n";
    }
    emit(combined.size() == 1 ? combined[0] : combined, out_path);
    return all_match ? kExitOk : kExitMismatch;
  } catch (const barricade::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::bad_alloc&) {
    std::cerr << "resource failure: out of memory\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  }
}
