#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <iostream>

#include "legweb/cli/job.hpp"
#include "legweb/errors.hpp"
#include "legweb/util/parallel.hpp"

namespace fs = std::filesystem;
using legweb::cli::JobResult;
using legweb::cli::JobSpec;
using nlohmann::ordered_json;

namespace {

struct Outcome {
  JobSpec spec;
  JobResult result;
};

Outcome run_one(const fs::path& path, const legweb::cli::Overrides& overrides) {
  Outcome out{{}, {path.stem().string(), {}, std::nullopt}};
  try {
    out.spec = legweb::cli::load_job(path);
    out.spec.name = path.stem().string();
    legweb::cli::apply_overrides(out.spec, overrides);
    out.result = legweb::cli::run_job(out.spec);
  } catch (const legweb::InvarianceError& e) {
    out.result.error = std::string("invariance error: ") + e.what();
  } catch (const legweb::ParseError& e) {
    out.result.error = path.string() + ":" + e.what();
  } catch (const legweb::Error& e) {
    out.result.error = e.what();
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Legendre-dual web curvature checks"};
  app.require_subcommand(1);
  app.fallthrough();

  legweb::cli::Overrides overrides;
  std::uint64_t seed = 0;
  long precision = 0;
  int order = 0;
  double tolerance = 0;
  int points = 0;
  std::string json_path;
  auto* seed_opt = app.add_option("--seed", seed, "Base point seed");
  auto* prec_opt = app.add_option("--precision", precision, "Working precision in bits")->check(CLI::Range(64L, 4096L));
  auto* order_opt = app.add_option("--order", order, "Series order")->check(CLI::Range(2, 20));
  auto* tol_opt = app.add_option("--tolerance", tolerance, "Flatness tolerance");
  auto* points_opt = app.add_option("--points", points, "Number of base points")->check(CLI::PositiveNumber);
  app.add_option("--threads", overrides.threads, "Worker threads")->check(CLI::Range(1U, 256U));
  app.add_option("--json", json_path, "Write the JSON report to this path");

  std::string job_file;
  auto* run = app.add_subcommand("run", "Run one job file");
  run->add_option("job", job_file, "Job file")->required()->check(CLI::ExistingFile);
  std::string job_dir;
  auto* all = app.add_subcommand("verify-all", "Run every job file in a directory");
  all->add_option("dir", job_dir, "Directory of job files")->required()->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);
  if (*seed_opt) overrides.seed = seed;
  if (*prec_opt) overrides.precision = precision;
  if (*order_opt) overrides.order = order;
  if (*tol_opt) overrides.tolerance = tolerance;
  if (*points_opt) overrides.points = points;

  std::vector<fs::path> paths;
  if (*run) {
    paths.push_back(job_file);
  } else {
    for (const auto& entry : fs::directory_iterator(job_dir))
      if (entry.is_regular_file() && entry.path().extension() == ".json") paths.push_back(entry.path());
    std::sort(paths.begin(), paths.end());
  }

  // Jobs share the worker budget; a single job gets all of it.
  legweb::cli::Overrides per_job = overrides;
  if (paths.size() > 1) per_job.threads = 1;
  std::vector<std::optional<Outcome>> outcomes(paths.size());
  legweb::util::parallel_for(paths.size(), overrides.threads,
                             [&](std::size_t i) { outcomes[i] = run_one(paths[i], per_job); });

  std::vector<JobResult> results;
  ordered_json reports = ordered_json::array();
  bool ok = true;
  for (auto& o : outcomes) {
    results.push_back(o->result);
    reports.push_back(o->result.to_json(o->spec));
    ok = ok && o->result.passed();
  }
  ordered_json report = *run ? reports.front() : ordered_json{{"jobs", reports}, {"passed", ok}};

  std::cout << legweb::cli::summary_table(results);
  for (const auto& r : results)
    if (r.error) std::cerr << r.name << ": " << *r.error << "\n";
  if (!json_path.empty()) {
    try {
      legweb::cli::write_atomically(json_path, report.dump(2) + "\n");
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
  }
  std::cout << (ok ? "all checks passed" : "some checks failed") << "\n";
  return ok ? 0 : 1;
}
