#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "legweb/foliation/foliation.hpp"
#include "legweb/webcurv/flatness.hpp"

namespace legweb::cli {

/// Names accepted in the "checks" list of a job.
const std::vector<std::string>& known_checks();

struct JobSpec {
  std::string name;
  /// Polynomial texts as written in the job file.
  std::optional<std::pair<std::string, std::string>> foliation_text;
  std::vector<std::string> line_texts;
  std::vector<std::string> checks;
  webcurv::FlatnessParams params;
  /// Expected flatness verdict; flat-consistent when absent.
  std::optional<bool> expect_flat;
  /// Expected convexity; convex when absent.
  std::optional<bool> expect_convex;

  foliation::PreFoliation pre;
};

/// Command-line values that take precedence over the job file.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<long> precision;
  std::optional<int> order;
  std::optional<double> tolerance;
  std::optional<int> points;
  unsigned threads = 1;
};

/// Parses a job file. Throws ParseError with the line and column in `text`
/// for malformed JSON and malformed polynomials, and InvalidInputError for
/// unknown checks, repeated lines or missing fields.
JobSpec parse_job(std::string_view text, std::string name);
JobSpec load_job(const std::filesystem::path& path);
void apply_overrides(JobSpec& spec, const Overrides& o);

struct CheckResult {
  std::string name;
  bool passed = false;
  nlohmann::ordered_json details;
};

struct JobResult {
  std::string name;
  std::vector<CheckResult> checks;
  /// Set when the job stopped on an error (for example a non-invariant line).
  std::optional<std::string> error;

  bool passed() const;
  nlohmann::ordered_json to_json(const JobSpec& spec) const;
};

/// Runs the requested checks in order. Throws InvarianceError naming the
/// first declared line that the foliation does not leave invariant.
JobResult run_job(const JobSpec& spec);

/// Writes `text` to `path` through a temporary file and a rename.
void write_atomically(const std::filesystem::path& path, const std::string& text);

/// One line per check: job, check, PASS or FAIL.
std::string summary_table(const std::vector<JobResult>& results);

}  // namespace legweb::cli
