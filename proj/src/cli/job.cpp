#include "legweb/cli/job.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "legweb/algebra/parser.hpp"
#include "legweb/errors.hpp"
#include "legweb/legendre/legendre.hpp"
#include "legweb/webcurv/combine.hpp"
#include "legweb/webcurv/exact.hpp"

namespace legweb::cli {

using algebra::GaussianRational;
using algebra::Poly;
using algebra::Var;
using foliation::ProjectiveLine;
using nlohmann::ordered_json;

namespace {

struct Position {
  int line = 1;
  int column = 1;
};

Position position_of(std::string_view text, std::size_t offset) {
  Position pos;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
  }
  return pos;
}

// Parses a polynomial string taken from the job file, reporting errors at the
// position of the offending character in the file when the literal can be found.
Poly parse_field(std::string_view file_text, const std::string& value, const std::string& field) {
  try {
    return algebra::parse_poly(value);
  } catch (const ParseError& e) {
    const std::string quoted = "\"" + value + "\"";
    const auto at = file_text.find(quoted);
    std::string msg = e.what();
    msg = field + ": " + msg.substr(msg.find(": ") + 2);
    if (at == std::string_view::npos) throw ParseError(msg, e.line(), e.column());
    auto pos = position_of(file_text, at + static_cast<std::size_t>(e.column()));
    throw ParseError(msg, pos.line, pos.column);
  }
}

ordered_json point_json(const foliation::SingularPoint& s) { return s.to_string(); }

// Whether a singular point lies on the line, in its own chart.
bool point_on_line(const foliation::SingularPoint& s, const ProjectiveLine& l, analytic::Precision prec) {
  Poly form;
  Var a = Var::x, b = Var::y;
  switch (s.chart) {
    case foliation::Chart::affine:
      if (l.is_at_infinity()) return false;
      form = l.form();
      break;
    case foliation::Chart::infinity:
      form = l.in_infinity_chart();
      a = Var::u;
      b = Var::v;
      break;
    case foliation::Chart::vertical:
      form = l.in_vertical_chart();
      a = Var::u;
      b = Var::v;
      break;
  }
  if (s.exact) {
    std::vector<std::pair<Var, GaussianRational>> pt{{a, (*s.exact)[0]}, {b, (*s.exact)[1]}};
    return form.evaluate(pt).is_zero();
  }
  auto value = analytic::evaluate(form, {{a, s.numeric.first}, {b, s.numeric.second}}, prec);
  return value.abs_double() < std::ldexp(1.0, -static_cast<int>(prec) / 4);
}

legendre::ImplicitWeb leg_of_line(const ProjectiveLine& l) {
  return legendre::legendre_transform(foliation::PreFoliation{{l}, std::nullopt});
}

bool same_up_to_unit(const Poly& a, const Poly& b) { return a.monic() == b.monic(); }

CheckResult check_info(const JobSpec& spec) {
  CheckResult r{"info", true, ordered_json::object()};
  const auto& pre = spec.pre;
  r.details["pre_foliation"] = pre.to_string();
  r.details["degree"] = pre.degree();
  r.details["codegree"] = pre.codegree();
  if (pre.foliation) {
    const auto& f = *pre.foliation;
    r.details["foliation_degree"] = foliation::foliation_degree(f);
    ordered_json pts = ordered_json::array();
    for (const auto& s : foliation::projective_singular_points(f, spec.params.precision)) pts.push_back(point_json(s));
    r.details["singular_points"] = pts;
    ordered_json radial = ordered_json::array();
    for (const auto& [s, order] : foliation::radial_singularities(f, spec.params.precision))
      radial.push_back({{"point", s.to_string()}, {"order", order}});
    r.details["radial_singularities"] = radial;
  }
  return r;
}

CheckResult check_convexity(const JobSpec& spec) {
  CheckResult r{"convexity", false, ordered_json::object()};
  if (!spec.pre.foliation) throw InvalidInputError("convexity: the job has no foliation");
  const auto& f = *spec.pre.foliation;
  const bool convex = foliation::is_convex(f, spec.pre.lines);
  const int degree = foliation::foliation_degree(f);
  r.details["inflection_polynomial"] = foliation::inflection_polynomial(f).to_string();
  r.details["invariant_lines"] = spec.pre.codegree();
  r.details["maximum_invariant_lines"] = 3 * degree;
  r.details["convex"] = convex;
  r.details["convex_reduced"] = convex && spec.pre.codegree() == 3 * degree;
  r.details["expected"] = spec.expect_convex.value_or(true);
  r.passed = convex == spec.expect_convex.value_or(true);
  return r;
}

CheckResult check_legendre(const JobSpec& spec) {
  CheckResult r{"legendre", false, ordered_json::object()};
  auto web = legendre::legendre_transform(spec.pre);
  ordered_json factors = ordered_json::array();
  for (const auto& fac : web.factors())
    factors.push_back({{"kind", legendre::factor_kind_name(fac.kind)},
                       {"source", fac.source},
                       {"polynomial", fac.kind == legendre::FactorKind::vertical ? "dp" : fac.polynomial.to_string()}});
  const std::string printed = web.polynomial().to_string();
  const bool round_trip = algebra::parse_poly(printed) == web.polynomial();
  r.details["polynomial"] = printed;
  r.details["factors"] = factors;
  r.details["slope_degree"] = web.slope_degree();
  r.details["round_trip"] = round_trip;
  r.passed = round_trip && web.slope_degree() == spec.pre.degree();
  return r;
}

CheckResult check_discriminant(const JobSpec& spec) {
  CheckResult r{"discriminant", true, ordered_json::object()};
  auto web = legendre::legendre_transform(spec.pre);
  r.details["discriminant"] = legendre::discriminant(web).to_string();
  if (!spec.pre.foliation) return r;
  const auto& f = *spec.pre.foliation;
  const auto prec = spec.params.precision;

  auto leg_f = legendre::legendre_transform(foliation::PreFoliation{{}, f});
  Poly disc_f = legendre::discriminant(leg_f);
  Poly radial_product(1);
  int invisible = 0;
  for (const auto& [s, order] : foliation::radial_singularities(f, prec)) {
    if (!s.exact) continue;
    if (auto d = legendre::dual_line(s))
      radial_product *= d->form;
    else
      ++invisible;
  }
  const bool divides = disc_f.divisible_by(radial_product);
  r.details["foliation_discriminant"] = disc_f.to_string();
  r.details["radial_dual_lines"] = radial_product.to_string();
  r.details["radial_points_without_dual_line"] = invisible;
  r.details["radial_duals_divide_discriminant"] = divides;
  r.details["discriminant_equals_radial_duals"] = same_up_to_unit(disc_f, radial_product);
  r.passed = divides;

  const auto points = foliation::projective_singular_points(f, prec);
  ordered_json tangencies = ordered_json::array();
  for (const auto& l : spec.pre.lines) {
    Poly tang = legendre::tangency_locus(leg_of_line(l), leg_f);
    Poly duals(1);
    bool all_exact = true;
    for (const auto& s : points) {
      if (!point_on_line(s, l, prec)) continue;
      if (!s.exact) {
        all_exact = false;
        continue;
      }
      if (auto d = legendre::dual_line(s)) duals *= d->form;
    }
    duals = algebra::squarefree_part(duals);
    const bool ok = all_exact ? same_up_to_unit(tang, duals) : tang.divisible_by(duals);
    tangencies.push_back({{"line", l.to_string()},
                          {"tangency_locus", tang.to_string()},
                          {"singular_point_duals", duals.to_string()},
                          {"agrees", ok}});
    r.passed = r.passed && ok;
  }
  r.details["tangency_with_lines"] = tangencies;
  return r;
}

CheckResult check_flatness(const JobSpec& spec) {
  CheckResult r{"flatness", false, ordered_json::object()};
  auto report = webcurv::is_flat(spec.pre, spec.params);
  const auto expected = spec.expect_flat.value_or(true) ? webcurv::Verdict::flat_consistent : webcurv::Verdict::non_flat;
  r.details = report.to_json();
  r.details["expected"] = webcurv::verdict_name(expected);
  r.passed = report.verdict == expected;
  return r;
}

Poly random_small_poly(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  Poly out;
  for (int dx = 0; dx <= max_degree; ++dx)
    for (int dy = 0; dx + dy <= max_degree; ++dy) {
      algebra::Monomial m;
      m[Var::x] = static_cast<std::uint16_t>(dx);
      m[Var::y] = static_cast<std::uint16_t>(dy);
      out += Poly::monomial(m, GaussianRational(coeff(rng)));
    }
  return out;
}

// Dual pencil of a curve line as a polynomial 1-form on the dual plane, with
// (p, q) renamed (x, y): (alpha + beta p) dq - (beta q - gamma) dp, or dp for Linf.
webcurv::PolyForm pencil_form(const ProjectiveLine& l) {
  if (l.is_at_infinity()) return {Poly(1), Poly(0)};
  auto [alpha, beta, gamma] = l.coefficients();
  return {-(algebra::Y().scaled(beta) - Poly(gamma)), Poly(alpha) + algebra::X().scaled(beta)};
}

CheckResult check_lemma_identity(const JobSpec& spec) {
  CheckResult r{"lemma-identity", true, ordered_json::array()};
  if (spec.pre.lines.empty()) throw InvalidInputError("lemma-identity: the job has no curve lines");
  std::vector<webcurv::PolyForm> w;
  for (const auto& l : spec.pre.lines) w.push_back(pencil_form(l));
  const int n = static_cast<int>(w.size());
  std::mt19937_64 rng(spec.params.seed);
  auto k = [](const std::vector<webcurv::PolyForm>& forms) { return webcurv::exact_curvature_decomposable(forms); };
  for (int rest_size : {1, 2}) {
    std::vector<webcurv::PolyForm> rest;
    for (int i = 0; i < rest_size; ++i) rest.push_back({random_small_poly(rng, 2), random_small_poly(rng, 2)});
    auto with_rest = [&](std::vector<webcurv::PolyForm> fs) {
      fs.insert(fs.end(), rest.begin(), rest.end());
      return k(fs);
    };
    std::vector<webcurv::ExactTwoForm> singles, pairs;
    for (int i = 0; i < n; ++i) singles.push_back(with_rest({w[i]}));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pairs.push_back(with_rest({w[i], w[j]}));
    auto combined = webcurv::combine_curvature(k(w), singles, pairs, k(rest), n);
    auto direct = with_rest(w);
    const bool equal = combined == direct;
    r.details.push_back({{"extra_forms", rest_size}, {"equal", equal}});
    r.passed = r.passed && equal;
  }
  return r;
}

CheckResult check_pole_order(const JobSpec& spec) {
  CheckResult r{"pole-order", true, ordered_json::array()};
  std::mt19937_64 rng(spec.params.seed);
  auto pole_web = [](int n, const Poly& h) {
    Poly yn = algebra::Y().pow(static_cast<unsigned>(n));
    return std::vector<webcurv::PolyForm>{{Poly(0), Poly(1)}, {-algebra::Y(), algebra::X()}, {-(yn * h), Poly(1)}};
  };
  auto order_of = [&](int n, const Poly& h) {
    return webcurv::pole_order_along(webcurv::exact_curvature_decomposable(pole_web(n, h)), algebra::Y());
  };
  auto reference = order_of(1, Poly(1));
  r.passed = reference && *reference == 1;
  r.details.push_back({{"n", 1}, {"h", "1"}, {"pole_order", reference ? *reference : 0}, {"exact_simple_pole", r.passed}});
  for (int n = 1; n <= 3; ++n)
    for (int t = 0; t < spec.params.base_points; ++t) {
      Poly h;
      do h = random_small_poly(rng, 2);
      while (h.substitute(Var::y, GaussianRational(0)).is_zero());
      auto order = order_of(n, h);
      const bool ok = !order || *order <= 1;
      r.details.push_back({{"n", n}, {"h", h.to_string()}, {"pole_order", order ? *order : 0}, {"at_most_simple", ok}});
      r.passed = r.passed && ok;
    }
  return r;
}

CheckResult check_symmetry(const JobSpec& spec) {
  auto report = webcurv::check_homogeneous_symmetry(spec.pre, spec.params);
  return {"symmetry", report.passed, report.to_json()};
}

}  // namespace

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{"info",         "convexity",      "legendre",   "discriminant",
                                              "flatness",     "lemma-identity", "pole-order", "symmetry"};
  return names;
}

JobSpec parse_job(std::string_view text, std::string name) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto pos = position_of(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string msg = e.what();
    throw ParseError(msg.substr(msg.find(']') + 2), pos.line, pos.column);
  }
  if (!j.is_object()) throw ParseError(name + ": a job must be a JSON object", 1, 1);

  JobSpec spec;
  spec.name = std::move(name);
  try {
    if (j.contains("foliation")) {
      const auto& f = j.at("foliation");
      spec.foliation_text = {f.at("A").get<std::string>(), f.at("B").get<std::string>()};
    }
    for (const auto& l : j.value("curve_lines", ordered_json::array())) spec.line_texts.push_back(l.get<std::string>());
    for (const auto& c : j.value("checks", ordered_json::array({"info"}))) spec.checks.push_back(c.get<std::string>());
    spec.params.seed = j.value("seed", spec.params.seed);
    spec.params.precision = j.value("precision_bits", spec.params.precision);
    spec.params.order = j.value("series_order", spec.params.order);
    spec.params.tolerance = j.value("tolerance", spec.params.tolerance);
    spec.params.base_points = j.value("base_point_count", spec.params.base_points);
    if (j.contains("expect_flat")) spec.expect_flat = j.at("expect_flat").get<bool>();
    if (j.contains("expect_convex")) spec.expect_convex = j.at("expect_convex").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInputError(spec.name + ": " + e.what());
  }

  for (const auto& c : spec.checks)
    if (std::find(known_checks().begin(), known_checks().end(), c) == known_checks().end())
      throw InvalidInputError(spec.name + ": unknown check '" + c + "'");
  if (spec.params.precision < 64) throw InvalidInputError(spec.name + ": precision_bits must be at least 64");
  if (spec.params.order < 2) throw InvalidInputError(spec.name + ": series_order must be at least 2");
  if (spec.params.base_points < 1) throw InvalidInputError(spec.name + ": base_point_count must be positive");

  if (spec.foliation_text)
    spec.pre.foliation.emplace(parse_field(text, spec.foliation_text->first, "foliation.A"),
                               parse_field(text, spec.foliation_text->second, "foliation.B"));
  for (std::size_t i = 0; i < spec.line_texts.size(); ++i) {
    const auto& t = spec.line_texts[i];
    if (t == "Linf")
      spec.pre.lines.push_back(ProjectiveLine::at_infinity());
    else
      spec.pre.lines.push_back(
          ProjectiveLine::affine(parse_field(text, t, "curve_lines[" + std::to_string(i) + "]")));
  }
  spec.pre.validate();
  return spec;
}

JobSpec load_job(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_job(buf.str(), path.stem().string());
}

void apply_overrides(JobSpec& spec, const Overrides& o) {
  if (o.seed) spec.params.seed = *o.seed;
  if (o.precision) spec.params.precision = *o.precision;
  if (o.order) spec.params.order = *o.order;
  if (o.tolerance) spec.params.tolerance = *o.tolerance;
  if (o.points) spec.params.base_points = *o.points;
  spec.params.threads = o.threads;
}

bool JobResult::passed() const {
  if (error) return false;
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

ordered_json JobResult::to_json(const JobSpec& spec) const {
  ordered_json j;
  j["job"] = name;
  j["pre_foliation"] = spec.pre.to_string();
  j["parameters"] = {{"seed", spec.params.seed},
                     {"precision_bits", spec.params.precision},
                     {"series_order", spec.params.order},
                     {"tolerance", spec.params.tolerance},
                     {"base_point_count", spec.params.base_points}};
  ordered_json checks_json = ordered_json::array();
  for (const auto& c : checks) checks_json.push_back({{"check", c.name}, {"passed", c.passed}, {"details", c.details}});
  j["checks"] = checks_json;
  if (error) j["error"] = *error;
  j["passed"] = passed();
  return j;
}

JobResult run_job(const JobSpec& spec) {
  spec.pre.require_invariant_lines();
  JobResult result{spec.name, {}, std::nullopt};
  for (const auto& c : spec.checks) {
    if (c == "info") result.checks.push_back(check_info(spec));
    else if (c == "convexity") result.checks.push_back(check_convexity(spec));
    else if (c == "legendre") result.checks.push_back(check_legendre(spec));
    else if (c == "discriminant") result.checks.push_back(check_discriminant(spec));
    else if (c == "flatness") result.checks.push_back(check_flatness(spec));
    else if (c == "lemma-identity") result.checks.push_back(check_lemma_identity(spec));
    else if (c == "pole-order") result.checks.push_back(check_pole_order(spec));
    else if (c == "symmetry") result.checks.push_back(check_symmetry(spec));
  }
  return result;
}

void write_atomically(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw InvalidInputError("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw InvalidInputError("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string summary_table(const std::vector<JobResult>& results) {
  std::size_t width = 4;
  for (const auto& r : results) width = std::max(width, r.name.size());
  std::ostringstream os;
  auto row = [&](const std::string& job, const std::string& check, const std::string& status) {
    os << job << std::string(width + 2 - job.size(), ' ') << check << std::string(16 - std::min<std::size_t>(check.size(), 15), ' ')
       << status << "\n";
  };
  row("job", "check", "status");
  for (const auto& r : results) {
    if (r.error) row(r.name, "error", "FAIL  " + *r.error);
    for (const auto& c : r.checks) row(r.name, c.name, c.passed ? "PASS" : "FAIL");
  }
  return os.str();
}

}  // namespace legweb::cli
