// Command-line front end: verify | wce | optimize | beautify | mz build |
// mz test | sample | area.
//
// Exit codes: 0 success (or checked-true), 1 checked-false, 2 input error,
// 3 numerical failure. GEOCYCLE_QUAD_TOL overrides the default quadrature
// tolerance of 1e-12.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <variant>

#include "geocycle/beautify.hpp"
#include "geocycle/design.hpp"
#include "geocycle/families.hpp"
#include "geocycle/mz.hpp"
#include "geocycle/optimizer.hpp"
#include "geocycle/serialization.hpp"

namespace {

using namespace geocycle;

constexpr int kExitOk = 0;
constexpr int kExitCheckedFalse = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

QuadratureSpec default_quad() {
  QuadratureSpec spec;
  if (const char* env = std::getenv("GEOCYCLE_QUAD_TOL")) {
    char* end = nullptr;
    double tol = std::strtod(env, &end);
    if (end != env && tol > 0) spec.tolerance = tol;
  }
  return spec;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << std::endl;
  } else {
    std::ofstream out(out_path);
    out << text << std::endl;
  }
}

int run_verify(const std::string& curve_arg, int t, double tol, const std::string& out_path) {
  QuadratureSpec quad = default_quad();
  CurveVariant curve = load_curve(curve_arg);
  DesignReport report = std::visit(
      [&](const auto& c) { return verify_design(c, t, tol, quad); }, curve);
  emit(design_report_to_json(report, 2), out_path);
  return report.is_design ? kExitOk : kExitCheckedFalse;
}

int run_wce(const std::string& curve_arg, int t, const std::string& method,
            const std::string& out_path) {
  QuadratureSpec quad = default_quad();
  CurveVariant curve = load_curve(curve_arg);
  double value;
  if (method == "double") {
    if (!std::holds_alternative<GeodesicCycle>(curve))
      throw std::invalid_argument("wce --method double needs a geodesic cycle");
    value = wce_double_integral(std::get<GeodesicCycle>(curve), t, quad);
  } else {
    value = std::visit([&](const auto& c) { return wce_moments(c, t, quad); }, curve);
  }
  std::ostringstream os;
  os.precision(17);
  os << "{\"t\": " << t << ", \"method\": \"" << method << "\", \"wce\": " << value << "}";
  emit(os.str(), out_path);
  return kExitOk;
}

int run_sample(const std::string& curve_arg, int count, const std::string& out_path) {
  CurveVariant curve = load_curve(curve_arg);
  std::ostringstream os;
  std::visit([&](const auto& c) { write_samples_csv(os, c, count); }, curve);
  if (out_path.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream out(out_path);
    out << os.str();
  }
  return kExitOk;
}

int run_area(const std::string& curve_arg, const std::string& out_path) {
  QuadratureSpec quad = default_quad();
  CurveVariant curve = load_curve(curve_arg);
  double area = std::holds_alternative<GeodesicCycle>(curve)
                    ? enclosed_area(std::get<GeodesicCycle>(curve))
                    : enclosed_area(std::get<ParametricCurve>(curve), quad);
  std::ostringstream os;
  os.precision(17);
  os << "{\"area\": " << area << "}";
  emit(os.str(), out_path);
  return kExitOk;
}

int run_beautify(const std::string& target, const std::string& out_path) {
  RootResult result;
  if (target == "geo2") {
    result = solve_geo(2);
  } else if (target == "geo3") {
    result = solve_geo(3);
  } else if (target == "cube") {
    result = solve_cube();
  } else if (target == "smooth2") {
    result = solve_smooth(2, default_quad());
  } else if (target == "smooth3") {
    result = solve_smooth(3, default_quad());
  } else {
    throw CLI::ValidationError("--target must be one of geo2, geo3, cube, smooth2, smooth3");
  }
  emit(root_result_to_json(result, 2), out_path);
  return kExitOk;
}

int run_optimize(const std::string& init_arg, int t, std::uint64_t seed, double perturb,
                 int max_iters, const std::string& out_path, const std::string& trace_path) {
  CurveVariant curve = load_curve(init_arg);
  if (!std::holds_alternative<GeodesicCycle>(curve))
    throw std::invalid_argument("optimize: initialization must be a geodesic cycle");
  OptimizerConfig config;
  config.seed = seed;
  config.init_perturbation = perturb;
  config.max_iters = max_iters;
  OptimizeTrace trace = minimize(std::get<GeodesicCycle>(curve).control_points(), t, config);
  GeodesicCycle final_cycle(trace.final_points);
  emit(cycle_to_json(final_cycle, 2), out_path);
  if (!trace_path.empty()) {
    std::ofstream out(trace_path);
    out << "iter,objective\n";
    out.precision(17);
    for (std::size_t i = 0; i < trace.objective_history.size(); ++i)
      out << i << ',' << trace.objective_history[i] << '\n';
  }
  std::cerr << "objective " << trace.objective_history.back() << " after " << trace.iterations
            << " iterations, converged=" << (trace.converged ? "true" : "false") << "\n";
  return trace.converged ? kExitOk : kExitCheckedFalse;
}

int run_mz_build(int t, double cn, const std::string& out_path) {
  GeodesicCycle cycle = build_mz_cycle(t, cn);
  emit(cycle_to_json(cycle), out_path);
  return kExitOk;
}

int run_mz_test(const std::string& cycle_path, int t, const std::string& p_text, int samples,
                std::uint64_t seed, const std::string& out_path) {
  CurveVariant curve = load_curve(cycle_path);
  if (!std::holds_alternative<GeodesicCycle>(curve))
    throw std::invalid_argument("mz test: --cycle must hold a geodesic cycle");
  double p;
  if (p_text == "inf") {
    p = std::numeric_limits<double>::infinity();
  } else {
    p = std::stod(p_text);
  }
  MzReport report = mz_test(std::get<GeodesicCycle>(curve), t, p, samples, seed);
  emit(mz_report_to_json(report, 2), out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spherical design curves: construction, optimization, verification"};
  app.require_subcommand(1);

  std::string curve_arg, out_path, trace_path, method = "moments", target, p_text = "2";
  int t = 2, count = 100, samples = 200, max_iters = 100000;
  double tol = 1e-9, cn = 4.0, perturb = 0.0;
  std::uint64_t seed = 0;

  auto* verify = app.add_subcommand("verify", "Check the t-design property of a curve");
  verify->add_option("--curve", curve_arg, "Curve file or family spec")->required();
  verify->add_option("--t", t, "Design degree")->required();
  verify->add_option("--tol", tol, "Max monomial residual tolerance");
  verify->add_option("--out", out_path, "Write the JSON report here");

  auto* wce = app.add_subcommand("wce", "Worst-case integration error ||L||_t");
  wce->add_option("--curve", curve_arg)->required();
  wce->add_option("--t", t)->required();
  wce->add_option("--method", method, "moments (default) or double");
  wce->add_option("--out", out_path);

  auto* optimize = app.add_subcommand("optimize", "Minimize ||L||_t^2 over control points");
  optimize->add_option("--init", curve_arg, "Initial cycle (family spec or file)")->required();
  optimize->add_option("--t", t)->required();
  optimize->add_option("--seed", seed);
  optimize->add_option("--perturb", perturb, "Gaussian perturbation of the start");
  optimize->add_option("--max-iters", max_iters);
  optimize->add_option("--out", out_path, "Write the final cycle JSON here");
  optimize->add_option("--trace", trace_path, "Write 'iter,objective' CSV here");

  auto* beautify = app.add_subcommand("beautify", "Certified parameter roots");
  beautify->add_option("--target", target, "geo2 | geo3 | cube | smooth2 | smooth3")->required();
  beautify->add_option("--out", out_path);

  auto* mz = app.add_subcommand("mz", "Marcinkiewicz-Zygmund pipeline");
  mz->require_subcommand(1);
  auto* mz_build = mz->add_subcommand("build", "Partition -> Euler tour -> cycle");
  mz_build->add_option("--t", t)->required();
  mz_build->add_option("--cn", cn, "Patch count factor: n = ceil(cn t^2)");
  mz_build->add_option("--out", out_path);
  auto* mz_run = mz->add_subcommand("test", "Empirical L^p ratio bands");
  mz_run->add_option("--cycle", curve_arg)->required();
  mz_run->add_option("--t", t)->required();
  mz_run->add_option("--p", p_text, "1 | 2 | inf | any real >= 1");
  mz_run->add_option("--samples", samples);
  mz_run->add_option("--seed", seed);
  mz_run->add_option("--out", out_path);

  auto* sample = app.add_subcommand("sample", "CSV samples 's,x0,...,xd,speed'");
  sample->add_option("--curve", curve_arg)->required();
  sample->add_option("--count", count, "Number of rows (uniform in s)");
  sample->add_option("--out", out_path);

  auto* area = app.add_subcommand("area", "Gauss-Bonnet enclosed area on S^2");
  area->add_option("--curve", curve_arg)->required();
  area->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return run_verify(curve_arg, t, tol, out_path);
    if (wce->parsed()) return run_wce(curve_arg, t, method, out_path);
    if (optimize->parsed())
      return run_optimize(curve_arg, t, seed, perturb, max_iters, out_path, trace_path);
    if (beautify->parsed()) return run_beautify(target, out_path);
    if (mz->parsed()) {
      if (mz_build->parsed()) return run_mz_build(t, cn, out_path);
      if (mz_run->parsed()) return run_mz_test(curve_arg, t, p_text, samples, seed, out_path);
    }
    if (sample->parsed()) return run_sample(curve_arg, count, out_path);
    if (area->parsed()) return run_area(curve_arg, out_path);
  } catch (const QuadratureError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitInput;
}
