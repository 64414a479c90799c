#include "geocycle/serialization.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace geocycle {

using nlohmann::json;

namespace {

std::string dump(const json& j, int indent) { return indent >= 0 ? j.dump(indent) : j.dump(); }

// nlohmann parse/type errors become std::invalid_argument so that callers (and
// the CLI exit-code mapping) see every malformed input the same way.
json parse_or_throw(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("JSON parse failure: ") + e.what());
  }
}

}  // namespace

std::string cycle_to_json(const GeodesicCycle& cycle, int indent) {
  json j;
  j["dim"] = cycle.ambient_dim();
  json pts = json::array();
  for (const SpherePoint& p : cycle.control_points()) {
    json row = json::array();
    for (Eigen::Index i = 0; i < p.coords().size(); ++i) row.push_back(p.coords()[i]);
    pts.push_back(std::move(row));
  }
  j["control_points"] = std::move(pts);
  j["closed"] = true;
  return dump(j, indent);
}

GeodesicCycle cycle_from_json(const std::string& text) {
  json j = parse_or_throw(text);
  if (!j.contains("dim") || !j.contains("control_points"))
    throw std::invalid_argument("cycle_from_json: missing 'dim' or 'control_points'");
  try {
    const int dim = j["dim"].get<int>();
    std::vector<SpherePoint> pts;
    for (const auto& row : j["control_points"]) {
      Eigen::VectorXd v(dim);
      if (static_cast<int>(row.size()) != dim)
        throw std::invalid_argument("cycle_from_json: control point size mismatch");
      for (int i = 0; i < dim; ++i) v[i] = row[i].get<double>();
      pts.emplace_back(std::move(v));
    }
    return GeodesicCycle(std::move(pts));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("cycle_from_json: ") + e.what());
  }
}

std::string harmonic_to_json(const HarmonicPolynomial& h, int indent) {
  json j;
  j["t"] = h.degree;
  json coeffs = json::array();
  for (int l = 0; l <= h.degree; ++l)
    for (int m = -l; m <= l; ++m)
      coeffs.push_back(json::array({l, m, h.coeffs[HarmonicEvaluator::index(l, m)]}));
  j["coeffs"] = std::move(coeffs);
  return dump(j, indent);
}

HarmonicPolynomial harmonic_from_json(const std::string& text) {
  json j = parse_or_throw(text);
  try {
    HarmonicPolynomial h;
    h.degree = j.at("t").get<int>();
    h.coeffs = Eigen::VectorXd::Zero((h.degree + 1) * (h.degree + 1));
    for (const auto& entry : j.at("coeffs")) {
      int l = entry.at(0).get<int>();
      int m = entry.at(1).get<int>();
      h.coeffs[HarmonicEvaluator::index(l, m)] = entry.at(2).get<double>();
    }
    return h;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("harmonic_from_json: ") + e.what());
  }
}

std::string design_report_to_json(const DesignReport& report, int indent) {
  json j;
  j["degree"] = report.degree;
  j["tolerance"] = report.tolerance;
  j["max_abs_residual"] = report.max_abs_residual;
  j["is_design"] = report.is_design;
  json residuals = json::object();
  for (const auto& [alpha, r] : report.residuals) residuals[alpha.to_string()] = r;
  j["residuals"] = std::move(residuals);
  return dump(j, indent);
}

std::string root_result_to_json(const RootResult& result, int indent) {
  json j;
  j["value"] = result.value;
  j["residual"] = result.residual;
  json bracket = json::array();
  for (const auto& b : result.bracket) bracket.push_back(json::array({b[0], b[1]}));
  j["bracket"] = std::move(bracket);
  j["iterations"] = result.iterations;
  return dump(j, indent);
}

std::string mz_report_to_json(const MzReport& report, int indent) {
  json j;
  j["t"] = report.t;
  j["p"] = std::isinf(report.p) ? json("inf") : json(report.p);
  j["num_samples"] = report.num_samples;
  j["ratio_min"] = report.ratio_min;
  j["ratio_max"] = report.ratio_max;
  j["curve_length"] = report.curve_length;
  j["length_over_t"] = report.length_over_t;
  return dump(j, indent);
}

namespace {

void write_csv_header(std::ostream& os, int dim) {
  os << "s";
  for (int i = 0; i < dim; ++i) os << ",x" << i;
  os << ",speed\n";
}

void write_csv_row(std::ostream& os, double s, const Eigen::VectorXd& x, double speed) {
  os.precision(17);
  os << s;
  for (Eigen::Index i = 0; i < x.size(); ++i) os << ',' << x[i];
  os << ',' << speed << '\n';
}

}  // namespace

void write_samples_csv(std::ostream& os, const GeodesicCycle& cycle, int count) {
  if (count < 2) throw std::invalid_argument("write_samples_csv: count >= 2 required");
  write_csv_header(os, cycle.ambient_dim());
  // Each arc occupies an equal parameter share of [0,1], so the speed column is
  // n * dist(x_j, x_{j+1}): constant on each segment.
  const std::size_t n = cycle.arc_count();
  for (int k = 0; k < count; ++k) {
    double s = static_cast<double>(k) / (count - 1);
    std::size_t j = std::min(static_cast<std::size_t>(s * n), n - 1);
    double local = s * n - j;
    const GeodesicArc& arc = cycle.arc(j);
    write_csv_row(os, s, arc.eval(std::min(local, 1.0)), n * arc.length());
  }
}

void write_samples_csv(std::ostream& os, const ParametricCurve& curve, int count) {
  if (count < 2) throw std::invalid_argument("write_samples_csv: count >= 2 required");
  write_csv_header(os, curve.ambient_dim());
  for (int k = 0; k < count; ++k) {
    double s = static_cast<double>(k) / (count - 1);
    write_csv_row(os, s, curve.position(s), curve.velocity(s).norm());
  }
}

CurveVariant load_curve(const std::string& file_or_spec) {
  if (std::filesystem::exists(file_or_spec)) {
    std::ifstream in(file_or_spec);
    if (!in) throw std::invalid_argument("load_curve: cannot open " + file_or_spec);
    std::stringstream buf;
    buf << in.rdbuf();
    json j = parse_or_throw(buf.str());
    if (j.contains("control_points")) return cycle_from_json(buf.str());
    if (j.contains("family")) {
      // Either the full spec string ("geo-tetra:a=0.47") or name + params object.
      std::string spec = j["family"].get<std::string>();
      if (j.contains("params") && spec.find(':') == std::string::npos) {
        const json& params = j["params"];
        std::string tail;
        if (params.is_string()) {
          tail = params.get<std::string>();
        } else {
          for (const auto& [key, value] : params.items()) {
            if (!tail.empty()) tail += ",";
            if (value.is_string())
              tail += key == "solid" ? value.get<std::string>()
                                     : key + "=" + value.get<std::string>();
            else
              tail += key + "=" + value.dump();
          }
        }
        if (!tail.empty()) spec += ":" + tail;
      }
      return build_curve(FamilySpec::parse(spec));
    }
    throw std::invalid_argument("load_curve: JSON has neither 'control_points' nor 'family'");
  }
  return build_curve(FamilySpec::parse(file_or_spec));
}

}  // namespace geocycle
