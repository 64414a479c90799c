#pragma once

#include <iosfwd>
#include <string>

#include "geocycle/beautify.hpp"
#include "geocycle/design.hpp"
#include "geocycle/families.hpp"
#include "geocycle/mz.hpp"
#include "geocycle/polynomials.hpp"
#include "geocycle/sphere.hpp"

namespace geocycle {

/// {"dim": ambient dimension, "control_points": [[...],...], "closed": true}
std::string cycle_to_json(const GeodesicCycle& cycle, int indent = -1);
GeodesicCycle cycle_from_json(const std::string& text);

/// {"t": ..., "coeffs": [[l,m,c],...]}
std::string harmonic_to_json(const HarmonicPolynomial& h, int indent = -1);
HarmonicPolynomial harmonic_from_json(const std::string& text);

std::string design_report_to_json(const DesignReport& report, int indent = -1);
std::string root_result_to_json(const RootResult& result, int indent = -1);
std::string mz_report_to_json(const MzReport& report, int indent = -1);

/// CSV rows "s,x0,...,xd,speed" at `count` uniform parameters including both
/// endpoints of [0,1].
void write_samples_csv(std::ostream& os, const GeodesicCycle& cycle, int count);
void write_samples_csv(std::ostream& os, const ParametricCurve& curve, int count);

/// Load a curve from a JSON file (either the cycle schema above or a family
/// reference {"family": "...", "params": {...}}) or, when no such file exists,
/// parse the argument itself as a FamilySpec string.
CurveVariant load_curve(const std::string& file_or_spec);

}  // namespace geocycle
