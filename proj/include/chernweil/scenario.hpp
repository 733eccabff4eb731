#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chernweil/bundles.hpp"
#include "chernweil/connections.hpp"
#include "chernweil/forms.hpp"
#include "chernweil/twisting.hpp"

namespace chernweil {

/// Everything a scenario file declares, validated on load. The grammar is in
/// README.md.
struct Scenario {
  std::string name = "unnamed";
  CoverNerve nerve;
  std::optional<ComplexOnNerve> complex;
  GreenStructure green;
  /// Local connections per internal degree.
  std::map<int, LocalConnections> locals;
  std::optional<LocalComplexFamily> local_complexes;
  std::optional<TwistingCochain> twisting;
  /// Witness families per internal degree.
  std::map<int, WitnessFamily> witnesses;
};

/// Expression in the chart variables, their differentials dx, the simplex
/// coordinates t0..tp and dt1..dtp: `t1 * (1/z) dz ^ dt1`. Juxtaposition, `*`
/// and `^` all mean the wedge product; `^ n` with an integer n is a power.
/// Throws ParseError with the column.
Form parse_form(const std::string& text, const ChartPtr& chart, int p);
RatFunc parse_ratfunc(const std::string& text, const ChartPtr& chart);

Scenario parse_scenario(const std::string& text);
/// Throws ParseError when the file is missing or malformed.
Scenario load_scenario(const std::string& path);
/// Canonical text of a scenario; parse_scenario(render_scenario(s)) equals s.
std::string render_scenario(const Scenario& s);
bool same_scenario(const Scenario& a, const Scenario& b);

/// Matrix text: `[[a, b], [c, d]]`, `zero(RxC)` or `id(n)`.
std::string render_matrix(const RMatrix& m);
std::string render_matrix(const FMatrix& m);

}  // namespace chernweil
