#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "dplab/discreteness.hpp"
#include "dplab/equivalence.hpp"
#include "dplab/measure.hpp"
#include "dplab/samplers.hpp"

namespace dplab {

/// Shortest round-trip decimal form. Non-finite values are run failures and
/// throw rather than reaching any output.
std::string format_number(double x);

/// Rejects non-finite values on the way into JSON records.
double checked_finite(double x, const char* what);

inline constexpr const char* kCsvSchemaPrefix = "# dplab-csv v1 ";

// DiscreteMeasure: CSV columns origin_id,location,weight with a trailing
// "# residual=<value>" line, and a JSON mirror of the same fields.
void write_discrete_measure_csv(std::ostream& os, const DiscreteMeasure& measure);
DiscreteMeasure read_discrete_measure_csv(std::istream& is);
nlohmann::ordered_json discrete_measure_json(const DiscreteMeasure& measure);
DiscreteMeasure discrete_measure_from_json(const nlohmann::json& j);

nlohmann::ordered_json urn_state_json(const UrnState& state);

nlohmann::ordered_json h_gamma_check_json(const HGammaCheck& check);
nlohmann::ordered_json equivalence_verdict_json(const EquivalenceVerdict& verdict);
nlohmann::ordered_json atom_density_row_json(const AtomDensityRow& row);

// Record tables in CSV form: schema comment line, header row, data rows.
std::string h_gamma_checks_csv(const std::vector<HGammaCheck>& checks);
std::string equivalence_verdicts_csv(const std::vector<EquivalenceVerdict>& verdicts);
std::string atom_density_csv(const AtomDensityReport& report);

}  // namespace dplab
