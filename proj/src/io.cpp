#include "dplab/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dplab {

std::string format_number(double x) {
  if (!std::isfinite(x)) {
    throw std::runtime_error("format_number: non-finite value in output");
  }
  char buf[32];
  auto result = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, result.ptr);
}

double checked_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::runtime_error(std::string("non-finite value for ") + what);
  }
  return x;
}

void write_discrete_measure_csv(std::ostream& os, const DiscreteMeasure& measure) {
  os << kCsvSchemaPrefix << "discrete_measure\n";
  os << "origin_id,location,weight\n";
  for (const WeightedAtom& atom : measure.atoms()) {
    os << atom.location.origin_id << ',' << format_number(atom.location.value) << ','
       << format_number(atom.weight) << '\n';
  }
  os << "# residual=" << format_number(measure.residual()) << '\n';
}

DiscreteMeasure read_discrete_measure_csv(std::istream& is) {
  std::vector<WeightedAtom> atoms;
  double residual = 0.0;
  bool saw_residual = false;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.rfind("# residual=", 0) == 0) {
      residual = std::stod(line.substr(11));
      saw_residual = true;
      continue;
    }
    if (line[0] == '#' || line.rfind("origin_id", 0) == 0) continue;
    std::istringstream fields(line);
    std::string id_s, loc_s, w_s;
    if (!std::getline(fields, id_s, ',') || !std::getline(fields, loc_s, ',') ||
        !std::getline(fields, w_s)) {
      throw std::runtime_error("discrete_measure csv: line " + std::to_string(lineno) +
                               ": expected origin_id,location,weight");
    }
    atoms.push_back(WeightedAtom{Location{std::stod(loc_s), std::stoll(id_s)}, std::stod(w_s)});
  }
  if (!saw_residual) {
    throw std::runtime_error("discrete_measure csv: missing '# residual=' line");
  }
  return DiscreteMeasure(std::move(atoms), residual);
}

nlohmann::ordered_json discrete_measure_json(const DiscreteMeasure& measure) {
  nlohmann::ordered_json atoms = nlohmann::ordered_json::array();
  for (const WeightedAtom& atom : measure.atoms()) {
    atoms.push_back({{"origin_id", atom.location.origin_id},
                     {"location", checked_finite(atom.location.value, "location")},
                     {"weight", checked_finite(atom.weight, "weight")}});
  }
  return {{"atoms", std::move(atoms)},
          {"residual", checked_finite(measure.residual(), "residual")}};
}

DiscreteMeasure discrete_measure_from_json(const nlohmann::json& j) {
  std::vector<WeightedAtom> atoms;
  for (const auto& atom : j.at("atoms")) {
    atoms.push_back(WeightedAtom{
        Location{atom.at("location").get<double>(), atom.at("origin_id").get<OriginId>()},
        atom.at("weight").get<double>()});
  }
  return DiscreteMeasure(std::move(atoms), j.at("residual").get<double>());
}

nlohmann::ordered_json urn_state_json(const UrnState& state) {
  nlohmann::ordered_json draws = nlohmann::ordered_json::array();
  for (const Location& loc : state.draws) {
    draws.push_back(
        {{"origin_id", loc.origin_id}, {"location", checked_finite(loc.value, "location")}});
  }
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  for (const auto& [id, count] : state.counts) {
    counts[std::to_string(id)] = count;
  }
  return {{"draws", std::move(draws)}, {"counts", std::move(counts)}};
}

nlohmann::ordered_json h_gamma_check_json(const HGammaCheck& check) {
  return {{"gamma", checked_finite(check.gamma, "gamma")},
          {"closed_form", checked_finite(check.closed_form, "closed_form")},
          {"mc_mean", checked_finite(check.mc.mean, "mc_mean")},
          {"mc_se", checked_finite(check.mc.se, "mc_se")},
          {"bracket", checked_finite(check.bracket, "bracket")},
          {"z_score", checked_finite(check.z_score, "z_score")},
          {"pass", check.pass}};
}

namespace {

nlohmann::ordered_json attempt_json(const EquivalenceAttempt& attempt) {
  return {{"lhs_mean", checked_finite(attempt.lhs.mean, "lhs_mean")},
          {"lhs_se", checked_finite(attempt.lhs.se, "lhs_se")},
          {"rhs_mean", checked_finite(attempt.rhs.mean, "rhs_mean")},
          {"rhs_se", checked_finite(attempt.rhs.se, "rhs_se")},
          {"z", checked_finite(attempt.z, "z")},
          {"allowance", checked_finite(attempt.allowance, "allowance")},
          {"reps", attempt.lhs.reps},
          {"seed", attempt.lhs.seed},
          {"pass", attempt.pass}};
}

}  // namespace

nlohmann::ordered_json equivalence_verdict_json(const EquivalenceVerdict& verdict) {
  nlohmann::ordered_json j{{"function", verdict.function},
                           {"first", attempt_json(verdict.first)},
                           {"pass", verdict.pass}};
  if (verdict.retry) {
    j["retry"] = attempt_json(*verdict.retry);
  }
  return j;
}

nlohmann::ordered_json atom_density_row_json(const AtomDensityRow& row) {
  nlohmann::ordered_json ladder = nlohmann::ordered_json::array();
  for (double c : row.ladder_mean_counts) ladder.push_back(checked_finite(c, "ladder_mean_count"));
  return {{"lo", checked_finite(row.interval.lo, "lo")},
          {"hi", checked_finite(row.interval.hi, "hi")},
          {"base_mass", checked_finite(row.base_mass, "base_mass")},
          {"presence_frequency", checked_finite(row.presence_frequency, "presence_frequency")},
          {"mean_count", checked_finite(row.mean_count, "mean_count")},
          {"ladder_mean_counts", std::move(ladder)},
          {"pass", row.pass}};
}

std::string h_gamma_checks_csv(const std::vector<HGammaCheck>& checks) {
  std::ostringstream os;
  os << kCsvSchemaPrefix << "h_gamma_check\n";
  os << "gamma,closed_form,mc_mean,mc_se,bracket,z_score,pass\n";
  for (const HGammaCheck& c : checks) {
    os << format_number(c.gamma) << ',' << format_number(c.closed_form) << ','
       << format_number(c.mc.mean) << ',' << format_number(c.mc.se) << ','
       << format_number(c.bracket) << ',' << format_number(c.z_score) << ','
       << (c.pass ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string equivalence_verdicts_csv(const std::vector<EquivalenceVerdict>& verdicts) {
  std::ostringstream os;
  os << kCsvSchemaPrefix << "equivalence_verdict\n";
  os << "function,attempt,lhs_mean,lhs_se,rhs_mean,rhs_se,z,allowance,pass\n";
  auto row = [&os](const std::string& fn, const char* which, const EquivalenceAttempt& a) {
    os << fn << ',' << which << ',' << format_number(a.lhs.mean) << ',' << format_number(a.lhs.se)
       << ',' << format_number(a.rhs.mean) << ',' << format_number(a.rhs.se) << ','
       << format_number(a.z) << ',' << format_number(a.allowance) << ','
       << (a.pass ? "true" : "false") << '\n';
  };
  for (const EquivalenceVerdict& v : verdicts) {
    row(v.function, "first", v.first);
    if (v.retry) row(v.function, "retry", *v.retry);
  }
  return os.str();
}

std::string atom_density_csv(const AtomDensityReport& report) {
  std::ostringstream os;
  os << kCsvSchemaPrefix << "atom_density\n";
  os << "lo,hi,base_mass,presence_frequency,mean_count,ladder_mean_counts,pass\n";
  for (const AtomDensityRow& row : report.rows) {
    os << format_number(row.interval.lo) << ',' << format_number(row.interval.hi) << ','
       << format_number(row.base_mass) << ',' << format_number(row.presence_frequency) << ','
       << format_number(row.mean_count) << ',';
    for (std::size_t j = 0; j < row.ladder_mean_counts.size(); ++j) {
      if (j > 0) os << ';';
      os << format_number(row.ladder_mean_counts[j]);
    }
    os << ',' << (row.pass ? "true" : "false") << '\n';
  }
  os << "# presence_eps=" << format_number(report.presence_eps)
     << " enforced=" << (report.presence_enforced ? "true" : "false")
     << " pass=" << (report.pass ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace dplab
