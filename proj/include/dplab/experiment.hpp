#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dplab/equivalence.hpp"
#include "dplab/measure.hpp"

namespace dplab {

/// Invalid experiment configuration; `field` names the offending setting.
class SpecError : public std::runtime_error {
 public:
  SpecError(std::string field, const std::string& message)
      : std::runtime_error(message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// A run is a pure function of this record; the manifest echoes it with the
/// realized seed so every run can be reproduced byte-for-byte.
struct ExperimentSpec {
  std::string command;  // sample-sticks | sample-urn | verify-hgamma |
                        // verify-lemma | atom-density | certificate
  double k = 1.0;
  std::string base = "uniform(0,1)";
  std::optional<double> gamma;
  std::vector<double> gamma_grid;
  long long reps = 10000;
  double trunc_eps = 1e-10;
  std::optional<std::uint64_t> seed;  // entropy-drawn and recorded if absent
  long long n = 100;                  // sample-urn draw count
  std::optional<long long> n_sticks;  // sample-sticks fixed-size variant
  std::string func;                   // verify-lemma integrand; "" = all four kinds
  std::string intervals;              // atom-density intervals, "lo:hi,lo:hi"
  std::vector<double> eps_ladder = {1e-2, 1e-4, 1e-8};
  double delta = 1e-6;  // atom-density missed-mass threshold
  std::string out;      // output path; "" = stdout
  std::string format = "json";
};

// Text grammars used by the CLI and config files.
BaseMeasure parse_base_measure(const std::string& text);
FunctionSpec parse_function_spec(const std::string& text);
std::vector<Interval> parse_intervals(const std::string& text);
std::vector<double> parse_number_list(const std::string& text, const std::string& field);

/// Sets one field by config key; unknown keys and range violations throw
/// SpecError naming the key.
void apply_setting(ExperimentSpec& spec, const std::string& key, const std::string& value);

/// Loads a flat key=value document (# comments allowed) or a JSON object;
/// a manifest file's "spec" object is accepted directly.
ExperimentSpec config_load(const std::string& path);

void validate_spec(const ExperimentSpec& spec);

nlohmann::ordered_json spec_echo(const ExperimentSpec& spec);

struct RunResult {
  int exit_code = 0;
  ExperimentSpec realized;            // spec with the seed filled in
  std::string records;                // result records, as written
  nlohmann::ordered_json manifest;    // spec echo + version + generator + wall time
  int failed = 0;                     // failing verification records
  int total_records = 0;
};

/// Executes the experiment, writes records to spec.out (plus the
/// <out>.manifest.json sidecar) when an output path is set, and returns the
/// records either way. Result records are deterministic given the spec; wall
/// time lives only in the manifest.
RunResult run_experiment(const ExperimentSpec& spec);

}  // namespace dplab
