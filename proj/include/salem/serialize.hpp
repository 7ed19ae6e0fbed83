#pragma once

#include "salem/behrend.hpp"
#include "salem/cantor.hpp"
#include "salem/coefficient_sets.hpp"
#include "salem/config_measure.hpp"
#include "salem/fourier.hpp"
#include "salem/interval_sets.hpp"
#include "salem/linear_forms.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace salem {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.3.0";

// Doubles are rounded to this many significant digits before they are
// written, so outputs do not depend on summation order in the last bits.
inline constexpr int kOutputDigits = 12;
double rounded(double x, int digits = kOutputDigits);
std::string fixed(double x, int digits = kOutputDigits);

Json to_json(const LinearForm& f);
LinearForm form_from_json(const Json& j);
Json forms_to_json(const std::vector<LinearForm>& forms);
// Accepts a bare array of forms or {"forms": [...]}.
std::vector<LinearForm> forms_from_json(const Json& j);

Json to_json(const IntervalFamily& F);
IntervalFamily family_from_json(const Json& j);

Json to_json(const BehrendProvenance& p);
Json to_json(const AvoidingSet& s);
Json to_json(const AvoidanceWitness& w);
Json to_json(const BlockRecord& r);

Json to_json(const Schedule& s);
Schedule schedule_from_json(const Json& j);
Json to_json(const CantorTree& t);
CantorTree tree_from_json(const Json& j);
Json to_json(const TreeWitness& w);

Json to_json(const CantorMeasure& mu);
CantorMeasure measure_from_json(const Json& j);

Json to_json(const MassReport& r);
Json to_json(const ExponentFit& fit);
std::string profile_csv(const FourierProfile& p);
std::string F_profile_csv(const std::vector<ProfileRow>& rows);

// Endpoints as exact (numerator, exponent) pairs, value = numerator / 2^exponent.
Json to_json(const IntervalUnion& u);
IntervalUnion interval_union_from_json(const Json& j);
Json to_json(const BadApproxResult& r);
Json to_json(const FrakC& c);

struct RunManifest {
  std::string subcommand;
  std::vector<std::string> argv;  // arguments after the program name
  Json params;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  std::vector<std::string> outputs;
  double wall_clock_seconds = 0;
};

Json to_json(const RunManifest& m);
RunManifest manifest_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace salem
