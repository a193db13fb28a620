#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "semiabel/classifier.hpp"

namespace semiabel {

using Json = nlohmann::json;

enum class Task { Periods, Eval, ExpG, LogG, Pairing, Classify, Bounds, Verify };

std::optional<Task> parse_task(std::string_view name);
std::string task_name(Task t);

struct CurveSpec {
  bool from_invariants = true;
  CurveInvariants invariants{};
  cplx w1{}, w2{};
};

struct JobConfig {
  Task task = Task::Verify;
  CurveSpec curve;
  Json payload = Json::object();  // the whole validated document
  ClassifierSettings settings;
  std::uint64_t seed = 1;
  bool json_output = false;
};

/// Values from the command line and environment. Tolerance precedence:
/// default < SEMIABEL_TOL < config file < --tol.
struct ConfigOverrides {
  std::optional<Task> task;
  std::optional<double> tol;
  std::optional<double> env_tol;
  std::optional<std::uint64_t> seed;
  bool json_output = false;
};

/// Throws Error(SchemaError) with a JSON pointer, or ConflictingCurveSpec.
JobConfig parse_config(const Json& doc, const ConfigOverrides& o = {});
JobConfig parse_config_text(const std::string& text, const ConfigOverrides& o = {});

Lattice lattice_of(const CurveSpec& c);

struct VerificationEntry {
  std::string name;
  std::string anchor;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  std::vector<VerificationEntry> entries;  // sorted by name
  Json environment;
  bool pass = false;
};

VerificationReport run_verification_suite(const JobConfig& cfg);
Json to_json(const VerificationReport& r);

struct JobResult {
  Json document;
  int exit_code = 0;  // 0 pass, 2 identity failure
};

/// Input problems surface as Error exceptions; the CLI maps them to exit 1.
JobResult run_job(const JobConfig& cfg);

/// Pretty JSON with doubles at 17 significant digits.
std::string dump_json(const Json& j);
/// Indented key: value listing of the same document.
std::string render_text(const Json& j);

/// Parse a JSON motive document against a lattice.
OneMotiveElliptic parse_motive(const Json& doc, const std::string& pointer, const Lattice& L,
                               const CurveSpec& curve);

Json complex_json(cplx z);

}  // namespace semiabel
