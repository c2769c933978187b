#pragma once

#include "barricade/catalog_fn.hpp"
#include "barricade/convex_set.hpp"
#include "barricade/types.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace barricade {

using Json = nlohmann::ordered_json;

/// Scenario file violated the schema; carries a field-path diagnostic.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

struct Tolerances {
  double membership = kMembershipTol;
  double projection = kProjectionTol;
  double separation = kSeparationTol;
  double cone = kConeTol;
  double kkt = kKktTol;
};

struct AnalyzeTask {
  std::string set;
  std::vector<Vec> directions;
  std::vector<double> radii;  // limsup probe radii; empty = no probe
};
struct SeparateTask {
  std::string a, b;
};
struct SspTask {
  std::string set;
};
struct SolveTask {
  std::string set, function;
};
using Task = std::variant<AnalyzeTask, SeparateTask, SspTask, SolveTask>;

struct Scenario {
  int dimension = 0;
  std::map<std::string, ConvexSet> sets;
  std::map<std::string, CatalogFn> functions;
  std::vector<Task> tasks;
  unsigned seed = 0;
  Tolerances tol;
};

Scenario parse_scenario(const std::string& path);
Scenario parse_scenario_json(const Json& j);

struct RunOptions {
  bool parallel = false;
  bool with_meta = true;
  int max_iter = kMaxIter;
  std::optional<double> tol_override;   // overrides the separation/kkt tolerance
  std::optional<unsigned> seed_override;
};

/// Executes the scenario's tasks in order (or concurrently with a
/// deterministic merge) and returns the machine-readable report.
/// ConvergenceError / InconclusiveError become task statuses, never throws.
Json run(const Scenario& s, const RunOptions& opt = {});

/// Subset pattern match: objects need all expected keys to match, arrays
/// need equal length and elementwise matches, primitives must be equal.
bool json_subset_match(const Json& expected, const Json& actual, std::string* why = nullptr);

Json to_json(const Vec& v);
Vec vec_from_json(const Json& j, const std::string& ctx);

}  // namespace barricade
