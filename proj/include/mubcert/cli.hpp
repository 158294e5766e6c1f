#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace mubcert {

/// Grid over p_bar for reproducing the bound curves as CSV.
struct SweepSpec {
  int dim = 4;
  std::string bound = "all";  // entropy | norms | incompat | uncertainty | all
  int points = 101;
  std::optional<std::pair<double, double>> range;  // default: the bound's nontrivial region
};

/// Column names in output order for a SweepSpec::bound value. Throws InvalidParams for unknown names.
std::vector<std::string> sweep_columns(const std::string& bound);

/// Default p_bar interval for one bound column (or "all").
std::pair<double, double> nontrivial_region(const std::string& bound, int dim);

/// CSV with header `p_bar,<columns>`, uniform grid including both endpoints,
/// 12 significant digits, empty cells where a bound is not defined. Rows that fall
/// outside a column's nontrivial region add a message to `warnings`.
std::string sweep_csv(const SweepSpec& spec, std::vector<std::string>* warnings = nullptr);

/// Entry point shared by the `mubcert` binary and the tests.
/// Exit codes: 0 success, 1 verification failure, 2 usage or input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mubcert
