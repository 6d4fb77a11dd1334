#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "momentvar/algebra/algebra_tensor.hpp"
#include "momentvar/algebra/critical_type.hpp"
#include "momentvar/flow/flow.hpp"

namespace momentvar::report {

using algebra::AlgebraTensor;
using algebra::CriticalType;

enum class RowStatus { Match, Mismatch, NotCritical, Degenerated };

std::string status_name(RowStatus s);

// Outcome of the flow started at a row's catalog tensor.
struct FlowCheck {
  bool converged = false;
  bool degenerated = false;
  std::size_t iterations = 0;
  double value = 0.0;
  std::optional<CriticalType> type;
};

struct TableRow {
  std::string name;
  std::size_t dim = 0;
  std::optional<CriticalType> expected_type;
  std::optional<double> expected_value;
  std::string expected_value_text;
  std::optional<CriticalType> computed_type;
  double computed_value = 0.0;
  double residual = 0.0;
  RowStatus status = RowStatus::NotCritical;
  std::string method;  // "direct" or the recipe that produced the critical frame
  std::optional<FlowCheck> flow;
  std::string note;
};

// Types equal as integer tuples and values within tol.
bool row_matches(const std::optional<CriticalType>& expected, std::optional<double> expected_value,
                 const std::optional<CriticalType>& computed, double computed_value,
                 double tol = 1e-5);

// A named construction of a critical frame for a row whose catalog frame is
// not critical.
struct Recipe {
  std::string description;
  AlgebraTensor tensor;
};

// mu (+) t lam with |t|^2 = c_mu / c_lam, both summands critical.
AlgebraTensor critical_direct_sum(const AlgebraTensor& mu, const AlgebraTensor& lam);

// The recipe for a dimension-3 row, if there is one.
std::optional<Recipe> recipe_for(const std::string& name, std::size_t dim);

struct TableOptions {
  bool run_flows = true;        // flow from every non-critical catalog frame
  std::size_t d22_samples = 4;  // random (x, y) for the d22 family, on top of (1, 1)
  std::uint64_t seed = 1;
  flow::FlowConfig flow;
};

// Rows of the table for dim 2 or 3, in table order; dim 3 appends the d22
// samples. Throws std::invalid_argument for other dims.
std::vector<TableRow> run_table(std::size_t dim, const TableOptions& opts = {});

// Every row with an expected type matches and every row without one is not critical.
bool table_passes(const std::vector<TableRow>& rows);

nlohmann::json row_to_json(const TableRow& row);
std::string rows_to_markdown(const std::vector<TableRow>& rows);

struct D21Sample {
  double a = 0.0;
  std::vector<double> d_eigenvalues;  // ascending
  std::vector<double> expected;       // (3a^4+6a^2+8, 5a^4+10a^2+8, 2(3a^4+8a^2+8))
  double proportionality_error = 0.0; // relative
  std::vector<int> multiplicities;    // of the D spectrum, ascending
  bool critical = false;
  double residual = 0.0;
};

// d21 on the frame {a e1, e2, e3}: x1 x1 = a^2 x3, x1 x2 = a x3, x2 x1 = -a x3.
AlgebraTensor d21_frame(double a);

D21Sample d21_sample(double a);

// a = 1 followed by samples - 1 points of a fixed grid in (0, 4].
// Throws std::invalid_argument when samples == 0.
std::vector<D21Sample> d21_family(std::size_t samples);

nlohmann::json d21_to_json(const std::vector<D21Sample>& samples);

}  // namespace momentvar::report
