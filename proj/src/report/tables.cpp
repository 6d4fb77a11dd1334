#include "momentvar/report/tables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

#include "momentvar/algebra/catalog.hpp"
#include "momentvar/algebra/json_io.hpp"
#include "momentvar/cla/decompositions.hpp"
#include "momentvar/moment/moment.hpp"
#include "momentvar/structure/gamma.hpp"

namespace momentvar::report {

namespace {

std::string fmt(double x, int digits = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string type_text(const std::optional<CriticalType>& t) { return t ? t->str() : "-"; }

// Absolute c of a non-normalized tensor.
double absolute_c(const AlgebraTensor& mu) {
  return moment::critical_test(mu).c * mu.norm_sq();
}

void fill_from_report(TableRow& row, const moment::CriticalReport& rep) {
  row.computed_type = rep.type;
  row.computed_value = rep.value;
  row.residual = rep.residual;
  if (!rep.critical) {
    row.status = RowStatus::NotCritical;
    return;
  }
  row.status = row_matches(row.expected_type, row.expected_value, rep.type, rep.value)
                   ? RowStatus::Match
                   : RowStatus::Mismatch;
}

FlowCheck run_flow(const AlgebraTensor& mu, const flow::FlowConfig& cfg) {
  const flow::FlowTrace trace = flow::flow_to_critical(mu, cfg);
  FlowCheck check;
  check.converged = trace.converged;
  check.iterations = trace.iterations;
  check.value = trace.f_values.back();
  if (trace.converged) {
    check.degenerated = flow::detect_degeneration(trace);
    moment::CriticalOptions relaxed;
    relaxed.tol = 1e-5;
    check.type = moment::critical_test(trace.final, relaxed).type;
  }
  return check;
}

TableRow evaluate_row(const algebra::CatalogEntry& entry, std::size_t dim, const TableOptions& opts) {
  TableRow row;
  row.name = entry.name;
  row.dim = dim;
  row.expected_type = entry.expected_type;
  row.expected_value = entry.expected_value;
  row.expected_value_text = entry.expected_value_text;

  const moment::CriticalReport direct = moment::critical_test(entry.tensor);
  row.method = "direct";
  fill_from_report(row, direct);
  if (direct.critical) return row;

  if (opts.run_flows) row.flow = run_flow(entry.tensor, opts.flow);

  if (row.expected_type) {
    if (const std::optional<Recipe> recipe = recipe_for(entry.name, dim)) {
      row.method = recipe->description;
      fill_from_report(row, moment::critical_test(recipe->tensor));
    } else if (row.flow && row.flow->converged && !row.flow->degenerated) {
      row.method = "flow";
      row.computed_type = row.flow->type;
      row.computed_value = row.flow->value;
      row.status = row_matches(row.expected_type, row.expected_value, row.flow->type, row.flow->value)
                       ? RowStatus::Match
                       : RowStatus::Mismatch;
    } else if (row.flow && row.flow->degenerated) {
      row.status = RowStatus::Degenerated;
    }
  }

  if (row.flow && row.flow->converged && row.expected_type) {
    const bool agrees =
        !row.flow->degenerated &&
        row_matches(row.expected_type, row.expected_value, row.flow->type, row.flow->value);
    if (!agrees) row.note = "flow limit " + type_text(row.flow->type) + " value " + fmt(row.flow->value);
  }
  if (row.flow && row.flow->degenerated && !row.expected_type) {
    row.note = "flow leaves the orbit; limit " + type_text(row.flow->type) + " value " +
               fmt(row.flow->value);
  }
  return row;
}

std::vector<int> multiplicities(const std::vector<double>& sorted, double tol) {
  std::vector<int> out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0 && sorted[i] - sorted[i - 1] <= tol) {
      ++out.back();
    } else {
      out.push_back(1);
    }
  }
  return out;
}

}  // namespace

std::string status_name(RowStatus s) {
  switch (s) {
    case RowStatus::Match: return "match";
    case RowStatus::Mismatch: return "mismatch";
    case RowStatus::NotCritical: return "not-critical";
    case RowStatus::Degenerated: return "degenerated";
  }
  return "?";
}

bool row_matches(const std::optional<CriticalType>& expected, std::optional<double> expected_value,
                 const std::optional<CriticalType>& computed, double computed_value, double tol) {
  if (!expected || !computed || !(*expected == *computed)) return false;
  return !expected_value || std::abs(*expected_value - computed_value) <= tol;
}

AlgebraTensor critical_direct_sum(const AlgebraTensor& mu, const AlgebraTensor& lam) {
  const double ratio = absolute_c(mu) / absolute_c(lam);
  if (!(ratio > 0.0)) throw std::invalid_argument("critical_direct_sum: c values of opposite sign");
  return algebra::direct_sum(mu, lam, std::sqrt(ratio));
}

std::optional<Recipe> recipe_for(const std::string& name, std::size_t dim) {
  if (dim != 3) return std::nullopt;
  const auto two = [](const char* n) { return algebra::catalog_get(n, 2).tensor; };
  const AlgebraTensor one = algebra::catalog_get("mat(1)").tensor;
  if (name == "d2") return Recipe{"direct sum C (+) t d5", critical_direct_sum(one, two("d5"))};
  if (name == "d10") return Recipe{"direct sum d3 (+) t C", critical_direct_sum(two("d3"), one)};
  if (name == "d11") return Recipe{"direct sum C (+) t d2", critical_direct_sum(one, two("d2"))};
  if (name == "d12") return Recipe{"direct sum C (+) t d6", critical_direct_sum(one, two("d6"))};
  if (name == "d13") return Recipe{"isomorphic model U13", algebra::catalog_get("U13").tensor};
  if (name == "d17") return Recipe{"isomorphic model W103", algebra::catalog_get("W103").tensor};
  if (name == "d18") return Recipe{"isomorphic model U03", algebra::catalog_get("U03").tensor};
  if (name == "d19") {
    const AlgebraTensor d5 = two("d5");
    const std::vector<structure::GammaPair> s{
        {cla::CMatrix::identity(2), cla::CMatrix::identity(2)}};
    return Recipe{"semidirect sum span{(I,I)} x d5",
                  structure::semidirect_sum(s, d5, moment::critical_test(d5))};
  }
  return std::nullopt;
}

std::vector<TableRow> run_table(std::size_t dim, const TableOptions& opts) {
  std::vector<TableRow> rows;
  for (const std::string& name : algebra::table_names(dim)) {
    rows.push_back(evaluate_row(algebra::catalog_get(name, dim), dim, opts));
  }
  if (dim == 3) {
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> mag(0.25, 2.0);
    std::bernoulli_distribution sign(0.5);
    for (std::size_t k = 0; k < opts.d22_samples; ++k) {
      const double x = (sign(rng) ? -1.0 : 1.0) * mag(rng);
      const double y = (sign(rng) ? -1.0 : 1.0) * mag(rng);
      algebra::CatalogEntry e = algebra::d22_family(x, y);
      e.name = "d22(" + fmt(x, 6) + "," + fmt(y, 6) + ")";
      rows.push_back(evaluate_row(e, dim, opts));
    }
  }
  return rows;
}

bool table_passes(const std::vector<TableRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const TableRow& r) {
    return r.expected_type ? r.status == RowStatus::Match : r.status == RowStatus::NotCritical;
  });
}

nlohmann::json row_to_json(const TableRow& row) {
  auto type_json = [](const std::optional<CriticalType>& t) {
    return t ? algebra::type_to_json(*t) : nlohmann::json(nullptr);
  };
  nlohmann::json j = {{"name", row.name},
                      {"dim", row.dim},
                      {"expected_type", type_json(row.expected_type)},
                      {"expected_type_text", type_text(row.expected_type)},
                      {"expected_value", row.expected_value ? nlohmann::json(*row.expected_value)
                                                            : nlohmann::json(nullptr)},
                      {"expected_value_text", row.expected_value_text},
                      {"computed_type", type_json(row.computed_type)},
                      {"computed_type_text", type_text(row.computed_type)},
                      {"computed_value", row.computed_value},
                      {"residual", row.residual},
                      {"status", status_name(row.status)},
                      {"method", row.method}};
  if (row.flow) {
    j["flow"] = {{"converged", row.flow->converged},
                 {"degenerated", row.flow->degenerated},
                 {"iterations", row.flow->iterations},
                 {"value", row.flow->value},
                 {"type", type_json(row.flow->type)},
                 {"type_text", type_text(row.flow->type)}};
  }
  if (!row.note.empty()) j["note"] = row.note;
  return j;
}

std::string rows_to_markdown(const std::vector<TableRow>& rows) {
  std::ostringstream out;
  out << "| row | expected type | expected value | computed type | computed value | residual | status | method |\n";
  out << "|---|---|---|---|---|---|---|---|\n";
  for (const TableRow& r : rows) {
    out << "| " << r.name << " | " << type_text(r.expected_type) << " | "
        << (r.expected_value_text.empty() ? "-" : r.expected_value_text) << " | "
        << type_text(r.computed_type) << " | " << fmt(r.computed_value) << " | "
        << fmt(r.residual, 3) << " | " << status_name(r.status) << " | " << r.method;
    if (!r.note.empty()) out << "; " << r.note;
    out << " |\n";
  }
  return out.str();
}

AlgebraTensor d21_frame(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("d21_frame: a must be > 0");
  return AlgebraTensor::from_terms(3, {{1, 1, 3, a * a}, {1, 2, 3, a}, {2, 1, 3, -a}});
}

D21Sample d21_sample(double a) {
  D21Sample s;
  s.a = a;
  const moment::CriticalReport rep = moment::critical_test(d21_frame(a));
  s.critical = rep.critical;
  s.residual = rep.residual;
  s.d_eigenvalues = rep.d_eigenvalues;
  std::sort(s.d_eigenvalues.begin(), s.d_eigenvalues.end());
  const double a2 = a * a;
  const double a4 = a2 * a2;
  s.expected = {3 * a4 + 6 * a2 + 8, 5 * a4 + 10 * a2 + 8, 2 * (3 * a4 + 8 * a2 + 8)};

  double dot = 0.0, tt = 0.0, dd = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    dot += s.d_eigenvalues[i] * s.expected[i];
    tt += s.expected[i] * s.expected[i];
    dd += s.d_eigenvalues[i] * s.d_eigenvalues[i];
  }
  const double scale = dot / tt;
  double err = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double r = s.d_eigenvalues[i] - scale * s.expected[i];
    err += r * r;
  }
  s.proportionality_error = dd > 0.0 && scale > 0.0 ? std::sqrt(err / dd) : 1.0;
  const double radius = std::max(std::abs(s.d_eigenvalues.front()), std::abs(s.d_eigenvalues.back()));
  s.multiplicities = multiplicities(s.d_eigenvalues, 1e-6 * radius);
  return s;
}

std::vector<D21Sample> d21_family(std::size_t samples) {
  if (samples == 0) throw std::invalid_argument("d21_family: need at least one sample");
  std::vector<D21Sample> out{d21_sample(1.0)};
  for (std::size_t k = 1; k < samples; ++k) {
    out.push_back(d21_sample(4.0 * static_cast<double>(k) / static_cast<double>(samples - 1)));
  }
  return out;
}

nlohmann::json d21_to_json(const std::vector<D21Sample>& samples) {
  nlohmann::json arr = nlohmann::json::array();
  for (const D21Sample& s : samples) {
    arr.push_back({{"a", s.a},
                   {"D_eigenvalues", s.d_eigenvalues},
                   {"expected", s.expected},
                   {"proportionality_error", s.proportionality_error},
                   {"multiplicities", s.multiplicities},
                   {"critical", s.critical},
                   {"residual", s.residual}});
  }
  return arr;
}

}  // namespace momentvar::report
