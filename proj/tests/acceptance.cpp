// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "momentvar/algebra/catalog.hpp"
#include "momentvar/flow/flow.hpp"
#include "momentvar/moment/moment.hpp"
#include "momentvar/report/tables.hpp"
#include "momentvar/structure/derivations.hpp"
#include "momentvar/structure/gamma.hpp"
#include "momentvar/structure/nikolayevsky.hpp"
#include "momentvar/structure/substructures.hpp"
#include "support.hpp"

using namespace momentvar;
using algebra::AlgebraTensor;
using cla::CMatrix;
using cla::Complex;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string type_text(const std::optional<algebra::CriticalType>& t) { return t ? t->str() : "-"; }

// Every directly critical catalog entry.
std::vector<testing::Named> critical_entries() {
  std::vector<testing::Named> out;
  for (const auto& n : testing::catalog_names())
    if (moment::critical_test(testing::get(n).tensor).critical) out.push_back(n);
  return out;
}

Outcome table_one() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = report::run_table(2);
  const double elapsed = seconds_since(t0);
  const std::map<std::string, double> values{{"d1", 4}, {"d2", 4}, {"d3", 4}, {"d4", 2}, {"d5", 20}, {"d6", 4}};
  if (rows.size() != 6) o.fail(std::to_string(rows.size()) + " rows");
  for (const auto& r : rows) {
    if (!r.computed_type || !r.expected_type || !(*r.computed_type == *r.expected_type))
      o.fail(r.name + " type " + type_text(r.computed_type));
    if (std::abs(r.computed_value - values.at(r.name)) > 1e-6)
      o.fail(r.name + " value " + fmt("%.9g", r.computed_value));
  }
  if (elapsed >= 5.0) o.fail("runtime " + fmt("%.2f s", elapsed));
  if (o.pass) o.detail = "6/6 rows, " + fmt("%.3f s", elapsed);
  return o;
}

Outcome table_two() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = report::run_table(3);
  const double elapsed = seconds_since(t0);
  int matched = 0;
  std::string failures;
  for (const auto& r : rows) {
    if (r.name == "d21") {
      if (r.status != report::RowStatus::NotCritical) o.fail("d21 status " + report::status_name(r.status));
      continue;
    }
    const bool type_ok = r.computed_type && r.expected_type && *r.computed_type == *r.expected_type;
    const bool value_ok = r.expected_value && std::abs(r.computed_value - *r.expected_value) <= 1e-6;
    if (type_ok && value_ok) {
      ++matched;
    } else {
      failures += (failures.empty() ? "" : "; ") + r.name + " computed " + type_text(r.computed_type) + " " +
                  fmt("%.9g", r.computed_value) + " vs " + type_text(r.expected_type) + " " + r.expected_value_text;
    }
  }
  if (!failures.empty()) o.fail(failures);
  if (elapsed >= 60.0) o.fail("runtime " + fmt("%.2f s", elapsed));
  if (o.pass) o.detail = std::to_string(matched) + " rows matched, d21 not critical, " + fmt("%.3f s", elapsed);
  return o;
}

Outcome matrix_minimum() {
  Outcome o;
  for (std::size_t m = 1; m <= 3; ++m) {
    const AlgebraTensor mu = algebra::catalog_get("mat(" + std::to_string(m) + ")").tensor;
    const CMatrix mm = moment::moment_matrix(mu).m;
    const double err = testing::max_abs_diff(mm, (-2.0 * double(m)) * CMatrix::identity(m * m));
    if (err > 1e-10) o.fail("mat(" + std::to_string(m) + ") |M + 2mI| = " + fmt("%.3g", err));
    const double f = moment::f_value(mu);
    if (std::abs(f - 4.0 / double(m * m)) > 1e-10) o.fail("mat(" + std::to_string(m) + ") F = " + fmt("%.12g", f));
  }
  if (o.pass) o.detail = "m = 1, 2, 3";
  return o;
}

Outcome extremal_values() {
  Outcome o;
  for (std::size_t n = 2; n <= 5; ++n) {
    const std::string arg = "(" + std::to_string(n) + ")";
    const auto ca = moment::critical_test(algebra::catalog_get("mu_ca" + arg).tensor);
    const std::string want_ca = n == 2 ? "(1<2;1,1)" : "(3<5<6;1," + std::to_string(n - 2) + ",1)";
    if (std::abs(ca.value - 20.0) > 1e-9) o.fail("mu_ca" + arg + " F = " + fmt("%.12g", ca.value));
    if (type_text(ca.type) != want_ca) o.fail("mu_ca" + arg + " type " + type_text(ca.type));
    for (const char* fam : {"mu_l", "mu_r"}) {
      const auto r = moment::critical_test(algebra::catalog_get(fam + arg).tensor);
      const std::string want = "(0<1;1," + std::to_string(n - 1) + ")";
      if (std::abs(r.value - 4.0) > 1e-9) o.fail(fam + arg + " F = " + fmt("%.12g", r.value));
      if (type_text(r.type) != want) o.fail(fam + arg + " type " + type_text(r.type));
    }
  }
  if (o.pass) o.detail = "n = 2..5";
  return o;
}

Outcome d21_law() {
  Outcome o;
  const auto family = report::d21_family(10);
  if (family.size() != 10) o.fail("sample count");
  double worst = 0.0;
  for (const auto& s : family) {
    if (!(s.a > 0.0 && s.a <= 4.0)) o.fail("a = " + fmt("%g", s.a) + " outside (0, 4]");
    const double a2 = s.a * s.a, a4 = a2 * a2;
    const double law[] = {3 * a4 + 6 * a2 + 8, 5 * a4 + 10 * a2 + 8, 2 * (3 * a4 + 8 * a2 + 8)};
    const double scale = s.d_eigenvalues[2] / law[2];
    for (int i = 0; i < 3; ++i) {
      const double rel = std::abs(s.d_eigenvalues[i] - scale * law[i]) / std::abs(s.d_eigenvalues[2]);
      worst = std::max(worst, rel);
    }
    if (s.multiplicities == std::vector<int>{2, 1} || s.multiplicities == std::vector<int>{1, 2})
      o.fail("a = " + fmt("%g", s.a) + " has a repeated eigenvalue");
  }
  if (worst > 1e-8) o.fail("law error " + fmt("%.3g", worst));
  if (o.pass) o.detail = "10 samples, max relative error " + fmt("%.2g", worst);
  return o;
}

Outcome property_suite() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::vector<std::pair<std::string, AlgebraTensor>> cases;
  std::uniform_int_distribution<int> dim(1, 4);
  std::uniform_real_distribution<double> density(0.05, 1.0);
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = std::size_t(dim(rng));
    // Half dense, half sparse; sparse tensors have nontrivial derivations.
    AlgebraTensor mu = k % 2 == 0 ? testing::random_tensor(n, rng) : testing::random_sparse_tensor(n, rng, density(rng));
    cases.emplace_back("random #" + std::to_string(k), std::move(mu));
  }
  for (const auto& n : testing::catalog_names()) cases.emplace_back(testing::label(n), testing::get(n).tensor);

  std::size_t der_checked = 0;
  for (const auto& [name, mu] : cases) {
    const std::size_t n = mu.dim();
    const double nsq = mu.norm_sq();
    const CMatrix m = moment::moment_matrix(mu).m;
    const double scale = m.frobenius_norm();

    const double tr = m.trace().real();
    if (std::abs(tr + 2.0 * nsq) > 1e-9 * 2.0 * nsq) o.fail(name + ": tr M = " + fmt("%.12g", tr));

    // At ||mu|| = 1 against an orthonormal derivation basis.
    const CMatrix m_unit = (1.0 / nsq) * m;
    for (const CMatrix& d : structure::derivation_algebra(mu).basis) {
      ++der_checked;
      const double tmd = std::abs((m_unit * d).trace());
      if (tmd > 1e-8) o.fail(name + ": |tr(M D)| = " + fmt("%.3g", tmd));
      const double tma = (m_unit * cla::commutator(d, d.adjoint())).trace().real();
      if (tma < -1e-8) o.fail(name + ": tr(M [D, D*]) = " + fmt("%.3g", tma));
    }

    const Complex t(0.7, -1.3);
    const CMatrix mt = moment::moment_matrix(t * mu).m;
    if (testing::max_abs_diff(mt, std::norm(t) * m) > 1e-10 * std::norm(t) * scale)
      o.fail(name + ": M_{t mu} != |t|^2 M_mu");

    const AlgebraTensor nu = testing::random_tensor(n, rng);
    const double h = 1e-5 * mu.norm() / nu.norm();
    const double fd = (moment::f_value(mu + Complex(h) * nu) - moment::f_value(mu - Complex(h) * nu)) / (2 * h);
    const double an = algebra::inner_product(moment::euclidean_gradient(mu), nu).real();
    // Relative, with a floor at the difference quotient's own error level
    // (about 1e-9 F ||nu|| / ||mu||) for points where the gradient vanishes.
    const double floor = 1e-4 * moment::f_value(mu) * nu.norm() / mu.norm();
    if (std::abs(an - fd) > 1e-5 * std::max(std::abs(an), floor))
      o.fail(name + ": gradient " + fmt("%.10g", an) + " vs difference " + fmt("%.10g", fd));

    const double f = moment::f_value(mu);
    if (f < 4.0 / double(n) - 1e-6) o.fail(name + ": F = " + fmt("%.10g", f) + " below 4/n");
  }
  if (o.pass)
    o.detail = std::to_string(cases.size()) + " algebras, " + std::to_string(der_checked) + " derivations";
  return o;
}

Outcome orbit_minimum() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::size_t flows = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& n : critical_entries()) {
    const AlgebraTensor mu = testing::get(n).tensor;
    const auto target = moment::critical_test(mu);
    for (int k = 0; k < 20; ++k) {
      const AlgebraTensor start = algebra::act_group(testing::random_invertible(n.dim, rng), mu);
      const flow::FlowTrace tr = flow::flow_to_critical(start);
      ++flows;
      const std::string where = testing::label(n) + " sample " + std::to_string(k);
      if (!tr.converged) {
        o.fail(where + " did not converge");
        continue;
      }
      moment::CriticalOptions relaxed;
      relaxed.tol = 1e-5;
      const auto r = moment::critical_test(tr.final, relaxed);
      if (std::abs(r.value - target.value) > 1e-5) o.fail(where + " F = " + fmt("%.9g", r.value));
      if (!r.type || !(*r.type == *target.type)) o.fail(where + " type " + type_text(r.type));
    }
  }
  if (o.pass) o.detail = std::to_string(flows) + " flows, " + fmt("%.2f s", seconds_since(t0));
  return o;
}

Outcome nikolayevsky_suite() {
  Outcome o;
  std::size_t entries = 0;
  for (const auto& n : testing::catalog_names()) {
    const AlgebraTensor mu = testing::get(n).tensor;
    const auto nik = structure::nikolayevsky(mu);
    const std::string name = testing::label(n);
    ++entries;
    if (nik.trace_residual > 1e-7) o.fail(name + " trace residual " + fmt("%.3g", nik.trace_residual));
    if (!nik.is_semisimple || nik.eigen_rationals.size() != n.dim) {
      o.fail(name + " no rational spectrum");
      continue;
    }
    for (const auto& q : nik.eigen_rationals)
      if (q.den() > 64) o.fail(name + " denominator " + std::to_string(q.den()));
    const auto rep = moment::critical_test(mu);
    if (!rep.critical) continue;
    std::vector<double> want;
    for (double d : rep.d_eigenvalues) want.push_back(-d / rep.c);
    std::vector<double> got = nik.eigenvalues;
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    for (std::size_t i = 0; i < want.size(); ++i)
      if (std::abs(want[i] - got[i]) > 1e-6) o.fail(name + " spectrum differs from -D/c");
  }
  if (o.pass) o.detail = std::to_string(entries) + " entries";
  return o;
}

Outcome structure_theorem() {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& n : critical_entries()) {
    const AlgebraTensor mu = testing::get(n).tensor;
    const auto c = structure::structure_checks(mu, moment::critical_test(mu));
    ++checked;
    const std::string name = testing::label(n);
    if (!c.annihilator_in_positive.pass) o.fail(name + " (i) " + c.annihilator_in_positive.detail);
    if (!c.positive_in_radical.pass) o.fail(name + " (ii) " + c.positive_in_radical.detail);
    if (!c.negative_central.pass) o.fail(name + " (iii) " + c.negative_central.detail);
    if (!c.zero_adjoint_derivation.pass) o.fail(name + " (iv) " + c.zero_adjoint_derivation.detail);
  }
  if (o.pass) o.detail = std::to_string(checked) + " critical entries";
  return o;
}

Outcome semidirect_example() {
  Outcome o;
  const AlgebraTensor lam = algebra::catalog_get("d5", 2).tensor;
  const std::vector<structure::GammaPair> s{{CMatrix::identity(2), CMatrix::identity(2)}};
  const AlgebraTensor mu = structure::semidirect_sum(s, lam, moment::critical_test(lam));
  if (!algebra::is_associative(mu).associative) o.fail("not associative");
  const auto r = moment::critical_test(mu);
  if (r.residual > 1e-7) o.fail("residual " + fmt("%.3g", r.residual));
  if (type_text(r.type) != "(0<1<2;1,1,1)") o.fail("type " + type_text(r.type));
  if (std::abs(r.value - 10.0 / 3.0) > 1e-6) o.fail("value " + fmt("%.10g", r.value));
  const auto d19 = algebra::catalog_get("d19", 3);
  if (!d19.expected_type || !r.type || !(*r.type == *d19.expected_type) ||
      std::abs(r.value - *d19.expected_value) > 1e-6)
    o.fail("does not match the d19 row");
  if (o.pass) o.detail = "residual " + fmt("%.2g", r.residual) + ", value " + fmt("%.10g", r.value);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AC1 two-dimensional table", table_one},
      {"AC2 three-dimensional table", table_two},
      {"AC3 matrix algebra minimum", matrix_minimum},
      {"AC4 extremal values", extremal_values},
      {"AC5 d21 family law", d21_law},
      {"AC6 property suite", property_suite},
      {"AC7 orbit minimum consistency", orbit_minimum},
      {"AC8 Nikolayevsky suite", nikolayevsky_suite},
      {"AC9 structure theorem", structure_theorem},
      {"AC10 semidirect construction", semidirect_example},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("%-32s %s  %s\n", name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
