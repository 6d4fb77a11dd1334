#include <doctest.h>

#include <numeric>

#include "momentvar/algebra/catalog.hpp"
#include "momentvar/cla/decompositions.hpp"
#include "momentvar/moment/moment.hpp"
#include "momentvar/structure/derivations.hpp"
#include "momentvar/structure/gamma.hpp"
#include "momentvar/structure/general_eigen.hpp"
#include "momentvar/structure/nikolayevsky.hpp"
#include "momentvar/structure/substructures.hpp"
#include "support.hpp"

using namespace momentvar;
using algebra::AlgebraTensor;
using cla::CMatrix;
using cla::Complex;
using cla::CVector;
using cla::Rational;

namespace {

AlgebraTensor entry(const char* name, std::size_t dim = 0) { return algebra::catalog_get(name, dim).tensor; }

// Der(mu) built straight from D(e_i e_j) = (D e_i) e_j + e_i (D e_j), one
// unknown per entry of D, without going through act_lie.
std::size_t brute_force_der_dim(const AlgebraTensor& mu) {
  const std::size_t n = mu.dim();
  CMatrix sys(n * n * n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      CVector ei(n), ej(n);
      ei[i] = 1.0;
      ej[j] = 1.0;
      const CVector eij = mu.product(ei, ej);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) {
          // Contribution of D = E_rs.
          CVector col(n);
          col[r] += eij[s];
          CVector dei(n), dej(n);
          if (s == i) dei[r] = 1.0;
          if (s == j) dej[r] = 1.0;
          const CVector a = mu.product(dei, ej);
          const CVector b = mu.product(ei, dej);
          for (std::size_t k = 0; k < n; ++k) sys((i * n + j) * n + k, r * n + s) = col[k] - a[k] - b[k];
        }
    }
  const cla::Svd s = cla::svd(sys);
  return n * n - cla::numerical_rank(s, sys.rows(), sys.cols(), 1e-9, 1.0);
}

bool is_derivation(const CMatrix& d, const AlgebraTensor& mu, std::mt19937_64& rng) {
  const std::size_t n = mu.dim();
  CVector x(n), y(n);
  for (auto& v : x) v = testing::gaussian(rng);
  for (auto& v : y) v = testing::gaussian(rng);
  const CVector lhs = d * std::span<const Complex>(mu.product(x, y));
  const CVector a = mu.product(d * std::span<const Complex>(x), y);
  const CVector b = mu.product(x, d * std::span<const Complex>(y));
  double err = 0.0;
  for (std::size_t k = 0; k < n; ++k) err = std::max(err, std::abs(lhs[k] - a[k] - b[k]));
  return err < 1e-8 * (1.0 + mu.norm_sq());
}

std::vector<double> sorted_real(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("derivation algebra dimensions") {
  // e1 e1 = e1 in C^2: D e1 = 0 from D e1 = 2 (D e1)_1 e1, and e1 (D e2) = 0 kills
  // the e1 part of D e2, leaving D = diag(0, d).
  CHECK(structure::derivation_algebra(entry("d1", 2)).basis.size() == 1);
  CHECK(brute_force_der_dim(entry("d1", 2)) == 1);
  CHECK(structure::derivation_algebra(entry("d5", 2)).basis.size() == 2);
  // Inner derivations of M_2 form sl_2.
  CHECK(structure::derivation_algebra(entry("mat(2)")).basis.size() == 3);
  // Aut(d21) is 4-dimensional.
  CHECK(structure::derivation_algebra(entry("d21", 3)).basis.size() == 4);
  for (std::size_t n = 1; n <= 3; ++n) {
    CHECK(structure::derivation_algebra(AlgebraTensor(n)).basis.size() == n * n);
  }
}

TEST_CASE("derivation basis matches brute force on catalog and random algebras") {
  std::mt19937_64 rng(41);
  for (const auto& n : testing::catalog_names()) {
    if (n.dim > 5) continue;
    INFO(testing::label(n));
    const AlgebraTensor mu = testing::get(n).tensor;
    const auto der = structure::derivation_algebra(mu);
    CHECK(der.basis.size() == brute_force_der_dim(mu));
    for (const CMatrix& d : der.basis) CHECK(is_derivation(d, mu, rng));
    CHECK(structure::commutator_closure_residual(der) < 1e-8);
  }
  for (int t = 0; t < 20; ++t) {
    const AlgebraTensor mu = testing::random_sparse_tensor(3, rng, 0.15);
    const auto der = structure::derivation_algebra(mu);
    CHECK(der.basis.size() == brute_force_der_dim(mu));
    for (const CMatrix& d : der.basis) CHECK(is_derivation(d, mu, rng));
  }
}

TEST_CASE("derivation dimension is an isomorphism invariant") {
  std::mt19937_64 rng(42);
  for (const auto& n : testing::catalog_names()) {
    INFO(testing::label(n));
    const AlgebraTensor mu = testing::get(n).tensor;
    const std::size_t dim = structure::derivation_algebra(mu).basis.size();
    for (int t = 0; t < 50; ++t) {
      const AlgebraTensor g_mu = algebra::act_group(testing::random_invertible(n.dim, rng), mu);
      CHECK(structure::derivation_algebra(algebra::normalized(g_mu), 1e-7).basis.size() == dim);
    }
  }
}

TEST_CASE("vec and unvec") {
  std::mt19937_64 rng(43);
  const CMatrix a = testing::random_matrix(3, rng);
  CHECK(testing::max_abs_diff(structure::unvec(structure::vec(a), 3), a) == 0.0);
  CHECK(structure::vec(a)[1] == a(0, 1));
}

TEST_CASE("nikolayevsky derivation examples") {
  const auto d1 = structure::nikolayevsky(entry("d1", 2));
  CHECK(d1.is_semisimple);
  CHECK(d1.eigen_rationals == std::vector<Rational>{Rational(0), Rational(1)});

  const auto d5 = structure::nikolayevsky(entry("d5", 2));
  CHECK(d5.eigen_rationals == std::vector<Rational>{Rational(3, 5), Rational(6, 5)});
  CHECK(d5.trace_residual < 1e-10);

  for (const char* m : {"mat(1)", "mat(2)", "mat(3)"}) {
    const auto r = structure::nikolayevsky(entry(m));
    CHECK(r.phi.max_abs() < 1e-10);
  }
  CHECK(nlohmann::json::parse(structure::nikolayevsky_to_json(d5).dump()).is_object());
}

TEST_CASE("nikolayevsky spectrum equals that of -D / c at critical points") {
  for (const auto& n : testing::catalog_names()) {
    INFO(testing::label(n));
    const AlgebraTensor mu = testing::get(n).tensor;
    const auto report = moment::critical_test(mu);
    if (!report.critical) continue;
    const auto nik = structure::nikolayevsky(mu);
    std::vector<double> expected;
    for (double d : report.d_eigenvalues) expected.push_back(-d / report.c);
    const auto a = sorted_real(expected);
    const auto b = sorted_real(nik.eigenvalues);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-6);
  }
}

TEST_CASE("exact spectrum") {
  // d5: c1 + c1 = c2 with multiplicities (1, 1) and tr(phi psi) = tr psi fixes (3/5, 6/5).
  const auto r = structure::exact_spectrum({Rational(3, 5), Rational(6, 5)}, {1, 1});
  CHECK(r == std::vector<Rational>{Rational(3, 5), Rational(6, 5)});
}

TEST_CASE("substructures on examples") {
  const auto d5 = structure::substructures(entry("d5", 2));
  CHECK(d5.center.size() == 2);
  REQUIRE(d5.annihilator.size() == 1);
  CHECK(std::abs(std::abs(d5.annihilator[0][1]) - 1.0) < 1e-12);
  CHECK(d5.radical.size() == 2);

  for (std::size_t m = 1; m <= 3; ++m) {
    const AlgebraTensor mu = algebra::catalog_get("mat(" + std::to_string(m) + ")").tensor;
    const auto s = structure::substructures(mu);
    CHECK(s.radical.empty());
    REQUIRE(s.center.size() == 1);
    // The center is spanned by the identity, E_ii at index i * m + i.
    for (std::size_t i = 0; i < m; ++i)
      CHECK(std::abs(std::abs(s.center[0][i * m + i]) - 1.0 / std::sqrt(double(m))) < 1e-10);
  }

  const auto zero = structure::substructures(AlgebraTensor(3));
  CHECK(zero.center.size() == 3);
  CHECK(zero.annihilator.size() == 3);
  CHECK(zero.radical.size() == 3);

  const AlgebraTensor bad = AlgebraTensor::from_terms(2, {{1, 1, 2}, {2, 1, 1}});
  CHECK_THROWS_AS(structure::substructures(bad), std::invalid_argument);
  CHECK(structure::center(bad).size() <= 2);
}

TEST_CASE("radical is a nilpotent ideal on every catalog entry") {
  for (const auto& n : testing::catalog_names()) {
    INFO(testing::label(n));
    const AlgebraTensor mu = algebra::normalized(testing::get(n).tensor);
    const auto s = structure::substructures(mu);
    CHECK(structure::ideal_residual(mu, s.radical) < 1e-8);
    if (!s.radical.empty()) CHECK(structure::nilpotency_index(mu, s.radical, n.dim + 1) > 0);
    // ann is contained in C and in N.
    CHECK(structure::containment_residual(s.annihilator, s.center) < 1e-8);
    CHECK(structure::containment_residual(s.annihilator, s.radical) < 1e-8);
  }
}

TEST_CASE("eigenspace split") {
  const double d6[] = {0.0, 6.0};
  const auto a = structure::eigenspace_split(CMatrix::diagonal(std::span<const double>(d6)));
  CHECK(a.negative.empty());
  CHECK(a.zero.size() == 1);
  CHECK(a.positive.size() == 1);
  CHECK(std::abs(std::abs(a.positive[0][1]) - 1.0) < 1e-14);
  const auto z = structure::eigenspace_split(CMatrix(3, 3));
  CHECK(z.zero.size() == 3);
  const double d15[] = {6.0, 12.0, 10.0};
  const auto p = structure::eigenspace_split(CMatrix::diagonal(std::span<const double>(d15)));
  CHECK(p.positive.size() == 3);
  const double mixed[] = {-1.0, 0.0, 2.0, 3.0};
  const auto m = structure::eigenspace_split(CMatrix::diagonal(std::span<const double>(mixed)));
  CHECK(m.negative.size() == 1);
  CHECK(m.zero.size() == 1);
  CHECK(m.positive.size() == 2);
}

TEST_CASE("structure checks") {
  const AlgebraTensor d6 = entry("d6", 2);
  const auto r6 = structure::structure_checks(d6, moment::critical_test(d6));
  CHECK(r6.all_pass());
  const AlgebraTensor d15 = entry("d15", 3);
  CHECK(structure::structure_checks(d15, moment::critical_test(d15)).all_pass());
  const AlgebraTensor d21 = entry("d21", 3);
  CHECK_THROWS_AS(structure::structure_checks(d21, moment::critical_test(d21)), std::invalid_argument);
  for (const auto& n : testing::catalog_names()) {
    INFO(testing::label(n));
    const AlgebraTensor mu = testing::get(n).tensor;
    const auto rep = moment::critical_test(mu);
    if (!rep.critical) continue;
    const auto c = structure::structure_checks(mu, rep);
    CHECK(c.annihilator_in_positive.pass);
    CHECK(c.positive_in_radical.pass);
    CHECK(c.negative_central.pass);
    CHECK(c.zero_adjoint_derivation.pass);
  }
}

TEST_CASE("general eigenvalues") {
  // Companion matrix of (x - 1)(x - 2)(x + 3) = x^3 - 7x + 6.
  const CMatrix comp(3, 3, {0.0, 0.0, -6.0, 1.0, 0.0, 7.0, 0.0, 1.0, 0.0});
  const auto ev = structure::general_eigenvalues(comp);
  REQUIRE(ev.size() == 3);
  CHECK(std::abs(ev[0] - Complex(-3.0)) < 1e-10);
  CHECK(std::abs(ev[1] - Complex(1.0)) < 1e-10);
  CHECK(std::abs(ev[2] - Complex(2.0)) < 1e-10);
  const CMatrix rot(2, 2, {0.0, -1.0, 1.0, 0.0});
  const auto r = structure::general_eigenvalues(rot);
  CHECK(std::abs(r[0] - Complex(0, -1)) < 1e-12);
  CHECK(std::abs(r[1] - Complex(0, 1)) < 1e-12);
  std::mt19937_64 rng(44);
  const CMatrix a = testing::random_matrix(6, rng);
  const auto e = structure::general_eigenvalues(a);
  const Complex sum = std::accumulate(e.begin(), e.end(), Complex(0.0));
  CHECK(std::abs(sum - a.trace()) < 1e-10);
}

TEST_CASE("gamma structure of the d5 pattern") {
  const AlgebraTensor lam = entry("d5", 2);
  const auto g = structure::gamma_structure(lam);
  CHECK_FALSE(g.degenerate);
  const structure::GammaPair id{CMatrix::identity(2), CMatrix::identity(2)};
  CHECK(structure::left_intertwiner_residual(id.phi, lam) < 1e-14);
  CHECK(structure::right_intertwiner_residual(id.psi, lam) < 1e-14);
  CHECK(structure::compatibility_residual(id, lam) < 1e-14);
  // (I, I) lies in the span of the computed Gamma.
  std::vector<CVector> span;
  for (const auto& p : g.gamma) {
    CVector v = structure::vec(p.phi);
    const CVector w = structure::vec(p.psi);
    v.insert(v.end(), w.begin(), w.end());
    span.push_back(v);
  }
  CVector target = structure::vec(id.phi);
  const CVector w = structure::vec(id.psi);
  target.insert(target.end(), w.begin(), w.end());
  CHECK(cla::distance_to_span(target, cla::orthonormal_span(span)) < 1e-10);
  CHECK(g.product_closure_residual < 1e-8);

  // diag(s, s^2) intertwines on the left only when s^2 = s.
  for (double s : {0.0, 1.0, 2.0, -0.5}) {
    const double d[] = {s, s * s};
    const double res = structure::left_intertwiner_residual(CMatrix::diagonal(std::span<const double>(d)), lam);
    if (s * s == s) {
      CHECK(res < 1e-14);
    } else {
      CHECK(res > 1e-3);
    }
  }
}

TEST_CASE("gamma structure edge cases") {
  const auto z = structure::gamma_structure(AlgebraTensor(2));
  CHECK(z.degenerate);
  // L and R are all of End(C^2), so commuting with the opposite family leaves
  // the scalars: Gamma = {(a I, b I)}.
  CHECK(z.left.size() == 4);
  CHECK(z.gamma_l.size() == 1);
  CHECK(z.gamma.size() == 2);
  CHECK_THROWS_AS(structure::gamma_structure(entry("d1", 2)), std::invalid_argument);
}

TEST_CASE("semidirect sum example") {
  const AlgebraTensor lam = entry("d5", 2);
  const auto rep = moment::critical_test(lam);
  const std::vector<structure::GammaPair> s{{CMatrix::identity(2), CMatrix::identity(2)}};
  const AlgebraTensor mu = structure::semidirect_sum(s, lam, rep);
  CHECK(mu.dim() == 3);
  CHECK(algebra::is_associative(mu).associative);
  const auto r = moment::critical_test(mu);
  CHECK(r.residual <= 1e-7);
  REQUIRE(r.type);
  CHECK(r.type->str() == "(0<1<2;1,1,1)");
  CHECK(r.value == doctest::Approx(10.0 / 3.0).epsilon(1e-9));
  // The S block is C, which has zero radical; the whole radical is lam.
  CHECK(structure::substructures(mu).radical.size() == 2);

  CHECK(testing::max_abs_diff(structure::semidirect_sum({}, lam, rep), lam) == 0.0);

  CMatrix nonnormal(2, 2);
  nonnormal(0, 1) = 1.0;
  const std::vector<structure::GammaPair> bad{{nonnormal, nonnormal}};
  CHECK_THROWS_AS(structure::semidirect_sum(bad, lam, rep), structure::SemidirectPreconditionError);
}
