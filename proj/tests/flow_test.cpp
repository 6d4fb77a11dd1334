#include <doctest.h>

#include "momentvar/algebra/catalog.hpp"
#include "momentvar/algebra/json_io.hpp"
#include "momentvar/flow/flow.hpp"
#include "momentvar/moment/moment.hpp"
#include "support.hpp"

using namespace momentvar;
using algebra::AlgebraTensor;
using cla::Complex;

namespace {

AlgebraTensor entry(const char* name, std::size_t dim = 0) { return algebra::catalog_get(name, dim).tensor; }

moment::CriticalReport relaxed_test(const AlgebraTensor& mu) {
  moment::CriticalOptions o;
  o.tol = 1e-5;
  return moment::critical_test(mu, o);
}

void check_monotone(const flow::FlowTrace& t) {
  for (std::size_t i = 1; i < t.f_values.size(); ++i)
    CHECK(t.f_values[i] <= t.f_values[i - 1] * (1.0 + 1e-13));
}

}  // namespace

TEST_CASE("projective gradient is tangent and matches finite differences on the sphere") {
  std::mt19937_64 rng(51);
  for (std::size_t n = 1; n <= 3; ++n) {
    const AlgebraTensor mu = algebra::normalized(testing::random_tensor(n, rng));
    const AlgebraTensor g = flow::projective_gradient(mu);
    CHECK(std::abs(algebra::inner_product(g, mu).real()) < 1e-10);
    // Tangent direction nu - Re<nu, mu> mu; F is scale invariant so no retraction is needed.
    AlgebraTensor nu = testing::random_tensor(n, rng);
    nu -= Complex(algebra::inner_product(nu, mu).real()) * mu;
    const double h = 1e-5;
    const double fd = (moment::f_value(mu + Complex(h) * nu) - moment::f_value(mu - Complex(h) * nu)) / (2 * h);
    CHECK(algebra::inner_product(g, nu).real() == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("flow from a critical point stops at once") {
  const flow::FlowTrace t = flow::flow_to_critical(entry("d5", 2));
  CHECK(t.converged);
  CHECK(t.iterations == 0);
  CHECK(t.f_values.front() == doctest::Approx(20.0));
  CHECK_FALSE(flow::detect_degeneration(t));
}

TEST_CASE("flow from the non-critical frame of d2 reaches 10/3") {
  const flow::FlowTrace t = flow::flow_to_critical(entry("d2", 3));
  CHECK(t.converged);
  check_monotone(t);
  const auto r = relaxed_test(t.final);
  CHECK(r.critical);
  REQUIRE(r.type);
  CHECK(r.type->str() == "(0<1<2;1,1,1)");
  CHECK(r.value == doctest::Approx(10.0 / 3.0).epsilon(1e-6));
  CHECK_FALSE(flow::detect_degeneration(t));
  CHECK(algebra::is_associative(t.final, 1e-7).associative);
}

TEST_CASE("flow from d21 leaves the orbit") {
  const flow::FlowTrace t = flow::flow_to_critical(entry("d21", 3));
  CHECK(t.converged);
  check_monotone(t);
  CHECK(flow::detect_degeneration(t));
  CHECK(t.final_invariants.der > t.start_invariants.der);
  const auto r = relaxed_test(t.final);
  REQUIRE(r.type);
  CHECK(r.type->str() == "(1<2;2,1)");
  CHECK(r.value == doctest::Approx(12.0).epsilon(1e-6));
}

TEST_CASE("flow stays in the orbit of a conjugated critical point") {
  std::mt19937_64 rng(52);
  for (const char* name : {"d6", "d15", "d19"}) {
    const std::size_t dim = std::string(name) == "d6" ? 2 : 3;
    const AlgebraTensor mu = entry(name, dim);
    const auto target = moment::critical_test(mu);
    for (int k = 0; k < 3; ++k) {
      INFO(name << " sample " << k);
      const AlgebraTensor start = algebra::act_group(testing::random_invertible(dim, rng), mu);
      const flow::FlowTrace t = flow::flow_to_critical(start);
      REQUIRE(t.converged);
      check_monotone(t);
      CHECK_FALSE(flow::detect_degeneration(t));
      const auto r = relaxed_test(t.final);
      REQUIRE(r.type);
      CHECK(*r.type == *target.type);
      CHECK(r.value == doctest::Approx(target.value).epsilon(1e-6));
    }
  }
}

TEST_CASE("flow on random algebras respects the value floor") {
  std::mt19937_64 rng(53);
  for (std::size_t n = 2; n <= 4; ++n) {
    for (int k = 0; k < 3; ++k) {
      const flow::FlowTrace t = flow::flow_to_critical(testing::random_tensor(n, rng));
      CHECK(t.converged);
      check_monotone(t);
      CHECK(t.f_values.back() >= 4.0 / double(n) - 1e-6);
      CHECK(relaxed_test(t.final).critical);
    }
  }
}

TEST_CASE("flow budget and configuration") {
  flow::FlowConfig cfg;
  cfg.max_iters = 3;
  const flow::FlowTrace t = flow::flow_to_critical(entry("d21", 3), cfg);
  CHECK_FALSE(t.converged);
  CHECK(t.iterations == 3);
  CHECK_THROWS_AS(flow::detect_degeneration(t), std::invalid_argument);
  CHECK(t.iterates.size() == 2);

  flow::FlowConfig bad;
  bad.shrink = 1.5;
  CHECK_THROWS_AS(flow::flow_to_critical(entry("d5", 2), bad), std::invalid_argument);
  bad = {};
  bad.record_every = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = {};
  bad.step0 = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS_AS(flow::flow_to_critical(AlgebraTensor(2)), std::invalid_argument);
}

TEST_CASE("orbit invariants") {
  const flow::OrbitInvariants d5 = flow::orbit_invariants(entry("d5", 2));
  CHECK(d5.der == 2);
  CHECK(d5.radical == 2);
  CHECK(d5.annihilator == 1);
  CHECK(d5.center == 2);
  CHECK(d5.associative);
  CHECK(d5.str() == "(der 2, N 2, ann 1, C 2)");
  const AlgebraTensor bad = AlgebraTensor::from_terms(2, {{1, 1, 2}, {2, 1, 1}});
  const flow::OrbitInvariants b = flow::orbit_invariants(bad);
  CHECK_FALSE(b.associative);
  CHECK(b.radical == 0);
}

TEST_CASE("trace JSON") {
  const flow::FlowTrace t = flow::flow_to_critical(entry("d2", 3));
  const nlohmann::json j = flow::trace_to_json(t, 10);
  for (const char* key : {"converged", "stalled", "iterations", "grad_norm", "f_start", "f_final", "f_samples",
                          "start_invariants", "final_invariants", "final", "degenerated"})
    CHECK(j.contains(key));
  CHECK(j["f_samples"].size() <= 11);
  CHECK(j["f_samples"].back()["iter"] == t.f_values.size() - 1);
  CHECK(nlohmann::json::parse(j.dump()) == j);
  const AlgebraTensor back = algebra::algebra_from_json(j["final"]);
  CHECK(testing::max_abs_diff(back, t.final) < 1e-12);
}
