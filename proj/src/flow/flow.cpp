#include "momentvar/flow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "momentvar/algebra/json_io.hpp"
#include "momentvar/cla/decompositions.hpp"
#include "momentvar/moment/moment.hpp"
#include "momentvar/structure/derivations.hpp"
#include "momentvar/structure/substructures.hpp"

namespace momentvar::flow {

using cla::CMatrix;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Point {
  AlgebraTensor mu;  // unit norm
  CMatrix m;
  double f = 0.0;
  AlgebraTensor grad;
  double grad_norm = 0.0;
};

Point evaluate(AlgebraTensor mu) {
  Point p;
  p.mu = algebra::normalized(mu);
  p.m = moment::moment_matrix(p.mu).m;
  const double fro = p.m.frobenius_norm();
  p.f = fro * fro;
  p.grad = 8.0 * algebra::act_lie(p.m, p.mu) - (4.0 * p.f) * p.mu;
  p.grad_norm = p.grad.norm();
  return p;
}

// M minus its projection onto span(I, g Der(start) g^-1). The removed part
// acts on g . start radially or not at all, so the step is unchanged while
// g stops drifting inside the stabilizer near a limit.
CMatrix reduced_generator(const CMatrix& m, const std::vector<CMatrix>& der, const CMatrix& g,
                          const CMatrix& g_inv) {
  const std::size_t n = m.rows();
  std::vector<cla::CVector> gauge{structure::vec(CMatrix::identity(n))};
  for (const CMatrix& b : der) gauge.push_back(structure::vec(g * b * g_inv));
  cla::CVector r = structure::vec(m);
  const std::vector<cla::CVector> basis = cla::orthonormal_span(gauge);
  for (int pass = 0; pass < 2; ++pass)
    for (const cla::CVector& q : basis) cla::axpy(-cla::inner(r, q), q, r);
  return structure::unvec(r, n);
}

}  // namespace

void FlowConfig::validate() const {
  if (!(step0 >= 0.0) || !std::isfinite(step0)) throw std::invalid_argument("flow: step0 must be >= 0");
  if (!(shrink > 0.0 && shrink < 1.0)) throw std::invalid_argument("flow: shrink must lie in (0, 1)");
  if (!(grad_tol > 0.0)) throw std::invalid_argument("flow: grad_tol must be > 0");
  if (!(armijo > 0.0 && armijo < 1.0)) throw std::invalid_argument("flow: armijo must lie in (0, 1)");
  if (!(max_step_ratio >= 1.0)) throw std::invalid_argument("flow: max_step_ratio must be >= 1");
  if (record_every == 0) throw std::invalid_argument("flow: record_every must be >= 1");
}

std::string OrbitInvariants::str() const {
  return "(der " + std::to_string(der) + ", N " + (associative ? std::to_string(radical) : "-") +
         ", ann " + std::to_string(annihilator) + ", C " + std::to_string(center) + ")";
}

AlgebraTensor projective_gradient(const AlgebraTensor& mu) { return evaluate(mu).grad; }

FlowTrace flow_to_critical(const AlgebraTensor& mu, const FlowConfig& cfg) {
  cfg.validate();
  algebra::require_nonzero(mu, "flow_to_critical");

  FlowTrace trace;
  const AlgebraTensor start = algebra::normalized(mu);
  Point cur = evaluate(start);
  trace.start_invariants = orbit_invariants(cur.mu);
  trace.iterates.push_back(cur.mu);
  trace.f_values.push_back(cur.f);

  // Iterates are always g . start for the accumulated g, so round-off moves
  // along the orbit and cannot build up in transverse directions.
  const std::size_t n = mu.dim();
  const std::vector<CMatrix> der = structure::derivation_algebra(start).basis;
  CMatrix g = CMatrix::identity(n);
  CMatrix g_inv = CMatrix::identity(n);

  const double step0 = cfg.step0 > 0.0 ? cfg.step0 : 0.1 / cur.f;
  double step = step0;
  bool recorded_last = true;

  while (true) {
    if (cur.grad_norm <= cfg.grad_tol) {
      trace.converged = true;
      break;
    }
    if (trace.iterations >= cfg.max_iters) break;

    const CMatrix a = reduced_generator(cur.m, der, g, g_inv);
    const double g2 = cur.grad_norm * cur.grad_norm;
    double h = step;
    bool accepted = false;
    std::size_t tries = 0;
    Point next;
    CMatrix next_g, next_g_inv;
    for (; tries <= cfg.max_backtracks; ++tries, h *= cfg.shrink) {
      next_g = cla::expm((-8.0 * h) * a) * g;
      next_g_inv = g_inv * cla::expm((8.0 * h) * a);
      next = evaluate(algebra::act_group(next_g, next_g_inv, start));
      const double predicted = cfg.armijo * h * g2;
      if (predicted >= 1e3 * kEps * cur.f) {
        accepted = next.f <= cur.f - predicted;
      } else {
        // Below round-off F cannot certify descent; the gradient norm can.
        accepted = next.f <= cur.f * (1.0 + 1e-13) && next.grad_norm < cur.grad_norm;
      }
      if (accepted) break;
    }
    if (!accepted) {
      trace.stalled = true;
      break;
    }
    step = tries == 0 ? std::min(2.0 * h, cfg.max_step_ratio * step0) : h;
    // Only the direction of g matters after normalizing.
    const double scale = next_g.frobenius_norm();
    g = (1.0 / scale) * next_g;
    g_inv = scale * next_g_inv;
    cur = std::move(next);
    ++trace.iterations;
    trace.f_values.push_back(cur.f);
    recorded_last = trace.iterations % cfg.record_every == 0;
    if (recorded_last) trace.iterates.push_back(cur.mu);
  }

  if (!recorded_last) trace.iterates.push_back(cur.mu);
  trace.grad_norm = cur.grad_norm;
  trace.final = cur.mu;
  trace.final_invariants = orbit_invariants(cur.mu);
  return trace;
}

OrbitInvariants orbit_invariants(const AlgebraTensor& mu, double tol) {
  algebra::require_nonzero(mu, "orbit_invariants");
  OrbitInvariants inv;
  inv.der = structure::derivation_algebra(mu, tol).basis.size();
  inv.center = structure::center(mu, tol).size();
  inv.annihilator = structure::annihilator(mu, tol).size();
  inv.associative = algebra::is_associative(mu).associative;
  if (inv.associative) inv.radical = structure::substructures(mu, tol).radical.size();
  return inv;
}

bool detect_degeneration(const FlowTrace& trace) {
  if (!trace.converged) throw std::invalid_argument("detect_degeneration: trace did not converge");
  return !(trace.start_invariants == trace.final_invariants);
}

nlohmann::json invariants_to_json(const OrbitInvariants& inv) {
  nlohmann::json j = {{"der", inv.der},
                      {"annihilator", inv.annihilator},
                      {"center", inv.center},
                      {"associative", inv.associative}};
  j["radical"] = inv.associative ? nlohmann::json(inv.radical) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json trace_to_json(const FlowTrace& trace, std::size_t max_samples) {
  nlohmann::json samples = nlohmann::json::array();
  const std::size_t total = trace.f_values.size();
  if (total > 0 && max_samples > 0) {
    const std::size_t stride = std::max<std::size_t>(1, (total + max_samples - 1) / max_samples);
    for (std::size_t i = 0; i < total; i += stride) samples.push_back({{"iter", i}, {"f", trace.f_values[i]}});
    if ((total - 1) % stride != 0) samples.push_back({{"iter", total - 1}, {"f", trace.f_values.back()}});
  }
  nlohmann::json j = {{"converged", trace.converged},
                      {"stalled", trace.stalled},
                      {"iterations", trace.iterations},
                      {"grad_norm", trace.grad_norm},
                      {"f_start", trace.f_values.empty() ? 0.0 : trace.f_values.front()},
                      {"f_final", trace.f_values.empty() ? 0.0 : trace.f_values.back()},
                      {"f_samples", samples},
                      {"start_invariants", invariants_to_json(trace.start_invariants)},
                      {"final_invariants", invariants_to_json(trace.final_invariants)},
                      {"final", algebra::algebra_to_json(trace.final)}};
  if (trace.converged) j["degenerated"] = detect_degeneration(trace);
  return j;
}

}  // namespace momentvar::flow
