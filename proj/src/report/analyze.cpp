#include "momentvar/report/analyze.hpp"

#include <cstdio>
#include <sstream>

#include "momentvar/algebra/json_io.hpp"
#include "momentvar/cla/decompositions.hpp"
#include "momentvar/moment/moment.hpp"
#include "momentvar/structure/nikolayevsky.hpp"
#include "momentvar/structure/substructures.hpp"

namespace momentvar::report {

namespace {

std::string num(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string list(const std::vector<double>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + num(xs[i]);
  return out + "]";
}

}  // namespace

AnalyzeReport analyze(const algebra::AlgebraTensor& mu) {
  algebra::require_nonzero(mu, "analyze");
  AnalyzeReport out;
  std::ostringstream text;

  const algebra::AssociativityCheck assoc = algebra::is_associative(mu);
  out.associative = assoc.associative;
  const std::vector<double> spectrum = cla::hermitian_eig(moment::moment_matrix(mu).m).eigenvalues;
  const moment::CriticalReport crit = moment::critical_test(mu);
  out.critical = crit.critical;

  out.json["dim"] = mu.dim();
  out.json["norm"] = mu.norm();
  out.json["associative"] = assoc.associative;
  out.json["associativity_violation"] = assoc.max_violation;
  out.json["moment_spectrum"] = spectrum;
  out.json["f_value"] = crit.value;
  out.json["critical"] = moment::report_to_json(crit);
  // The critical report is taken at ||mu|| = 1; M_mu = c_mu I + D_mu at the input scale.
  const double scale = mu.norm_sq();
  std::vector<double> d_mu;
  for (double d : crit.d_eigenvalues) d_mu.push_back(scale * d);
  out.json["c_mu"] = scale * crit.c;
  out.json["d_mu_eigenvalues"] = d_mu;

  text << "dimension        " << mu.dim() << "\n";
  text << "associative      " << (assoc.associative ? "yes" : "no") << " (violation "
       << num(assoc.max_violation) << ")\n";
  text << "M spectrum       " << list(spectrum) << "\n";
  text << "F                " << num(crit.value) << "\n";
  text << "c                " << num(scale * crit.c) << "\n";
  text << "D spectrum       " << list(d_mu) << "\n";
  text << "residual         " << num(crit.residual) << "\n";
  if (crit.critical) {
    text << "critical         yes, type " << (crit.type ? crit.type->str() : "?");
    if (!crit.type_error.empty()) text << " (" << crit.type_error << ")";
    text << "\n";
  } else {
    text << "critical         not critical\n";
  }

  const structure::NikolayevskyResult nik = structure::nikolayevsky(mu);
  out.json["nikolayevsky"] = structure::nikolayevsky_to_json(nik);
  text << "dim Der          " << nik.der_dim << "\n";
  text << "Nikolayevsky     ";
  if (nik.is_semisimple) {
    for (std::size_t i = 0; i < nik.eigen_rationals.size(); ++i)
      text << (i ? " " : "") << nik.eigen_rationals[i].str();
  } else {
    text << "not found";
  }
  if (!nik.note.empty()) text << " (" << nik.note << ")";
  text << "\n";

  if (assoc.associative) {
    const structure::SubstructureReport sub = structure::substructures(mu);
    out.json["substructures"] = structure::substructures_to_json(sub);
    text << "dim C, ann, N    " << sub.center.size() << ", " << sub.annihilator.size() << ", "
         << sub.radical.size() << "\n";
    if (crit.critical) {
      const structure::StructureCheckResult checks = structure::structure_checks(mu, crit);
      out.json["structure_checks"] = structure::structure_checks_to_json(checks);
      text << "structure checks " << (checks.all_pass() ? "pass" : "FAIL") << "\n";
    }
  }
  out.text = text.str();
  return out;
}

}  // namespace momentvar::report
