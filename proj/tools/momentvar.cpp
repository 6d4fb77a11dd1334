#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "momentvar/algebra/catalog.hpp"
#include "momentvar/algebra/json_io.hpp"
#include "momentvar/flow/flow.hpp"
#include "momentvar/moment/moment.hpp"
#include "momentvar/report/analyze.hpp"
#include "momentvar/report/tables.hpp"

using namespace momentvar;

namespace {

enum Exit { kOk = 0, kInput = 1, kValidation = 2, kBudget = 3 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A file path, "-" for stdin, or "catalog:NAME" (with --dim for d-rows).
algebra::AlgebraTensor load(const std::string& source, std::size_t dim) {
  if (source.rfind("catalog:", 0) == 0) {
    try {
      return algebra::catalog_get(source.substr(8), dim).tensor;
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  std::stringstream buf;
  if (source == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(source);
    if (!in) throw InputError("cannot open " + source);
    buf << in.rdbuf();
  }
  try {
    return algebra::parse_algebra(buf.str());
  } catch (const algebra::ParseError& e) {
    throw InputError(e.what());
  }
}

void check_input(const algebra::AlgebraTensor& mu, bool require_associative) {
  if (mu.is_zero()) throw InputError("the zero tensor has no moment map");
  if (require_associative && !algebra::is_associative(mu).associative) {
    throw ValidationError("input is not associative");
  }
}

cla::CMatrix random_invertible(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  cla::CMatrix g = cla::CMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) += 0.5 * cla::Complex(normal(rng), normal(rng));
  return g;
}

void print(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moment map, energy flow and critical types of complex algebras"};
  app.require_subcommand(1);

  bool as_json = false;
  bool require_associative = false;
  std::string input;
  std::size_t input_dim = 0;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", input, "JSON algebra file, - for stdin, or catalog:NAME")->required();
    sub->add_option("--dim", input_dim, "dimension for catalog:dK names");
    sub->add_flag("--json", as_json, "print JSON");
    sub->add_flag("--require-associative", require_associative, "reject non-associative input");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "moment map, critical test, derivations, substructures");
  add_input(analyze);

  CLI::App* flow_cmd = app.add_subcommand("flow", "negative gradient flow of F to a critical point");
  add_input(flow_cmd);
  flow::FlowConfig cfg;
  std::uint64_t seed_metric = 0;
  flow_cmd->add_option("--step", cfg.step0, "initial step (default 0.1 / F)")->check(CLI::NonNegativeNumber);
  flow_cmd->add_option("--tol", cfg.grad_tol, "stop when the projective gradient is below this")
      ->check(CLI::PositiveNumber);
  flow_cmd->add_option("--max-iter", cfg.max_iters, "iteration budget");
  flow_cmd->add_option("--seed-metric", seed_metric, "conjugate by a random invertible matrix from this seed first");
  bool full_trace = false;
  flow_cmd->add_flag("--trace", full_trace, "include sampled iterates in the JSON output");

  CLI::App* tables = app.add_subcommand("tables", "recompute the critical type tables");
  std::size_t table_dim = 2;
  bool markdown = false;
  report::TableOptions topts;
  bool no_flow = false;
  tables->add_option("--dim", table_dim, "2 or 3")->check(CLI::IsMember({2, 3}))->required();
  tables->add_flag("--json", as_json, "print JSON");
  tables->add_flag("--markdown", markdown, "print a markdown table");
  tables->add_flag("--no-flow", no_flow, "skip the flow cross-check");
  tables->add_option("--d22-samples", topts.d22_samples, "random d22(x,y) samples");
  tables->add_option("--seed", topts.seed, "seed for the d22 samples");

  CLI::App* d21 = app.add_subcommand("d21", "D spectrum of d21 over its family of metrics");
  std::size_t samples = 10;
  d21->add_option("--samples", samples, "number of values of a")->check(CLI::PositiveNumber);
  d21->add_flag("--json", as_json, "print JSON");

  CLI::App* catalog = app.add_subcommand("catalog", "built-in algebras");
  catalog->require_subcommand(1);
  catalog->add_subcommand("list", "print all names");
  CLI::App* show = catalog->add_subcommand("show", "print an entry as JSON");
  std::string show_name;
  std::size_t show_dim = 0;
  show->add_option("name", show_name)->required();
  show->add_option("--dim", show_dim, "2 or 3 for dK names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*analyze) {
      const algebra::AlgebraTensor mu = load(input, input_dim);
      check_input(mu, require_associative);
      const report::AnalyzeReport rep = report::analyze(mu);
      if (as_json) {
        print(rep.json);
      } else {
        std::cout << rep.text;
      }
      return kOk;
    }

    if (*flow_cmd) {
      algebra::AlgebraTensor mu = load(input, input_dim);
      check_input(mu, require_associative);
      if (flow_cmd->count("--seed-metric") > 0) mu = algebra::act_group(random_invertible(mu.dim(), seed_metric), mu);
      const flow::FlowTrace trace = flow::flow_to_critical(mu, cfg);
      moment::CriticalOptions relaxed;
      relaxed.tol = 1e-5;
      const moment::CriticalReport final_report = moment::critical_test(trace.final, relaxed);
      if (as_json) {
        nlohmann::json j = flow::trace_to_json(trace);
        j["final_report"] = moment::report_to_json(final_report);
        if (full_trace) {
          nlohmann::json its = nlohmann::json::array();
          for (const auto& it : trace.iterates) its.push_back(algebra::algebra_to_json(it));
          j["iterates"] = its;
        }
        print(j);
      } else {
        std::cout << "converged        " << (trace.converged ? "yes" : "no") << (trace.stalled ? " (stalled)" : "")
                  << "\niterations       " << trace.iterations << "\ngradient norm    " << trace.grad_norm
                  << "\nF start          " << trace.f_values.front() << "\nF final          "
                  << trace.f_values.back() << "\nfinal type       "
                  << (final_report.type ? final_report.type->str() : "-") << "\nfinal residual   "
                  << final_report.residual << "\ninvariants       " << trace.start_invariants.str() << " -> "
                  << trace.final_invariants.str() << "\n";
        if (trace.converged) {
          std::cout << "degenerated      " << (flow::detect_degeneration(trace) ? "yes" : "no") << "\n";
        }
      }
      return trace.converged ? kOk : kBudget;
    }

    if (*tables) {
      topts.run_flows = !no_flow;
      const std::vector<report::TableRow> rows = report::run_table(table_dim, topts);
      const bool pass = report::table_passes(rows);
      if (as_json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rows) arr.push_back(report::row_to_json(r));
        print({{"dim", table_dim}, {"rows", arr}, {"pass", pass}});
      } else if (markdown) {
        std::cout << report::rows_to_markdown(rows);
      } else {
        for (const auto& r : rows) {
          std::cout << r.name << "  " << (r.computed_type ? r.computed_type->str() : "-") << "  "
                    << r.computed_value << "  " << report::status_name(r.status) << "  [" << r.method << "]";
          if (!r.note.empty()) std::cout << "  " << r.note;
          std::cout << "\n";
        }
      }
      return pass ? kOk : kValidation;
    }

    if (*d21) {
      const std::vector<report::D21Sample> family = report::d21_family(samples);
      bool ok = true;
      for (const auto& s : family) {
        ok = ok && s.proportionality_error <= 1e-8 && s.multiplicities != std::vector<int>{2, 1} && !s.critical;
      }
      if (as_json) {
        print({{"samples", report::d21_to_json(family)}, {"pass", ok}});
      } else {
        for (const auto& s : family) {
          std::cout << "a = " << s.a << "  D = (" << s.d_eigenvalues[0] << ", " << s.d_eigenvalues[1] << ", "
                    << s.d_eigenvalues[2] << ")  law error " << s.proportionality_error << "  residual "
                    << s.residual << (s.critical ? "  CRITICAL" : "  not critical") << "\n";
        }
      }
      return ok ? kOk : kValidation;
    }

    if (*catalog) {
      if (catalog->got_subcommand("list")) {
        for (const auto& l : algebra::catalog_list()) std::cout << l.name << "  dim " << l.dim << "\n";
        return kOk;
      }
      const algebra::CatalogEntry e = algebra::catalog_get(show_name, show_dim);
      nlohmann::json j = algebra::algebra_to_json(e.tensor);
      j["name"] = e.name;
      if (e.expected_type) j["expected_type"] = e.expected_type->str();
      if (!e.expected_value_text.empty()) j["expected_value"] = e.expected_value_text;
      print(j);
      return kOk;
    }
  } catch (const InputError& e) {
    std::cerr << "momentvar: " << e.what() << "\n";
    return kInput;
  } catch (const ValidationError& e) {
    std::cerr << "momentvar: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "momentvar: " << e.what() << "\n";
    return kInput;
  }
  return kOk;
}
