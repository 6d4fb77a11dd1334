#include "momentvar/algebra/catalog.hpp"

#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>

namespace momentvar::algebra {
namespace {

struct RowSpec {
  std::vector<Term> terms;
  const char* type;   // nullptr when the row has no critical type
  const char* value;  // exact value text
};

double parse_fraction(std::string_view text) {
  const std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) return std::stod(std::string(text));
  return std::stod(std::string(text.substr(0, slash))) /
         std::stod(std::string(text.substr(slash + 1)));
}

CatalogEntry make_entry(std::string name, AlgebraTensor tensor, const char* type,
                        const char* value) {
  CatalogEntry e{std::move(name), std::move(tensor), std::nullopt, std::nullopt, ""};
  if (type) e.expected_type = CriticalType::parse(type);
  if (value) {
    e.expected_value = parse_fraction(value);
    e.expected_value_text = value;
  }
  return e;
}

const std::map<int, RowSpec>& table_one() {
  static const std::map<int, RowSpec> rows = {
      {1, {{{1, 1, 1}}, "(0<1;1,1)", "4"}},
      {2, {{{1, 1, 1}, {1, 2, 2}}, "(0<1;1,1)", "4"}},
      {3, {{{1, 1, 1}, {2, 1, 2}}, "(0<1;1,1)", "4"}},
      {4, {{{1, 1, 1}, {2, 2, 2}}, "(0;2)", "2"}},
      {5, {{{1, 1, 2}}, "(1<2;1,1)", "20"}},
      {6, {{{1, 1, 1}, {1, 2, 2}, {2, 1, 2}}, "(0<1;1,1)", "4"}},
  };
  return rows;
}

const std::map<int, RowSpec>& table_two() {
  static const std::map<int, RowSpec> rows = {
      {1, {{{1, 1, 1}}, "(0<1;1,2)", "4"}},
      {2, {{{1, 1, 1}, {2, 2, 3}}, "(0<1<2;1,1,1)", "10/3"}},
      {3, {{{1, 1, 1}, {1, 3, 3}}, "(0<1;1,2)", "4"}},
      {4, {{{1, 1, 1}, {3, 1, 3}}, "(0<1;1,2)", "4"}},
      {5, {{{1, 1, 1}, {1, 3, 3}, {3, 1, 3}}, "(0<1;1,2)", "4"}},
      {6, {{{1, 1, 1}, {3, 3, 3}}, "(0<1;2,1)", "2"}},
      {7, {{{1, 1, 1}, {2, 1, 2}, {1, 3, 3}}, "(0<1;1,2)", "4"}},
      {8, {{{1, 1, 1}, {2, 1, 2}, {3, 1, 3}}, "(0<1;1,2)", "4"}},
      {9, {{{1, 1, 1}, {2, 1, 2}, {1, 3, 3}, {3, 1, 3}}, "(0<1;1,2)", "4"}},
      {10, {{{1, 1, 1}, {2, 1, 2}, {3, 3, 3}}, "(0<1;2,1)", "2"}},
      {11, {{{1, 1, 1}, {2, 2, 2}, {2, 3, 3}}, "(0<1;2,1)", "2"}},
      {12, {{{1, 1, 1}, {2, 2, 2}, {2, 3, 3}, {3, 2, 3}}, "(0<1;2,1)", "2"}},
      {13, {{{1, 1, 1}, {2, 2, 2}, {2, 3, 3}, {3, 1, 3}}, "(0<1;2,1)", "2"}},
      {14, {{{1, 1, 1}, {2, 2, 2}, {3, 3, 3}}, "(0;3)", "4/3"}},
      {15, {{{1, 1, 2}}, "(3<5<6;1,1,1)", "20"}},
      {16, {{{1, 1, 2}, {1, 2, 3}, {2, 1, 3}}, "(1<2<3;1,1,1)", "20/3"}},
      {17, {{{1, 1, 1}, {1, 1, 2}, {1, 2, 2}, {2, 1, 2}, {1, 3, 3}}, "(0<1;1,2)", "4"}},
      {18,
       {{{1, 1, 1}, {1, 1, 2}, {1, 2, 2}, {2, 1, 2}, {1, 3, 3}, {3, 1, 3}}, "(0<1;1,2)", "4"}},
      {19,
       {{{3, 3, 3}, {1, 1, 2}, {1, 3, 1}, {3, 1, 1}, {2, 3, 2}, {3, 2, 2}},
        "(0<1<2;1,1,1)",
        "10/3"}},
      {20, {{{1, 1, 1}, {1, 2, 2}, {1, 3, 3}}, "(0<1;1,2)", "4"}},
      {21, {{{1, 1, 3}, {1, 2, 3}, {2, 1, 3, -1.0}}, nullptr, nullptr}},
  };
  return rows;
}

// Splits "name(a,b)" into "name" and {"a", "b"}.
std::pair<std::string, std::vector<std::string>> split_call(std::string_view text) {
  const std::size_t open = text.find('(');
  if (open == std::string_view::npos) return {std::string(text), {}};
  if (text.back() != ')') throw std::invalid_argument("catalog: malformed name " + std::string(text));
  std::vector<std::string> args;
  std::string_view inner = text.substr(open + 1, text.size() - open - 2);
  std::size_t pos = 0;
  while (pos <= inner.size()) {
    const std::size_t comma = std::min(inner.find(',', pos), inner.size());
    args.emplace_back(inner.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return {std::string(text.substr(0, open)), args};
}

std::size_t parse_size_arg(const std::vector<std::string>& args, std::string_view name,
                           std::size_t min) {
  if (args.size() != 1) throw std::invalid_argument("catalog: " + std::string(name) + " takes one argument");
  char* end = nullptr;
  const long v = std::strtol(args[0].c_str(), &end, 10);
  if (end == args[0].c_str() || *end != '\0' || v < static_cast<long>(min) || v > 64) {
    throw std::invalid_argument("catalog: bad size argument for " + std::string(name));
  }
  return static_cast<std::size_t>(v);
}

double parse_real_arg(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw std::invalid_argument("catalog: bad number " + s);
  return v;
}

AlgebraTensor mu_left(std::size_t n) {
  AlgebraTensor mu(n);
  for (std::size_t i = 0; i < n; ++i) mu(0, i, i) = 1.0;
  return mu;
}

AlgebraTensor mu_right(std::size_t n) {
  AlgebraTensor mu(n);
  for (std::size_t i = 0; i < n; ++i) mu(i, 0, i) = 1.0;
  return mu;
}

AlgebraTensor matrix_algebra(std::size_t m) {
  // E_ij has index i * m + j, and E_ij E_kl = delta_jk E_il.
  AlgebraTensor mu(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t l = 0; l < m; ++l) mu(i * m + j, j * m + l, i * m + l) = 1.0;
  return mu;
}

std::string d_name(int k) { return "d" + std::to_string(k); }

}  // namespace

CatalogEntry d22_family(Complex x, Complex y) {
  AlgebraTensor mu = AlgebraTensor::from_terms(3, {{1, 2, 3, x}, {2, 1, 3, y}});
  return make_entry("d22", std::move(mu), "(1<2;2,1)", "12");
}

CatalogEntry catalog_get(std::string_view name, std::size_t dim) {
  const auto [base, args] = split_call(name);

  if (base.size() >= 2 && base[0] == 'd' && base.find_first_not_of("0123456789", 1) == std::string::npos) {
    const int k = std::stoi(base.substr(1));
    if (dim == 2) {
      const auto it = table_one().find(k);
      if (it == table_one().end() || !args.empty()) {
        throw std::invalid_argument("catalog: no entry " + std::string(name) + " in dimension 2");
      }
      return make_entry(base, AlgebraTensor::from_terms(2, it->second.terms), it->second.type,
                        it->second.value);
    }
    if (dim == 3) {
      if (k == 22) {
        if (args.empty()) return d22_family(1.0, 1.0);
        if (args.size() != 2) throw std::invalid_argument("catalog: d22 takes (x,y)");
        return d22_family(parse_real_arg(args[0]), parse_real_arg(args[1]));
      }
      const auto it = table_two().find(k);
      if (it == table_two().end() || !args.empty()) {
        throw std::invalid_argument("catalog: no entry " + std::string(name) + " in dimension 3");
      }
      return make_entry(base, AlgebraTensor::from_terms(3, it->second.terms), it->second.type,
                        it->second.value);
    }
    throw std::invalid_argument("catalog: " + std::string(name) + " needs dim 2 or 3");
  }

  if (base == "mu_l" || base == "mu_r") {
    const std::size_t n = parse_size_arg(args, base, 2);
    const std::string type = "(0<1;1," + std::to_string(n - 1) + ")";
    return make_entry(std::string(name), base == "mu_l" ? mu_left(n) : mu_right(n), type.c_str(),
                      "4");
  }
  if (base == "mu_ca") {
    const std::size_t n = parse_size_arg(args, base, 2);
    AlgebraTensor mu(n);
    mu(0, 0, 1) = 1.0;
    const std::string type =
        n == 2 ? std::string("(1<2;1,1)") : "(3<5<6;1," + std::to_string(n - 2) + ",1)";
    return make_entry(std::string(name), std::move(mu), type.c_str(), "20");
  }
  if (base == "mat") {
    const std::size_t m = parse_size_arg(args, base, 1);
    const std::string type = "(0;" + std::to_string(m * m) + ")";
    const std::string value = m == 1 ? std::string("4") : "4/" + std::to_string(m * m);
    return make_entry(std::string(name), matrix_algebra(m), type.c_str(), value.c_str());
  }
  if (!args.empty()) throw std::invalid_argument("catalog: unknown entry " + std::string(name));

  // The two corrected terms: e3 e2 = -e2 in U13 and e1 e1 = e1 in U03.
  // Without them neither model is associative.
  if (base == "U13") {
    return make_entry("U13",
                      AlgebraTensor::from_terms(3, {{1, 1, 1},
                                                    {3, 3, 1},
                                                    {1, 2, 2},
                                                    {2, 1, 2},
                                                    {2, 3, 2},
                                                    {1, 3, 3},
                                                    {3, 1, 3},
                                                    {3, 2, 2, -1.0}}),
                      "(0<1;2,1)", "2");
  }
  if (base == "W103") {
    return make_entry("W103",
                      AlgebraTensor::from_terms(3, {{1, 2, 1}, {2, 1, 1}, {2, 2, 2}, {2, 3, 3}}),
                      "(0<1;1,2)", "4");
  }
  if (base == "U03") {
    return make_entry(
        "U03",
        AlgebraTensor::from_terms(3, {{1, 1, 1}, {1, 2, 2}, {2, 1, 2}, {1, 3, 3}, {3, 1, 3}}),
        "(0<1;1,2)", "4");
  }
  throw std::invalid_argument("catalog: unknown entry " + std::string(name));
}

std::vector<std::string> table_names(std::size_t dim) {
  std::vector<std::string> names;
  if (dim == 2) {
    for (const auto& [k, row] : table_one()) names.push_back(d_name(k));
  } else if (dim == 3) {
    for (const auto& [k, row] : table_two()) names.push_back(d_name(k));
    names.push_back(d_name(22));
  } else {
    throw std::invalid_argument("table_names: dim must be 2 or 3");
  }
  return names;
}

std::vector<CatalogListing> catalog_list() {
  std::vector<CatalogListing> out;
  for (const std::string& n : table_names(2)) out.push_back({n, 2});
  for (const std::string& n : table_names(3)) out.push_back({n, 3});
  for (const char* model : {"U13", "W103", "U03"}) out.push_back({model, 3});
  for (std::size_t n = 2; n <= 5; ++n) {
    const std::string arg = "(" + std::to_string(n) + ")";
    out.push_back({"mu_l" + arg, n});
    out.push_back({"mu_r" + arg, n});
    out.push_back({"mu_ca" + arg, n});
  }
  for (std::size_t m = 1; m <= 3; ++m) out.push_back({"mat(" + std::to_string(m) + ")", m * m});
  return out;
}

}  // namespace momentvar::algebra
