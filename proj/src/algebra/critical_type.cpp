#include "momentvar/algebra/critical_type.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace momentvar::algebra {
namespace {

template <typename T>
std::vector<T> parse_list(std::string_view text, char sep) {
  std::vector<T> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = std::min(text.find(sep, pos), text.size());
    std::string_view item = text.substr(pos, next - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    T value{};
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
      throw std::invalid_argument("CriticalType: bad number '" + std::string(item) + "'");
    }
    out.push_back(value);
    pos = next + 1;
  }
  return out;
}

}  // namespace

int CriticalType::dim() const { return std::accumulate(ds.begin(), ds.end(), 0); }

std::string CriticalType::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (i) s += "<";
    s += std::to_string(ks[i]);
  }
  s += ";";
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(ds[i]);
  }
  return s + ")";
}

CriticalType CriticalType::parse(std::string_view text) {
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
    throw std::invalid_argument("CriticalType: expected parentheses");
  }
  text = text.substr(1, text.size() - 2);
  const std::size_t semi = text.find(';');
  if (semi == std::string_view::npos) throw std::invalid_argument("CriticalType: missing ';'");
  CriticalType t;
  t.ks = parse_list<std::int64_t>(text.substr(0, semi), '<');
  t.ds = parse_list<int>(text.substr(semi + 1), ',');
  if (t.ks.size() != t.ds.size()) {
    throw std::invalid_argument("CriticalType: eigenvalue and multiplicity counts differ");
  }
  for (std::size_t i = 1; i < t.ks.size(); ++i) {
    if (t.ks[i - 1] >= t.ks[i]) throw std::invalid_argument("CriticalType: ks not increasing");
  }
  for (int d : t.ds) {
    if (d <= 0) throw std::invalid_argument("CriticalType: multiplicities must be positive");
  }
  return t;
}

}  // namespace momentvar::algebra
