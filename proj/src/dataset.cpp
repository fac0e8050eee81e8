#include "qtherm/dataset.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qtherm {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const DatasetFile& d) {
  std::ostringstream os;
  os << "# tool_version = " << d.tool_version << "\n";
  for (const auto& [k, v] : d.params) os << "# " << k << " = " << v << "\n";
  if (d.columns.empty()) return os.str();
  const std::size_t rows = d.columns.front().values.size();
  for (const auto& c : d.columns)
    if (c.values.size() != rows)
      throw std::domain_error("to_csv: ragged columns");
  for (std::size_t j = 0; j < d.columns.size(); ++j)
    os << (j ? "," : "") << d.columns[j].name;
  os << "\n";
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < d.columns.size(); ++j)
      os << (j ? "," : "") << format_double(d.columns[j].values[i]);
    os << "\n";
  }
  return os.str();
}

DatasetFile parse_csv(const std::string& text) {
  DatasetFile d;
  std::istringstream is(text);
  std::string line;
  bool header_done = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find(" = ");
      if (eq == std::string::npos)
        throw std::runtime_error("parse_csv: malformed metadata line");
      const std::string key = line.substr(2, eq - 2);
      const std::string val = line.substr(eq + 3);
      if (key == "tool_version") d.tool_version = val;
      else d.params[key] = val;
      continue;
    }
    std::istringstream ls(line);
    std::string cell;
    if (!header_done) {
      while (std::getline(ls, cell, ',')) d.columns.push_back({cell, {}});
      header_done = true;
    } else {
      std::size_t j = 0;
      while (std::getline(ls, cell, ',')) {
        if (j >= d.columns.size())
          throw std::runtime_error("parse_csv: row wider than header");
        d.columns[j++].values.push_back(std::strtod(cell.c_str(), nullptr));
      }
      if (j != d.columns.size())
        throw std::runtime_error("parse_csv: short row");
    }
  }
  return d;
}

std::string to_json(const DatasetFile& d) {
  nlohmann::ordered_json j;
  j["tool_version"] = d.tool_version;
  j["params"] = d.params;
  j["columns"] = nlohmann::ordered_json::array();
  for (const auto& c : d.columns)
    j["columns"].push_back({{"name", c.name}, {"values", c.values}});
  return j.dump(2) + "\n";
}

DatasetFile parse_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  DatasetFile d;
  d.tool_version = j.at("tool_version").get<std::string>();
  for (const auto& [k, v] : j.at("params").items())
    d.params[k] = v.get<std::string>();
  for (const auto& c : j.at("columns"))
    d.columns.push_back({c.at("name").get<std::string>(),
                         c.at("values").get<std::vector<double>>()});
  return d;
}

std::string serialize(const DatasetFile& d, FileFormat f) {
  return f == FileFormat::csv ? to_csv(d) : to_json(d);
}

double parse_real_token(const std::string& token) {
  std::string s;
  for (char ch : token)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw std::domain_error("empty numeric token");
  if (s == "pi") return std::numbers::pi;
  if (s == "-pi") return -std::numbers::pi;
  if (s.rfind("pi/", 0) == 0) {
    const double den = parse_real_token(s.substr(3));
    return std::numbers::pi / den;
  }
  if (s.size() > 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    std::string head = s.substr(0, s.size() - 2);
    if (!head.empty() && head.back() == '*') head.pop_back();
    return parse_real_token(head) * std::numbers::pi;
  }
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw std::domain_error("cannot parse numeric token: " + token);
  return v;
}

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw std::domain_error("linspace: n < 1");
  if (n == 1) return {lo};
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

std::vector<double> logspace(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > 0.0))
    throw std::domain_error("logspace: endpoints must be positive");
  auto g = linspace(std::log(lo), std::log(hi), n);
  for (double& x : g) x = std::exp(x);
  return g;
}

std::vector<double> parse_grid_spec(const std::string& spec) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : spec) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3 && parts.size() != 4)
    throw std::domain_error("grid spec must be lo:hi:count[:log]: " + spec);
  const double lo = parse_real_token(parts[0]);
  const double hi = parse_real_token(parts[1]);
  const int n = std::atoi(parts[2].c_str());
  if (n < 1) throw std::domain_error("grid spec: count must be >= 1");
  if (parts.size() == 4) {
    if (parts[3] != "log")
      throw std::domain_error("grid spec: unknown scale " + parts[3]);
    return logspace(lo, hi, n);
  }
  return linspace(lo, hi, n);
}

}  // namespace qtherm
