#include "painleve/trajectory_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>

#include "painleve/errors.hpp"

namespace painleve::io {

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& out, std::span<const ode::Sample> rows) {
  out << "x,y,dy,H\n";
  for (const auto& r : rows) {
    out << format_real(r.state.x) << ',' << format_real(r.state.y) << ',' << format_real(r.state.dy) << ','
        << format_real(r.H) << '\n';
  }
}

void write_poles_csv(std::ostream& out, std::span<const ode::PoleFit> poles) {
  out << "n,p,h\n";
  int n = 1;
  for (const auto& pf : poles) {
    out << n++ << ',' << format_real(pf.pole.p) << ',' << format_real(pf.pole.h) << '\n';
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_real(const std::string& field) {
  if (field.empty()) throw Error(ErrorKind::SchemaError, "empty numeric field");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size() || errno == ERANGE) {
    throw Error(ErrorKind::SchemaError, "not a number: '" + field + "'");
  }
  return v;
}

namespace {

void expect_header(std::istream& in, const std::vector<std::string>& expected) {
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line) != expected) {
    throw Error(ErrorKind::SchemaError, "unexpected CSV header: '" + line + "'");
  }
}

}  // namespace

std::vector<ode::Sample> read_trajectory_csv(std::istream& in) {
  expect_header(in, {"x", "y", "dy", "H"});
  std::vector<ode::Sample> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line);
    if (f.size() != 4) throw Error(ErrorKind::SchemaError, "expected 4 fields: '" + line + "'");
    rows.push_back({{parse_real(f[0]), parse_real(f[1]), parse_real(f[2])}, parse_real(f[3])});
  }
  return rows;
}

std::vector<ode::PoleData> read_poles_csv(std::istream& in) {
  expect_header(in, {"n", "p", "h"});
  std::vector<ode::PoleData> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line);
    if (f.size() != 3) throw Error(ErrorKind::SchemaError, "expected 3 fields: '" + line + "'");
    rows.push_back({parse_real(f[1]), parse_real(f[2])});
  }
  return rows;
}

}  // namespace painleve::io
