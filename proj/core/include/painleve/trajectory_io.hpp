#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "painleve/integrator.hpp"

namespace painleve::io {

/// 17 significant digits, which parses back to the identical double.
std::string format_real(double v);

/// Header `x,y,dy,H`.
void write_trajectory_csv(std::ostream& out, std::span<const ode::Sample> rows);
/// Header `n,p,h`, n counting from 1 in the order the poles were met.
void write_poles_csv(std::ostream& out, std::span<const ode::PoleFit> poles);

/// Throws SchemaError on a wrong header or malformed row.
std::vector<ode::Sample> read_trajectory_csv(std::istream& in);
std::vector<ode::PoleData> read_poles_csv(std::istream& in);

/// Splits one CSV line on commas (no quoting; none of our files need it).
std::vector<std::string> split_csv_line(const std::string& line);
double parse_real(const std::string& field);

}  // namespace painleve::io
