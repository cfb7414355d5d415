#include <cstdio>
#include <ostream>

#include "spillresp/milp.hpp"

namespace spillresp {

namespace {

std::string field(const std::string& s, int width) {
  std::string out = s;
  if (static_cast<int>(out.size()) < width) out.append(width - out.size(), ' ');
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string row_name(int idx) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "R%06d", idx + 1);
  return buf;
}

}  // namespace

void write_mps(const MilpProblem& p, std::ostream& os, const std::string& name) {
  os << "* Two-stage spill response siting model\n";
  os << "* OBJSENSE: MAXIMIZE (objective coefficients are written for maximization;\n";
  os << "* negate them for minimizing solvers)\n";
  os << field("NAME", 14) << name << "\n";

  os << "ROWS\n";
  os << " " << field("N", 3) << "OBJ\n";
  for (std::size_t r = 0; r < p.rows.size(); ++r) {
    const char* sense = p.rows[r].sense == RowSense::LE   ? "L"
                        : p.rows[r].sense == RowSense::GE ? "G"
                                                          : "E";
    os << " " << field(sense, 3) << row_name(static_cast<int>(r)) << "\n";
  }

  // Column-wise entries; objective first, then constraint coefficients.
  std::vector<std::vector<std::pair<int, double>>> by_col(p.columns.size());
  for (std::size_t r = 0; r < p.rows.size(); ++r)
    for (auto [c, v] : p.rows[r].coeffs)
      if (v != 0.0) by_col[c].emplace_back(static_cast<int>(r), v);

  os << "COLUMNS\n";
  const auto write_col = [&](std::size_t c) {
    const auto& col = p.columns[c];
    const std::string cname = col.key.name();
    if (col.obj != 0.0)
      os << "    " << field(cname, 14) << field("OBJ", 14) << num(col.obj) << "\n";
    for (auto [r, v] : by_col[c])
      os << "    " << field(cname, 14) << field(row_name(r), 14) << num(v) << "\n";
  };
  bool marker_open = false;
  int marker_id = 0;
  for (std::size_t c = 0; c < p.columns.size(); ++c) {
    if (p.columns[c].is_integer && !marker_open) {
      os << "    " << field("M" + std::to_string(++marker_id), 14) << field("'MARKER'", 25)
         << "'INTORG'\n";
      marker_open = true;
    } else if (!p.columns[c].is_integer && marker_open) {
      os << "    " << field("M" + std::to_string(++marker_id), 14) << field("'MARKER'", 25)
         << "'INTEND'\n";
      marker_open = false;
    }
    write_col(c);
  }
  if (marker_open)
    os << "    " << field("M" + std::to_string(++marker_id), 14) << field("'MARKER'", 25)
       << "'INTEND'\n";

  os << "RHS\n";
  for (std::size_t r = 0; r < p.rows.size(); ++r)
    if (p.rows[r].rhs != 0.0)
      os << "    " << field("RHS", 14) << field(row_name(static_cast<int>(r)), 14)
         << num(p.rows[r].rhs) << "\n";

  os << "BOUNDS\n";
  for (const auto& col : p.columns) {
    const std::string cname = col.key.name();
    if (col.is_integer && col.lb == 0.0 && col.ub == 1.0) {
      os << " " << field("BV", 3) << field("BND", 10) << cname << "\n";
      continue;
    }
    if (col.lb != 0.0)
      os << " " << field("LO", 3) << field("BND", 10) << field(cname, 14) << num(col.lb) << "\n";
    os << " " << field("UP", 3) << field("BND", 10) << field(cname, 14) << num(col.ub) << "\n";
  }
  os << "ENDATA\n";
}

}  // namespace spillresp
