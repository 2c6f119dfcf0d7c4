#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ucflex/errors.h"
#include "ucflex/solver_bridge.h"

namespace ucflex {

namespace {

// Shortest representation that parses back to the same double, with a
// decimal point so integral values read as reals.
std::string Num(double v) {
  if (v == 0.0) return "0.0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, end);
  if (s.find_first_of(".eE") == std::string::npos &&
      s.find("inf") == std::string::npos) {
    s += ".0";
  }
  return s;
}

std::string Pad(const std::string& s, size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

// Field layout of fixed MPS: columns 2-3, 5-12, 15-22, 25-36.
std::string Line(const std::string& f1, const std::string& f2,
                 const std::string& f3 = "", const std::string& f4 = "") {
  std::string out = " " + Pad(f1, 2) + " " + f2;
  if (!f3.empty()) out = Pad(out, 12) + "  " + f3;
  if (!f4.empty()) out = Pad(out, 22) + "  " + f4;
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out + "\n";
}

const char* RowType(Sense s) {
  switch (s) {
    case Sense::kLessEqual:
      return "L";
    case Sense::kGreaterEqual:
      return "G";
    case Sense::kEqual:
      return "E";
  }
  return "?";
}

}  // namespace

std::string StrictColumnName(int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "C%07d", index + 1);
  return buf;
}

std::string StrictRowName(int index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "R%07d", index + 1);
  return buf;
}

std::string WriteMpsString(const MilpModel& model, bool strict_fixed) {
  const auto& vars = model.variables();
  const auto& rows = model.rows();
  auto col_name = [&](int j) {
    return strict_fixed ? StrictColumnName(j) : vars[j].name;
  };
  auto row_name = [&](int i) {
    return strict_fixed ? StrictRowName(i) : rows[i].name;
  };

  std::string problem = model.metadata().variant;
  if (!model.metadata().instance_id.empty()) {
    problem += "_" + model.metadata().instance_id;
  }
  for (char& ch : problem) {
    if (ch == ' ' || ch == '\t') ch = '_';
  }
  if (problem.empty()) problem = "UCFLEX";
  if (strict_fixed) problem = problem.substr(0, 8);

  // Column-major view of the constraint matrix.
  std::vector<std::vector<std::pair<int, double>>> cols(vars.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    for (const Entry& e : rows[i].terms) {
      cols[e.var].emplace_back(static_cast<int>(i), e.coef);
    }
  }

  std::ostringstream os;
  os << "NAME          " << problem << "\n";
  os << "ROWS\n";
  os << Line("N", "COST");
  for (size_t i = 0; i < rows.size(); ++i) {
    os << Line(RowType(rows[i].sense), row_name(static_cast<int>(i)));
  }

  os << "COLUMNS\n";
  bool in_int = false;
  int markers = 0;
  auto marker = [&](const char* kind) {
    char name[16];
    std::snprintf(name, sizeof(name), "M%07d", ++markers);
    os << "    " << Pad(name, 8) << "  'MARKER'                 '" << kind
       << "'\n";
  };
  for (size_t j = 0; j < vars.size(); ++j) {
    const bool integral = vars[j].is_integral();
    if (integral != in_int) {
      marker(integral ? "INTORG" : "INTEND");
      in_int = integral;
    }
    const std::string name = col_name(static_cast<int>(j));
    bool wrote = false;
    if (model.objective()[j] != 0.0) {
      os << Line("", name, "COST", Num(model.objective()[j]));
      wrote = true;
    }
    for (const auto& [row, coef] : cols[j]) {
      os << Line("", name, row_name(row), Num(coef));
      wrote = true;
    }
    if (!wrote) os << Line("", name, "COST", Num(0.0));
  }
  if (in_int) marker("INTEND");

  os << "RHS\n";
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].rhs != 0.0) {
      os << Line("", "RHS", row_name(static_cast<int>(i)), Num(rows[i].rhs));
    }
  }

  os << "BOUNDS\n";
  for (size_t j = 0; j < vars.size(); ++j) {
    const Variable& v = vars[j];
    const std::string name = col_name(static_cast<int>(j));
    if (v.kind == VarKind::kBinary && v.lower == 0.0 && v.upper == 1.0) {
      os << Line("BV", "BND", name);
      continue;
    }
    if (v.lower == v.upper) {
      os << Line("FX", "BND", name, Num(v.lower));
      continue;
    }
    if (v.is_integral()) {
      if (std::isfinite(v.lower)) {
        os << Line("LI", "BND", name, Num(v.lower));
      } else {
        os << Line("MI", "BND", name);
      }
      if (std::isfinite(v.upper)) {
        os << Line("UI", "BND", name, Num(v.upper));
      } else {
        os << Line("PL", "BND", name);
      }
      continue;
    }
    if (!std::isfinite(v.lower) && !std::isfinite(v.upper)) {
      os << Line("FR", "BND", name);
      continue;
    }
    if (!std::isfinite(v.lower)) {
      os << Line("MI", "BND", name);
    } else if (v.lower != 0.0 || v.upper < 0.0) {
      os << Line("LO", "BND", name, Num(v.lower));
    }
    if (std::isfinite(v.upper)) os << Line("UP", "BND", name, Num(v.upper));
  }
  os << "ENDATA\n";
  return os.str();
}

void WriteMps(const MilpModel& model, const std::filesystem::path& path,
              bool strict_fixed) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write MPS file " + path.string());
  out << WriteMpsString(model, strict_fixed);
  if (!out) throw Error("failed writing MPS file " + path.string());
}

}  // namespace ucflex
