#pragma once

#include "skeintrace/report.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace skeintrace {

// Built-in check suites on the shipped complexes.  Each returns a Report;
// a library error inside a suite becomes a single failing record.

struct Figure8Run {
  // rendered at (Ct, Cb) = (q^-1/2, 1)
  std::vector<std::pair<std::string, std::string>> per_state;
  std::string total, golden;
  Report report;
};

// state sum, per-state values, golden comparison and the gl1 detour
Figure8Run run_figure8(int jobs = 1);

Report figure8_compat_suite();
Report triangle_square_suite();
Report sf_square_suite();
Report sqgm_suite();
Report cone_suite();
Report flip_naturality_suite();
Report detour_suite();

struct NamedSuite {
  std::string name;
  std::function<Report()> run;
};

std::vector<NamedSuite> builtin_suites();

// Runs up to `jobs` suites at a time; results keep the input order.
std::vector<Report> run_suites(const std::vector<NamedSuite> &suites, int jobs);

// a record holding a boolean fact
CheckRecord truth(const std::string &name, bool ok);

} // namespace skeintrace
