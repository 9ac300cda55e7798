#pragma once

#include "skeintrace/qtorus.hpp"

#include <string>
#include <vector>

#include "json.hpp"

namespace skeintrace {

struct CheckRecord {
  std::string name;
  std::string lhs, rhs;
  bool equal = false;
  std::string first_diff; // empty when equal

  nlohmann::json to_json() const;
};

CheckRecord compare(const std::string &name, const TorusElem &lhs, const TorusElem &rhs);
CheckRecord compare(const std::string &name, const Scalar &lhs, const Scalar &rhs);

struct Report {
  std::string name;
  std::vector<CheckRecord> checks;

  bool ok() const;
  void add(CheckRecord r) { checks.push_back(std::move(r)); }
  nlohmann::json to_json() const;
};

} // namespace skeintrace
