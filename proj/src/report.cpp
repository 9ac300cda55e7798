#include "skeintrace/report.hpp"

namespace skeintrace {

nlohmann::json CheckRecord::to_json() const {
  return {{"name", name}, {"lhs", lhs}, {"rhs", rhs}, {"equal", equal},
          {"first_diff", first_diff}};
}

CheckRecord compare(const std::string &name, const TorusElem &lhs, const TorusElem &rhs) {
  CheckRecord r{name, lhs.str(), rhs.str(), false, ""};
  if (lhs.torus() && rhs.torus() && lhs.torus() != rhs.torus() &&
      !lhs.torus()->same_as(*rhs.torus())) {
    r.first_diff = "different tori";
    return r;
  }
  auto d = lhs - rhs;
  r.equal = d.is_zero();
  if (!r.equal) {
    const auto &[g, s] = *d.terms().begin();
    r.first_diff = "(" + s.str() + ")*" + monomial_str(*d.torus(), g);
  }
  return r;
}

CheckRecord compare(const std::string &name, const Scalar &lhs, const Scalar &rhs) {
  CheckRecord r{name, lhs.str(), rhs.str(), false, ""};
  auto d = lhs - rhs;
  r.equal = d == Scalar(0);
  if (!r.equal)
    r.first_diff = d.str();
  return r;
}

bool Report::ok() const {
  for (const auto &c : checks)
    if (!c.equal)
      return false;
  return true;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j = {{"name", name}, {"ok", ok()}, {"checks", nlohmann::json::array()}};
  for (const auto &c : checks)
    j["checks"].push_back(c.to_json());
  return j;
}

} // namespace skeintrace
