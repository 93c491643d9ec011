#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace qdg {

struct Check {
  std::string suite;
  std::string id;  // check family, e.g. "star", "associativity"
  std::string site;
  std::string parameter;
  double residual = 0;
  double tolerance = 0;
  bool pass = false;
  std::string note;
};

struct Report {
  std::vector<Check> checks;
  std::map<std::string, nlohmann::json> info;

  // Pass is residual < tolerance unless `expect_fail`, which inverts it (negative controls).
  Check& add(std::string suite, std::string id, std::string site, std::string parameter, double residual,
             double tolerance, bool expect_fail = false);
  Check& flag(std::string suite, std::string id, std::string site, bool pass, std::string note);
  void merge(const Report& other);
  bool passed() const;
  double max_residual(const std::string& id) const;
  std::map<std::string, double> max_by_family() const;
  const Check* find(const std::string& id) const;
  nlohmann::json to_json() const;
};

}  // namespace qdg
