#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace braidforge {

enum class Expect { Hold, Fail, Any };

struct CheckRecord {
  std::string id;
  std::string description;
  Expect expect = Expect::Hold;
  int instances = 0;
  int failures = 0;
  double max_residual = 0.0;
  std::vector<std::string> failed;  // instance labels, capped

  void record(bool ok, double residual, const std::string& label);
  bool ok() const;
};

struct VerificationReport {
  std::string suite;
  std::vector<CheckRecord> checks;

  CheckRecord& check(const std::string& id, const std::string& description,
                     Expect expect = Expect::Hold);
  const CheckRecord* find(const std::string& id) const;
  bool pass() const;
  int total_instances() const;
  nlohmann::json to_json() const;
};

const char* to_string(Expect e);

}  // namespace braidforge
