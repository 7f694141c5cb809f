#include "braidforge/report.hpp"

#include <algorithm>

namespace braidforge {

namespace {
constexpr std::size_t kMaxFailedLabels = 16;
}

const char* to_string(Expect e) {
  switch (e) {
    case Expect::Hold: return "hold";
    case Expect::Fail: return "fail";
    case Expect::Any: return "any";
  }
  return "?";
}

void CheckRecord::record(bool ok, double residual, const std::string& label) {
  ++instances;
  max_residual = std::max(max_residual, residual);
  if (!ok) {
    ++failures;
    if (failed.size() < kMaxFailedLabels) failed.push_back(label);
  }
}

bool CheckRecord::ok() const {
  switch (expect) {
    case Expect::Hold: return failures == 0;
    case Expect::Fail: return failures > 0;
    case Expect::Any: return true;
  }
  return false;
}

CheckRecord& VerificationReport::check(const std::string& id, const std::string& description,
                                       Expect expect) {
  CheckRecord rec;
  rec.id = id;
  rec.description = description;
  rec.expect = expect;
  checks.push_back(std::move(rec));
  return checks.back();
}

const CheckRecord* VerificationReport::find(const std::string& id) const {
  for (const auto& c : checks)
    if (c.id == id) return &c;
  return nullptr;
}

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.ok(); });
}

int VerificationReport::total_instances() const {
  int n = 0;
  for (const auto& c : checks) n += c.instances;
  return n;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["pass"] = pass();
  auto& arr = j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    arr.push_back({{"id", c.id},
                   {"description", c.description},
                   {"expect", to_string(c.expect)},
                   {"instances", c.instances},
                   {"failures", c.failures},
                   {"max_residual", c.max_residual},
                   {"failed", c.failed},
                   {"ok", c.ok()}});
  }
  return j;
}

}  // namespace braidforge
