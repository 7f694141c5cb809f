#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace braidforge::app {

struct IloTrial {
  std::string family;
  std::string original;    // class of R|P>
  std::string conjugated;  // class of (A R A^-1)(A|P>)
  std::string pulled_back; // class of A^-1 (A R A^-1) A|P>
  bool match = false;
};

// Random entangling registry gates R, random ILO A and random product P.
// ILO-equivalent gates must produce outputs of the same SLOCC class.
std::vector<IloTrial> ilo_class_trials(int trials, std::uint64_t seed);
nlohmann::json to_json(const IloTrial& t);

}  // namespace braidforge::app
