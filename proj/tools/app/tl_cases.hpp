#pragma once

#include <map>
#include <string>
#include <vector>

#include <braidforge/entanglement.hpp>
#include <braidforge/families.hpp>

namespace braidforge::app {

struct TlCase {
  std::string name;  // "I" .. "VII"
  int order;         // claimed braid order
  std::vector<std::pair<cplx, int>> pattern;  // eigenvalue multiplicities
};

const std::vector<TlCase>& tl_cases();
ParameterPoint tl_case_point(const std::string& name, double Q);

// input bits -> {output bits -> coefficient}, as printed for Cases I and IV
using Expansion = std::map<std::string, std::map<std::string, double>>;
Expansion tl_expansion(const std::string& name, double Q);

// chains taking R|0101> to the two-term Gabcd form
IloChain case_I_chain(double Q);
IloChain case_IV_chain(double Q);
// diagonal exponent as displayed for Case I, kept to document the mismatch
IloChain case_I_chain_as_printed(double Q);

// exchange of the two site pairs: s_{1,3} s_{2,4}
DenseOperator pair_exchange();
// s_{1,3} s_{2,3}, the displayed conjugator
DenseOperator printed_conjugator();

}  // namespace braidforge::app
