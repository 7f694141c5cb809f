#pragma once

#include <braidforge/entanglement.hpp>

namespace braidforge::app {

// Three-factor ILO L = A x B x C with a1 = a2 = b1 = b2 = 1. L maps
// |000> + |111> onto the first GHZ-table output, so L^{-1} reduces it.
// Outputs 2-4 are local Clifford images U|out_1> of the first; their
// chain undoes U first.
IloChain t2_chain(int row = 1);
// companion chain for the first GHZ output of the pair-generator family
IloChain t5_chain();

}  // namespace braidforge::app
