#pragma once

#include "braidforge/diagram.hpp"
#include "braidforge/report.hpp"
#include "braidforge/tensor.hpp"

namespace braidforge {

enum class RepKind { QubitZ, QubitX, TemperleyLieb };

struct RepContext {
  RepKind kind = RepKind::QubitZ;
  int k = 2;
  double Q = 1.0;
  int d = 2;

  double delta() const { return Q + 1.0 / Q; }
  // qubit sites the represented operators act on
  int sites() const { return kind == RepKind::TemperleyLieb ? 2 * k : k; }
  void validate() const;
};

const char* to_string(RepKind kind);

DenseOperator swap_op(int i, int j, int n, int d = 2);
// Temperley-Lieb generator on sites (i, i+1) of n
DenseOperator tl_generator(int i, int n, double Q);

DenseOperator qubit_token(const GeneratorToken& t, const RepContext& ctx);
DenseOperator tl_token(const GeneratorToken& t, const RepContext& ctx);

DenseOperator qubit_rep(const GeneratorWord& word, const RepContext& ctx);
DenseOperator tl_rep(const GeneratorWord& word, const RepContext& ctx);
// dispatches on ctx.kind
DenseOperator represent(const GeneratorWord& word, const RepContext& ctx);
DenseOperator represent(const TokenProduct& factors, const RepContext& ctx);

VerificationReport verify_qubit_relations(int k, RepKind kind = RepKind::QubitZ,
                                          double tol = 1e-12);
VerificationReport verify_tl_relations(int k, double Q, double tol = 1e-12);

}  // namespace braidforge
