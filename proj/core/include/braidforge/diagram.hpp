#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "braidforge/report.hpp"

namespace braidforge {

class UnionFind {
 public:
  explicit UnionFind(int n);

  int find(int v);
  void unite(int a, int b);
  int size() const { return static_cast<int>(parent_.size()); }

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
};

// Nodes are numbered 0..2k-1: bottom node i (1-based) is i-1, top node i is
// k+i-1, which gives the order B1 < ... < Bk < T1 < ... < Tk.
class SetPartitionDiagram {
 public:
  using Block = std::vector<int>;

  SetPartitionDiagram(int k, std::vector<Block> blocks);

  static SetPartitionDiagram identity(int k);
  static int bottom(int i, int /*k*/) { return i - 1; }
  static int top(int i, int k) { return k + i - 1; }

  int k() const { return k_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  // block index of every node
  std::vector<int> block_index() const;

  std::string label(int node) const;
  std::string str() const;
  std::string render() const;

  bool operator==(const SetPartitionDiagram& o) const {
    return k_ == o.k_ && blocks_ == o.blocks_;
  }
  bool operator!=(const SetPartitionDiagram& o) const { return !(*this == o); }

 private:
  int k_;
  std::vector<Block> blocks_;
};

SetPartitionDiagram canonicalize(const SetPartitionDiagram& d);

// upper placed above lower; corresponds to the operator product upper*lower.
SetPartitionDiagram compose(const SetPartitionDiagram& upper,
                            const SetPartitionDiagram& lower);

struct GeneratorToken {
  enum class Kind { P, PPair, S, E };
  Kind kind;
  int i;
  int j;  // PPair only

  static GeneratorToken p(int i) { return {Kind::P, i, 0}; }
  static GeneratorToken ppair(int i, int j) { return {Kind::PPair, i, j}; }
  static GeneratorToken s(int i) { return {Kind::S, i, 0}; }
  static GeneratorToken e(int i) { return {Kind::E, i, 0}; }

  std::string str() const;
  bool operator==(const GeneratorToken&) const = default;
};

using TokenProduct = std::vector<GeneratorToken>;

struct GeneratorWord {
  struct Term {
    std::complex<double> coeff;
    TokenProduct factors;
  };
  std::vector<Term> terms;

  GeneratorWord() = default;
  static GeneratorWord identity();
  static GeneratorWord product(TokenProduct factors,
                               std::complex<double> coeff = 1.0);

  GeneratorWord& add(std::complex<double> coeff, TokenProduct factors);
  GeneratorWord operator+(const GeneratorWord& o) const;
  // concatenation of factor lists, distributing over terms
  GeneratorWord operator*(const GeneratorWord& o) const;

  std::string str() const;
};

SetPartitionDiagram generator_diagram(const GeneratorToken& token, int k);
SetPartitionDiagram p_pair_general(int i, int j, int k);
// Product of tokens, left to right as an operator product.
SetPartitionDiagram evaluate_diagram(const TokenProduct& factors, int k);

// Relation catalog shared by the diagram and matrix checks.
enum class Scale { One, PairNorm, PointNorm };

struct RelationInstance {
  std::string id;
  std::string label;
  TokenProduct lhs;
  TokenProduct rhs;
  Scale scale = Scale::One;
};

struct RelationFamily {
  std::string id;
  std::string description;
  std::vector<RelationInstance> instances;
};

// every generator relation instantiable on k sites; general pairs p_{i,j}
// with j > i+1 appear only when include_general_pairs is set
std::vector<RelationFamily> relation_catalog(int k, bool include_general_pairs = true);

using ComposeFn = std::function<SetPartitionDiagram(const SetPartitionDiagram&,
                                                    const SetPartitionDiagram&)>;

VerificationReport verify_diagram_relations(int k, const ComposeFn& compose_fn = {});

}  // namespace braidforge
