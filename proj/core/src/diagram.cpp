#include "braidforge/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "braidforge/errors.hpp"

namespace braidforge {

UnionFind::UnionFind(int n) : parent_(n), rank_(n, 0) {
  std::iota(parent_.begin(), parent_.end(), 0);
}

int UnionFind::find(int v) {
  while (parent_[v] != v) {
    parent_[v] = parent_[parent_[v]];
    v = parent_[v];
  }
  return v;
}

void UnionFind::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
}

// ---------------------------------------------------------------------------

SetPartitionDiagram::SetPartitionDiagram(int k, std::vector<Block> blocks)
    : k_(k), blocks_(std::move(blocks)) {
  if (k_ < 1) throw DiagramError("diagram needs k >= 1");
  std::vector<int> seen(2 * k_, 0);
  for (auto& b : blocks_) {
    if (b.empty()) throw DiagramError("empty block");
    for (int v : b) {
      if (v < 0 || v >= 2 * k_)
        throw DiagramError("node " + std::to_string(v) + " out of range");
      if (seen[v]++) throw DiagramError("node " + label(v) + " appears twice");
    }
    std::sort(b.begin(), b.end());
  }
  for (int v = 0; v < 2 * k_; ++v)
    if (!seen[v]) throw DiagramError("node " + label(v) + " missing");
  std::sort(blocks_.begin(), blocks_.end(),
            [](const Block& a, const Block& b) { return a.front() < b.front(); });
}

SetPartitionDiagram SetPartitionDiagram::identity(int k) {
  std::vector<Block> blocks;
  for (int i = 1; i <= k; ++i) blocks.push_back({bottom(i, k), top(i, k)});
  return {k, std::move(blocks)};
}

std::vector<int> SetPartitionDiagram::block_index() const {
  std::vector<int> idx(2 * k_);
  for (std::size_t b = 0; b < blocks_.size(); ++b)
    for (int v : blocks_[b]) idx[v] = static_cast<int>(b);
  return idx;
}

std::string SetPartitionDiagram::label(int node) const {
  if (node < k_) return std::to_string(node + 1);
  return std::to_string(node - k_ + 1) + "'";
}

std::string SetPartitionDiagram::str() const {
  std::string out = "{";
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b) out += ",";
    out += "{";
    for (std::size_t t = 0; t < blocks_[b].size(); ++t) {
      if (t) out += ",";
      out += label(blocks_[b][t]);
    }
    out += "}";
  }
  return out + "}";
}

std::string SetPartitionDiagram::render() const {
  auto idx = block_index();
  auto tag = [](int b) {
    std::string s;
    do {
      s.insert(s.begin(), static_cast<char>('a' + b % 26));
      b = b / 26 - 1;
    } while (b >= 0);
    return s;
  };
  std::ostringstream os;
  auto row = [&](const char* name, bool upper) {
    os << name;
    for (int i = 1; i <= k_; ++i) {
      int v = upper ? top(i, k_) : bottom(i, k_);
      os << ' ' << label(v) << ':' << tag(idx[v]);
    }
    os << '\n';
  };
  row("top   ", true);
  row("bottom", false);
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    os << "  " << tag(static_cast<int>(b)) << " = {";
    for (std::size_t t = 0; t < blocks_[b].size(); ++t)
      os << (t ? "," : "") << label(blocks_[b][t]);
    os << "}\n";
  }
  return os.str();
}

SetPartitionDiagram canonicalize(const SetPartitionDiagram& d) {
  return SetPartitionDiagram(d.k(), d.blocks());
}

SetPartitionDiagram compose(const SetPartitionDiagram& upper,
                            const SetPartitionDiagram& lower) {
  const int k = upper.k();
  if (lower.k() != k)
    throw DimensionError("compose: k mismatch " + std::to_string(k) + " vs " +
                         std::to_string(lower.k()));
  // 0..k-1 lower bottom, k..2k-1 middle, 2k..3k-1 upper top
  UnionFind uf(3 * k);
  for (const auto& b : lower.blocks())
    for (std::size_t t = 1; t < b.size(); ++t) uf.unite(b[0], b[t]);
  for (const auto& b : upper.blocks())
    for (std::size_t t = 1; t < b.size(); ++t) uf.unite(b[0] + k, b[t] + k);

  std::map<int, SetPartitionDiagram::Block> groups;
  for (int v = 0; v < k; ++v) groups[uf.find(v)].push_back(v);
  for (int v = 2 * k; v < 3 * k; ++v) groups[uf.find(v)].push_back(v - k);
  // components living only in the middle row are closed loops of weight 1
  std::vector<SetPartitionDiagram::Block> blocks;
  for (auto& [root, b] : groups) blocks.push_back(std::move(b));
  return {k, std::move(blocks)};
}

// ---------------------------------------------------------------------------

std::string GeneratorToken::str() const {
  switch (kind) {
    case Kind::P: return "p" + std::to_string(i);
    case Kind::PPair: return "p" + std::to_string(i) + "," + std::to_string(j);
    case Kind::S: return "s" + std::to_string(i);
    case Kind::E: return "e" + std::to_string(i);
  }
  return "?";
}

GeneratorWord GeneratorWord::identity() { return product({}); }

GeneratorWord GeneratorWord::product(TokenProduct factors, std::complex<double> coeff) {
  GeneratorWord w;
  w.terms.push_back({coeff, std::move(factors)});
  return w;
}

GeneratorWord& GeneratorWord::add(std::complex<double> coeff, TokenProduct factors) {
  terms.push_back({coeff, std::move(factors)});
  return *this;
}

GeneratorWord GeneratorWord::operator+(const GeneratorWord& o) const {
  GeneratorWord w = *this;
  w.terms.insert(w.terms.end(), o.terms.begin(), o.terms.end());
  return w;
}

GeneratorWord GeneratorWord::operator*(const GeneratorWord& o) const {
  GeneratorWord w;
  for (const auto& a : terms)
    for (const auto& b : o.terms) {
      TokenProduct f = a.factors;
      f.insert(f.end(), b.factors.begin(), b.factors.end());
      w.terms.push_back({a.coeff * b.coeff, std::move(f)});
    }
  return w;
}

std::string GeneratorWord::str() const {
  std::ostringstream os;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (t) os << " + ";
    os << '(' << terms[t].coeff.real() << ',' << terms[t].coeff.imag() << ')';
    if (terms[t].factors.empty()) os << "*1";
    for (const auto& f : terms[t].factors) os << '*' << f.str();
  }
  return os.str();
}

// ---------------------------------------------------------------------------

namespace {

using Block = SetPartitionDiagram::Block;

void check_site(int i, int k, const char* what) {
  if (i < 1 || i > k)
    throw DiagramError(std::string(what) + " index " + std::to_string(i) +
                       " outside 1.." + std::to_string(k));
}

SetPartitionDiagram evaluate_with(const TokenProduct& factors, int k,
                                  const ComposeFn& fn) {
  SetPartitionDiagram acc = SetPartitionDiagram::identity(k);
  for (auto it = factors.rbegin(); it != factors.rend(); ++it)
    acc = fn ? fn(generator_diagram(*it, k), acc) : compose(generator_diagram(*it, k), acc);
  return acc;
}

}  // namespace

SetPartitionDiagram generator_diagram(const GeneratorToken& token, int k) {
  using K = GeneratorToken::Kind;
  const auto B = [k](int i) { return SetPartitionDiagram::bottom(i, k); };
  const auto T = [k](int i) { return SetPartitionDiagram::top(i, k); };
  std::vector<Block> blocks;
  switch (token.kind) {
    case K::P:
      check_site(token.i, k, "p");
      for (int s = 1; s <= k; ++s) {
        if (s == token.i) {
          blocks.push_back({B(s)});
          blocks.push_back({T(s)});
        } else {
          blocks.push_back({B(s), T(s)});
        }
      }
      break;
    case K::PPair:
      check_site(token.i, k, "p_pair");
      check_site(token.j, k, "p_pair");
      if (token.j <= token.i) throw DiagramError("p_pair needs i < j");
      if (token.j != token.i + 1) return p_pair_general(token.i, token.j, k);
      for (int s = 1; s <= k; ++s) {
        if (s == token.i)
          blocks.push_back({B(s), B(s + 1), T(s), T(s + 1)});
        else if (s != token.i + 1)
          blocks.push_back({B(s), T(s)});
      }
      break;
    case K::S:
      check_site(token.i, k - 1, "s");
      for (int s = 1; s <= k; ++s) {
        if (s == token.i)
          blocks.push_back({B(s), T(s + 1)});
        else if (s == token.i + 1)
          blocks.push_back({B(s), T(s - 1)});
        else
          blocks.push_back({B(s), T(s)});
      }
      break;
    case K::E:
      throw UnsupportedError("e_i has no partition diagram");
  }
  return {k, std::move(blocks)};
}

SetPartitionDiagram p_pair_general(int i, int j, int k) {
  check_site(i, k, "p_pair");
  check_site(j, k, "p_pair");
  if (j <= i) throw DiagramError("p_pair needs i < j");
  TokenProduct word;
  for (int t = j - 1; t > i; --t) word.push_back(GeneratorToken::s(t));
  word.push_back(GeneratorToken::ppair(i, i + 1));
  for (int t = i + 1; t < j; ++t) word.push_back(GeneratorToken::s(t));
  return evaluate_with(word, k, {});
}

SetPartitionDiagram evaluate_diagram(const TokenProduct& factors, int k) {
  return evaluate_with(factors, k, {});
}

// ---------------------------------------------------------------------------

std::vector<RelationFamily> relation_catalog(int k, bool general_pairs) {
  using G = GeneratorToken;
  auto p = G::p;
  auto s = G::s;
  auto pp = [](int i, int j) { return G::ppair(i, j); };
  auto pair_of = [](int i) { return G::ppair(i, i + 1); };
  auto lbl = [](std::initializer_list<int> v) {
    std::string out;
    for (int x : v) out += (out.empty() ? "" : ",") + std::to_string(x);
    return out;
  };

  std::vector<RelationFamily> cat;
  auto family = [&](std::string id, std::string desc) -> RelationFamily& {
    cat.push_back({std::move(id), std::move(desc), {}});
    return cat.back();
  };
  auto inst = [](RelationFamily& f, std::string label, TokenProduct lhs,
                 TokenProduct rhs, Scale sc = Scale::One) {
    f.instances.push_back({f.id, std::move(label), std::move(lhs), std::move(rhs), sc});
  };

  {
    auto& f = family("p-idempotent", "p_i p_i = p_i");
    for (int i = 1; i <= k; ++i) inst(f, lbl({i}), {p(i), p(i)}, {p(i)}, Scale::PointNorm);
  }
  {
    auto& f = family("ppair-idempotent", "p_{i,i+1} p_{i,i+1} = p_{i,i+1}");
    for (int i = 1; i < k; ++i)
      inst(f, lbl({i}), {pair_of(i), pair_of(i)}, {pair_of(i)}, Scale::PairNorm);
  }
  {
    auto& f = family("p-ppair-p", "p_i p_{i+-1/2} p_i = p_i");
    for (int i = 1; i < k; ++i) {
      inst(f, lbl({i, i}), {p(i), pair_of(i), p(i)}, {p(i)});
      inst(f, lbl({i + 1, i}), {p(i + 1), pair_of(i), p(i + 1)}, {p(i + 1)});
    }
  }
  {
    auto& f = family("ppair-p-ppair", "p_{i+-1/2} p_i p_{i+-1/2} = p_{i+-1/2}");
    for (int i = 1; i < k; ++i) {
      inst(f, lbl({i, i}), {pair_of(i), p(i), pair_of(i)}, {pair_of(i)});
      inst(f, lbl({i, i + 1}), {pair_of(i), p(i + 1), pair_of(i)}, {pair_of(i)});
    }
  }
  {
    // half-integer positions: p_i at 2i, p_{i,i+1} at 2i+1
    auto& f = family("planar-commute", "planar generators more than 1/2 apart commute");
    std::vector<std::pair<int, G>> gens;
    for (int i = 1; i <= k; ++i) gens.push_back({2 * i, p(i)});
    for (int i = 1; i < k; ++i) gens.push_back({2 * i + 1, pair_of(i)});
    for (std::size_t a = 0; a < gens.size(); ++a)
      for (std::size_t b = a + 1; b < gens.size(); ++b)
        if (std::abs(gens[a].first - gens[b].first) > 1)
          inst(f, gens[a].second.str() + "|" + gens[b].second.str(),
               {gens[a].second, gens[b].second}, {gens[b].second, gens[a].second});
  }
  {
    auto& f = family("s-involution", "s_i s_i = 1");
    for (int i = 1; i < k; ++i) inst(f, lbl({i}), {s(i), s(i)}, {});
  }
  {
    auto& f = family("s-braid", "s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1}");
    for (int i = 1; i + 1 < k; ++i)
      inst(f, lbl({i}), {s(i), s(i + 1), s(i)}, {s(i + 1), s(i), s(i + 1)});
  }
  {
    auto& f = family("s-commute", "s_i s_j = s_j s_i, |i-j| > 1");
    for (int i = 1; i < k; ++i)
      for (int j = i + 2; j < k; ++j) inst(f, lbl({i, j}), {s(i), s(j)}, {s(j), s(i)});
  }
  {
    auto& f = family("s-absorb-pp", "s_i p_i p_{i+1} = p_i p_{i+1} s_i = p_i p_{i+1}");
    for (int i = 1; i < k; ++i) {
      inst(f, lbl({i}) + "L", {s(i), p(i), p(i + 1)}, {p(i), p(i + 1)});
      inst(f, lbl({i}) + "R", {p(i), p(i + 1), s(i)}, {p(i), p(i + 1)});
    }
  }
  {
    auto& f = family("s-conj-p", "s_i p_i s_i = p_{i+1}");
    for (int i = 1; i < k; ++i) inst(f, lbl({i}), {s(i), p(i), s(i)}, {p(i + 1)});
  }
  {
    auto& f = family("s-commute-p", "s_i p_j = p_j s_i, j != i, i+1");
    for (int i = 1; i < k; ++i)
      for (int j = 1; j <= k; ++j)
        if (j != i && j != i + 1) inst(f, lbl({i, j}), {s(i), p(j)}, {p(j), s(i)});
  }
  {
    auto& f = family("s-absorb-ppair", "s_i p_{i,i+1} = p_{i,i+1} s_i = p_{i,i+1}");
    for (int i = 1; i < k; ++i) {
      inst(f, lbl({i}) + "L", {s(i), pair_of(i)}, {pair_of(i)});
      inst(f, lbl({i}) + "R", {pair_of(i), s(i)}, {pair_of(i)});
    }
  }
  {
    auto& f = family("s-conj-ppair", "s_i s_{i+1} p_{i,i+1} s_{i+1} s_i = p_{i+1,i+2}");
    for (int i = 1; i + 1 < k; ++i)
      inst(f, lbl({i}), {s(i), s(i + 1), pair_of(i), s(i + 1), s(i)}, {pair_of(i + 1)});
  }
  {
    auto& f = family("s-commute-ppair", "s_i p_{j,j+1} = p_{j,j+1} s_i, j != i-1, i+1");
    for (int i = 1; i < k; ++i)
      for (int j = 1; j < k; ++j)
        if (j != i - 1 && j != i + 1) inst(f, lbl({i, j}), {s(i), pair_of(j)}, {pair_of(j), s(i)});
  }
  {
    auto& f = family("ppair-conj-shift", "s_{i+1} p_{i,i+1} s_{i+1} = s_i p_{i+1,i+2} s_i");
    for (int i = 1; i + 1 < k; ++i)
      inst(f, lbl({i}), {s(i + 1), pair_of(i), s(i + 1)}, {s(i), pair_of(i + 1), s(i)});
  }
  if (general_pairs) {
    auto& f1 = family("pij-idempotent", "p_{i,j} p_{i,j} = p_{i,j}");
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j)
        inst(f1, lbl({i, j}), {pp(i, j), pp(i, j)}, {pp(i, j)}, Scale::PairNorm);
    auto& f2 = family("pij-chain", "p_{i,i+j1} p_{i,i+j2} = p_{i,i+j1} p_{i+j1,i+j2}, j1 < j2");
    for (int i = 1; i <= k; ++i)
      for (int a = i + 1; a <= k; ++a)
        for (int b = a + 1; b <= k; ++b)
          inst(f2, lbl({i, a, b}), {pp(i, a), pp(i, b)}, {pp(i, a), pp(a, b)});
    auto& f3 = family("pij-triangle",
                      "p_{i+l,i+j} p_{i,i+j} = p_{i,i+j} p_{i+l,i+j} = p_{i,i+l} p_{i+l,i+j}, l < j");
    for (int i = 1; i <= k; ++i)
      for (int a = i + 1; a <= k; ++a)
        for (int b = a + 1; b <= k; ++b) {
          inst(f3, lbl({i, a, b}) + "a", {pp(a, b), pp(i, b)}, {pp(i, b), pp(a, b)});
          inst(f3, lbl({i, a, b}) + "b", {pp(i, b), pp(a, b)}, {pp(i, a), pp(a, b)});
        }
  }
  return cat;
}

VerificationReport verify_diagram_relations(int k, const ComposeFn& compose_fn) {
  if (k < 3) throw DiagramError("relation suite needs k >= 3");
  VerificationReport rep;
  rep.suite = "diagram k=" + std::to_string(k);
  for (const auto& fam : relation_catalog(k)) {
    auto& rec = rep.check(fam.id, fam.description);
    for (const auto& in : fam.instances) {
      bool ok = evaluate_with(in.lhs, k, compose_fn) == evaluate_with(in.rhs, k, compose_fn);
      rec.record(ok, ok ? 0.0 : 1.0, in.label);
    }
  }
  return rep;
}

}  // namespace braidforge
