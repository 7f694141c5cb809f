#include "ilo_property.hpp"

#include <random>

#include <braidforge/entanglement.hpp>
#include <braidforge/families.hpp>
#include <braidforge/verifier.hpp>

namespace braidforge::app {

namespace {

// 4-qubit labels are coarse, so compare them through the cut ranks too
std::string signature(const SloccLabel& l) {
  std::string s = l.label;
  if (l.n == 4)
    for (int r : l.ranks) s += ":" + std::to_string(r);
  return s;
}

StateVector random_product(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  std::vector<Vector> sites;
  for (int i = 0; i < n; ++i) {
    Vector v(2);
    v << cplx(nd(rng), nd(rng)), cplx(nd(rng), nd(rng));
    sites.push_back(v);
  }
  return StateVector::product(sites).normalized();
}

}  // namespace

std::vector<IloTrial> ilo_class_trials(int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::vector<FamilyId> fams = {FamilyId::F2P, FamilyId::F2Pair, FamilyId::F3P, FamilyId::F3Pair, FamilyId::F42};
  std::vector<IloTrial> out;
  for (int t = 0; t < trials; ++t) {
    const auto& f = family_info(fams[t % fams.size()]);
    DenseOperator R;
    do {
      R = build(random_point(f.id, rng));
    } while (!is_entangling(R, 50, rng()).entangling);

    auto A = random_ilo(f.m, rng);
    auto Ainv = A.inverse();
    auto Rc = ilo_conjugate(R, A.stages.front());
    auto P = random_product(f.m, rng);

    IloTrial tr;
    tr.family = f.name;
    tr.original = signature(classify(apply_gate(R, P).normalized()));
    auto moved = apply_gate(Rc, A.apply(P)).normalized();
    tr.conjugated = signature(classify(moved));
    tr.pulled_back = signature(classify(Ainv.apply(moved).normalized()));
    tr.match = tr.original == tr.conjugated && tr.original == tr.pulled_back;
    out.push_back(tr);
  }
  return out;
}

nlohmann::json to_json(const IloTrial& t) {
  return {{"family", t.family},
          {"original", t.original},
          {"conjugated", t.conjugated},
          {"pulled_back", t.pulled_back},
          {"match", t.match}};
}

}  // namespace braidforge::app
