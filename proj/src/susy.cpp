#include "rotor/susy.hpp"

#include <algorithm>

namespace rotor {
namespace {

constexpr cplx kI(0.0, 1.0);

}  // namespace

Operator supercharge(HarmonicSpace s) {
  const Operator r2 = reflection(2, s);
  const Operator r3 = reflection(3, s);
  return (-kI) * (j1(s) * r3) + kI * (j2(s) * r2 * r3) - kI * (j3(s) * r2) - 0.5 * Operator::identity(s);
}

Operator supercharge_alt(HarmonicSpace s) {
  const Operator r1 = reflection(1, s);
  const Operator r2 = reflection(2, s);
  const Operator r3 = reflection(3, s);
  return (-kI) * (j1(s) * r1 * r2) + kI * (j2(s) * r1) - kI * (j3(s) * r1 * r3) - 0.5 * (r1 * r2 * r3);
}

SymmetryGenerators symmetry_generators(HarmonicSpace s) {
  const Operator r1 = reflection(1, s);
  const Operator r2 = reflection(2, s);
  const Operator r3 = reflection(3, s);
  return SymmetryGenerators{
      kI * (j1(s) * r2) + 0.5 * (r2 * r3),
      (-kI) * (j2(s) * r1 * r2) + 0.5 * (r1 * r3),
      (-kI) * (r1 * j3(s)) + 0.5 * (r1 * r2),
  };
}

Operator casimir(HarmonicSpace s) {
  const auto k = symmetry_generators(s);
  return k.K1 * k.K1 + k.K2 * k.K2 + k.K3 * k.K3;
}

SusyOperators build_susy(HarmonicSpace s) {
  auto k = symmetry_generators(s);
  Operator c = k.K1 * k.K1 + k.K2 * k.K2 + k.K3 * k.K3;
  return SusyOperators{s, supercharge(s), supercharge_alt(s), std::move(k.K1), std::move(k.K2),
                       std::move(k.K3), std::move(c)};
}

double NonSymmetryReport::min_j() const { return *std::min_element(j_commutators.begin(), j_commutators.end()); }

double NonSymmetryReport::min_r() const { return *std::min_element(r_commutators.begin(), r_commutators.end()); }

NonSymmetryReport non_symmetry_report(HarmonicSpace s) {
  const Operator q = supercharge(s);
  const Operator h = hamiltonian(s);
  const auto k = symmetry_generators(s);
  const std::array<Operator, 3> js{j1(s), j2(s), j3(s)};
  const std::array<const Operator*, 3> ks{&k.K1, &k.K2, &k.K3};
  NonSymmetryReport rep;
  for (int i = 0; i < 3; ++i) {
    rep.j_commutators[i] = op_norm(commutator(js[i], q));
    rep.r_commutators[i] = op_norm(commutator(reflection(i + 1, s), q));
    rep.h_commutators[i] = op_norm(commutator(h, *ks[i]));
  }
  return rep;
}

}  // namespace rotor
