#pragma once

#include <array>

#include "rotor/operators.hpp"

namespace rotor {

/// Supercharges, the so(3)_{-1} generators commuting with Q, and the
/// Casimir, all on one V_j.
struct SusyOperators {
  HarmonicSpace space;
  Operator Q;
  Operator Q_alt;
  Operator K1;
  Operator K2;
  Operator K3;
  Operator C;
};

struct SymmetryGenerators {
  Operator K1;
  Operator K2;
  Operator K3;
};

/// Q = -i J1 R3 + i J2 R2 R3 - i J3 R2 - 1/2.
Operator supercharge(HarmonicSpace s);

/// Q~ = -i J1 R1 R2 + i J2 R1 - i J3 R1 R3 - R1 R2 R3 / 2.
Operator supercharge_alt(HarmonicSpace s);

/// K1 = i J1 R2 + R2 R3 / 2
/// K2 = -i J2 R1 R2 + R1 R3 / 2
/// K3 = -i R1 J3 + R1 R2 / 2
///
/// K3 is written with R1 to the left of J3. Since {J3, R1} = 0 this is
/// +i J3 R1 + R1 R2 / 2, the form whose action is
/// K3 Y^m = -i m Y^{-m} + (-1)^m / 2 Y^m and which closes the algebra.
SymmetryGenerators symmetry_generators(HarmonicSpace s);

/// K1^2 + K2^2 + K3^2.
Operator casimir(HarmonicSpace s);

SusyOperators build_susy(HarmonicSpace s);

struct NonSymmetryReport {
  std::array<double, 3> j_commutators{};  // ||[J_i, Q]||_F
  std::array<double, 3> r_commutators{};  // ||[R_i, Q]||_F
  std::array<double, 3> h_commutators{};  // ||[H, K_i]||_F, expected zero

  double min_j() const;
  double min_r() const;
};

NonSymmetryReport non_symmetry_report(HarmonicSpace s);

}  // namespace rotor
