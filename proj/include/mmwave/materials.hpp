#pragma once

#include <array>

namespace mmw {

enum class Flavor { Relaxed, Mindlin, InternalVariable };

const char *to_string(Flavor f);

// Classical isotropic solid. SI units throughout.
struct CauchyMaterial {
  double rho = 0;          // kg/m^3
  double lambda_macro = 0; // Pa
  double mu_macro = 0;     // Pa
};

// Isotropic micromorphic solid. char_length is L_c for the relaxed model and
// L_g for the Mindlin model; it must be zero exactly for InternalVariable.
struct MicromorphicMaterial {
  double rho = 0;          // kg/m^3
  double eta = 0;          // kg/m (micro-inertia density)
  double mu_e = 0;         // Pa
  double lambda_e = 0;     // Pa
  double mu_c = 0;         // Pa (Cosserat couple modulus)
  double mu_micro = 0;     // Pa
  double lambda_micro = 0; // Pa
  double char_length = 0;  // m
  Flavor flavor = Flavor::Relaxed;
};

struct CharacteristicQuantities {
  double omega_s = 0, omega_r = 0, omega_p = 0, omega_l = 0; // rad/s
  // Two competing closed forms for the transverse bound: sqrt(mu_micro/eta)
  // and sqrt(2 mu_micro/eta). The band-gap edge itself is found numerically.
  double omega_t = 0, omega_t_doubled = 0;
  double c_m = 0, c_p = 0, c_s = 0; // m/s; c_m is c_g for Mindlin
};

struct CauchySpeeds {
  double c_l = 0, c_t = 0;
};

// Horizontal asymptotes of the Lc = 0 dispersion curves, larger root first.
struct InternalAsymptotes {
  double omega_l1 = 0, omega_l2 = 0, omega_t1 = 0, omega_t2 = 0;
};

// Throws Error(NonPositiveDefinite | DegenerateModel) naming the violated constraint.
CauchyMaterial validate(const CauchyMaterial &m);
MicromorphicMaterial validate(const MicromorphicMaterial &m);

CharacteristicQuantities characteristic_quantities(const MicromorphicMaterial &m);
CauchySpeeds cauchy_speeds(const CauchyMaterial &m);

// Throws Error(WrongFlavor) unless char_length == 0.
InternalAsymptotes internal_variable_asymptotes(const MicromorphicMaterial &m);

// Reference parameter set used by the examples, tests and data/ files.
MicromorphicMaterial reference_micromorphic(Flavor flavor = Flavor::Relaxed);
CauchyMaterial reference_cauchy();

} // namespace mmw
