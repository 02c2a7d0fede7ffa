#include "mmwave/materials.hpp"
#include "mmwave/error.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace mmw {

const char *to_string(Flavor f) {
  switch (f) {
  case Flavor::Relaxed: return "relaxed";
  case Flavor::Mindlin: return "mindlin";
  case Flavor::InternalVariable: return "internal";
  }
  return "unknown";
}

namespace {

void require(bool ok, const char *constraint) {
  if (!ok) throw Error(ErrorKind::NonPositiveDefinite, constraint);
}

bool finite_all(std::initializer_list<double> xs) {
  for (double x : xs)
    if (!std::isfinite(x)) return false;
  return true;
}

} // namespace

CauchyMaterial validate(const CauchyMaterial &m) {
  require(finite_all({m.rho, m.lambda_macro, m.mu_macro}), "finite parameters");
  require(m.rho > 0, "rho > 0");
  require(m.mu_macro >= 0, "mu_macro >= 0");
  require(m.lambda_macro + 2 * m.mu_macro >= 0, "lambda_macro + 2 mu_macro >= 0");
  return m;
}

MicromorphicMaterial validate(const MicromorphicMaterial &m) {
  require(finite_all({m.rho, m.eta, m.mu_e, m.lambda_e, m.mu_c, m.mu_micro, m.lambda_micro,
                      m.char_length}),
          "finite parameters");
  if (m.mu_c == 0 && m.char_length == 0)
    throw Error(ErrorKind::DegenerateModel, "mu_c = 0 with char_length = 0 leaves the skew "
                                            "micro-distortion uncontrolled");
  require(m.rho > 0, "rho > 0");
  require(m.eta > 0, "eta > 0");
  require(m.mu_e > 0, "mu_e > 0");
  require(m.mu_micro > 0, "mu_micro > 0");
  require(m.mu_c >= 0, "mu_c >= 0");
  require(m.lambda_e + 2 * m.mu_e > 0, "lambda_e + 2 mu_e > 0");
  require(m.lambda_micro + 2 * m.mu_micro > 0, "lambda_micro + 2 mu_micro > 0");
  require(m.char_length >= 0, "char_length >= 0");
  if (m.flavor == Flavor::InternalVariable)
    require(m.char_length == 0, "char_length = 0 for the internal-variable flavor");
  else
    require(m.char_length > 0, "char_length > 0 for relaxed and Mindlin flavors");
  return m;
}

CharacteristicQuantities characteristic_quantities(const MicromorphicMaterial &m) {
  CharacteristicQuantities q;
  q.omega_s = std::sqrt(2 * (m.mu_e + m.mu_micro) / m.eta);
  q.omega_r = std::sqrt(2 * m.mu_c / m.eta);
  q.omega_p = std::sqrt(((3 * m.lambda_e + 2 * m.mu_e) + (3 * m.lambda_micro + 2 * m.mu_micro)) / m.eta);
  q.omega_l = std::sqrt((m.lambda_micro + 2 * m.mu_micro) / m.eta);
  q.omega_t = std::sqrt(m.mu_micro / m.eta);
  q.omega_t_doubled = std::sqrt(2 * m.mu_micro / m.eta);
  q.c_m = std::sqrt(m.mu_e * m.char_length * m.char_length / m.eta);
  q.c_p = std::sqrt((m.lambda_e + 2 * m.mu_e) / m.rho);
  q.c_s = std::sqrt((m.mu_e + m.mu_c) / m.rho);
  return q;
}

CauchySpeeds cauchy_speeds(const CauchyMaterial &m) {
  return {std::sqrt((m.lambda_macro + 2 * m.mu_macro) / m.rho), std::sqrt(m.mu_macro / m.rho)};
}

InternalAsymptotes internal_variable_asymptotes(const MicromorphicMaterial &m) {
  if (m.char_length != 0)
    throw Error(ErrorKind::WrongFlavor, "internal-variable asymptotes need char_length = 0");
  const double le = m.lambda_e, me = m.mu_e, lm = m.lambda_micro, mm = m.mu_micro, mc = m.mu_c;

  const double a = 6 * lm * me + 4 * me * (me + 2 * mm) + le * (3 * lm + 6 * me + 4 * mm);
  const double b = 8 * (le + 2 * me) *
                   (le * (3 * lm * (me + mm) + 2 * mm * (3 * me + mm)) +
                    2 * me * (2 * mm * (me + mm) + lm * (me + 3 * mm)));
  const double dl = std::sqrt(std::max(0.0, a * a - b));
  const double den_l = 2 * m.eta * (le + 2 * me);

  const double x = 2 * mc * me + (mc + me) * mm;
  const double dt = std::sqrt(std::max(0.0, x * x - 4 * mc * me * mm * (mc + me)));
  const double den_t = m.eta * (mc + me);

  // The minus roots are formed as b/(a + sqrt(a^2 - b)) to avoid cancellation.
  InternalAsymptotes r;
  r.omega_l1 = std::sqrt((a + dl) / den_l);
  r.omega_l2 = std::sqrt(b / (a + dl) / den_l);
  r.omega_t1 = std::sqrt((x + dt) / den_t);
  r.omega_t2 = std::sqrt(4 * mc * me * mm * (mc + me) / (x + dt) / den_t);
  return r;
}

MicromorphicMaterial reference_micromorphic(Flavor flavor) {
  MicromorphicMaterial m;
  m.rho = 2000;
  m.eta = 1e-2;
  m.mu_c = 2e9;
  m.mu_e = 2e8;
  m.mu_micro = 1e8;
  m.lambda_micro = 1e8;
  m.lambda_e = 4e8;
  m.char_length = flavor == Flavor::InternalVariable ? 0.0 : 1e-2;
  m.flavor = flavor;
  return m;
}

CauchyMaterial reference_cauchy() { return {2000, 4e8, 2e8}; }

} // namespace mmw
