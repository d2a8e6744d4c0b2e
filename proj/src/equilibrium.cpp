#include "mapgen/equilibrium.hpp"

#include <boost/math/tools/roots.hpp>

namespace mapgen {

EquilibriumSeries equilibrium_series(int order) {
  Bivariate fz;  // z^2 - 72 s^2 z^3 - 1
  fz.add(2, 0, 1).add(3, 2, -72).add(0, 0, -1);
  Bivariate fu;  // 18 s^2 u^3 + 9 s u^2 + u + 6 s
  fu.add(3, 2, 18).add(2, 1, 9).add(1, 0, 1).add(0, 1, 6);
  return {implicit_solve(fu, 0, order), implicit_solve(fz, 1, order)};
}

std::pair<PowerSeries, PowerSeries> ideal_residuals(const PowerSeries& u0, const PowerSeries& z0) {
  int R = std::min(u0.order(), z0.order());
  PowerSeries s = PowerSeries::identity(R, u0.var());
  PowerSeries r1 = Rational(3) * s * u0 * u0 + u0 + Rational(6) * s * z0;
  PowerSeries r2 = Rational(-6) * s * z0 * u0 + (Rational(1) - z0);
  return {r1, r2};
}

std::pair<PowerSeries, PowerSeries> endpoint_residuals(const PowerSeries& u0, const PowerSeries& z0) {
  int R = std::min(u0.order(), z0.order());
  PowerSeries s = PowerSeries::identity(R, u0.var());
  PowerSeries q = u0 * u0 + Rational(2) * z0;
  PowerSeries r1 = u0 + Rational(3) * s * q;
  PowerSeries r2 = q + Rational(3) * s * (u0 * u0 * u0 + Rational(6) * u0 * z0) - Rational(2);
  return {r1, r2};
}

Real critical_coupling() {
  // Double root of P(z, tau) = z^2 - 72 tau z^3 - 1 in z, tau = t^2:
  // Newton on (P, P_z) = 0 from a seed near the collision.
  Real z = Real(17) / 10, tau = Real(5) / 1000;
  const Real eps = pow10(-static_cast<int>(Real::default_precision()) + 5);
  for (int it = 0; it < 200; ++it) {
    Real P = z * z - 72 * tau * z * z * z - 1;
    Real Pz = 2 * z - 216 * tau * z * z;
    // Jacobian rows: (P_z, P_tau), (P_zz, P_ztau)
    Real a = Pz, b = -72 * z * z * z;
    Real c = 2 - 432 * tau * z, d = -216 * z * z;
    Real det = a * d - b * c;
    Real dz = (P * d - b * Pz) / det;
    Real dt = (a * Pz - c * P) / det;
    z -= dz;
    tau -= dt;
    if (boost::multiprecision::abs(dz) + boost::multiprecision::abs(dt) < eps) break;
  }
  return boost::multiprecision::sqrt(tau);
}

EquilibriumData equilibrium_numeric(const Real& t3) {
  using boost::multiprecision::abs;
  using boost::multiprecision::sqrt;
  const Real sc = critical_coupling();
  if (abs(t3) >= sc)
    throw equilibrium_error("|t3| = " + str(abs(t3), 10) + " is past the branch collision at s_c = " + str(sc, 30));
  EquilibriumData eq{t3, 0, 1, -2, 2};
  if (t3 == 0) return eq;

  const int bits = static_cast<int>(Real::default_precision() * 3.33) - 4;
  const Real t2 = t3 * t3;
  auto pz = [&](const Real& z) {
    return std::make_pair(Real(z * z - 72 * t2 * z * z * z - 1), Real(2 * z - 216 * t2 * z * z));
  };
  std::uintmax_t iters = 400;
  eq.z0 = boost::math::tools::newton_raphson_iterate(pz, Real(1), Real(1), Real(sqrt(Real(3))), bits, iters);

  // the u0 branch through 0; the second ideal relation gives the seed
  auto pu = [&](const Real& u) {
    return std::make_pair(Real(18 * t2 * u * u * u + 9 * t3 * u * u + u + 6 * t3),
                          Real(54 * t2 * u * u + 18 * t3 * u + 1));
  };
  Real seed = (1 - eq.z0) / (6 * t3 * eq.z0);
  iters = 400;
  Real span = abs(seed) + 1;
  eq.u0 = boost::math::tools::newton_raphson_iterate(pu, seed, Real(seed - span), Real(seed + span), bits, iters);

  Real r = 2 * sqrt(eq.z0);
  eq.A = eq.u0 - r;
  eq.B = eq.u0 + r;
  return eq;
}

DensitySample equilibrium_density(const Real& lambda, const EquilibriumData& eq) {
  if (lambda <= eq.A || lambda >= eq.B) return {lambda, 0};
  Real lin = 1 + 3 * eq.t3 * (lambda + eq.u0);
  Real root = boost::multiprecision::sqrt((lambda - eq.A) * (eq.B - lambda));
  return {lambda, Real(lin * root / (2 * pi_real()))};
}

DensitySample equilibrium_density(const Real& lambda, const Real& t3) {
  return equilibrium_density(lambda, equilibrium_numeric(t3));
}

Real density_mass(const EquilibriumData& eq, const Real& tol) {
  return integrate([&](const Real& x) { return equilibrium_density(x, eq).value; }, eq.A, eq.B, tol);
}

std::pair<Real, Real> endpoint_moment_check(const Real& t3) {
  auto eq = equilibrium_numeric(t3);
  const Real& u = eq.u0;
  const Real& z = eq.z0;
  Real q = u * u + 2 * z;
  Real r1 = u + 3 * t3 * q;
  Real r2 = q + 3 * t3 * (u * u * u + 6 * u * z) - 2;
  return {r1, r2};
}

}  // namespace mapgen
