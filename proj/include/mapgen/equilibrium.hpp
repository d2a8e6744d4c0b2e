#pragma once

// Leading-order data of the cubic model V = l^2/2 + t l^3: the support
// [A, B] of the equilibrium measure through u0 = (A+B)/2, z0 = (B-A)^2/16.

#include "mapgen/real.hpp"
#include "mapgen/series.hpp"

namespace mapgen {

struct EquilibriumSeries {
  PowerSeries u0, z0;
};

// z0 from 1 = z^2 - 72 s^2 z^3, u0 from 18 s^2 u^3 + 9 s u^2 + u + 6 s = 0
EquilibriumSeries equilibrium_series(int order);

// 3s u0^2 + u0 + 6s z0 and -6s z0 u0 + 1 - z0
std::pair<PowerSeries, PowerSeries> ideal_residuals(const PowerSeries& u0, const PowerSeries& z0);
// the endpoint conditions in algebraic form, second one shifted by -2
std::pair<PowerSeries, PowerSeries> endpoint_residuals(const PowerSeries& u0, const PowerSeries& z0);

struct EquilibriumData {
  Real t3, u0, z0, A, B;
};

struct equilibrium_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// |t3| where the z0 branch through 1 collides with another root (z0 -> sqrt 3)
Real critical_coupling();

EquilibriumData equilibrium_numeric(const Real& t3);

struct DensitySample {
  Real lambda, value;
};

DensitySample equilibrium_density(const Real& lambda, const EquilibriumData& eq);
DensitySample equilibrium_density(const Real& lambda, const Real& t3);
Real density_mass(const EquilibriumData& eq, const Real& tol);

std::pair<Real, Real> endpoint_moment_check(const Real& t3);

}  // namespace mapgen
