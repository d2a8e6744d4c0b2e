#pragma once

// Free-energy coefficients e_g(s). The Hirota relation
//   log b2_n - log b2_n(0) = second difference of log tau_n^2
// is expanded in 1/n at x = 1; the genus-g order gives
//   D_{1-2g} D_{2-2g} e_g = H_g,
// whose Taylor recursion is singular exactly at s^(2k), k = 2g-1, 2g-2.

#include "mapgen/asymptotics.hpp"
#include "mapgen/real.hpp"
#include "mapgen/series.hpp"

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mapgen {

struct genus_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// coefficient of n^-2g in log(sum_g z_g n^-2g), g = 0..z.size()-1
std::map<int, PowerSeries> log_b_rhs(const std::vector<PowerSeries>& z);

// lower-genus part of the n^-2g coefficient of the second difference
PowerSeries second_difference_lhs(int g, const std::vector<PowerSeries>& e);

// the same with the h = 0 weight taken as 2/(2g)! and 2g derivatives
PowerSeries second_difference_lhs_literal(int g, const std::vector<PowerSeries>& e);

struct DriverData {
  int g;
  PowerSeries H;
  std::map<int, Rational> eta;            // s-power 2k -> eta_g(2k)
  std::pair<Rational, Rational> gamma;    // (1 - 4g, 1); (3 - 4g, -3) is equivalent
  std::set<int> resonant_orders;          // s-powers 2k with k = 2g-1, 2g-2
  std::map<int, ResonanceValue> injected; // filled by solve_eg
};

DriverData driver_H(int g, const std::vector<PowerSeries>& z, const std::vector<PowerSeries>& e);

// z1/z0 - (1/12) d^4/dw^4 [w^2 e0] written out directly
PowerSeries reference_H1(const PowerSeries& z0, const PowerSeries& z1, const PowerSeries& e0);

struct FreeEnergyCoefficient {
  int g;
  PowerSeries series;
  std::string source;                       // ode-recursion | closed-form
  std::map<int, std::string> provenance;    // s-power -> formula | injected:...
};

// asked for the s^order coefficient of e_g
using FreeEnergySource = std::function<std::optional<ResonanceValue>(int g, int order)>;

FreeEnergyCoefficient solve_eg(int g, DriverData& driver, const FreeEnergySource& source);

// (1 - 2g + k)(2 - 2g + k), the recursion denominator
Rational ode_factor(int g, int k);
// (2-2g)(1-2g) + (1/4)(7-8g)(2k) + (1/4)(2k)(2k-1), from the ODE as written
Rational ode_expanded(int g, int k);

PowerSeries eg_closed(int g, const PowerSeries& z0);
Real eg_closed(int g, const Real& z0);

Rational taylor_e0_gamma(int j);
Rational taylor_e1_contour(int j);

struct ContourReconciliation {
  int j;
  Rational contour;      // contour-integral formula for e1
  Rational closed_form;  // s^(2j) coefficient of e1 from its closed form
  bool agree;
};
ContourReconciliation reconcile_e1(int j);

// oracle first, then closed-form series, then the fixed table
FreeEnergySource default_free_energy_source(int order);

struct GenusTables {
  std::vector<FreeEnergyCoefficient> e;
  std::vector<DriverData> drivers;
  HierarchySolution hierarchy;
};

GenusTables compute_genus_tables(int g_max, int order, const ResonanceSource& z_source,
                                 const FreeEnergySource& e_source);

}  // namespace mapgen
