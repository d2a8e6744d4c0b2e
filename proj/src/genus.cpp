#include "mapgen/genus.hpp"

#include "mapgen/equilibrium.hpp"
#include "mapgen/oracle.hpp"

namespace mapgen {

std::map<int, PowerSeries> log_b_rhs(const std::vector<PowerSeries>& z) {
  if (z.empty()) throw genus_error("need at least z0");
  if (z[0][0] != 1) throw genus_error("z0 must start at 1");
  std::map<int, PowerSeries> B;
  B[0] = log(z[0]);
  // log(1 + A), A_g = z_g / z0, by g B_g = g A_g - sum_{k<g} k B_k A_{g-k}
  std::vector<PowerSeries> A(z.size());
  for (size_t g = 1; g < z.size(); ++g) A[g] = z[g] / z[0];
  for (int g = 1; g < static_cast<int>(z.size()); ++g) {
    PowerSeries acc = A[g] * Rational(g);
    for (int k = 1; k < g; ++k) acc -= B[k] * A[g - k] * Rational(k);
    B[g] = acc * Rational(1, g);
  }
  return B;
}

namespace {

PowerSeries lower_genus_sum(int g, const std::vector<PowerSeries>& e, bool literal_index) {
  if (static_cast<int>(e.size()) < g) throw genus_error("second difference for genus " + std::to_string(g) + " needs e_0..e_" + std::to_string(g - 1));
  if (g == 0) return PowerSeries("s", e.empty() ? 0 : e[0].order());
  int R = e[0].order();
  for (int h = 0; h < g; ++h) R = std::min(R, e[h].order());
  PowerSeries total("s", R);
  for (int h = 0; h < g; ++h) {
    int m = 2 * (g - h + 1);
    if (literal_index && h == 0) m = 2 * g;
    Rational weight = Rational(2) / Rational(factorial(m));
    total += self_similar_derivative(e[h].truncate(R), Rational(2 - 2 * h), m).first * weight;
  }
  return total;
}

}  // namespace

PowerSeries second_difference_lhs(int g, const std::vector<PowerSeries>& e) { return lower_genus_sum(g, e, false); }

PowerSeries second_difference_lhs_literal(int g, const std::vector<PowerSeries>& e) {
  return lower_genus_sum(g, e, true);
}

DriverData driver_H(int g, const std::vector<PowerSeries>& z, const std::vector<PowerSeries>& e) {
  if (static_cast<int>(z.size()) <= g) throw genus_error("driver for genus " + std::to_string(g) + " needs z_" + std::to_string(g));
  auto rhs = log_b_rhs(std::vector<PowerSeries>(z.begin(), z.begin() + g + 1));
  DriverData d{g, rhs.at(g), {}, {Rational(1 - 4 * g), Rational(1)}, {}, {}};
  if (g > 0) {
    PowerSeries lhs = second_difference_lhs(g, e);
    int R = std::min(d.H.order(), lhs.order());
    d.H = d.H.truncate(R) - lhs;
  }
  if (!is_even(d.H)) throw genus_error("driver H_" + std::to_string(g) + " is not even in s");
  for (int k = 0; 2 * k <= d.H.order(); ++k) d.eta[2 * k] = d.H[2 * k];
  for (int k : {2 * g - 1, 2 * g - 2})
    if (k >= 0 && 2 * k <= d.H.order()) d.resonant_orders.insert(2 * k);
  return d;
}

PowerSeries reference_H1(const PowerSeries& z0, const PowerSeries& z1, const PowerSeries& e0) {
  int R = std::min({z0.order(), z1.order(), e0.order()});
  // d/dw (w^p E) = w^(p-1) D_p E, four times from p = 2
  PowerSeries d4 = self_similar_D(self_similar_D(self_similar_D(self_similar_D(e0.truncate(R), 2), 1), 0), -1);
  return z1.truncate(R) / z0.truncate(R) - d4 * Rational(1, 12);
}

Rational ode_factor(int g, int k) { return Rational(1 - 2 * g + k) * Rational(2 - 2 * g + k); }

Rational ode_expanded(int g, int k) {
  return Rational((2 - 2 * g) * (1 - 2 * g)) + Rational(7 - 8 * g, 4) * (2 * k) + Rational((2 * k) * (2 * k - 1), 4);
}

FreeEnergyCoefficient solve_eg(int g, DriverData& driver, const FreeEnergySource& source) {
  if (driver.g != g) throw genus_error("driver genus does not match");
  const int R = driver.H.order();
  FreeEnergyCoefficient out{g, PowerSeries("s", R), "ode-recursion", {}};
  for (int k = 0; 2 * k <= R; ++k) {
    Rational den = ode_factor(g, k);
    const Rational& eta = driver.eta.at(2 * k);
    if (den != 0) {
      out.series[2 * k] = eta / den;
      out.provenance[2 * k] = "formula";
      continue;
    }
    // resonance: the recursion reads 0 * e = eta, so eta must vanish
    if (eta != 0)
      throw genus_error("solvability fails for e_" + std::to_string(g) + " at s^" + std::to_string(2 * k) +
                        ": eta = " + to_string(eta));
    auto v = source(g, 2 * k);
    if (!v)
      throw genus_error("resonance value for e_" + std::to_string(g) + " at s^" + std::to_string(2 * k) +
                        " (k = " + std::to_string(k) + ") is not available");
    out.series[2 * k] = v->value;
    out.provenance[2 * k] = "injected:" + v->provenance;
    driver.injected[2 * k] = *v;
  }
  return out;
}

PowerSeries eg_closed(int g, const PowerSeries& z0) {
  const int R = z0.order();
  PowerSeries z2 = z0 * z0;
  switch (g) {
    case 0:
      return Rational(1, 2) * log(z0) +
             Rational(1, 12) * (z0 - Rational(1)) * (z2 - Rational(6) * z0 - Rational(3)) / (z0 + Rational(1));
    case 1: {
      PowerSeries arg = (Rational(3) - z2) * Rational(1, 2);
      if (arg[0] != 1) throw genus_error("e1 closed form needs z0(0)^2 = 1");
      return Rational(-1, 24) * log(arg);
    }
    case 2: {
      PowerSeries d = z2 - Rational(3);
      if (d[0] == 0) throw genus_error("e2 closed form has a pole at z0^2 = 3");
      PowerSeries m = z2 - Rational(1);
      return Rational(1, 960) * m * m * m * (Rational(4) * z2 * z2 - Rational(93) * z2 - Rational(261)) / ipow(d, 5);
    }
  }
  (void)R;
  throw genus_error("no closed form for genus " + std::to_string(g));
}

Real eg_closed(int g, const Real& z0) {
  using boost::multiprecision::log;
  Real z2 = z0 * z0;
  if (g > 0 && z2 == 3) throw genus_error("closed form has a pole at z0^2 = 3");
  switch (g) {
    case 0: return log(z0) / 2 + (z0 - 1) * (z2 - 6 * z0 - 3) / (12 * (z0 + 1));
    case 1: return -log((3 - z2) / 2) / 24;
    case 2: return (z2 - 1) * (z2 - 1) * (z2 - 1) * (4 * z2 * z2 - 93 * z2 - 261) / (960 * boost::multiprecision::pow(z2 - 3, 5));
  }
  throw genus_error("no closed form for genus " + std::to_string(g));
}

namespace {

Rational rpow(long base, int e) {
  Rational r = 1;
  if (e >= 0)
    for (int i = 0; i < e; ++i) r *= base;
  else
    for (int i = 0; i < -e; ++i) r /= base;
  return r;
}

Rational gen_binomial(const Rational& alpha, int i) {
  Rational c = 1;
  for (int m = 0; m < i; ++m) c = c * (alpha - m) / (m + 1);
  return c;
}

}  // namespace

Rational taylor_e0_gamma(int j) {
  if (j < 1) throw genus_error("j must be positive");
  // Gamma(3j/2) / Gamma(j/2) = prod_{i<j} (j/2 + i)
  Rational ratio = 1;
  for (int i = 0; i < j; ++i) ratio *= Rational(j, 2) + i;
  return rpow(3, 2 * j) * rpow(2, 3 * j) / j * ratio / Rational(factorial(j + 2));
}

Rational taylor_e1_contour(int j) {
  if (j < 1) throw genus_error("j must be positive");
  // residue at 1 of -zeta^a / ((zeta - 3)(zeta - 1)^j): with y = zeta - 1,
  // zeta^a = sum C(a, i) y^i and -1/(y - 2) = (1/2) sum (y/2)^m
  Rational alpha = Rational(3 * j + 1, 2);
  Rational res = 0;
  for (int i = 0; i < j; ++i) res += gen_binomial(alpha, i) * rpow(2, -(j - 1 - i));
  res /= 2;
  return rpow(3, 2 * j - 1) * rpow(2, 3 * j - 2) / j * res;
}

ContourReconciliation reconcile_e1(int j) {
  auto eq = equilibrium_series(2 * j);
  Rational closed = eg_closed(1, eq.z0)[2 * j];
  Rational contour = taylor_e1_contour(j);
  return {j, contour, closed, contour == closed};
}

FreeEnergySource default_free_energy_source(int order) {
  return [order](int g, int s_power) -> std::optional<ResonanceValue> {
    try {
      return resonance_table(ResonanceKind::free_energy, g, {s_power}).at(s_power);
    } catch (const oracle_error&) {
    }
    if (g <= 2) {
      auto eq = equilibrium_series(std::max(order, s_power));
      return ResonanceValue{eg_closed(g, eq.z0)[s_power], "closed-form"};
    }
    static const std::map<std::pair<int, int>, Rational> table{
        {{1, 0}, 0}, {{1, 2}, Rational(3, 2)}, {{2, 4}, 0}, {{2, 6}, Rational(8505, 2)}};
    auto it = table.find({g, s_power});
    if (it == table.end()) return std::nullopt;
    return ResonanceValue{it->second, "table"};
  };
}

GenusTables compute_genus_tables(int g_max, int order, const ResonanceSource& z_source,
                                 const FreeEnergySource& e_source) {
  GenusTables out;
  out.hierarchy = solve_hierarchy(g_max, order, z_source);
  std::vector<PowerSeries> z, e;
  for (int g = 0; g <= g_max; ++g) z.push_back(out.hierarchy.f.coeffs.at(g));
  for (int g = 0; g <= g_max; ++g) {
    DriverData d = driver_H(g, z, e);
    auto eg = solve_eg(g, d, e_source);
    e.push_back(eg.series);
    out.e.push_back(std::move(eg));
    out.drivers.push_back(std::move(d));
  }
  return out;
}

}  // namespace mapgen
