#include "mapgen/asymptotics.hpp"

#include "mapgen/equilibrium.hpp"
#include "mapgen/motzkin.hpp"

namespace mapgen {

PowerSeries self_similar_D(const PowerSeries& e, const Rational& p) {
  PowerSeries r = e;
  for (int k = 0; k <= r.order(); ++k) r[k] *= p + Rational(k, 2);
  return r;
}

std::pair<PowerSeries, Rational> self_similar_derivative(const PowerSeries& e, const Rational& p, int k) {
  if (k < 0) throw asymptotics_error("negative derivative count");
  PowerSeries r = e;
  Rational q = p;
  for (int i = 0; i < k; ++i) {
    r = self_similar_D(r, q);
    q -= 1;
  }
  return {r, q};
}

Rational SelfSimilarFamily::prefactor(int g) const {
  return kind == h_type ? Rational(1, 2) - g : Rational(1 - 2 * g);
}

int SelfSimilarFamily::grade(int g) const { return kind == h_type ? g : 2 * g; }

int SelfSimilarFamily::s_order() const {
  int R = std::numeric_limits<int>::max();
  for (auto& [g, c] : coeffs) R = std::min(R, c.order());
  return R;
}

SelfSimilarFamily SelfSimilarFamily::h(std::vector<PowerSeries> u) {
  SelfSimilarFamily F{h_type, {}};
  for (size_t g = 0; g < u.size(); ++g) F.coeffs.emplace(static_cast<int>(g), std::move(u[g]));
  return F;
}

SelfSimilarFamily SelfSimilarFamily::f(std::vector<PowerSeries> z) {
  SelfSimilarFamily F{f_type, {}};
  for (size_t g = 0; g < z.size(); ++g) F.coeffs.emplace(static_cast<int>(g), std::move(z[g]));
  return F;
}

AsymptoticSeries::AsymptoticSeries(int max_power, int s_order, std::string var)
    : c_(max_power + 1, PowerSeries(var, s_order)) {}

AsymptoticSeries AsymptoticSeries::scalar(const PowerSeries& c, int max_power) {
  AsymptoticSeries a(max_power, c.order(), c.var());
  a.c_[0] = c;
  return a;
}

AsymptoticSeries AsymptoticSeries::inverse_n(int max_power, int s_order, std::string var) {
  AsymptoticSeries a(max_power, s_order, var);
  if (max_power >= 1) a.c_[1][0] = 1;
  return a;
}

int AsymptoticSeries::s_order() const {
  int R = std::numeric_limits<int>::max();
  for (auto& c : c_) R = std::min(R, c.order());
  return R;
}

AsymptoticSeries& AsymptoticSeries::operator+=(const AsymptoticSeries& o) {
  c_.resize(std::min(c_.size(), o.c_.size()), PowerSeries());
  for (size_t r = 0; r < c_.size(); ++r) c_[r] += o.c_[r];
  return *this;
}

AsymptoticSeries& AsymptoticSeries::operator-=(const AsymptoticSeries& o) {
  c_.resize(std::min(c_.size(), o.c_.size()), PowerSeries());
  for (size_t r = 0; r < c_.size(); ++r) c_[r] -= o.c_[r];
  return *this;
}

AsymptoticSeries& AsymptoticSeries::operator*=(const AsymptoticSeries& o) {
  int R = std::min(max_power(), o.max_power());
  int S = std::min(s_order(), o.s_order());
  AsymptoticSeries out(R, S, c_[0].var());
  for (int i = 0; i <= R; ++i) {
    if (c_[i].is_zero()) continue;
    for (int j = 0; i + j <= R; ++j)
      if (!o.c_[j].is_zero()) out.c_[i + j] += c_[i] * o.c_[j];
  }
  *this = std::move(out);
  return *this;
}

AsymptoticSeries& AsymptoticSeries::operator*=(const PowerSeries& k) {
  for (auto& c : c_) c *= k;
  return *this;
}

int AsymptoticSeries::vanishing_through() const {
  int r = -1;
  while (r + 1 <= max_power() && c_[r + 1].is_zero()) ++r;
  return r;
}

AsymptoticSeries AsymptoticSeries::derivative_s() const {
  AsymptoticSeries out = *this;
  for (auto& c : out.c_) c = derivative(c);
  return out;
}

AsymptoticSeries offset_evaluate(const SelfSimilarFamily& F, int k, int max_power) {
  int g_needed = F.kind == SelfSimilarFamily::h_type ? max_power : max_power / 2;
  for (int g = 0; g <= g_needed; ++g)
    if (!F.coeffs.count(g))
      throw asymptotics_error(std::string("offset expansion to n^-") + std::to_string(max_power) + " needs " +
                              (F.kind == SelfSimilarFamily::h_type ? "u_" : "z_") + std::to_string(g));
  const int S = F.s_order();
  const std::string var = F.coeffs.begin()->second.var();
  AsymptoticSeries out(max_power, S, var);
  for (int g = 0; g <= g_needed; ++g) {
    PowerSeries e = F.coeffs.at(g).truncate(S);
    Rational p = F.prefactor(g);
    Rational weight = 1;  // k^m / m!
    for (int m = 0; F.grade(g) + m <= max_power; ++m) {
      if (m > 0) {
        e = self_similar_D(e, p);
        p -= 1;
        weight *= Rational(k, m);
      }
      if (weight == 0) break;
      out[F.grade(g) + m] += e * weight;
    }
  }
  return out;
}

namespace {

class Evaluator {
 public:
  Evaluator(const SelfSimilarFamily& h, const SelfSimilarFamily& f, int max_power)
      : h_(h), f_(f), R_(max_power), S_(std::min(h.s_order(), f.s_order())) {}

  AsymptoticSeries eval(const std::map<int, OperatorPolynomial>& sides) {
    AsymptoticSeries total(R_, S_);
    const PowerSeries s = PowerSeries::identity(S_);
    for (auto& [tp, poly] : sides) {
      AsymptoticSeries v = poly.evaluate<AsymptoticSeries>(
          [&](int k) -> const AsymptoticSeries& { return a(k); },
          [&](int k) -> const AsymptoticSeries& { return b(k); },
          [&](const Integer& c) { return AsymptoticSeries::scalar(PowerSeries::constant(Rational(c), S_), R_); });
      total += v * ipow(s, tp);
    }
    return total;
  }

  const AsymptoticSeries& a(int k) {
    auto it = a_.find(k);
    if (it == a_.end()) it = a_.emplace(k, offset_evaluate(h_, k, R_)).first;
    return it->second;
  }
  const AsymptoticSeries& b(int k) {
    auto it = b_.find(k);
    if (it == b_.end()) it = b_.emplace(k, offset_evaluate(f_, k, R_)).first;
    return it->second;
  }
  AsymptoticSeries inv_n() const { return AsymptoticSeries::inverse_n(R_, S_); }

 private:
  const SelfSimilarFamily& h_;
  const SelfSimilarFamily& f_;
  int R_, S_;
  std::map<int, AsymptoticSeries> a_, b_;
};

}  // namespace

std::pair<AsymptoticSeries, AsymptoticSeries> string_residual(const SelfSimilarFamily& h, const SelfSimilarFamily& f,
                                                              int max_power) {
  static const auto sys = difference_string_system(1);
  const auto& [diag, sub] = sys;
  Evaluator ev(h, f, max_power);
  AsymptoticSeries r_sub = ev.eval(sub.right);
  AsymptoticSeries r_diag = ev.eval(diag.right);
  AsymptoticSeries scalar = ev.inv_n();
  for (int r = 0; r <= scalar.max_power(); ++r) scalar[r] *= diag.inv_n;
  r_diag -= scalar;
  return {r_sub, r_diag};
}

std::pair<AsymptoticSeries, AsymptoticSeries> toda_residual(const SelfSimilarFamily& h, const SelfSimilarFamily& f,
                                                            int max_power) {
  static const auto sys = toda_system(1);
  const auto& [ta, tb] = sys;
  Evaluator ev(h, f, max_power);
  // left sides are -(1/n) d/ds of a[0], b2[0]
  AsymptoticSeries ra = ev.eval(ta.right) + ev.inv_n() * ev.a(0).derivative_s();
  AsymptoticSeries rb = ev.eval(tb.right) + ev.inv_n() * ev.b(0).derivative_s();
  return {ra, rb};
}

SeriesMatrix mat_mul(const SeriesMatrix& x, const SeriesMatrix& y) {
  SeriesMatrix r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
  return r;
}

StringSystemMatrix string_system_matrix(const PowerSeries& u0, const PowerSeries& z0) {
  int R = std::min(u0.order(), z0.order());
  PowerSeries s = PowerSeries::identity(R);
  PowerSeries diag = Rational(1) + Rational(6) * s * u0;
  PowerSeries f0w = self_similar_D(z0, 1);
  PowerSeries h0w = self_similar_D(u0, Rational(1, 2));
  StringSystemMatrix m;
  m.A = {{{diag, Rational(6) * s}, {Rational(6) * s * z0, diag}}};
  m.Ainv = {{{f0w, h0w}, {h0w * z0, f0w}}};
  return m;
}

namespace {

PowerSeries zero_series(int order) { return PowerSeries("s", order); }

std::vector<PowerSeries> padded(std::vector<PowerSeries> v, size_t n, int order) {
  while (v.size() < n) v.push_back(zero_series(order));
  return v;
}

// G with D_p G = -R coefficientwise; the resonant slot is left at zero
PowerSeries integrate_D(const PowerSeries& R, const Rational& p, int resonant, const std::string& what) {
  PowerSeries G = R;
  for (int k = 0; k <= R.order(); ++k) {
    Rational den = p + Rational(k, 2);
    if (den == 0) {
      if (k != resonant) throw asymptotics_error("unexpected resonance in " + what);
      if (R[k] != 0)
        throw asymptotics_error("solvability fails in " + what + " at s^" + std::to_string(k) + ": " +
                                to_string(R[k]));
      G[k] = 0;
    } else {
      G[k] = -R[k] / den;
    }
  }
  return G;
}

int first_nonzero(const PowerSeries& a) {
  auto v = a.valuation();
  return v ? *v : -1;
}

}  // namespace

HierarchySolution solve_hierarchy(int g_max, int order, const ResonanceSource& source) {
  if (g_max < 0) throw asymptotics_error("g_max must be non-negative");
  if (g_max > 0 && order < 4 * g_max)
    throw asymptotics_error("s-order " + std::to_string(order) + " cannot reach the resonance at s^" +
                            std::to_string(4 * g_max));
  auto eq = equilibrium_series(order);
  std::vector<PowerSeries> u{eq.u0}, z{eq.z0};
  const PowerSeries s = PowerSeries::identity(order);
  const PowerSeries one_6su0 = Rational(1) + Rational(6) * s * eq.u0;
  const auto M = string_system_matrix(eq.u0, eq.z0);
  std::vector<InjectedConstant> injected;

  auto residual = [&](const std::vector<PowerSeries>& uu, const std::vector<PowerSeries>& zz, int r) {
    auto H = SelfSimilarFamily::h(padded(uu, r + 1, order));
    auto F = SelfSimilarFamily::f(padded(zz, r / 2 + 1, order));
    auto [e1, e2] = string_residual(H, F, r);
    return std::make_pair(e1[r], e2[r]);
  };

  for (int g = 1; g <= g_max; ++g) {
    // order n^-2g: u_{2g-1} from the subdiagonal equation, the resonant
    // constant from the diagonal one
    {
      const int r = 2 * g;
      const int kres = 4 * g - 3;
      auto [R1, R2] = residual(u, z, r);
      PowerSeries G = integrate_D(R1, Rational(3, 2) - 2 * g, kres, "u_" + std::to_string(2 * g - 1));
      auto with_c = [&](const Rational& c) {
        PowerSeries Gc = G;
        if (kres <= order) Gc[kres] = c;
        auto uu = u;
        uu.push_back(Gc / one_6su0);
        return uu;
      };
      Rational c = 0;
      if (kres <= order) {
        PowerSeries d0 = residual(with_c(0), z, r).second;
        PowerSeries d1 = residual(with_c(1), z, r).second - d0;
        int idx = first_nonzero(d1);
        if (idx < 0) throw asymptotics_error("diagonal equation does not see the constant in u_" + std::to_string(2 * g - 1));
        c = -d0[idx] / d1[idx];
      }
      u = with_c(c);
      auto [c1, c2] = residual(u, z, r);
      if (!c1.is_zero() || !c2.is_zero())
        throw asymptotics_error("order n^-" + std::to_string(r) + " not solved by u_" + std::to_string(2 * g - 1));
    }
    // order n^-(2g+1): (u_2g, z_g) through the inverse of A
    {
      const int r = 2 * g + 1;
      const int k1 = 4 * g - 1, k2 = 4 * g - 2;
      auto [R1, R2] = residual(u, z, r);
      PowerSeries G1 = integrate_D(R1, Rational(1, 2) - 2 * g, k1, "u_" + std::to_string(2 * g));
      PowerSeries G2 = integrate_D(R2, Rational(1 - 2 * g), k2, "z_" + std::to_string(g));
      auto solve = [&](const Rational& a1, const Rational& a2) {
        PowerSeries g1 = G1, g2 = G2;
        g1[k1] = a1;
        g2[k2] = a2;
        PowerSeries U = M.Ainv[0][0] * g1 + M.Ainv[0][1] * g2;
        PowerSeries Z = M.Ainv[1][0] * g1 + M.Ainv[1][1] * g2;
        return std::make_pair(U, Z);
      };
      auto target = [&](int k) {
        auto v = source(g, k);
        if (!v)
          throw asymptotics_error("resonance value for z_" + std::to_string(g) + " at s^" + std::to_string(k) +
                                  " is not available");
        injected.push_back({'z', g, k, *v});
        return v->value;
      };
      Rational t_lo = target(k2), t_hi = target(4 * g);
      auto Z00 = solve(0, 0).second, Z10 = solve(1, 0).second - Z00, Z01 = solve(0, 1).second - Z00;
      // [Z10[k2] Z01[k2]; Z10[4g] Z01[4g]] (a1, a2) = targets - Z00
      Rational m11 = Z10[k2], m12 = Z01[k2], m21 = Z10[4 * g], m22 = Z01[4 * g];
      Rational b1 = t_lo - Z00[k2], b2 = t_hi - Z00[4 * g];
      Rational det = m11 * m22 - m12 * m21;
      if (det == 0) throw asymptotics_error("resonance constants of genus " + std::to_string(g) + " are not determined");
      Rational a1 = (b1 * m22 - m12 * b2) / det;
      Rational a2 = (m11 * b2 - m21 * b1) / det;
      auto [U, Z] = solve(a1, a2);
      u.push_back(U);
      z.push_back(Z);
      auto [c1, c2] = residual(u, z, r);
      if (!c1.is_zero() || !c2.is_zero())
        throw asymptotics_error("order n^-" + std::to_string(r) + " not solved by (u_" + std::to_string(2 * g) +
                                ", z_" + std::to_string(g) + ")");
    }
  }
  return {SelfSimilarFamily::h(u), SelfSimilarFamily::f(z), injected};
}

PowerSeries h2_f1_bracket(const PowerSeries& u0, const PowerSeries& z0) {
  int R = std::min(u0.order(), z0.order());
  PowerSeries s = PowerSeries::identity(R);
  PowerSeries h0w = self_similar_D(u0, Rational(1, 2));
  PowerSeries h0ww = self_similar_D(h0w, Rational(-1, 2));
  PowerSeries f0ww = self_similar_D(self_similar_D(z0, 1), 0);
  return Rational(13, 4) * s * h0w * h0w + Rational(5, 2) * s * u0 * h0ww + Rational(4) * s * f0ww +
         Rational(5, 12) * h0ww;
}

std::pair<PowerSeries, PowerSeries> h2_f1_closed(const PowerSeries& u0, const PowerSeries& z0) {
  PowerSeries X = h2_f1_bracket(u0, z0);
  PowerSeries h0w = self_similar_D(u0, Rational(1, 2));
  PowerSeries f0w = self_similar_D(z0, 1);
  return {-(f0w * X), -(h0w * z0 * X)};
}

PowerSeries z1_closed_in_z0(const PowerSeries& z0, int order) {
  PowerSeries z = z0.truncate(order);
  PowerSeries z2 = z * z;
  PowerSeries m1 = z2 - Rational(1);
  PowerSeries num = m1 * m1 * (z2 + Rational(9)) * z;
  PowerSeries den = ipow(z2 - Rational(3), 4);
  return Rational(1, 4) * num / den;
}

PowerSeries u1_from_u0(const PowerSeries& u0) { return Rational(1, 2) * self_similar_D(u0, Rational(1, 2)); }

std::pair<PowerSeries, PowerSeries> conservation_bracket(const PowerSeries& u0, const PowerSeries& z0,
                                                         const PowerSeries& u2, const PowerSeries& z1) {
  int R = std::min({u0.order(), z0.order(), u2.order(), z1.order()});
  PowerSeries U0 = u0.truncate(R), Z0 = z0.truncate(R);
  PowerSeries s = PowerSeries::identity(R);
  PowerSeries h0w = self_similar_D(U0, Rational(1, 2));
  PowerSeries f0w = self_similar_D(Z0, 1);
  PowerSeries lead = Rational(3) * (Rational(2) * Z0 + U0 * U0);
  PowerSeries solved = lead * (h0w * z1.truncate(R) - f0w * u2.truncate(R));
  PowerSeries diag = Rational(1) + Rational(6) * s * U0;
  PowerSeries detA = diag * diag - Rational(36) * s * s * Z0;
  PowerSeries reduced = lead * h2_f1_bracket(U0, Z0) / detA;
  return {solved, reduced};
}

bool is_even(const PowerSeries& a) {
  for (int k = 1; k <= a.order(); k += 2)
    if (a[k] != 0) return false;
  return true;
}

bool is_odd(const PowerSeries& a) {
  for (int k = 0; k <= a.order(); k += 2)
    if (a[k] != 0) return false;
  return true;
}

}  // namespace mapgen
