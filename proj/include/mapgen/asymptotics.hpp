#pragma once

// Continuum limit of the trivalent (valence 3) recursion coefficients at x = 1:
//   a_{n+k} ~ sum_g h_g(s, w) n^-g,   h_g = w^(1/2-g) u_g(s w^(1/2))
//   b2_{n+k} ~ sum_g f_g(s, w) n^-2g, f_g = w^(1-2g) z_g(s w^(1/2))
// with w = 1 + k/n. Every w-derivative at w = 1 is reduced to the operator
// D_p e = p e + (1/2) s e', so all work happens on one-variable series in s.

#include "mapgen/series.hpp"

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mapgen {

struct asymptotics_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

PowerSeries self_similar_D(const PowerSeries& e, const Rational& p);
// k-fold w-derivative of w^p e(s w^(1/2)) at w = 1, and the new power p - k
std::pair<PowerSeries, Rational> self_similar_derivative(const PowerSeries& e, const Rational& p, int k);

struct SelfSimilarFamily {
  enum Kind { h_type, f_type } kind;
  std::map<int, PowerSeries> coeffs;

  Rational prefactor(int g) const;  // 1/2 - g or 1 - 2g
  int grade(int g) const;           // power of 1/n that coefficient g carries
  int s_order() const;              // smallest truncation order among coefficients

  static SelfSimilarFamily h(std::vector<PowerSeries> u);
  static SelfSimilarFamily f(std::vector<PowerSeries> z);
};

// sum_r c[r] n^-r, r = 0..max_power
class AsymptoticSeries {
 public:
  AsymptoticSeries(int max_power, int s_order, std::string var = "s");
  static AsymptoticSeries scalar(const PowerSeries& c, int max_power);
  static AsymptoticSeries inverse_n(int max_power, int s_order, std::string var = "s");

  int max_power() const { return static_cast<int>(c_.size()) - 1; }
  int s_order() const;
  const PowerSeries& operator[](int r) const { return c_.at(r); }
  PowerSeries& operator[](int r) { return c_.at(r); }

  AsymptoticSeries& operator+=(const AsymptoticSeries& o);
  AsymptoticSeries& operator-=(const AsymptoticSeries& o);
  AsymptoticSeries& operator*=(const AsymptoticSeries& o);
  AsymptoticSeries& operator*=(const PowerSeries& k);
  friend AsymptoticSeries operator+(AsymptoticSeries a, const AsymptoticSeries& b) { return a += b; }
  friend AsymptoticSeries operator-(AsymptoticSeries a, const AsymptoticSeries& b) { return a -= b; }
  friend AsymptoticSeries operator*(AsymptoticSeries a, const AsymptoticSeries& b) { return a *= b; }
  friend AsymptoticSeries operator*(AsymptoticSeries a, const PowerSeries& k) { return a *= k; }

  // highest r such that c[0..r] all vanish, or -1
  int vanishing_through() const;
  AsymptoticSeries derivative_s() const;

 private:
  std::vector<PowerSeries> c_;
};

AsymptoticSeries offset_evaluate(const SelfSimilarFamily& F, int k, int max_power);

// residuals (right minus left) of the two trivalent string equations:
// first the subdiagonal one divided by b2[1], then the diagonal one
std::pair<AsymptoticSeries, AsymptoticSeries> string_residual(const SelfSimilarFamily& h, const SelfSimilarFamily& f,
                                                              int max_power);
// residuals of the trivalent Toda equations for a_n and b2_n
std::pair<AsymptoticSeries, AsymptoticSeries> toda_residual(const SelfSimilarFamily& h, const SelfSimilarFamily& f,
                                                            int max_power);

// 2x2 matrices of series
using SeriesMatrix = std::array<std::array<PowerSeries, 2>, 2>;
SeriesMatrix mat_mul(const SeriesMatrix& x, const SeriesMatrix& y);

struct StringSystemMatrix {
  SeriesMatrix A;     // [[1+6s u0, 6s], [6s z0, 1+6s u0]]
  SeriesMatrix Ainv;  // [[f0w, h0w], [h0w z0, f0w]]
};
StringSystemMatrix string_system_matrix(const PowerSeries& u0, const PowerSeries& z0);

struct ResonanceValue {
  Rational value;
  std::string provenance;
};
// asked for the s^order coefficient of z_g
using ResonanceSource = std::function<std::optional<ResonanceValue>(int g, int order)>;

struct InjectedConstant {
  char family;  // 'z'
  int g, order;
  ResonanceValue value;
};

struct HierarchySolution {
  SelfSimilarFamily h, f;
  std::vector<InjectedConstant> injected;
};

// u_0..u_{2 g_max}, z_0..z_{g_max} through s^order
HierarchySolution solve_hierarchy(int g_max, int order, const ResonanceSource& source);

// u2 and z1 from leading-order data alone
std::pair<PowerSeries, PowerSeries> h2_f1_closed(const PowerSeries& u0, const PowerSeries& z0);
// the bracket X with u2 = -f0w X, z1 = -h0w z0 X
PowerSeries h2_f1_bracket(const PowerSeries& u0, const PowerSeries& z0);
PowerSeries z1_closed_in_z0(const PowerSeries& z0, int order);

// u_1 = (1/2) D_{1/2} u0
PowerSeries u1_from_u0(const PowerSeries& u0);

// 3 (2 f0 + h0^2)(h0w f1 - f0w h2) at w = 1, from solved data and from
// leading-order data through the bracket
std::pair<PowerSeries, PowerSeries> conservation_bracket(const PowerSeries& u0, const PowerSeries& z0,
                                                         const PowerSeries& u2, const PowerSeries& z1);

// true when every coefficient in the wrong parity class vanishes
bool is_even(const PowerSeries& a);
bool is_odd(const PowerSeries& a);

}  // namespace mapgen
