#pragma once

// Truncated power series with exact rational coefficients.
//
// A series carries its own truncation order R: coefficients 0..R are known,
// everything above is unknown (not zero). Binary operations keep the smaller
// order, so precision loss is always visible in the result.

#include <boost/multiprecision/gmp.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace mapgen {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

struct series_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational make_rational(long num, long den = 1);

// "p/q" with q > 0, always both parts, e.g. "-3/1".
std::string to_string(const Rational& q);
Rational rational_from_string(const std::string& text);

template <class T>
T to_real(const Rational& q) {
  if constexpr (std::is_floating_point_v<T>)
    return q.template convert_to<T>();
  else
    return T(q);
}

// exact root c^alpha, or nothing when it is irrational
std::optional<Rational> rational_power(const Rational& c, const Rational& alpha);

class PowerSeries {
 public:
  PowerSeries() : PowerSeries("s", 0) {}
  PowerSeries(std::string var, int order);
  PowerSeries(std::string var, std::vector<Rational> coeffs);

  static PowerSeries constant(const Rational& c, int order, std::string var = "s");
  static PowerSeries monomial(const Rational& c, int degree, int order, std::string var = "s");
  // the variable itself
  static PowerSeries identity(int order, std::string var = "s") { return monomial(1, 1, order, std::move(var)); }

  const std::string& var() const { return var_; }
  int order() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }

  // degree must lie within the truncation order
  const Rational& operator[](int d) const;
  Rational& operator[](int d);

  std::optional<int> valuation() const;
  bool is_zero() const;
  PowerSeries truncate(int order) const;
  PowerSeries with_var(std::string var) const;

  PowerSeries operator-() const;
  PowerSeries& operator+=(const PowerSeries& o);
  PowerSeries& operator-=(const PowerSeries& o);
  PowerSeries& operator*=(const PowerSeries& o);
  PowerSeries& operator/=(const PowerSeries& o);
  PowerSeries& operator*=(const Rational& k);

  friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
  friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
  friend PowerSeries operator*(PowerSeries a, const PowerSeries& b) { return a *= b; }
  friend PowerSeries operator/(PowerSeries a, const PowerSeries& b) { return a /= b; }
  friend PowerSeries operator*(PowerSeries a, const Rational& k) { return a *= k; }
  friend PowerSeries operator*(const Rational& k, PowerSeries a) { return a *= k; }
  friend PowerSeries operator+(PowerSeries a, const Rational& k) { a[0] += k; return a; }
  friend PowerSeries operator+(const Rational& k, PowerSeries a) { a[0] += k; return a; }
  friend PowerSeries operator-(PowerSeries a, const Rational& k) { a[0] -= k; return a; }
  friend PowerSeries operator-(const Rational& k, PowerSeries a) { a = -a; a[0] += k; return a; }

  // exact equality of variable, order and every coefficient
  friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
    return a.var_ == b.var_ && a.c_ == b.c_;
  }

  // Horner evaluation in double or an mpfr type
  template <class T>
  T evaluate(const T& x) const;

 private:
  void check_compatible(const PowerSeries& o) const;

  std::string var_;
  std::vector<Rational> c_;
};

enum class ArithOp { add, sub, mul, div };
PowerSeries series_arith(const PowerSeries& a, const PowerSeries& b, ArithOp op);

PowerSeries derivative(const PowerSeries& a);
PowerSeries antiderivative(const PowerSeries& a);
PowerSeries log(const PowerSeries& a);
PowerSeries exp(const PowerSeries& a);
PowerSeries pow(const PowerSeries& a, const Rational& alpha);
// a^n for integer n, negative allowed when a has a unit constant term
PowerSeries ipow(const PowerSeries& a, int n);

// F(z, s) = sum c[i,j] z^i s^j
class Bivariate {
 public:
  Bivariate& add(int zdeg, int sdeg, const Rational& c);
  // F(z(s), s) as a series with the order of z
  PowerSeries substitute(const PowerSeries& z) const;
  Bivariate dz() const;
  Rational at(const Rational& z, const Rational& s) const;
  const std::map<std::pair<int, int>, Rational>& terms() const { return t_; }

 private:
  std::map<std::pair<int, int>, Rational> t_;
};

PowerSeries implicit_solve(const Bivariate& F, const Rational& z_init, int order, std::string var = "s");

template <class T>
T PowerSeries::evaluate(const T& x) const {
  T acc(0);
  for (int d = order(); d >= 0; --d) acc = acc * x + to_real<T>(c_[d]);
  return acc;
}

}  // namespace mapgen
