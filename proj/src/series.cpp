#include "mapgen/series.hpp"

#include <algorithm>

namespace mapgen {

Rational make_rational(long num, long den) { return Rational(num) / Rational(den); }

std::string to_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational rational_from_string(const std::string& text) {
  auto integer = [&](const std::string& part) {
    try {
      return Integer(part);
    } catch (const std::runtime_error&) {
      throw series_error("not a rational: \"" + text + "\"");
    }
  };
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(integer(text));
  Integer p = integer(text.substr(0, slash)), q = integer(text.substr(slash + 1));
  if (q == 0) throw series_error("zero denominator in \"" + text + "\"");
  return Rational(p) / Rational(q);
}

namespace {

std::optional<Integer> exact_root(const Integer& x, unsigned long k) {
  if (x < 0) {
    if (k % 2 == 0) return std::nullopt;
    auto r = exact_root(-x, k);
    if (!r) return std::nullopt;
    return Integer(-*r);
  }
  Integer r;
  mpz_root(r.backend().data(), x.backend().data(), k);
  Integer back = boost::multiprecision::pow(r, k);
  if (back != x) return std::nullopt;
  return r;
}

Rational ipow_rational(const Rational& q, long n) {
  Rational base = n < 0 ? Rational(1) / q : q;
  unsigned long e = n < 0 ? -n : n;
  return Rational(boost::multiprecision::pow(numerator(base), e)) /
         Rational(boost::multiprecision::pow(denominator(base), e));
}

}  // namespace

std::optional<Rational> rational_power(const Rational& c, const Rational& alpha) {
  if (c == 0) {
    if (alpha > 0) return Rational(0);
    return std::nullopt;
  }
  const Integer& p = numerator(alpha);
  const Integer& q = denominator(alpha);
  if (q > 1000000 || abs(p) > 1000000) return std::nullopt;
  auto k = q.convert_to<unsigned long>();
  auto num = exact_root(numerator(c), k);
  auto den = exact_root(denominator(c), k);
  if (!num || !den) return std::nullopt;
  return ipow_rational(Rational(*num) / Rational(*den), p.convert_to<long>());
}

PowerSeries::PowerSeries(std::string var, int order) : var_(std::move(var)) {
  if (order < 0) throw series_error("negative truncation order");
  c_.assign(order + 1, Rational(0));
}

PowerSeries::PowerSeries(std::string var, std::vector<Rational> coeffs)
    : var_(std::move(var)), c_(std::move(coeffs)) {
  if (c_.empty()) throw series_error("a series needs at least its constant term");
}

PowerSeries PowerSeries::constant(const Rational& c, int order, std::string var) {
  PowerSeries r(std::move(var), order);
  r.c_[0] = c;
  return r;
}

PowerSeries PowerSeries::monomial(const Rational& c, int degree, int order, std::string var) {
  PowerSeries r(std::move(var), order);
  if (degree <= order) r.c_[degree] = c;
  return r;
}

const Rational& PowerSeries::operator[](int d) const {
  if (d < 0 || d > order())
    throw series_error("degree " + std::to_string(d) + " outside truncation order " + std::to_string(order()));
  return c_[d];
}

Rational& PowerSeries::operator[](int d) {
  if (d < 0 || d > order())
    throw series_error("degree " + std::to_string(d) + " outside truncation order " + std::to_string(order()));
  return c_[d];
}

std::optional<int> PowerSeries::valuation() const {
  for (int d = 0; d <= order(); ++d)
    if (c_[d] != 0) return d;
  return std::nullopt;
}

bool PowerSeries::is_zero() const { return !valuation(); }

PowerSeries PowerSeries::truncate(int order) const {
  if (order > this->order())
    throw series_error("cannot extend a series beyond its truncation order");
  return PowerSeries(var_, std::vector<Rational>(c_.begin(), c_.begin() + order + 1));
}

PowerSeries PowerSeries::with_var(std::string var) const { return PowerSeries(std::move(var), c_); }

void PowerSeries::check_compatible(const PowerSeries& o) const {
  if (var_ != o.var_) throw series_error("series in different variables: " + var_ + " vs " + o.var_);
}

PowerSeries PowerSeries::operator-() const {
  PowerSeries r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& o) {
  check_compatible(o);
  c_.resize(std::min(c_.size(), o.c_.size()));
  for (size_t d = 0; d < c_.size(); ++d) c_[d] += o.c_[d];
  return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& o) {
  check_compatible(o);
  c_.resize(std::min(c_.size(), o.c_.size()));
  for (size_t d = 0; d < c_.size(); ++d) c_[d] -= o.c_[d];
  return *this;
}

PowerSeries& PowerSeries::operator*=(const PowerSeries& o) {
  check_compatible(o);
  int R = std::min(order(), o.order());
  std::vector<Rational> r(R + 1);
  for (int i = 0; i <= R; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; i + j <= R; ++j)
      if (o.c_[j] != 0) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  return *this;
}

PowerSeries& PowerSeries::operator/=(const PowerSeries& o) {
  check_compatible(o);
  if (o.c_[0] == 0) throw series_error("division by a series with zero constant term");
  int R = std::min(order(), o.order());
  std::vector<Rational> q(R + 1);
  Rational inv = Rational(1) / o.c_[0];
  for (int n = 0; n <= R; ++n) {
    Rational acc = c_[n];
    for (int k = 1; k <= n; ++k)
      if (o.c_[k] != 0) acc -= o.c_[k] * q[n - k];
    q[n] = acc * inv;
  }
  c_ = std::move(q);
  return *this;
}

PowerSeries& PowerSeries::operator*=(const Rational& k) {
  for (auto& x : c_) x *= k;
  return *this;
}

PowerSeries series_arith(const PowerSeries& a, const PowerSeries& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  throw series_error("unknown arithmetic op");
}

PowerSeries derivative(const PowerSeries& a) {
  if (a.order() == 0) throw series_error("derivative of an order-0 series has no known coefficients");
  std::vector<Rational> r(a.order());
  for (int d = 1; d <= a.order(); ++d) r[d - 1] = a[d] * d;
  return PowerSeries(a.var(), std::move(r));
}

PowerSeries antiderivative(const PowerSeries& a) {
  std::vector<Rational> r(a.order() + 2);
  for (int d = 0; d <= a.order(); ++d) r[d + 1] = a[d] / (d + 1);
  return PowerSeries(a.var(), std::move(r));
}

PowerSeries log(const PowerSeries& a) {
  if (a[0] != 1) throw series_error("log needs constant term 1, got " + to_string(a[0]));
  if (a.order() == 0) return PowerSeries(a.var(), 0);
  return antiderivative(derivative(a) / a.truncate(a.order() - 1));
}

PowerSeries exp(const PowerSeries& a) {
  if (a[0] != 0) throw series_error("exp needs zero constant term, got " + to_string(a[0]));
  int R = a.order();
  PowerSeries b(a.var(), R);
  b[0] = 1;
  // b' = a' b
  for (int n = 1; n <= R; ++n) {
    Rational acc = 0;
    for (int k = 1; k <= n; ++k)
      if (a[k] != 0) acc += a[k] * k * b[n - k];
    b[n] = acc / n;
  }
  return b;
}

PowerSeries pow(const PowerSeries& a, const Rational& alpha) {
  auto lead = rational_power(a[0], alpha);
  if (!lead || a[0] == 0)
    throw series_error("constant term " + to_string(a[0]) + " has no rational power " + to_string(alpha));
  int R = a.order();
  PowerSeries b(a.var(), R);
  b[0] = *lead;
  // a b' = alpha a' b
  for (int n = 1; n <= R; ++n) {
    Rational acc = 0;
    for (int k = 1; k <= n; ++k)
      if (a[k] != 0) acc += (alpha * k - (n - k)) * a[k] * b[n - k];
    b[n] = acc / (a[0] * n);
  }
  return b;
}

PowerSeries ipow(const PowerSeries& a, int n) {
  if (n < 0) return PowerSeries::constant(1, a.order(), a.var()) / ipow(a, -n);
  PowerSeries r = PowerSeries::constant(1, a.order(), a.var());
  PowerSeries base = a;
  while (n) {
    if (n & 1) r *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return r;
}

Bivariate& Bivariate::add(int zdeg, int sdeg, const Rational& c) {
  auto& slot = t_[{zdeg, sdeg}];
  slot += c;
  if (slot == 0) t_.erase({zdeg, sdeg});
  return *this;
}

PowerSeries Bivariate::substitute(const PowerSeries& z) const {
  int R = z.order();
  int zmax = 0;
  for (auto& [k, c] : t_) zmax = std::max(zmax, k.first);
  std::vector<PowerSeries> zp{PowerSeries::constant(1, R, z.var())};
  for (int i = 1; i <= zmax; ++i) zp.push_back(zp.back() * z);
  PowerSeries out(z.var(), R);
  for (auto& [k, c] : t_)
    if (k.second <= R) out += PowerSeries::monomial(c, k.second, R, z.var()) * zp[k.first];
  return out;
}

Bivariate Bivariate::dz() const {
  Bivariate d;
  for (auto& [k, c] : t_)
    if (k.first > 0) d.add(k.first - 1, k.second, c * k.first);
  return d;
}

Rational Bivariate::at(const Rational& z, const Rational& s) const {
  Rational acc = 0;
  for (auto& [k, c] : t_) acc += c * ipow_rational(z, k.first) * ipow_rational(s, k.second);
  return acc;
}

PowerSeries implicit_solve(const Bivariate& F, const Rational& z_init, int order, std::string var) {
  if (F.at(z_init, 0) != 0) throw series_error("seed " + to_string(z_init) + " is not a root of F(z, 0)");
  Bivariate Fz = F.dz();
  if (Fz.at(z_init, 0) == 0) throw series_error("degenerate root: dF/dz vanishes at the seed");
  PowerSeries z = PowerSeries::constant(z_init, 0, var);
  int known = 0;  // z is exact through s^known
  while (known < order) {
    int next = std::min(order, 2 * known + 1);
    PowerSeries zz(var, next);
    for (int d = 0; d <= known; ++d) zz[d] = z[d];
    zz -= F.substitute(zz) / Fz.substitute(zz);
    z = zz;
    known = next;
  }
  return z;
}

}  // namespace mapgen
