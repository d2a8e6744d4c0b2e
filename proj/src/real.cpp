#include "mapgen/real.hpp"

#include <sstream>

namespace mapgen {

Real pi_real() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

Real pow10(int e) { return boost::multiprecision::pow(Real(10), e); }

Complex conj(const Complex& z) { return {z.re, Real(-z.im)}; }

Real abs(const Complex& z) { return boost::multiprecision::hypot(z.re, z.im); }

Complex exp(const Complex& z) {
  Real m = boost::multiprecision::exp(z.re);
  return {Real(m * boost::multiprecision::cos(z.im)), Real(m * boost::multiprecision::sin(z.im))};
}

Complex log(const Complex& z) {
  return {Real(boost::multiprecision::log(abs(z))), Real(boost::multiprecision::atan2(z.im, z.re))};
}

Complex polar(const Real& r, const Real& theta) {
  return {Real(r * boost::multiprecision::cos(theta)), Real(r * boost::multiprecision::sin(theta))};
}

std::string str(const Real& x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << std::scientific << x;
  return os.str();
}

QuadratureRule tanh_sinh_rule(const Real& a, const Real& b, int level) {
  using namespace boost::multiprecision;
  const Real half_pi = pi_real() / 2;
  const Real h = ldexp(Real(1), -level);
  const Real cut = pow10(-static_cast<int>(Real::default_precision()) - 10);
  const Real mid = (a + b) / 2, rad = (b - a) / 2;
  QuadratureRule rule;
  for (long i = 0;; ++i) {
    Real tau = h * i;
    Real u = half_pi * sinh(tau);
    Real ch = cosh(u);
    Real w = h * half_pi * cosh(tau) / (ch * ch);
    // 1 - y computed stably so nodes crowd the ends without collapsing onto them
    Real one_minus = 1 / (exp(2 * u) + 1) * 2;
    if (w < cut || one_minus == 0) break;
    if (i == 0) {
      rule.x.push_back(mid);
      rule.w.push_back(rad * w);
      continue;
    }
    rule.x.push_back(Real(b - rad * one_minus));
    rule.w.push_back(rad * w);
    rule.x.push_back(Real(a + rad * one_minus));
    rule.w.push_back(rad * w);
  }
  return rule;
}

Real integrate(const std::function<Real(const Real&)>& f, const Real& a, const Real& b, const Real& tol,
               int max_level) {
  Real prev = 0;
  for (int level = 2; level <= max_level; ++level) {
    auto rule = tanh_sinh_rule(a, b, level);
    Real sum = 0;
    for (size_t i = 0; i < rule.x.size(); ++i) sum += rule.w[i] * f(rule.x[i]);
    if (level > 2 && boost::multiprecision::abs(sum - prev) < tol) return sum;
    prev = sum;
  }
  throw std::runtime_error("tanh-sinh quadrature did not reach tolerance " + str(tol, 5));
}

}  // namespace mapgen
