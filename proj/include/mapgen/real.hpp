#pragma once

// Runtime-precision reals, a minimal complex type over them, and a
// double-exponential quadrature rule whose nodes can be reused across many
// integrands on the same interval.

#include <boost/multiprecision/mpfr.hpp>

#include <functional>
#include <string>
#include <vector>

namespace mapgen {

using Real = boost::multiprecision::mpfr_float;

// Sets the default mpfr precision (decimal digits) for the enclosing scope.
class Precision {
 public:
  explicit Precision(unsigned digits) : saved_(Real::default_precision()) { Real::default_precision(digits); }
  ~Precision() { Real::default_precision(saved_); }
  Precision(const Precision&) = delete;
  Precision& operator=(const Precision&) = delete;

 private:
  unsigned saved_;
};

Real pi_real();
Real pow10(int e);

struct Complex {
  Real re, im;

  Complex() : re(0), im(0) {}
  Complex(const Real& r) : re(r), im(0) {}  // NOLINT: implicit from real is intended
  Complex(const Real& r, const Real& i) : re(r), im(i) {}
  Complex(int r) : re(r), im(0) {}  // NOLINT

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    Real d = o.re * o.re + o.im * o.im;
    Real r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = r;
    return *this;
  }
  Complex operator-() const { return {Real(-re), Real(-im)}; }
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
};

Complex conj(const Complex& z);
Real abs(const Complex& z);
Complex exp(const Complex& z);
Complex log(const Complex& z);
Complex polar(const Real& r, const Real& theta);
std::string str(const Real& x, int digits = 20);

// tanh-sinh nodes on [a, b]
struct QuadratureRule {
  std::vector<Real> x;
  std::vector<Real> w;
};

// Step h = 2^-level; the tail is cut once weights drop below 10^-(digits+10).
QuadratureRule tanh_sinh_rule(const Real& a, const Real& b, int level);

// Refines the level until two successive estimates agree to tol.
Real integrate(const std::function<Real(const Real&)>& f, const Real& a, const Real& b, const Real& tol,
               int max_level = 12);

}  // namespace mapgen
