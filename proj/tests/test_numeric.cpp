#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mapgen/asymptotics.hpp"
#include "mapgen/equilibrium.hpp"
#include "mapgen/numeric.hpp"

using namespace mapgen;
using boost::multiprecision::abs;
using boost::multiprecision::log;
using boost::multiprecision::sqrt;

namespace {

const unsigned D = 40;

Real small(int digits) { return pow10(-digits); }

}  // namespace

TEST_CASE("Gaussian moments on the real line") {
  Precision p(D);
  const Real N(16);
  MomentTable m = contour_moments(default_contour(Real(0), N, D), 12);
  Real c0 = sqrt(2 * pi_real() / N);
  CHECK(abs(m.c[0].re - c0) < small(D - 2));
  CHECK(abs(m.c[2].re - c0 / N) < small(D - 2));
  for (int k = 1; k <= 11; k += 2) CHECK(abs(m.c[k]) < small(D - 2));
  for (int k = 0; k + 2 <= 12; k += 2) CHECK(abs(m.c[k + 2].re / m.c[k].re - Real(k + 1) / N) < small(D - 4));
  CHECK(m.doubling_change < small(D / 2));
  CHECK(m.end_decay < small(D));
}

TEST_CASE("cubic weight moments") {
  Precision p(D);
  ContourSpec spec = default_contour(Real("0.03"), Real(16), D);
  MomentTable m = contour_moments(spec, 20);
  CHECK(abs(m.c[1]) > Real("1e-4"));
  for (auto& c : m.c) CHECK(boost::multiprecision::isfinite(c.re));
  // the two conjugate contours average to real moments
  for (auto& c : m.c) CHECK(abs(c.im) < small(D));

  ContourSpec up = spec, down = spec;
  up.orientation = ContourSpec::upper;
  down.orientation = ContourSpec::lower;
  MomentTable mu = contour_moments(up, 20), md = contour_moments(down, 20);
  for (int k = 0; k <= 20; ++k) CHECK(abs(mu.c[k] - conj(md.c[k])) < small(D - 2) * abs(mu.c[k]));
}

TEST_CASE("contour independence") {
  Precision p(D);
  ContourSpec a = default_contour(Real("0.03"), Real(12), D);
  ContourSpec b = a;
  b.kink = a.kink * Real("0.6");
  b.angle = pi_real() * Real("0.7");
  MomentTable ma = contour_moments(a, 24), mb = contour_moments(b, 24);
  for (int k = 0; k <= 24; ++k) CHECK(abs(ma.c[k] - mb.c[k]) < small(D / 2) * abs(ma.c[k]));
}

TEST_CASE("inadmissible contours are configuration errors") {
  Precision p(D);
  ContourSpec spec = default_contour(Real("0.03"), Real(12), D);
  spec.angle = pi_real() / 2;  // cos(3 theta) = 0: no decay along the ray
  CHECK_THROWS_AS(contour_moments(spec, 8), numeric_error);
  ContourSpec right = default_contour(Real("0.03"), Real(12), D);
  right.kink = 1;
  CHECK_THROWS_AS(contour_moments(right, 8), numeric_error);
}

TEST_CASE("Hermite recurrence at t3 = 0") {
  Precision p(D);
  const Real N(10);
  DualRecurrence d = recurrence_extract(default_contour(Real(0), N, D), 16);
  for (auto* t : {&d.hankel, &d.stieltjes})
    for (int n = 0; n <= 16; ++n) {
      CHECK(abs(t->a[n]) < small(D - 14));
      if (n > 0) CHECK(abs(t->b2[n] - Complex(Real(Real(n) / N))) < small(D - 14));
    }
  CHECK(!d.hankel.gap);
}

TEST_CASE("Hankel and Stieltjes routes agree") {
  Precision p(50);
  DualRecurrence d = recurrence_extract(default_contour(Real("0.03"), Real(24), 50), 24);
  CHECK(d.agreement_digits >= 30);
  CHECK(d.stieltjes.derivation == "stieltjes");
  CHECK(d.hankel.derivation == "hankel");
  CHECK(d.stieltjes.max_imag < small(40));
}

TEST_CASE("vanishing Hankel determinant truncates") {
  Precision p(D);
  std::vector<Complex> c{Complex(0), Complex(1), Complex(0), Complex(1), Complex(0), Complex(1)};
  HankelChain h = hankel_determinants(c, 3);
  REQUIRE(h.gap.has_value());
  CHECK(*h.gap == 1);
  CHECK(h.det.size() == 1);
}

TEST_CASE("mirror coupling") {
  Precision p(D);
  DualRecurrence plus = recurrence_extract(default_contour(Real("0.03"), Real(8), D), 8);
  DualRecurrence minus = recurrence_extract(default_contour(Real("-0.03"), Real(8), D), 8);
  for (int n = 0; n <= 8; ++n) {
    CHECK(abs(plus.stieltjes.a[n] + minus.stieltjes.a[n]) < small(D - 6));
    CHECK(abs(plus.stieltjes.b2[n] - minus.stieltjes.b2[n]) < small(D - 6));
  }
}

TEST_CASE("continuum values match the exact series") {
  Precision p(D);
  const Real t("0.01");
  ContinuumValues v = continuum_values(t);
  EquilibriumSeries eq = equilibrium_series(24);
  auto [u2, z1] = h2_f1_closed(eq.u0, eq.z0);
  // series truncated at s^24, radius s_c
  Real tol = 100 * boost::multiprecision::pow(t / critical_coupling(), 25);
  CHECK(abs(v.u0 - eq.u0.evaluate(t)) < tol);
  CHECK(abs(v.z0 - eq.z0.evaluate(t)) < tol);
  CHECK(abs(v.u1 - u1_from_u0(eq.u0).evaluate(t)) < tol);
  CHECK(abs(v.u2 - u2.evaluate(t)) < tol);
  CHECK(abs(v.z1 - z1.evaluate(t)) < tol);
  CHECK(abs(v.z1 - v.z1_closed) < small(D - 5));
  ContinuumValues g = continuum_values(Real(0));
  CHECK(g.u2 == 0);
  CHECK(g.z1 == 0);
}

TEST_CASE("decay fit") {
  Precision p(D);
  std::vector<int> n{8, 12, 16, 24};
  std::vector<Real> e;
  for (int k : n) e.push_back(Real(7) / boost::multiprecision::pow(Real(k), 4));
  CHECK(abs(fit_decay_exponent(n, e) - 4) < small(D - 5));
  CHECK_THROWS_AS(fit_decay_exponent({8}, {Real(1)}), numeric_error);
}

TEST_CASE("error ratios between n and 2n") {
  Precision p(D);
  ComparisonReport rep = asymptotic_comparison(Real("0.03"), {8, 16}, D);
  REQUIRE(rep.rows.size() == 2);
  Real rb = rep.rows[0].b_error / rep.rows[1].b_error;
  Real ra = rep.rows[0].a_error / rep.rows[1].a_error;
  CHECK(abs(rb - 16) < 2);
  CHECK(abs(ra - 8) < Real("1.5"));
  // b2 at n = N sits next to z0 + z1/n^2
  ContinuumValues v = continuum_values(Real("0.03"));
  CHECK(abs(rep.rows[1].b2 - v.z0) < Real("1e-3"));
  CHECK(rep.rows[1].b_error < Real("1e-8"));
}

TEST_CASE("Gaussian comparison is exact up to roundoff") {
  Precision p(D);
  ComparisonReport rep = asymptotic_comparison(Real(0), {6, 10}, D);
  for (auto& r : rep.rows) {
    CHECK(r.b_error < small(D - 6));
    CHECK(r.a_error < small(D - 6));
  }
}

TEST_CASE("Hirota identity") {
  Precision p(D);
  for (auto& r : hirota_check(Real(0), Real(12), 1, 10, D)) {
    CHECK(abs(r.lhs) < small(D - 10));
    CHECK(abs(r.rhs) < small(D - 10));
  }
  auto rows = hirota_check(Real("0.03"), Real(16), 12, 20, D);
  CHECK(rows.size() == 9);
  for (auto& r : rows) CHECK(r.residual < small(D / 2));
  // at n = N the second difference approaches log z0
  ContinuumValues v = continuum_values(Real("0.03"));
  for (auto& r : rows)
    if (r.n == 16) CHECK(abs(r.lhs - log(v.z0) - v.z1 / v.z0 / 256) < Real("1e-7"));
}
