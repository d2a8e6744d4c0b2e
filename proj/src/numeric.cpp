#include "mapgen/numeric.hpp"

#include "mapgen/equilibrium.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>

namespace mapgen {

namespace {

constexpr unsigned kGuardDigits = 10;

Complex potential(const Complex& x, const Real& t3) {
  Complex x2 = x * x;
  return x2 * Complex(Real(0.5)) + Complex(t3) * x2 * x;
}

Complex weight(const Complex& x, const ContourSpec& spec) { return exp(-(Complex(spec.N) * potential(x, spec.t3))); }

// log of the largest |x^k e^{-NV(x)}| over k <= k_max
Real log_integrand_bound(const Complex& x, const ContourSpec& spec, int k_max) {
  using boost::multiprecision::log;
  Real mod = abs(x);
  Real lw = -(spec.N * potential(x, spec.t3).re);
  if (mod > 1) lw += k_max * log(mod);
  return lw;
}

// walks outwards along x(r) until the integrand is negligible for every k <= k_max
Real truncation_radius(const std::function<Complex(const Real&)>& path, const ContourSpec& spec, int k_max,
                       const Real& log_floor, const char* what) {
  Real step = 0.25;
  Real r = step;
  for (int i = 0; i < 100000; ++i, r += step) {
    if (log_integrand_bound(path(r), spec, k_max) < log_floor &&
        log_integrand_bound(path(Real(2 * r)), spec, k_max) < log_floor)
      return r;
    if (i % 40 == 39) step *= 2;
  }
  throw numeric_error(std::string("integrand does not decay along the ") + what + " of the contour");
}

void append_segment(DiscreteMeasure& m, const std::function<Complex(const Real&)>& path, const Complex& dpath,
                    const Real& a, const Real& b, int level, const Real& scale) {
  auto rule = tanh_sinh_rule(a, b, level);
  for (size_t i = 0; i < rule.x.size(); ++i) {
    m.x.push_back(path(rule.x[i]));
    m.w.push_back(dpath * Complex(Real(rule.w[i] * scale)));
  }
}

Real max_relative_change(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  Real worst = 0;
  for (size_t k = 0; k < a.size(); ++k) {
    // odd moments can cancel to nothing; measure them against their neighbours
    Real scale = abs(b[k]);
    if (k > 0 && k + 1 < b.size()) scale = std::max(scale, Real(boost::multiprecision::sqrt(abs(b[k - 1]) * abs(b[k + 1]))));
    if (scale == 0) scale = abs(b[0]);
    Real d = abs(a[k] - b[k]) / scale;
    if (d > worst) worst = d;
  }
  return worst;
}

Real log10_of(const Real& x) {
  if (x == 0) return Real(1000);
  return -boost::multiprecision::log10(x);
}

// three-term truncated Taylor jets in a perturbation of s
struct Jet {
  std::vector<Real> c;

  explicit Jet(size_t n = 3) : c(n, Real(0)) {}
  static Jet constant(const Real& v, size_t n) {
    Jet j(n);
    j.c[0] = v;
    return j;
  }
  size_t size() const { return c.size(); }
  Jet derivative() const {
    Jet d(c.size() - 1);
    for (size_t k = 1; k < c.size(); ++k) d.c[k - 1] = c[k] * static_cast<long>(k);
    return d;
  }
  friend Jet operator+(const Jet& a, const Jet& b) {
    Jet r(std::min(a.size(), b.size()));
    for (size_t k = 0; k < r.size(); ++k) r.c[k] = a.c[k] + b.c[k];
    return r;
  }
  friend Jet operator-(const Jet& a, const Jet& b) {
    Jet r(std::min(a.size(), b.size()));
    for (size_t k = 0; k < r.size(); ++k) r.c[k] = a.c[k] - b.c[k];
    return r;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(std::min(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i)
      for (size_t j = 0; i + j < r.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
  }
  friend Jet operator*(const Real& k, const Jet& a) {
    Jet r = a;
    for (auto& v : r.c) v *= k;
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet r(std::min(a.size(), b.size()));
    for (size_t k = 0; k < r.size(); ++k) {
      Real acc = a.c[k];
      for (size_t j = 1; j <= k; ++j) acc -= b.c[j] * r.c[k - j];
      r.c[k] = acc / b.c[0];
    }
    return r;
  }
};

// p e + (1/2) s e'
Jet self_similar(const Jet& e, const Real& p, const Jet& s) { return p * e + Real(0.5) * (s * e.derivative()); }

template <class F>
Jet newton_jet(F&& residual_and_slope, const Real& seed, size_t n) {
  Jet x = Jet::constant(seed, n);
  for (int it = 0; it < 6; ++it) {
    auto [f, df] = residual_and_slope(x);
    x = x - f / df;
  }
  return x;
}

}  // namespace

ContourSpec default_contour(const Real& t3, const Real& N, unsigned digits) {
  ContourSpec spec;
  spec.t3 = t3;
  spec.N = N;
  spec.digits = digits;
  if (t3 != 0) {
    using boost::multiprecision::abs;
    spec.kink = -1 / (3 * abs(t3));
    spec.angle = 2 * pi_real() / 3;
  }
  return spec;
}

DiscreteMeasure discretise(const ContourSpec& spec_in, int k_max, int level) {
  using boost::multiprecision::abs;
  using boost::multiprecision::cos;
  using boost::multiprecision::log;
  using boost::multiprecision::sqrt;

  if (spec_in.N <= 0) throw numeric_error("N must be positive");
  // negative t3 is the mirror image of positive t3
  const bool mirrored = spec_in.t3 < 0;
  ContourSpec spec = spec_in;
  spec.t3 = abs(spec_in.t3);

  const Real c0_scale = sqrt(2 * pi_real() / spec.N);
  const Real log_floor = log(c0_scale) - (spec.digits + kGuardDigits) * log(Real(10));
  const Real core = 4 / sqrt(spec.N);

  DiscreteMeasure m;
  m.level = level;
  auto real_path = [](const Real& r) { return Complex(r); };

  if (spec.t3 == 0) {
    Real L = truncation_radius(real_path, spec, k_max, log_floor, "real axis");
    m.end_decay = exp(log_integrand_bound(Complex(L), spec, k_max) - log(c0_scale));
    Real cuts[] = {Real(-L), Real(-core), Real(0), core, L};
    for (int i = 0; i < 4; ++i) append_segment(m, real_path, Complex(1), cuts[i], cuts[i + 1], level, 1);
    return m;
  }

  if (spec.kink >= 0) throw numeric_error("contour kink must lie on the negative real axis");
  Real c3 = cos(3 * spec.angle);
  // cos 3theta sets the decay rate t r^3 cos 3theta along the ray; at zero it stalls
  if (c3 < Real("1e-6"))
    throw numeric_error("ray angle " + str(spec.angle, 6) + " leaves the region where t3 l^3 dominates");

  Real L = truncation_radius(real_path, spec, k_max, log_floor, "real axis");
  std::vector<Real> cuts{spec.kink};
  for (Real p : {Real(-core), Real(0), core})
    if (p > spec.kink) cuts.push_back(p);
  cuts.push_back(L);
  for (size_t i = 0; i + 1 < cuts.size(); ++i) append_segment(m, real_path, Complex(1), cuts[i], cuts[i + 1], level, 1);

  auto ray_for = [&](const Real& theta) {
    Complex dir = polar(Real(1), theta);
    return std::make_pair(dir, std::function<Complex(const Real&)>([dir, k = spec.kink](const Real& r) {
                            return Complex(k) + Complex(r) * dir;
                          }));
  };
  Real R = 0;
  std::vector<Real> angles;
  if (spec.orientation != ContourSpec::lower) angles.push_back(spec.angle);
  if (spec.orientation != ContourSpec::upper) angles.push_back(Real(-spec.angle));
  Real share = angles.size() == 2 ? Real(0.5) : Real(1);
  Real worst_end = exp(log_integrand_bound(Complex(L), spec, k_max) - log(c0_scale));
  for (const Real& theta : angles) {
    auto [dir, path] = ray_for(theta);
    R = truncation_radius(path, spec, k_max, log_floor, "ray");
    Real end = exp(log_integrand_bound(path(R), spec, k_max) - log(c0_scale));
    if (end > worst_end) worst_end = end;
    // the ray is walked inwards, towards the kink
    append_segment(m, path, -dir, Real(0), R, level, share);
  }
  m.end_decay = worst_end;

  if (mirrored)
    for (auto& x : m.x) x = -x;
  return m;
}

MomentTable contour_moments(const ContourSpec& spec, int k_max) {
  if (k_max < 0) throw numeric_error("k_max must be non-negative");
  Precision guard(spec.digits + kGuardDigits);

  auto moments_at = [&](int level, DiscreteMeasure& m) {
    m = discretise(spec, k_max, level);
    std::vector<Complex> c(k_max + 1);
    for (size_t i = 0; i < m.x.size(); ++i) {
      Complex term = m.w[i] * weight(m.x[i], spec);
      for (int k = 0; k <= k_max; ++k) {
        c[k] += term;
        term *= m.x[i];
      }
    }
    return c;
  };

  MomentTable out;
  out.contour = spec;
  DiscreteMeasure m;
  if (spec.level > 0) {
    DiscreteMeasure fine;
    out.c = moments_at(spec.level, m);
    auto finer = moments_at(spec.level + 1, fine);
    out.doubling_change = max_relative_change(out.c, finer);
    out.level = spec.level;
  } else {
    const Real target = pow10(-static_cast<int>(spec.digits) - 2);
    auto prev = moments_at(4, m);
    for (int level = 5;; ++level) {
      DiscreteMeasure next_m;
      auto next = moments_at(level, next_m);
      Real change = max_relative_change(prev, next);
      prev = std::move(next);
      m = std::move(next_m);
      out.level = level;
      out.doubling_change = change;
      if (change < target || level == 11) break;
    }
    out.c = std::move(prev);
  }
  out.nodes = m.x.size();
  out.end_decay = m.end_decay;
  if (out.doubling_change > pow10(-static_cast<int>(spec.digits) / 2))
    throw numeric_error("quadrature did not settle: node doubling moves the moments by " + str(out.doubling_change, 3));
  return out;
}

HankelChain hankel_determinants(const std::vector<Complex>& c, int size) {
  HankelChain out;
  out.det.push_back(Complex(1));
  out.shifted.push_back(Complex(0));
  const Real tiny = pow10(-static_cast<int>(Real::default_precision()) / 2);

  auto det_of = [&](std::vector<std::vector<Complex>> A, bool& singular) {
    const size_t n = A.size();
    Complex det(1);
    singular = false;
    for (size_t col = 0; col < n; ++col) {
      size_t piv = col;
      Real best = abs(A[col][col]), colmax = best;
      for (size_t r = col + 1; r < n; ++r) {
        Real v = abs(A[r][col]);
        if (v > best) best = v, piv = r;
      }
      for (size_t r = 0; r < n; ++r) colmax = std::max(colmax, Real(abs(A[r][col])));
      if (best == 0 || best < tiny * colmax) {
        singular = true;
        return Complex(0);
      }
      if (piv != col) {
        std::swap(A[piv], A[col]);
        det = -det;
      }
      det *= A[col][col];
      for (size_t r = col + 1; r < n; ++r) {
        Complex f = A[r][col] / A[col][col];
        for (size_t k = col; k < n; ++k) A[r][k] -= f * A[col][k];
      }
    }
    return det;
  };

  for (int n = 1; n < size; ++n) {
    if (2 * n > static_cast<int>(c.size())) throw numeric_error("not enough moments for the Hankel chain");
    std::vector<std::vector<Complex>> H(n, std::vector<Complex>(n)), S(n, std::vector<Complex>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        H[i][j] = c[i + j];
        S[i][j] = c[i + (j == n - 1 ? n : j)];
      }
    bool singular = false;
    Complex d = det_of(H, singular);
    if (singular) {
      out.gap = n;
      break;
    }
    bool s_singular = false;
    Complex sd = det_of(S, s_singular);
    out.det.push_back(d);
    out.shifted.push_back(s_singular ? Complex(0) : sd);
  }
  return out;
}

RecurrenceTable recurrence_from_hankel(const MomentTable& m, int n_max) {
  Precision guard(m.contour.digits + kGuardDigits);
  if (static_cast<int>(m.c.size()) < 2 * n_max + 3) throw numeric_error("moment table too short for n_max");
  auto chain = hankel_determinants(m.c, n_max + 2);
  RecurrenceTable out;
  out.derivation = "hankel";
  out.gap = chain.gap;
  out.max_imag = 0;
  const int have = static_cast<int>(chain.det.size());  // det H_0..det H_{have-1}
  for (int n = 0; n <= n_max; ++n) {
    if (n + 1 >= have) break;
    Complex sigma_n = n == 0 ? Complex(0) : chain.shifted[n] / chain.det[n];
    Complex sigma_next = chain.shifted[n + 1] / chain.det[n + 1];
    out.a.push_back(sigma_next - sigma_n);
    out.b2.push_back(n == 0 ? Complex(0) : chain.det[n + 1] * chain.det[n - 1] / (chain.det[n] * chain.det[n]));
  }
  for (size_t n = 0; n < out.a.size(); ++n)
    out.max_imag = std::max({out.max_imag, Real(abs(out.a[n].im)), Real(abs(out.b2[n].im))});
  return out;
}

RecurrenceTable recurrence_from_stieltjes(const ContourSpec& spec, int level, int n_max) {
  Precision guard(spec.digits + kGuardDigits);
  DiscreteMeasure m = discretise(spec, 2 * n_max + 2, level);
  const size_t K = m.x.size();
  std::vector<Complex> w(K);
  for (size_t i = 0; i < K; ++i) w[i] = m.w[i] * weight(m.x[i], spec);

  RecurrenceTable out;
  out.derivation = "stieltjes";
  out.max_imag = 0;
  std::vector<Complex> prev(K, Complex(0)), cur(K, Complex(1));
  Complex norm_prev(1);
  for (int n = 0; n <= n_max; ++n) {
    Complex norm(0), xnorm(0);
    for (size_t i = 0; i < K; ++i) {
      Complex sq = w[i] * cur[i] * cur[i];
      norm += sq;
      xnorm += sq * m.x[i];
    }
    if (abs(norm) == 0) {
      out.gap = n;
      break;
    }
    Complex a = xnorm / norm;
    Complex b2 = n == 0 ? Complex(0) : norm / norm_prev;
    out.a.push_back(a);
    out.b2.push_back(b2);
    for (size_t i = 0; i < K; ++i) {
      Complex next = (m.x[i] - a) * cur[i] - b2 * prev[i];
      prev[i] = std::move(cur[i]);
      cur[i] = std::move(next);
    }
    norm_prev = norm;
  }
  for (size_t n = 0; n < out.a.size(); ++n)
    out.max_imag = std::max({out.max_imag, Real(abs(out.a[n].im)), Real(abs(out.b2[n].im))});
  return out;
}

DualRecurrence recurrence_extract(const ContourSpec& spec, int n_max) {
  MomentTable m = contour_moments(spec, 2 * n_max + 2);
  Precision guard(spec.digits + kGuardDigits);
  DualRecurrence out;
  out.hankel = recurrence_from_hankel(m, n_max);
  out.stieltjes = recurrence_from_stieltjes(spec, m.level, n_max);
  Real worst = 0;
  size_t common = std::min(out.hankel.a.size(), out.stieltjes.a.size());
  for (size_t n = 0; n < common; ++n) {
    Real sa = std::max(Real(abs(out.stieltjes.a[n])), Real(1e-30));
    Real sb = std::max(Real(abs(out.stieltjes.b2[n])), Real(1e-30));
    worst = std::max(worst, Real(abs(out.hankel.a[n] - out.stieltjes.a[n]) / std::max(sa, Real(1))));
    worst = std::max(worst, Real(abs(out.hankel.b2[n] - out.stieltjes.b2[n]) / std::max(sb, Real(1))));
  }
  out.agreement_digits = log10_of(worst);
  return out;
}

ContinuumValues continuum_values(const Real& t) {
  using boost::multiprecision::pow;
  ContinuumValues v;
  EquilibriumData eq = equilibrium_numeric(t);
  if (t == 0) {
    v.u0 = 0, v.u1 = 0, v.u2 = 0, v.z0 = 1, v.z1 = 0, v.z1_closed = 0;
    return v;
  }
  Jet s(3);
  s.c[0] = t;
  s.c[1] = 1;
  Jet z0 = newton_jet(
      [&](const Jet& z) {
        Jet s2 = s * s;
        Jet f = z * z - Real(72) * (s2 * z * z * z) - Jet::constant(1, 3);
        Jet df = Real(2) * z - Real(216) * (s2 * z * z);
        return std::make_pair(f, df);
      },
      eq.z0, 3);
  Jet u0 = newton_jet(
      [&](const Jet& u) {
        Jet s2 = s * s;
        Jet f = Real(18) * (s2 * u * u * u) + Real(9) * (s * u * u) + u + Real(6) * s;
        Jet df = Real(54) * (s2 * u * u) + Real(18) * (s * u) + Jet::constant(1, 3);
        return std::make_pair(f, df);
      },
      eq.u0, 3);

  Jet h0w = self_similar(u0, Real(0.5), s);
  Jet h0ww = self_similar(h0w, Real(-0.5), s);
  Jet f0w = self_similar(z0, Real(1), s);
  Jet f0ww = self_similar(f0w, Real(0), s);

  const Real& S = t;
  Real X = Real(13) / 4 * S * h0w.c[0] * h0w.c[0] + Real(5) / 2 * S * u0.c[0] * h0ww.c[0] + 4 * S * f0ww.c[0] +
           Real(5) / 12 * h0ww.c[0];
  v.u0 = u0.c[0];
  v.z0 = z0.c[0];
  v.u1 = h0w.c[0] / 2;
  v.u2 = -f0w.c[0] * X;
  v.z1 = -h0w.c[0] * z0.c[0] * X;
  Real z = v.z0, z2 = z * z;
  v.z1_closed = (z2 - 1) * (z2 - 1) * (z2 + 9) * z / (4 * pow(z2 - 3, 4));
  return v;
}

Real fit_decay_exponent(const std::vector<int>& n, const std::vector<Real>& err) {
  using boost::multiprecision::log;
  if (n.size() != err.size() || n.size() < 2) throw numeric_error("decay fit needs at least two points");
  Real sx = 0, sy = 0, sxx = 0, sxy = 0;
  const long m = static_cast<long>(n.size());
  for (size_t i = 0; i < n.size(); ++i) {
    if (err[i] <= 0) throw numeric_error("decay fit on a vanishing error");
    Real x = log(Real(n[i])), y = log(err[i]);
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  return -(m * sxy - sx * sy) / (m * sxx - sx * sx);
}

std::vector<HirotaRow> hirota_check(const Real& t3, const Real& N, int n_lo, int n_hi, unsigned digits) {
  using boost::multiprecision::log;
  using boost::multiprecision::sqrt;
  if (n_lo < 1 || n_hi < n_lo) throw numeric_error("bad Hirota range");
  ContourSpec spec = default_contour(t3, N, digits);
  MomentTable m = contour_moments(spec, 2 * n_hi + 2);
  Precision guard(digits + kGuardDigits);
  auto chain = hankel_determinants(m.c, n_hi + 2);
  if (chain.gap && *chain.gap <= n_hi + 1)
    throw numeric_error("Hankel determinant " + std::to_string(*chain.gap) + " vanishes; raise the precision");
  RecurrenceTable st = recurrence_from_stieltjes(spec, m.level, n_hi);

  const Real c0 = sqrt(2 * pi_real() / N);
  // det H_n for the Gaussian weight
  auto log_det0 = [&](int n) {
    Real acc = n * log(c0);
    for (int k = 1; k < n; ++k) acc += (n - k) * log(Real(k) / N);
    return acc;
  };
  auto log_tau = [&](int n) { return log(chain.det[n]) - Complex(log_det0(n)); };

  std::vector<HirotaRow> rows;
  for (int n = n_lo; n <= n_hi; ++n) {
    Complex lhs = log_tau(n + 1) - Complex(Real(2)) * log_tau(n) + log_tau(n - 1);
    Complex rhs = log(st.b2[n]) - Complex(Real(log(Real(n) / N)));
    rows.push_back({n, lhs.re, rhs.re, Real(abs(lhs - rhs))});
  }
  return rows;
}

ComparisonReport asymptotic_comparison(const Real& t3, const std::vector<int>& n_list, unsigned digits) {
  using boost::multiprecision::abs;
  using boost::multiprecision::log;
  Precision guard(digits + kGuardDigits);
  ComparisonReport rep;
  rep.t3 = t3;
  rep.max_imag = 0;
  rep.min_agreement_digits = Real(1000);
  ContinuumValues v = continuum_values(t3);
  std::vector<Real> eb, ea;
  for (int n : n_list) {
    if (n < 2) throw numeric_error("comparison needs n >= 2");
    ContourSpec spec = default_contour(t3, Real(n), digits);
    DualRecurrence rec = recurrence_extract(spec, n + 1);
    if (static_cast<int>(rec.stieltjes.b2.size()) <= n + 1)
      throw numeric_error("recurrence stopped before n = " + std::to_string(n));
    rep.min_agreement_digits = std::min(rep.min_agreement_digits, rec.agreement_digits);
    rep.max_imag = std::max({rep.max_imag, rec.stieltjes.max_imag, rec.hankel.max_imag});
    Real nn(n);
    ComparisonRow row;
    row.n = n;
    row.b2 = rec.stieltjes.b2[n].re;
    row.a = rec.stieltjes.a[n].re;
    // x = n/N = 1
    row.b_error = abs(row.b2 - (v.z0 + v.z1 / (nn * nn)));
    row.a_error = abs(row.a - (v.u0 + v.u1 / nn + v.u2 / (nn * nn)));
    // second difference of log tau^2 at n equals log b2_n - log(n/N)
    row.hirota_second_difference = log(row.b2);
    rep.rows.push_back(row);
    eb.push_back(row.b_error);
    ea.push_back(row.a_error);
  }
  if (t3 == 0) {
    rep.b_exponent = 0;
    rep.a_exponent = 0;
  } else if (n_list.size() >= 2) {
    rep.b_exponent = fit_decay_exponent(n_list, eb);
    rep.a_exponent = fit_decay_exponent(n_list, ea);
  }
  return rep;
}

}  // namespace mapgen
