#pragma once

// Numerical orthogonal polynomials for the weight exp(-N (l^2/2 + t l^3)).
//
// For t > 0 the real axis is not admissible (the weight blows up at -inf),
// so moments are taken on Gamma: in along the ray from inf*e^(i theta) to a
// kink point on the real axis, then out along the real axis to +inf. The
// default kink is the saddle -1/(3t) and theta = 2 pi/3, where t l^3 is
// real positive. Averaging the upper and lower (conjugate) contours gives
// real moments.

#include "mapgen/real.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mapgen {

struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ContourSpec {
  Real t3 = 0;
  Real N = 1;
  unsigned digits = 50;
  int level = 0;  // tanh-sinh refinement; 0 picks one by node doubling
  Real kink = 0;  // ignored when t3 = 0
  Real angle = 0;
  enum Orientation { upper, lower, symmetric } orientation = symmetric;
};

ContourSpec default_contour(const Real& t3, const Real& N, unsigned digits);

// nodes and weights of the discretised contour integral
struct DiscreteMeasure {
  std::vector<Complex> x, w;
  int level = 0;
  Real end_decay;  // largest |integrand| at a truncation point, relative to |c_0|
};

DiscreteMeasure discretise(const ContourSpec& spec, int k_max, int level);

struct MomentTable {
  std::vector<Complex> c;
  ContourSpec contour;
  int level = 0;
  size_t nodes = 0;
  Real doubling_change;  // max_k |c_k(level+1) - c_k(level)| / |c_k|
  Real end_decay;
};

MomentTable contour_moments(const ContourSpec& spec, int k_max);

struct RecurrenceTable {
  std::vector<Complex> a, b2;  // b2[0] unused
  std::string derivation;      // hankel | stieltjes
  Real max_imag;
  // first n whose Hankel determinant is numerically zero; the table stops before it
  std::optional<int> gap;
};

struct HankelChain {
  std::vector<Complex> det;      // det H_n, n = 0..; H_0 = 1
  std::vector<Complex> shifted;  // H_n with its last column moved up to c_{i+n}
  std::optional<int> gap;
};

// LU with partial pivoting; size = number of determinants requested
HankelChain hankel_determinants(const std::vector<Complex>& c, int size);

RecurrenceTable recurrence_from_hankel(const MomentTable& m, int n_max);
RecurrenceTable recurrence_from_stieltjes(const ContourSpec& spec, int level, int n_max);

struct DualRecurrence {
  RecurrenceTable hankel, stieltjes;
  Real agreement_digits;  // -log10 of the largest relative disagreement
};

DualRecurrence recurrence_extract(const ContourSpec& spec, int n_max);

// first terms of the continuum expansion at s = t
struct ContinuumValues {
  Real u0, u1, u2, z0, z1, z1_closed;
};
ContinuumValues continuum_values(const Real& t);

struct ComparisonRow {
  int n;
  Real b2, a;
  Real b_error, a_error;
  Real hirota_second_difference;  // second difference of log tau^2 at n
};

struct ComparisonReport {
  Real t3;
  std::vector<ComparisonRow> rows;
  Real b_exponent, a_exponent;
  Real min_agreement_digits;
  Real max_imag;
};

ComparisonReport asymptotic_comparison(const Real& t3, const std::vector<int>& n_list, unsigned digits);

struct HirotaRow {
  int n;
  Real lhs, rhs, residual;
};

// log tau^2_n = log(det H_n(t) / det H_n(0)); lhs is its second difference,
// rhs is log b2_n(t) - log(n/N) with b2_n from the Stieltjes route
std::vector<HirotaRow> hirota_check(const Real& t3, const Real& N, int n_lo, int n_hi, unsigned digits);

// least-squares slope of -log err against log n
Real fit_decay_exponent(const std::vector<int>& n, const std::vector<Real>& err);

}  // namespace mapgen
