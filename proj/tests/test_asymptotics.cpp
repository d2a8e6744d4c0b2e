#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mapgen/asymptotics.hpp"
#include "mapgen/equilibrium.hpp"
#include "mapgen/oracle.hpp"

using namespace mapgen;

namespace {

const EquilibriumSeries& eq() {
  static const EquilibriumSeries e = equilibrium_series(24);
  return e;
}

const HierarchySolution& solved() {
  static const HierarchySolution s = solve_hierarchy(2, 24, oracle_z_source());
  return s;
}

// pin a series against sparse literal coefficients
void check_coeffs(const PowerSeries& a, std::map<int, long long> expected, int upto) {
  for (int k = 0; k <= upto; ++k) {
    auto it = expected.find(k);
    Rational want = it == expected.end() ? Rational(0) : Rational(it->second);
    CHECK_MESSAGE(a[k] == want, "s^" << k << ": " << to_string(a[k]));
  }
}

}  // namespace

TEST_CASE("self-similar derivative") {
  PowerSeries c = PowerSeries::constant(5, 6);
  CHECK(self_similar_D(c, Rational(3, 2)) == PowerSeries::constant(Rational(15, 2), 6));
  PowerSeries d = self_similar_D(eq().z0, 1);
  CHECK(d[0] == 1);
  CHECK(d[2] == 72);
  CHECK(u1_from_u0(eq().u0)[1] == -3);
  CHECK(u1_from_u0(eq().u0)[3] == -324);
}

TEST_CASE("offset expansion") {
  auto F = SelfSimilarFamily::f({eq().z0});
  auto k0 = offset_evaluate(F, 0, 1);
  CHECK(k0[0] == eq().z0);
  CHECK(k0[1].is_zero());
  auto k1 = offset_evaluate(F, 1, 1);
  CHECK(k1[1] == self_similar_D(eq().z0, 1));

  PowerSeries u1 = u1_from_u0(eq().u0);
  auto H = SelfSimilarFamily::h({eq().u0, u1});
  auto h1 = offset_evaluate(H, 1, 1);
  CHECK(h1[1] == u1 + self_similar_D(eq().u0, Rational(1, 2)));
  // u1 = D_{1/2}u0 / 2, so the total is (3/2) D_{1/2}u0 = (3/4)(u0 + s u0')
  PowerSeries direct = Rational(3, 4) * (eq().u0.truncate(23) + PowerSeries::identity(23) * derivative(eq().u0));
  CHECK(h1[1].truncate(23) == direct);

  CHECK_THROWS_AS(offset_evaluate(F, 1, 2), asymptotics_error);
}

TEST_CASE("leading order of the string equations") {
  const int R = 12;
  auto H = SelfSimilarFamily::h({eq().u0.truncate(R), PowerSeries("s", R)});
  auto F = SelfSimilarFamily::f({eq().z0.truncate(R)});
  auto [sub, diag] = string_residual(H, F, 1);
  CHECK(sub.vanishing_through() >= 1);
  CHECK(diag.vanishing_through() >= 1);

  auto bad = SelfSimilarFamily::f({eq().z0.truncate(R) + PowerSeries::monomial(1, 2, R)});
  auto [sub2, diag2] = string_residual(H, bad, 1);
  CHECK(sub2.vanishing_through() < 1);
  CHECK(diag2.vanishing_through() < 1);
}

TEST_CASE("string matrix inverse") {
  auto m = string_system_matrix(eq().u0, eq().z0);
  SeriesMatrix p = mat_mul(m.A, m.Ainv);
  CHECK(p[0][0] == PowerSeries::constant(1, p[0][0].order()));
  CHECK(p[1][1] == PowerSeries::constant(1, p[1][1].order()));
  CHECK(p[0][1].is_zero());
  CHECK(p[1][0].is_zero());
}

TEST_CASE("hierarchy coefficients") {
  const auto& s = solved();
  check_coeffs(s.h.coeffs.at(1), {{1, -3}, {3, -324}, {5, -46656}}, 5);
  check_coeffs(s.h.coeffs.at(2), {{3, -135}, {5, -44712}}, 5);
  check_coeffs(s.h.coeffs.at(3), {{5, -14580}}, 5);
  check_coeffs(s.h.coeffs.at(3), {{5, -14580}, {7, -8030664}, {9, -2970400896LL}}, 9);
  check_coeffs(s.h.coeffs.at(4), {{7, -2416635}, {9, -1977117984LL}}, 9);
  check_coeffs(s.f.coeffs.at(1), {{4, 810}, {6, 326592}, {8, 95843088}}, 8);
  check_coeffs(s.f.coeffs.at(2), {{8, 15155910}, {10, 13412153664LL}}, 10);
  CHECK(s.h.coeffs.at(1) == u1_from_u0(eq().u0));
}

TEST_CASE("injected resonant constants come from the oracle") {
  std::map<std::pair<int, int>, Rational> got;
  for (auto& c : solved().injected) got[{c.g, c.order}] = c.value.value;
  CHECK(got.at({1, 2}) == 0);
  CHECK(got.at({1, 4}) == 810);
  CHECK(got.at({2, 6}) == 0);
  CHECK(got.at({2, 8}) == 15155910);
}

TEST_CASE("parity") {
  for (auto& [g, u] : solved().h.coeffs) CHECK_MESSAGE(is_odd(u), "u" << g);
  for (auto& [g, z] : solved().f.coeffs) CHECK_MESSAGE(is_even(z), "z" << g);
}

TEST_CASE("z1 and u2 by three routes") {
  const auto& s = solved();
  CHECK(s.f.coeffs.at(1) == z1_closed_in_z0(eq().z0, 24));
  auto [u2, z1] = h2_f1_closed(eq().u0, eq().z0);
  CHECK(u2 == s.h.coeffs.at(2));
  CHECK(z1 == s.f.coeffs.at(1));
  auto [solved_side, reduced] = conservation_bracket(eq().u0, eq().z0, u2, z1);
  CHECK(solved_side == reduced);
  CHECK(z1_closed_in_z0(PowerSeries::constant(1, 6), 6).is_zero());
}

TEST_CASE("residual certificates through n^-5") {
  SelfSimilarFamily h = solved().h;
  // u5 only meets n^-5 inside differences, where it cancels
  h.coeffs.emplace(5, PowerSeries("s", 24));
  auto [sa, sb] = string_residual(h, solved().f, 5);
  CHECK(sa.vanishing_through() >= 5);
  CHECK(sb.vanishing_through() >= 5);
  auto [ta, tb] = toda_residual(h, solved().f, 5);
  CHECK(ta.vanishing_through() >= 5);
  CHECK(tb.vanishing_through() >= 5);
}

TEST_CASE("Toda equations pin the free z2 constant") {
  auto oracle = oracle_z_source();
  auto wrong = [&](int g, int order) -> std::optional<ResonanceValue> {
    if (g == 2 && order == 8) return ResonanceValue{1, "test"};
    return oracle(g, order);
  };
  HierarchySolution s = solve_hierarchy(2, 16, wrong);
  SelfSimilarFamily h = s.h;
  h.coeffs.emplace(5, PowerSeries("s", 16));
  auto [sa, sb] = string_residual(h, s.f, 5);
  CHECK(sa.vanishing_through() >= 5);  // the string equations leave it free
  auto [ta, tb] = toda_residual(h, s.f, 5);
  CHECK(ta.vanishing_through() == 4);
}

TEST_CASE("missing resonant data is an error") {
  auto none = [](int, int) -> std::optional<ResonanceValue> { return std::nullopt; };
  CHECK_THROWS_AS(solve_hierarchy(1, 12, none), asymptotics_error);
  CHECK_THROWS(solve_hierarchy(2, 6, oracle_z_source()));
}
