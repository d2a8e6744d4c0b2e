#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mapgen/oracle.hpp"

using namespace mapgen;

TEST_CASE("genus of explicit maps") {
  // one 2-valent vertex, its darts glued: a loop on the sphere
  CHECK(genus_of_map({1, 0}, {1, 0}) == 0);
  // two trivalent vertices joined by three parallel edges
  std::vector<int> sigma{1, 2, 0, 4, 5, 3};
  CHECK(genus_of_map(sigma, {3, 4, 5, 0, 1, 2}) == 1);
  // a self-loop at each vertex plus one bridge: still connected
  CHECK(genus_of_map(sigma, {1, 0, 3, 2, 5, 4}) == 0);
  // two vertices of valence 2, each closed on itself
  CHECK(!genus_of_map({1, 0, 3, 2}, {1, 0, 3, 2}).has_value());
}

TEST_CASE("dart structure") {
  DartStructure d = make_darts({1, 3});
  CHECK(d.darts() == 4);
  CHECK(d.sigma == std::vector<int>{0, 2, 3, 1});
  CHECK(d.vertex == std::vector<int>{0, 1, 1, 1});
}

TEST_CASE("two trivalent vertices") {
  GenusPartition p = count_all_genera({3, 3});
  CHECK(p.by_genus[0] == 12);
  CHECK(p.by_genus[1] == 3);
  CHECK(p.disconnected == 0);
  CHECK(p.matchings == 15);
  CHECK(count_maps({3, 3}, 1).count == 3);
  CHECK(count_maps({3, 3}, 0).count == 12);
}

TEST_CASE("profiles with two univalent vertices") {
  GenusPartition p = count_all_genera({1, 1, 3, 3});
  CHECK(p.by_genus[0] == 72);
  CHECK(p.by_genus[1] == 0);
  CHECK(p.disconnected == 33);
  CHECK(count_maps({1, 1, 3, 3}, 1).count == 0);

  GenusPartition q = count_all_genera({1, 1, 3, 3, 3, 3});
  CHECK(q.by_genus[0] == 77760);
  CHECK(q.by_genus[1] == 19440);
  CHECK(q.disconnected == 37935);
  CHECK(q.matchings == double_factorial(13));
}

TEST_CASE("four trivalent vertices") {
  GenusPartition p = count_all_genera({3, 3, 3, 3});
  CHECK(p.by_genus[0] == 5184);
  CHECK(p.by_genus[1] == 4536);
}

TEST_CASE("character formula against enumeration") {
  std::vector<std::vector<int>> profiles{{2}, {4}, {1, 3}, {3, 3}, {2, 2, 2}, {1, 1, 4}, {5, 1}, {2, 3, 3},
                                         {6}, {1, 2, 3}, {4, 4}, {3, 3, 3, 3}, {1, 1, 3, 3, 3, 3}};
  for (auto& prof : profiles) {
    int darts = 0;
    for (int v : prof) darts += v;
    int E = darts / 2, V = static_cast<int>(prof.size());
    // one face: 2 - 2g = V - E + 1
    if ((E - V + 1) % 2 != 0) continue;
    int g = (E - V + 1) / 2;
    GenusPartition p = count_all_genera(prof);
    CHECK_MESSAGE(count_unicellular(prof) == p.by_genus[g], "profile of " << prof.size() << " vertices, genus " << g);
  }
  CHECK(count_unicellular({4}) == 1);
  CHECK(count_unicellular({3, 3}) == 3);
}

TEST_CASE("character formula beyond enumeration") {
  CHECK(count_unicellular({3, 3, 3, 3, 3, 3}) == 3061800);
  CHECK(count_unicellular({1, 1, 3, 3, 3, 3, 3, 3, 3, 3}) == Integer("611086291200"));
}

TEST_CASE("hook characters") {
  CHECK(hook_characters({1, 1, 1}) == std::vector<Integer>{1, 2, 1});
  CHECK(hook_characters({3}) == std::vector<Integer>{1, -1, 1});
  CHECK(hook_characters({2, 2}) == std::vector<Integer>{1, -1, -1, 1});
}

TEST_CASE("counting helpers") {
  CHECK(double_factorial(5) == 15);
  CHECK(double_factorial(0) == 1);
  CHECK(factorial(6) == 720);
  CHECK(euler_faces({3, 3}, 1) == 1);
  CHECK(euler_faces({3, 3}, 0) == 3);
}

TEST_CASE("shortcuts") {
  CHECK(count_maps({3}, 0).count == 0);
  CHECK(count_maps({3}, 0).method == "parity");
  CHECK(count_maps({1, 1, 3, 3}, 1).method == "euler-bound");
}

TEST_CASE("too many darts") {
  CHECK_THROWS_AS(count_all_genera(std::vector<int>(8, 3)), oracle_error);
  CHECK_THROWS_AS(count_maps(std::vector<int>(8, 3), 1), oracle_error);
}

TEST_CASE("resonance tables") {
  auto z1 = resonance_table(ResonanceKind::z_coefficient, 1, {2, 4});
  CHECK(z1.at(2).value == 0);
  CHECK(z1.at(4).value == 810);
  auto e1 = resonance_table(ResonanceKind::free_energy, 1, {0, 2});
  CHECK(e1.at(0).value == 0);
  CHECK(e1.at(2).value == Rational(3, 2));
  CHECK(e1.at(2).provenance == "oracle:enumeration");
  auto e2 = resonance_table(ResonanceKind::free_energy, 2, {4, 6});
  CHECK(e2.at(4).value == 0);
  CHECK(e2.at(6).value == Rational(8505, 2));
  CHECK(e2.at(6).provenance == "oracle:characters");
  auto z2 = resonance_table(ResonanceKind::z_coefficient, 2, {8});
  CHECK(z2.at(8).value == 15155910);
  CHECK(resonance_profile(ResonanceKind::z_coefficient, 2) == std::vector<int>{1, 1, 3, 3});
  CHECK(resonance_profile(ResonanceKind::free_energy, 2) == std::vector<int>{3, 3});
}
