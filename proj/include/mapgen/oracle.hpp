#pragma once

// Brute-force map counting. A map with a given vertex-valence profile is a
// pair (sigma, omega): sigma is the fixed rotation permutation whose cycles
// are the vertices (vertex i owns a contiguous block of darts), omega a
// fixed-point-free involution gluing darts into edges. Faces are the cycles
// of sigma after omega. Counts are of labelled structures, no automorphism
// quotient.

#include "mapgen/asymptotics.hpp"
#include "mapgen/series.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mapgen {

struct oracle_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr int kMaxBruteForceDarts = 20;
constexpr int kCheapEnumerationDarts = 16;  // 15!! ~ 2e6 matchings

struct DartStructure {
  std::vector<int> profile;
  std::vector<int> sigma;   // sigma[d] = next dart around the same vertex
  std::vector<int> vertex;  // owner of each dart
  int darts() const { return static_cast<int>(sigma.size()); }
};

DartStructure make_darts(const std::vector<int>& profile);

// genus of the map, or nothing when <sigma, omega> is not transitive
std::optional<int> genus_of_map(const std::vector<int>& sigma, const std::vector<int>& omega);

struct GenusPartition {
  std::map<int, Integer> by_genus;
  Integer disconnected = 0;
  Integer matchings = 0;  // (2E-1)!!
};

// full enumeration; throws beyond kMaxBruteForceDarts
GenusPartition count_all_genera(const std::vector<int>& profile);

struct MapCountRecord {
  std::vector<int> profile;
  int genus;
  Integer count;
  Integer matchings_examined;
  std::string method;  // enumeration | euler-bound | parity | characters
};

MapCountRecord count_maps(const std::vector<int>& profile, int genus);

// omegas making sigma * omega a single cycle, by the hook-character formula
Integer count_unicellular(const std::vector<int>& profile);

// sum_r chi^(n-r,1^r)(rho) q^r
std::vector<Integer> hook_characters(const std::vector<int>& rho);

Integer double_factorial(int n);
Integer factorial(int n);

// faces forced by Euler's relation, F = E - V + 2 - 2g
int euler_faces(const std::vector<int>& profile, int genus);

enum class ResonanceKind {
  free_energy,  // e_g at s^m: profile 3^m
  z_coefficient // z_g at s^m: profile (1, 1, 3^m)
};

// s^m coefficient = count / m!, for each requested m
std::map<int, ResonanceValue> resonance_table(ResonanceKind kind, int genus, const std::set<int>& orders);

std::vector<int> resonance_profile(ResonanceKind kind, int m);

// ResonanceSource for solve_hierarchy backed by the oracle
ResonanceSource oracle_z_source();

}  // namespace mapgen
