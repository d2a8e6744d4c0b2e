#include "mapgen/oracle.hpp"

#include <atomic>
#include <numeric>
#include <thread>

namespace mapgen {

DartStructure make_darts(const std::vector<int>& profile) {
  DartStructure d;
  d.profile = profile;
  int next = 0;
  for (size_t v = 0; v < profile.size(); ++v) {
    int k = profile[v];
    if (k <= 0) throw oracle_error("valences must be positive");
    for (int i = 0; i < k; ++i) {
      d.sigma.push_back(next + (i + 1) % k);
      d.vertex.push_back(static_cast<int>(v));
    }
    next += k;
  }
  return d;
}

namespace {

int count_cycles(const std::vector<int>& perm, std::vector<char>& seen) {
  const int n = static_cast<int>(perm.size());
  std::fill(seen.begin(), seen.end(), 0);
  int cycles = 0;
  for (int d = 0; d < n; ++d) {
    if (seen[d]) continue;
    ++cycles;
    for (int e = d; !seen[e]; e = perm[e]) seen[e] = 1;
  }
  return cycles;
}

bool transitive(const std::vector<int>& sigma, const std::vector<int>& omega, std::vector<char>& seen,
                std::vector<int>& stack) {
  const int n = static_cast<int>(sigma.size());
  if (n == 0) return true;
  std::fill(seen.begin(), seen.end(), 0);
  stack.clear();
  stack.push_back(0);
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int d = stack.back();
    stack.pop_back();
    for (int e : {sigma[d], omega[d]})
      if (!seen[e]) {
        seen[e] = 1;
        ++reached;
        stack.push_back(e);
      }
  }
  return reached == n;
}

struct Tally {
  std::map<int, std::uint64_t> by_genus;
  std::uint64_t disconnected = 0, total = 0;
};

class Enumerator {
 public:
  Enumerator(const DartStructure& d) : sigma_(d.sigma), V_(static_cast<int>(d.profile.size())) {
    n_ = d.darts();
    omega_.assign(n_, -1);
    phi_.assign(n_, 0);
    seen_.assign(n_, 0);
  }

  // enumerate with dart 0 paired to `first`
  Tally run(int first) {
    tally_ = Tally{};
    pair(0, first);
    recurse();
    unpair(0, first);
    return tally_;
  }

 private:
  void pair(int a, int b) { omega_[a] = b, omega_[b] = a; }
  void unpair(int a, int b) { omega_[a] = -1, omega_[b] = -1; }

  void recurse() {
    int a = 0;
    while (a < n_ && omega_[a] >= 0) ++a;
    if (a == n_) {
      leaf();
      return;
    }
    for (int b = a + 1; b < n_; ++b) {
      if (omega_[b] >= 0) continue;
      pair(a, b);
      recurse();
      unpair(a, b);
    }
  }

  void leaf() {
    ++tally_.total;
    if (!transitive(sigma_, omega_, seen_, stack_)) {
      ++tally_.disconnected;
      return;
    }
    for (int d = 0; d < n_; ++d) phi_[d] = sigma_[omega_[d]];
    int F = count_cycles(phi_, seen_);
    int chi = V_ - n_ / 2 + F;
    ++tally_.by_genus[(2 - chi) / 2];
  }

  const std::vector<int>& sigma_;
  int V_, n_;
  std::vector<int> omega_, phi_, stack_;
  std::vector<char> seen_;
  Tally tally_;
};

std::string profile_str(const std::vector<int>& p) {
  std::string s;
  for (size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return "(" + s + ")";
}

}  // namespace

std::optional<int> genus_of_map(const std::vector<int>& sigma, const std::vector<int>& omega) {
  const int n = static_cast<int>(sigma.size());
  if (static_cast<int>(omega.size()) != n || n % 2) throw oracle_error("omega must be an involution on the darts");
  for (int d = 0; d < n; ++d)
    if (omega[d] == d || omega[omega[d]] != d) throw oracle_error("omega must be a fixed-point-free involution");
  std::vector<char> seen(n);
  std::vector<int> stack;
  if (!transitive(sigma, omega, seen, stack)) return std::nullopt;
  std::vector<int> phi(n);
  for (int d = 0; d < n; ++d) phi[d] = sigma[omega[d]];
  int V = count_cycles(sigma, seen);
  int F = count_cycles(phi, seen);
  return (2 - (V - n / 2 + F)) / 2;
}

Integer double_factorial(int n) {
  Integer r = 1;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

Integer factorial(int n) {
  Integer r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

int euler_faces(const std::vector<int>& profile, int genus) {
  int darts = std::accumulate(profile.begin(), profile.end(), 0);
  return darts / 2 - static_cast<int>(profile.size()) + 2 - 2 * genus;
}

GenusPartition count_all_genera(const std::vector<int>& profile) {
  DartStructure d = make_darts(profile);
  const int n = d.darts();
  if (n % 2) throw oracle_error("odd dart total " + std::to_string(n) + " admits no matching");
  if (n > kMaxBruteForceDarts)
    throw oracle_error("profile " + profile_str(profile) + " has " + std::to_string(n) + " darts; enumeration would visit " +
                       double_factorial(n - 1).str() + " matchings (limit " + std::to_string(kMaxBruteForceDarts) +
                       " darts)");
  GenusPartition out;
  if (n == 0) return out;

  // split on the partner of dart 0
  std::vector<Tally> parts(n);
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  std::atomic<int> next{1};
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      Enumerator en(d);
      for (int b; (b = next.fetch_add(1)) < n;) parts[b] = en.run(b);
    });
  for (auto& t : pool) t.join();

  for (int b = 1; b < n; ++b) {
    for (auto& [g, c] : parts[b].by_genus) out.by_genus[g] += c;
    out.disconnected += parts[b].disconnected;
    out.matchings += parts[b].total;
  }
  return out;
}

MapCountRecord count_maps(const std::vector<int>& profile, int genus) {
  MapCountRecord rec{profile, genus, 0, 0, "enumeration"};
  int darts = std::accumulate(profile.begin(), profile.end(), 0);
  if (darts % 2) {
    rec.method = "parity";
    return rec;
  }
  if (genus < 0 || euler_faces(profile, genus) < 1) {
    rec.method = "euler-bound";
    return rec;
  }
  auto part = count_all_genera(profile);
  auto it = part.by_genus.find(genus);
  if (it != part.by_genus.end()) rec.count = it->second;
  rec.matchings_examined = part.matchings;
  return rec;
}

std::vector<Integer> hook_characters(const std::vector<int>& rho) {
  const int n = std::accumulate(rho.begin(), rho.end(), 0);
  if (n == 0) throw oracle_error("hook characters need a nonempty partition");
  // prod_i (1 - (-q)^rho_i), then divide by 1 + q
  std::vector<Integer> p{1};
  for (int part : rho) {
    std::vector<Integer> next(p.size() + part, 0);
    Integer lead = part % 2 ? 1 : -1;  // -(-1)^part
    for (size_t i = 0; i < p.size(); ++i) {
      next[i] += p[i];
      next[i + part] += lead * p[i];
    }
    p = std::move(next);
  }
  std::vector<Integer> q(n);
  Integer carry = 0;
  for (int i = 0; i < n; ++i) {
    q[i] = p[i] - carry;
    carry = q[i];
  }
  if (p[n] != carry) throw oracle_error("hook generating function is not divisible by 1 + q");
  return q;
}

Integer count_unicellular(const std::vector<int>& profile) {
  const int n = std::accumulate(profile.begin(), profile.end(), 0);
  if (n % 2 || n == 0) return 0;
  auto chi_lambda = hook_characters(profile);
  auto chi_pairs = hook_characters(std::vector<int>(n / 2, 2));
  // (n-1)!! (n-1)! / n! * sum_r (-1)^r chi_r(2^E) chi_r(lambda) / C(n-1, r)
  Rational sum = 0;
  Integer binom = 1;
  for (int r = 0; r < n; ++r) {
    if (r > 0) binom = binom * (n - r) / r;
    Rational term = Rational(chi_pairs[r] * chi_lambda[r]) / Rational(binom);
    sum += r % 2 ? -term : term;
  }
  Rational total = sum * Rational(double_factorial(n - 1)) / n;
  if (denominator(total) != 1) throw oracle_error("character sum is not an integer: " + to_string(total));
  return numerator(total);
}

std::vector<int> resonance_profile(ResonanceKind kind, int m) {
  std::vector<int> p;
  if (kind == ResonanceKind::z_coefficient) p = {1, 1};
  p.insert(p.end(), m, 3);
  return p;
}

std::map<int, ResonanceValue> resonance_table(ResonanceKind kind, int genus, const std::set<int>& orders) {
  std::map<int, ResonanceValue> out;
  for (int m : orders) {
    auto profile = resonance_profile(kind, m);
    Rational norm = Rational(1) / Rational(factorial(m));
    if (profile.empty()) {
      // no vertices, no maps: e_g vanishes at s = 0
      out[m] = {0, "oracle:empty"};
      continue;
    }
    int darts = std::accumulate(profile.begin(), profile.end(), 0);
    int F = euler_faces(profile, genus);
    // enumeration while it is cheap, characters for one-face maps, then
    // enumeration up to the hard limit
    if (darts % 2 || F < 1) {
      out[m] = {0, "oracle:euler-bound"};
    } else if (darts <= kCheapEnumerationDarts) {
      out[m] = {Rational(count_maps(profile, genus).count) * norm, "oracle:enumeration"};
    } else if (F == 1) {
      out[m] = {Rational(count_unicellular(profile)) * norm, "oracle:characters"};
    } else if (darts <= kMaxBruteForceDarts) {
      out[m] = {Rational(count_maps(profile, genus).count) * norm, "oracle:enumeration"};
    } else {
      throw oracle_error("genus " + std::to_string(genus) + " count for " + profile_str(profile) +
                         " is out of reach (" + std::to_string(darts) + " darts, " + std::to_string(F) +
                         " faces); inject from a closed form instead");
    }
  }
  return out;
}

ResonanceSource oracle_z_source() {
  return [](int g, int order) -> std::optional<ResonanceValue> {
    try {
      return resonance_table(ResonanceKind::z_coefficient, g, {order}).at(order);
    } catch (const oracle_error&) {
      return std::nullopt;
    }
  };
}

}  // namespace mapgen
