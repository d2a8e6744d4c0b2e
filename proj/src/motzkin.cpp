#include "mapgen/motzkin.hpp"

#include <sstream>

namespace mapgen {

int MotzkinPath::end() const {
  int level = start;
  for (Step s : steps) level += s == Step::Up ? 1 : s == Step::Down ? -1 : 0;
  return level;
}

int MotzkinPath::horizontal_count() const {
  int h = 0;
  for (Step s : steps) h += s == Step::Horizontal;
  return h;
}

namespace {

void extend(int remaining, int level, int target, MotzkinPath& cur, std::vector<MotzkinPath>& out) {
  if (std::abs(level - target) > remaining) return;
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  // enum order gives the lexicographic order Up < Down < Horizontal
  for (Step s : {Step::Up, Step::Down, Step::Horizontal}) {
    cur.steps.push_back(s);
    int next = level + (s == Step::Up ? 1 : s == Step::Down ? -1 : 0);
    extend(remaining - 1, next, target, cur, out);
    cur.steps.pop_back();
  }
}

OperatorPolynomial path_weight(const MotzkinPath& p) {
  OperatorPolynomial w = OperatorPolynomial::constant(1);
  int level = p.start;
  for (Step s : p.steps) {
    if (s == Step::Up) {
      ++level;
    } else if (s == Step::Down) {
      w *= OperatorPolynomial::b2(level);
      --level;
    } else {
      w *= OperatorPolynomial::a(level);
    }
  }
  return w;
}

Monomial multiply(const Monomial& x, const Monomial& y) {
  std::map<Symbol, int> e;
  for (auto& [s, k] : x) e[s] += k;
  for (auto& [s, k] : y) e[s] += k;
  return Monomial(e.begin(), e.end());
}

}  // namespace

std::vector<MotzkinPath> enumerate_motzkin(int j, int m1, int m2) {
  if (j < 0) throw std::invalid_argument("path length must be non-negative");
  std::vector<MotzkinPath> out;
  MotzkinPath cur;
  cur.start = m1;
  extend(j, m1, m2, cur, out);
  return out;
}

OperatorPolynomial OperatorPolynomial::constant(const Integer& c) {
  OperatorPolynomial p;
  p.add_term({}, c);
  return p;
}

OperatorPolynomial OperatorPolynomial::symbol(Symbol::Kind kind, int offset) {
  OperatorPolynomial p;
  p.add_term({{Symbol{kind, offset}, 1}}, 1);
  return p;
}

void OperatorPolynomial::add_term(const Monomial& m, const Integer& c) {
  if (c == 0) return;
  auto& slot = t_[m];
  slot += c;
  if (slot == 0) t_.erase(m);
}

OperatorPolynomial& OperatorPolynomial::operator+=(const OperatorPolynomial& o) {
  for (auto& [m, c] : o.t_) add_term(m, c);
  return *this;
}

OperatorPolynomial& OperatorPolynomial::operator-=(const OperatorPolynomial& o) {
  for (auto& [m, c] : o.t_) add_term(m, -c);
  return *this;
}

OperatorPolynomial& OperatorPolynomial::operator*=(const OperatorPolynomial& o) {
  OperatorPolynomial r;
  for (auto& [m1, c1] : t_)
    for (auto& [m2, c2] : o.t_) r.add_term(multiply(m1, m2), c1 * c2);
  *this = std::move(r);
  return *this;
}

OperatorPolynomial& OperatorPolynomial::operator*=(const Integer& k) {
  if (k == 0) {
    t_.clear();
    return *this;
  }
  for (auto& [m, c] : t_) c *= k;
  return *this;
}

OperatorPolynomial OperatorPolynomial::shift(int k) const {
  OperatorPolynomial r;
  for (auto& [m, c] : t_) {
    Monomial moved = m;
    for (auto& [s, e] : moved) s.offset += k;
    r.add_term(moved, c);
  }
  return r;
}

OperatorPolynomial OperatorPolynomial::divide_exact(Symbol s) const {
  OperatorPolynomial r;
  for (auto& [m, c] : t_) {
    Monomial q;
    bool found = false;
    for (auto& [sym, e] : m) {
      if (sym == s) {
        found = true;
        if (e > 1) q.emplace_back(sym, e - 1);
      } else {
        q.emplace_back(sym, e);
      }
    }
    if (!found) throw std::domain_error("term " + OperatorPolynomial(*this).str() + " is not divisible");
    r.add_term(q, c);
  }
  return r;
}

std::string OperatorPolynomial::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : t_) {
    Integer mag = abs(c);
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    bool need_star = false;
    if (mag != 1 || m.empty()) {
      os << mag;
      need_star = true;
    }
    for (auto& [s, e] : m) {
      os << (need_star ? "*" : "") << (s.kind == Symbol::a ? "a[" : "b2[") << s.offset << "]";
      if (e > 1) os << "^" << e;
      need_star = true;
    }
    first = false;
  }
  return os.str();
}

OperatorPolynomial operator_entry(int j, int m1, int m2) {
  OperatorPolynomial total;
  for (auto& p : enumerate_motzkin(j, m1, m2)) total += path_weight(p);
  return total;
}

OperatorPolynomial operator_entry_by_matrix_power(int j, int m1, int m2) {
  // row vector e_{m1} times L, j times; levels reachable lie in m1 +- j
  std::map<int, OperatorPolynomial> row{{m1, OperatorPolynomial::constant(1)}};
  for (int step = 0; step < j; ++step) {
    std::map<int, OperatorPolynomial> next;
    for (auto& [r, v] : row) {
      next[r + 1] += v;
      next[r] += v * OperatorPolynomial::a(r);
      next[r - 1] += v * OperatorPolynomial::b2(r);
    }
    row = std::move(next);
  }
  auto it = row.find(m2);
  return it == row.end() ? OperatorPolynomial() : it->second;
}

Integer motzkin_count(int j, int m1, int m2) {
  std::map<int, Integer> ways{{m1, 1}};
  for (int step = 0; step < j; ++step) {
    std::map<int, Integer> next;
    for (auto& [l, c] : ways) {
      next[l + 1] += c;
      next[l] += c;
      next[l - 1] += c;
    }
    ways = std::move(next);
  }
  auto it = ways.find(m2);
  return it == ways.end() ? Integer(0) : it->second;
}

size_t EquationSystem::right_term_count() const {
  size_t n = 0;
  for (auto& [k, p] : right) n += p.size();
  return n;
}

namespace {

// X = L + j t L^{j-1} entry as a polynomial in t
std::map<int, OperatorPolynomial> string_entry(int j, int m1, int m2) {
  std::map<int, OperatorPolynomial> x;
  x[0] = operator_entry(1, m1, m2);
  x[1] = operator_entry(j - 1, m1, m2) * Integer(j);
  return x;
}

void accumulate(std::map<int, OperatorPolynomial>& into, const std::map<int, OperatorPolynomial>& x,
                const OperatorPolynomial& factor) {
  for (auto& [k, p] : x) into[k] += p * factor;
}

EquationSystem make_system(EquationSystem::Kind kind, int valence) {
  EquationSystem e;
  e.kind = kind;
  e.valence = valence;
  return e;
}

void prune(std::map<int, OperatorPolynomial>& m) {
  std::erase_if(m, [](auto& kv) { return kv.second.is_zero(); });
}

}  // namespace

std::pair<EquationSystem, EquationSystem> difference_string_system(int nu) {
  if (nu < 1) throw std::invalid_argument("nu must be positive");
  const int j = 2 * nu + 1;
  const auto one = OperatorPolynomial::constant(1);
  const auto minus = OperatorPolynomial::constant(-1);

  EquationSystem diag = make_system(EquationSystem::string_diagonal, j);
  diag.inv_n = 1;
  accumulate(diag.right, string_entry(j, 1, 0), one);
  accumulate(diag.right, string_entry(j, 0, -1), minus);
  prune(diag.right);

  EquationSystem sub = make_system(EquationSystem::string_subdiagonal, j);
  std::map<int, OperatorPolynomial> raw;
  accumulate(raw, string_entry(j, 1, 0), OperatorPolynomial::a(1) - OperatorPolynomial::a(0));
  accumulate(raw, string_entry(j, 2, 0), one);
  accumulate(raw, string_entry(j, 1, -1), minus);
  prune(raw);
  for (auto& [k, p] : raw) sub.right[k] = p.divide_exact(Symbol{Symbol::b2, 1});
  return {diag, sub};
}

std::pair<EquationSystem, EquationSystem> toda_system(int nu) {
  if (nu < 1) throw std::invalid_argument("nu must be positive");
  const int j = 2 * nu + 1;

  EquationSystem ta = make_system(EquationSystem::toda_a, j);
  ta.left_derivative = Symbol{Symbol::a, 0};
  ta.right[0] = operator_entry(j, 1, 0) - operator_entry(j, 0, -1);

  EquationSystem tb = make_system(EquationSystem::toda_b, j);
  tb.left_derivative = Symbol{Symbol::b2, 0};
  tb.right[0] = (OperatorPolynomial::a(0) - OperatorPolynomial::a(-1)) * operator_entry(j, 0, -1) +
                operator_entry(j, 1, -1) - operator_entry(j, 0, -2);
  return {ta, tb};
}

std::map<int, Integer> horizontal_count_census(int nu, int m1, int length) {
  if (nu < 1) throw std::invalid_argument("nu must be positive");
  std::map<int, Integer> census;
  for (auto& p : enumerate_motzkin(length, m1, 0)) census[p.horizontal_count()] += 1;
  return census;
}

Integer trinomial(int n, int k1, int k2, int k3) {
  if (k1 < 0 || k2 < 0 || k3 < 0 || k1 + k2 + k3 != n) return 0;
  auto fact = [](int m) {
    Integer f = 1;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
  };
  return fact(n) / (fact(k1) * fact(k2) * fact(k3));
}

}  // namespace mapgen
