#pragma once

// Motzkin paths on Z and the symbolic entries of powers of the tridiagonal
// recursion operator L (L[m][m+1] = 1, L[m][m] = a_m, L[m][m-1] = b2_m).
//
// Symbols are indexed by their offset from a symbolic base site n, so
// a[1] means a_{n+1}. A path's weight is the product over its steps:
// Up -> 1, Horizontal at level l -> a[l], Down leaving level l -> b2[l].

#include "mapgen/series.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mapgen {

enum class Step { Up, Down, Horizontal };

struct MotzkinPath {
  int start = 0;
  std::vector<Step> steps;

  int end() const;
  int horizontal_count() const;
};

std::vector<MotzkinPath> enumerate_motzkin(int j, int m1, int m2);

struct Symbol {
  enum Kind { a, b2 } kind;
  int offset;
  auto operator<=>(const Symbol&) const = default;
};

// sorted (symbol, exponent) pairs
using Monomial = std::vector<std::pair<Symbol, int>>;

class OperatorPolynomial {
 public:
  OperatorPolynomial() = default;
  static OperatorPolynomial constant(const Integer& c);
  static OperatorPolynomial symbol(Symbol::Kind kind, int offset);
  static OperatorPolynomial a(int k) { return symbol(Symbol::a, k); }
  static OperatorPolynomial b2(int k) { return symbol(Symbol::b2, k); }

  const std::map<Monomial, Integer>& terms() const { return t_; }
  size_t size() const { return t_.size(); }
  bool is_zero() const { return t_.empty(); }

  OperatorPolynomial& operator+=(const OperatorPolynomial& o);
  OperatorPolynomial& operator-=(const OperatorPolynomial& o);
  OperatorPolynomial& operator*=(const OperatorPolynomial& o);
  OperatorPolynomial& operator*=(const Integer& k);
  friend OperatorPolynomial operator+(OperatorPolynomial x, const OperatorPolynomial& y) { return x += y; }
  friend OperatorPolynomial operator-(OperatorPolynomial x, const OperatorPolynomial& y) { return x -= y; }
  friend OperatorPolynomial operator*(OperatorPolynomial x, const OperatorPolynomial& y) { return x *= y; }
  friend OperatorPolynomial operator*(OperatorPolynomial x, const Integer& k) { return x *= k; }
  friend bool operator==(const OperatorPolynomial&, const OperatorPolynomial&) = default;

  // every offset moved by k (same entry seen from base site n+k)
  OperatorPolynomial shift(int k) const;
  // exact division by a single symbol; throws if some term lacks it
  OperatorPolynomial divide_exact(Symbol s) const;

  // value with a[k] -> A(k), b2[k] -> B(k); lift turns an Integer into a T
  template <class T, class FA, class FB, class Lift>
  T evaluate(FA&& A, FB&& B, Lift&& lift) const;

  std::string str() const;

 private:
  void add_term(const Monomial& m, const Integer& c);
  std::map<Monomial, Integer> t_;
};

// L^j entry (n+m1, n+m2), summed over weighted paths
OperatorPolynomial operator_entry(int j, int m1, int m2);

// Both sides of an equation, each a polynomial in t: power -> coefficient.
// `inv_n` is the coefficient of the scalar 1/n (or 1/N) term on the left;
// for Toda equations `left_derivative` names the recursion coefficient whose
// scaled t-derivative -(1/N) d/dt appears on the left.
struct EquationSystem {
  enum Kind { string_diagonal, string_subdiagonal, toda_a, toda_b } kind;
  int valence;
  Rational inv_n = 0;
  std::optional<Symbol> left_derivative;
  std::map<int, OperatorPolynomial> left;
  std::map<int, OperatorPolynomial> right;

  size_t right_term_count() const;
};

std::pair<EquationSystem, EquationSystem> difference_string_system(int nu);
std::pair<EquationSystem, EquationSystem> toda_system(int nu);

// horizontal steps -> number of paths in P^length(m1, 0)
std::map<int, Integer> horizontal_count_census(int nu, int m1, int length);

// multinomial n! / (k1! k2! k3!), zero if any part is negative
Integer trinomial(int n, int k1, int k2, int k3);

// Transfer-matrix count of length-j paths from m1 to m2; independent of
// enumerate_motzkin.
Integer motzkin_count(int j, int m1, int m2);

// L^j entry by repeated multiplication of a symbolic band matrix; second
// route to operator_entry.
OperatorPolynomial operator_entry_by_matrix_power(int j, int m1, int m2);

template <class T, class FA, class FB, class Lift>
T OperatorPolynomial::evaluate(FA&& A, FB&& B, Lift&& lift) const {
  T total = lift(Integer(0));
  for (auto& [m, c] : t_) {
    T term = lift(c);
    for (auto& [sym, e] : m) {
      T v = sym.kind == Symbol::a ? A(sym.offset) : B(sym.offset);
      for (int i = 0; i < e; ++i) term *= v;
    }
    total += term;
  }
  return total;
}

}  // namespace mapgen
