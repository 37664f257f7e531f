#pragma once

// Sparse multivariate polynomials with exact or floating coefficients, plus a
// compiled complex evaluator for residuals and Jacobians.

#include <map>
#include <stdexcept>
#include <vector>

#include "ccroots/scalar.hpp"

namespace ccroots {

struct Monomial {
  std::vector<int> exponents;

  int degree() const {
    int d = 0;
    for (int e : exponents) d += e;
    return d;
  }
  bool operator==(const Monomial&) const = default;
};

/// Graded lexicographic order: lower total degree first, then x_1 > x_2 > ...
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.exponents > b.exponents;
  }
};

template <class S>
class Polynomial {
 public:
  using TermMap = std::map<Monomial, S, GradedLex>;

  explicit Polynomial(int num_vars = 0) : n_(num_vars) {}

  static Polynomial constant(int num_vars, const S& c) {
    Polynomial p(num_vars);
    p.add_term(Monomial{std::vector<int>(num_vars, 0)}, c);
    return p;
  }
  static Polynomial variable(int num_vars, int i) {
    Polynomial p(num_vars);
    Monomial m{std::vector<int>(num_vars, 0)};
    m.exponents[i] = 1;
    p.add_term(m, S(1));
    return p;
  }

  int num_vars() const { return n_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

  S coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? S(0) : it->second;
  }

  void add_term(const Monomial& m, const S& c) {
    if (static_cast<int>(m.exponents.size()) != n_)
      throw std::invalid_argument("polynomial: monomial length mismatch");
    if (is_zero_value(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (is_zero_value(it->second)) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Polynomial& operator*=(const S& s) {
    if (is_zero_value(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const S& s) { return a *= s; }
  friend Polynomial operator*(const S& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check(b);
    Polynomial out(a.n_);
    Monomial m{std::vector<int>(a.n_)};
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        for (int k = 0; k < a.n_; ++k) m.exponents[k] = ma.exponents[k] + mb.exponents[k];
        out.add_term(m, ca * cb);
      }
    return out;
  }

  /// this * x_i, the workhorse of cluster-operator actions.
  Polynomial times_variable(int i) const {
    Polynomial out(n_);
    for (const auto& [m, c] : terms_) {
      Monomial k = m;
      ++k.exponents[i];
      out.terms_.emplace(std::move(k), c);
    }
    return out;
  }

  /// Accumulates s * x_i * p into this.
  void add_scaled_times_variable(const Polynomial& p, int i, const S& s) {
    check(p);
    for (const auto& [m, c] : p.terms_) {
      Monomial k = m;
      ++k.exponents[i];
      add_term(k, s * c);
    }
  }

  Polynomial derivative(int i) const {
    Polynomial out(n_);
    for (const auto& [m, c] : terms_) {
      if (m.exponents[i] == 0) continue;
      Monomial k = m;
      --k.exponents[i];
      out.add_term(k, c * S(m.exponents[i]));
    }
    return out;
  }

  /// Drops terms below tol in magnitude; exact polynomials are left untouched.
  void prune(double tol) {
    if constexpr (is_exact_v<S>) {
      (void)tol;
    } else {
      for (auto it = terms_.begin(); it != terms_.end();)
        it = std::abs(it->second) < tol ? terms_.erase(it) : std::next(it);
    }
  }

  std::vector<Monomial> support() const {
    std::vector<Monomial> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) out.push_back(m);
    return out;
  }

  template <class T>
  T evaluate(const Vector<T>& x) const {
    if (x.size() != n_) throw std::invalid_argument("polynomial: point dimension mismatch");
    T acc(0);
    for (const auto& [m, c] : terms_) {
      T v = scalar_cast<T>(c);
      for (int k = 0; k < n_; ++k)
        for (int e = 0; e < m.exponents[k]; ++e) v *= x(k);
      acc += v;
    }
    return acc;
  }

  bool operator==(const Polynomial& o) const { return n_ == o.n_ && terms_ == o.terms_; }

 private:
  static bool is_zero_value(const S& c) { return ccroots::is_zero(c); }
  void check(const Polynomial& o) const {
    if (o.n_ != n_) throw std::invalid_argument("polynomial: variable count mismatch");
  }

  int n_;
  TermMap terms_;
};

template <class To, class From>
Polynomial<To> polynomial_cast(const Polynomial<From>& p) {
  Polynomial<To> out(p.num_vars());
  for (const auto& [m, c] : p.terms()) out.add_term(m, scalar_cast<To>(c));
  return out;
}

/// Flattened polynomial system for repeated complex evaluation. The Jacobian is
/// assembled from the differentiated polynomials, not by finite differences.
class CompiledSystem {
 public:
  template <class S>
  explicit CompiledSystem(const std::vector<Polynomial<S>>& equations, int num_vars)
      : n_(num_vars) {
    for (const auto& f : equations) {
      values_.push_back(compile(f));
      std::vector<Flat> row;
      for (int j = 0; j < n_; ++j) row.push_back(compile(f.derivative(j)));
      jacobian_.push_back(std::move(row));
    }
  }

  int num_vars() const { return n_; }
  int num_equations() const { return static_cast<int>(values_.size()); }

  Vector<Complex> residual(const Vector<Complex>& x) const {
    Vector<Complex> f(num_equations());
    for (int i = 0; i < num_equations(); ++i) f(i) = eval(values_[i], x);
    return f;
  }

  Matrix<Complex> jacobian(const Vector<Complex>& x) const {
    Matrix<Complex> J(num_equations(), n_);
    for (int i = 0; i < num_equations(); ++i)
      for (int j = 0; j < n_; ++j) J(i, j) = eval(jacobian_[i][j], x);
    return J;
  }

 private:
  struct Term {
    Complex coeff;
    std::vector<std::pair<int, int>> factors;  // (variable, exponent)
  };
  using Flat = std::vector<Term>;

  template <class S>
  static Flat compile(const Polynomial<S>& p) {
    Flat out;
    for (const auto& [m, c] : p.terms()) {
      Term t{to_complex(c), {}};
      for (int k = 0; k < static_cast<int>(m.exponents.size()); ++k)
        if (m.exponents[k] > 0) t.factors.emplace_back(k, m.exponents[k]);
      out.push_back(std::move(t));
    }
    return out;
  }

  static Complex eval(const Flat& f, const Vector<Complex>& x) {
    Complex acc(0.0);
    for (const auto& t : f) {
      Complex v = t.coeff;
      for (auto [k, e] : t.factors)
        for (int r = 0; r < e; ++r) v *= x(k);
      acc += v;
    }
    return acc;
  }

  int n_;
  std::vector<Flat> values_;
  std::vector<std::vector<Flat>> jacobian_;
};

}  // namespace ccroots
