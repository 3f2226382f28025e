#pragma once

// Truncated multivariate Taylor polynomials (total degree <= 3).
//
// A Jet3 in m variables stores one coefficient per multi-index alpha with
// |alpha| <= 3, namely d^alpha f / alpha! at the base point. Arithmetic is
// truncated polynomial arithmetic, so every coefficient of degree k of a
// result depends only on the coefficients of degree <= k of the operands.
// Code that differentiates a jet (lowering its trustworthy degree) relies on
// that property.

#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace parasurf {

inline constexpr int kJetOrder = 3;

/// Exponent vector of length num_vars.
using MultiIndex = std::vector<int>;

/// Enumeration of all multi-indices of total degree <= 3 in m variables,
/// graded (degree 0, 1, 2, 3) and lexicographic inside a degree.
class MultiIndexTable {
public:
  struct Product {
    int lhs;
    int rhs;
    int target;
  };

  static const MultiIndexTable& get(int num_vars);

  int num_vars() const { return num_vars_; }
  std::size_t size() const { return exponents_.size(); }
  int degree(int index) const { return degree_[index]; }
  const MultiIndex& exponents(int index) const { return exponents_[index]; }
  /// First index of degree d (d in 0..4; entry 4 is size()).
  int degree_begin(int d) const { return degree_begin_[d]; }

  /// -1 if |alpha| > 3.
  int index_of(const MultiIndex& alpha) const;
  int index_of_unit(int var) const { return 1 + var; }

  /// All (lhs, rhs) pairs whose exponent sum has degree <= 3.
  const std::vector<Product>& products() const { return products_; }

  /// Index of alpha + e_var, or -1 when that exceeds degree 3.
  int raise(int index, int var) const { return raise_[index * num_vars_ + var]; }

private:
  explicit MultiIndexTable(int num_vars);

  int num_vars_;
  std::vector<MultiIndex> exponents_;
  std::vector<int> degree_;
  int degree_begin_[5] = {};
  std::vector<Product> products_;
  std::vector<int> raise_;
  std::map<MultiIndex, int> lookup_;
};

class Jet3 {
public:
  Jet3() = default;
  explicit Jet3(int num_vars, double constant = 0.0);

  /// Jet of the coordinate function u^index at a base point where u^index = value.
  static Jet3 variable(int index, double value, int num_vars);

  int num_vars() const { return table_ ? table_->num_vars() : 0; }
  bool empty() const { return table_ == nullptr; }
  const MultiIndexTable& table() const { return *table_; }

  double value() const { return coeffs_[0]; }
  std::span<const double> coeffs() const { return coeffs_; }
  std::span<double> coeffs() { return coeffs_; }
  double coeff(const MultiIndex& alpha) const;

  /// d^alpha at the base point, i.e. coeff(alpha) * alpha!.
  double partial(const MultiIndex& alpha) const;
  /// First partial d/du^var.
  double gradient(int var) const { return coeffs_[1 + var]; }

  /// Jet of d/du^var. Degree-3 coefficients of the result are zero, so the
  /// result is only trustworthy through degree 2.
  Jet3 derivative(int var) const;

  /// The part of degree >= 1.
  Jet3 nilpotent() const;

  Jet3& operator+=(const Jet3& other);
  Jet3& operator-=(const Jet3& other);
  Jet3& operator*=(const Jet3& other);
  Jet3& operator/=(const Jet3& other);
  Jet3& operator+=(double c);
  Jet3& operator-=(double c);
  Jet3& operator*=(double c);
  Jet3& operator/=(double c);

  Jet3 operator-() const;

private:
  void require_same_shape(const Jet3& other) const;

  const MultiIndexTable* table_ = nullptr;
  std::vector<double> coeffs_;
};

Jet3 operator+(Jet3 a, const Jet3& b);
Jet3 operator-(Jet3 a, const Jet3& b);
Jet3 operator*(const Jet3& a, const Jet3& b);
Jet3 operator/(const Jet3& a, const Jet3& b);
Jet3 operator+(Jet3 a, double c);
Jet3 operator+(double c, Jet3 a);
Jet3 operator-(Jet3 a, double c);
Jet3 operator-(double c, const Jet3& a);
Jet3 operator*(Jet3 a, double c);
Jet3 operator*(double c, Jet3 a);
Jet3 operator/(Jet3 a, double c);

Jet3 reciprocal(const Jet3& a);
Jet3 sqrt(const Jet3& a);
Jet3 exp(const Jet3& a);
Jet3 cosh(const Jet3& a);
Jet3 sinh(const Jet3& a);

// Named forms of the operations above.

enum class ArithOp { Add, Sub, Mul, Div };
enum class AnalyticFn { Sqrt, Cosh, Sinh, Exp };

Jet3 seed_variable(int index, double value, int num_vars);
Jet3 arith(const Jet3& a, const Jet3& b, ArithOp op);
Jet3 analytic(const Jet3& a, AnalyticFn fn);
double extract_partial(const Jet3& a, const MultiIndex& alpha);

/// Plain evaluation of the analytic function at a real point.
double analytic_value(double x, AnalyticFn fn);

} // namespace parasurf
