#include "parasurf/jet.hpp"

#include "parasurf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace parasurf {

namespace {

// All exponent vectors of total degree exactly d, lexicographically descending
// in the first variable, i.e. u0^d comes first.
void enumerate_degree(int num_vars, int d, int var, MultiIndex& current,
                      std::vector<MultiIndex>& out) {
  if (var == num_vars - 1) {
    current[var] = d;
    out.push_back(current);
    current[var] = 0;
    return;
  }
  for (int k = d; k >= 0; --k) {
    current[var] = k;
    enumerate_degree(num_vars, d - k, var + 1, current, out);
  }
  current[var] = 0;
}

int factorial_product(const MultiIndex& alpha) {
  static constexpr int kFact[] = {1, 1, 2, 6};
  int out = 1;
  for (int a : alpha) out *= kFact[a];
  return out;
}

struct TableRegistry {
  std::mutex mutex;
  std::map<int, std::unique_ptr<MultiIndexTable>> tables;
};

} // namespace

const MultiIndexTable& MultiIndexTable::get(int num_vars) {
  if (num_vars < 1) throw ShapeError("jet: num_vars must be positive");
  static TableRegistry registry;
  std::lock_guard lock(registry.mutex);
  auto& slot = registry.tables[num_vars];
  if (!slot) slot.reset(new MultiIndexTable(num_vars));
  return *slot;
}

MultiIndexTable::MultiIndexTable(int num_vars) : num_vars_(num_vars) {
  MultiIndex current(num_vars, 0);
  for (int d = 0; d <= kJetOrder; ++d) {
    degree_begin_[d] = static_cast<int>(exponents_.size());
    enumerate_degree(num_vars, d, 0, current, exponents_);
  }
  degree_begin_[kJetOrder + 1] = static_cast<int>(exponents_.size());

  auto& lookup = lookup_;
  degree_.resize(exponents_.size());
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    int d = 0;
    for (int a : exponents_[i]) d += a;
    degree_[i] = d;
    lookup.emplace(exponents_[i], static_cast<int>(i));
  }

  const int size = static_cast<int>(exponents_.size());
  for (int a = 0; a < size; ++a) {
    for (int b = 0; b < size; ++b) {
      if (degree_[a] + degree_[b] > kJetOrder) continue;
      MultiIndex sum(num_vars, 0);
      for (int v = 0; v < num_vars; ++v) sum[v] = exponents_[a][v] + exponents_[b][v];
      products_.push_back({a, b, lookup.at(sum)});
    }
  }

  raise_.assign(static_cast<std::size_t>(size) * num_vars, -1);
  for (int a = 0; a < size; ++a) {
    if (degree_[a] == kJetOrder) continue;
    for (int v = 0; v < num_vars; ++v) {
      MultiIndex up = exponents_[a];
      ++up[v];
      raise_[a * num_vars + v] = lookup.at(up);
    }
  }
}

int MultiIndexTable::index_of(const MultiIndex& alpha) const {
  if (static_cast<int>(alpha.size()) != num_vars_)
    throw ShapeError("jet: multi-index length " + std::to_string(alpha.size()) +
                     " does not match " + std::to_string(num_vars_) + " variables");
  int d = 0;
  for (int a : alpha) {
    if (a < 0) throw ShapeError("jet: negative exponent in multi-index");
    d += a;
  }
  if (d > kJetOrder) return -1;
  return lookup_.at(alpha);
}

// ---------------------------------------------------------------------------

Jet3::Jet3(int num_vars, double constant)
    : table_(&MultiIndexTable::get(num_vars)), coeffs_(table_->size(), 0.0) {
  coeffs_[0] = constant;
}

Jet3 Jet3::variable(int index, double value, int num_vars) {
  if (index < 0 || index >= num_vars)
    throw ShapeError("jet: variable index " + std::to_string(index) + " out of range [0, " +
                     std::to_string(num_vars) + ")");
  Jet3 out(num_vars, value);
  out.coeffs_[out.table_->index_of_unit(index)] = 1.0;
  return out;
}

double Jet3::coeff(const MultiIndex& alpha) const {
  const int idx = table_->index_of(alpha);
  if (idx < 0) throw OrderExceeded("jet: multi-index order exceeds 3");
  return coeffs_[idx];
}

double Jet3::partial(const MultiIndex& alpha) const {
  return coeff(alpha) * factorial_product(alpha);
}

Jet3 Jet3::derivative(int var) const {
  if (var < 0 || var >= num_vars()) throw ShapeError("jet: derivative variable out of range");
  Jet3 out(num_vars());
  const int below_top = table_->degree_begin(kJetOrder);
  for (int a = 0; a < below_top; ++a) {
    const int up = table_->raise(a, var);
    out.coeffs_[a] = coeffs_[up] * (table_->exponents(a)[var] + 1);
  }
  return out;
}

Jet3 Jet3::nilpotent() const {
  Jet3 out = *this;
  out.coeffs_[0] = 0.0;
  return out;
}

void Jet3::require_same_shape(const Jet3& other) const {
  if (table_ != other.table_) throw ShapeError("jet: operands have different num_vars");
}

Jet3& Jet3::operator+=(const Jet3& other) {
  require_same_shape(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Jet3& Jet3::operator-=(const Jet3& other) {
  require_same_shape(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

Jet3& Jet3::operator*=(const Jet3& other) { return *this = *this * other; }
Jet3& Jet3::operator/=(const Jet3& other) { return *this = *this / other; }

Jet3& Jet3::operator+=(double c) {
  coeffs_[0] += c;
  return *this;
}

Jet3& Jet3::operator-=(double c) {
  coeffs_[0] -= c;
  return *this;
}

Jet3& Jet3::operator*=(double c) {
  for (double& x : coeffs_) x *= c;
  return *this;
}

Jet3& Jet3::operator/=(double c) {
  for (double& x : coeffs_) x /= c;
  return *this;
}

Jet3 Jet3::operator-() const {
  Jet3 out = *this;
  for (double& x : out.coeffs_) x = -x;
  return out;
}

Jet3 operator+(Jet3 a, const Jet3& b) { return a += b; }
Jet3 operator-(Jet3 a, const Jet3& b) { return a -= b; }
Jet3 operator+(Jet3 a, double c) { return a += c; }
Jet3 operator+(double c, Jet3 a) { return a += c; }
Jet3 operator-(Jet3 a, double c) { return a -= c; }
Jet3 operator-(double c, const Jet3& a) { return (-a) += c; }
Jet3 operator*(Jet3 a, double c) { return a *= c; }
Jet3 operator*(double c, Jet3 a) { return a *= c; }
Jet3 operator/(Jet3 a, double c) { return a /= c; }

Jet3 operator*(const Jet3& a, const Jet3& b) {
  if (a.empty() || b.empty()) throw ShapeError("jet: operand is empty");
  if (&a.table() != &b.table()) throw ShapeError("jet: operands have different num_vars");
  Jet3 out(a.num_vars());
  auto lhs = a.coeffs();
  auto rhs = b.coeffs();
  auto dst = out.coeffs();
  for (const auto& p : a.table().products()) dst[p.target] += lhs[p.lhs] * rhs[p.rhs];
  return out;
}

namespace {

// g(a) = sum_k taylor[k] * (a - a0)^k, truncated at degree 3.
Jet3 compose(const Jet3& a, const double (&taylor)[4]) {
  const Jet3 t = a.nilpotent();
  const Jet3 t2 = t * t;
  const Jet3 t3 = t2 * t;
  Jet3 out(a.num_vars(), taylor[0]);
  out += taylor[1] * t;
  out += taylor[2] * t2;
  out += taylor[3] * t3;
  return out;
}

} // namespace

Jet3 reciprocal(const Jet3& a) {
  const double a0 = a.value();
  if (!(std::abs(a0) > 1e-300)) throw DegenerateJet("jet: division by a jet with zero constant term");
  const double r = 1.0 / a0;
  const double taylor[4] = {r, -r * r, r * r * r, -r * r * r * r};
  return compose(a, taylor);
}

Jet3 operator/(const Jet3& a, const Jet3& b) { return a * reciprocal(b); }

Jet3 sqrt(const Jet3& a) {
  const double a0 = a.value();
  if (!(a0 > 0.0)) throw DegenerateJet("jet: sqrt of a jet with non-positive constant term");
  const double s = std::sqrt(a0);
  const double taylor[4] = {s, 0.5 / s, -0.125 / (s * a0), 0.0625 / (s * a0 * a0)};
  return compose(a, taylor);
}

Jet3 exp(const Jet3& a) {
  const double e = std::exp(a.value());
  const double taylor[4] = {e, e, e / 2.0, e / 6.0};
  return compose(a, taylor);
}

Jet3 cosh(const Jet3& a) {
  const double c = std::cosh(a.value());
  const double s = std::sinh(a.value());
  const double taylor[4] = {c, s, c / 2.0, s / 6.0};
  return compose(a, taylor);
}

Jet3 sinh(const Jet3& a) {
  const double c = std::cosh(a.value());
  const double s = std::sinh(a.value());
  const double taylor[4] = {s, c, s / 2.0, c / 6.0};
  return compose(a, taylor);
}

Jet3 seed_variable(int index, double value, int num_vars) {
  return Jet3::variable(index, value, num_vars);
}

Jet3 arith(const Jet3& a, const Jet3& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
  }
  throw ShapeError("jet: unknown arithmetic op");
}

Jet3 analytic(const Jet3& a, AnalyticFn fn) {
  switch (fn) {
    case AnalyticFn::Sqrt: return sqrt(a);
    case AnalyticFn::Cosh: return cosh(a);
    case AnalyticFn::Sinh: return sinh(a);
    case AnalyticFn::Exp: return exp(a);
  }
  throw ShapeError("jet: unknown analytic function");
}

double extract_partial(const Jet3& a, const MultiIndex& alpha) { return a.partial(alpha); }

double analytic_value(double x, AnalyticFn fn) {
  switch (fn) {
    case AnalyticFn::Sqrt: return std::sqrt(x);
    case AnalyticFn::Cosh: return std::cosh(x);
    case AnalyticFn::Sinh: return std::sinh(x);
    case AnalyticFn::Exp: return std::exp(x);
  }
  return 0.0;
}

} // namespace parasurf
