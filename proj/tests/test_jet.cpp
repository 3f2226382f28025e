#include "doctest.h"
#include "oracles.hpp"

#include "parasurf/errors.hpp"
#include "parasurf/jet.hpp"
#include "parasurf/rng.hpp"

using namespace parasurf;

namespace {

Jet3 random_jet(SeededUniform& rng, int m, double constant_lo = -1.0) {
  Jet3 a(m);
  for (auto& c : a.coeffs()) c = rng.uniform(-1.0, 1.0);
  a.coeffs()[0] = rng.uniform(constant_lo, 2.0);
  return a;
}

// All multi-indices of total degree <= 3 in m variables.
std::vector<MultiIndex> all_indices(int m) {
  const auto& table = MultiIndexTable::get(m);
  std::vector<MultiIndex> out;
  for (int i = 0; i < static_cast<int>(table.size()); ++i) out.push_back(table.exponents(i));
  return out;
}

double factorial(int k) { return k <= 1 ? 1.0 : k * factorial(k - 1); }

double binomial_product(const MultiIndex& alpha, const MultiIndex& beta) {
  double out = 1.0;
  for (std::size_t v = 0; v < alpha.size(); ++v)
    out *= factorial(alpha[v]) / (factorial(beta[v]) * factorial(alpha[v] - beta[v]));
  return out;
}

} // namespace

TEST_CASE("multi-index table covers exactly degree <= 3") {
  // C(m + 3, 3) multi-indices.
  CHECK(MultiIndexTable::get(1).size() == 4);
  CHECK(MultiIndexTable::get(3).size() == 20);
  CHECK(MultiIndexTable::get(5).size() == 56);
  const auto& t = MultiIndexTable::get(3);
  CHECK(t.index_of({1, 1, 1}) >= 0);
  CHECK(t.index_of({2, 1, 1}) == -1);
  CHECK(t.degree_begin(4) == 20);
}

TEST_CASE("seed_variable") {
  const Jet3 a = seed_variable(0, 2.0, 1);
  CHECK(a.value() == 2.0);
  CHECK(a.coeff({1}) == 1.0);
  CHECK(a.coeff({2}) == 0.0);
  CHECK(a.coeff({3}) == 0.0);

  const Jet3 b = seed_variable(1, 0.0, 3);
  CHECK(b.value() == 0.0);
  CHECK(b.coeff({0, 1, 0}) == 1.0);
  CHECK(b.coeff({1, 0, 0}) == 0.0);

  CHECK(extract_partial(seed_variable(0, 5.0, 2), {2, 0}) == 0.0);
  CHECK_THROWS_AS(seed_variable(3, 0.0, 3), Error);
}

TEST_CASE("arithmetic on hand expansions") {
  const Jet3 u = seed_variable(0, 3.0, 1);
  const Jet3 sq = arith(u, u, ArithOp::Mul);
  CHECK(sq.value() == 9.0);
  CHECK(sq.coeff({1}) == 6.0);
  CHECK(sq.coeff({2}) == 1.0);
  CHECK(sq.coeff({3}) == 0.0);

  // 1 / (1 + u) = 1 - u + u^2 - u^3 + ...
  const Jet3 t = seed_variable(0, 0.0, 1);
  const Jet3 q = arith(Jet3(1, 1.0), t + 1.0, ArithOp::Div);
  CHECK(q.coeff({0}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(q.coeff({1}) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(q.coeff({2}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(q.coeff({3}) == doctest::Approx(-1.0).epsilon(1e-15));

  SeededUniform rng(11);
  const Jet3 a = random_jet(rng, 3), b = random_jet(rng, 3);
  const Jet3 c = arith(a, arith(b, b, ArithOp::Sub), ArithOp::Add);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) CHECK(c.coeffs()[i] == a.coeffs()[i]);
}

TEST_CASE("division by a degenerate jet") {
  const Jet3 u = seed_variable(0, 0.0, 2);
  CHECK_THROWS_AS(Jet3(2, 1.0) / u, DegenerateJet);
  CHECK_THROWS_AS(reciprocal(Jet3(2, 1e-301)), DegenerateJet);
  CHECK_NOTHROW(reciprocal(Jet3(2, 1e-200)));
}

TEST_CASE("analytic functions against series") {
  const Jet3 t = seed_variable(0, 0.0, 1);

  // sqrt(1 + u) = 1 + u/2 - u^2/8 + u^3/16
  const Jet3 s = analytic(t + 1.0, AnalyticFn::Sqrt);
  CHECK(s.coeff({0}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.coeff({1}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(s.coeff({2}) == doctest::Approx(-0.125).epsilon(1e-15));
  CHECK(s.coeff({3}) == doctest::Approx(0.0625).epsilon(1e-15));

  const Jet3 c = analytic(t, AnalyticFn::Cosh);
  CHECK(c.coeff({0}) == 1.0);
  CHECK(c.coeff({1}) == 0.0);
  CHECK(c.coeff({2}) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(c.coeff({3}) == 0.0);

  const Jet3 four = analytic(Jet3(3, 4.0), AnalyticFn::Sqrt);
  CHECK(four.value() == 2.0);
  for (std::size_t i = 1; i < four.coeffs().size(); ++i) CHECK(four.coeffs()[i] == 0.0);

  CHECK_THROWS_AS(analytic(Jet3(1, 0.0), AnalyticFn::Sqrt), DegenerateJet);
  CHECK_THROWS_AS(analytic(Jet3(1, -1.0), AnalyticFn::Sqrt), DegenerateJet);
}

TEST_CASE("extract_partial") {
  const Jet3 u = seed_variable(0, 0.7, 2), v = seed_variable(1, -0.2, 2);
  CHECK(extract_partial(u * u, {2, 0}) == 2.0);
  CHECK(extract_partial(u * v, {1, 1}) == 1.0);
  CHECK_THROWS_AS(extract_partial(u, {2, 2}), OrderExceeded);
  CHECK_THROWS_AS(extract_partial(u, {4, 0}), OrderExceeded);

  // cosh'' at 0.3 against a central difference with step 1e-4.
  const double h = 1e-4, t0 = 0.3;
  const double fd = (std::cosh(t0 + h) - 2 * std::cosh(t0) + std::cosh(t0 - h)) / (h * h);
  const double jet = extract_partial(analytic(seed_variable(0, t0, 1), AnalyticFn::Cosh), {2});
  CHECK(oracle::rel_error(jet, fd) < 1e-6);
}

TEST_CASE("Leibniz rule for products") {
  SeededUniform rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + trial % 4;
    const Jet3 a = random_jet(rng, m), b = random_jet(rng, m);
    const Jet3 ab = a * b;
    const auto indices = all_indices(m);
    for (const auto& alpha : indices) {
      double expected = 0.0, scale = 0.0;
      for (const auto& beta : indices) {
        bool below = true;
        for (int v = 0; v < m; ++v) below = below && beta[v] <= alpha[v];
        if (!below) continue;
        MultiIndex rest(m);
        for (int v = 0; v < m; ++v) rest[v] = alpha[v] - beta[v];
        const double term = binomial_product(alpha, beta) * a.partial(beta) * b.partial(rest);
        expected += term;
        scale += std::abs(term);
      }
      CHECK(std::abs(ab.partial(alpha) - expected) <= 1e-12 * std::max(scale, 1.0));
    }
  }
}

TEST_CASE("division undoes multiplication") {
  SeededUniform rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 1 + trial % 5;
    const Jet3 a = random_jet(rng, m), b = random_jet(rng, m, 0.5);
    const Jet3 back = (a * b) / b;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
      CHECK(std::abs(back.coeffs()[i] - a.coeffs()[i]) <= 1e-12 * std::max(std::abs(a.coeffs()[i]), 1.0));
  }
}

TEST_CASE("jets of composite functions match finite differences") {
  // g(u, v) = sqrt(2 + u v) * cosh(u) / (1 + v^2) + exp(sinh(v) - u)
  auto reference = [](const oracle::Point& p) {
    const oracle::Real u = p[0], v = p[1];
    return std::sqrt(2 + u * v) * std::cosh(u) / (1 + v * v) + std::exp(std::sinh(v) - u);
  };
  SeededUniform rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd p(2);
    p << rng.uniform(-1, 1), rng.uniform(-1, 1);
    const Jet3 u = seed_variable(0, p(0), 2), v = seed_variable(1, p(1), 2);
    const Jet3 g = sqrt(2.0 + u * v) * cosh(u) / (1.0 + v * v) + exp(sinh(v) - u);
    for (const auto& alpha : all_indices(2)) {
      const int order = alpha[0] + alpha[1];
      if (order == 0) continue;
      const double fd = oracle::fd_partial(reference, {p(0), p(1)}, alpha, oracle::step_for_order(order));
      CHECK(oracle::rel_error(g.partial(alpha), fd) < 1e-6);
    }
  }
}

TEST_CASE("derivative lowers the order by one") {
  const Jet3 u = seed_variable(0, 0.5, 2), v = seed_variable(1, 0.25, 2);
  const Jet3 g = u * u * v;  // g_u = 2 u v
  const Jet3 gu = g.derivative(0);
  CHECK(gu.value() == doctest::Approx(2 * 0.5 * 0.25));
  CHECK(gu.partial({1, 0}) == doctest::Approx(2 * 0.25));
  CHECK(gu.partial({0, 1}) == doctest::Approx(2 * 0.5));
  CHECK(gu.partial({1, 1}) == doctest::Approx(2.0));
}
