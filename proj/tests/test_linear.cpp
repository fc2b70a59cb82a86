#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "alint/linear.hpp"
#include "support.hpp"

using namespace alint;

namespace {

bool satisfies(const LinearSystem& sys, const std::vector<Rational>& x) {
  for (const auto& row : sys.rows) {
    Rational lhs = 0;
    for (int j = 0; j < sys.vars; ++j) lhs += row.coeffs[j] * x[j];
    if (row.rel == LinearSystem::Rel::Eq ? lhs != row.rhs : !(lhs <= row.rhs)) return false;
  }
  return true;
}

LinearSystem with_sign_rows(LinearSystem sys) {
  for (int i = 0; i < sys.vars; ++i) {
    std::vector<Rational> row(sys.vars, 0);
    row[i] = -1;
    sys.add_le(std::move(row), 0);
  }
  return sys;
}

}  // namespace

TEST_CASE("hand solved systems") {
  // w0 + w1 = 1, w1 = 3/10, w >= 0
  LinearSystem sys;
  sys.vars = 2;
  sys.add_eq({1, 1}, 1);
  sys.add_le({0, 1}, rat(3, 10));
  sys.add_le({0, -1}, rat(-3, 10));

  auto fm = fourier_motzkin_feasible(with_sign_rows(sys));
  REQUIRE(fm.has_value());
  CHECK((*fm)[0] == rat(7, 10));
  CHECK((*fm)[1] == rat(3, 10));

  auto sx = simplex_phase1_feasible(sys);
  REQUIRE(sx.has_value());
  CHECK((*sx)[0] == rat(7, 10));
  CHECK((*sx)[1] == rat(3, 10));
}

TEST_CASE("infeasible systems") {
  LinearSystem sys;
  sys.vars = 1;
  sys.add_le({1}, 0);
  sys.add_le({-1}, -1);  // x >= 1 and x <= 0
  CHECK_FALSE(fourier_motzkin_feasible(sys).has_value());
  CHECK_FALSE(simplex_phase1_feasible(sys).has_value());

  LinearSystem eq;
  eq.vars = 2;
  eq.add_eq({1, 1}, 1);
  eq.add_eq({1, 1}, 2);
  CHECK_FALSE(fourier_motzkin_feasible(eq).has_value());
  CHECK_FALSE(simplex_phase1_feasible(eq).has_value());
}

TEST_CASE("unconstrained and degenerate cases") {
  LinearSystem sys;
  sys.vars = 2;
  auto fm = fourier_motzkin_feasible(sys);
  REQUIRE(fm.has_value());
  CHECK(satisfies(sys, *fm));

  LinearSystem zero;
  zero.vars = 1;
  zero.add_eq({0}, 0);
  CHECK(fourier_motzkin_feasible(zero).has_value());
  CHECK(simplex_phase1_feasible(zero).has_value());

  LinearSystem bad;
  bad.vars = 1;
  bad.add_eq({0}, 1);
  CHECK_FALSE(fourier_motzkin_feasible(bad).has_value());
  CHECK_FALSE(simplex_phase1_feasible(bad).has_value());
}

TEST_CASE("both methods agree on random systems over nonnegative variables") {
  testkit::Rng rng(606);
  for (int iter = 0; iter < 300; ++iter) {
    LinearSystem sys;
    sys.vars = rng.uniform(1, 4);
    int rows = rng.uniform(1, 5);
    for (int r = 0; r < rows; ++r) {
      std::vector<Rational> coeffs;
      for (int j = 0; j < sys.vars; ++j) coeffs.push_back(rat(rng.uniform(-3, 3)));
      Rational rhs = rat(rng.uniform(-4, 6), rng.uniform(1, 2));
      if (rng.chance(0.25))
        sys.add_eq(std::move(coeffs), rhs);
      else
        sys.add_le(std::move(coeffs), rhs);
    }

    auto sx = simplex_phase1_feasible(sys);
    auto fm = fourier_motzkin_feasible(with_sign_rows(sys));
    CHECK(sx.has_value() == fm.has_value());
    if (sx) {
      auto signed_sys = with_sign_rows(sys);
      CHECK(satisfies(signed_sys, *sx));
      CHECK(satisfies(signed_sys, *fm));
    }
  }
}
