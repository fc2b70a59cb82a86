#pragma once

#include <optional>
#include <vector>

#include "alint/rational.hpp"

namespace alint {

/// A system of linear constraints over nonnegative-free variables in exact
/// rational arithmetic. Rows are a.x <= b or a.x == b.
struct LinearSystem {
  enum class Rel { Le, Eq };
  struct Row {
    std::vector<Rational> coeffs;
    Rel rel = Rel::Le;
    Rational rhs;
  };

  int vars = 0;
  std::vector<Row> rows;

  void add_le(std::vector<Rational> coeffs, Rational rhs);
  void add_eq(std::vector<Rational> coeffs, Rational rhs);
};

/// Fourier-Motzkin elimination with back-substitution. Variables are free;
/// equalities are split into two inequalities. Exact and complete; row count
/// can square per eliminated variable, so reserve it for small systems.
std::optional<std::vector<Rational>> fourier_motzkin_feasible(const LinearSystem& system);

/// Phase-1 simplex with Bland's rule over the rationals; variables are
/// constrained to be >= 0.
std::optional<std::vector<Rational>> simplex_phase1_feasible(const LinearSystem& system);

}  // namespace alint
