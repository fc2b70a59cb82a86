#pragma once

#include <optional>

#include "alint/enumerate.hpp"
#include "alint/ultramean.hpp"

namespace alint {

struct MixtureSolution {
  std::vector<Rational> weights;
  UltrameanResult mixture;  // verified to satisfy the theory
};

/// Find nonnegative weights summing to 1 such that the weighted ultramean of
/// the models satisfies every theory condition, by exact linear feasibility
/// (Fourier-Motzkin for up to 4 conditions, phase-1 simplex beyond). Returns
/// nothing when no mixture over this family exists, which does not refute
/// satisfiability in general. Throws OpenCondition on free variables.
std::optional<MixtureSolution> solve_mixture(const Signature& sig,
                                             const std::vector<FiniteChargedStructure>& models,
                                             const Theory& theory, UltrameanOptions opts = {});

/// The evaluation functional of a tuple, materialized over a finite formula
/// family. vars names the tuple coordinates.
struct RealizedType {
  FiniteChargedStructure base;
  std::vector<std::string> vars;
  std::vector<int> tuple;
  std::vector<FormulaPtr> family;
  std::vector<Rational> values;

  Environment env() const;
};

RealizedType realized_type(const FiniteChargedStructure& s,
                           const std::vector<std::string>& vars, const std::vector<int>& tuple,
                           const std::vector<FormulaPtr>& family);

/// Re-derives the type axioms on the materialized family: p(1) = 1 where 1
/// is present, and p(phi) >= 0 for every family formula that is nonnegative
/// under all assignments.
bool verify_type_invariants(const RealizedType& p);

/// Lookup only; throws FamilyMiss when the formula is not in the family.
Rational type_value(const RealizedType& p, const Formula& phi);

/// p+(phi) = p(int var. phi); the integral formula is added to the family.
Rational plus_map(RealizedType& p, const std::string& var, const FormulaPtr& phi);

inline const std::vector<Rational>& default_scalar_set() {
  static const std::vector<Rational> scalars{-1, 0, rat(1, 2), 1};
  return scalars;
}

/// Distance between the depth-bounded realized types of two equal-length
/// tuples: min of the tuple distance over all pairs of tuples realizing the
/// same value vectors on every enumerated formula. The depth bound is
/// explicit; no silent approximation.
Rational type_distance(const FiniteChargedStructure& s, const std::vector<int>& a,
                       const std::vector<int>& b, int depth,
                       const std::vector<Rational>& scalars = default_scalar_set());

/// Integral of phi against the n-fold product charge: the sum over all
/// tuples of the charge product times the value. Equals n nested integrals.
Rational iterated_charge(const FiniteChargedStructure& s, const Formula& phi,
                         const std::vector<std::string>& vars);

/// Max over the assignments of |int x int y phi - int y int x phi|; exact
/// arithmetic makes this 0 on every finite structure.
Rational check_fubini(const FiniteChargedStructure& s, const FormulaPtr& phi,
                      const std::string& x, const std::string& y,
                      const std::vector<Environment>& assignments);

struct ElemCheckOptions {
  int depth = 2;
  std::vector<Rational> scalars = default_scalar_set();
  int max_vars = 2;          // variable pool size for enumerated formulas
  long budget = 2'000'000;   // evaluation budget; BudgetExceeded beyond
};

struct ElemMismatch {
  FormulaPtr formula;
  std::vector<int> tuple;
  Rational left, right;
};

struct ElemReport {
  long formulas = 0;
  long evaluations = 0;
  std::vector<ElemMismatch> mismatches;

  bool ok() const { return mismatches.empty(); }
};

/// Enumerate all formulas up to the depth bound and compare values at every
/// tuple of M against its image under point_map in N.
ElemReport bounded_elementary_check(const FiniteChargedStructure& m,
                                    const FiniteChargedStructure& n,
                                    const std::vector<int>& point_map,
                                    ElemCheckOptions opts = {});

}  // namespace alint
