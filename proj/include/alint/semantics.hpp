#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "alint/syntax.hpp"

namespace alint {

/// Interpretation table of a function symbol: row-major over point indices,
/// values.size() == n^arity.
struct FunctionTable {
  int arity = 1;
  std::vector<int> values;
};

struct RelationTable {
  int arity = 1;
  std::vector<Rational> values;
};

/// Row-major index of an argument tuple into an interpretation table.
long table_index(const std::vector<int>& args, int n);

/// A finite point set with a rational metric, a charge (weight per point)
/// and interpretations for every symbol of the signature. Instances are
/// immutable once built; validation is a separate step.
struct FiniteChargedStructure {
  Signature sig;
  std::vector<std::string> points;
  std::vector<std::vector<Rational>> metric;
  std::vector<Rational> charge;
  std::map<std::string, int> constants;
  std::map<std::string, FunctionTable> functions;
  std::map<std::string, RelationTable> relations;

  int size() const { return static_cast<int>(points.size()); }
  Rational mass() const;
  std::optional<int> point_index(const std::string& label) const;
};

/// Shape check: matrix/table dimensions and index ranges consistent with
/// the signature. Throws DimensionMismatch. Value-level constraints
/// (symmetry, triangle, Lipschitz, charge) belong to validate_structure.
void check_dimensions(const FiniteChargedStructure& s);

using Environment = std::map<std::string, int>;

struct Violation {
  std::string axiom;   // e.g. "Symmetry", "Triangle", "RelationLipschitz"
  std::string detail;  // witnesses, human readable
};

struct ValidationOptions {
  bool allow_submass = false;  // permit total charge < 1
};

/// Exhaustive check of the metric axioms, Lipschitz constraints for every
/// symbol over all tuples, relation bounds and the charge. Empty result
/// means the structure is a valid charged metric structure.
std::vector<Violation> validate_structure(const FiniteChargedStructure& s,
                                          ValidationOptions opts = {});

int eval_term(const FiniteChargedStructure& s, const Term& t, const Environment& env);

/// Exact value of a formula at an environment covering its free variables.
/// inf/sup are min/max over points, the integral is the charge-weighted sum.
Rational eval_formula(const FiniteChargedStructure& s, const Formula& phi,
                      const Environment& env);

/// Floating-point evaluation path for the grid demos; not used anywhere
/// correctness matters.
double eval_formula_approx(const FiniteChargedStructure& s, const Formula& phi,
                           const Environment& env);

struct ConditionCheck {
  bool holds = false;
  Rational margin;  // min over environments of rhs - lhs
};

/// Open conditions are checked under all assignments to their free
/// variables; margin is the worst-case slack.
ConditionCheck check_condition(const FiniteChargedStructure& s, const Condition& c);

struct ValueReport {
  Rational value;
  Rational bound;
  std::string formula;
};

struct QuotientResult {
  FiniteChargedStructure structure;
  std::vector<int> point_map;  // original point index -> quotient point index
};

/// Merge zero-distance point classes of a prestructure: charges add up
/// within a class, symbols are reinterpreted on representatives. Formula
/// values are preserved. Throws IllDefinedQuotient when merged points
/// disagree on a symbol value.
QuotientResult quotient_structure(const FiniteChargedStructure& prestructure);

}  // namespace alint
