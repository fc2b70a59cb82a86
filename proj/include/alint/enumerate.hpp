#pragma once

#include "alint/syntax.hpp"

namespace alint {

/// All terms of AST depth <= depth over the variable pool and the
/// signature's constants and functions. Throws BudgetExceeded past `budget`.
std::vector<TermPtr> enumerate_terms(const Signature& sig,
                                     const std::vector<std::string>& vars, int depth,
                                     long budget = 100000);

/// All formulas of AST depth <= depth (formula nodes only; terms drawn from
/// enumerate_terms at the same depth) with scale factors from `scalars`.
std::vector<FormulaPtr> enumerate_formulas(const Signature& sig,
                                           const std::vector<std::string>& vars, int depth,
                                           const std::vector<Rational>& scalars,
                                           long budget = 1000000);

}  // namespace alint
