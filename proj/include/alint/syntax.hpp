#pragma once

#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "alint/errors.hpp"
#include "alint/rational.hpp"

namespace alint {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

/// Name of the built-in metric symbol in concrete syntax. It is binary, has
/// Lipschitz constant 1 and cannot be declared by the user.
inline constexpr const char* kMetricName = "d";

struct FunctionSym {
  std::string name;
  int arity = 1;
  Rational lipschitz = 0;
};

struct RelationSym {
  std::string name;
  int arity = 1;
  Rational lipschitz = 0;
};

/// Symbol table of a Lipschitz language: constants, functions and relations
/// with their Lipschitz constants. Throws SchemaError on duplicate names,
/// arity < 1, negative constants, or an attempt to declare the metric.
class Signature {
 public:
  Signature() = default;
  Signature(std::vector<std::string> constants, std::vector<FunctionSym> functions,
            std::vector<RelationSym> relations);

  const std::vector<std::string>& constants() const { return constants_; }
  const std::vector<FunctionSym>& functions() const { return functions_; }
  const std::vector<RelationSym>& relations() const { return relations_; }

  bool has_constant(const std::string& name) const;
  const FunctionSym* function(const std::string& name) const;
  const RelationSym* relation(const std::string& name) const;
  bool has_symbol(const std::string& name) const;

 private:
  std::vector<std::string> constants_;
  std::vector<FunctionSym> functions_;
  std::vector<RelationSym> relations_;
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  struct Var {
    std::string name;
  };
  struct Const {
    std::string name;
  };
  struct App {
    std::string fn;
    std::vector<TermPtr> args;
  };
  using Node = std::variant<Var, Const, App>;

  Node node;

  static TermPtr var(std::string name);
  static TermPtr constant(std::string name);
  static TermPtr app(std::string fn, std::vector<TermPtr> args);
};

bool operator==(const Term& a, const Term& b);
inline bool operator!=(const Term& a, const Term& b) { return !(a == b); }

enum class Quant { Inf, Sup, Int };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Formula AST: 1, R(t...), d(t,t), phi + psi, r * phi and the three
/// quantifiers. Nodes are immutable and freely shared.
struct Formula {
  struct One {};
  struct Rel {
    std::string rel;
    std::vector<TermPtr> args;
  };
  struct Dist {
    TermPtr lhs, rhs;
  };
  struct Add {
    FormulaPtr lhs, rhs;
  };
  struct Scale {
    Rational factor;
    FormulaPtr arg;
  };
  struct Quantified {
    Quant quant;
    std::string var;
    FormulaPtr body;
  };
  using Node = std::variant<One, Rel, Dist, Add, Scale, Quantified>;

  Node node;

  static FormulaPtr one();
  static FormulaPtr rel(std::string name, std::vector<TermPtr> args);
  static FormulaPtr dist(TermPtr lhs, TermPtr rhs);
  static FormulaPtr add(FormulaPtr lhs, FormulaPtr rhs);
  static FormulaPtr scale(Rational factor, FormulaPtr arg);
  static FormulaPtr quantified(Quant q, std::string var, FormulaPtr body);
  static FormulaPtr inf(std::string var, FormulaPtr body);
  static FormulaPtr sup(std::string var, FormulaPtr body);
  static FormulaPtr integral(std::string var, FormulaPtr body);

  /// The numeral r, represented as r * 1. numeral(0) is the formula "0" of
  /// the axiom system.
  static FormulaPtr numeral(const Rational& r);
};

bool operator==(const Formula& a, const Formula& b);
inline bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

/// A condition lhs <= rhs. Equality in the surface syntax is sugar for the
/// pair {lhs <= rhs, rhs <= lhs} and is expanded by the parser.
struct Condition {
  FormulaPtr lhs, rhs;
};

bool operator==(const Condition& a, const Condition& b);
inline bool operator!=(const Condition& a, const Condition& b) { return !(a == b); }

using Theory = std::vector<Condition>;

// ---- Lipschitz / bound calculus ----

/// Lipschitz constant of a term; doubles as the well-formedness check
/// (throws UnknownSymbol / ArityMismatch).
Rational term_lipschitz(const Signature& sig, const Term& t);

struct LipschitzBound {
  Rational lipschitz;
  Rational bound;
};

LipschitzBound formula_lipschitz_bound(const Signature& sig, const Formula& phi);

// ---- variables and substitution ----

std::set<std::string> free_vars(const Term& t);
std::set<std::string> free_vars(const Formula& phi);
std::set<std::string> free_vars(const Condition& c);

TermPtr substitute(const TermPtr& t, const std::string& var, const TermPtr& repl);

bool substitutable(const Formula& phi, const std::string& var, const Term& repl);

/// Capture-free phi[repl/var]; throws NotSubstitutable when a variable of
/// repl would be captured by a binder.
FormulaPtr substitute(const FormulaPtr& phi, const std::string& var, const TermPtr& repl);

// ---- alpha normalization ----

/// Canonical bound-variable naming: alpha-equivalent formulas map to
/// identical trees. Idempotent; preserves free variables and (lambda, b).
FormulaPtr alpha_normalize(const FormulaPtr& phi);

bool alpha_equal(const Formula& a, const Formula& b);

/// Normal form used by the proof kernel when comparing formulas: alpha
/// normalization plus collapsing every 0-scaled subformula to the numeral 0.
FormulaPtr matching_normal_form(const FormulaPtr& phi);

Condition matching_normal_form(const Condition& c);
bool match_equal(const Condition& a, const Condition& b);
bool match_equal(const FormulaPtr& a, const FormulaPtr& b);

}  // namespace alint
