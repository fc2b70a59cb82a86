#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "alint/semantics.hpp"
#include "alint/syntax.hpp"

namespace alint {

/// Values a schema metavariable can take.
using Binding =
    std::variant<FormulaPtr, TermPtr, std::string, Rational, std::vector<TermPtr>>;
using Bindings = std::map<std::string, Binding>;

enum class MetaKind { Formula, Term, Variable, Scalar, TermList, FnSymbol, RelSymbol };

/// Metavariable signature of an axiom schema, e.g. A10 -> {phi: Formula,
/// x: Variable, t: Term}. Throws UnknownAxiomName.
const std::vector<std::pair<std::string, MetaKind>>& axiom_metavars(const std::string& id);
bool is_axiom(const std::string& id);

enum class RuleName { R1, R2, R3, R4, R5 };
std::optional<RuleName> rule_from_name(const std::string& name);
std::string rule_name(RuleName r);

struct Step {
  struct Hyp {};
  struct Axiom {
    std::string id;
    Bindings bindings;
  };
  struct Rule {
    RuleName rule;
    std::vector<int> premises;  // step ids, must be strictly earlier
  };

  int id = 0;
  Condition condition;
  std::variant<Hyp, Axiom, Rule> justification;
};

struct ProofScript {
  Theory hypotheses;
  std::vector<Step> steps;
};

// Stable identifiers for rejection reasons, used in verdicts and tests.
namespace reason {
inline constexpr const char* kHypNotFound = "HypNotFound";
inline constexpr const char* kAxiomMismatch = "AxiomMismatch";
inline constexpr const char* kComparisonFalse = "ComparisonFalse";
inline constexpr const char* kNotSubstitutable = "NotSubstitutable";
inline constexpr const char* kScalarSignNegative = "ScalarSignNegative";
inline constexpr const char* kFreeVariableSideCondition = "FreeVariableSideCondition";
inline constexpr const char* kPremiseMismatch = "PremiseMismatch";
inline constexpr const char* kDanglingPremise = "DanglingPremise";
inline constexpr const char* kUnknownAxiom = "UnknownAxiom";
inline constexpr const char* kMalformedBindings = "MalformedBindings";
}  // namespace reason

struct StepStatus {
  int id = 0;
  bool ok = false;
  std::string reason;  // one of the reason:: identifiers when !ok
  std::string detail;
};

struct Verdict {
  bool accepted = false;
  std::vector<StepStatus> steps;
  std::optional<StepStatus> first_failure;
};

/// True iff instantiating the named schema with the bindings and normalizing
/// yields cond. Side conditions are enforced. Throws UnknownAxiom /
/// MalformedBindings on unusable input; plain mismatches return false.
bool match_axiom(const Signature& sig, const Condition& cond, const std::string& axiom_id,
                 const Bindings& bindings);

/// Same check, reporting the failure reason instead of returning early.
bool match_axiom_explain(const Signature& sig, const Condition& cond,
                         const std::string& axiom_id, const Bindings& bindings,
                         std::string& reason_out, std::string& detail_out);

/// Check a derivation step by step. Failures are data in the verdict, never
/// exceptions.
Verdict check_proof(const Signature& sig, const ProofScript& script);

struct ModelReport {
  std::string name;
  bool satisfies_hypotheses = false;  // when false the model is vacuous
  Rational conclusion_margin;
  bool violated = false;
};

struct SoundnessReport {
  std::vector<ModelReport> models;
  bool kernel_bug = false;  // accepted script with a counterexample
};

/// For every model satisfying all hypotheses (under all assignments), assert
/// the final condition holds with margin >= 0. Throws RejectedScript when the
/// script does not check.
SoundnessReport soundness_probe(const Signature& sig, const ProofScript& script,
                                const std::vector<FiniteChargedStructure>& models,
                                const std::vector<std::string>& names = {});

}  // namespace alint
