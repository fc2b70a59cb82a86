#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "alint/proof.hpp"
#include "alint/semantics.hpp"
#include "alint/syntax.hpp"

namespace alint {

// Expression grammar: `1`, `R(t,...)`, `d(t,t)`, `phi + psi`, `r * phi`,
// `inf x. phi`, `sup x. phi`, `int x. phi`; rationals as decimals or p/q;
// `*` binds tighter than `+`; quantifier scope extends maximally right;
// parentheses allowed. A bare rational r other than `1` is sugar for r * 1.

FormulaPtr parse_formula(const Signature& sig, std::string_view text,
                         const std::string& file = "<input>");
TermPtr parse_term(const Signature& sig, std::string_view text,
                   const std::string& file = "<input>");

/// `phi <= psi` yields one condition, `phi = psi` the two inequalities.
std::vector<Condition> parse_condition(const Signature& sig, std::string_view text,
                                       const std::string& file = "<input>");

/// Text files: one condition per line, '#' comments. (.alth)
Theory parse_theory(const Signature& sig, std::string_view text,
                    const std::string& file = "<input>");

/// One formula per line, '#' comments. (.alf)
std::vector<FormulaPtr> parse_formula_list(const Signature& sig, std::string_view text,
                                           const std::string& file = "<input>");

/// Whitespace-separated rationals, '#' comments. (.alw)
std::vector<Rational> parse_weights(std::string_view text,
                                    const std::string& file = "<input>");

/// JSON documents. Rationals are encoded as strings ("1/2", "0.25") or JSON
/// integers; floating-point literals are rejected.
Signature parse_signature(std::string_view json_text);                      // .alsig
FiniteChargedStructure parse_structure(const Signature& sig,
                                       std::string_view json_text);         // .alstr
ProofScript parse_proof(const Signature& sig, std::string_view json_text);  // .alpf

/// Signature embedded in a .alstr / .alpf document, when present.
std::optional<Signature> embedded_signature(std::string_view json_text);

std::string pretty(const Term& t);
std::string pretty(const Formula& phi);
std::string pretty(const Condition& c);

std::string signature_to_json(const Signature& sig);
std::string structure_to_json(const FiniteChargedStructure& s, bool with_signature = true);
std::string weights_to_text(const std::vector<Rational>& ws);

}  // namespace alint
