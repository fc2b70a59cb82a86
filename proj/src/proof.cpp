#include "alint/proof.hpp"

#include <algorithm>

namespace alint {

namespace {

const std::map<std::string, std::vector<std::pair<std::string, MetaKind>>>& axiom_table() {
  static const std::map<std::string, std::vector<std::pair<std::string, MetaKind>>> table = {
      {"A1", {{"r", MetaKind::Scalar}, {"s", MetaKind::Scalar}}},
      {"A2",
       {{"phi", MetaKind::Formula}, {"psi", MetaKind::Formula}, {"theta", MetaKind::Formula}}},
      {"A3", {{"phi", MetaKind::Formula}, {"psi", MetaKind::Formula}}},
      {"A4", {{"phi", MetaKind::Formula}}},
      {"A5",
       {{"r", MetaKind::Scalar}, {"phi", MetaKind::Formula}, {"psi", MetaKind::Formula}}},
      {"A6", {{"r", MetaKind::Scalar}, {"s", MetaKind::Scalar}, {"phi", MetaKind::Formula}}},
      {"A7", {{"r", MetaKind::Scalar}, {"s", MetaKind::Scalar}, {"phi", MetaKind::Formula}}},
      {"A8", {{"phi", MetaKind::Formula}}},
      {"A9", {{"phi", MetaKind::Formula}}},
      {"A10",
       {{"phi", MetaKind::Formula}, {"x", MetaKind::Variable}, {"t", MetaKind::Term}}},
      {"A11",
       {{"phi", MetaKind::Formula}, {"psi", MetaKind::Formula}, {"x", MetaKind::Variable}}},
      {"A12",
       {{"phi", MetaKind::Formula}, {"psi", MetaKind::Formula}, {"x", MetaKind::Variable}}},
      {"A13",
       {{"r", MetaKind::Scalar}, {"phi", MetaKind::Formula}, {"x", MetaKind::Variable}}},
      {"A14", {{"phi", MetaKind::Formula}, {"x", MetaKind::Variable}}},
      {"A15", {{"x", MetaKind::Variable}}},
      {"A16",
       {{"phi", MetaKind::Formula}, {"psi", MetaKind::Formula}, {"x", MetaKind::Variable}}},
      {"A17",
       {{"r", MetaKind::Scalar}, {"phi", MetaKind::Formula}, {"x", MetaKind::Variable}}},
      {"A18", {{"phi", MetaKind::Formula}, {"x", MetaKind::Variable}}},
      {"A19", {{"t", MetaKind::Term}}},
      {"A20", {{"s", MetaKind::Term}, {"t", MetaKind::Term}}},
      {"A21", {{"t1", MetaKind::Term}, {"t2", MetaKind::Term}, {"t3", MetaKind::Term}}},
      {"A22",
       {{"F", MetaKind::FnSymbol}, {"xs", MetaKind::TermList}, {"ys", MetaKind::TermList}}},
      {"A23",
       {{"R", MetaKind::RelSymbol}, {"xs", MetaKind::TermList}, {"ys", MetaKind::TermList}}},
      {"A24", {{"R", MetaKind::RelSymbol}, {"ts", MetaKind::TermList}}},
  };
  return table;
}

template <typename T>
const T& get_binding(const Bindings& bs, const std::string& name, const char* axiom) {
  auto it = bs.find(name);
  if (it == bs.end())
    throw MalformedBindings(std::string(axiom) + ": missing metavariable '" + name + "'");
  const T* value = std::get_if<T>(&it->second);
  if (!value)
    throw MalformedBindings(std::string(axiom) + ": metavariable '" + name +
                            "' has the wrong kind");
  return *value;
}

FormulaPtr fml(const Bindings& bs, const std::string& name, const char* ax) {
  return get_binding<FormulaPtr>(bs, name, ax);
}
TermPtr trm(const Bindings& bs, const std::string& name, const char* ax) {
  return get_binding<TermPtr>(bs, name, ax);
}
std::string var(const Bindings& bs, const std::string& name, const char* ax) {
  return get_binding<std::string>(bs, name, ax);
}
Rational scalar(const Bindings& bs, const std::string& name, const char* ax) {
  return get_binding<Rational>(bs, name, ax);
}
std::vector<TermPtr> terms(const Bindings& bs, const std::string& name, const char* ax) {
  return get_binding<std::vector<TermPtr>>(bs, name, ax);
}

FormulaPtr sum_of_distances(const std::vector<TermPtr>& xs, const std::vector<TermPtr>& ys) {
  FormulaPtr acc = Formula::dist(xs[0], ys[0]);
  for (size_t i = 1; i < xs.size(); ++i)
    acc = Formula::add(acc, Formula::dist(xs[i], ys[i]));
  return acc;
}

struct Instance {
  // conditions any one of which the candidate may match; an equality schema
  // contributes both directions
  std::vector<Condition> alternatives;
};

void push_ineq(Instance& inst, FormulaPtr lhs, FormulaPtr rhs) {
  inst.alternatives.push_back({std::move(lhs), std::move(rhs)});
}

void push_eq(Instance& inst, const FormulaPtr& lhs, const FormulaPtr& rhs) {
  inst.alternatives.push_back({lhs, rhs});
  inst.alternatives.push_back({rhs, lhs});
}

/// Build the schema instance. Returns false with a reason when a side
/// condition fails; throws MalformedBindings / UnknownAxiom on unusable
/// bindings.
bool instantiate_axiom(const Signature& sig, const std::string& id, const Bindings& bs,
                       Instance& inst, std::string& reason, std::string& detail) {
  const auto zero = Formula::numeral(0);
  const char* ax = id.c_str();

  if (id == "A1") {
    Rational r = scalar(bs, "r", ax), s = scalar(bs, "s", ax);
    if (!(r <= s)) {
      reason = reason::kComparisonFalse;
      detail = to_string(r) + " <= " + to_string(s) + " does not hold";
      return false;
    }
    push_ineq(inst, Formula::numeral(r), Formula::numeral(s));
  } else if (id == "A2") {
    auto phi = fml(bs, "phi", ax), psi = fml(bs, "psi", ax), theta = fml(bs, "theta", ax);
    push_eq(inst, Formula::add(phi, Formula::add(psi, theta)),
            Formula::add(Formula::add(phi, psi), theta));
  } else if (id == "A3") {
    auto phi = fml(bs, "phi", ax), psi = fml(bs, "psi", ax);
    push_eq(inst, Formula::add(phi, psi), Formula::add(psi, phi));
  } else if (id == "A4") {
    auto phi = fml(bs, "phi", ax);
    push_eq(inst, Formula::add(zero, phi), phi);
  } else if (id == "A5") {
    Rational r = scalar(bs, "r", ax);
    auto phi = fml(bs, "phi", ax), psi = fml(bs, "psi", ax);
    push_eq(inst, Formula::scale(r, Formula::add(phi, psi)),
            Formula::add(Formula::scale(r, phi), Formula::scale(r, psi)));
  } else if (id == "A6") {
    Rational r = scalar(bs, "r", ax), s = scalar(bs, "s", ax);
    auto phi = fml(bs, "phi", ax);
    push_eq(inst, Formula::scale(r + s, phi),
            Formula::add(Formula::scale(r, phi), Formula::scale(s, phi)));
  } else if (id == "A7") {
    Rational r = scalar(bs, "r", ax), s = scalar(bs, "s", ax);
    auto phi = fml(bs, "phi", ax);
    push_eq(inst, Formula::scale(r, Formula::scale(s, phi)), Formula::scale(r * s, phi));
  } else if (id == "A8") {
    auto phi = fml(bs, "phi", ax);
    push_eq(inst, Formula::scale(1, phi), phi);
  } else if (id == "A9") {
    auto phi = fml(bs, "phi", ax);
    push_eq(inst, Formula::scale(0, phi), zero);
  } else if (id == "A10") {
    auto phi = fml(bs, "phi", ax);
    auto x = var(bs, "x", ax);
    auto t = trm(bs, "t", ax);
    if (!substitutable(*phi, x, *t)) {
      reason = reason::kNotSubstitutable;
      detail = "the term is not substitutable for '" + x + "'";
      return false;
    }
    push_ineq(inst, substitute(phi, x, t), Formula::sup(x, phi));
  } else if (id == "A11") {
    auto phi = fml(bs, "phi", ax), psi = fml(bs, "psi", ax);
    auto x = var(bs, "x", ax);
    if (free_vars(*psi).count(x)) {
      reason = reason::kFreeVariableSideCondition;
      detail = "'" + x + "' is free in psi";
      return false;
    }
    push_eq(inst, Formula::sup(x, Formula::add(phi, psi)),
            Formula::add(Formula::sup(x, phi), psi));
  } else if (id == "A12") {
    auto phi = fml(bs, "phi", ax), psi = fml(bs, "psi", ax);
    auto x = var(bs, "x", ax);
    push_ineq(inst, Formula::sup(x, Formula::add(phi, psi)),
              Formula::add(Formula::sup(x, phi), Formula::sup(x, psi)));
  } else if (id == "A13") {
    Rational r = scalar(bs, "r", ax);
    auto phi = fml(bs, "phi", ax);
    auto x = var(bs, "x", ax);
    if (r < 0) {
      reason = reason::kScalarSignNegative;
      detail = "r = " + to_string(r) + " is negative";
      return false;
    }
    push_eq(inst, Formula::sup(x, Formula::scale(r, phi)),
            Formula::scale(r, Formula::sup(x, phi)));
  } else if (id == "A14") {
    auto phi = fml(bs, "phi", ax);
    auto x = var(bs, "x", ax);
    push_eq(inst, Formula::sup(x, phi),
            Formula::scale(-1, Formula::inf(x, Formula::scale(-1, phi))));
  } else if (id == "A15") {
    auto x = var(bs, "x", ax);
    push_eq(inst, Formula::integral(x, Formula::one()), Formula::one());
  } else if (id == "A16") {
    auto phi = fml(bs, "phi", ax), psi = fml(bs, "psi", ax);
    auto x = var(bs, "x", ax);
    push_eq(inst, Formula::integral(x, Formula::add(phi, psi)),
            Formula::add(Formula::integral(x, phi), Formula::integral(x, psi)));
  } else if (id == "A17") {
    Rational r = scalar(bs, "r", ax);
    auto phi = fml(bs, "phi", ax);
    auto x = var(bs, "x", ax);
    push_eq(inst, Formula::integral(x, Formula::scale(r, phi)),
            Formula::scale(r, Formula::integral(x, phi)));
  } else if (id == "A18") {
    auto phi = fml(bs, "phi", ax);
    auto x = var(bs, "x", ax);
    if (free_vars(*phi).count(x)) {
      reason = reason::kFreeVariableSideCondition;
      detail = "'" + x + "' is free in phi";
      return false;
    }
    push_eq(inst, Formula::integral(x, phi), phi);
  } else if (id == "A19") {
    auto t = trm(bs, "t", ax);
    push_eq(inst, Formula::dist(t, t), zero);
  } else if (id == "A20") {
    auto s = trm(bs, "s", ax), t = trm(bs, "t", ax);
    push_eq(inst, Formula::dist(s, t), Formula::dist(t, s));
  } else if (id == "A21") {
    auto t1 = trm(bs, "t1", ax), t2 = trm(bs, "t2", ax), t3 = trm(bs, "t3", ax);
    push_ineq(inst, Formula::dist(t1, t3),
              Formula::add(Formula::dist(t1, t2), Formula::dist(t2, t3)));
  } else if (id == "A22") {
    auto name = var(bs, "F", ax);
    auto xs = terms(bs, "xs", ax), ys = terms(bs, "ys", ax);
    const FunctionSym* f = sig.function(name);
    if (!f) throw MalformedBindings("A22: '" + name + "' is not a function symbol");
    if (static_cast<int>(xs.size()) != f->arity || static_cast<int>(ys.size()) != f->arity)
      throw MalformedBindings("A22: tuples must have length " + std::to_string(f->arity));
    push_ineq(inst, Formula::dist(Term::app(name, xs), Term::app(name, ys)),
              Formula::scale(f->lipschitz, sum_of_distances(xs, ys)));
  } else if (id == "A23") {
    auto name = var(bs, "R", ax);
    auto xs = terms(bs, "xs", ax), ys = terms(bs, "ys", ax);
    const RelationSym* r = sig.relation(name);
    if (!r) throw MalformedBindings("A23: '" + name + "' is not a declared relation");
    if (static_cast<int>(xs.size()) != r->arity || static_cast<int>(ys.size()) != r->arity)
      throw MalformedBindings("A23: tuples must have length " + std::to_string(r->arity));
    push_ineq(inst,
              Formula::add(Formula::rel(name, xs), Formula::scale(-1, Formula::rel(name, ys))),
              Formula::scale(r->lipschitz, sum_of_distances(xs, ys)));
  } else if (id == "A24") {
    auto name = var(bs, "R", ax);
    auto ts = terms(bs, "ts", ax);
    FormulaPtr atom;
    if (name == kMetricName) {
      if (ts.size() != 2) throw MalformedBindings("A24: the metric takes 2 arguments");
      atom = Formula::dist(ts[0], ts[1]);
    } else {
      const RelationSym* r = sig.relation(name);
      if (!r) throw MalformedBindings("A24: '" + name + "' is not a relation symbol");
      if (static_cast<int>(ts.size()) != r->arity)
        throw MalformedBindings("A24: tuple must have length " + std::to_string(r->arity));
      atom = Formula::rel(name, ts);
    }
    push_ineq(inst, zero, atom);
    push_ineq(inst, atom, Formula::one());
  } else {
    throw UnknownAxiom("unknown axiom '" + id + "'");
  }
  return true;
}

/// One is the numeral 1 as well; Scale(r, One) is the numeral r.
std::optional<Rational> numeral_value(const FormulaPtr& phi) {
  if (std::holds_alternative<Formula::One>(phi->node)) return Rational(1);
  if (const auto* s = std::get_if<Formula::Scale>(&phi->node))
    if (std::holds_alternative<Formula::One>(s->arg->node)) return s->factor;
  return std::nullopt;
}

}  // namespace

const std::vector<std::pair<std::string, MetaKind>>& axiom_metavars(const std::string& id) {
  auto it = axiom_table().find(id);
  if (it == axiom_table().end()) throw UnknownAxiomName("unknown axiom '" + id + "'");
  return it->second;
}

bool is_axiom(const std::string& id) { return axiom_table().count(id) > 0; }

std::optional<RuleName> rule_from_name(const std::string& name) {
  if (name == "R1") return RuleName::R1;
  if (name == "R2") return RuleName::R2;
  if (name == "R3") return RuleName::R3;
  if (name == "R4") return RuleName::R4;
  if (name == "R5") return RuleName::R5;
  return std::nullopt;
}

std::string rule_name(RuleName r) {
  switch (r) {
    case RuleName::R1: return "R1";
    case RuleName::R2: return "R2";
    case RuleName::R3: return "R3";
    case RuleName::R4: return "R4";
    case RuleName::R5: return "R5";
  }
  return "?";
}

bool match_axiom_explain(const Signature& sig, const Condition& cond,
                         const std::string& axiom_id, const Bindings& bindings,
                         std::string& reason_out, std::string& detail_out) {
  if (!is_axiom(axiom_id)) throw UnknownAxiom("unknown axiom '" + axiom_id + "'");
  Instance inst;
  if (!instantiate_axiom(sig, axiom_id, bindings, inst, reason_out, detail_out)) return false;
  Condition normal = matching_normal_form(cond);
  for (const auto& alt : inst.alternatives)
    if (matching_normal_form(alt) == normal) return true;
  reason_out = reason::kAxiomMismatch;
  detail_out = "the condition is not an instance of " + axiom_id + " with these bindings";
  return false;
}

bool match_axiom(const Signature& sig, const Condition& cond, const std::string& axiom_id,
                 const Bindings& bindings) {
  std::string reason, detail;
  return match_axiom_explain(sig, cond, axiom_id, bindings, reason, detail);
}

namespace {

struct KernelContext {
  const Signature& sig;
  const Theory& hypotheses;
  std::set<std::string> hypothesis_free_vars;
};

StepStatus check_rule(const KernelContext& ctx, const Step& step, const Step::Rule& rule,
                      const std::map<int, const Step*>& earlier) {
  StepStatus status{step.id, false, "", ""};
  auto fail = [&](const char* reason, std::string detail) {
    status.reason = reason;
    status.detail = std::move(detail);
    return status;
  };

  std::vector<const Step*> premises;
  for (int pid : rule.premises) {
    auto it = earlier.find(pid);
    if (it == earlier.end())
      return fail(reason::kDanglingPremise,
                  "premise " + std::to_string(pid) + " is not an earlier step");
    premises.push_back(it->second);
  }
  auto arity_is = [&](size_t k) { return premises.size() == k; };

  const Condition& cond = step.condition;
  switch (rule.rule) {
    case RuleName::R1: {
      if (!arity_is(2)) return fail(reason::kPremiseMismatch, "R1 takes two premises");
      const Condition& p1 = premises[0]->condition;
      const Condition& p2 = premises[1]->condition;
      if (!match_equal(p1.rhs, p2.lhs))
        return fail(reason::kPremiseMismatch, "premises do not chain");
      if (!match_equal(cond.lhs, p1.lhs) || !match_equal(cond.rhs, p2.rhs))
        return fail(reason::kPremiseMismatch, "conclusion does not match the chain");
      break;
    }
    case RuleName::R2: {
      if (!arity_is(1)) return fail(reason::kPremiseMismatch, "R2 takes one premise");
      const Condition& p = premises[0]->condition;
      const auto* lhs = std::get_if<Formula::Add>(&cond.lhs->node);
      const auto* rhs = std::get_if<Formula::Add>(&cond.rhs->node);
      if (!lhs || !rhs)
        return fail(reason::kPremiseMismatch,
                    "conclusion must add the same formula to both sides");
      if (!match_equal(lhs->rhs, rhs->rhs))
        return fail(reason::kPremiseMismatch, "added formulas differ");
      if (!match_equal(lhs->lhs, p.lhs) || !match_equal(rhs->lhs, p.rhs))
        return fail(reason::kPremiseMismatch, "conclusion does not extend the premise");
      break;
    }
    case RuleName::R3: {
      if (!arity_is(2))
        return fail(reason::kPremiseMismatch, "R3 takes premises 0 <= r and phi <= psi");
      const auto* lhs = std::get_if<Formula::Scale>(&cond.lhs->node);
      const auto* rhs = std::get_if<Formula::Scale>(&cond.rhs->node);
      if (!lhs || !rhs || lhs->factor != rhs->factor)
        return fail(reason::kPremiseMismatch,
                    "conclusion must scale both sides by one rational literal");
      const Rational& r = lhs->factor;
      if (r < 0)
        return fail(reason::kScalarSignNegative, "scale factor " + to_string(r) + " < 0");
      const Condition& p0 = premises[0]->condition;
      auto lo = numeral_value(matching_normal_form(p0.lhs));
      auto hi = numeral_value(matching_normal_form(p0.rhs));
      if (!lo || *lo != 0 || !hi || *hi != r)
        return fail(reason::kPremiseMismatch,
                    "first premise must be the condition 0 <= " + to_string(r));
      const Condition& p = premises[1]->condition;
      if (r != 0 && (!match_equal(lhs->arg, p.lhs) || !match_equal(rhs->arg, p.rhs)))
        return fail(reason::kPremiseMismatch, "conclusion does not scale the premise");
      break;
    }
    case RuleName::R4:
    case RuleName::R5: {
      if (!arity_is(1)) return fail(reason::kPremiseMismatch, "rule takes one premise");
      Quant expected = rule.rule == RuleName::R4 ? Quant::Sup : Quant::Int;
      const auto* lhs = std::get_if<Formula::Quantified>(&cond.lhs->node);
      const auto* rhs = std::get_if<Formula::Quantified>(&cond.rhs->node);
      if (!lhs || !rhs || lhs->quant != expected || rhs->quant != expected)
        return fail(reason::kPremiseMismatch,
                    std::string("conclusion must quantify both sides with ") +
                        (expected == Quant::Sup ? "sup" : "int"));
      const Condition& p = premises[0]->condition;

      std::set<std::string> candidates{lhs->var, rhs->var};
      auto cond_free = free_vars(cond);
      for (const auto& v : free_vars(p))
        if (!cond_free.count(v)) candidates.insert(v);

      bool shape_matched = false;
      for (const auto& x : candidates) {
        auto inst_lhs = Formula::quantified(expected, x, p.lhs);
        auto inst_rhs = Formula::quantified(expected, x, p.rhs);
        if (!match_equal(inst_lhs, cond.lhs) || !match_equal(inst_rhs, cond.rhs))
          continue;
        shape_matched = true;
        if (!ctx.hypothesis_free_vars.count(x)) {
          status.ok = true;
          return status;
        }
      }
      if (shape_matched)
        return fail(reason::kFreeVariableSideCondition,
                    "the quantified variable is free in the hypotheses");
      return fail(reason::kPremiseMismatch, "conclusion does not quantify the premise");
    }
  }
  status.ok = true;
  return status;
}

}  // namespace

Verdict check_proof(const Signature& sig, const ProofScript& script) {
  KernelContext ctx{sig, script.hypotheses, {}};
  for (const auto& h : script.hypotheses) {
    auto fv = free_vars(h);
    ctx.hypothesis_free_vars.insert(fv.begin(), fv.end());
  }

  Verdict verdict;
  std::map<int, const Step*> earlier;
  for (const auto& step : script.steps) {
    StepStatus status{step.id, false, "", ""};
    std::visit(
        overloaded{
            [&](const Step::Hyp&) {
              for (const auto& h : script.hypotheses)
                if (match_equal(h, step.condition)) {
                  status.ok = true;
                  return;
                }
              status.reason = reason::kHypNotFound;
              status.detail = "the condition is not among the hypotheses";
            },
            [&](const Step::Axiom& ax) {
              try {
                status.ok = match_axiom_explain(sig, step.condition, ax.id, ax.bindings,
                                                status.reason, status.detail);
              } catch (const UnknownAxiom& e) {
                status.reason = reason::kUnknownAxiom;
                status.detail = e.what();
              } catch (const MalformedBindings& e) {
                status.reason = reason::kMalformedBindings;
                status.detail = e.what();
              } catch (const NotSubstitutable& e) {
                status.reason = reason::kNotSubstitutable;
                status.detail = e.what();
              }
            },
            [&](const Step::Rule& rule) { status = check_rule(ctx, step, rule, earlier); },
        },
        step.justification);

    if (!status.ok && !verdict.first_failure) verdict.first_failure = status;
    verdict.steps.push_back(status);
    earlier[step.id] = &step;
  }

  verdict.accepted =
      std::all_of(verdict.steps.begin(), verdict.steps.end(),
                  [](const StepStatus& s) { return s.ok; });
  return verdict;
}

SoundnessReport soundness_probe(const Signature& sig, const ProofScript& script,
                                const std::vector<FiniteChargedStructure>& models,
                                const std::vector<std::string>& names) {
  Verdict verdict = check_proof(sig, script);
  if (!verdict.accepted || script.steps.empty())
    throw RejectedScript("soundness probe requires an accepted, nonempty script");

  const Condition& conclusion = script.steps.back().condition;

  SoundnessReport report;
  for (size_t i = 0; i < models.size(); ++i) {
    ModelReport mr;
    mr.name = i < names.size() ? names[i] : "model-" + std::to_string(i);
    mr.satisfies_hypotheses = true;
    for (const auto& h : script.hypotheses) {
      if (!check_condition(models[i], h).holds) {
        mr.satisfies_hypotheses = false;
        break;
      }
    }
    if (mr.satisfies_hypotheses) {
      auto check = check_condition(models[i], conclusion);
      mr.conclusion_margin = check.margin;
      mr.violated = !check.holds;
      if (mr.violated) report.kernel_bug = true;
    }
    report.models.push_back(std::move(mr));
  }
  return report;
}

}  // namespace alint
