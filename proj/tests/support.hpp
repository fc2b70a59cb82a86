#pragma once

// Shared test toolkit: canonical small structures from the worked examples
// plus seeded generators for structures, formulas and proof scripts.

#include <random>
#include <string>
#include <vector>

#include "alint/analysis.hpp"
#include "alint/parser.hpp"
#include "alint/proof.hpp"
#include "alint/semantics.hpp"
#include "alint/ultramean.hpp"

namespace testkit {

using namespace alint;

/// Two points at distance 1, charge 1/2 each, empty signature.
inline FiniteChargedStructure two_point() {
  FiniteChargedStructure s;
  s.points = {"0", "1"};
  s.metric = {{0, 1}, {1, 0}};
  s.charge = {rat(1, 2), rat(1, 2)};
  return s;
}

/// Uniform grid on the unit interval: n points k/(n-1), charge 1/n each.
inline FiniteChargedStructure unit_grid(int n) {
  FiniteChargedStructure s;
  s.metric.assign(n, std::vector<Rational>(n, 0));
  for (int i = 0; i < n; ++i) {
    s.points.push_back(std::to_string(i));
    s.charge.push_back(rat(1, n));
    for (int j = 0; j < n; ++j) s.metric[i][j] = rat_abs(rat(i - j, n - 1));
  }
  return s;
}

/// Two points at distance 1 with a constant naming point 0.
inline std::pair<Signature, FiniteChargedStructure> two_point_with_constant(
    const Rational& charge0) {
  Signature sig({"c"}, {}, {});
  FiniteChargedStructure s;
  s.sig = sig;
  s.points = {"0", "1"};
  s.metric = {{0, 1}, {1, 0}};
  s.charge = {charge0, 1 - charge0};
  s.constants["c"] = 0;
  return {sig, s};
}

class Rng {
 public:
  explicit Rng(unsigned long seed) : eng_(seed) {}

  int uniform(int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(eng_);
  }
  bool chance(double p) { return std::uniform_real_distribution<>(0, 1)(eng_) < p; }

  template <typename T>
  const T& pick(const std::vector<T>& pool) {
    return pool[uniform(0, static_cast<int>(pool.size()) - 1)];
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

/// Nonnegative rationals summing to 1.
inline std::vector<Rational> random_charge(Rng& rng, int n) {
  std::vector<long> parts(n);
  long total = 0;
  for (auto& p : parts) {
    p = rng.uniform(0, 4);
    total += p;
  }
  if (total == 0) {
    parts[rng.uniform(0, n - 1)] = 1;
    total = 1;
  }
  std::vector<Rational> charge;
  for (long p : parts) charge.push_back(rat(p, total));
  return charge;
}

/// A rational metric with values in [0,1]; exact triangle inequality by
/// construction (line metric, uniform metric, or spread values >= 1/2).
inline std::vector<std::vector<Rational>> random_metric(Rng& rng, int n) {
  std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, 0));
  switch (rng.uniform(0, 2)) {
    case 0: {  // points on a line
      std::vector<long> coords{0};
      for (int i = 1; i < n; ++i) coords.push_back(coords.back() + rng.uniform(1, 4));
      long span = std::max(coords.back(), 1L);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          d[i][j] = rat(std::abs(coords[i] - coords[j]), span);
      break;
    }
    case 1: {  // uniform distance
      Rational c = rat(rng.uniform(1, 4), 4);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) d[i][j] = c;
      break;
    }
    default: {  // arbitrary values in [1/2, 1]
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) d[i][j] = d[j][i] = rat(rng.uniform(4, 8), 8);
      break;
    }
  }
  return d;
}

/// Validated structure over the empty signature.
inline FiniteChargedStructure random_structure(Rng& rng, int min_points, int max_points) {
  FiniteChargedStructure s;
  int n = rng.uniform(min_points, max_points);
  for (int i = 0; i < n; ++i) s.points.push_back(std::to_string(i));
  s.metric = random_metric(rng, n);
  s.charge = random_charge(rng, n);
  return s;
}

/// Random term over variables `vars` plus the signature's constants and
/// unary functions.
inline TermPtr random_term(Rng& rng, const Signature& sig,
                           const std::vector<std::string>& vars) {
  std::vector<TermPtr> atoms;
  for (const auto& v : vars) atoms.push_back(Term::var(v));
  for (const auto& c : sig.constants()) atoms.push_back(Term::constant(c));
  TermPtr t = rng.pick(atoms);
  for (const auto& f : sig.functions())
    if (f.arity == 1 && rng.chance(0.3)) t = Term::app(f.name, {t});
  return t;
}

inline FormulaPtr random_formula(Rng& rng, const Signature& sig,
                                 const std::vector<std::string>& vars, int depth) {
  const std::vector<Rational> scalars{-1, 0, rat(1, 2), 1, 2};
  if (depth <= 1 || rng.chance(0.3)) {
    int n_rel = static_cast<int>(sig.relations().size());
    int kind = rng.uniform(0, n_rel > 0 ? 2 : 1);
    if (kind == 0) return Formula::one();
    if (kind == 1)
      return Formula::dist(random_term(rng, sig, vars), random_term(rng, sig, vars));
    const auto& rel = rng.pick(sig.relations());
    std::vector<TermPtr> args;
    for (int i = 0; i < rel.arity; ++i) args.push_back(random_term(rng, sig, vars));
    return Formula::rel(rel.name, std::move(args));
  }
  switch (rng.uniform(0, 2)) {
    case 0:
      return Formula::add(random_formula(rng, sig, vars, depth - 1),
                          random_formula(rng, sig, vars, depth - 1));
    case 1:
      return Formula::scale(rng.pick(scalars), random_formula(rng, sig, vars, depth - 1));
    default: {
      static const std::vector<Quant> quants{Quant::Inf, Quant::Sup, Quant::Int};
      return Formula::quantified(rng.pick(quants), rng.pick(vars),
                                 random_formula(rng, sig, vars, depth - 1));
    }
  }
}

/// Fleet for the soundness probe: a signature with a constant, a unary
/// function and a unary relation, plus structures whose tables stay within
/// the signature's Lipschitz constants (taken as the fleet maxima).
inline std::pair<Signature, std::vector<FiniteChargedStructure>> random_probe_fleet(
    Rng& rng, int count, int max_points) {
  struct Raw {
    FiniteChargedStructure s;
    std::vector<int> f;
    std::vector<Rational> p;
  };
  std::vector<Raw> raws;
  Rational lambda_f = 0, lambda_p = 0;
  for (int k = 0; k < count; ++k) {
    Raw raw;
    raw.s = random_structure(rng, 2, max_points);
    int n = raw.s.size();
    for (int i = 0; i < n; ++i) {
      raw.f.push_back(rng.uniform(0, n - 1));
      raw.p.push_back(rat(rng.uniform(0, 8), 8));
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        const Rational& dist = raw.s.metric[a][b];
        Rational need_f = raw.s.metric[raw.f[a]][raw.f[b]] / dist;
        Rational need_p = rat_abs(raw.p[a] - raw.p[b]) / dist;
        if (need_f > lambda_f) lambda_f = need_f;
        if (need_p > lambda_p) lambda_p = need_p;
      }
    raws.push_back(std::move(raw));
  }

  Signature sig({"c"}, {{"f", 1, lambda_f}}, {{"P", 1, lambda_p}});
  std::vector<FiniteChargedStructure> fleet;
  for (auto& raw : raws) {
    raw.s.sig = sig;
    raw.s.constants["c"] = rng.uniform(0, raw.s.size() - 1);
    raw.s.functions["f"] = FunctionTable{1, raw.f};
    raw.s.relations["P"] = RelationTable{1, raw.p};
    fleet.push_back(std::move(raw.s));
  }
  return {sig, fleet};
}

/// Generates scripts that the kernel accepts by construction: random axiom
/// instances chained through the rules.
class ScriptGen {
 public:
  ScriptGen(Rng& rng, const Signature& sig) : rng_(rng), sig_(sig) {}

  ProofScript script(int target_steps, bool with_hypotheses) {
    ProofScript s;
    if (with_hypotheses) {
      auto phi = random_formula(rng_, sig_, {"x"}, 2);
      s.hypotheses.push_back({phi, Formula::one()});  // phi <= 1 style hypothesis
    }
    pool_ = &s;
    next_id_ = 1;
    for (int i = 0; i < target_steps; ++i) {
      switch (rng_.uniform(0, 7)) {
        case 0: axiom_a1(); break;
        case 1: axiom_equality(); break;
        case 2: axiom_a10(); break;
        case 3: axiom_a24(); break;
        case 4: rule_r1(); break;
        case 5: rule_r2(); break;
        case 6: rule_r3(); break;
        default: rule_r45(); break;
      }
    }
    if (s.steps.empty()) axiom_a1();
    if (with_hypotheses && rng_.chance(0.7)) {
      // cite a hypothesis and extend it
      Step step;
      step.id = next_id_++;
      step.condition = s.hypotheses.front();
      step.justification = Step::Hyp{};
      s.steps.push_back(step);
    }
    return s;
  }

 private:
  Rng& rng_;
  const Signature& sig_;
  ProofScript* pool_ = nullptr;
  int next_id_ = 1;

  const std::vector<std::string> vars_{"x", "y"};

  int push(Condition cond, std::variant<Step::Hyp, Step::Axiom, Step::Rule> just) {
    Step step;
    step.id = next_id_++;
    step.condition = std::move(cond);
    step.justification = std::move(just);
    pool_->steps.push_back(std::move(step));
    return pool_->steps.back().id;
  }

  const Step* random_step() {
    if (pool_->steps.empty()) return nullptr;
    return &pool_->steps[rng_.uniform(0, static_cast<int>(pool_->steps.size()) - 1)];
  }

  void axiom_a1() {
    std::vector<Rational> scalars{-1, 0, rat(1, 2), 1, 2};
    Rational r = rng_.pick(scalars), s = rng_.pick(scalars);
    if (r > s) std::swap(r, s);
    Bindings bs{{"r", r}, {"s", s}};
    push({Formula::numeral(r), Formula::numeral(s)}, Step::Axiom{"A1", bs});
  }

  void axiom_equality() {
    auto phi = random_formula(rng_, sig_, vars_, 2);
    auto psi = random_formula(rng_, sig_, vars_, 2);
    FormulaPtr lhs, rhs;
    std::string id;
    Bindings bs;
    switch (rng_.uniform(0, 3)) {
      case 0:
        id = "A3";
        bs = {{"phi", phi}, {"psi", psi}};
        lhs = Formula::add(phi, psi);
        rhs = Formula::add(psi, phi);
        break;
      case 1:
        id = "A4";
        bs = {{"phi", phi}};
        lhs = Formula::add(Formula::numeral(0), phi);
        rhs = phi;
        break;
      case 2:
        id = "A8";
        bs = {{"phi", phi}};
        lhs = Formula::scale(1, phi);
        rhs = phi;
        break;
      default: {
        id = "A16";
        std::string x = rng_.pick(vars_);
        bs = {{"phi", phi}, {"psi", psi}, {"x", x}};
        lhs = Formula::integral(x, Formula::add(phi, psi));
        rhs = Formula::add(Formula::integral(x, phi), Formula::integral(x, psi));
        break;
      }
    }
    if (rng_.chance(0.5)) std::swap(lhs, rhs);
    push({lhs, rhs}, Step::Axiom{id, bs});
  }

  void axiom_a10() {
    auto phi = random_formula(rng_, sig_, vars_, 2);
    std::string x = "x";
    TermPtr t = sig_.constants().empty() ? Term::var("y") : Term::constant(sig_.constants()[0]);
    if (!substitutable(*phi, x, *t)) return;
    Bindings bs{{"phi", phi}, {"x", x}, {"t", t}};
    push({substitute(phi, x, t), Formula::sup(x, phi)}, Step::Axiom{"A10", bs});
  }

  void axiom_a24() {
    TermPtr t1 = random_term(rng_, sig_, vars_);
    TermPtr t2 = random_term(rng_, sig_, vars_);
    FormulaPtr atom;
    Bindings bs;
    if (!sig_.relations().empty() && rng_.chance(0.5)) {
      const auto& rel = sig_.relations()[0];
      std::vector<TermPtr> ts{t1};
      bs = {{"R", rel.name}, {"ts", ts}};
      atom = Formula::rel(rel.name, {t1});
    } else {
      std::vector<TermPtr> ts{t1, t2};
      bs = {{"R", std::string(kMetricName)}, {"ts", ts}};
      atom = Formula::dist(t1, t2);
    }
    if (rng_.chance(0.5))
      push({Formula::numeral(0), atom}, Step::Axiom{"A24", bs});
    else
      push({atom, Formula::one()}, Step::Axiom{"A24", bs});
  }

  void rule_r1() {
    // look for a chainable pair
    const Step* a = random_step();
    if (!a) return;
    int a_id = a->id;
    Condition a_cond = a->condition;
    for (const auto& b : pool_->steps) {
      if (match_equal(b.condition.lhs, a_cond.rhs)) {
        push({a_cond.lhs, b.condition.rhs}, Step::Rule{RuleName::R1, {a_id, b.id}});
        return;
      }
    }
  }

  void rule_r2() {
    const Step* p = random_step();
    if (!p) return;
    auto theta = random_formula(rng_, sig_, vars_, 2);
    push({Formula::add(p->condition.lhs, theta), Formula::add(p->condition.rhs, theta)},
         Step::Rule{RuleName::R2, {p->id}});
  }

  void rule_r3() {
    const Step* p = random_step();
    if (!p) return;
    int p_id = p->id;
    Condition p_cond = p->condition;  // push below may reallocate the pool
    std::vector<Rational> scalars{0, rat(1, 2), 1, 2};
    Rational r = rng_.pick(scalars);
    Bindings bs{{"r", Rational(0)}, {"s", r}};
    int side = push({Formula::numeral(0), Formula::numeral(r)}, Step::Axiom{"A1", bs});
    push({Formula::scale(r, p_cond.lhs), Formula::scale(r, p_cond.rhs)},
         Step::Rule{RuleName::R3, {side, p_id}});
  }

  void rule_r45() {
    const Step* p = random_step();
    if (!p) return;
    // quantified variable must not be free in the hypotheses
    std::string x = pool_->hypotheses.empty() ? rng_.pick(vars_) : "w";
    bool sup = rng_.chance(0.5);
    Quant q = sup ? Quant::Sup : Quant::Int;
    push({Formula::quantified(q, x, p->condition.lhs),
          Formula::quantified(q, x, p->condition.rhs)},
         Step::Rule{sup ? RuleName::R4 : RuleName::R5, {p->id}});
  }
};

}  // namespace testkit
