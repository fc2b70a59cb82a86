#include "alint/syntax.hpp"

#include <algorithm>
#include <map>

namespace alint {

// ---- Signature ----

Signature::Signature(std::vector<std::string> constants, std::vector<FunctionSym> functions,
                     std::vector<RelationSym> relations)
    : constants_(std::move(constants)),
      functions_(std::move(functions)),
      relations_(std::move(relations)) {
  std::set<std::string> seen;
  auto claim = [&](const std::string& name) {
    if (name == kMetricName)
      throw SchemaError("the metric symbol '" + name + "' cannot be declared");
    if (name.empty()) throw SchemaError("empty symbol name");
    if (!seen.insert(name).second) throw SchemaError("duplicate symbol name '" + name + "'");
  };
  for (const auto& c : constants_) claim(c);
  for (const auto& f : functions_) {
    claim(f.name);
    if (f.arity < 1) throw SchemaError("function '" + f.name + "' must have arity >= 1");
    if (f.lipschitz < 0)
      throw SchemaError("function '" + f.name + "' has negative Lipschitz constant");
  }
  for (const auto& r : relations_) {
    claim(r.name);
    if (r.arity < 1) throw SchemaError("relation '" + r.name + "' must have arity >= 1");
    if (r.lipschitz < 0)
      throw SchemaError("relation '" + r.name + "' has negative Lipschitz constant");
  }
}

bool Signature::has_constant(const std::string& name) const {
  return std::find(constants_.begin(), constants_.end(), name) != constants_.end();
}

const FunctionSym* Signature::function(const std::string& name) const {
  for (const auto& f : functions_)
    if (f.name == name) return &f;
  return nullptr;
}

const RelationSym* Signature::relation(const std::string& name) const {
  for (const auto& r : relations_)
    if (r.name == name) return &r;
  return nullptr;
}

bool Signature::has_symbol(const std::string& name) const {
  return has_constant(name) || function(name) != nullptr || relation(name) != nullptr;
}

// ---- constructors ----

TermPtr Term::var(std::string name) {
  return std::make_shared<const Term>(Term{Var{std::move(name)}});
}
TermPtr Term::constant(std::string name) {
  return std::make_shared<const Term>(Term{Const{std::move(name)}});
}
TermPtr Term::app(std::string fn, std::vector<TermPtr> args) {
  return std::make_shared<const Term>(Term{App{std::move(fn), std::move(args)}});
}

FormulaPtr Formula::one() { return std::make_shared<const Formula>(Formula{One{}}); }
FormulaPtr Formula::rel(std::string name, std::vector<TermPtr> args) {
  return std::make_shared<const Formula>(Formula{Rel{std::move(name), std::move(args)}});
}
FormulaPtr Formula::dist(TermPtr lhs, TermPtr rhs) {
  return std::make_shared<const Formula>(Formula{Dist{std::move(lhs), std::move(rhs)}});
}
FormulaPtr Formula::add(FormulaPtr lhs, FormulaPtr rhs) {
  return std::make_shared<const Formula>(Formula{Add{std::move(lhs), std::move(rhs)}});
}
FormulaPtr Formula::scale(Rational factor, FormulaPtr arg) {
  return std::make_shared<const Formula>(Formula{Scale{std::move(factor), std::move(arg)}});
}
FormulaPtr Formula::quantified(Quant q, std::string var, FormulaPtr body) {
  return std::make_shared<const Formula>(Formula{Quantified{q, std::move(var), std::move(body)}});
}
FormulaPtr Formula::inf(std::string var, FormulaPtr body) {
  return quantified(Quant::Inf, std::move(var), std::move(body));
}
FormulaPtr Formula::sup(std::string var, FormulaPtr body) {
  return quantified(Quant::Sup, std::move(var), std::move(body));
}
FormulaPtr Formula::integral(std::string var, FormulaPtr body) {
  return quantified(Quant::Int, std::move(var), std::move(body));
}
FormulaPtr Formula::numeral(const Rational& r) { return scale(r, one()); }

// ---- equality ----

bool operator==(const Term& a, const Term& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      overloaded{
          [&](const Term::Var& v) { return v.name == std::get<Term::Var>(b.node).name; },
          [&](const Term::Const& c) { return c.name == std::get<Term::Const>(b.node).name; },
          [&](const Term::App& f) {
            const auto& g = std::get<Term::App>(b.node);
            if (f.fn != g.fn || f.args.size() != g.args.size()) return false;
            for (size_t i = 0; i < f.args.size(); ++i)
              if (!(*f.args[i] == *g.args[i])) return false;
            return true;
          },
      },
      a.node);
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      overloaded{
          [&](const Formula::One&) { return true; },
          [&](const Formula::Rel& r) {
            const auto& s = std::get<Formula::Rel>(b.node);
            if (r.rel != s.rel || r.args.size() != s.args.size()) return false;
            for (size_t i = 0; i < r.args.size(); ++i)
              if (!(*r.args[i] == *s.args[i])) return false;
            return true;
          },
          [&](const Formula::Dist& d) {
            const auto& e = std::get<Formula::Dist>(b.node);
            return *d.lhs == *e.lhs && *d.rhs == *e.rhs;
          },
          [&](const Formula::Add& x) {
            const auto& y = std::get<Formula::Add>(b.node);
            return *x.lhs == *y.lhs && *x.rhs == *y.rhs;
          },
          [&](const Formula::Scale& x) {
            const auto& y = std::get<Formula::Scale>(b.node);
            return x.factor == y.factor && *x.arg == *y.arg;
          },
          [&](const Formula::Quantified& x) {
            const auto& y = std::get<Formula::Quantified>(b.node);
            return x.quant == y.quant && x.var == y.var && *x.body == *y.body;
          },
      },
      a.node);
}

bool operator==(const Condition& a, const Condition& b) {
  return *a.lhs == *b.lhs && *a.rhs == *b.rhs;
}

// ---- Lipschitz / bound calculus ----

Rational term_lipschitz(const Signature& sig, const Term& t) {
  return std::visit(
      overloaded{
          [&](const Term::Var&) { return Rational(1); },
          [&](const Term::Const& c) {
            if (!sig.has_constant(c.name))
              throw UnknownSymbol("unknown constant '" + c.name + "'");
            return Rational(0);
          },
          [&](const Term::App& f) {
            const FunctionSym* sym = sig.function(f.fn);
            if (!sym) throw UnknownSymbol("unknown function '" + f.fn + "'");
            if (static_cast<int>(f.args.size()) != sym->arity)
              throw ArityMismatch("function '" + f.fn + "' expects " +
                                  std::to_string(sym->arity) + " arguments, got " +
                                  std::to_string(f.args.size()));
            Rational sum = 0;
            for (const auto& arg : f.args) sum += term_lipschitz(sig, *arg);
            return Rational(sym->lipschitz * sum);
          },
      },
      t.node);
}

LipschitzBound formula_lipschitz_bound(const Signature& sig, const Formula& phi) {
  return std::visit(
      overloaded{
          [&](const Formula::One&) {
            return LipschitzBound{0, 1};
          },
          [&](const Formula::Rel& r) {
            const RelationSym* sym = sig.relation(r.rel);
            if (!sym) throw UnknownSymbol("unknown relation '" + r.rel + "'");
            if (static_cast<int>(r.args.size()) != sym->arity)
              throw ArityMismatch("relation '" + r.rel + "' expects " +
                                  std::to_string(sym->arity) + " arguments, got " +
                                  std::to_string(r.args.size()));
            Rational sum = 0;
            for (const auto& arg : r.args) sum += term_lipschitz(sig, *arg);
            return LipschitzBound{sym->lipschitz * sum, 1};
          },
          [&](const Formula::Dist& d) {
            Rational sum = term_lipschitz(sig, *d.lhs) + term_lipschitz(sig, *d.rhs);
            return LipschitzBound{sum, 1};
          },
          [&](const Formula::Add& a) {
            auto l = formula_lipschitz_bound(sig, *a.lhs);
            auto r = formula_lipschitz_bound(sig, *a.rhs);
            return LipschitzBound{l.lipschitz + r.lipschitz, l.bound + r.bound};
          },
          [&](const Formula::Scale& s) {
            auto a = formula_lipschitz_bound(sig, *s.arg);
            Rational f = rat_abs(s.factor);
            return LipschitzBound{f * a.lipschitz, f * a.bound};
          },
          [&](const Formula::Quantified& q) { return formula_lipschitz_bound(sig, *q.body); },
      },
      phi.node);
}

// ---- free variables ----

namespace {

void collect_free(const Term& t, std::set<std::string>& out) {
  std::visit(overloaded{
                 [&](const Term::Var& v) { out.insert(v.name); },
                 [&](const Term::Const&) {},
                 [&](const Term::App& f) {
                   for (const auto& arg : f.args) collect_free(*arg, out);
                 },
             },
             t.node);
}

void collect_free(const Formula& phi, std::set<std::string>& bound, std::set<std::string>& out) {
  std::visit(overloaded{
                 [&](const Formula::One&) {},
                 [&](const Formula::Rel& r) {
                   std::set<std::string> vars;
                   for (const auto& arg : r.args) collect_free(*arg, vars);
                   for (const auto& v : vars)
                     if (!bound.count(v)) out.insert(v);
                 },
                 [&](const Formula::Dist& d) {
                   std::set<std::string> vars;
                   collect_free(*d.lhs, vars);
                   collect_free(*d.rhs, vars);
                   for (const auto& v : vars)
                     if (!bound.count(v)) out.insert(v);
                 },
                 [&](const Formula::Add& a) {
                   collect_free(*a.lhs, bound, out);
                   collect_free(*a.rhs, bound, out);
                 },
                 [&](const Formula::Scale& s) { collect_free(*s.arg, bound, out); },
                 [&](const Formula::Quantified& q) {
                   bool fresh = bound.insert(q.var).second;
                   collect_free(*q.body, bound, out);
                   if (fresh) bound.erase(q.var);
                 },
             },
             phi.node);
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  collect_free(t, out);
  return out;
}

std::set<std::string> free_vars(const Formula& phi) {
  std::set<std::string> bound, out;
  collect_free(phi, bound, out);
  return out;
}

std::set<std::string> free_vars(const Condition& c) {
  std::set<std::string> out = free_vars(*c.lhs);
  auto r = free_vars(*c.rhs);
  out.insert(r.begin(), r.end());
  return out;
}

// ---- substitution ----

TermPtr substitute(const TermPtr& t, const std::string& var, const TermPtr& repl) {
  return std::visit(
      overloaded{
          [&](const Term::Var& v) { return v.name == var ? repl : t; },
          [&](const Term::Const&) { return t; },
          [&](const Term::App& f) {
            std::vector<TermPtr> args;
            args.reserve(f.args.size());
            for (const auto& arg : f.args) args.push_back(substitute(arg, var, repl));
            return Term::app(f.fn, std::move(args));
          },
      },
      t->node);
}

bool substitutable(const Formula& phi, const std::string& var, const Term& repl) {
  return std::visit(
      overloaded{
          [&](const Formula::One&) { return true; },
          [&](const Formula::Rel&) { return true; },
          [&](const Formula::Dist&) { return true; },
          [&](const Formula::Add& a) {
            return substitutable(*a.lhs, var, repl) && substitutable(*a.rhs, var, repl);
          },
          [&](const Formula::Scale& s) { return substitutable(*s.arg, var, repl); },
          [&](const Formula::Quantified& q) {
            if (q.var == var) return true;  // var is not free below this binder
            if (free_vars(*q.body).count(var) && free_vars(repl).count(q.var)) return false;
            return substitutable(*q.body, var, repl);
          },
      },
      phi.node);
}

FormulaPtr substitute(const FormulaPtr& phi, const std::string& var, const TermPtr& repl) {
  return std::visit(
      overloaded{
          [&](const Formula::One&) { return phi; },
          [&](const Formula::Rel& r) {
            std::vector<TermPtr> args;
            args.reserve(r.args.size());
            for (const auto& arg : r.args) args.push_back(substitute(arg, var, repl));
            return Formula::rel(r.rel, std::move(args));
          },
          [&](const Formula::Dist& d) {
            return Formula::dist(substitute(d.lhs, var, repl), substitute(d.rhs, var, repl));
          },
          [&](const Formula::Add& a) {
            return Formula::add(substitute(a.lhs, var, repl), substitute(a.rhs, var, repl));
          },
          [&](const Formula::Scale& s) {
            return Formula::scale(s.factor, substitute(s.arg, var, repl));
          },
          [&](const Formula::Quantified& q) {
            if (q.var == var) return phi;
            if (free_vars(*q.body).count(var) && free_vars(*repl).count(q.var))
              throw NotSubstitutable("variable '" + q.var + "' of the replacement is captured");
            return Formula::quantified(q.quant, q.var, substitute(q.body, var, repl));
          },
      },
      phi->node);
}

// ---- alpha normalization ----

namespace {

struct Renamer {
  const std::set<std::string>& avoid;  // free variables of the whole formula
  int next = 0;
  std::map<std::string, std::vector<std::string>> scopes;  // original -> canonical stack

  std::string fresh() {
    for (;;) {
      std::string name = "v" + std::to_string(next++);
      if (!avoid.count(name)) return name;
    }
  }

  TermPtr rename(const TermPtr& t) {
    return std::visit(overloaded{
                          [&](const Term::Var& v) {
                            auto it = scopes.find(v.name);
                            if (it == scopes.end() || it->second.empty()) return t;
                            return Term::var(it->second.back());
                          },
                          [&](const Term::Const&) { return t; },
                          [&](const Term::App& f) {
                            std::vector<TermPtr> args;
                            args.reserve(f.args.size());
                            for (const auto& arg : f.args) args.push_back(rename(arg));
                            return Term::app(f.fn, std::move(args));
                          },
                      },
                      t->node);
  }

  FormulaPtr rename(const FormulaPtr& phi) {
    return std::visit(
        overloaded{
            [&](const Formula::One&) { return phi; },
            [&](const Formula::Rel& r) {
              std::vector<TermPtr> args;
              args.reserve(r.args.size());
              for (const auto& arg : r.args) args.push_back(rename(arg));
              return Formula::rel(r.rel, std::move(args));
            },
            [&](const Formula::Dist& d) {
              return Formula::dist(rename(d.lhs), rename(d.rhs));
            },
            [&](const Formula::Add& a) {
              auto lhs = rename(a.lhs);
              return Formula::add(std::move(lhs), rename(a.rhs));
            },
            [&](const Formula::Scale& s) { return Formula::scale(s.factor, rename(s.arg)); },
            [&](const Formula::Quantified& q) {
              std::string canon = fresh();
              scopes[q.var].push_back(canon);
              auto body = rename(q.body);
              scopes[q.var].pop_back();
              return Formula::quantified(q.quant, canon, std::move(body));
            },
        },
        phi->node);
  }
};

FormulaPtr collapse_zero(const FormulaPtr& phi) {
  return std::visit(
      overloaded{
          [&](const Formula::One&) { return phi; },
          [&](const Formula::Rel&) { return phi; },
          [&](const Formula::Dist&) { return phi; },
          [&](const Formula::Add& a) {
            return Formula::add(collapse_zero(a.lhs), collapse_zero(a.rhs));
          },
          [&](const Formula::Scale& s) {
            if (s.factor == 0) return Formula::numeral(0);
            return Formula::scale(s.factor, collapse_zero(s.arg));
          },
          [&](const Formula::Quantified& q) {
            return Formula::quantified(q.quant, q.var, collapse_zero(q.body));
          },
      },
      phi->node);
}

}  // namespace

FormulaPtr alpha_normalize(const FormulaPtr& phi) {
  auto avoid = free_vars(*phi);
  Renamer r{avoid, 0, {}};
  return r.rename(phi);
}

bool alpha_equal(const Formula& a, const Formula& b) {
  auto pa = std::make_shared<const Formula>(a);
  auto pb = std::make_shared<const Formula>(b);
  return *alpha_normalize(pa) == *alpha_normalize(pb);
}

FormulaPtr matching_normal_form(const FormulaPtr& phi) {
  return alpha_normalize(collapse_zero(phi));
}

Condition matching_normal_form(const Condition& c) {
  return Condition{matching_normal_form(c.lhs), matching_normal_form(c.rhs)};
}

bool match_equal(const Condition& a, const Condition& b) {
  return matching_normal_form(a) == matching_normal_form(b);
}

bool match_equal(const FormulaPtr& a, const FormulaPtr& b) {
  return *matching_normal_form(a) == *matching_normal_form(b);
}

}  // namespace alint
