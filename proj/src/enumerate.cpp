#include "alint/enumerate.hpp"

#include <set>

#include "alint/parser.hpp"

namespace alint {

std::vector<TermPtr> enumerate_terms(const Signature& sig,
                                     const std::vector<std::string>& vars, int depth,
                                     long budget) {
  std::vector<std::vector<TermPtr>> by_depth(depth + 1);
  std::set<std::string> seen;
  long count = 0;
  auto push = [&](int d, const TermPtr& t) {
    if (!seen.insert(pretty(*t)).second) return;
    if (++count > budget) throw BudgetExceeded("term enumeration exceeded the budget");
    by_depth[d].push_back(t);
  };

  if (depth >= 1) {
    for (const auto& v : vars) push(1, Term::var(v));
    for (const auto& c : sig.constants()) push(1, Term::constant(c));
  }
  for (int d = 2; d <= depth; ++d) {
    for (const auto& f : sig.functions()) {
      // argument tuples with maximum depth exactly d-1
      std::vector<TermPtr> pool;
      for (int k = 1; k < d; ++k)
        pool.insert(pool.end(), by_depth[k].begin(), by_depth[k].end());
      std::vector<int> idx(f.arity, 0);
      if (pool.empty()) continue;
      for (;;) {
        std::vector<TermPtr> args;
        args.reserve(f.arity);
        for (int i : idx) args.push_back(pool[i]);
        // shallower combinations were already produced at earlier levels and
        // are dropped by the dedup, so this level keeps exactly depth d
        push(d, Term::app(f.name, std::move(args)));
        int pos = f.arity - 1;
        while (pos >= 0 && idx[pos] == static_cast<int>(pool.size()) - 1) idx[pos--] = 0;
        if (pos < 0) break;
        ++idx[pos];
      }
    }
  }

  std::vector<TermPtr> out;
  for (const auto& level : by_depth) out.insert(out.end(), level.begin(), level.end());
  return out;
}

std::vector<FormulaPtr> enumerate_formulas(const Signature& sig,
                                           const std::vector<std::string>& vars, int depth,
                                           const std::vector<Rational>& scalars,
                                           long budget) {
  std::vector<std::vector<FormulaPtr>> by_depth(depth + 1);
  std::set<std::string> seen;
  long count = 0;
  auto push = [&](int d, const FormulaPtr& f) {
    if (!seen.insert(pretty(*f)).second) return;
    if (++count > budget) throw BudgetExceeded("formula enumeration exceeded the budget");
    by_depth[d].push_back(f);
  };

  auto terms = enumerate_terms(sig, vars, depth, budget);

  if (depth >= 1) {
    push(1, Formula::one());
    for (const auto& s : terms)
      for (const auto& t : terms) push(1, Formula::dist(s, t));
    for (const auto& r : sig.relations()) {
      std::vector<int> idx(r.arity, 0);
      if (terms.empty()) break;
      for (;;) {
        std::vector<TermPtr> args;
        args.reserve(r.arity);
        for (int i : idx) args.push_back(terms[i]);
        push(1, Formula::rel(r.name, std::move(args)));
        int pos = r.arity - 1;
        while (pos >= 0 && idx[pos] == static_cast<int>(terms.size()) - 1) idx[pos--] = 0;
        if (pos < 0) break;
        ++idx[pos];
      }
    }
  }

  for (int d = 2; d <= depth; ++d) {
    std::vector<FormulaPtr> pool;
    for (int k = 1; k < d; ++k) pool.insert(pool.end(), by_depth[k].begin(), by_depth[k].end());
    for (const auto& a : pool)
      for (const auto& b : pool) push(d, Formula::add(a, b));
    for (const auto& r : scalars)
      for (const auto& a : pool) push(d, Formula::scale(r, a));
    for (Quant q : {Quant::Inf, Quant::Sup, Quant::Int})
      for (const auto& v : vars)
        for (const auto& a : pool) push(d, Formula::quantified(q, v, a));
  }

  std::vector<FormulaPtr> out;
  for (const auto& level : by_depth) out.insert(out.end(), level.begin(), level.end());
  return out;
}

}  // namespace alint
