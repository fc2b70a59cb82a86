#include "alint/analysis.hpp"

#include <algorithm>

#include "alint/linear.hpp"
#include "alint/parser.hpp"

namespace alint {

namespace {

template <typename Fn>
void for_each_tuple(int n, int k, Fn&& fn) {
  std::vector<int> tuple(k, 0);
  for (;;) {
    fn(tuple);
    int pos = k - 1;
    while (pos >= 0 && tuple[pos] == n - 1) tuple[pos--] = 0;
    if (pos < 0) break;
    ++tuple[pos];
  }
}

}  // namespace

std::optional<MixtureSolution> solve_mixture(const Signature& sig,
                                             const std::vector<FiniteChargedStructure>& models,
                                             const Theory& theory, UltrameanOptions opts) {
  if (models.empty()) throw SizeMismatch("mixture needs at least one model");
  for (const auto& cond : theory)
    if (!free_vars(cond).empty())
      throw OpenCondition("theory condition '" + pretty(cond) + "' has free variables");

  const int m = static_cast<int>(models.size());
  std::vector<Rational> weights;

  if (theory.empty()) {
    weights.assign(m, Rational(1) / m);
  } else {
    // one row per condition: sum_i w_i (lhs^{M_i} - rhs^{M_i}) <= 0
    LinearSystem system;
    system.vars = m;
    for (const auto& cond : theory) {
      std::vector<Rational> row(m);
      for (int i = 0; i < m; ++i)
        row[i] = eval_formula(models[i], *cond.lhs, {}) - eval_formula(models[i], *cond.rhs, {});
      system.add_le(std::move(row), 0);
    }
    system.add_eq(std::vector<Rational>(m, 1), 1);

    std::optional<std::vector<Rational>> solution;
    if (theory.size() <= 4) {
      // Fourier-Motzkin works on free variables; add the sign constraints
      LinearSystem fm = system;
      for (int i = 0; i < m; ++i) {
        std::vector<Rational> row(m, 0);
        row[i] = -1;
        fm.add_le(std::move(row), 0);
      }
      solution = fourier_motzkin_feasible(fm);
    } else {
      solution = simplex_phase1_feasible(system);
    }
    if (!solution) return std::nullopt;
    weights = std::move(*solution);
  }

  MixtureSolution out;
  out.weights = weights;
  out.mixture = build_ultramean(sig, UltrachargeSpace{weights}, models, opts);
  for (const auto& cond : theory) {
    auto check = check_condition(out.mixture.structure, cond);
    if (!check.holds)
      throw Error("mixture verification failed on '" + pretty(cond) +
                  "' with margin " + to_string(check.margin));
  }
  return out;
}

Environment RealizedType::env() const {
  Environment e;
  for (size_t i = 0; i < vars.size(); ++i) e[vars[i]] = tuple[i];
  return e;
}

RealizedType realized_type(const FiniteChargedStructure& s,
                           const std::vector<std::string>& vars, const std::vector<int>& tuple,
                           const std::vector<FormulaPtr>& family) {
  if (vars.size() != tuple.size())
    throw SizeMismatch("tuple and variable list must have the same length");
  RealizedType p{s, vars, tuple, family, {}};
  Environment env = p.env();
  for (const auto& phi : family) p.values.push_back(eval_formula(s, *phi, env));
  return p;
}

bool verify_type_invariants(const RealizedType& p) {
  for (size_t i = 0; i < p.family.size(); ++i) {
    const auto& phi = p.family[i];
    if (std::holds_alternative<Formula::One>(phi->node) && p.values[i] != 1) return false;
    // nonnegative on the whole structure forces a nonnegative value
    auto floor = check_condition(p.base, {Formula::numeral(0), phi});
    if (floor.holds && p.values[i] < 0) return false;
  }
  return true;
}

Rational type_value(const RealizedType& p, const Formula& phi) {
  for (size_t i = 0; i < p.family.size(); ++i)
    if (alpha_equal(*p.family[i], phi)) return p.values[i];
  throw FamilyMiss("formula '" + pretty(phi) + "' is not in the realized family");
}

Rational plus_map(RealizedType& p, const std::string& var, const FormulaPtr& phi) {
  FormulaPtr integral = Formula::integral(var, phi);
  for (size_t i = 0; i < p.family.size(); ++i)
    if (alpha_equal(*p.family[i], *integral)) return p.values[i];
  Rational value = eval_formula(p.base, *integral, p.env());
  p.family.push_back(integral);
  p.values.push_back(value);
  return value;
}

Rational type_distance(const FiniteChargedStructure& s, const std::vector<int>& a,
                       const std::vector<int>& b, int depth,
                       const std::vector<Rational>& scalars) {
  if (a.size() != b.size()) throw SizeMismatch("tuples must have the same length");
  const int k = static_cast<int>(a.size());
  std::vector<std::string> vars;
  for (int i = 0; i < k; ++i) vars.push_back("x" + std::to_string(i + 1));

  // enumerate over the tuple variables plus an auxiliary binder variable,
  // keeping formulas whose free variables name tuple coordinates only
  std::vector<std::string> pool = vars;
  pool.push_back("y0");
  std::set<std::string> allowed(vars.begin(), vars.end());
  std::vector<FormulaPtr> family;
  for (const auto& phi : enumerate_formulas(s.sig, pool, depth, scalars)) {
    bool open = false;
    for (const auto& v : free_vars(*phi))
      if (!allowed.count(v)) open = true;
    if (!open) family.push_back(phi);
  }

  auto profile = [&](const std::vector<int>& tuple) {
    Environment env;
    for (int i = 0; i < k; ++i) env[vars[i]] = tuple[i];
    std::vector<Rational> values;
    values.reserve(family.size());
    for (const auto& phi : family) values.push_back(eval_formula(s, *phi, env));
    return values;
  };

  auto profile_a = profile(a), profile_b = profile(b);
  std::vector<std::vector<int>> realize_a, realize_b;
  for_each_tuple(s.size(), k, [&](const std::vector<int>& tuple) {
    auto values = profile(tuple);
    if (values == profile_a) realize_a.push_back(tuple);
    if (values == profile_b) realize_b.push_back(tuple);
  });

  bool first = true;
  Rational best = 0;
  for (const auto& ta : realize_a)
    for (const auto& tb : realize_b) {
      Rational dist = 0;
      for (int i = 0; i < k; ++i) dist += s.metric[ta[i]][tb[i]];
      if (first || dist < best) best = dist;
      first = false;
    }
  return best;
}

Rational iterated_charge(const FiniteChargedStructure& s, const Formula& phi,
                         const std::vector<std::string>& vars) {
  for (const auto& v : free_vars(phi))
    if (std::find(vars.begin(), vars.end(), v) == vars.end())
      throw UnboundVariable("variable '" + v + "' is not integrated over");
  const int k = static_cast<int>(vars.size());
  Rational sum = 0;
  Environment env;
  for_each_tuple(s.size(), k, [&](const std::vector<int>& tuple) {
    Rational weight = 1;
    for (int i = 0; i < k; ++i) {
      weight *= s.charge[tuple[i]];
      env[vars[i]] = tuple[i];
    }
    if (weight != 0) sum += weight * eval_formula(s, phi, env);
  });
  return sum;
}

Rational check_fubini(const FiniteChargedStructure& s, const FormulaPtr& phi,
                      const std::string& x, const std::string& y,
                      const std::vector<Environment>& assignments) {
  FormulaPtr xy = Formula::integral(x, Formula::integral(y, phi));
  FormulaPtr yx = Formula::integral(y, Formula::integral(x, phi));
  std::vector<Environment> envs = assignments;
  if (envs.empty()) envs.push_back({});
  Rational worst = 0;
  for (const auto& env : envs) {
    Rational residual = rat_abs(eval_formula(s, *xy, env) - eval_formula(s, *yx, env));
    if (residual > worst) worst = residual;
  }
  return worst;
}

ElemReport bounded_elementary_check(const FiniteChargedStructure& m,
                                    const FiniteChargedStructure& n,
                                    const std::vector<int>& point_map, ElemCheckOptions opts) {
  if (static_cast<int>(point_map.size()) != m.size())
    throw SizeMismatch("point map must cover every point of the left structure");
  for (int image : point_map)
    if (image < 0 || image >= n.size())
      throw SizeMismatch("point map image outside the right structure");

  std::vector<std::string> vars;
  for (int i = 0; i < opts.max_vars; ++i) vars.push_back("x" + std::to_string(i + 1));
  auto formulas = enumerate_formulas(m.sig, vars, opts.depth, opts.scalars, opts.budget);

  ElemReport report;
  report.formulas = static_cast<long>(formulas.size());
  for (const auto& phi : formulas) {
    std::vector<std::string> fv;
    for (const auto& v : free_vars(*phi)) fv.push_back(v);
    const int k = static_cast<int>(fv.size());
    for_each_tuple(m.size(), k, [&](const std::vector<int>& tuple) {
      if (++report.evaluations > opts.budget)
        throw BudgetExceeded("elementary check exceeded the evaluation budget");
      Environment left_env, right_env;
      for (int i = 0; i < k; ++i) {
        left_env[fv[i]] = tuple[i];
        right_env[fv[i]] = point_map[tuple[i]];
      }
      Rational left = eval_formula(m, *phi, left_env);
      Rational right = eval_formula(n, *phi, right_env);
      if (left != right) report.mismatches.push_back({phi, tuple, left, right});
    });
  }
  return report;
}

}  // namespace alint
