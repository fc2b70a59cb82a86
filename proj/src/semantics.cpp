#include "alint/semantics.hpp"

#include <algorithm>

namespace alint {

long table_index(const std::vector<int>& args, int n) {
  long idx = 0;
  for (int a : args) idx = idx * n + a;
  return idx;
}

Rational FiniteChargedStructure::mass() const {
  Rational sum = 0;
  for (const auto& w : charge) sum += w;
  return sum;
}

std::optional<int> FiniteChargedStructure::point_index(const std::string& label) const {
  for (size_t i = 0; i < points.size(); ++i)
    if (points[i] == label) return static_cast<int>(i);
  return std::nullopt;
}

namespace {

long power(long base, int exp) {
  long out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

/// Odometer over {0..n-1}^k; calls fn with each tuple.
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

void check_dimensions(const FiniteChargedStructure& s) {
  const int n = s.size();
  if (n < 1) throw DimensionMismatch("structure must have at least one point");
  if (static_cast<int>(s.metric.size()) != n)
    throw DimensionMismatch("metric has " + std::to_string(s.metric.size()) + " rows for " +
                            std::to_string(n) + " points");
  for (const auto& row : s.metric)
    if (static_cast<int>(row.size()) != n)
      throw DimensionMismatch("metric row has " + std::to_string(row.size()) +
                              " entries for " + std::to_string(n) + " points");
  if (static_cast<int>(s.charge.size()) != n)
    throw DimensionMismatch("charge has " + std::to_string(s.charge.size()) +
                            " entries for " + std::to_string(n) + " points");

  std::set<std::string> labels(s.points.begin(), s.points.end());
  if (static_cast<int>(labels.size()) != n) throw DimensionMismatch("duplicate point labels");

  for (const auto& c : s.sig.constants()) {
    auto it = s.constants.find(c);
    if (it == s.constants.end())
      throw DimensionMismatch("constant '" + c + "' has no interpretation");
    if (it->second < 0 || it->second >= n)
      throw DimensionMismatch("constant '" + c + "' maps outside the point set");
  }
  for (const auto& f : s.sig.functions()) {
    auto it = s.functions.find(f.name);
    if (it == s.functions.end())
      throw DimensionMismatch("function '" + f.name + "' has no interpretation");
    if (it->second.arity != f.arity)
      throw DimensionMismatch("function '" + f.name + "' table arity mismatch");
    if (static_cast<long>(it->second.values.size()) != power(n, f.arity))
      throw DimensionMismatch("function '" + f.name + "' table has wrong size");
    for (int v : it->second.values)
      if (v < 0 || v >= n)
        throw DimensionMismatch("function '" + f.name + "' maps outside the point set");
  }
  for (const auto& r : s.sig.relations()) {
    auto it = s.relations.find(r.name);
    if (it == s.relations.end())
      throw DimensionMismatch("relation '" + r.name + "' has no interpretation");
    if (it->second.arity != r.arity)
      throw DimensionMismatch("relation '" + r.name + "' table arity mismatch");
    if (static_cast<long>(it->second.values.size()) != power(n, r.arity))
      throw DimensionMismatch("relation '" + r.name + "' table has wrong size");
  }
}

std::vector<Violation> validate_structure(const FiniteChargedStructure& s,
                                          ValidationOptions opts) {
  std::vector<Violation> out;
  const int n = s.size();
  auto label = [&](int i) { return s.points[i]; };

  // metric axioms and range
  for (int i = 0; i < n; ++i) {
    if (s.metric[i][i] != 0)
      out.push_back({"Reflexivity", "d(" + label(i) + "," + label(i) + ") != 0"});
    for (int j = 0; j < n; ++j) {
      if (s.metric[i][j] < 0 || s.metric[i][j] > 1)
        out.push_back({"MetricRange", "d(" + label(i) + "," + label(j) + ") = " +
                                          to_string(s.metric[i][j]) + " outside [0,1]"});
      if (j > i && s.metric[i][j] != s.metric[j][i])
        out.push_back({"Symmetry", "d(" + label(i) + "," + label(j) + ") != d(" + label(j) +
                                       "," + label(i) + ")"});
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (s.metric[i][k] > s.metric[i][j] + s.metric[j][k]) {
          out.push_back({"Triangle", "d(" + label(i) + "," + label(k) + ") > d(" + label(i) +
                                         "," + label(j) + ") + d(" + label(j) + "," +
                                         label(k) + ")"});
        }

  // charge
  for (int i = 0; i < n; ++i)
    if (s.charge[i] < 0)
      out.push_back({"ChargeNonnegative", "charge(" + label(i) + ") < 0"});
  Rational mass = s.mass();
  if (opts.allow_submass) {
    if (mass > 1) out.push_back({"ChargeMass", "total charge " + to_string(mass) + " > 1"});
  } else if (mass != 1) {
    out.push_back({"ChargeMass", "total charge is " + to_string(mass) + ", expected 1"});
  }

  auto tuple_dist = [&](const std::vector<int>& a, const std::vector<int>& b) {
    Rational sum = 0;
    for (size_t i = 0; i < a.size(); ++i) sum += s.metric[a[i]][b[i]];
    return sum;
  };
  auto tuple_str = [&](const std::vector<int>& t) {
    std::string str = "(";
    for (size_t i = 0; i < t.size(); ++i) str += (i ? "," : "") + label(t[i]);
    return str + ")";
  };

  // function symbols: lambda_F-Lipschitz
  for (const auto& f : s.sig.functions()) {
    const auto& table = s.functions.at(f.name);
    for_each_tuple(n, f.arity, [&](const std::vector<int>& a) {
      for_each_tuple(n, f.arity, [&](const std::vector<int>& b) {
        int fa = table.values[table_index(a, n)];
        int fb = table.values[table_index(b, n)];
        if (s.metric[fa][fb] > f.lipschitz * tuple_dist(a, b))
          out.push_back({"FunctionLipschitz",
                         f.name + tuple_str(a) + " vs " + f.name + tuple_str(b)});
      });
    });
  }

  // relation symbols: range and lambda_R-Lipschitz
  for (const auto& r : s.sig.relations()) {
    const auto& table = s.relations.at(r.name);
    for_each_tuple(n, r.arity, [&](const std::vector<int>& a) {
      const Rational& va = table.values[table_index(a, n)];
      if (va < 0 || va > 1)
        out.push_back({"RelationRange",
                       r.name + tuple_str(a) + " = " + to_string(va) + " outside [0,1]"});
      for_each_tuple(n, r.arity, [&](const std::vector<int>& b) {
        const Rational& vb = table.values[table_index(b, n)];
        if (va - vb > r.lipschitz * tuple_dist(a, b))
          out.push_back({"RelationLipschitz",
                         r.name + tuple_str(a) + " vs " + r.name + tuple_str(b)});
      });
    });
  }

  return out;
}

int eval_term(const FiniteChargedStructure& s, const Term& t, const Environment& env) {
  return std::visit(
      overloaded{
          [&](const Term::Var& v) {
            auto it = env.find(v.name);
            if (it == env.end()) throw UnboundVariable("variable '" + v.name + "' is unbound");
            return it->second;
          },
          [&](const Term::Const& c) {
            auto it = s.constants.find(c.name);
            if (it == s.constants.end())
              throw UnknownSymbol("constant '" + c.name + "' has no interpretation");
            return it->second;
          },
          [&](const Term::App& f) {
            auto it = s.functions.find(f.fn);
            if (it == s.functions.end())
              throw UnknownSymbol("function '" + f.fn + "' has no interpretation");
            std::vector<int> args;
            args.reserve(f.args.size());
            for (const auto& arg : f.args) args.push_back(eval_term(s, *arg, env));
            return it->second.values[table_index(args, s.size())];
          },
      },
      t.node);
}

namespace {

Rational eval_rec(const FiniteChargedStructure& s, const Formula& phi, Environment& env) {
  return std::visit(
      overloaded{
          [&](const Formula::One&) { return Rational(1); },
          [&](const Formula::Rel& r) {
            auto it = s.relations.find(r.rel);
            if (it == s.relations.end())
              throw UnknownSymbol("relation '" + r.rel + "' has no interpretation");
            std::vector<int> args;
            args.reserve(r.args.size());
            for (const auto& arg : r.args) args.push_back(eval_term(s, *arg, env));
            return it->second.values[table_index(args, s.size())];
          },
          [&](const Formula::Dist& d) {
            int a = eval_term(s, *d.lhs, env);
            int b = eval_term(s, *d.rhs, env);
            return s.metric[a][b];
          },
          [&](const Formula::Add& a) {
            return Rational(eval_rec(s, *a.lhs, env) + eval_rec(s, *a.rhs, env));
          },
          [&](const Formula::Scale& sc) {
            return Rational(sc.factor * eval_rec(s, *sc.arg, env));
          },
          [&](const Formula::Quantified& q) {
            auto saved = env.find(q.var);
            std::optional<int> old;
            if (saved != env.end()) old = saved->second;
            Rational acc;
            for (int b = 0; b < s.size(); ++b) {
              env[q.var] = b;
              Rational v = eval_rec(s, *q.body, env);
              switch (q.quant) {
                case Quant::Inf:
                  if (b == 0 || v < acc) acc = v;
                  break;
                case Quant::Sup:
                  if (b == 0 || v > acc) acc = v;
                  break;
                case Quant::Int:
                  if (b == 0) acc = 0;
                  acc += s.charge[b] * v;
                  break;
              }
            }
            if (old)
              env[q.var] = *old;
            else
              env.erase(q.var);
            return acc;
          },
      },
      phi.node);
}

double eval_approx_rec(const FiniteChargedStructure& s, const Formula& phi, Environment& env) {
  return std::visit(
      overloaded{
          [&](const Formula::One&) { return 1.0; },
          [&](const Formula::Rel& r) {
            std::vector<int> args;
            for (const auto& arg : r.args) args.push_back(eval_term(s, *arg, env));
            return s.relations.at(r.rel).values[table_index(args, s.size())].get_d();
          },
          [&](const Formula::Dist& d) {
            int a = eval_term(s, *d.lhs, env);
            int b = eval_term(s, *d.rhs, env);
            return s.metric[a][b].get_d();
          },
          [&](const Formula::Add& a) {
            return eval_approx_rec(s, *a.lhs, env) + eval_approx_rec(s, *a.rhs, env);
          },
          [&](const Formula::Scale& sc) {
            return sc.factor.get_d() * eval_approx_rec(s, *sc.arg, env);
          },
          [&](const Formula::Quantified& q) {
            auto saved = env.find(q.var);
            std::optional<int> old;
            if (saved != env.end()) old = saved->second;
            double acc = 0;
            for (int b = 0; b < s.size(); ++b) {
              env[q.var] = b;
              double v = eval_approx_rec(s, *q.body, env);
              switch (q.quant) {
                case Quant::Inf:
                  acc = b == 0 ? v : std::min(acc, v);
                  break;
                case Quant::Sup:
                  acc = b == 0 ? v : std::max(acc, v);
                  break;
                case Quant::Int:
                  acc += s.charge[b].get_d() * v;
                  break;
              }
            }
            if (old)
              env[q.var] = *old;
            else
              env.erase(q.var);
            return acc;
          },
      },
      phi.node);
}

}  // namespace

Rational eval_formula(const FiniteChargedStructure& s, const Formula& phi,
                      const Environment& env) {
  Environment scratch = env;
  return eval_rec(s, phi, scratch);
}

double eval_formula_approx(const FiniteChargedStructure& s, const Formula& phi,
                           const Environment& env) {
  Environment scratch = env;
  return eval_approx_rec(s, phi, scratch);
}

ConditionCheck check_condition(const FiniteChargedStructure& s, const Condition& c) {
  std::vector<std::string> vars;
  for (const auto& v : free_vars(c)) vars.push_back(v);

  ConditionCheck result;
  bool first = true;
  Environment env;
  const int k = static_cast<int>(vars.size());
  for_each_tuple(s.size(), k, [&](const std::vector<int>& tuple) {
    for (int i = 0; i < k; ++i) env[vars[i]] = tuple[i];
    Rational margin = eval_formula(s, *c.rhs, env) - eval_formula(s, *c.lhs, env);
    if (first || margin < result.margin) result.margin = margin;
    first = false;
  });
  result.holds = result.margin >= 0;
  return result;
}

QuotientResult quotient_structure(const FiniteChargedStructure& p) {
  const int n = p.size();

  // union-find over zero-distance pairs
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (p.metric[i][j] == 0) {
        int a = find(i), b = find(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }

  // compact class ids in order of first appearance
  std::vector<int> point_map(n, -1);
  std::vector<int> reps;
  for (int i = 0; i < n; ++i) {
    int root = find(i);
    if (point_map[root] == -1) {
      point_map[root] = static_cast<int>(reps.size());
      reps.push_back(root);
    }
    point_map[i] = point_map[root];
  }
  const int m = static_cast<int>(reps.size());

  FiniteChargedStructure q;
  q.sig = p.sig;
  q.points.reserve(m);
  for (int r : reps) q.points.push_back(p.points[r]);

  q.metric.assign(m, std::vector<Rational>(m, 0));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) q.metric[a][b] = p.metric[reps[a]][reps[b]];
  // every member must induce the same distances, else the input was not a
  // pseudometric prestructure
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (p.metric[i][j] != q.metric[point_map[i]][point_map[j]])
        throw IllDefinedQuotient("distance d(" + p.points[i] + "," + p.points[j] +
                                 ") differs from its class representatives");

  q.charge.assign(m, 0);
  for (int i = 0; i < n; ++i) q.charge[point_map[i]] += p.charge[i];

  for (const auto& [name, idx] : p.constants) q.constants[name] = point_map[idx];

  for (const auto& [name, table] : p.functions) {
    FunctionTable qt;
    qt.arity = table.arity;
    qt.values.assign(power(m, table.arity), -1);
    for_each_tuple(n, table.arity, [&](const std::vector<int>& args) {
      std::vector<int> mapped(args.size());
      for (size_t i = 0; i < args.size(); ++i) mapped[i] = point_map[args[i]];
      int value = point_map[table.values[table_index(args, n)]];
      int& slot = qt.values[table_index(mapped, m)];
      if (slot == -1)
        slot = value;
      else if (slot != value)
        throw IllDefinedQuotient("function '" + name +
                                 "' disagrees on merged argument tuples");
    });
    q.functions[name] = std::move(qt);
  }

  for (const auto& [name, table] : p.relations) {
    RelationTable qt;
    qt.arity = table.arity;
    qt.values.assign(power(m, table.arity), 0);
    std::vector<bool> set(qt.values.size(), false);
    for_each_tuple(n, table.arity, [&](const std::vector<int>& args) {
      std::vector<int> mapped(args.size());
      for (size_t i = 0; i < args.size(); ++i) mapped[i] = point_map[args[i]];
      const Rational& value = table.values[table_index(args, n)];
      long idx = table_index(mapped, m);
      if (!set[idx]) {
        qt.values[idx] = value;
        set[idx] = true;
      } else if (qt.values[idx] != value) {
        throw IllDefinedQuotient("relation '" + name +
                                 "' disagrees on merged argument tuples");
      }
    });
    q.relations[name] = std::move(qt);
  }

  return QuotientResult{std::move(q), std::move(point_map)};
}

}  // namespace alint
