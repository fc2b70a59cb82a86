#include "alint/ultramean.hpp"

#include <algorithm>

namespace alint {

void validate_ultracharge(const UltrachargeSpace& ws) {
  if (ws.weights.empty()) throw SchemaError("index set must be nonempty");
  Rational sum = 0;
  for (const auto& w : ws.weights) {
    if (w < 0) throw SchemaError("weights must be nonnegative");
    sum += w;
  }
  if (sum != 1) throw SchemaError("weights must sum to 1, got " + to_string(sum));
}

long UltrameanResult::raw_index(const ProductPoint& coords) const {
  if (coords.size() != factor_sizes.size())
    throw SizeMismatch("product point has wrong number of coordinates");
  long idx = 0;
  for (size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] < 0 || coords[i] >= factor_sizes[i])
      throw SizeMismatch("coordinate outside factor " + std::to_string(i));
    idx = idx * factor_sizes[i] + coords[i];
  }
  return idx;
}

int UltrameanResult::class_of(const ProductPoint& coords) const {
  return raw_to_class[raw_index(coords)];
}

namespace {

long power(long base, int exp) {
  long out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

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

ProductPoint decode(long raw, const std::vector<int>& sizes) {
  ProductPoint coords(sizes.size());
  for (int i = static_cast<int>(sizes.size()) - 1; i >= 0; --i) {
    coords[i] = static_cast<int>(raw % sizes[i]);
    raw /= sizes[i];
  }
  return coords;
}

}  // namespace

UltrameanResult build_ultramean(const Signature& sig, const UltrachargeSpace& ws,
                                const std::vector<FiniteChargedStructure>& models,
                                UltrameanOptions opts) {
  validate_ultracharge(ws);
  if (static_cast<int>(models.size()) != ws.size())
    throw SizeMismatch("got " + std::to_string(models.size()) + " models for " +
                       std::to_string(ws.size()) + " weights");
  const int m = ws.size();

  std::vector<int> sizes;
  long raw_size = 1;
  for (const auto& model : models) {
    sizes.push_back(model.size());
    raw_size *= model.size();
    if (raw_size > opts.product_cap)
      throw ProductTooLarge("raw product exceeds the cap of " +
                            std::to_string(opts.product_cap) + " points");
  }

  // raw product prestructure with the weight-averaged pseudometric
  FiniteChargedStructure raw;
  raw.sig = sig;
  std::vector<ProductPoint> coords(raw_size);
  for (long p = 0; p < raw_size; ++p) {
    coords[p] = decode(p, sizes);
    std::string label = "(";
    for (int i = 0; i < m; ++i) label += (i ? "," : "") + models[i].points[coords[p][i]];
    raw.points.push_back(label + ")");
  }

  raw.metric.assign(raw_size, std::vector<Rational>(raw_size, 0));
  for (long p = 0; p < raw_size; ++p)
    for (long q = p + 1; q < raw_size; ++q) {
      Rational dist = 0;
      for (int i = 0; i < m; ++i)
        dist += ws.weights[i] * models[i].metric[coords[p][i]][coords[q][i]];
      raw.metric[p][q] = dist;
      raw.metric[q][p] = dist;
    }

  raw.charge.assign(raw_size, 0);
  for (long p = 0; p < raw_size; ++p) {
    Rational w = 1;
    for (int i = 0; i < m; ++i) w *= models[i].charge[coords[p][i]];
    raw.charge[p] = w;
  }

  for (const auto& c : sig.constants()) {
    ProductPoint cp(m);
    for (int i = 0; i < m; ++i) cp[i] = models[i].constants.at(c);
    long idx = 0;
    for (int i = 0; i < m; ++i) idx = idx * sizes[i] + cp[i];
    raw.constants[c] = static_cast<int>(idx);
  }

  for (const auto& f : sig.functions()) {
    FunctionTable table;
    table.arity = f.arity;
    table.values.assign(power(raw_size, f.arity), 0);
    for_each_tuple(static_cast<int>(raw_size), f.arity, [&](const std::vector<int>& args) {
      long image = 0;
      for (int i = 0; i < m; ++i) {
        std::vector<int> factor_args(f.arity);
        for (int a = 0; a < f.arity; ++a) factor_args[a] = coords[args[a]][i];
        const auto& ft = models[i].functions.at(f.name);
        image = image * sizes[i] + ft.values[table_index(factor_args, sizes[i])];
      }
      table.values[table_index(args, static_cast<int>(raw_size))] = static_cast<int>(image);
    });
    raw.functions[f.name] = std::move(table);
  }

  for (const auto& r : sig.relations()) {
    RelationTable table;
    table.arity = r.arity;
    table.values.assign(power(raw_size, r.arity), 0);
    for_each_tuple(static_cast<int>(raw_size), r.arity, [&](const std::vector<int>& args) {
      Rational value = 0;
      for (int i = 0; i < m; ++i) {
        std::vector<int> factor_args(r.arity);
        for (int a = 0; a < r.arity; ++a) factor_args[a] = coords[args[a]][i];
        const auto& rt = models[i].relations.at(r.name);
        value += ws.weights[i] * rt.values[table_index(factor_args, sizes[i])];
      }
      table.values[table_index(args, static_cast<int>(raw_size))] = value;
    });
    raw.relations[r.name] = std::move(table);
  }

  auto quotient = quotient_structure(raw);

  UltrameanResult out;
  out.structure = std::move(quotient.structure);
  out.factor_sizes = std::move(sizes);
  out.raw_to_class = std::move(quotient.point_map);
  out.raw_size = raw_size;
  return out;
}

UltrameanResult build_powermean(const Signature& sig, const UltrachargeSpace& ws,
                                const FiniteChargedStructure& model, UltrameanOptions opts) {
  std::vector<FiniteChargedStructure> models(ws.size(), model);
  return build_ultramean(sig, ws, models, opts);
}

Rational ultramean_residual(const UltrameanResult& mean, const UltrachargeSpace& ws,
                            const std::vector<FiniteChargedStructure>& models,
                            const Formula& phi,
                            const std::vector<std::map<std::string, ProductPoint>>& tuples) {
  Rational worst = 0;
  for (const auto& choice : tuples) {
    Environment mean_env;
    for (const auto& [var, coords] : choice) mean_env[var] = mean.class_of(coords);
    Rational lhs = eval_formula(mean.structure, phi, mean_env);

    Rational rhs = 0;
    for (size_t i = 0; i < models.size(); ++i) {
      Environment env;
      for (const auto& [var, coords] : choice) env[var] = coords[i];
      rhs += ws.weights[i] * eval_formula(models[i], phi, env);
    }

    Rational residual = rat_abs(lhs - rhs);
    if (residual > worst) worst = residual;
  }
  return worst;
}

Rational verify_ultramean_theorem(const Signature& sig, const UltrachargeSpace& ws,
                                  const std::vector<FiniteChargedStructure>& models,
                                  const Formula& phi,
                                  const std::vector<std::map<std::string, ProductPoint>>& tuples,
                                  UltrameanOptions opts) {
  auto mean = build_ultramean(sig, ws, models, opts);
  return ultramean_residual(mean, ws, models, phi, tuples);
}

DiagonalReport diagonal_embedding(const Signature& sig, const UltrachargeSpace& ws,
                                  const FiniteChargedStructure& model,
                                  const std::vector<FormulaPtr>& family,
                                  UltrameanOptions opts) {
  auto mean = build_powermean(sig, ws, model, opts);

  DiagonalReport report;
  report.map.resize(model.size());
  for (int a = 0; a < model.size(); ++a)
    report.map[a] = mean.class_of(ProductPoint(ws.size(), a));

  for (const auto& phi : family) {
    std::vector<std::string> vars;
    for (const auto& v : free_vars(*phi)) vars.push_back(v);
    const int k = static_cast<int>(vars.size());
    for_each_tuple(model.size(), k, [&](const std::vector<int>& tuple) {
      Environment env, diag_env;
      for (int i = 0; i < k; ++i) {
        env[vars[i]] = tuple[i];
        diag_env[vars[i]] = report.map[tuple[i]];
      }
      Rational left = eval_formula(model, *phi, env);
      Rational right = eval_formula(mean.structure, *phi, diag_env);
      ++report.checked;
      if (left != right) report.mismatches.push_back({phi, tuple, left, right});
    });
  }
  return report;
}

}  // namespace alint
