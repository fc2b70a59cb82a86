// Command line front door: validate and evaluate structures, build
// ultrameans, check proofs, solve mixtures and run the analysis tools.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "alint/analysis.hpp"
#include "alint/parser.hpp"
#include "alint/proof.hpp"
#include "alint/ultramean.hpp"

using namespace alint;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSemantic = 1;
constexpr int kExitUsage = 2;

struct IoError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw IoError("cannot read '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out.good()) throw IoError("cannot write '" + path + "'");
  out << content;
}

/// Signature precedence: --sig file, then the document's own, then empty.
Signature resolve_signature(const std::string& sig_path, const std::string& document) {
  if (!sig_path.empty()) return parse_signature(read_file(sig_path));
  if (auto embedded = embedded_signature(document)) return *embedded;
  return Signature{};
}

Environment parse_env(const FiniteChargedStructure& s, const std::string& spec) {
  Environment env;
  if (spec.empty()) return env;
  // split on commas outside parentheses; mean-construction labels like
  // "(0,1)" contain commas of their own
  std::vector<std::string> items;
  std::string current;
  int depth = 0;
  for (char c : spec) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      items.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  items.push_back(current);
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw SchemaError("--at entries look like var=point, got '" + item + "'");
    std::string var = item.substr(0, eq), label = item.substr(eq + 1);
    auto idx = s.point_index(label);
    if (!idx) throw SchemaError("unknown point '" + label + "'");
    env[var] = *idx;
  }
  return env;
}

std::vector<fs::path> sorted_files(const std::string& dir, const std::string& extension) {
  if (!fs::is_directory(dir)) throw IoError("'" + dir + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == extension)
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  return files;
}

FiniteChargedStructure load_structure(const std::string& path, const std::string& sig_path) {
  std::string text = read_file(path);
  return parse_structure(resolve_signature(sig_path, text), text);
}

long product_cap_from_env(long fallback) {
  if (const char* env = std::getenv("AL_PRODUCT_CAP")) {
    try {
      return std::stol(env);
    } catch (const std::exception&) {
      throw SchemaError("AL_PRODUCT_CAP must be an integer");
    }
  }
  return fallback;
}

void emit(bool as_json, const json& payload, const std::string& text) {
  if (as_json)
    std::cout << payload.dump(2) << "\n";
  else
    std::cout << text;
}

// ---- subcommands ----

int run_validate(const std::string& path, const std::string& sig_path, bool mass_le_one,
                 bool as_json) {
  auto s = load_structure(path, sig_path);
  auto violations = validate_structure(s, {.allow_submass = mass_le_one});

  json payload{{"file", path}, {"valid", violations.empty()}};
  json list = json::array();
  std::string text;
  for (const auto& v : violations) {
    list.push_back({{"axiom", v.axiom}, {"detail", v.detail}});
    text += v.axiom + ": " + v.detail + "\n";
  }
  payload["violations"] = list;
  if (violations.empty()) text = "valid\n";
  emit(as_json, payload, text);
  return violations.empty() ? kExitOk : kExitSemantic;
}

int run_eval(const std::string& path, const std::string& sig_path,
             const std::string& formula_text, const std::string& at, bool use_float,
             bool as_json) {
  std::string doc = read_file(path);
  Signature sig = resolve_signature(sig_path, doc);
  auto s = parse_structure(sig, doc);
  auto phi = parse_formula(sig, formula_text);
  auto env = parse_env(s, at);
  auto lb = formula_lipschitz_bound(sig, *phi);

  if (use_float) {
    double value = eval_formula_approx(s, *phi, env);
    emit(as_json,
         json{{"formula", pretty(*phi)},
              {"value_float", value},
              {"note", "floating point fast path; tolerance not tracked"}},
         std::to_string(value) + "\n");
    return kExitOk;
  }
  Rational value = eval_formula(s, *phi, env);
  emit(as_json,
       json{{"formula", pretty(*phi)},
            {"value", to_string(value)},
            {"bound", to_string(lb.bound)},
            {"lipschitz", to_string(lb.lipschitz)}},
       to_string(value) + "\n");
  return kExitOk;
}

int run_check(const std::string& path, const std::string& sig_path,
              const std::string& condition_text, bool as_json) {
  std::string doc = read_file(path);
  Signature sig = resolve_signature(sig_path, doc);
  auto s = parse_structure(sig, doc);

  bool all_hold = true;
  json list = json::array();
  std::string text;
  for (const auto& cond : parse_condition(sig, condition_text)) {
    auto result = check_condition(s, cond);
    all_hold = all_hold && result.holds;
    list.push_back({{"condition", pretty(cond)},
                    {"holds", result.holds},
                    {"margin", to_string(result.margin)}});
    text += pretty(cond) + ": " + (result.holds ? "holds" : "fails") +
            " (margin " + to_string(result.margin) + ")\n";
  }
  emit(as_json, json{{"holds", all_hold}, {"conditions", list}}, text);
  return all_hold ? kExitOk : kExitSemantic;
}

int run_mean(const std::vector<std::string>& structure_paths, const std::string& weights_path,
             const std::string& sig_path, const std::string& out_path, bool powermean) {
  UltrachargeSpace ws{parse_weights(read_file(weights_path))};

  std::vector<FiniteChargedStructure> models;
  Signature sig;
  for (size_t i = 0; i < structure_paths.size(); ++i) {
    std::string doc = read_file(structure_paths[i]);
    if (i == 0) sig = resolve_signature(sig_path, doc);
    models.push_back(parse_structure(sig, doc));
  }
  for (const auto& m : models) {
    auto violations = validate_structure(m);
    if (!violations.empty())
      throw SchemaError("input structure is invalid: " + violations.front().axiom + ": " +
                        violations.front().detail);
  }

  UltrameanOptions opts;
  opts.product_cap = product_cap_from_env(opts.product_cap);
  UltrameanResult mean = powermean ? build_powermean(sig, ws, models.at(0), opts)
                                   : build_ultramean(sig, ws, models, opts);
  std::string out = structure_to_json(mean.structure);
  if (out_path.empty())
    std::cout << out << "\n";
  else
    write_file(out_path, out);
  return kExitOk;
}

int run_verify_los(const std::vector<std::string>& structure_paths,
                   const std::string& weights_path, const std::string& sig_path,
                   const std::string& formula_text, const std::string& tuples_spec,
                   bool as_json) {
  UltrachargeSpace ws{parse_weights(read_file(weights_path))};
  std::vector<FiniteChargedStructure> models;
  Signature sig;
  for (size_t i = 0; i < structure_paths.size(); ++i) {
    std::string doc = read_file(structure_paths[i]);
    if (i == 0) sig = resolve_signature(sig_path, doc);
    models.push_back(parse_structure(sig, doc));
  }
  auto phi = parse_formula(sig, formula_text);

  std::vector<std::map<std::string, ProductPoint>> tuples;
  auto free_set = free_vars(*phi);
  std::vector<std::string> fv(free_set.begin(), free_set.end());
  if (!tuples_spec.empty()) {
    // choice;choice with choice = var=l1:l2:...:lm pairs separated by spaces
    std::istringstream choices(tuples_spec);
    std::string choice;
    while (std::getline(choices, choice, ';')) {
      std::map<std::string, ProductPoint> assignment;
      std::istringstream pairs(choice);
      std::string pair;
      while (pairs >> pair) {
        auto eq = pair.find('=');
        if (eq == std::string::npos)
          throw SchemaError("--tuples entries look like var=p1:p2:..., got '" + pair + "'");
        std::string var = pair.substr(0, eq);
        ProductPoint coords;
        std::istringstream labels(pair.substr(eq + 1));
        std::string label;
        size_t factor = 0;
        while (std::getline(labels, label, ':')) {
          if (factor >= models.size()) throw SchemaError("too many coordinates in --tuples");
          auto idx = models[factor].point_index(label);
          if (!idx) throw SchemaError("unknown point '" + label + "'");
          coords.push_back(*idx);
          ++factor;
        }
        if (coords.size() != models.size())
          throw SchemaError("each tuple coordinate needs one point per factor");
        assignment[var] = coords;
      }
      tuples.push_back(assignment);
    }
  } else {
    // default: every raw product tuple, provided the count stays small
    long raw = 1;
    for (const auto& m : models) raw *= m.size();
    long combos = 1;
    for (size_t i = 0; i < fv.size(); ++i) {
      combos *= raw;
      if (combos > 256)
        throw SchemaError("too many default tuples; pass an explicit --tuples");
    }
    std::vector<long> odo(fv.size(), 0);
    for (;;) {
      std::map<std::string, ProductPoint> assignment;
      for (size_t v = 0; v < fv.size(); ++v) {
        long raw_idx = odo[v];
        ProductPoint coords(models.size());
        for (int i = static_cast<int>(models.size()) - 1; i >= 0; --i) {
          coords[i] = static_cast<int>(raw_idx % models[i].size());
          raw_idx /= models[i].size();
        }
        assignment[fv[v]] = coords;
      }
      tuples.push_back(assignment);
      if (fv.empty()) break;
      int pos = static_cast<int>(fv.size()) - 1;
      while (pos >= 0 && odo[pos] == raw - 1) odo[pos--] = 0;
      if (pos < 0) break;
      ++odo[pos];
    }
  }

  UltrameanOptions opts;
  opts.product_cap = product_cap_from_env(opts.product_cap);
  Rational residual = verify_ultramean_theorem(sig, ws, models, *phi, tuples, opts);
  emit(as_json,
       json{{"formula", pretty(*phi)},
            {"tuples", tuples.size()},
            {"max_residual", to_string(residual)}},
       "max residual " + to_string(residual) + " over " + std::to_string(tuples.size()) +
           " tuples\n");
  return residual == 0 ? kExitOk : kExitSemantic;
}

int run_check_proof(const std::string& path, const std::string& sig_path,
                    const std::string& models_dir, bool as_json) {
  std::string doc = read_file(path);
  Signature sig = resolve_signature(sig_path, doc);

  ProofScript script;
  try {
    script = parse_proof(sig, doc);
  } catch (const DanglingPremiseId& e) {
    emit(as_json, json{{"accepted", false}, {"reason", reason::kDanglingPremise},
                       {"detail", e.what()}},
         std::string("rejected: ") + e.what() + "\n");
    return kExitSemantic;
  } catch (const UnknownAxiomName& e) {
    emit(as_json, json{{"accepted", false}, {"reason", reason::kUnknownAxiom},
                       {"detail", e.what()}},
         std::string("rejected: ") + e.what() + "\n");
    return kExitSemantic;
  }

  auto verdict = check_proof(sig, script);

  json payload{{"accepted", verdict.accepted}};
  json steps = json::array();
  std::string text;
  for (const auto& status : verdict.steps) {
    json step{{"id", status.id}, {"ok", status.ok}};
    if (!status.ok) {
      step["reason"] = status.reason;
      step["detail"] = status.detail;
      text += "step " + std::to_string(status.id) + ": " + status.reason + " (" +
              status.detail + ")\n";
    }
    steps.push_back(step);
  }
  payload["steps"] = steps;
  if (!verdict.accepted) {
    emit(as_json, payload, "rejected\n" + text);
    return kExitSemantic;
  }

  if (!models_dir.empty()) {
    std::vector<FiniteChargedStructure> models;
    std::vector<std::string> names;
    for (const auto& file : sorted_files(models_dir, ".alstr")) {
      std::string mdoc = read_file(file.string());
      models.push_back(parse_structure(resolve_signature("", mdoc), mdoc));
      names.push_back(file.filename().string());
    }
    auto report = soundness_probe(sig, script, models, names);
    json probe = json::array();
    for (const auto& mr : report.models) {
      json entry{{"model", mr.name}, {"satisfies_hypotheses", mr.satisfies_hypotheses}};
      if (mr.satisfies_hypotheses) {
        entry["margin"] = to_string(mr.conclusion_margin);
        entry["violated"] = mr.violated;
        text += mr.name + ": margin " + to_string(mr.conclusion_margin) + "\n";
      } else {
        text += mr.name + ": vacuous (hypotheses fail)\n";
      }
      probe.push_back(entry);
    }
    payload["models"] = probe;
    payload["kernel_bug"] = report.kernel_bug;
    if (report.kernel_bug) {
      emit(as_json, payload, "accepted but UNSOUND on a model (kernel bug)\n" + text);
      return kExitSemantic;
    }
  }

  emit(as_json, payload, "accepted\n" + text);
  return kExitOk;
}

int run_solve_mixture(const std::string& models_dir, const std::string& theory_path,
                      const std::string& sig_path, const std::string& weights_out,
                      bool as_json) {
  std::vector<FiniteChargedStructure> models;
  Signature sig;
  bool first = true;
  for (const auto& file : sorted_files(models_dir, ".alstr")) {
    std::string doc = read_file(file.string());
    if (first) {
      sig = resolve_signature(sig_path, doc);
      first = false;
    }
    models.push_back(parse_structure(sig, doc));
  }
  if (models.empty()) throw IoError("no .alstr files in '" + models_dir + "'");
  Theory theory = parse_theory(sig, read_file(theory_path));

  UltrameanOptions opts;
  opts.product_cap = product_cap_from_env(opts.product_cap);
  auto solution = solve_mixture(sig, models, theory, opts);
  if (!solution) {
    emit(as_json, json{{"feasible", false}, {"note", "family-relative: no mixture of the"
                                                     " given models satisfies the theory"}},
         "infeasible (relative to this model family)\n");
    return kExitSemantic;
  }

  json jweights = json::array();
  std::string text = "weights:";
  for (const auto& w : solution->weights) {
    jweights.push_back(to_string(w));
    text += " " + to_string(w);
  }
  text += "\n";
  emit(as_json, json{{"feasible", true}, {"weights", jweights}}, text);
  if (!weights_out.empty()) write_file(weights_out, weights_to_text(solution->weights));
  return kExitOk;
}

int run_check_fubini(const std::string& path, const std::string& sig_path,
                     const std::string& formula_text, const std::string& vars_spec,
                     std::optional<unsigned long> seed, bool as_json) {
  std::string doc = read_file(path);
  Signature sig = resolve_signature(sig_path, doc);
  auto s = parse_structure(sig, doc);
  auto phi = parse_formula(sig, formula_text);

  auto comma = vars_spec.find(',');
  if (comma == std::string::npos)
    throw SchemaError("--vars must name the two swap variables, e.g. x,y");
  std::string x = vars_spec.substr(0, comma), y = vars_spec.substr(comma + 1);

  std::vector<std::string> params;
  for (const auto& v : free_vars(*phi))
    if (v != x && v != y) params.push_back(v);

  std::vector<Environment> assignments;
  long combos = 1;
  bool exhaustive = true;
  for (size_t i = 0; i < params.size(); ++i) {
    combos *= s.size();
    if (combos > 1000) {
      exhaustive = false;
      break;
    }
  }
  if (exhaustive) {
    std::vector<int> odo(params.size(), 0);
    for (;;) {
      Environment env;
      for (size_t i = 0; i < params.size(); ++i) env[params[i]] = odo[i];
      assignments.push_back(env);
      if (params.empty()) break;
      int pos = static_cast<int>(params.size()) - 1;
      while (pos >= 0 && odo[pos] == s.size() - 1) odo[pos--] = 0;
      if (pos < 0) break;
      ++odo[pos];
    }
  } else {
    if (!seed) throw SchemaError("too many parameter assignments; pass --seed to sample");
    std::mt19937_64 rng(*seed);
    for (int k = 0; k < 1000; ++k) {
      Environment env;
      for (const auto& p : params)
        env[p] = std::uniform_int_distribution<int>(0, s.size() - 1)(rng);
      assignments.push_back(env);
    }
  }

  Rational residual = check_fubini(s, phi, x, y, assignments);
  emit(as_json,
       json{{"formula", pretty(*phi)},
            {"assignments", assignments.size()},
            {"max_residual", to_string(residual)}},
       "max residual " + to_string(residual) + " over " +
           std::to_string(assignments.size()) + " assignments\n");
  return residual == 0 ? kExitOk : kExitSemantic;
}

int run_type_of(const std::string& path, const std::string& sig_path, const std::string& at,
                const std::string& family_path, bool as_json) {
  std::string doc = read_file(path);
  Signature sig = resolve_signature(sig_path, doc);
  auto s = parse_structure(sig, doc);
  auto env = parse_env(s, at);
  auto family = parse_formula_list(sig, read_file(family_path));

  std::vector<std::string> vars;
  std::vector<int> tuple;
  for (const auto& [var, point] : env) {
    vars.push_back(var);
    tuple.push_back(point);
  }
  auto p = realized_type(s, vars, tuple, family);

  json table = json::array();
  std::string text;
  for (size_t i = 0; i < p.family.size(); ++i) {
    table.push_back({{"formula", pretty(*p.family[i])}, {"value", to_string(p.values[i])}});
    text += pretty(*p.family[i]) + " = " + to_string(p.values[i]) + "\n";
  }
  emit(as_json, json{{"at", at}, {"table", table}}, text);
  return kExitOk;
}

int run_elem_check(const std::string& left_path, const std::string& right_path,
                   const std::string& sig_path, const std::string& map_spec, int depth,
                   bool as_json) {
  std::string left_doc = read_file(left_path);
  Signature sig = resolve_signature(sig_path, left_doc);
  auto left = parse_structure(sig, left_doc);
  auto right = parse_structure(sig, read_file(right_path));

  std::vector<int> point_map(left.size());
  if (map_spec.empty()) {
    for (int i = 0; i < left.size(); ++i) {
      auto idx = right.point_index(left.points[i]);
      if (!idx)
        throw SchemaError("point '" + left.points[i] +
                          "' has no namesake on the right; pass --map");
      point_map[i] = *idx;
    }
  } else {
    std::istringstream in(map_spec);
    std::string item;
    std::map<int, int> entries;
    while (std::getline(in, item, ',')) {
      auto colon = item.find(':');
      if (colon == std::string::npos)
        throw SchemaError("--map entries look like left:right, got '" + item + "'");
      auto from = left.point_index(item.substr(0, colon));
      auto to = right.point_index(item.substr(colon + 1));
      if (!from || !to) throw SchemaError("unknown point in --map entry '" + item + "'");
      entries[*from] = *to;
    }
    for (int i = 0; i < left.size(); ++i) {
      auto it = entries.find(i);
      if (it == entries.end())
        throw SchemaError("--map misses point '" + left.points[i] + "'");
      point_map[i] = it->second;
    }
  }

  ElemCheckOptions opts;
  opts.depth = depth;
  auto report = bounded_elementary_check(left, right, point_map, opts);

  json mismatches = json::array();
  std::string text;
  for (const auto& m : report.mismatches) {
    json entry{{"formula", pretty(*m.formula)},
               {"left", to_string(m.left)},
               {"right", to_string(m.right)}};
    json tuple = json::array();
    for (int p : m.tuple) tuple.push_back(left.points[p]);
    entry["tuple"] = tuple;
    mismatches.push_back(entry);
    text += pretty(*m.formula) + ": " + to_string(m.left) + " vs " + to_string(m.right) + "\n";
  }
  emit(as_json,
       json{{"elementary", report.ok()},
            {"depth", depth},
            {"formulas", report.formulas},
            {"evaluations", report.evaluations},
            {"mismatches", mismatches}},
       report.ok() ? "no differences up to depth " + std::to_string(depth) + "\n"
                   : "differences found\n" + text);
  return report.ok() ? kExitOk : kExitSemantic;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"affine integration logic toolkit"};
  app.require_subcommand(1);

  std::string sig_path, structure_path, formula_text, condition_text, at_spec;
  std::string weights_path, out_path, models_dir, theory_path, weights_out;
  std::string tuples_spec, vars_spec, family_path, left_path, right_path, map_spec;
  std::vector<std::string> structure_paths;
  std::string proof_path;
  bool as_json = false, mass_le_one = false, use_float = false;
  int depth = 2;
  std::optional<unsigned long> seed;

  app.add_flag("--json", as_json, "emit JSON instead of text");

  auto* validate = app.add_subcommand("validate", "check a structure against the axioms");
  validate->add_option("structure", structure_path)->required();
  validate->add_option("--sig", sig_path);
  validate->add_flag("--mass-le-one", mass_le_one, "allow total charge below 1");

  auto* eval = app.add_subcommand("eval", "evaluate a formula on a structure");
  eval->add_option("--structure", structure_path)->required();
  eval->add_option("--formula", formula_text)->required();
  eval->add_option("--at", at_spec, "assignment, e.g. x=0,y=1");
  eval->add_option("--sig", sig_path);
  eval->add_flag("--float", use_float, "floating point fast path");

  auto* check = app.add_subcommand("check", "check a condition on a structure");
  check->add_option("--structure", structure_path)->required();
  check->add_option("--condition", condition_text)->required();
  check->add_option("--sig", sig_path);

  auto* ultramean = app.add_subcommand("ultramean", "weighted mean of structures");
  ultramean->add_option("structures", structure_paths)->required();
  ultramean->add_option("--weights", weights_path)->required();
  ultramean->add_option("--out", out_path);
  ultramean->add_option("--sig", sig_path);

  auto* powermean = app.add_subcommand("powermean", "weighted mean of one structure");
  powermean->add_option("structure", structure_path)->required();
  powermean->add_option("--weights", weights_path)->required();
  powermean->add_option("--out", out_path);
  powermean->add_option("--sig", sig_path);

  auto* verify_los = app.add_subcommand("verify-los", "residual of the mean value identity");
  verify_los->add_option("structures", structure_paths)->required();
  verify_los->add_option("--weights", weights_path)->required();
  verify_los->add_option("--formula", formula_text)->required();
  verify_los->add_option("--tuples", tuples_spec, "x=p1:p2 y=q1:q2;... per choice");
  verify_los->add_option("--sig", sig_path);

  auto* check_proof_cmd = app.add_subcommand("check-proof", "verify a derivation script");
  check_proof_cmd->add_option("proof", proof_path)->required();
  check_proof_cmd->add_option("--models", models_dir, "probe soundness on these structures");
  check_proof_cmd->add_option("--sig", sig_path);

  auto* solve = app.add_subcommand("solve-mixture", "find weights satisfying a theory");
  solve->add_option("--models", models_dir)->required();
  solve->add_option("--theory", theory_path)->required();
  solve->add_option("--weights-out", weights_out);
  solve->add_option("--sig", sig_path);

  auto* fubini = app.add_subcommand("check-fubini", "iterated integral residual");
  fubini->add_option("--structure", structure_path)->required();
  fubini->add_option("--formula", formula_text)->required();
  fubini->add_option("--vars", vars_spec)->required();
  fubini->add_option("--seed", seed, "sample seed when assignments overflow");
  fubini->add_option("--sig", sig_path);

  auto* type_of = app.add_subcommand("type-of", "realized type over a formula family");
  type_of->add_option("--structure", structure_path)->required();
  type_of->add_option("--at", at_spec)->required();
  type_of->add_option("--family", family_path)->required();
  type_of->add_option("--sig", sig_path);

  auto* elem = app.add_subcommand("elem-check", "depth-bounded elementary equivalence");
  elem->add_option("--left", left_path)->required();
  elem->add_option("--right", right_path)->required();
  elem->add_option("--map", map_spec, "point map left:right,...");
  elem->add_option("--depth", depth);
  elem->add_option("--sig", sig_path);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return run_validate(structure_path, sig_path, mass_le_one, as_json);
    if (*eval)
      return run_eval(structure_path, sig_path, formula_text, at_spec, use_float, as_json);
    if (*check) return run_check(structure_path, sig_path, condition_text, as_json);
    if (*ultramean) return run_mean(structure_paths, weights_path, sig_path, out_path, false);
    if (*powermean) return run_mean({structure_path}, weights_path, sig_path, out_path, true);
    if (*verify_los)
      return run_verify_los(structure_paths, weights_path, sig_path, formula_text,
                            tuples_spec, as_json);
    if (*check_proof_cmd) return run_check_proof(proof_path, sig_path, models_dir, as_json);
    if (*solve)
      return run_solve_mixture(models_dir, theory_path, sig_path, weights_out, as_json);
    if (*fubini)
      return run_check_fubini(structure_path, sig_path, formula_text, vars_spec, seed,
                              as_json);
    if (*type_of) return run_type_of(structure_path, sig_path, at_spec, family_path, as_json);
    if (*elem)
      return run_elem_check(left_path, right_path, sig_path, map_spec, depth, as_json);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
