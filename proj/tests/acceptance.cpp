// Acceptance suite: one pass/fail line per criterion, all tolerances pinned.

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "alint/analysis.hpp"
#include "alint/enumerate.hpp"
#include "alint/parser.hpp"
#include "alint/proof.hpp"
#include "alint/ultramean.hpp"
#include "support.hpp"

using namespace alint;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw Error("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string fixture(const std::string& rel) {
  return std::string(AL_FIXTURES_DIR) + "/" + rel;
}

// criterion 1: the two point structure evaluates the mean distance to 1/2
// at both points in under a millisecond
bool criterion1(std::string& detail) {
  auto m = testkit::two_point();
  Signature empty;
  auto phi = parse_formula(empty, "int y. d(x,y)");

  bool exact = eval_formula(m, *phi, {{"x", 0}}) == rat(1, 2) &&
               eval_formula(m, *phi, {{"x", 1}}) == rat(1, 2);

  double best = 1e9;
  for (int round = 0; round < 3; ++round) {
    auto start = Clock::now();
    volatile bool sink = eval_formula(m, *phi, {{"x", 0}}) == rat(1, 2) &&
                         eval_formula(m, *phi, {{"x", 1}}) == rat(1, 2);
    (void)sink;
    best = std::min(best, seconds_since(start));
  }
  detail = "value 1/2 at both points, " + std::to_string(best * 1e6) + " us";
  return exact && best < 1e-3;
}

// criterion 2: a 100 point grid tracks x^2 - x + 1/2 within 1/100 at 11
// samples, and a 1000 point grid shrinks the worst error by at least 5x
bool criterion2(std::string& detail) {
  Signature empty;
  auto phi = parse_formula(empty, "int y. d(x,y)");

  auto max_error = [&](int n, bool* within) {
    auto grid = testkit::unit_grid(n);
    Rational worst = 0;
    bool ok = true;
    for (int j = 0; j <= 10; ++j) {
      int idx = static_cast<int>(std::lround(static_cast<double>(n - 1) * j / 10.0));
      Rational x = rat(idx, n - 1);
      Rational value = eval_formula(grid, *phi, {{"x", idx}});
      Rational err = rat_abs(value - (x * x - x + rat(1, 2)));
      if (err > rat(1, 100)) ok = false;
      if (err > worst) worst = err;
    }
    if (within) *within = ok;
    return worst;
  };

  bool within100 = false;
  Rational e100 = max_error(100, &within100);
  Rational e1000 = max_error(1000, nullptr);
  bool shrinks = e1000 > 0 ? e100 / e1000 >= 5 : true;
  detail = "max error " + to_string(e100) + " (n=100) vs " + to_string(e1000) +
           " (n=1000)";
  return within100 && shrinks;
}

// criterion 3: the half-half powermean has four atoms of charge 1/4, mean
// distance 1/2 everywhere, and mean closeness 1/2 at every point
bool criterion3(std::string& detail) {
  Signature empty;
  auto m = testkit::two_point();
  auto mean = build_powermean(empty, {{rat(1, 2), rat(1, 2)}}, m);

  if (mean.structure.size() != 4) {
    detail = "expected 4 atoms, got " + std::to_string(mean.structure.size());
    return false;
  }
  for (const auto& w : mean.structure.charge)
    if (w != rat(1, 4)) {
      detail = "atom of charge " + to_string(w);
      return false;
    }

  auto mean_dist = parse_formula(empty, "int y. d(x,y)");
  auto closeness = parse_formula(empty, "int x. 1 + -1 * d(x,a)");
  for (int p = 0; p < 4; ++p) {
    if (eval_formula(mean.structure, *mean_dist, {{"x", p}}) != rat(1, 2)) {
      detail = "mean distance differs from 1/2";
      return false;
    }
    if (eval_formula(mean.structure, *closeness, {{"a", p}}) != rat(1, 2)) {
      detail = "mean closeness differs from 1/2";
      return false;
    }
  }
  detail = "4 atoms of charge 1/4; both integrals equal 1/2 at every point"
           " (atom charge 1/4 recorded alongside integral value 1/2)";
  return true;
}

// criterion 4: the mean-value identity sweep; exact zero residual throughout
bool criterion4(std::string& detail) {
  auto start = Clock::now();
  Signature empty;
  const std::vector<Rational> scalars{-1, 0, rat(1, 2), 1};
  const std::vector<std::string> vars{"x", "y"};

  // catalog of small structures
  FiniteChargedStructure m1;
  m1.points = {"p"};
  m1.metric = {{0}};
  m1.charge = {1};
  auto m2u = testkit::two_point();
  FiniteChargedStructure m2b;
  m2b.points = {"0", "1"};
  m2b.metric = {{0, rat(1, 2)}, {rat(1, 2), 0}};
  m2b.charge = {rat(1, 4), rat(3, 4)};
  FiniteChargedStructure m3;
  m3.points = {"0", "1", "2"};
  m3.metric = {{0, rat(1, 2), 1}, {rat(1, 2), 0, rat(1, 2)}, {1, rat(1, 2), 0}};
  m3.charge = {rat(1, 2), rat(1, 4), rat(1, 4)};

  long cases = 0;
  auto sweep_instance = [&](const std::vector<FiniteChargedStructure>& models,
                            const std::vector<Rational>& weights,
                            const std::vector<FormulaPtr>& formulas, long tuple_cap,
                            std::string& why) {
    UltrachargeSpace ws{weights};
    auto mean = build_ultramean(empty, ws, models);
    for (const auto& phi : formulas) {
      auto free_set = free_vars(*phi);
      std::vector<std::string> fv(free_set.begin(), free_set.end());
      long combos = 1;
      for (size_t i = 0; i < fv.size(); ++i) combos *= mean.raw_size;
      long take = std::min(combos, tuple_cap);
      std::vector<std::map<std::string, ProductPoint>> tuples;
      for (long t = 0; t < take; ++t) {
        std::map<std::string, ProductPoint> choice;
        long code = t;
        for (const auto& v : fv) {
          long raw = code % mean.raw_size;
          code /= mean.raw_size;
          ProductPoint coords(models.size());
          for (int i = static_cast<int>(models.size()) - 1; i >= 0; --i) {
            coords[i] = static_cast<int>(raw % models[i].size());
            raw /= models[i].size();
          }
          choice[v] = coords;
        }
        tuples.push_back(std::move(choice));
      }
      if (tuples.empty()) tuples.push_back({});
      Rational residual = ultramean_residual(mean, ws, models, *phi, tuples);
      cases += static_cast<long>(tuples.size());
      if (residual != 0) {
        why = "residual " + to_string(residual) + " on " + pretty(*phi);
        return false;
      }
    }
    return true;
  };

  // part A: every formula of depth <= 3 on representative families
  auto formulas = enumerate_formulas(empty, vars, 3, scalars);
  struct Instance {
    std::vector<FiniteChargedStructure> models;
    std::vector<Rational> weights;
  };
  const Rational h = rat(1, 2), q = rat(1, 4), tq = rat(3, 4);
  std::vector<Instance> instances = {
      {{m2u}, {1}},
      {{m2u, m2u}, {h, h}},
      {{m2u, m2b}, {tq, q}},
      {{m2u, m3}, {h, h}},
      {{m2u, m2u, m2u}, {h, q, q}},
      {{m2u, m2b, m2u}, {0, h, h}},
      {{m3, m3}, {q, tq}},
      {{m1, m2u, m3}, {q, q, h}},
  };
  std::string why;
  for (const auto& inst : instances)
    if (!sweep_instance(inst.models, inst.weights, formulas, 64, why)) {
      detail = why;
      return false;
    }
  long part_a_cases = cases;

  // part B: every family of <= 3 catalog factors with every weight vector
  // from the scalar grid, on a fixed probe set covering all constructors
  std::vector<FormulaPtr> probes = {
      parse_formula(empty, "1"),
      parse_formula(empty, "d(x,y)"),
      parse_formula(empty, "d(x,x)"),
      parse_formula(empty, "1/2 * d(x,y)"),
      parse_formula(empty, "-1 * d(x,y) + 1"),
      parse_formula(empty, "inf y. d(x,y)"),
      parse_formula(empty, "sup y. d(x,y)"),
      parse_formula(empty, "int y. d(x,y)"),
      parse_formula(empty, "int x. int y. d(x,y)"),
      parse_formula(empty, "sup x. int y. d(x,y)"),
      parse_formula(empty, "int y. 1/2 * d(x,y) + 1/2 * 1"),
      parse_formula(empty, "inf x. sup y. d(x,y)"),
  };
  const std::vector<FiniteChargedStructure> catalog{m1, m2u, m2b, m3};
  const std::vector<Rational> weight_grid{0, q, h, tq, 1};

  std::vector<std::vector<Rational>> weight_vectors[4];
  for (int m = 1; m <= 3; ++m) {
    std::vector<Rational> current(m);
    std::function<void(int, Rational)> rec = [&](int pos, Rational sum) {
      if (pos == m) {
        if (sum == 1) weight_vectors[m].push_back(current);
        return;
      }
      for (const auto& w : weight_grid) {
        if (sum + w > 1) continue;
        current[pos] = w;
        rec(pos + 1, sum + w);
      }
    };
    rec(0, 0);
  }

  long instances_b = 0;
  for (int m = 1; m <= 3; ++m) {
    std::vector<int> pick(m, 0);
    for (;;) {
      std::vector<FiniteChargedStructure> models;
      for (int i : pick) models.push_back(catalog[i]);
      for (const auto& weights : weight_vectors[m]) {
        ++instances_b;
        if (!sweep_instance(models, weights, probes, 2, why)) {
          detail = why;
          return false;
        }
      }
      int pos = m - 1;
      while (pos >= 0 && pick[pos] == static_cast<int>(catalog.size()) - 1) pick[pos--] = 0;
      if (pos < 0) break;
      ++pick[pos];
    }
  }

  double elapsed = seconds_since(start);
  detail = std::to_string(instances.size()) + " exhaustive-formula instances (" +
           std::to_string(formulas.size()) + " formulas, " + std::to_string(part_a_cases) +
           " cases) + " + std::to_string(instances_b) + " family instances (" +
           std::to_string(cases - part_a_cases) + " cases), residual 0 throughout, " +
           std::to_string(elapsed) + " s";
  return elapsed < 300.0;
}

// criterion 5: shipped kernel fixtures accept; the mutants reject with the
// named reason
bool criterion5(std::string& detail) {
  const std::vector<std::string> good = {
      "proofs/a15.alpf",       "proofs/bound_dist.alpf", "proofs/bound_one.alpf",
      "proofs/bound_int_dist.alpf", "proofs/easy_iii.alpf",   "proofs/triangle_chain.alpf"};
  for (const auto& rel : good) {
    std::string text = slurp(fixture(rel));
    auto sig = embedded_signature(text).value_or(Signature{});
    if (!check_proof(sig, parse_proof(sig, text)).accepted) {
      detail = rel + " did not accept";
      return false;
    }
  }

  struct Mutant {
    std::string file;
    std::string reason;
  };
  const std::vector<Mutant> mutants = {
      {"m01_r4_free_var.alpf", reason::kFreeVariableSideCondition},
      {"m02_r5_free_var.alpf", reason::kFreeVariableSideCondition},
      {"m03_a10_capture.alpf", reason::kNotSubstitutable},
      {"m04_a13_negative.alpf", reason::kScalarSignNegative},
      {"m05_r3_negative.alpf", reason::kScalarSignNegative},
      {"m06_dangling_premise.alpf", reason::kDanglingPremise},
      {"m07_hyp_missing.alpf", reason::kHypNotFound},
      {"m08_a15_wrong_value.alpf", reason::kAxiomMismatch},
      {"m09_r1_mismatch.alpf", reason::kPremiseMismatch},
      {"m10_a11_free_var.alpf", reason::kFreeVariableSideCondition},
      {"m11_a18_free_var.alpf", reason::kFreeVariableSideCondition},
      {"m12_unknown_axiom.alpf", reason::kUnknownAxiom},
  };
  for (const auto& mutant : mutants) {
    std::string text = slurp(fixture("proofs/mutants/" + mutant.file));
    auto sig = embedded_signature(text).value_or(Signature{});
    std::string got;
    try {
      auto verdict = check_proof(sig, parse_proof(sig, text));
      if (verdict.accepted) {
        detail = mutant.file + " was accepted";
        return false;
      }
      got = verdict.first_failure ? verdict.first_failure->reason : "";
    } catch (const DanglingPremiseId&) {
      got = reason::kDanglingPremise;
    } catch (const UnknownAxiomName&) {
      got = reason::kUnknownAxiom;
    }
    if (got != mutant.reason) {
      detail = mutant.file + " rejected for " + got + ", expected " + mutant.reason;
      return false;
    }
  }
  detail = std::to_string(good.size()) + " fixtures accepted, " +
           std::to_string(mutants.size()) + " mutants rejected with the named reason";
  return true;
}

// criterion 6: 1000 generated accepted scripts probed on 20 random
// structures with zero margin violations
bool criterion6(std::string& detail) {
  auto start = Clock::now();
  testkit::Rng rng(20260809);
  auto [sig, fleet] = testkit::random_probe_fleet(rng, 20, 4);
  for (const auto& s : fleet)
    if (!validate_structure(s).empty()) {
      detail = "fleet structure failed validation";
      return false;
    }

  testkit::ScriptGen gen(rng, sig);
  long vacuous = 0, checked = 0;
  for (int i = 0; i < 1000; ++i) {
    auto script = gen.script(rng.uniform(3, 12), rng.chance(0.2));
    auto verdict = check_proof(sig, script);
    if (!verdict.accepted) {
      detail = "generated script " + std::to_string(i) + " rejected (" +
               (verdict.first_failure ? verdict.first_failure->reason : "?") + ")";
      return false;
    }
    auto report = soundness_probe(sig, script, fleet);
    if (report.kernel_bug) {
      detail = "margin violation on script " + std::to_string(i);
      return false;
    }
    for (const auto& mr : report.models) {
      ++checked;
      if (!mr.satisfies_hypotheses) ++vacuous;
    }
  }
  double elapsed = seconds_since(start);
  detail = "1000 scripts x 20 structures, zero violations (" + std::to_string(checked) +
           " model checks, " + std::to_string(vacuous) + " vacuous), " +
           std::to_string(elapsed) + " s";
  return elapsed < 600.0;
}

// criterion 7: mixture round trips from hidden weights, plus the canonical
// infeasible theory
bool criterion7(std::string& detail) {
  testkit::Rng rng(777001);
  Signature empty;
  const std::vector<std::string> vars{"x", "y"};

  for (int iter = 0; iter < 100; ++iter) {
    int m = rng.uniform(1, 4);
    std::vector<FiniteChargedStructure> models;
    for (int i = 0; i < m; ++i) models.push_back(testkit::random_structure(rng, 1, 4));
    auto hidden = testkit::random_charge(rng, m);

    Theory theory;
    int sentences = rng.uniform(1, 3);
    for (int k = 0; k < sentences; ++k) {
      auto body = testkit::random_formula(rng, empty, vars, 2);
      auto sigma = Formula::integral("x", Formula::integral("y", body));
      Rational target = 0;
      for (int i = 0; i < m; ++i) target += hidden[i] * eval_formula(models[i], *sigma, {});
      theory.push_back({sigma, Formula::numeral(target)});
      theory.push_back({Formula::numeral(target), sigma});
    }

    auto solution = solve_mixture(empty, models, theory);
    if (!solution) {
      detail = "instance " + std::to_string(iter) + " reported infeasible";
      return false;
    }
    for (const auto& cond : theory) {
      auto check = check_condition(solution->mixture.structure, cond);
      if (!check.holds) {
        detail = "mixture violates a theory condition";
        return false;
      }
    }
  }

  auto m = testkit::two_point();
  if (solve_mixture(empty, {m}, parse_condition(empty, "1 <= 0*1")).has_value()) {
    detail = "the 1 <= 0 theory was reported feasible";
    return false;
  }
  detail = "100 instances solved with exact margins >= 0; 1 <= 0 is infeasible";
  return true;
}

// criterion 8: 500 iterated-integral swaps with exactly zero residual
bool criterion8(std::string& detail) {
  testkit::Rng rng(88008);
  Signature empty;
  for (int iter = 0; iter < 500; ++iter) {
    auto s = testkit::random_structure(rng, 1, 4);
    auto body = testkit::random_formula(rng, empty, {"x", "y", "z"}, 3);
    Environment env;
    for (const auto& v : free_vars(*body))
      if (v != "x" && v != "y") env[v] = rng.uniform(0, s.size() - 1);
    if (check_fubini(s, body, "x", "y", {env}) != 0) {
      detail = "nonzero residual at iteration " + std::to_string(iter);
      return false;
    }
  }
  detail = "500 seeded triples, residual exactly 0";
  return true;
}

// criterion 9: bound and Lipschitz invariants over 10^4 seeded cases
bool criterion9(std::string& detail) {
  testkit::Rng rng(909090);
  Signature empty;
  const std::vector<std::string> vars{"x", "y"};
  for (int iter = 0; iter < 10000; ++iter) {
    auto s = testkit::random_structure(rng, 1, 4);
    auto phi = testkit::random_formula(rng, empty, vars, 3);
    auto lb = formula_lipschitz_bound(empty, *phi);

    Environment a, b;
    Rational dist = 0;
    for (const auto& v : free_vars(*phi)) {
      a[v] = rng.uniform(0, s.size() - 1);
      b[v] = rng.uniform(0, s.size() - 1);
      dist += s.metric[a[v]][b[v]];
    }
    Rational va = eval_formula(s, *phi, a);
    if (rat_abs(va) > lb.bound) {
      detail = "bound violation at iteration " + std::to_string(iter);
      return false;
    }
    if (rat_abs(va - eval_formula(s, *phi, b)) > lb.lipschitz * dist) {
      detail = "Lipschitz violation at iteration " + std::to_string(iter);
      return false;
    }
  }
  detail = "10000 seeded cases, zero violations";
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<bool(std::string&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "two point structure mean distance", criterion1},
      {2, "unit interval discretization", criterion2},
      {3, "half-half powermean atoms and integrals", criterion3},
      {4, "mean-value identity sweep", criterion4},
      {5, "proof kernel fixtures and mutants", criterion5},
      {6, "soundness probe", criterion6},
      {7, "mixture solver round trip", criterion7},
      {8, "finite iterated-integral swap", criterion8},
      {9, "bound and Lipschitz invariants", criterion9},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion.id << ": "
              << criterion.name << " - " << detail << "\n";
    std::cout.flush();
    if (!ok) ++failures;
  }
  return failures;
}
