#include "alint/linear.hpp"

#include <algorithm>

namespace alint {

void LinearSystem::add_le(std::vector<Rational> coeffs, Rational rhs) {
  rows.push_back({std::move(coeffs), Rel::Le, std::move(rhs)});
}

void LinearSystem::add_eq(std::vector<Rational> coeffs, Rational rhs) {
  rows.push_back({std::move(coeffs), Rel::Eq, std::move(rhs)});
}

namespace {

struct IneqRow {
  std::vector<Rational> a;
  Rational b;
};

}  // namespace

std::optional<std::vector<Rational>> fourier_motzkin_feasible(const LinearSystem& system) {
  const int n = system.vars;
  std::vector<IneqRow> rows;
  for (const auto& row : system.rows) {
    rows.push_back({row.coeffs, row.rhs});
    if (row.rel == LinearSystem::Rel::Eq) {
      std::vector<Rational> neg(n);
      for (int j = 0; j < n; ++j) neg[j] = -row.coeffs[j];
      rows.push_back({std::move(neg), -row.rhs});
    }
  }

  // saved[j] holds the rows mentioning x_j at the moment of its elimination
  std::vector<std::vector<IneqRow>> saved(n);
  for (int j = n - 1; j >= 0; --j) {
    std::vector<IneqRow> keep, pos, neg;
    for (auto& row : rows) {
      if (row.a[j] > 0)
        pos.push_back(row);
      else if (row.a[j] < 0)
        neg.push_back(row);
      else
        keep.push_back(row);
    }
    saved[j].insert(saved[j].end(), pos.begin(), pos.end());
    saved[j].insert(saved[j].end(), neg.begin(), neg.end());

    for (const auto& p : pos)
      for (const auto& q : neg) {
        IneqRow combined;
        combined.a.assign(n, 0);
        Rational cp = -q.a[j], cq = p.a[j];  // both positive
        for (int k = 0; k < n; ++k) combined.a[k] = cp * p.a[k] + cq * q.a[k];
        combined.b = cp * p.b + cq * q.b;
        keep.push_back(std::move(combined));
      }
    rows = std::move(keep);
  }

  for (const auto& row : rows)
    if (row.b < 0) return std::nullopt;

  // back-substitute in reverse elimination order: saved[j] mentions only
  // x_0..x_j, and x_0..x_{j-1} are already assigned
  std::vector<Rational> x(n, 0);
  for (int j = 0; j < n; ++j) {
    bool has_lo = false, has_hi = false;
    Rational lo = 0, hi = 0;
    for (const auto& row : saved[j]) {
      Rational rest = row.b;
      for (int k = 0; k < j; ++k) rest -= row.a[k] * x[k];
      Rational bound = rest / row.a[j];
      if (row.a[j] > 0) {
        if (!has_hi || bound < hi) hi = bound;
        has_hi = true;
      } else {
        if (!has_lo || bound > lo) lo = bound;
        has_lo = true;
      }
    }
    if (has_lo && has_hi && lo > hi) return std::nullopt;  // cannot happen after elimination
    if (has_lo && has_hi)
      x[j] = (lo + hi) / 2;
    else if (has_lo)
      x[j] = lo;
    else if (has_hi)
      x[j] = hi;
  }
  return x;
}

std::optional<std::vector<Rational>> simplex_phase1_feasible(const LinearSystem& system) {
  const int n = system.vars;
  const int m = static_cast<int>(system.rows.size());

  // normalize rhs >= 0; count slack and artificial columns
  struct Norm {
    std::vector<Rational> a;
    Rational b;
    int kind;  // 0: <=, 1: >=, 2: ==
  };
  std::vector<Norm> rows;
  for (const auto& row : system.rows) {
    Norm r{row.coeffs, row.rhs, row.rel == LinearSystem::Rel::Eq ? 2 : 0};
    if (r.b < 0) {
      for (auto& c : r.a) c = -c;
      r.b = -r.b;
      if (r.kind == 0) r.kind = 1;
    }
    rows.push_back(std::move(r));
  }

  int slacks = 0, artificials = 0;
  for (const auto& r : rows) {
    if (r.kind != 2) ++slacks;
    if (r.kind != 0) ++artificials;
  }
  const int total = n + slacks + artificials;

  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(total + 1, 0));
  std::vector<int> basis(m, -1);
  std::vector<bool> artificial(total, false);

  int slack_col = n, art_col = n + slacks;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = rows[i].a[j];
    t[i][total] = rows[i].b;
    if (rows[i].kind == 0) {
      t[i][slack_col] = 1;
      basis[i] = slack_col++;
    } else if (rows[i].kind == 1) {
      t[i][slack_col] = -1;
      ++slack_col;
      t[i][art_col] = 1;
      artificial[art_col] = true;
      basis[i] = art_col++;
    } else {
      t[i][art_col] = 1;
      artificial[art_col] = true;
      basis[i] = art_col++;
    }
  }

  auto pivot = [&](int row, int col) {
    Rational inv = t[row][col];
    for (int j = 0; j <= total; ++j) t[row][j] /= inv;
    for (int i = 0; i < m; ++i) {
      if (i == row || t[i][col] == 0) continue;
      Rational factor = t[i][col];
      for (int j = 0; j <= total; ++j) t[i][j] -= factor * t[row][j];
    }
    basis[row] = col;
  };

  // minimize the sum of artificial variables; Bland's rule for termination
  for (;;) {
    int entering = -1;
    for (int j = 0; j < total && entering == -1; ++j) {
      Rational reduced = artificial[j] ? Rational(1) : Rational(0);
      for (int i = 0; i < m; ++i)
        if (artificial[basis[i]]) reduced -= t[i][j];
      if (reduced < 0) entering = j;
    }
    if (entering == -1) break;

    int leaving = -1;
    Rational best_ratio = 0;
    for (int i = 0; i < m; ++i) {
      if (t[i][entering] <= 0) continue;
      Rational ratio = t[i][total] / t[i][entering];
      if (leaving == -1 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leaving])) {
        leaving = i;
        best_ratio = ratio;
      }
    }
    if (leaving == -1) return std::nullopt;  // unbounded; cannot happen in phase 1
    pivot(leaving, entering);
  }

  Rational objective = 0;
  for (int i = 0; i < m; ++i)
    if (artificial[basis[i]]) objective += t[i][total];
  if (objective != 0) return std::nullopt;

  std::vector<Rational> x(n, 0);
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = t[i][total];
  return x;
}

}  // namespace alint
