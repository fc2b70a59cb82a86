#pragma once

#include <map>

#include "alint/semantics.hpp"

namespace alint {

/// Finite index set with nonnegative weights summing to 1; integration over
/// the index set is the weighted sum.
struct UltrachargeSpace {
  std::vector<Rational> weights;

  int size() const { return static_cast<int>(weights.size()); }
};

/// Throws SchemaError unless weights are nonnegative and sum to 1.
void validate_ultracharge(const UltrachargeSpace& ws);

inline constexpr long kDefaultProductCap = 1'000'000;

struct UltrameanOptions {
  long product_cap = kDefaultProductCap;
};

/// One point of the raw product: a coordinate per factor.
using ProductPoint = std::vector<int>;

struct UltrameanResult {
  FiniteChargedStructure structure;  // quotiented, validated
  std::vector<int> factor_sizes;
  std::vector<int> raw_to_class;  // raw product index -> point of `structure`
  long raw_size = 0;

  long raw_index(const ProductPoint& coords) const;
  int class_of(const ProductPoint& coords) const;
};

/// Carrier = product of the carriers modulo the weighted pseudometric;
/// relations are weight-averaged, functions act coordinatewise, the charge
/// is the pushforward of the product charge along the quotient map.
UltrameanResult build_ultramean(const Signature& sig, const UltrachargeSpace& ws,
                                const std::vector<FiniteChargedStructure>& models,
                                UltrameanOptions opts = {});

UltrameanResult build_powermean(const Signature& sig, const UltrachargeSpace& ws,
                                const FiniteChargedStructure& model,
                                UltrameanOptions opts = {});

/// Max over the tuple choices of |phi^N([a]) - sum_i w_i phi^{M_i}(a_i)|.
/// Each choice assigns a raw product point to every free variable of phi.
/// Exact arithmetic: the contract is 0.
Rational verify_ultramean_theorem(const Signature& sig, const UltrachargeSpace& ws,
                                  const std::vector<FiniteChargedStructure>& models,
                                  const Formula& phi,
                                  const std::vector<std::map<std::string, ProductPoint>>& tuples,
                                  UltrameanOptions opts = {});

/// Same residual against an already-built ultramean of the same inputs.
Rational ultramean_residual(const UltrameanResult& mean, const UltrachargeSpace& ws,
                            const std::vector<FiniteChargedStructure>& models,
                            const Formula& phi,
                            const std::vector<std::map<std::string, ProductPoint>>& tuples);

struct DiagonalReport {
  std::vector<int> map;  // point of M -> point of the powermean
  long checked = 0;
  struct Mismatch {
    FormulaPtr formula;
    std::vector<int> tuple;
    Rational left, right;
  };
  std::vector<Mismatch> mismatches;

  bool ok() const { return mismatches.empty(); }
};

/// a -> [(a,...,a)]; verifies phi^M(tuple) == phi^{M^w}(diag tuple) for every
/// formula in the family over all argument tuples of M.
DiagonalReport diagonal_embedding(const Signature& sig, const UltrachargeSpace& ws,
                                  const FiniteChargedStructure& model,
                                  const std::vector<FormulaPtr>& family,
                                  UltrameanOptions opts = {});

}  // namespace alint
