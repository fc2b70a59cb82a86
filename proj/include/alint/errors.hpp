#pragma once

#include <stdexcept>
#include <string>

namespace alint {

struct SourceSpan {
  std::string file = "<input>";
  int line = 1;
  int column = 1;

  std::string str() const {
    return file + ":" + std::to_string(line) + ":" + std::to_string(column);
  }
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// syntax / well-formedness
struct UnknownSymbol : Error { using Error::Error; };
struct ArityMismatch : Error { using Error::Error; };
struct NotSubstitutable : Error { using Error::Error; };
struct UnboundVariable : Error { using Error::Error; };

// parsing and serialization
struct SyntaxError : Error {
  SyntaxError(const SourceSpan& s, const std::string& msg)
      : Error(s.str() + ": " + msg), span(s) {}
  SourceSpan span;
};
struct SchemaError : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct DanglingPremiseId : Error { using Error::Error; };
struct UnknownAxiomName : Error { using Error::Error; };

// proof kernel
struct UnknownAxiom : Error { using Error::Error; };
struct MalformedBindings : Error { using Error::Error; };
struct RejectedScript : Error { using Error::Error; };

// constructions
struct SizeMismatch : Error { using Error::Error; };
struct ProductTooLarge : Error { using Error::Error; };
struct IllDefinedQuotient : Error { using Error::Error; };

// analysis
struct OpenCondition : Error { using Error::Error; };
struct FamilyMiss : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };

}  // namespace alint
