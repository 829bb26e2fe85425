// KB-level rewrites that run before sort inference: predicate-variable
// instantiation, exclusion of unsupported number types, and splitting of
// quantities used in arithmetic into number/unit pairs.

#ifndef KIF2TFF_PREPROCESS_HPP
#define KIF2TFF_PREPROCESS_HPP

#include <set>
#include <string>
#include <vector>

#include "kif2tff/diagnostics.hpp"
#include "kif2tff/kb.hpp"

namespace kif2tff {

struct ExclusionPolicy {
  std::set<std::string> excluded_types = {"IrrationalNumber", "BinaryNumber", "ImaginaryNumber",
                                          "ComplexNumber"};
};

bool contains_row_variable(const Formula& f);

// One copy per relation instance of the class constraining the predicate
// variable; formulas without predicate variables pass through unchanged.
// A predicate variable without an instance constraint drops the formula.
std::vector<SourcedFormula> instantiate_predicate_variables(const KnowledgeBase& kb,
                                                            const SourcedFormula& f,
                                                            DiagnosticSink* diags = nullptr);

struct ExclusionResult {
  std::vector<SourcedFormula> kept;
  std::vector<SourcedFormula> dropped;
};

ExclusionResult exclude_unsupported(const KnowledgeBase& kb,
                                    const std::vector<SourcedFormula>& axioms,
                                    const ExclusionPolicy& policy,
                                    DiagnosticSink* diags = nullptr);

// Replaces quantity-typed variables used inside arithmetic functions by
// (MeasureFn ?N__v ?U__v), applying the arithmetic to the number part and
// re-wrapping the result with the unit.
FormulaPtr rewrite_quantity_arithmetic(const KnowledgeBase& kb, const SourcedFormula& f,
                                       DiagnosticSink* diags = nullptr);

}  // namespace kif2tff

#endif
