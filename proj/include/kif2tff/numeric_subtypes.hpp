// Number-subtype elimination: the definitional-constraint table, guard
// injection for promoted variables, and replacement of subtype instance
// literals by their defining conditions.

#ifndef KIF2TFF_NUMERIC_SUBTYPES_HPP
#define KIF2TFF_NUMERIC_SUBTYPES_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kif2tff/diagnostics.hpp"
#include "kif2tff/kb.hpp"
#include "kif2tff/sort_inference.hpp"

namespace kif2tff {

struct DefinitionalTable {
  std::map<std::string, FormulaPtr> conditions;   // numeric subtype -> condition
  std::map<std::string, std::string> bound_var;   // numeric subtype -> its variable
  std::set<std::string> consumed_labels;          // defining axioms, suppressed from output
};

// Scans the KB axioms for (=> (instance ?v T) cond) definitions of numeric
// subtypes, reducing bi-implications first. When a subtype has several
// candidate definitions the one latest in source order wins, with a warning.
DefinitionalTable build_definitional_table(const KnowledgeBase& kb,
                                           DiagnosticSink* diags = nullptr);

// Wraps the axiom in one guard implication per recorded (variable, subtype)
// pair, outermost guard first in variable-name order.
FormulaPtr inject_antecedent_constraints(const DefinitionalTable& table, const FormulaPtr& f,
                                         const std::vector<std::pair<std::string, std::string>>& records,
                                         DiagnosticSink* diags = nullptr);

// Replaces (instance x T) literals for proper numeric subtypes T by their
// defining conditions. In the consequent of a top-level implication the
// conditions of T's ancestors outside its promotion branch are conjoined.
FormulaPtr replace_consequent_instance(const DefinitionalTable& table, const KnowledgeBase& kb,
                                       const FormulaPtr& f, DiagnosticSink* diags = nullptr);

// (instance x B) for base numeric B against an already numeric-sorted term
// is vacuous once sorts carry the information; such literals reduce away.
// Returns nullopt when the whole axiom reduces to a tautology (droppable)
// and sets `contradiction` when it reduces to falsity.
std::optional<FormulaPtr> simplify_base_instances(const KnowledgeBase& kb, const FormulaPtr& f,
                                                  const SortEnv& env, bool& contradiction,
                                                  DiagnosticSink* diags = nullptr);

}  // namespace kif2tff

#endif
