// Variable and function-return sort inference: type collection from
// signatures and instance/subclass literals, comparison constraining,
// function-driven propagation to a fixpoint, numeric promotion, and
// integer-literal realification.

#ifndef KIF2TFF_SORT_INFERENCE_HPP
#define KIF2TFF_SORT_INFERENCE_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kif2tff/diagnostics.hpp"
#include "kif2tff/kb.hpp"

namespace kif2tff {

struct VarInfo {
  std::string type = "Entity";
  bool is_class = false;  // bound to a class rather than an instance
};

struct SortEnv {
  std::map<std::string, VarInfo> var_types;
  // Function occurrences: resolved return type. Occurrences of relations in
  // extended_to_quantities: the shared operand type ("" when at $i level).
  std::map<std::string, std::string> occurrence_return_types;  // path key -> type
  std::set<std::string> literal_promotions;  // path keys of IntLits rewritten to reals
  // (variable, original numeric subtype) pairs collected by promote_types.
  std::vector<std::pair<std::string, std::string>> subtype_records;
  int fixpoint_iterations = 0;
  bool fatal = false;  // unrepresentable sort demand; axiom must be dropped

  std::string type_of(const std::string& var) const {
    auto it = var_types.find(var);
    return it == var_types.end() ? std::string("Entity") : it->second.type;
  }
};

// Extra constraints applied before the fixpoint: every occurrence of the
// named head has its numeric positions narrowed to the given base sort.
// Used when copying axioms onto signature variants.
using SeedConstraints = std::map<std::string, std::vector<std::string>>;

// Step 1: signature domains and instance/subclass literals, variables only.
SortEnv collect_variable_types(const KnowledgeBase& kb, const Formula& f,
                               DiagnosticSink* diags = nullptr);

// Step 2: unify operands of extended-to-quantities relations and of
// quantity-polymorphic arithmetic functions, with the RealNumber carve-out.
SortEnv constrain_comparison_types(const KnowledgeBase& kb, const Formula& f, SortEnv env,
                                   DiagnosticSink* diags = nullptr);

// Function-return propagation to a fixpoint (argument domains narrow nested
// returns, narrowed returns re-narrow arguments).
SortEnv propagate_function_types(const KnowledgeBase& kb, const Formula& f, SortEnv env,
                                 DiagnosticSink* diags = nullptr);

// Step 3: promotion to Integer/RationalNumber/RealNumber, recording the
// (variable, original subtype) pairs for guard injection.
SortEnv promote_types(const KnowledgeBase& kb, SortEnv env);

// Step 4: rewrite integer literals sitting in RealNumber positions of
// renamed/builtin operators to real literals ("500" -> "500.0").
std::pair<FormulaPtr, SortEnv> promote_integer_literals(const KnowledgeBase& kb,
                                                        const FormulaPtr& f, SortEnv env);

// All inference steps in order (without literal promotion). `order_seed`
// permutes rule application order; the result must not depend on it.
SortEnv infer_all(const KnowledgeBase& kb, const Formula& f, DiagnosticSink* diags = nullptr,
                  const SeedConstraints* seeds = nullptr, unsigned order_seed = 0);

}  // namespace kif2tff

#endif
