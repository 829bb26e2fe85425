// TFF0 rendering: builtin-operator mapping, sort annotations, coercion
// insertion and symbol declarations.

#ifndef KIF2TFF_TFF_EMITTER_HPP
#define KIF2TFF_TFF_EMITTER_HPP

#include <map>
#include <string>
#include <vector>

#include "kif2tff/diagnostics.hpp"
#include "kif2tff/kb.hpp"
#include "kif2tff/rename.hpp"
#include "kif2tff/sort_inference.hpp"

namespace kif2tff {

enum class TffSort { Int, Real, Rat, O, I };
const char* tff_sort_name(TffSort s);
TffSort tff_sort_from_type(const KnowledgeBase& kb, const std::string& type, bool is_class);

struct TffUnit {
  std::string name;
  std::string role;  // axiom | type | conjecture
  std::string body;  // rendered formula or symbol declaration
};

class DeclarationSet {
 public:
  // Returns false (and reports) on a conflicting redeclaration.
  bool add(const std::string& symbol, const std::string& rendered_type, DiagnosticSink* diags);
  const std::map<std::string, std::string>& entries() const { return entries_; }
  void merge(const DeclarationSet& other, DiagnosticSink* diags);

 private:
  std::map<std::string, std::string> entries_;
};

struct EmitOptions {
  bool builtin_floor_ceiling = false;
};

// Wraps $int-side operands of mixed comparisons in $to_real (and the
// analogous $to_rat/$to_real cases). Sets `fatal` when a numeric term meets
// an individual-level position: there is no safe coercion for that.
FormulaPtr insert_sort_coercions(const KnowledgeBase& kb, const RenameTable& renames,
                                 const FormulaPtr& f, const SortEnv& env, bool& fatal,
                                 DiagnosticSink* diags = nullptr);

// Renders one translated axiom as 1 or 2 TFF units (bi-implications whose
// sides bind different variables split into two implications), collecting
// the symbol declarations it needs.
std::vector<TffUnit> emit_axiom(const KnowledgeBase& kb, const RenameTable& renames,
                                const EmitOptions& opts, const std::string& label,
                                const FormulaPtr& f, const SortEnv& env, DeclarationSet& decls,
                                DiagnosticSink* diags = nullptr);

std::vector<TffUnit> emit_declarations(const DeclarationSet& decls);

// Declarations first, then axioms in the given order. Reports duplicate
// unit names as errors.
std::string emit_file(const std::vector<TffUnit>& units, DiagnosticSink* diags = nullptr);

}  // namespace kif2tff

#endif
