// Suffix renaming of numeric relations and functions, signature-variant
// generation, and the quantity-axiom doubling step.

#ifndef KIF2TFF_RENAME_HPP
#define KIF2TFF_RENAME_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "kif2tff/diagnostics.hpp"
#include "kif2tff/kb.hpp"
#include "kif2tff/sort_inference.hpp"

namespace kif2tff {

struct SignatureVariant {
  std::string base_name;
  // (0-based position, code): position 0 is the range of a function or the
  // shared operand sort of an extended relation; only numeric positions
  // appear. Codes are "In", "Re", "Ra".
  std::vector<std::pair<int, std::string>> position_sorts;
  bool is_function = false;

  std::string render() const;

  bool operator<(const SignatureVariant& o) const {
    return std::tie(base_name, position_sorts, is_function) <
           std::tie(o.base_name, o.position_sorts, o.is_function);
  }
};

std::string suffix_for(const SignatureVariant& v);
const char* sort_code(const std::string& base_sort);  // Integer -> "In", ...

struct RenameTable {
  struct Entry {
    std::string base;
    bool is_function = false;
    // TFF sort names per position: [return, arg1, ...]; "$o" return marks a
    // relation.
    std::vector<std::string> tff_sorts;
  };
  std::map<std::string, Entry> rendered;  // rendered name -> resolved signature
  // Demanded variants per function: SUMO base sorts per position
  // ([return, arg1, ...], "" for non-numeric positions).
  std::map<std::string, std::set<std::vector<std::string>>> demands;

  void merge(const RenameTable& other, DiagnosticSink* diags = nullptr);
};

// True when the symbol's declared signature admits numeric variants at all;
// only such symbols are ever suffix-renamed.
bool renameable(const KnowledgeBase& kb, const std::string& name);

// The base sorts a declared argument/range type demands as extra variants.
std::set<std::string> variant_bases_for_type(const KnowledgeBase& kb, const std::string& type);

std::set<SignatureVariant> generate_signature_variants(const KnowledgeBase& kb,
                                                       const std::string& name);

// Replaces extended-relation and function occurrences whose resolved
// signatures carry numeric sorts by their suffixed variant names.
FormulaPtr rename_numeric_relations(const KnowledgeBase& kb, const FormulaPtr& f,
                                    const SortEnv& env, RenameTable& table,
                                    DiagnosticSink* diags = nullptr);

// Step 6: one extra copy when a variable's type sits strictly below Quantity
// without being a number type.
std::vector<FormulaPtr> double_axiom(const KnowledgeBase& kb, const FormulaPtr& f,
                                     const SortEnv& env);

}  // namespace kif2tff

#endif
