// Formula trees for SUO-KIF: variables, atoms, numeric literals,
// applications, connectives and quantifiers.

#ifndef KIF2TFF_FORMULA_HPP
#define KIF2TFF_FORMULA_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace kif2tff {

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class Conn { And, Or, Not, Implies, Iff };
enum class Quant { Forall, Exists };

// Immutable expression tree. Shared subtrees are fine; all rewrites
// build fresh nodes.
class Formula {
 public:
  enum class Kind { Variable, Symbol, IntLit, RealLit, Apply, Connective, Quantifier };

  Kind kind = Kind::Symbol;
  // Variable: name without the leading '?' (row variables keep their '@').
  // Symbol: the token text. IntLit/RealLit: the literal text, verbatim.
  // Apply: the head; a leading '?' marks a predicate-variable head.
  std::string name;
  Conn conn = Conn::And;
  Quant quant = Quant::Forall;
  std::vector<std::string> vars;   // quantifier binders, in source order
  std::vector<FormulaPtr> args;    // apply/connective args; quantifier body at [0]

  static FormulaPtr variable(std::string name);
  static FormulaPtr symbol(std::string name);
  static FormulaPtr int_lit(std::string text);
  static FormulaPtr real_lit(std::string text);
  static FormulaPtr apply(std::string head, std::vector<FormulaPtr> args);
  static FormulaPtr connective(Conn c, std::vector<FormulaPtr> args);
  static FormulaPtr quantifier(Quant q, std::vector<std::string> vars, FormulaPtr body);

  bool is_apply(const std::string& head) const {
    return kind == Kind::Apply && name == head;
  }
  bool has_variable_head() const {
    return kind == Kind::Apply && !name.empty() && (name[0] == '?' || name[0] == '@');
  }
  bool is_literal() const { return kind == Kind::IntLit || kind == Kind::RealLit; }
};

const char* conn_name(Conn c);
const char* quant_name(Quant q);

bool structurally_equal(const Formula& a, const Formula& b);

// Canonical single-line KIF rendering; parse_kif(print_kif(f)) == f.
std::string print_kif(const Formula& f);

// Variables occurring free in f (quantifier binders removed in scope).
std::set<std::string> free_variables(const Formula& f);
// Every variable mentioned anywhere, bound or free.
std::set<std::string> all_variables(const Formula& f);

// Capture-avoiding substitution of free occurrences of `var`.
// Replacing a predicate-variable head with a symbol renames the head.
FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const FormulaPtr& replacement);

// Positions of subterms as child-index paths from the root.
using TreePath = std::vector<int>;
std::string path_key(const TreePath& p);
const Formula* subterm_at(const Formula& root, const TreePath& p);

struct SourcedFormula {
  FormulaPtr formula;
  std::string file;
  int line = 0;
  std::string label;  // unique per translation run; used for TFF unit names
};

}  // namespace kif2tff

#endif
