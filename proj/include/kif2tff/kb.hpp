// Indexed knowledge base: class hierarchy, relation signatures, instance
// facts and the numeric-type queries the translation steps are built on.

#ifndef KIF2TFF_KB_HPP
#define KIF2TFF_KB_HPP

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "kif2tff/diagnostics.hpp"
#include "kif2tff/formula.hpp"

namespace kif2tff {

class KbError : public std::runtime_error {
 public:
  explicit KbError(const std::string& msg) : std::runtime_error(msg) {}
};

struct Signature {
  std::string name;
  std::vector<std::string> arg_types;   // 1-indexed positions at [0..n-1]
  std::vector<bool> arg_is_class;       // true for domainSubclass positions
  std::optional<std::string> range_type;  // present iff function

  bool is_function() const { return range_type.has_value(); }
  size_t arity() const { return arg_types.size(); }
};

// Most specific numeric classification of a SUMO type.
enum class NumericClass { IntegerLike, RationalLike, RealLike, QuantityLike, NonNumeric };

class KnowledgeBase {
 public:
  std::map<std::string, std::set<std::string>> subclass_edges;  // child -> parents
  std::map<std::string, std::set<std::string>> instance_of;     // constant -> classes
  std::map<std::string, Signature> signatures;
  std::set<std::string> extended_to_quantities;
  std::vector<SourcedFormula> axioms;  // non-declaration formulas, source order

  bool known_type(const std::string& t) const;

  // Reflexive-transitive subclass test. Throws KbError on unknown names.
  bool is_subclass_of(const std::string& child, const std::string& ancestor) const;
  // Same test, but unknown names simply answer false.
  bool subclass_or_same(const std::string& child, const std::string& ancestor) const;

  NumericClass classify(const std::string& type) const;
  bool quantity_like(const std::string& t) const { return classify(t) != NumericClass::NonNumeric; }
  bool real_like(const std::string& t) const {
    auto c = classify(t);
    return c == NumericClass::IntegerLike || c == NumericClass::RationalLike ||
           c == NumericClass::RealLike;
  }
  // Strictly below Quantity and not below Number: a physical quantity type.
  bool strict_quantity(const std::string& t) const;

  // All reflexive-transitive ancestors of t (t included).
  std::set<std::string> ancestors(const std::string& t) const;

  // Lowest common type of two quantity-like types: the more specific one
  // when comparable, with the RealNumber-vs-integer carve-out; the most
  // specific common ancestor inside Quantity otherwise.
  std::string meet_numeric(const std::string& t1, const std::string& t2) const;

  // Meet in the full hierarchy. Empty optional when the types are
  // incomparable outside the Quantity subtree.
  std::optional<std::string> meet_general(const std::string& t1, const std::string& t2) const;

  std::string promotion_target(const std::string& t) const;

  const Signature* find_signature(const std::string& name) const {
    auto it = signatures.find(name);
    return it == signatures.end() ? nullptr : &it->second;
  }

  bool is_instance(const std::string& constant, const std::string& cls) const;
};

// Indexes subclass/instance/domain/domainSubclass/range statements and keeps
// everything else in `axioms`. Throws KbError on subclass cycles and on
// conflicting domain redeclarations.
KnowledgeBase load_kb(const std::vector<SourcedFormula>& inputs, DiagnosticSink* diags = nullptr);

}  // namespace kif2tff

#endif
