#include "kif2tff/kb.hpp"

#include <algorithm>
#include <functional>

namespace kif2tff {

namespace {

const char* kQuantity = "Quantity";
const char* kNumber = "Number";
const char* kInteger = "Integer";
const char* kRational = "RationalNumber";
const char* kReal = "RealNumber";

bool ground_symbols(const Formula& f) {
  for (const auto& a : f.args)
    if (a->kind != Formula::Kind::Symbol) return false;
  return true;
}

}  // namespace

bool KnowledgeBase::known_type(const std::string& t) const {
  if (t == "Entity") return true;
  if (subclass_edges.count(t)) return true;
  for (const auto& [child, parents] : subclass_edges)
    if (parents.count(t)) return true;
  for (const auto& [c, classes] : instance_of)
    if (classes.count(t)) return true;
  return false;
}

std::set<std::string> KnowledgeBase::ancestors(const std::string& t) const {
  std::set<std::string> seen;
  std::vector<std::string> stack{t};
  while (!stack.empty()) {
    std::string cur = stack.back();
    stack.pop_back();
    if (!seen.insert(cur).second) continue;
    auto it = subclass_edges.find(cur);
    if (it == subclass_edges.end()) continue;
    for (const auto& p : it->second) stack.push_back(p);
  }
  return seen;
}

bool KnowledgeBase::subclass_or_same(const std::string& child, const std::string& ancestor) const {
  if (child == ancestor) return true;
  if (ancestor == "Entity") return true;
  return ancestors(child).count(ancestor) > 0;
}

bool KnowledgeBase::is_subclass_of(const std::string& child, const std::string& ancestor) const {
  if (!known_type(child)) throw KbError("unknown type name: " + child);
  if (!known_type(ancestor)) throw KbError("unknown type name: " + ancestor);
  return subclass_or_same(child, ancestor);
}

NumericClass KnowledgeBase::classify(const std::string& type) const {
  if (subclass_or_same(type, kInteger)) return NumericClass::IntegerLike;
  if (subclass_or_same(type, kRational)) return NumericClass::RationalLike;
  if (subclass_or_same(type, kReal)) return NumericClass::RealLike;
  if (subclass_or_same(type, kQuantity)) return NumericClass::QuantityLike;
  return NumericClass::NonNumeric;
}

bool KnowledgeBase::strict_quantity(const std::string& t) const {
  return t != kQuantity && subclass_or_same(t, kQuantity) && !subclass_or_same(t, kNumber);
}

std::string KnowledgeBase::meet_numeric(const std::string& t1, const std::string& t2) const {
  if (t1 == t2) return t1;
  // RealNumber is never constrained down to an integer type, and the same
  // shape is kept for RationalNumber against integers.
  if (t1 == kReal && classify(t2) == NumericClass::IntegerLike) return t1;
  if (t2 == kReal && classify(t1) == NumericClass::IntegerLike) return t2;
  if (t1 == kRational && classify(t2) == NumericClass::IntegerLike) return t1;
  if (t2 == kRational && classify(t1) == NumericClass::IntegerLike) return t2;
  if (subclass_or_same(t1, t2)) return t1;
  if (subclass_or_same(t2, t1)) return t2;
  // Incomparable: most specific common ancestor inside the Quantity subtree.
  std::set<std::string> a1 = ancestors(t1);
  std::set<std::string> a2 = ancestors(t2);
  std::vector<std::string> common;
  for (const auto& a : a1)
    if (a2.count(a) && subclass_or_same(a, kQuantity)) common.push_back(a);
  if (common.empty()) return kQuantity;
  std::vector<std::string> minimal;
  for (const auto& c : common) {
    bool has_lower = false;
    for (const auto& d : common)
      if (d != c && subclass_or_same(d, c)) {
        has_lower = true;
        break;
      }
    if (!has_lower) minimal.push_back(c);
  }
  std::sort(minimal.begin(), minimal.end());
  return minimal.front();
}

std::optional<std::string> KnowledgeBase::meet_general(const std::string& t1,
                                                       const std::string& t2) const {
  if (t1 == t2) return t1;
  if (t1 == "Entity") return t2;
  if (t2 == "Entity") return t1;
  if (subclass_or_same(t1, t2)) return t1;
  if (subclass_or_same(t2, t1)) return t2;
  if (quantity_like(t1) && quantity_like(t2)) return meet_numeric(t1, t2);
  return std::nullopt;
}

std::string KnowledgeBase::promotion_target(const std::string& t) const {
  if (subclass_or_same(t, kInteger)) return kInteger;
  if (t == kRational) return kRational;
  if (t != kReal && subclass_or_same(t, kReal)) return kReal;
  return t;
}

bool KnowledgeBase::is_instance(const std::string& constant, const std::string& cls) const {
  auto it = instance_of.find(constant);
  if (it == instance_of.end()) return false;
  if (it->second.count(cls)) return true;
  for (const auto& c : it->second)
    if (subclass_or_same(c, cls)) return true;
  return false;
}

namespace {

void detect_cycles(const KnowledgeBase& kb) {
  enum class Color { White, Grey, Black };
  std::map<std::string, Color> color;
  std::vector<std::string> path;
  std::function<void(const std::string&)> visit = [&](const std::string& node) {
    color[node] = Color::Grey;
    path.push_back(node);
    auto it = kb.subclass_edges.find(node);
    if (it != kb.subclass_edges.end()) {
      for (const auto& parent : it->second) {
        Color c = color.count(parent) ? color[parent] : Color::White;
        if (c == Color::Grey) {
          std::string cycle;
          auto start = std::find(path.begin(), path.end(), parent);
          for (auto p = start; p != path.end(); ++p) cycle += *p + " -> ";
          cycle += parent;
          throw KbError("subclass cycle detected: " + cycle);
        }
        if (c == Color::White) visit(parent);
      }
    }
    color[node] = Color::Black;
    path.pop_back();
  };
  for (const auto& [child, parents] : kb.subclass_edges)
    if (!color.count(child) || color[child] == Color::White) visit(child);
}

void set_domain(KnowledgeBase& kb, const std::string& rel, int pos, const std::string& type,
                bool is_class) {
  Signature& sig = kb.signatures[rel];
  sig.name = rel;
  if (static_cast<size_t>(pos) > sig.arg_types.size()) {
    sig.arg_types.resize(pos);
    sig.arg_is_class.resize(pos, false);
  }
  std::string& slot = sig.arg_types[pos - 1];
  if (!slot.empty() && slot != type)
    throw KbError("conflicting domain redeclaration for " + rel + " position " +
                  std::to_string(pos) + ": " + slot + " vs " + type);
  slot = type;
  sig.arg_is_class[pos - 1] = is_class;
}

void inject_builtin_signature(KnowledgeBase& kb, const std::string& name,
                              std::vector<std::string> args, std::vector<bool> class_flags) {
  if (kb.signatures.count(name)) return;
  Signature sig;
  sig.name = name;
  sig.arg_types = std::move(args);
  sig.arg_is_class = std::move(class_flags);
  kb.signatures[name] = std::move(sig);
}

}  // namespace

KnowledgeBase load_kb(const std::vector<SourcedFormula>& inputs, DiagnosticSink* diags) {
  KnowledgeBase kb;
  for (const auto& sf : inputs) {
    const Formula& f = *sf.formula;
    if (f.kind == Formula::Kind::Apply && !f.has_variable_head()) {
      if (f.name == "subclass" && f.args.size() == 2 && ground_symbols(f)) {
        kb.subclass_edges[f.args[0]->name].insert(f.args[1]->name);
        continue;
      }
      if (f.name == "instance" && f.args.size() == 2 && ground_symbols(f)) {
        kb.instance_of[f.args[0]->name].insert(f.args[1]->name);
        if (f.args[1]->name == "RelationExtendedToQuantities")
          kb.extended_to_quantities.insert(f.args[0]->name);
        continue;
      }
      if ((f.name == "domain" || f.name == "domainSubclass") && f.args.size() == 3 &&
          f.args[0]->kind == Formula::Kind::Symbol &&
          f.args[1]->kind == Formula::Kind::IntLit &&
          f.args[2]->kind == Formula::Kind::Symbol) {
        int pos = std::stoi(f.args[1]->name);
        if (pos < 1) {
          if (diags)
            diags->add(Severity::Warning, "ignoring domain with position < 1", sf.file, sf.line,
                       sf.label);
          continue;
        }
        set_domain(kb, f.args[0]->name, pos, f.args[2]->name, f.name == "domainSubclass");
        continue;
      }
      if (f.name == "range" && f.args.size() == 2 && ground_symbols(f)) {
        Signature& sig = kb.signatures[f.args[0]->name];
        sig.name = f.args[0]->name;
        if (sig.range_type && *sig.range_type != f.args[1]->name)
          throw KbError("conflicting range redeclaration for " + f.args[0]->name);
        sig.range_type = f.args[1]->name;
        continue;
      }
      if (f.name == "documentation") continue;  // prose, not translated
    }
    kb.axioms.push_back(sf);
  }
  detect_cycles(kb);

  inject_builtin_signature(kb, "instance", {"Entity", "Entity"}, {false, true});
  inject_builtin_signature(kb, "subclass", {"Entity", "Entity"}, {true, true});
  inject_builtin_signature(kb, "equal", {"Entity", "Entity"}, {false, false});
  return kb;
}

}  // namespace kif2tff
