#include "kif2tff/rename.hpp"

#include <algorithm>

namespace kif2tff {

const char* sort_code(const std::string& base_sort) {
  if (base_sort == "Integer") return "In";
  if (base_sort == "RealNumber") return "Re";
  if (base_sort == "RationalNumber") return "Ra";
  return "";
}

std::string suffix_for(const SignatureVariant& v) {
  if (v.position_sorts.empty()) return "";
  std::string s = "__";
  for (const auto& [pos, code] : v.position_sorts) s += std::to_string(pos) + code;
  if (v.is_function) s += "Fn";
  return s;
}

std::string SignatureVariant::render() const { return base_name + suffix_for(*this); }

void RenameTable::merge(const RenameTable& other, DiagnosticSink* diags) {
  for (const auto& [name, entry] : other.rendered) {
    auto it = rendered.find(name);
    if (it == rendered.end()) {
      rendered[name] = entry;
    } else if (it->second.tff_sorts != entry.tff_sorts && diags) {
      diags->add(Severity::Error, "rendered name collision with distinct signatures: " + name);
    }
  }
  for (const auto& [base, sigs] : other.demands) demands[base].insert(sigs.begin(), sigs.end());
}

std::set<std::string> variant_bases_for_type(const KnowledgeBase& kb, const std::string& type) {
  std::set<std::string> out;
  switch (kb.classify(type)) {
    case NumericClass::NonNumeric:
      return out;
    case NumericClass::IntegerLike:
      return out;  // already at the base
    case NumericClass::RationalLike:
      out.insert("Integer");
      return out;
    case NumericClass::RealLike:
      out.insert("Integer");
      out.insert("RationalNumber");
      return out;
    case NumericClass::QuantityLike:
      // Strictly physical quantities are never numbers; only the abstract
      // Quantity/Number/PhysicalDimension levels admit all three.
      if (kb.strict_quantity(type)) return out;
      out.insert("Integer");
      out.insert("RationalNumber");
      out.insert("RealNumber");
      return out;
  }
  return out;
}

bool renameable(const KnowledgeBase& kb, const std::string& name) {
  const Signature* sig = kb.find_signature(name);
  if (!sig) return false;
  for (const auto& t : sig->arg_types)
    if (!t.empty() && !variant_bases_for_type(kb, t).empty()) return true;
  if (sig->range_type && !variant_bases_for_type(kb, *sig->range_type).empty()) return true;
  return false;
}

std::set<SignatureVariant> generate_signature_variants(const KnowledgeBase& kb,
                                                       const std::string& name) {
  std::set<SignatureVariant> out;
  const Signature* sig = kb.find_signature(name);
  if (!sig) return out;
  std::set<std::string> bases;
  for (const auto& t : sig->arg_types) {
    auto b = variant_bases_for_type(kb, t);
    bases.insert(b.begin(), b.end());
  }
  if (sig->range_type) {
    auto b = variant_bases_for_type(kb, *sig->range_type);
    bases.insert(b.begin(), b.end());
  }
  for (const auto& base : bases) {
    SignatureVariant v;
    v.base_name = name;
    v.is_function = sig->is_function();
    auto position_code = [&](const std::string& declared) -> std::string {
      if (declared.empty()) return "";
      if (kb.classify(declared) == NumericClass::NonNumeric) return "";
      if (kb.strict_quantity(declared)) return "";
      // Instantiate flexible positions at the variant base; positions pinned
      // below stay at their own base.
      std::string target = kb.promotion_target(declared);
      if (kb.real_like(target) && !kb.subclass_or_same(base, target)) return sort_code(target);
      return sort_code(base);
    };
    if (sig->range_type) {
      std::string c = position_code(*sig->range_type);
      if (!c.empty()) v.position_sorts.emplace_back(0, c);
    } else if (!sig->arg_types.empty()) {
      std::string c = position_code(sig->arg_types[0]);
      if (!c.empty()) v.position_sorts.emplace_back(0, c);
    }
    for (size_t i = 0; i < sig->arg_types.size(); ++i) {
      std::string c = position_code(sig->arg_types[i]);
      if (!c.empty()) v.position_sorts.emplace_back(static_cast<int>(i) + 1, c);
    }
    if (!v.position_sorts.empty()) out.insert(v);
  }
  return out;
}

namespace {

std::string tff_name_of_base(const std::string& sumo_base) {
  if (sumo_base == "Integer") return "$int";
  if (sumo_base == "RealNumber") return "$real";
  if (sumo_base == "RationalNumber") return "$rat";
  return "$i";
}

class Renamer {
 public:
  Renamer(const KnowledgeBase& kb, const SortEnv& env, RenameTable& table, DiagnosticSink* diags)
      : kb_(kb), env_(env), table_(table), diags_(diags) {}

  FormulaPtr run(const FormulaPtr& f) {
    TreePath path;
    return walk(f, path, true);
  }

 private:
  // The SUMO base sort of a term, "" when it is individual-level.
  std::string term_base(const FormulaPtr& t, const TreePath& path) {
    switch (t->kind) {
      case Formula::Kind::Variable: {
        auto it = env_.var_types.find(t->name);
        if (it == env_.var_types.end() || it->second.is_class) return "";
        return base_of(it->second.type);
      }
      case Formula::Kind::IntLit:
        return "Integer";
      case Formula::Kind::RealLit:
        return "RealNumber";
      case Formula::Kind::Symbol: {
        auto it = kb_.instance_of.find(t->name);
        if (it == kb_.instance_of.end()) return "";
        for (const auto& c : it->second) {
          std::string b = base_of(c);
          if (!b.empty()) return b;
        }
        return "";
      }
      case Formula::Kind::Apply: {
        auto it = env_.occurrence_return_types.find(path_key(path));
        if (it != env_.occurrence_return_types.end()) return base_of(it->second);
        const Signature* sig = kb_.find_signature(t->name);
        if (sig && sig->range_type) return base_of(*sig->range_type);
        return "";
      }
      default:
        return "";
    }
  }

  std::string base_of(const std::string& type) {
    if (type.empty()) return "";
    std::string target = kb_.promotion_target(type);
    if (kb_.real_like(target)) return target;
    return "";
  }

  FormulaPtr walk(const FormulaPtr& f, TreePath& path, bool formula_position) {
    switch (f->kind) {
      case Formula::Kind::Variable:
      case Formula::Kind::Symbol:
      case Formula::Kind::IntLit:
      case Formula::Kind::RealLit:
        return f;
      case Formula::Kind::Connective: {
        std::vector<FormulaPtr> args;
        bool changed = false;
        for (size_t i = 0; i < f->args.size(); ++i) {
          path.push_back(static_cast<int>(i));
          args.push_back(walk(f->args[i], path, true));
          path.pop_back();
          changed = changed || args.back() != f->args[i];
        }
        return changed ? Formula::connective(f->conn, std::move(args)) : f;
      }
      case Formula::Kind::Quantifier: {
        path.push_back(0);
        FormulaPtr body = walk(f->args[0], path, true);
        path.pop_back();
        return body == f->args[0] ? f : Formula::quantifier(f->quant, f->vars, std::move(body));
      }
      case Formula::Kind::Apply:
        break;
    }

    std::vector<FormulaPtr> args;
    std::vector<std::string> arg_bases;
    bool changed = false;
    for (size_t i = 0; i < f->args.size(); ++i) {
      path.push_back(static_cast<int>(i));
      arg_bases.push_back(term_base(f->args[i], path));
      args.push_back(walk(f->args[i], path, false));
      path.pop_back();
      changed = changed || args.back() != f->args[i];
    }

    std::string new_head = f->name;
    bool extended = formula_position && kb_.extended_to_quantities.count(f->name) > 0 &&
                    f->args.size() == 2;
    const Signature* sig = kb_.find_signature(f->name);
    bool function_term = !formula_position;

    if (extended) {
      auto it = env_.occurrence_return_types.find(path_key(path));
      std::string op = it == env_.occurrence_return_types.end() ? "" : base_of(it->second);
      if (!op.empty()) {
        SignatureVariant v;
        v.base_name = f->name;
        v.is_function = false;
        const char* code = sort_code(op);
        for (int p = 0; p <= static_cast<int>(f->args.size()); ++p)
          v.position_sorts.emplace_back(p, code);
        new_head = v.render();
        RenameTable::Entry entry;
        entry.base = f->name;
        entry.is_function = false;
        entry.tff_sorts = {"$o", tff_name_of_base(op), tff_name_of_base(op)};
        record(new_head, entry);
      }
    } else if (function_term && renameable(kb_, f->name)) {
      auto it = env_.occurrence_return_types.find(path_key(path));
      std::string ret = it == env_.occurrence_return_types.end()
                            ? (sig && sig->range_type ? base_of(*sig->range_type) : "")
                            : base_of(it->second);
      SignatureVariant v;
      v.base_name = f->name;
      v.is_function = true;
      std::vector<std::string> demand{ret};
      if (!ret.empty()) v.position_sorts.emplace_back(0, sort_code(ret));
      for (size_t i = 0; i < arg_bases.size(); ++i) {
        demand.push_back(arg_bases[i]);
        if (!arg_bases[i].empty())
          v.position_sorts.emplace_back(static_cast<int>(i) + 1, sort_code(arg_bases[i]));
      }
      if (!v.position_sorts.empty()) {
        new_head = v.render();
        RenameTable::Entry entry;
        entry.base = f->name;
        entry.is_function = true;
        entry.tff_sorts.push_back(ret.empty() ? "$i" : tff_name_of_base(ret));
        for (const auto& b : arg_bases)
          entry.tff_sorts.push_back(b.empty() ? "$i" : tff_name_of_base(b));
        record(new_head, entry);
        table_.demands[f->name].insert(demand);
      }
    }

    if (!changed && new_head == f->name) return f;
    return Formula::apply(new_head, std::move(args));
  }

  void record(const std::string& rendered, const RenameTable::Entry& entry) {
    auto it = table_.rendered.find(rendered);
    if (it == table_.rendered.end()) {
      table_.rendered[rendered] = entry;
    } else if (it->second.tff_sorts != entry.tff_sorts && diags_) {
      diags_->add(Severity::Error,
                  "rendered name collision with distinct signatures: " + rendered);
    }
  }

  const KnowledgeBase& kb_;
  const SortEnv& env_;
  RenameTable& table_;
  DiagnosticSink* diags_;
};

}  // namespace

FormulaPtr rename_numeric_relations(const KnowledgeBase& kb, const FormulaPtr& f,
                                    const SortEnv& env, RenameTable& table,
                                    DiagnosticSink* diags) {
  Renamer r(kb, env, table, diags);
  return r.run(f);
}

std::vector<FormulaPtr> double_axiom(const KnowledgeBase& kb, const FormulaPtr& f,
                                     const SortEnv& env) {
  for (const auto& [name, info] : env.var_types) {
    if (info.is_class) continue;
    if (kb.strict_quantity(info.type)) return {f, f};
  }
  return {f};
}

}  // namespace kif2tff
