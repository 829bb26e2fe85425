#include "kif2tff/numeric_subtypes.hpp"

#include <algorithm>

namespace kif2tff {

namespace {

const std::set<std::string> kBaseSorts = {"Integer", "RationalNumber", "RealNumber"};

bool is_table_key(const KnowledgeBase& kb, const std::string& t) {
  return kb.real_like(t) && t != "Integer" && t != "RealNumber";
}

bool is_proper_subtype(const KnowledgeBase& kb, const std::string& t) {
  return kb.real_like(t) && !kBaseSorts.count(t);
}

struct Definition {
  std::string var;
  FormulaPtr condition;
  std::string label;
};

// (instance ?v T) with a constant class.
bool match_instance_var(const Formula& f, std::string& var, std::string& type) {
  if (!f.is_apply("instance") || f.args.size() != 2) return false;
  if (f.args[0]->kind != Formula::Kind::Variable) return false;
  if (f.args[1]->kind != Formula::Kind::Symbol) return false;
  var = f.args[0]->name;
  type = f.args[1]->name;
  return true;
}

// Drops (instance ?v <base numeric>) conjuncts from a bi-implication's
// right-hand side, the reduction applied before caching.
FormulaPtr strip_base_type_conjuncts(const FormulaPtr& f, const std::string& var) {
  if (f->kind != Formula::Kind::Connective || f->conn != Conn::And) {
    std::string v, t;
    if (match_instance_var(*f, v, t) && v == var && kBaseSorts.count(t)) return nullptr;
    return f;
  }
  std::vector<FormulaPtr> args;
  for (const auto& a : f->args) {
    FormulaPtr r = strip_base_type_conjuncts(a, var);
    if (r) args.push_back(r);
  }
  if (args.empty()) return nullptr;
  if (args.size() == 1) return args[0];
  return Formula::connective(Conn::And, std::move(args));
}

}  // namespace

DefinitionalTable build_definitional_table(const KnowledgeBase& kb, DiagnosticSink* diags) {
  DefinitionalTable table;
  std::map<std::string, Definition> chosen;
  for (const auto& sf : kb.axioms) {
    const Formula& f = *sf.formula;
    if (f.kind != Formula::Kind::Connective) continue;
    if (f.conn != Conn::Implies && f.conn != Conn::Iff) continue;
    std::string var, type;
    if (!match_instance_var(*f.args[0], var, type)) continue;
    if (!is_table_key(kb, type)) continue;
    FormulaPtr cond = f.args[1];
    if (f.conn == Conn::Iff) {
      cond = strip_base_type_conjuncts(cond, var);
      if (!cond) continue;  // nothing left of the definition
    }
    auto it = chosen.find(type);
    if (it != chosen.end() && diags && !structurally_equal(*it->second.condition, *cond))
      diags->add(Severity::Warning,
                 "multiple definitional constraints for " + type + "; keeping the latest",
                 sf.file, sf.line, sf.label);
    chosen[type] = Definition{var, cond, sf.label};
  }
  for (const auto& [type, def] : chosen) {
    table.conditions[type] = def.condition;
    table.bound_var[type] = def.var;
    table.consumed_labels.insert(def.label);
  }
  return table;
}

FormulaPtr inject_antecedent_constraints(
    const DefinitionalTable& table, const FormulaPtr& f,
    const std::vector<std::pair<std::string, std::string>>& records, DiagnosticSink* diags) {
  auto sorted = records;
  std::sort(sorted.begin(), sorted.end());
  FormulaPtr out = f;
  // Wrap in reverse so the first variable's guard ends up outermost.
  for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
    const auto& [var, subtype] = *it;
    auto cond_it = table.conditions.find(subtype);
    if (cond_it == table.conditions.end()) {
      if (diags)
        diags->add(Severity::Warning,
                   "no definitional constraint for " + subtype + "; ?" + var + " left unguarded");
      continue;
    }
    FormulaPtr guard = substitute(cond_it->second, table.bound_var.at(subtype),
                                  Formula::variable(var));
    out = Formula::connective(Conn::Implies, {guard, out});
  }
  return out;
}

namespace {

FormulaPtr condition_conjunction(const DefinitionalTable& table, const KnowledgeBase& kb,
                                 const FormulaPtr& term, const std::string& type,
                                 bool with_ancestors, DiagnosticSink* diags) {
  std::vector<std::string> types{type};
  if (with_ancestors) {
    // Ancestors outside the promotion branch still carry information once
    // the sort itself captures the branch up to the base type.
    std::string target = kb.promotion_target(type);
    for (const auto& a : kb.ancestors(type)) {
      if (a == type || !is_proper_subtype(kb, a)) continue;
      if (kb.subclass_or_same(a, target)) continue;
      types.push_back(a);
    }
    std::sort(types.begin() + 1, types.end());
  }
  std::vector<FormulaPtr> conds;
  for (const auto& t : types) {
    auto it = table.conditions.find(t);
    if (it == table.conditions.end()) {
      if (diags)
        diags->add(Severity::Warning, "no definitional constraint for " + t +
                                          "; instance literal kept as is");
      if (t == type) return nullptr;
      continue;
    }
    conds.push_back(substitute(it->second, table.bound_var.at(t), term));
  }
  if (conds.empty()) return nullptr;
  if (conds.size() == 1) return conds[0];
  return Formula::connective(Conn::And, std::move(conds));
}

FormulaPtr replace_rec(const DefinitionalTable& table, const KnowledgeBase& kb,
                       const FormulaPtr& f, bool in_consequent, DiagnosticSink* diags) {
  if (f->kind == Formula::Kind::Apply && f->is_apply("instance") && f->args.size() == 2 &&
      f->args[1]->kind == Formula::Kind::Symbol &&
      is_proper_subtype(kb, f->args[1]->name)) {
    FormulaPtr repl = condition_conjunction(table, kb, f->args[0], f->args[1]->name,
                                            in_consequent, diags);
    return repl ? repl : f;
  }
  switch (f->kind) {
    case Formula::Kind::Connective: {
      std::vector<FormulaPtr> args;
      bool changed = false;
      for (const auto& a : f->args) {
        args.push_back(replace_rec(table, kb, a, false, diags));
        changed = changed || args.back() != a;
      }
      if (!changed) return f;
      return Formula::connective(f->conn, std::move(args));
    }
    case Formula::Kind::Quantifier: {
      FormulaPtr body = replace_rec(table, kb, f->args[0], in_consequent, diags);
      if (body == f->args[0]) return f;
      return Formula::quantifier(f->quant, f->vars, std::move(body));
    }
    default:
      return f;
  }
}

}  // namespace

FormulaPtr replace_consequent_instance(const DefinitionalTable& table, const KnowledgeBase& kb,
                                       const FormulaPtr& f, DiagnosticSink* diags) {
  // Quantifier prefix, then a top-level implication: its consequent gets the
  // ancestor treatment; everything else replaces with the type's own
  // condition only.
  if (f->kind == Formula::Kind::Quantifier) {
    FormulaPtr body = replace_consequent_instance(table, kb, f->args[0], diags);
    if (body == f->args[0]) return f;
    return Formula::quantifier(f->quant, f->vars, std::move(body));
  }
  if (f->kind == Formula::Kind::Connective && f->conn == Conn::Implies) {
    FormulaPtr lhs = replace_rec(table, kb, f->args[0], false, diags);
    FormulaPtr rhs = replace_rec(table, kb, f->args[1], true, diags);
    if (lhs == f->args[0] && rhs == f->args[1]) return f;
    return Formula::connective(Conn::Implies, {lhs, rhs});
  }
  return replace_rec(table, kb, f, false, diags);
}

namespace {

enum class Tri { True, False, Keep };

struct SimpResult {
  Tri tag = Tri::Keep;
  FormulaPtr f;
};

SimpResult simp(const KnowledgeBase& kb, const FormulaPtr& f, const SortEnv& env, TreePath& path,
                bool& contradiction, DiagnosticSink* diags) {
  if (f->kind == Formula::Kind::Apply && f->is_apply("instance") && f->args.size() == 2 &&
      f->args[1]->kind == Formula::Kind::Symbol && kBaseSorts.count(f->args[1]->name)) {
    const Formula& x = *f->args[0];
    std::string sort;
    if (x.kind == Formula::Kind::Variable) {
      auto it = env.var_types.find(x.name);
      if (it != env.var_types.end() && !it->second.is_class) sort = it->second.type;
    } else if (x.kind == Formula::Kind::IntLit) {
      sort = "Integer";
    } else if (x.kind == Formula::Kind::RealLit) {
      sort = "RealNumber";
    } else if (x.kind == Formula::Kind::Apply) {
      TreePath sub = path;
      sub.push_back(0);
      auto it = env.occurrence_return_types.find(path_key(sub));
      if (it != env.occurrence_return_types.end()) sort = it->second;
    }
    if (!sort.empty() && kb.real_like(sort)) {
      if (kb.subclass_or_same(sort, f->args[1]->name)) return {Tri::True, nullptr};
      contradiction = true;
      if (diags)
        diags->add(Severity::Error, "term of type " + sort + " asserted to be " +
                                        f->args[1]->name + ": not representable in TFF sorts");
      return {Tri::Keep, f};
    }
    return {Tri::Keep, f};
  }
  if (f->kind == Formula::Kind::Connective) {
    std::vector<SimpResult> rs;
    for (size_t i = 0; i < f->args.size(); ++i) {
      path.push_back(static_cast<int>(i));
      rs.push_back(simp(kb, f->args[i], env, path, contradiction, diags));
      path.pop_back();
    }
    auto rebuilt = [&](Conn c, std::vector<FormulaPtr> args) -> SimpResult {
      if (args.empty()) return {c == Conn::And ? Tri::True : Tri::False, nullptr};
      if (args.size() == 1 && (c == Conn::And || c == Conn::Or)) return {Tri::Keep, args[0]};
      return {Tri::Keep, Formula::connective(c, std::move(args))};
    };
    switch (f->conn) {
      case Conn::And: {
        std::vector<FormulaPtr> args;
        for (auto& r : rs) {
          if (r.tag == Tri::False) return {Tri::False, nullptr};
          if (r.tag == Tri::Keep) args.push_back(r.f);
        }
        return rebuilt(Conn::And, std::move(args));
      }
      case Conn::Or: {
        std::vector<FormulaPtr> args;
        for (auto& r : rs) {
          if (r.tag == Tri::True) return {Tri::True, nullptr};
          if (r.tag == Tri::Keep) args.push_back(r.f);
        }
        return rebuilt(Conn::Or, std::move(args));
      }
      case Conn::Not:
        if (rs[0].tag == Tri::True) return {Tri::False, nullptr};
        if (rs[0].tag == Tri::False) return {Tri::True, nullptr};
        return {Tri::Keep, rs[0].f == f->args[0] ? f : Formula::connective(Conn::Not, {rs[0].f})};
      case Conn::Implies:
        if (rs[0].tag == Tri::False || rs[1].tag == Tri::True) return {Tri::True, nullptr};
        if (rs[0].tag == Tri::True) return rs[1];
        if (rs[1].tag == Tri::False)
          return {Tri::Keep, Formula::connective(Conn::Not, {rs[0].f})};
        return {Tri::Keep, rs[0].f == f->args[0] && rs[1].f == f->args[1]
                               ? f
                               : Formula::connective(Conn::Implies, {rs[0].f, rs[1].f})};
      case Conn::Iff:
        if (rs[0].tag == Tri::True) return rs[1];
        if (rs[1].tag == Tri::True) return rs[0];
        if (rs[0].tag == Tri::False && rs[1].tag == Tri::False) return {Tri::True, nullptr};
        if (rs[0].tag == Tri::False)
          return {Tri::Keep, Formula::connective(Conn::Not, {rs[1].f})};
        if (rs[1].tag == Tri::False)
          return {Tri::Keep, Formula::connective(Conn::Not, {rs[0].f})};
        return {Tri::Keep, rs[0].f == f->args[0] && rs[1].f == f->args[1]
                               ? f
                               : Formula::connective(Conn::Iff, {rs[0].f, rs[1].f})};
    }
  }
  if (f->kind == Formula::Kind::Quantifier) {
    path.push_back(0);
    SimpResult r = simp(kb, f->args[0], env, path, contradiction, diags);
    path.pop_back();
    if (r.tag != Tri::Keep) return r;
    if (r.f == f->args[0]) return {Tri::Keep, f};
    // Binders whose every occurrence vanished stay harmless; keep them only
    // when still used.
    std::set<std::string> used = all_variables(*r.f);
    std::vector<std::string> vars;
    for (const auto& v : f->vars)
      if (used.count(v)) vars.push_back(v);
    if (vars.empty()) return {Tri::Keep, r.f};
    return {Tri::Keep, Formula::quantifier(f->quant, std::move(vars), r.f)};
  }
  return {Tri::Keep, f};
}

}  // namespace

std::optional<FormulaPtr> simplify_base_instances(const KnowledgeBase& kb, const FormulaPtr& f,
                                                  const SortEnv& env, bool& contradiction,
                                                  DiagnosticSink* diags) {
  contradiction = false;
  TreePath path;
  SimpResult r = simp(kb, f, env, path, contradiction, diags);
  if (contradiction) return std::nullopt;
  if (r.tag == Tri::True) return std::nullopt;  // tautology, droppable
  if (r.tag == Tri::False) {
    contradiction = true;
    if (diags) diags->add(Severity::Error, "axiom reduces to falsity after sort simplification");
    return std::nullopt;
  }
  return r.f;
}

}  // namespace kif2tff
