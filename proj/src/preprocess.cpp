#include "kif2tff/preprocess.hpp"

#include <algorithm>

#include "kif2tff/sort_inference.hpp"

namespace kif2tff {

namespace {

const std::set<std::string> kArithHeads = {"AdditionFn", "SubtractionFn", "MultiplicationFn",
                                           "DivisionFn"};

void collect_symbols(const Formula& f, std::set<std::string>& out) {
  if (f.kind == Formula::Kind::Symbol) out.insert(f.name);
  if (f.kind == Formula::Kind::Apply && !f.has_variable_head()) out.insert(f.name);
  for (const auto& a : f.args) collect_symbols(*a, out);
}

void collect_predicate_variables(const Formula& f, std::set<std::string>& out) {
  if (f.has_variable_head() && f.name[0] == '?') out.insert(f.name.substr(1));
  for (const auto& a : f.args) collect_predicate_variables(*a, out);
}

// The antecedent conjuncts of an implication, quantifiers stripped and
// nested conjunctions flattened.
void flatten_conjuncts(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  if (f->kind == Formula::Kind::Connective && f->conn == Conn::And) {
    for (const auto& a : f->args) flatten_conjuncts(a, out);
  } else {
    out.push_back(f);
  }
}

FormulaPtr strip_quantifiers(const FormulaPtr& f) {
  FormulaPtr cur = f;
  while (cur->kind == Formula::Kind::Quantifier) cur = cur->args[0];
  return cur;
}

// Removes atoms matching `victim` from the conjunctive structure of f,
// collapsing degenerate connectives.
FormulaPtr remove_atom(const FormulaPtr& f, const Formula& victim) {
  if (structurally_equal(*f, victim)) return nullptr;
  switch (f->kind) {
    case Formula::Kind::Connective: {
      if (f->conn == Conn::And || f->conn == Conn::Or) {
        std::vector<FormulaPtr> args;
        bool changed = false;
        for (const auto& a : f->args) {
          FormulaPtr r = remove_atom(a, victim);
          if (r != a) changed = true;
          if (r) args.push_back(r);
        }
        if (!changed) return f;
        if (args.empty()) return nullptr;
        if (args.size() == 1) return args[0];
        return Formula::connective(f->conn, std::move(args));
      }
      FormulaPtr lhs = remove_atom(f->args[0], victim);
      FormulaPtr rhs = f->args.size() > 1 ? remove_atom(f->args[1], victim) : nullptr;
      if (f->conn == Conn::Not) return lhs == f->args[0] ? f : lhs ? Formula::connective(Conn::Not, {lhs}) : nullptr;
      if (lhs == f->args[0] && rhs == f->args[1]) return f;
      if (!lhs) return rhs;  // antecedent vanished: the consequent stands alone
      if (!rhs) return nullptr;
      return Formula::connective(f->conn, {lhs, rhs});
    }
    case Formula::Kind::Quantifier: {
      FormulaPtr body = remove_atom(f->args[0], victim);
      if (body == f->args[0]) return f;
      if (!body) return nullptr;
      return Formula::quantifier(f->quant, f->vars, std::move(body));
    }
    default:
      return f;
  }
}

FormulaPtr drop_binder(const FormulaPtr& f, const std::string& var) {
  switch (f->kind) {
    case Formula::Kind::Quantifier: {
      FormulaPtr body = drop_binder(f->args[0], var);
      std::vector<std::string> vars;
      for (const auto& v : f->vars)
        if (v != var) vars.push_back(v);
      if (vars == f->vars && body == f->args[0]) return f;
      if (vars.empty()) return body;
      return Formula::quantifier(f->quant, std::move(vars), std::move(body));
    }
    case Formula::Kind::Connective: {
      std::vector<FormulaPtr> args;
      bool changed = false;
      for (const auto& a : f->args) {
        args.push_back(drop_binder(a, var));
        changed = changed || args.back() != a;
      }
      if (!changed) return f;
      return Formula::connective(f->conn, std::move(args));
    }
    default:
      return f;
  }
}

}  // namespace

bool contains_row_variable(const Formula& f) {
  if (f.kind == Formula::Kind::Variable && !f.name.empty() && f.name[0] == '@') return true;
  if (f.kind == Formula::Kind::Apply && !f.name.empty() && f.name[0] == '@') return true;
  if (f.kind == Formula::Kind::Quantifier)
    for (const auto& v : f.vars)
      if (!v.empty() && v[0] == '@') return true;
  for (const auto& a : f.args)
    if (contains_row_variable(*a)) return true;
  return false;
}

std::vector<SourcedFormula> instantiate_predicate_variables(const KnowledgeBase& kb,
                                                            const SourcedFormula& sf,
                                                            DiagnosticSink* diags) {
  std::set<std::string> pvars;
  collect_predicate_variables(*sf.formula, pvars);
  if (pvars.empty()) return {sf};

  const std::string pv = *pvars.begin();

  // The instance literal constraining the predicate variable, looked up in
  // the antecedent (or the whole body when there is no implication).
  FormulaPtr stripped = strip_quantifiers(sf.formula);
  FormulaPtr scope = stripped;
  if (stripped->kind == Formula::Kind::Connective && stripped->conn == Conn::Implies)
    scope = stripped->args[0];
  std::vector<FormulaPtr> conjuncts;
  flatten_conjuncts(scope, conjuncts);
  FormulaPtr constraint;
  std::string cls;
  for (const auto& c : conjuncts) {
    if (c->is_apply("instance") && c->args.size() == 2 &&
        c->args[0]->kind == Formula::Kind::Variable && c->args[0]->name == pv &&
        c->args[1]->kind == Formula::Kind::Symbol) {
      constraint = c;
      cls = c->args[1]->name;
      break;
    }
  }
  if (!constraint) {
    if (diags)
      diags->add(Severity::Warning,
                 "predicate variable ?" + pv + " has no class constraint; formula dropped",
                 sf.file, sf.line, sf.label);
    return {};
  }

  std::vector<std::string> relations;
  for (const auto& [constant, classes] : kb.instance_of)
    if (classes.count(cls)) relations.push_back(constant);

  std::vector<SourcedFormula> out;
  int n = 0;
  for (const auto& rel : relations) {
    FormulaPtr inst = drop_binder(sf.formula, pv);
    inst = substitute(inst, pv, Formula::symbol(rel));
    Formula victim;
    victim.kind = Formula::Kind::Apply;
    victim.name = "instance";
    victim.args = {Formula::symbol(rel), Formula::symbol(cls)};
    FormulaPtr cleaned = remove_atom(inst, victim);
    if (!cleaned) continue;
    SourcedFormula copy = sf;
    copy.formula = cleaned;
    copy.label = sf.label + "p" + std::to_string(++n);
    // More than one predicate variable expands recursively.
    auto expanded = instantiate_predicate_variables(kb, copy, diags);
    out.insert(out.end(), expanded.begin(), expanded.end());
  }
  return out;
}

ExclusionResult exclude_unsupported(const KnowledgeBase& kb,
                                    const std::vector<SourcedFormula>& axioms,
                                    const ExclusionPolicy& policy, DiagnosticSink* diags) {
  ExclusionResult result;
  for (const auto& sf : axioms) {
    std::set<std::string> symbols;
    collect_symbols(*sf.formula, symbols);
    std::string hit;
    for (const auto& t : policy.excluded_types)
      if (symbols.count(t)) {
        hit = t;
        break;
      }
    if (hit.empty()) {
      DiagnosticSink scratch;
      SortEnv env = collect_variable_types(kb, *sf.formula, &scratch);
      for (const auto& [var, info] : env.var_types) {
        if (policy.excluded_types.count(info.type)) {
          hit = info.type;
          break;
        }
      }
    }
    if (hit.empty()) {
      result.kept.push_back(sf);
    } else {
      result.dropped.push_back(sf);
      if (diags)
        diags->add(Severity::Note, "axiom dropped: mentions excluded type " + hit, sf.file,
                   sf.line, sf.label);
    }
  }
  return result;
}

namespace {

struct QuantitySplit {
  std::string number_var;
  std::string unit_var;
};

class ArithRewriter {
 public:
  ArithRewriter(const KnowledgeBase& kb, const SourcedFormula& sf, DiagnosticSink* diags)
      : kb_(kb), sf_(sf), diags_(diags) {}

  FormulaPtr run() {
    DiagnosticSink scratch;
    SortEnv env = collect_variable_types(kb_, *sf_.formula, &scratch);
    std::set<std::string> arith_vars;
    find_arith_vars(*sf_.formula, false, arith_vars);
    std::set<std::string> taken = all_variables(*sf_.formula);
    for (const auto& v : arith_vars) {
      auto it = env.var_types.find(v);
      if (it == env.var_types.end() || !kb_.strict_quantity(it->second.type)) continue;
      QuantitySplit split;
      split.number_var = fresh("N__" + v, taken);
      split.unit_var = fresh("U__" + v, taken);
      splits_[v] = split;
    }
    if (splits_.empty()) return sf_.formula;
    check_mixed_use(*sf_.formula);
    return rewrite(sf_.formula, false);
  }

 private:
  static std::string fresh(const std::string& base, std::set<std::string>& taken) {
    std::string name = base;
    for (int i = 1; taken.count(name); ++i) name = base + std::to_string(i);
    taken.insert(name);
    return name;
  }

  void find_arith_vars(const Formula& f, bool in_arith, std::set<std::string>& out) {
    bool arith = f.kind == Formula::Kind::Apply && kArithHeads.count(f.name) > 0;
    if (arith)
      for (const auto& a : f.args)
        if (a->kind == Formula::Kind::Variable) out.insert(a->name);
    for (const auto& a : f.args) find_arith_vars(*a, in_arith || arith, out);
  }

  // A split variable may not appear both as an arithmetic operand and nested
  // below a non-arithmetic function inside the same arithmetic term.
  void check_mixed_use(const Formula& f) {
    if (f.kind == Formula::Kind::Apply && kArithHeads.count(f.name)) {
      std::set<std::string> direct, nested;
      scan_arith(f, direct, nested, true);
      for (const auto& v : direct)
        if (nested.count(v) && splits_.count(v) && diags_)
          diags_->add(Severity::Error,
                      "quantity variable ?" + v +
                          " used both as a raw quantity and as a number in one arithmetic term",
                      sf_.file, sf_.line, sf_.label);
      return;
    }
    for (const auto& a : f.args) check_mixed_use(*a);
  }

  void scan_arith(const Formula& f, std::set<std::string>& direct, std::set<std::string>& nested,
                  bool top) {
    for (const auto& a : f.args) {
      if (a->kind == Formula::Kind::Variable) {
        (top ? direct : nested).insert(a->name);
      } else if (a->kind == Formula::Kind::Apply) {
        scan_arith(*a, direct, nested, kArithHeads.count(a->name) > 0 && top);
      }
    }
  }

  FormulaPtr rewrite(const FormulaPtr& f, bool in_arith) {
    switch (f->kind) {
      case Formula::Kind::Variable: {
        auto it = splits_.find(f->name);
        if (it == splits_.end()) return f;
        if (in_arith) return Formula::variable(it->second.number_var);
        return Formula::apply("MeasureFn", {Formula::variable(it->second.number_var),
                                            Formula::variable(it->second.unit_var)});
      }
      case Formula::Kind::Symbol:
      case Formula::Kind::IntLit:
      case Formula::Kind::RealLit:
        return f;
      case Formula::Kind::Apply: {
        bool arith = kArithHeads.count(f->name) > 0;
        std::vector<FormulaPtr> args;
        for (const auto& a : f->args) args.push_back(rewrite(a, arith || in_arith));
        FormulaPtr out = Formula::apply(f->name, std::move(args));
        if (arith && !in_arith) {
          // Maximal arithmetic term over a split quantity: the result is a
          // number, re-wrapped with the unit of the first split variable.
          std::string unit = first_split_unit(*f);
          if (!unit.empty())
            out = Formula::apply("MeasureFn", {out, Formula::variable(unit)});
        }
        return out;
      }
      case Formula::Kind::Connective: {
        std::vector<FormulaPtr> args;
        for (const auto& a : f->args) args.push_back(rewrite(a, false));
        return Formula::connective(f->conn, std::move(args));
      }
      case Formula::Kind::Quantifier: {
        std::vector<std::string> vars;
        for (const auto& v : f->vars) {
          auto it = splits_.find(v);
          if (it == splits_.end()) {
            vars.push_back(v);
          } else {
            vars.push_back(it->second.number_var);
            vars.push_back(it->second.unit_var);
          }
        }
        return Formula::quantifier(f->quant, std::move(vars), rewrite(f->args[0], false));
      }
    }
    return f;
  }

  std::string first_split_unit(const Formula& arith) {
    for (const auto& a : arith.args) {
      if (a->kind == Formula::Kind::Variable) {
        auto it = splits_.find(a->name);
        if (it != splits_.end()) return it->second.unit_var;
      } else if (a->kind == Formula::Kind::Apply && kArithHeads.count(a->name)) {
        std::string u = first_split_unit(*a);
        if (!u.empty()) return u;
      }
    }
    return "";
  }

  const KnowledgeBase& kb_;
  const SourcedFormula& sf_;
  DiagnosticSink* diags_;
  std::map<std::string, QuantitySplit> splits_;
};

}  // namespace

FormulaPtr rewrite_quantity_arithmetic(const KnowledgeBase& kb, const SourcedFormula& sf,
                                       DiagnosticSink* diags) {
  ArithRewriter rw(kb, sf, diags);
  return rw.run();
}

}  // namespace kif2tff
