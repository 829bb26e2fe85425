#include "kif2tff/sort_inference.hpp"

#include <algorithm>
#include <random>

namespace kif2tff {

namespace {

const char* kInteger = "Integer";
const char* kRational = "RationalNumber";
const char* kReal = "RealNumber";

// Meet without the RealNumber carve-out: the more specific type when
// comparable, the most specific common Quantity ancestor otherwise.
std::string meet_strict(const KnowledgeBase& kb, const std::string& t1, const std::string& t2) {
  if (t1 == t2) return t1;
  if (kb.subclass_or_same(t1, t2)) return t1;
  if (kb.subclass_or_same(t2, t1)) return t2;
  // Borrow the common-ancestor fallback, then undo the carve-out cases.
  if (t1 == kReal && kb.classify(t2) == NumericClass::IntegerLike) return t2;
  if (t2 == kReal && kb.classify(t1) == NumericClass::IntegerLike) return t1;
  if (t1 == kRational && kb.classify(t2) == NumericClass::IntegerLike) return t2;
  if (t2 == kRational && kb.classify(t1) == NumericClass::IntegerLike) return t1;
  return kb.meet_numeric(t1, t2);
}

struct Node {
  const Formula* term = nullptr;
  std::string path;
  enum class Kind { Var, IntLit, RealLit, Const, App };
  Kind kind = Kind::Const;
  std::string head;             // App: relation/function name
  const Signature* sig = nullptr;
  bool is_atom = false;          // App in formula position
  bool is_extended = false;      // binary occurrence of an extended relation
  bool is_poly = false;          // quantity-polymorphic function occurrence
  std::vector<int> children;     // indexes of argument term nodes
  std::string sort;              // current type; App: return (or operand) type
};

enum class Phase { Collect, Constrain, Propagate };

class Engine {
 public:
  Engine(const KnowledgeBase& kb, const Formula& f, DiagnosticSink* diags)
      : kb_(kb), diags_(diags) {
    TreePath path;
    walk_formula(f, path);
  }

  void import_env(const SortEnv& env) {
    vars_ = env.var_types;
    for (auto& n : nodes_) {
      if (n.kind != Node::Kind::App) continue;
      auto it = env.occurrence_return_types.find(n.path);
      if (it != env.occurrence_return_types.end()) n.sort = it->second;
    }
    fatal_ = env.fatal;
  }

  void export_env(SortEnv& env) const {
    env.var_types = vars_;
    env.occurrence_return_types.clear();
    for (const auto& n : nodes_) {
      if (n.kind != Node::Kind::App) continue;
      if (n.is_atom && !n.is_extended) continue;  // plain relations carry no sort
      env.occurrence_return_types[n.path] = n.sort;
    }
    env.fatal = env.fatal || fatal_;
  }

  void seed(const SeedConstraints& seeds) {
    for (auto& n : nodes_) {
      if (n.kind != Node::Kind::App) continue;
      auto it = seeds.find(n.head);
      if (it == seeds.end()) continue;
      const auto& per_pos = it->second;  // [return, arg1, arg2, ...] base sorts; "" skips
      if (!per_pos.empty() && !per_pos[0].empty() && !n.is_atom)
        assign_app_return(n, per_pos[0], true);
      for (size_t i = 0; i < n.children.size() && i + 1 < per_pos.size(); ++i) {
        if (per_pos[i + 1].empty()) continue;
        narrow_child(n, static_cast<int>(i), per_pos[i + 1], true);
      }
    }
  }

  int run(Phase phase, unsigned order_seed) {
    std::vector<int> order(nodes_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    if (order_seed) {
      std::mt19937 rng(order_seed);
      std::shuffle(order.begin(), order.end(), rng);
    }
    int sweeps = 0;
    const int cap = static_cast<int>(vars_.size() + nodes_.size()) * 12 + 8;
    bool changed = true;
    while (changed) {
      changed = false;
      ++sweeps;
      for (int idx : order) {
        Node& n = nodes_[idx];
        if (n.kind != Node::Kind::App) continue;
        if (apply_domains(n, phase)) changed = true;
        if (apply_special_atoms(n)) changed = true;
        if (phase != Phase::Collect) {
          if (n.is_poly && apply_poly_unify(n)) changed = true;
          if (n.is_extended && apply_extended_unify(n)) changed = true;
        }
      }
      if (sweeps > cap) {
        note(Severity::Warning, "sort inference did not stabilize; stopping at iteration cap");
        break;
      }
    }
    return sweeps;
  }

  const std::vector<Node>& nodes() const { return nodes_; }
  std::string sort_of(const Node& n) const {
    if (n.kind == Node::Kind::Var) {
      auto it = vars_.find(n.term->name);
      return it == vars_.end() ? "Entity" : it->second.type;
    }
    return n.sort;
  }

 private:
  void note(Severity sev, const std::string& msg) {
    if (!diags_) return;
    for (const auto& d : diags_->records())
      if (d.message == msg) return;  // once per axiom
    diags_->add(sev, msg);
  }

  int add_term(const Formula& f, TreePath& path) {
    Node n;
    n.term = &f;
    n.path = path_key(path);
    switch (f.kind) {
      case Formula::Kind::Variable:
        n.kind = Node::Kind::Var;
        vars_.try_emplace(f.name);
        break;
      case Formula::Kind::IntLit:
        n.kind = Node::Kind::IntLit;
        n.sort = kInteger;
        break;
      case Formula::Kind::RealLit:
        n.kind = Node::Kind::RealLit;
        n.sort = kReal;
        break;
      case Formula::Kind::Symbol: {
        n.kind = Node::Kind::Const;
        n.sort = "Entity";
        auto it = kb_.instance_of.find(f.name);
        if (it != kb_.instance_of.end()) {
          for (const auto& c : it->second) {
            auto m = kb_.meet_general(n.sort, c);
            if (m) n.sort = *m;
          }
        }
        break;
      }
      case Formula::Kind::Apply: {
        n.kind = Node::Kind::App;
        n.head = f.name;
        n.sig = kb_.find_signature(f.name);
        if (!n.sig && !f.has_variable_head())
          note(Severity::Warning, "unknown relation or function '" + f.name +
                                      "': arguments treated as individuals");
        if (n.sig && n.sig->is_function()) {
          n.sort = *n.sig->range_type;
          n.is_poly = kb_.classify(n.sort) == NumericClass::QuantityLike;
          for (const auto& at : n.sig->arg_types)
            if (at.empty() || kb_.classify(at) != NumericClass::QuantityLike) n.is_poly = false;
        }
        int self = static_cast<int>(nodes_.size());
        nodes_.push_back(n);
        for (size_t i = 0; i < f.args.size(); ++i) {
          path.push_back(static_cast<int>(i));
          int c = add_term(*f.args[i], path);
          path.pop_back();
          nodes_[self].children.push_back(c);
        }
        return self;
      }
      default:
        break;
    }
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
  }

  void walk_formula(const Formula& f, TreePath& path) {
    switch (f.kind) {
      case Formula::Kind::Connective:
        for (size_t i = 0; i < f.args.size(); ++i) {
          path.push_back(static_cast<int>(i));
          walk_formula(*f.args[i], path);
          path.pop_back();
        }
        return;
      case Formula::Kind::Quantifier:
        for (const auto& v : f.vars) vars_.try_emplace(v);
        path.push_back(0);
        walk_formula(*f.args[0], path);
        path.pop_back();
        return;
      case Formula::Kind::Apply: {
        int idx = add_term(f, path);
        Node& n = nodes_[idx];
        n.is_atom = true;
        n.is_extended = kb_.extended_to_quantities.count(f.name) > 0 && f.args.size() == 2;
        n.is_poly = false;
        return;
      }
      default:
        return;  // stray term in formula position; emitter will complain
    }
  }

  bool assign_var(const std::string& name, const std::string& t) {
    VarInfo& v = vars_[name];
    if (v.type == t) return false;
    v.type = t;
    return true;
  }

  bool assign_app_return(Node& n, const std::string& t, bool force) {
    if (!force && !n.is_poly) return false;
    if (sort_of(n) == t) return false;
    auto m = kb_.meet_general(sort_of(n), t);
    if (!m) {
      note(Severity::Warning, "cannot narrow return of '" + n.head + "' from " + sort_of(n) +
                                  " to " + t);
      return false;
    }
    if (n.sort == *m) return false;
    n.sort = *m;
    return true;
  }

  // Narrow the child in position i of app `n` towards type t.
  bool narrow_child(Node& n, int i, const std::string& t, bool force_returns) {
    Node& c = nodes_[n.children[i]];
    switch (c.kind) {
      case Node::Kind::Var: {
        const std::string cur = sort_of(c);
        auto m = kb_.meet_general(cur, t);
        if (!m) {
          note(Severity::Warning, "contradictory types for ?" + c.term->name + ": " + cur +
                                      " vs " + t + " (keeping " + cur + ")");
          return false;
        }
        return *m != cur && assign_var(c.term->name, *m);
      }
      case Node::Kind::App:
        if (c.is_poly || force_returns) return assign_app_return(c, t, force_returns);
        if (!kb_.meet_general(sort_of(c), t))
          note(Severity::Warning, "argument " + std::to_string(i + 1) + " of '" + n.head +
                                      "' has type " + sort_of(c) + ", expected " + t);
        return false;
      case Node::Kind::IntLit:
        if (kb_.classify(t) == NumericClass::NonNumeric && t != "Entity")
          note(Severity::Warning, "integer literal in non-numeric position of '" + n.head + "'");
        return false;
      case Node::Kind::RealLit:
        if (kb_.classify(t) == NumericClass::IntegerLike) {
          note(Severity::Error, "real literal where an Integer is required by '" + n.head +
                                    "': no safe coercion");
          fatal_ = true;
        }
        return false;
      case Node::Kind::Const:
        if (!kb_.meet_general(sort_of(c), t))
          note(Severity::Warning, "constant '" + c.term->name + "' of type " + sort_of(c) +
                                      " where '" + n.head + "' expects " + t);
        return false;
    }
    return false;
  }

  bool apply_domains(Node& n, Phase phase) {
    bool changed = false;
    if (!n.sig) return false;
    for (size_t i = 0; i < n.children.size(); ++i) {
      if (i >= n.sig->arg_types.size()) break;
      const std::string& declared = n.sig->arg_types[i];
      if (declared.empty()) continue;
      Node& c = nodes_[n.children[i]];
      if (c.kind == Node::Kind::Var && i < n.sig->arg_is_class.size() && n.sig->arg_is_class[i]) {
        VarInfo& v = vars_[c.term->name];
        if (!v.is_class) {
          v.is_class = true;
          changed = true;
        }
      }
      if (c.kind == Node::Kind::App && phase != Phase::Propagate) continue;
      if (narrow_child(n, static_cast<int>(i), declared, false)) changed = true;
    }
    return changed;
  }

  // (instance ?X C) and (subclass ?X C) literals type their variables.
  bool apply_special_atoms(Node& n) {
    if (!n.is_atom || n.children.size() != 2) return false;
    if (n.head != "instance" && n.head != "subclass") return false;
    bool changed = false;
    Node& lhs = nodes_[n.children[0]];
    Node& rhs = nodes_[n.children[1]];
    if (n.head == "subclass" && lhs.kind == Node::Kind::Var) {
      VarInfo& v = vars_[lhs.term->name];
      if (!v.is_class) {
        v.is_class = true;
        changed = true;
      }
    }
    if (rhs.kind == Node::Kind::Const && lhs.kind == Node::Kind::Var && kb_.known_type(rhs.term->name)) {
      if (narrow_child(n, 0, rhs.term->name, false)) changed = true;
    }
    if (rhs.kind == Node::Kind::Var) {
      VarInfo& v = vars_[rhs.term->name];
      if (!v.is_class) {
        v.is_class = true;
        changed = true;
      }
    }
    return changed;
  }

  bool apply_poly_unify(Node& n) {
    std::vector<std::string> candidates;
    for (int ci : n.children) {
      Node& c = nodes_[ci];
      if (c.kind == Node::Kind::IntLit) continue;  // flexible; realified later
      const std::string s = sort_of(c);
      if (kb_.quantity_like(s)) candidates.push_back(s);
    }
    if (n.sig && n.sig->range_type && n.sort != *n.sig->range_type) candidates.push_back(n.sort);
    if (candidates.empty()) return false;
    std::string unified = candidates[0];
    for (size_t i = 1; i < candidates.size(); ++i) unified = meet_strict(kb_, unified, candidates[i]);
    bool changed = false;
    for (size_t i = 0; i < n.children.size(); ++i) {
      Node& c = nodes_[n.children[i]];
      if (c.kind == Node::Kind::IntLit) continue;
      if (c.kind == Node::Kind::RealLit) {
        if (kb_.classify(unified) == NumericClass::IntegerLike) {
          note(Severity::Error,
               "real literal forced to Integer inside '" + n.head + "': no safe coercion");
          fatal_ = true;
        }
        continue;
      }
      if (sort_of(c) != unified && narrow_child(n, static_cast<int>(i), unified, false))
        changed = true;
    }
    if (assign_app_return(n, unified, false)) changed = true;
    return changed;
  }

  bool apply_extended_unify(Node& n) {
    Node& a = nodes_[n.children[0]];
    Node& b = nodes_[n.children[1]];
    const std::string sa = sort_of(a);
    const std::string sb = sort_of(b);
    if (!kb_.quantity_like(sa) || !kb_.quantity_like(sb)) {
      // A quantity-typed side pulls an untyped variable partner down, as in
      // (equal (CeilingFn ?N) ?INT) giving ?INT the function's return type.
      auto pull = [&](const std::string& src, int dst_idx) {
        Node& dst = nodes_[n.children[dst_idx]];
        if (dst.kind != Node::Kind::Var) return false;
        const std::string cur = sort_of(dst);
        auto m = kb_.meet_general(cur, src);
        if (!m || *m == cur) return false;
        return assign_var(dst.term->name, *m);
      };
      if (kb_.quantity_like(sa) && !kb_.quantity_like(sb)) return pull(sa, 1);
      if (kb_.quantity_like(sb) && !kb_.quantity_like(sa)) return pull(sb, 0);
      return false;  // individual-level occurrence; operand sort stays ""
    }
    // Carve-out: a RealNumber (or RationalNumber) operand never drags an
    // integer-typed operand up; the pair stays mixed for later coercion.
    auto carved = [&](const std::string& x, const std::string& y) {
      return (x == kReal || x == kRational) && kb_.classify(y) == NumericClass::IntegerLike &&
             a.kind != Node::Kind::IntLit && b.kind != Node::Kind::IntLit;
    };
    if (carved(sa, sb) || carved(sb, sa)) {
      std::string op = kb_.meet_numeric(sa, sb);
      if ((sa == kRational || sb == kRational) && diags_)
        note(Severity::Note, "mixed RationalNumber/Integer comparison under '" + n.head +
                                 "' kept for coercion");
      if (n.sort == op) return false;
      n.sort = op;
      return true;
    }
    std::vector<std::string> candidates;
    if (a.kind != Node::Kind::IntLit) candidates.push_back(sa);
    if (b.kind != Node::Kind::IntLit) candidates.push_back(sb);
    if (candidates.empty()) candidates.push_back(kInteger);
    std::string unified = candidates[0];
    for (size_t i = 1; i < candidates.size(); ++i)
      unified = kb_.meet_numeric(unified, candidates[i]);
    bool changed = false;
    for (int i = 0; i < 2; ++i) {
      Node& c = nodes_[n.children[i]];
      if (c.kind == Node::Kind::IntLit) continue;
      if (c.kind == Node::Kind::RealLit) continue;  // meet_numeric kept Real
      if (sort_of(c) != unified && narrow_child(n, i, unified, false)) changed = true;
    }
    if (n.sort != unified) {
      n.sort = unified;
      changed = true;
    }
    return changed;
  }

  const KnowledgeBase& kb_;
  DiagnosticSink* diags_;
  std::vector<Node> nodes_;
  std::map<std::string, VarInfo> vars_;
  bool fatal_ = false;
};

bool is_poly_function(const KnowledgeBase& kb, const std::string& head) {
  const Signature* sig = kb.find_signature(head);
  if (!sig || !sig->is_function()) return false;
  if (kb.classify(*sig->range_type) != NumericClass::QuantityLike) return false;
  for (const auto& at : sig->arg_types)
    if (at.empty() || kb.classify(at) != NumericClass::QuantityLike) return false;
  return true;
}

FormulaPtr realify_literals(const KnowledgeBase& kb, const FormulaPtr& f, TreePath& path,
                            bool parent_realifies, SortEnv& env) {
  switch (f->kind) {
    case Formula::Kind::IntLit:
      if (parent_realifies) {
        env.literal_promotions.insert(path_key(path));
        return Formula::real_lit(f->name + ".0");
      }
      return f;
    case Formula::Kind::Variable:
    case Formula::Kind::Symbol:
    case Formula::Kind::RealLit:
      return f;
    default:
      break;
  }
  bool child_realifies = false;
  if (f->kind == Formula::Kind::Apply) {
    bool relevant = kb.extended_to_quantities.count(f->name) > 0 && f->args.size() == 2;
    relevant = relevant || is_poly_function(kb, f->name);
    if (relevant) {
      auto it = env.occurrence_return_types.find(path_key(path));
      child_realifies = it != env.occurrence_return_types.end() && it->second == kReal;
    }
  }
  std::vector<FormulaPtr> args;
  args.reserve(f->args.size());
  bool changed = false;
  for (size_t i = 0; i < f->args.size(); ++i) {
    path.push_back(static_cast<int>(i));
    args.push_back(realify_literals(kb, f->args[i], path, child_realifies, env));
    path.pop_back();
    changed = changed || args.back() != f->args[i];
  }
  if (!changed) return f;
  switch (f->kind) {
    case Formula::Kind::Apply:
      return Formula::apply(f->name, std::move(args));
    case Formula::Kind::Connective:
      return Formula::connective(f->conn, std::move(args));
    case Formula::Kind::Quantifier:
      return Formula::quantifier(f->quant, f->vars, std::move(args[0]));
    default:
      return f;
  }
}

}  // namespace

SortEnv collect_variable_types(const KnowledgeBase& kb, const Formula& f, DiagnosticSink* diags) {
  Engine e(kb, f, diags);
  SortEnv env;
  e.run(Phase::Collect, 0);
  e.export_env(env);
  return env;
}

SortEnv constrain_comparison_types(const KnowledgeBase& kb, const Formula& f, SortEnv env,
                                   DiagnosticSink* diags) {
  Engine e(kb, f, diags);
  e.import_env(env);
  e.run(Phase::Constrain, 0);
  e.export_env(env);
  return env;
}

SortEnv propagate_function_types(const KnowledgeBase& kb, const Formula& f, SortEnv env,
                                 DiagnosticSink* diags) {
  Engine e(kb, f, diags);
  e.import_env(env);
  env.fixpoint_iterations = e.run(Phase::Propagate, 0);
  e.export_env(env);
  return env;
}

SortEnv promote_types(const KnowledgeBase& kb, SortEnv env) {
  for (auto& [name, info] : env.var_types) {
    if (info.is_class) continue;
    std::string target = kb.promotion_target(info.type);
    if (target != info.type) {
      if (kb.real_like(info.type)) env.subtype_records.emplace_back(name, info.type);
      info.type = target;
    }
  }
  for (auto& [path, t] : env.occurrence_return_types)
    if (!t.empty()) t = kb.promotion_target(t);
  std::sort(env.subtype_records.begin(), env.subtype_records.end());
  env.subtype_records.erase(std::unique(env.subtype_records.begin(), env.subtype_records.end()),
                            env.subtype_records.end());
  return env;
}

std::pair<FormulaPtr, SortEnv> promote_integer_literals(const KnowledgeBase& kb,
                                                        const FormulaPtr& f, SortEnv env) {
  TreePath path;
  FormulaPtr out = realify_literals(kb, f, path, false, env);
  return {out, std::move(env)};
}

SortEnv infer_all(const KnowledgeBase& kb, const Formula& f, DiagnosticSink* diags,
                  const SeedConstraints* seeds, unsigned order_seed) {
  Engine e(kb, f, diags);
  if (seeds) e.seed(*seeds);
  e.run(Phase::Collect, order_seed);
  e.run(Phase::Constrain, order_seed);
  SortEnv env;
  env.fixpoint_iterations = e.run(Phase::Propagate, order_seed);
  e.export_env(env);
  return promote_types(kb, env);
}

}  // namespace kif2tff
