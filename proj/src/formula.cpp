#include "kif2tff/formula.hpp"

#include <algorithm>
#include <sstream>

namespace kif2tff {

static FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

FormulaPtr Formula::variable(std::string name) {
  Formula f;
  f.kind = Kind::Variable;
  f.name = std::move(name);
  return make(std::move(f));
}

FormulaPtr Formula::symbol(std::string name) {
  Formula f;
  f.kind = Kind::Symbol;
  f.name = std::move(name);
  return make(std::move(f));
}

FormulaPtr Formula::int_lit(std::string text) {
  Formula f;
  f.kind = Kind::IntLit;
  f.name = std::move(text);
  return make(std::move(f));
}

FormulaPtr Formula::real_lit(std::string text) {
  Formula f;
  f.kind = Kind::RealLit;
  f.name = std::move(text);
  return make(std::move(f));
}

FormulaPtr Formula::apply(std::string head, std::vector<FormulaPtr> args) {
  Formula f;
  f.kind = Kind::Apply;
  f.name = std::move(head);
  f.args = std::move(args);
  return make(std::move(f));
}

FormulaPtr Formula::connective(Conn c, std::vector<FormulaPtr> args) {
  Formula f;
  f.kind = Kind::Connective;
  f.conn = c;
  f.args = std::move(args);
  return make(std::move(f));
}

FormulaPtr Formula::quantifier(Quant q, std::vector<std::string> vars, FormulaPtr body) {
  Formula f;
  f.kind = Kind::Quantifier;
  f.quant = q;
  f.vars = std::move(vars);
  f.args.push_back(std::move(body));
  return make(std::move(f));
}

const char* conn_name(Conn c) {
  switch (c) {
    case Conn::And: return "and";
    case Conn::Or: return "or";
    case Conn::Not: return "not";
    case Conn::Implies: return "=>";
    case Conn::Iff: return "<=>";
  }
  return "?";
}

const char* quant_name(Quant q) { return q == Quant::Forall ? "forall" : "exists"; }

bool structurally_equal(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Formula::Kind::Variable:
    case Formula::Kind::Symbol:
    case Formula::Kind::IntLit:
    case Formula::Kind::RealLit:
      return a.name == b.name;
    case Formula::Kind::Apply:
      if (a.name != b.name) return false;
      break;
    case Formula::Kind::Connective:
      if (a.conn != b.conn) return false;
      break;
    case Formula::Kind::Quantifier:
      if (a.quant != b.quant || a.vars != b.vars) return false;
      break;
  }
  if (a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!structurally_equal(*a.args[i], *b.args[i])) return false;
  return true;
}

static void print_rec(const Formula& f, std::ostream& out) {
  switch (f.kind) {
    case Formula::Kind::Variable:
      out << (f.name.empty() || f.name[0] != '@' ? "?" : "") << f.name;
      return;
    case Formula::Kind::Symbol:
    case Formula::Kind::IntLit:
    case Formula::Kind::RealLit:
      out << f.name;
      return;
    case Formula::Kind::Apply:
      out << '(' << f.name;
      for (const auto& a : f.args) {
        out << ' ';
        print_rec(*a, out);
      }
      out << ')';
      return;
    case Formula::Kind::Connective:
      out << '(' << conn_name(f.conn);
      for (const auto& a : f.args) {
        out << ' ';
        print_rec(*a, out);
      }
      out << ')';
      return;
    case Formula::Kind::Quantifier: {
      out << '(' << quant_name(f.quant) << " (";
      for (size_t i = 0; i < f.vars.size(); ++i) {
        if (i) out << ' ';
        const std::string& v = f.vars[i];
        out << (v.empty() || v[0] != '@' ? "?" : "") << v;
      }
      out << ") ";
      print_rec(*f.args[0], out);
      out << ')';
      return;
    }
  }
}

std::string print_kif(const Formula& f) {
  std::ostringstream out;
  print_rec(f, out);
  return out.str();
}

static void collect_vars(const Formula& f, std::set<std::string>& bound,
                         std::set<std::string>& free, std::set<std::string>* all) {
  switch (f.kind) {
    case Formula::Kind::Variable:
      if (all) all->insert(f.name);
      if (!bound.count(f.name)) free.insert(f.name);
      return;
    case Formula::Kind::Symbol:
    case Formula::Kind::IntLit:
    case Formula::Kind::RealLit:
      return;
    case Formula::Kind::Apply:
      if (f.has_variable_head()) {
        std::string head = f.name.substr(1);
        if (all) all->insert(head);
        if (!bound.count(head)) free.insert(head);
      }
      break;
    case Formula::Kind::Connective:
      break;
    case Formula::Kind::Quantifier: {
      std::set<std::string> inner = bound;
      for (const auto& v : f.vars) {
        inner.insert(v);
        if (all) all->insert(v);
      }
      collect_vars(*f.args[0], inner, free, all);
      return;
    }
  }
  for (const auto& a : f.args) collect_vars(*a, bound, free, all);
}

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> bound, free;
  collect_vars(f, bound, free, nullptr);
  return free;
}

std::set<std::string> all_variables(const Formula& f) {
  std::set<std::string> bound, free, all;
  collect_vars(f, bound, free, &all);
  return all;
}

static std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!taken.count(cand)) return cand;
  }
}

FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const FormulaPtr& replacement) {
  switch (f->kind) {
    case Formula::Kind::Variable:
      return f->name == var ? replacement : f;
    case Formula::Kind::Symbol:
    case Formula::Kind::IntLit:
    case Formula::Kind::RealLit:
      return f;
    case Formula::Kind::Apply: {
      std::string head = f->name;
      if (f->has_variable_head() && f->name.substr(1) == var) {
        // A predicate variable can only be replaced by a named relation.
        if (replacement->kind == Formula::Kind::Symbol) head = replacement->name;
      }
      std::vector<FormulaPtr> args;
      args.reserve(f->args.size());
      bool changed = head != f->name;
      for (const auto& a : f->args) {
        args.push_back(substitute(a, var, replacement));
        changed = changed || args.back() != a;
      }
      if (!changed) return f;
      return Formula::apply(std::move(head), std::move(args));
    }
    case Formula::Kind::Connective: {
      std::vector<FormulaPtr> args;
      args.reserve(f->args.size());
      bool changed = false;
      for (const auto& a : f->args) {
        args.push_back(substitute(a, var, replacement));
        changed = changed || args.back() != a;
      }
      if (!changed) return f;
      return Formula::connective(f->conn, std::move(args));
    }
    case Formula::Kind::Quantifier: {
      if (std::find(f->vars.begin(), f->vars.end(), var) != f->vars.end()) return f;
      std::set<std::string> incoming = free_variables(*replacement);
      std::vector<std::string> binders = f->vars;
      FormulaPtr body = f->args[0];
      for (auto& b : binders) {
        if (!incoming.count(b)) continue;
        std::set<std::string> taken = all_variables(*f);
        taken.insert(incoming.begin(), incoming.end());
        std::string nb = fresh_name(b, taken);
        body = substitute(body, b, Formula::variable(nb));
        b = nb;
      }
      FormulaPtr nbody = substitute(body, var, replacement);
      if (nbody == f->args[0] && binders == f->vars) return f;
      return Formula::quantifier(f->quant, std::move(binders), std::move(nbody));
    }
  }
  return f;
}

std::string path_key(const TreePath& p) {
  std::string s;
  for (int i : p) {
    s += std::to_string(i);
    s += '.';
  }
  return s;
}

const Formula* subterm_at(const Formula& root, const TreePath& p) {
  const Formula* cur = &root;
  for (int i : p) {
    if (i < 0 || static_cast<size_t>(i) >= cur->args.size()) return nullptr;
    cur = cur->args[i].get();
  }
  return cur;
}

}  // namespace kif2tff
