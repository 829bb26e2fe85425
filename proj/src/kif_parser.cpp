#include "kif2tff/kif_parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace kif2tff {

namespace {

struct Token {
  enum class Kind { LParen, RParen, Atom, String, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  Lexer(const std::string& text, std::string file)
      : text_(text), file_(std::move(file)) {}

  Token next() {
    skip_blank();
    Token t;
    t.line = line_;
    t.column = column_;
    if (pos_ >= text_.size()) {
      t.kind = Token::Kind::End;
      return t;
    }
    char c = text_[pos_];
    if (c == '(') {
      advance();
      t.kind = Token::Kind::LParen;
      return t;
    }
    if (c == ')') {
      advance();
      t.kind = Token::Kind::RParen;
      return t;
    }
    if (c == '"') {
      t.kind = Token::Kind::String;
      t.text += c;
      advance();
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) {
          t.text += text_[pos_];
          advance();
        }
        t.text += text_[pos_];
        advance();
      }
      if (pos_ >= text_.size()) throw error(t.line, t.column, "unterminated string");
      t.text += '"';
      advance();
      return t;
    }
    t.kind = Token::Kind::Atom;
    while (pos_ < text_.size() && !is_delim(text_[pos_])) {
      t.text += text_[pos_];
      advance();
    }
    return t;
  }

  ParseError error(int line, int column, const std::string& msg) const {
    return ParseError(file_, line, column, msg);
  }

 private:
  static bool is_delim(char c) {
    return c == '(' || c == ')' || c == ';' || c == '"' || std::isspace(static_cast<unsigned char>(c));
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::string file_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

bool is_number_token(const std::string& s, bool& is_real) {
  size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  bool dot = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) continue;
    if (s[i] == '.' && !dot) {
      dot = true;
      if (i + 1 >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i + 1]))) return false;
      continue;
    }
    return false;
  }
  is_real = dot;
  return true;
}

class Parser {
 public:
  Parser(const std::string& text, const std::string& file) : lex_(text, file) { shift(); }

  std::vector<SourcedFormula> parse_all(const std::string& file) {
    std::vector<SourcedFormula> out;
    std::string stem = file;
    if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
    if (auto dot = stem.find_last_of('.'); dot != std::string::npos) stem = stem.substr(0, dot);
    int n = 0;
    while (cur_.kind != Token::Kind::End) {
      SourcedFormula sf;
      sf.file = file;
      sf.line = cur_.line;
      sf.formula = parse_expr();
      sf.label = stem + "_" + std::to_string(++n);
      out.push_back(std::move(sf));
    }
    return out;
  }

 private:
  void shift() { cur_ = lex_.next(); }

  [[noreturn]] void fail(const Token& t, const std::string& msg) { throw lex_.error(t.line, t.column, msg); }

  FormulaPtr parse_expr() {
    Token t = cur_;
    switch (t.kind) {
      case Token::Kind::End:
        fail(t, "unexpected end of input");
      case Token::Kind::RParen:
        fail(t, "unbalanced ')'");
      case Token::Kind::String:
        shift();
        return Formula::symbol(t.text);
      case Token::Kind::Atom:
        shift();
        return atom(t);
      case Token::Kind::LParen:
        break;
    }
    shift();
    return parse_list(t);
  }

  FormulaPtr atom(const Token& t) {
    const std::string& s = t.text;
    if (s[0] == '?') {
      if (s.size() == 1) fail(t, "bare '?' is not a variable");
      return Formula::variable(s.substr(1));
    }
    if (s[0] == '@') {
      if (s.size() == 1) fail(t, "bare '@' is not a row variable");
      return Formula::variable(s);  // row variables keep their '@' marker
    }
    bool is_real = false;
    if (is_number_token(s, is_real)) return is_real ? Formula::real_lit(s) : Formula::int_lit(s);
    return Formula::symbol(s);
  }

  FormulaPtr parse_list(const Token& open) {
    if (cur_.kind == Token::Kind::RParen) fail(open, "empty list '()'");
    Token head = cur_;
    if (head.kind == Token::Kind::LParen) fail(head, "list in operator position");
    if (head.kind == Token::Kind::End) fail(open, "unbalanced '(': no matching ')'");
    if (head.kind == Token::Kind::String) fail(head, "string in operator position");
    shift();

    const std::string& op = head.text;
    if (op == "forall" || op == "exists") return parse_quantifier(open, head);

    std::vector<FormulaPtr> args;
    while (cur_.kind != Token::Kind::RParen) {
      if (cur_.kind == Token::Kind::End) fail(open, "unbalanced '(': no matching ')'");
      args.push_back(parse_expr());
    }
    shift();

    if (op == "not") {
      if (args.size() != 1) fail(head, "'not' takes exactly 1 argument");
      return Formula::connective(Conn::Not, std::move(args));
    }
    if (op == "=>" || op == "<=>") {
      if (args.size() != 2) fail(head, "'" + op + "' takes exactly 2 arguments");
      return Formula::connective(op == "=>" ? Conn::Implies : Conn::Iff, std::move(args));
    }
    if (op == "and" || op == "or") {
      if (args.size() < 2) fail(head, "'" + op + "' takes at least 2 arguments");
      return Formula::connective(op == "and" ? Conn::And : Conn::Or, std::move(args));
    }
    return Formula::apply(op, std::move(args));
  }

  FormulaPtr parse_quantifier(const Token& open, const Token& head) {
    if (cur_.kind != Token::Kind::LParen) fail(cur_, "quantifier needs a variable list");
    Token list_open = cur_;
    shift();
    std::vector<std::string> vars;
    while (cur_.kind == Token::Kind::Atom) {
      const std::string& s = cur_.text;
      if (s[0] == '?')
        vars.push_back(s.substr(1));
      else if (s[0] == '@')
        vars.push_back(s);
      else
        fail(cur_, "quantifier variable must start with '?'");
      shift();
    }
    if (cur_.kind != Token::Kind::RParen) fail(list_open, "unterminated variable list");
    if (vars.empty()) fail(list_open, "quantifier with empty variable list");
    shift();
    FormulaPtr body = parse_expr();
    if (cur_.kind != Token::Kind::RParen) fail(open, "quantifier takes exactly one body");
    shift();
    return Formula::quantifier(head.text == "forall" ? Quant::Forall : Quant::Exists,
                               std::move(vars), std::move(body));
  }

  Lexer lex_;
  Token cur_;
};

}  // namespace

std::vector<SourcedFormula> parse_kif(const std::string& text, const std::string& file) {
  Parser p(text, file);
  return p.parse_all(file);
}

std::vector<SourcedFormula> parse_kif_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, 0, 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_kif(buf.str(), path);
}

}  // namespace kif2tff
