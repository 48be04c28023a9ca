#include "qhorn/parser.hpp"

#include <cctype>
#include <sstream>

namespace qhorn {
namespace {

struct Token {
  enum class Kind { End, Ident, Punct };
  Kind kind = Kind::End;
  std::string text;
  int line = 1;
  int col = 1;
};

struct Lexer {
  const std::string& src;
  std::size_t i = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  void bump() {
    if (i < src.size() && src[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  }

  void skip() {
    while (i < src.size()) {
      char c = src[i];
      if (c == '%') {
        while (i < src.size() && src[i] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  Token next() {
    skip();
    Token t;
    t.line = line;
    t.col = col;
    if (i >= src.size()) return t;
    char c = src[i];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Token::Kind::Ident;
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) ||
              src[i] == '_')) {
        t.text += src[i];
        bump();
      }
      return t;
    }
    t.kind = Token::Kind::Punct;
    if (c == ':' && i + 1 < src.size() && src[i + 1] == '-') {
      t.text = ":-";
      bump();
      bump();
      return t;
    }
    if (c == '?' && i + 1 < src.size() && src[i + 1] == '-') {
      t.text = "?-";
      bump();
      bump();
      return t;
    }
    if (std::string(".;,?~():#").find(c) != std::string::npos) {
      t.text = std::string(1, c);
      bump();
      return t;
    }
    throw SyntaxError(line, col, std::string("unexpected character '") + c + "'");
  }
};

struct Parser {
  Lexer lex;
  Token tok;
  ParseOptions opts;

  Parser(const std::string& text, ParseOptions o) : lex(text), opts(o) {
    tok = lex.next();
  }

  [[noreturn]] void err(const std::string& msg) const {
    throw SyntaxError(tok.line, tok.col, msg);
  }
  bool atEnd() const { return tok.kind == Token::Kind::End; }
  bool isPunct(const std::string& s) const {
    return tok.kind == Token::Kind::Punct && tok.text == s;
  }
  bool isIdent(const std::string& s) const {
    return tok.kind == Token::Kind::Ident && tok.text == s;
  }
  Token take() {
    Token t = tok;
    tok = lex.next();
    return t;
  }
  void expectPunct(const std::string& s) {
    if (!isPunct(s)) err("expected '" + s + "'");
    take();
  }
  Token expectIdent(const std::string& what) {
    if (tok.kind != Token::Kind::Ident) err("expected " + what);
    return take();
  }

  // ---- propositional ----

  void parsePrefix(Program& p) {
    if (!isIdent("prefix")) err("expected 'prefix'");
    take();
    while (!isPunct(".")) {
      Quantifier q;
      if (isIdent("exists"))
        q = Quantifier::Existential;
      else if (isIdent("forall"))
        q = Quantifier::Universal;
      else
        err("expected 'exists' or 'forall'");
      take();
      if (tok.kind != Token::Kind::Ident) err("expected variable name");
      while (tok.kind == Token::Kind::Ident) p.declare(take().text, q);
      if (isPunct(";"))
        take();
      else if (!isPunct("."))
        err("expected ';' or '.'");
    }
    take();
  }

  VarId resolve(const Program& p, const Token& name) const {
    if (auto v = p.tryVarId(name.text)) return *v;
    throw DeclarationError(name.text);
  }

  std::vector<Token> nameList() {
    std::vector<Token> out;
    out.push_back(expectIdent("variable name"));
    while (isPunct(",")) {
      take();
      out.push_back(expectIdent("variable name"));
    }
    return out;
  }

  // Literal list already begun with `first`; continues over ';'.
  Clause finishDisjunction(Program& p, std::vector<std::pair<bool, Token>> lits) {
    while (isPunct(";")) {
      take();
      bool positive = true;
      if (isPunct("~")) {
        take();
        positive = false;
      }
      lits.emplace_back(positive, expectIdent("variable name"));
    }
    expectPunct(".");
    int positives = 0;
    for (const auto& [sign, name] : lits) positives += sign ? 1 : 0;
    if (opts.strictHorn && positives >= 2)
      throw NotHornError("clause with " + std::to_string(positives) +
                         " positive literals");
    Clause c;
    for (const auto& [sign, name] : lits)
      c.lits.push_back(Literal{resolve(p, name), sign});
    return c;
  }

  void parsePropStatement(SourceUnit& u) {
    Program& p = u.program;
    if (isPunct("?")) {
      take();
      Query q;
      q.kind = Query::Kind::Definite;
      q.head = resolve(p, expectIdent("query head"));
      if (isPunct(":-")) {
        take();
        for (const Token& t : nameList()) q.body.push_back(resolve(p, t));
      }
      expectPunct(".");
      u.queries.push_back(std::move(q));
      return;
    }
    if (isPunct("?-")) {
      Token mark = take();
      if (isPunct("."))
        throw SyntaxError(mark.line, mark.col, "empty goal query");
      Query q;
      q.kind = Query::Kind::Goal;
      for (const Token& t : nameList()) q.body.push_back(resolve(p, t));
      expectPunct(".");
      u.queries.push_back(std::move(q));
      return;
    }
    if (isPunct(":-")) {
      take();
      Clause c;
      if (!isPunct("."))
        for (const Token& t : nameList()) c.lits.push_back(neg(resolve(p, t)));
      expectPunct(".");
      p.addClause(std::move(c));
      return;
    }
    bool positive = true;
    if (isPunct("~")) {
      take();
      positive = false;
    }
    Token head = expectIdent("clause head");
    if (isPunct(":-")) {
      if (!positive) err("rule head must be positive");
      take();
      Clause c;
      c.lits.push_back(pos(resolve(p, head)));
      for (const Token& t : nameList()) c.lits.push_back(neg(resolve(p, t)));
      expectPunct(".");
      p.addClause(std::move(c));
      return;
    }
    p.addClause(finishDisjunction(p, {{positive, head}}));
  }

  // ---- first-order ----

  static bool isVarName(const std::string& s) {
    return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
  }

  std::vector<std::pair<std::string, Quantifier>> parseFoPrefix() {
    std::vector<std::pair<std::string, Quantifier>> out;
    while (isIdent("forall") || isIdent("exists")) {
      Quantifier q = isIdent("forall") ? Quantifier::Universal
                                       : Quantifier::Existential;
      take();
      if (tok.kind != Token::Kind::Ident || !isVarName(tok.text))
        err("expected variable name");
      while (tok.kind == Token::Kind::Ident && !isIdent("forall") &&
             !isIdent("exists")) {
        if (!isVarName(tok.text)) err("quantified name must start uppercase");
        out.emplace_back(take().text, q);
      }
    }
    if (!out.empty()) expectPunct(":");
    return out;
  }

  Atom parseAtom(std::vector<std::pair<std::string, Quantifier>>& prefix,
                 Quantifier defaultQuant) {
    Token name = expectIdent("predicate");
    if (isVarName(name.text))
      throw SyntaxError(name.line, name.col,
                        "predicate must start lowercase: " + name.text);
    Atom a;
    a.pred = name.text;
    if (isPunct("(")) {
      take();
      while (true) {
        Token t = expectIdent("term");
        if (isVarName(t.text)) {
          Quantifier q = defaultQuant;
          bool known = false;
          for (const auto& [n, pq] : prefix)
            if (n == t.text) {
              q = pq;
              known = true;
              break;
            }
          if (!known) prefix.emplace_back(t.text, defaultQuant);
          a.args.push_back(fovar(t.text, q));
        } else {
          a.args.push_back(foconst(t.text));
        }
        if (isPunct(",")) {
          take();
          continue;
        }
        expectPunct(")");
        break;
      }
    }
    return a;
  }

  std::vector<Atom> atomList(std::vector<std::pair<std::string, Quantifier>>& prefix,
                             Quantifier defaultQuant) {
    std::vector<Atom> out;
    out.push_back(parseAtom(prefix, defaultQuant));
    while (isPunct(",")) {
      take();
      out.push_back(parseAtom(prefix, defaultQuant));
    }
    return out;
  }

  void parseFoStatement(SourceUnit& u) {
    if (isPunct("?") || isPunct("?-")) {
      bool goal = isPunct("?-");
      Token mark = take();
      FOQuery q;
      q.prefix = parseFoPrefix();
      if (goal) {
        if (isPunct("."))
          throw SyntaxError(mark.line, mark.col, "empty goal query");
        q.kind = FOQuery::Kind::Goal;
        q.body = atomList(q.prefix, Quantifier::Existential);
      } else {
        q.kind = FOQuery::Kind::Definite;
        q.head = parseAtom(q.prefix, Quantifier::Existential);
        if (isPunct(":-")) {
          take();
          q.body = atomList(q.prefix, Quantifier::Existential);
        }
      }
      expectPunct(".");
      fixupQuantifiers(q.prefix, q.head ? &*q.head : nullptr, q.body);
      u.foQueries.push_back(std::move(q));
      return;
    }
    FOClause c;
    c.prefix = parseFoPrefix();
    std::vector<Atom> body;
    std::optional<Atom> head;
    if (isPunct(":-")) {
      Token mark = take();
      if (isPunct("."))
        throw SyntaxError(mark.line, mark.col, "empty first-order goal clause");
      body = atomList(c.prefix, Quantifier::Universal);
    } else {
      head = parseAtom(c.prefix, Quantifier::Universal);
      if (isPunct(":-")) {
        take();
        body = atomList(c.prefix, Quantifier::Universal);
      }
    }
    expectPunct(".");
    fixupQuantifiers(c.prefix, head ? &*head : nullptr, body);
    if (head) c.lits.push_back(FOLiteral{std::move(*head), true});
    for (Atom& a : body) c.lits.push_back(FOLiteral{std::move(a), false});
    u.foProgram.addClause(std::move(c));
  }

  // Variables encountered before their (implicit or later) declaration may
  // carry a stale default tag; re-stamp every occurrence from the prefix.
  static void fixupQuantifiers(
      const std::vector<std::pair<std::string, Quantifier>>& prefix,
      Atom* head, std::vector<Atom>& body) {
    auto stamp = [&prefix](Atom& a) {
      for (Term& t : a.args) {
        if (t.kind != Term::Kind::Var) continue;
        for (const auto& [n, q] : prefix)
          if (n == t.name) {
            t.quant = q;
            break;
          }
      }
    };
    if (head) stamp(*head);
    for (Atom& a : body) stamp(a);
  }
};

}  // namespace

SourceUnit parse_source(const std::string& text, ParseOptions opts) {
  Parser ps(text, opts);
  SourceUnit u;
  if (ps.isPunct("#")) {
    ps.take();
    Token what = ps.expectIdent("directive");
    if (what.text != "mode")
      throw SyntaxError(what.line, what.col, "unknown directive: " + what.text);
    Token mode = ps.expectIdent("mode name");
    if (mode.text != "fol")
      throw SyntaxError(mode.line, mode.col, "unknown mode: " + mode.text);
    u.mode = SourceUnit::Mode::FirstOrder;
  }
  if (u.mode == SourceUnit::Mode::Propositional) {
    ps.parsePrefix(u.program);
    while (!ps.atEnd()) ps.parsePropStatement(u);
  } else {
    while (!ps.atEnd()) ps.parseFoStatement(u);
  }
  return u;
}

Program parse_program(const std::string& text, ParseOptions opts) {
  SourceUnit u = parse_source(text, opts);
  if (u.mode != SourceUnit::Mode::Propositional)
    throw SyntaxError(1, 1, "expected a propositional unit");
  return std::move(u.program);
}

Query parse_query(const std::string& text, const Program& p) {
  Parser ps(text, ParseOptions{});
  SourceUnit u;
  u.program = p;
  if (!ps.isPunct("?") && !ps.isPunct("?-"))
    ps.err("expected '?' or '?-'");
  ps.parsePropStatement(u);
  if (!ps.atEnd()) ps.err("trailing input after query");
  if (u.queries.empty()) ps.err("expected a query");
  return u.queries.front();
}

FOQuery parse_fol_query(const std::string& text, const FOProgram& p) {
  (void)p;  // arity conformance is re-checked in fol_output
  Parser ps(text, ParseOptions{});
  SourceUnit u;
  if (!ps.isPunct("?") && !ps.isPunct("?-"))
    ps.err("expected '?' or '?-'");
  ps.parseFoStatement(u);
  if (!ps.atEnd()) ps.err("trailing input after query");
  if (u.foQueries.empty()) ps.err("expected a query");
  return u.foQueries.front();
}

std::string pretty_print(const Program& p) {
  std::ostringstream os;
  os << "prefix";
  for (std::size_t i = 0; i < p.blocks().size(); ++i) {
    const Block& b = p.blocks()[i];
    os << (i ? "; " : " ")
       << (b.quant == Quantifier::Existential ? "exists" : "forall");
    for (VarId v : b.vars) os << " " << p.var(v).name;
  }
  os << ".\n";
  for (const Clause& c : p.clauses()) {
    if (c.empty()) {
      os << ":-.\n";
      continue;
    }
    for (std::size_t i = 0; i < c.lits.size(); ++i) {
      if (i) os << " ; ";
      os << (c.lits[i].positive ? "" : "~") << p.var(c.lits[i].var).name;
    }
    os << ".\n";
  }
  return os.str();
}

std::string render_query(const Program& p, const Query& q) {
  std::ostringstream os;
  if (q.kind == Query::Kind::Definite) {
    os << "? " << p.var(*q.head).name;
    for (std::size_t i = 0; i < q.body.size(); ++i)
      os << (i ? ", " : " :- ") << p.var(q.body[i]).name;
  } else {
    os << "?-";
    for (std::size_t i = 0; i < q.body.size(); ++i)
      os << (i ? ", " : " ") << p.var(q.body[i]).name;
  }
  os << ".";
  return os.str();
}

}  // namespace qhorn
