#include "lambdafan/term.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace lambdafan {

TermPtr var(std::string name) {
  return std::make_shared<Term>(Term{Term::Tag::Var, std::move(name), nullptr, nullptr});
}

TermPtr lam(std::string binder, TermPtr body) {
  return std::make_shared<Term>(Term{Term::Tag::Lam, std::move(binder), std::move(body), nullptr});
}

TermPtr app(TermPtr fun, TermPtr arg) {
  return std::make_shared<Term>(Term{Term::Tag::App, {}, std::move(fun), std::move(arg)});
}

TermPtr church(uint64_t n) {
  TermPtr body = var("x");
  for (uint64_t i = 0; i < n; ++i) body = app(var("f"), body);
  return lam("f", lam("x", std::move(body)));
}

ParseError::ParseError(int line, int col, const std::string& what)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + what),
      line(line),
      col(col) {}

// ---------------------------------------------------------------------------
// Parsing

namespace {

constexpr uint64_t kMaxChurchLiteral = 1'000'000;

struct Token {
  enum Kind { Lambda, Dot, LParen, RParen, Ident, Int, End } kind;
  std::string text;
  uint64_t value = 0;
  int line = 1, col = 1;
};

struct Lexer {
  std::string_view src;
  size_t pos = 0;
  int line = 1, col = 1;

  void advance(size_t n = 1) {
    for (size_t i = 0; i < n; ++i) {
      if (pos < src.size() && src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  }

  void skip_space() {
    for (;;) {
      while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t' || src[pos] == '\r' || src[pos] == '\n'))
        advance();
      if (pos < src.size() && src[pos] == '#') {
        while (pos < src.size() && src[pos] != '\n') advance();
        continue;
      }
      return;
    }
  }

  Token next() {
    skip_space();
    Token t;
    t.line = line;
    t.col = col;
    if (pos >= src.size()) {
      t.kind = Token::End;
      return t;
    }
    char c = src[pos];
    if (c == '\\') {
      t.kind = Token::Lambda;
      advance();
      return t;
    }
    // 'λ' in UTF-8
    if (c == '\xce' && pos + 1 < src.size() && src[pos + 1] == '\xbb') {
      t.kind = Token::Lambda;
      advance(2);
      return t;
    }
    if (c == '.') {
      t.kind = Token::Dot;
      advance();
      return t;
    }
    if (c == '(') {
      t.kind = Token::LParen;
      advance();
      return t;
    }
    if (c == ')') {
      t.kind = Token::RParen;
      advance();
      return t;
    }
    if (c >= '0' && c <= '9') {
      t.kind = Token::Int;
      uint64_t v = 0;
      while (pos < src.size() && src[pos] >= '0' && src[pos] <= '9') {
        v = v * 10 + uint64_t(src[pos] - '0');
        if (v > kMaxChurchLiteral) throw ParseError(t.line, t.col, "numeral literal too large");
        t.text.push_back(src[pos]);
        advance();
      }
      t.value = v;
      return t;
    }
    auto alpha = [](char ch) {
      return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z');
    };
    auto alnum = [&](char ch) { return alpha(ch) || (ch >= '0' && ch <= '9'); };
    if (alpha(c)) {
      t.kind = Token::Ident;
      while (pos < src.size() && alnum(src[pos])) {
        t.text.push_back(src[pos]);
        advance();
      }
      return t;
    }
    throw ParseError(line, col, std::string("unexpected character '") + c + "'");
  }
};

struct Parser {
  Lexer lex;
  Token tok;
  const std::map<std::string, TermPtr, std::less<>>& env;
  std::vector<std::string> binders;

  Parser(std::string_view src, const std::map<std::string, TermPtr, std::less<>>& env)
      : lex{src}, env(env) {
    tok = lex.next();
  }

  void bump() { tok = lex.next(); }

  [[noreturn]] void fail(const std::string& what) { throw ParseError(tok.line, tok.col, what); }

  TermPtr term() {
    if (tok.kind == Token::Lambda) {
      bump();
      std::vector<std::string> names;
      while (tok.kind == Token::Ident) {
        names.push_back(tok.text);
        bump();
      }
      if (names.empty()) fail("expected binder after lambda");
      if (tok.kind != Token::Dot) fail("expected '.' after binders");
      bump();
      for (auto& n : names) binders.push_back(n);
      TermPtr body = term();
      for (auto it = names.rbegin(); it != names.rend(); ++it) {
        body = lam(*it, std::move(body));
        binders.pop_back();
      }
      return body;
    }
    return application();
  }

  bool starts_atom() const {
    return tok.kind == Token::Ident || tok.kind == Token::Int || tok.kind == Token::LParen ||
           tok.kind == Token::Lambda;
  }

  TermPtr application() {
    TermPtr t = atom();
    while (starts_atom()) {
      // a trailing lambda extends maximally right: f \x.e == f (\x.e)
      TermPtr a = tok.kind == Token::Lambda ? term() : atom();
      t = app(std::move(t), std::move(a));
    }
    return t;
  }

  TermPtr atom() {
    switch (tok.kind) {
      case Token::Ident: {
        Token id = tok;
        bump();
        for (auto it = binders.rbegin(); it != binders.rend(); ++it)
          if (*it == id.text) return var(id.text);
        if (auto p = env.find(id.text); p != env.end()) return p->second;
        throw ParseError(id.line, id.col, "unbound identifier '" + id.text + "'");
      }
      case Token::Int: {
        uint64_t v = tok.value;
        bump();
        return church(v);
      }
      case Token::LParen: {
        bump();
        TermPtr t = term();
        if (tok.kind != Token::RParen) fail("expected ')'");
        bump();
        return t;
      }
      default:
        fail("expected a term");
    }
  }
};

TermPtr parse_with(std::string_view text, const std::map<std::string, TermPtr, std::less<>>& env) {
  Parser p(text, env);
  TermPtr t = p.term();
  if (p.tok.kind != Token::End) p.fail("trailing input");
  return t;
}

}  // namespace

const std::map<std::string, TermPtr, std::less<>>& prelude() {
  static const auto defs = [] {
    std::map<std::string, TermPtr, std::less<>> env;
    auto def = [&env](const char* name, const char* src) { env[name] = parse_with(src, env); };
    def("I", "\\x.x");
    def("K", "\\x.\\y.x");
    def("S", "\\x.\\y.\\z.x z (y z)");
    def("omega", "\\x.x x");
    def("theta", "(\\z.\\f.f (z z f)) (\\z.\\f.f (z z f))");
    def("succ", "\\n.\\f.\\x.f (n f x)");
    def("add", "\\m.\\n.\\f.\\x.m f (n f x)");
    def("mul", "\\m.\\n.\\f.m (n f)");
    def("pow", "\\b.\\e.e b");
    def("pred", "\\n.\\f.\\x.n (\\g.\\h.h (g f)) (\\u.x) (\\u.u)");
    def("sub", "\\m.\\n.n pred m");
    // scaffolding for fact; dropped from the map afterwards
    def("true", "\\a.\\b.a");
    def("false", "\\a.\\b.b");
    def("iszero", "\\n.n (\\z.false) true");
    def("fact", "theta (\\f.\\n.(iszero n) 1 (mul n (f (pred n))))");
    env.erase("true");
    env.erase("false");
    env.erase("iszero");
    return env;
  }();
  return defs;
}

TermPtr parse(std::string_view text) { return parse_with(text, prelude()); }

// ---------------------------------------------------------------------------
// Printing

namespace {

void collect_free(const Term& t, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (t.tag) {
    case Term::Tag::Var:
      if (std::find(bound.rbegin(), bound.rend(), t.name) == bound.rend()) out.insert(t.name);
      return;
    case Term::Tag::Lam:
      bound.push_back(t.name);
      collect_free(*t.t1, bound, out);
      bound.pop_back();
      return;
    case Term::Tag::App:
      collect_free(*t.t1, bound, out);
      collect_free(*t.t2, bound, out);
      return;
  }
}

struct Printer {
  std::string out;
  const char* sigil;
  const std::set<std::string>* avoid;
  uint64_t next = 0;
  // (source binder, canonical name), innermost last
  std::vector<std::pair<std::string, std::string>> scope;

  std::string fresh_name() {
    for (;;) {
      std::string n = "x" + std::to_string(next++);
      if (!avoid->count(n)) return n;
    }
  }

  void walk(const Term& t, int prec) {
    // prec 0: any term; 1: application operand chain; 2: atom required
    switch (t.tag) {
      case Term::Tag::Var: {
        for (auto it = scope.rbegin(); it != scope.rend(); ++it)
          if (it->first == t.name) {
            out += it->second;
            return;
          }
        out += t.name;  // free
        return;
      }
      case Term::Tag::Lam: {
        bool paren = prec > 0;
        if (paren) out += '(';
        out += sigil;
        std::string n = fresh_name();
        out += n;
        out += '.';
        scope.emplace_back(t.name, n);
        walk(*t.t1, 0);
        scope.pop_back();
        if (paren) out += ')';
        return;
      }
      case Term::Tag::App: {
        bool paren = prec > 1;
        if (paren) out += '(';
        walk(*t.t1, 1);
        out += ' ';
        walk(*t.t2, 2);
        if (paren) out += ')';
        return;
      }
    }
  }
};

}  // namespace

std::string print(const Term& t, bool ascii) {
  std::set<std::string> avoid;
  std::vector<std::string> bound;
  collect_free(t, bound, avoid);
  Printer p;
  p.sigil = ascii ? "\\" : "λ";
  p.avoid = &avoid;
  p.walk(t, 0);
  return p.out;
}

std::string print(const TermPtr& t, bool ascii) { return print(*t, ascii); }

// ---------------------------------------------------------------------------
// α-equivalence and free variables

namespace {

bool aeq(const Term& a, const Term& b, std::vector<const std::string*>& ba,
         std::vector<const std::string*>& bb) {
  if (a.tag != b.tag) return false;
  switch (a.tag) {
    case Term::Tag::Var: {
      for (size_t i = ba.size(); i-- > 0;) {
        bool ma = *ba[i] == a.name, mb = *bb[i] == b.name;
        if (ma || mb) return ma && mb;
      }
      return a.name == b.name;  // both free
    }
    case Term::Tag::Lam: {
      ba.push_back(&a.name);
      bb.push_back(&b.name);
      bool r = aeq(*a.t1, *b.t1, ba, bb);
      ba.pop_back();
      bb.pop_back();
      return r;
    }
    case Term::Tag::App:
      return aeq(*a.t1, *b.t1, ba, bb) && aeq(*a.t2, *b.t2, ba, bb);
  }
  return false;
}

}  // namespace

bool alpha_eq(const Term& a, const Term& b) {
  std::vector<const std::string*> ba, bb;
  return aeq(a, b, ba, bb);
}

bool alpha_eq(const TermPtr& a, const TermPtr& b) { return alpha_eq(*a, *b); }

std::vector<std::string> free_vars(const Term& t) {
  std::set<std::string> s;
  std::vector<std::string> bound;
  collect_free(t, bound, s);
  return {s.begin(), s.end()};
}

bool is_closed(const Term& t) { return free_vars(t).empty(); }

// ---------------------------------------------------------------------------
// Normal-order reference evaluator

namespace {

struct NormCtx {
  uint64_t fuel;
  uint64_t steps = 0;
  uint64_t fresh = 0;
  bool exhausted = false;
};

bool occurs_free(const Term& t, const std::string& x) {
  switch (t.tag) {
    case Term::Tag::Var:
      return t.name == x;
    case Term::Tag::Lam:
      return t.name != x && occurs_free(*t.t1, x);
    case Term::Tag::App:
      return occurs_free(*t.t1, x) || occurs_free(*t.t2, x);
  }
  return false;
}

TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& s, NormCtx& cx) {
  switch (t->tag) {
    case Term::Tag::Var:
      return t->name == x ? s : t;
    case Term::Tag::App: {
      TermPtr f = substitute(t->t1, x, s, cx);
      TermPtr a = substitute(t->t2, x, s, cx);
      return f == t->t1 && a == t->t2 ? t : app(std::move(f), std::move(a));
    }
    case Term::Tag::Lam: {
      if (t->name == x || !occurs_free(*t->t1, x)) return t;
      if (occurs_free(*s, t->name)) {
        // capture: freshen the binder first ('#' cannot appear in source)
        std::string fresh = "#" + std::to_string(cx.fresh++);
        TermPtr body = substitute(t->t1, t->name, var(fresh), cx);
        return lam(std::move(fresh), substitute(body, x, s, cx));
      }
      TermPtr body = substitute(t->t1, x, s, cx);
      return body == t->t1 ? t : lam(t->name, std::move(body));
    }
  }
  return t;
}

TermPtr whnf(TermPtr t, NormCtx& cx) {
  for (;;) {
    if (t->tag != Term::Tag::App) return t;
    TermPtr f = whnf(t->t1, cx);
    if (cx.exhausted) return t;
    if (f->tag == Term::Tag::Lam) {
      if (cx.steps >= cx.fuel) {
        cx.exhausted = true;
        return t;
      }
      ++cx.steps;
      t = substitute(f->t1, f->name, t->t2, cx);
    } else {
      return f == t->t1 ? t : app(std::move(f), t->t2);
    }
  }
}

TermPtr normal_form(TermPtr t, NormCtx& cx) {
  t = whnf(std::move(t), cx);
  if (cx.exhausted) return t;
  switch (t->tag) {
    case Term::Tag::Var:
      return t;
    case Term::Tag::Lam: {
      TermPtr b = normal_form(t->t1, cx);
      return b == t->t1 ? t : lam(t->name, std::move(b));
    }
    case Term::Tag::App: {
      // stuck application: head is a variable spine
      TermPtr f = normal_form(t->t1, cx);
      TermPtr a = normal_form(t->t2, cx);
      return f == t->t1 && a == t->t2 ? t : app(std::move(f), std::move(a));
    }
  }
  return t;
}

}  // namespace

NormalizeResult reference_normalize(TermPtr t, uint64_t fuel) {
  NormCtx cx{fuel};
  TermPtr nf = normal_form(std::move(t), cx);
  return {cx.exhausted ? nullptr : nf, cx.steps, cx.exhausted};
}

}  // namespace lambdafan
