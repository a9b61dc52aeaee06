#include "theoryforge/tstp.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

namespace theoryforge::tstp {

using fol::FormulaPtr;
using fol::TermPtr;

// ---------------------------------------------------------------------------
// Lexer.

namespace {

enum class Tok {
  End,
  LowerWord,
  UpperWord,
  Integer,
  Quoted,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  Dot,
  Colon,
  Bang,      // !
  Question,  // ?
  Tilde,     // ~
  Amp,       // &
  Pipe,      // |
  Equals,    // =
  NotEquals, // !=
  Implies,   // =>
  Implied,   // <=
  Iff,       // <=>
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(tok_.line, tok_.col, expected);
  }

 private:
  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
        bump();
        bump();
        while (pos_ + 1 < text_.size() && !(text_[pos_] == '*' && text_[pos_ + 1] == '/')) bump();
        if (pos_ + 1 < text_.size()) {
          bump();
          bump();
        }
      } else if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void advance() {
    skip_space();
    tok_ = Token{Tok::End, "", line_, col_};
    if (pos_ >= text_.size()) return;
    char c = text_[pos_];
    auto take = [&](Tok k, int n) {
      tok_.kind = k;
      tok_.text = text_.substr(pos_, n);
      for (int i = 0; i < n; ++i) bump();
    };
    if (c == '(') return take(Tok::LParen, 1);
    if (c == ')') return take(Tok::RParen, 1);
    if (c == '[') return take(Tok::LBracket, 1);
    if (c == ']') return take(Tok::RBracket, 1);
    if (c == ',') return take(Tok::Comma, 1);
    if (c == '.') return take(Tok::Dot, 1);
    if (c == ':') return take(Tok::Colon, 1);
    if (c == '~') return take(Tok::Tilde, 1);
    if (c == '&') return take(Tok::Amp, 1);
    if (c == '|') return take(Tok::Pipe, 1);
    if (c == '?') return take(Tok::Question, 1);
    if (c == '!') {
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '=') return take(Tok::NotEquals, 2);
      return take(Tok::Bang, 1);
    }
    if (c == '=') {
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') return take(Tok::Implies, 2);
      return take(Tok::Equals, 1);
    }
    if (c == '<') {
      if (text_.compare(pos_, 3, "<=>") == 0) return take(Tok::Iff, 3);
      if (text_.compare(pos_, 2, "<=") == 0) return take(Tok::Implied, 2);
      throw ParseError(line_, col_, "'<=' or '<=>'");
    }
    if (c == '\'') {
      size_t end = pos_ + 1;
      std::string value;
      while (end < text_.size() && text_[end] != '\'') {
        if (text_[end] == '\\' && end + 1 < text_.size()) ++end;
        value += text_[end++];
      }
      if (end >= text_.size()) throw ParseError(line_, col_, "closing quote");
      tok_.kind = Tok::Quoted;
      tok_.text = value;
      size_t n = end + 1 - pos_;
      for (size_t i = 0; i < n; ++i) bump();
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
      size_t end = pos_ + 1;
      while (end < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.')) {
        // keep "1.2" together but stop before a record-terminating dot
        if (text_[end] == '.' &&
            (end + 1 >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[end + 1]))))
          break;
        ++end;
      }
      tok_.kind = Tok::Integer;
      tok_.text = text_.substr(pos_, end - pos_);
      size_t n = end - pos_;
      for (size_t i = 0; i < n; ++i) bump();
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
      size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_' ||
              text_[end] == '$'))
        ++end;
      tok_.kind = std::isupper(static_cast<unsigned char>(c)) ? Tok::UpperWord : Tok::LowerWord;
      tok_.text = text_.substr(pos_, end - pos_);
      size_t n = end - pos_;
      for (size_t i = 0; i < n; ++i) bump();
      return;
    }
    throw ParseError(line_, col_, "a token");
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

// ---------------------------------------------------------------------------
// Parser. Untyped FOF only; &/| chains associate, mixed binary connectives
// need parentheses (TPTP's non-associativity rule).

class Parser {
 public:
  explicit Parser(const std::string& text) : lx_(text) {}

  std::vector<TstpRecord> records(std::vector<std::string>* warnings) {
    std::vector<TstpRecord> out;
    while (lx_.peek().kind != Tok::End) {
      const Token& t = lx_.peek();
      if (t.kind != Tok::LowerWord) lx_.fail("a record");
      if (t.text == "fof") {
        out.push_back(record());
      } else if (t.text == "cnf" || t.text == "tff" || t.text == "thf" || t.text == "tpi" ||
                 t.text == "include") {
        if (warnings)
          warnings->push_back("unsupported record kind '" + t.text + "' at line " +
                              std::to_string(t.line) + " skipped");
        skip_record();
      } else {
        lx_.fail("'fof'");
      }
    }
    return out;
  }

  FormulaPtr formula_only() {
    FormulaPtr f = fof();
    if (lx_.peek().kind != Tok::End) lx_.fail("end of formula");
    return close(f);
  }

 private:
  Lexer lx_;

  void expect(Tok k, const char* what) {
    if (lx_.peek().kind != k) lx_.fail(what);
    lx_.next();
  }

  void skip_record() {
    // consume through the closing dot, tracking parens
    int depth = 0;
    while (lx_.peek().kind != Tok::End) {
      Token t = lx_.next();
      if (t.kind == Tok::LParen || t.kind == Tok::LBracket) ++depth;
      if (t.kind == Tok::RParen || t.kind == Tok::RBracket) --depth;
      if (t.kind == Tok::Dot && depth == 0) return;
    }
  }

  std::string name_token() {
    const Token& t = lx_.peek();
    if (t.kind == Tok::LowerWord || t.kind == Tok::Quoted || t.kind == Tok::Integer)
      return lx_.next().text;
    lx_.fail("a record name");
  }

  TstpRecord record() {
    TstpRecord r;
    r.line = lx_.peek().line;
    lx_.next();  // fof
    expect(Tok::LParen, "'('");
    r.name = name_token();
    expect(Tok::Comma, "','");
    if (lx_.peek().kind != Tok::LowerWord) lx_.fail("a role");
    r.raw_role = lx_.next().text;
    expect(Tok::Comma, "','");
    r.formula = close(fof());
    if (lx_.peek().kind == Tok::Comma) {
      lx_.next();
      GeneralTerm ann = general_term();
      if (lx_.peek().kind == Tok::Comma) {
        // fold the optional useful_info into one annotation list
        lx_.next();
        GeneralTerm info = general_term();
        GeneralTerm both;
        both.kind = GeneralTerm::Kind::List;
        both.args = {std::move(ann), std::move(info)};
        r.annotation = std::move(both);
      } else {
        r.annotation = std::move(ann);
      }
    }
    expect(Tok::RParen, "')'");
    expect(Tok::Dot, "'.'");
    return r;
  }

  static FormulaPtr close(FormulaPtr f) {
    auto free = fol::free_variables(f);
    if (free.empty()) return f;
    // TPTP semantics: free variables are universally quantified.
    return fol::forall(std::vector<std::string>(free.begin(), free.end()), std::move(f));
  }

  FormulaPtr fof() {
    FormulaPtr lhs = unitary();
    Tok k = lx_.peek().kind;
    if (k == Tok::Amp || k == Tok::Pipe) {
      Tok chain = k;
      while (lx_.peek().kind == chain) {
        lx_.next();
        FormulaPtr rhs = unitary();
        lhs = chain == Tok::Amp ? fol::land(lhs, rhs) : fol::lor(lhs, rhs);
      }
    } else if (k == Tok::Implies || k == Tok::Implied || k == Tok::Iff) {
      lx_.next();
      FormulaPtr rhs = unitary();
      if (k == Tok::Implies) lhs = fol::implies(lhs, rhs);
      if (k == Tok::Implied) lhs = fol::implies(rhs, lhs);
      if (k == Tok::Iff) lhs = fol::iff(lhs, rhs);
    }
    k = lx_.peek().kind;
    if (k == Tok::Amp || k == Tok::Pipe || k == Tok::Implies || k == Tok::Implied || k == Tok::Iff)
      lx_.fail("parentheses (mixed binary connectives)");
    return lhs;
  }

  FormulaPtr unitary() {
    const Token& t = lx_.peek();
    switch (t.kind) {
      case Tok::Bang:
      case Tok::Question: {
        bool universal = t.kind == Tok::Bang;
        lx_.next();
        expect(Tok::LBracket, "'['");
        std::vector<std::string> vars;
        for (;;) {
          if (lx_.peek().kind != Tok::UpperWord) lx_.fail("a variable");
          vars.push_back(lx_.next().text);
          if (lx_.peek().kind == Tok::Comma) {
            lx_.next();
            continue;
          }
          break;
        }
        expect(Tok::RBracket, "']'");
        expect(Tok::Colon, "':'");
        FormulaPtr body = unitary();
        return universal ? fol::forall(std::move(vars), body) : fol::exists(std::move(vars), body);
      }
      case Tok::Tilde: {
        lx_.next();
        return fol::lnot(unitary());
      }
      case Tok::LParen: {
        lx_.next();
        FormulaPtr f = fof();
        expect(Tok::RParen, "')'");
        return f;
      }
      default:
        return atomic();
    }
  }

  FormulaPtr atomic() {
    TermPtr t = term();
    Tok k = lx_.peek().kind;
    if (k == Tok::Equals) {
      lx_.next();
      return fol::equal(t, term());
    }
    if (k == Tok::NotEquals) {
      lx_.next();
      return fol::lnot(fol::equal(t, term()));
    }
    // plain term in formula position: a predicate atom
    if (t->kind == Term::Kind::Variable) lx_.fail("a predicate or equality");
    return fol::atom(t->name, t->args);
  }

  TermPtr term() {
    const Token& t = lx_.peek();
    if (t.kind == Tok::UpperWord) return fol::var(lx_.next().text);
    if (t.kind == Tok::LowerWord || t.kind == Tok::Quoted || t.kind == Tok::Integer) {
      std::string name = lx_.next().text;
      std::vector<TermPtr> args;
      if (lx_.peek().kind == Tok::LParen) {
        lx_.next();
        for (;;) {
          args.push_back(term());
          if (lx_.peek().kind == Tok::Comma) {
            lx_.next();
            continue;
          }
          break;
        }
        expect(Tok::RParen, "')'");
      }
      return fol::app(std::move(name), std::move(args));
    }
    lx_.fail("a term");
  }

  GeneralTerm general_term() {
    const Token& t = lx_.peek();
    GeneralTerm g;
    if (t.kind == Tok::LBracket) {
      lx_.next();
      g.kind = GeneralTerm::Kind::List;
      if (lx_.peek().kind != Tok::RBracket) {
        for (;;) {
          g.args.push_back(general_term());
          if (lx_.peek().kind == Tok::Comma) {
            lx_.next();
            continue;
          }
          break;
        }
      }
      expect(Tok::RBracket, "']'");
      return g;
    }
    if (t.kind == Tok::UpperWord) {
      g.kind = GeneralTerm::Kind::Variable;
      g.text = lx_.next().text;
      return g;
    }
    if (t.kind == Tok::Integer) {
      g.kind = GeneralTerm::Kind::Number;
      g.text = lx_.next().text;
      return g;
    }
    if (t.kind == Tok::LowerWord || t.kind == Tok::Quoted) {
      g.text = lx_.next().text;
      if (lx_.peek().kind == Tok::LParen) {
        lx_.next();
        g.kind = GeneralTerm::Kind::Application;
        if (lx_.peek().kind != Tok::RParen) {
          for (;;) {
            g.args.push_back(general_term());
            if (lx_.peek().kind == Tok::Comma) {
              lx_.next();
              continue;
            }
            break;
          }
        }
        expect(Tok::RParen, "')'");
      } else {
        g.kind = GeneralTerm::Kind::Atom;
      }
      return g;
    }
    lx_.fail("an annotation term");
  }

  using Term = fol::Term;
};

}  // namespace

// ---------------------------------------------------------------------------

std::vector<TstpRecord> parse_tstp(const std::string& text, std::vector<std::string>* warnings) {
  Parser p(text);
  std::vector<TstpRecord> records = p.records(warnings);

  // Role mapping: {axiom, hypothesis, definition} -> Axiom; {theorem, lemma,
  // plain with an inference annotation} -> Lemma; anything else is skipped
  // with a warning.
  std::vector<TstpRecord> out;
  std::set<std::string> seen;
  for (auto& r : records) {
    if (seen.count(r.name)) {
      if (warnings) warnings->push_back("duplicate record name '" + r.name + "' skipped");
      continue;
    }
    if (r.raw_role == "axiom" || r.raw_role == "hypothesis" || r.raw_role == "definition") {
      r.role = fol::Role::Axiom;
    } else if (r.raw_role == "theorem" || r.raw_role == "lemma" ||
               (r.raw_role == "plain" && r.annotation.has_value())) {
      r.role = fol::Role::Lemma;
    } else {
      if (warnings)
        warnings->push_back("record '" + r.name + "' with unsupported role '" + r.raw_role +
                            "' skipped");
      continue;
    }
    seen.insert(r.name);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::string> annotation_leaves(const GeneralTerm& t) {
  std::vector<std::string> out;
  std::function<void(const GeneralTerm&)> walk = [&](const GeneralTerm& g) {
    if (g.kind == GeneralTerm::Kind::Atom || g.kind == GeneralTerm::Kind::Application) {
      if (!g.text.empty()) out.push_back(g.text);
    }
    for (const auto& a : g.args) walk(a);
  };
  walk(t);
  return out;
}

dg::SupportMapping extract_support(const std::vector<TstpRecord>& records) {
  std::set<std::string> names;
  for (const auto& r : records) names.insert(r.name);
  dg::SupportMapping supp;
  for (const auto& r : records) {
    if (r.role != fol::Role::Lemma || !r.annotation) continue;
    std::set<std::string> deps;
    for (const auto& leaf : annotation_leaves(*r.annotation)) {
      if (leaf != r.name && names.count(leaf)) deps.insert(leaf);
    }
    if (!deps.empty()) supp.entries[r.name] = std::move(deps);
  }
  return supp;
}

fol::SymbolSet infer_signature(const std::vector<TstpRecord>& records) {
  fol::SymbolSet sig;
  for (const auto& r : records) fol::merge_symbols(sig, fol::symbols_of(r.formula));
  return sig;
}

dg::Structuring initial_structuring(const std::vector<TstpRecord>& records,
                                    const std::string& node_id) {
  if (records.empty()) throw EmptyTheoryError();
  dg::Node node;
  node.id = node_id;
  node.sig = infer_signature(records);
  for (const auto& r : records) {
    fol::NamedSentence s = fol::NamedSentence::make(r.name, r.role, r.formula);
    (r.role == fol::Role::Axiom ? node.axioms : node.lemmas).push_back(std::move(s));
  }
  dg::SupportMapping supp = extract_support(records);
  if (auto cycle = supp.find_cycle()) {
    std::string msg = "support cycle:";
    for (const auto& n : *cycle) msg += " " + n;
    throw std::runtime_error(msg);
  }
  return dg::make_initial(std::move(node), std::move(supp));
}

// ---------------------------------------------------------------------------
// Printer.

namespace {

void print_term(const TermPtr& t, std::ostream& os) {
  os << t->name;
  if (t->kind == fol::Term::Kind::Application && !t->args.empty()) {
    os << '(';
    for (size_t i = 0; i < t->args.size(); ++i) {
      if (i) os << ',';
      print_term(t->args[i], os);
    }
    os << ')';
  }
}

void print_formula(const FormulaPtr& f, std::ostream& os) {
  using K = fol::Formula::Kind;
  switch (f->kind) {
    case K::Forall:
    case K::Exists: {
      os << (f->kind == K::Forall ? "! [" : "? [");
      for (size_t i = 0; i < f->binders.size(); ++i) {
        if (i) os << ',';
        os << f->binders[i];
      }
      os << "] : ";
      bool paren = f->left->kind != K::Atom && f->left->kind != K::Equal &&
                   f->left->kind != K::Forall && f->left->kind != K::Exists && f->left->kind != K::Not;
      if (paren) os << '(';
      print_formula(f->left, os);
      if (paren) os << ')';
      return;
    }
    case K::Not: {
      os << "~ ";
      bool paren = f->left->kind != K::Atom && f->left->kind != K::Equal;
      if (paren) os << '(';
      print_formula(f->left, os);
      if (paren) os << ')';
      return;
    }
    case K::And:
    case K::Or:
    case K::Implies:
    case K::Iff: {
      const char* op = f->kind == K::And ? " & " : f->kind == K::Or ? " | " : f->kind == K::Implies ? " => " : " <=> ";
      auto side = [&](const FormulaPtr& g) {
        bool paren = g->kind != K::Atom && g->kind != K::Equal;
        if (paren) os << '(';
        print_formula(g, os);
        if (paren) os << ')';
      };
      side(f->left);
      os << op;
      side(f->right);
      return;
    }
    case K::Equal:
      print_term(f->args[0], os);
      os << " = ";
      print_term(f->args[1], os);
      return;
    case K::Atom:
      os << f->pred;
      if (!f->args.empty()) {
        os << '(';
        for (size_t i = 0; i < f->args.size(); ++i) {
          if (i) os << ',';
          print_term(f->args[i], os);
        }
        os << ')';
      }
      return;
  }
}

}  // namespace

std::string print_fof(const FormulaPtr& f) {
  std::ostringstream os;
  print_formula(f, os);
  return os.str();
}

fol::FormulaPtr parse_formula(const std::string& text) {
  Parser p(text);
  return p.formula_only();
}

}  // namespace theoryforge::tstp
