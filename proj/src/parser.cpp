#include <cctype>
#include <optional>
#include <vector>

#include "oag/error.hpp"
#include "oag/syntax.hpp"

namespace oag {
namespace {

enum class Tok {
  Ident, Number, LParen, RParen, Less, LessEq, Equal, NotEqual, Greater, GreaterEq,
  Plus, Minus, Star, And, Or, Arrow, Not, Dot, Forall, Exists, True, False, End,
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      SourceSpan span{pos_, pos_, line_, col_};
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", span});
        return out;
      }
      Token t = next(span);
      t.span.end = pos_;
      out.push_back(std::move(t));
    }
  }

 private:
  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i, ++pos_) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else if ((static_cast<unsigned char>(src_[pos_]) & 0xC0) != 0x80) {
        ++col_;
      }
    }
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

  Token next(SourceSpan span) {
    struct Sym {
      std::string_view text;
      Tok kind;
    };
    // Longest match first.
    static const Sym symbols[] = {
        {"<->", Tok::End}, {"->", Tok::Arrow}, {"<=", Tok::LessEq}, {">=", Tok::GreaterEq}, {"!=", Tok::NotEqual},
        {"&&", Tok::And},  {"||", Tok::Or},    {"<", Tok::Less},     {">", Tok::Greater},    {"=", Tok::Equal},
        {"(", Tok::LParen}, {")", Tok::RParen}, {"+", Tok::Plus},    {"-", Tok::Minus},      {"*", Tok::Star},
        {"&", Tok::And},   {"|", Tok::Or},     {"~", Tok::Not},      {"!", Tok::Not},        {".", Tok::Dot},
        {"∀", Tok::Forall}, {"∃", Tok::Exists}, {"∧", Tok::And}, {"∨", Tok::Or},
        {"¬", Tok::Not},    {"→", Tok::Arrow},  {"≤", Tok::LessEq}, {"≥", Tok::GreaterEq},
        {"≠", Tok::NotEqual}, {"⊤", Tok::True}, {"⊥", Tok::False},
    };
    for (const auto& s : symbols) {
      if (!starts_with(s.text)) continue;
      if (s.kind == Tok::End) throw ParseError("'<->' is not part of the syntax", span_of(span, s.text.size()));
      advance(s.text.size());
      return {s.kind, std::string(s.text), span};
    }
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
      if (pos_ + 1 < src_.size() && src_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
        advance();
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
      }
      return {Tok::Number, std::string(src_.substr(start, pos_ - start)), span};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
      std::size_t start = pos_;
      while (pos_ < src_.size()) {
        char d = src_[pos_];
        if (!std::isalnum(static_cast<unsigned char>(d)) && d != '_' && d != '$' && d != '\'') break;
        advance();
      }
      std::string word(src_.substr(start, pos_ - start));
      if (word == "forall") return {Tok::Forall, word, span};
      if (word == "exists") return {Tok::Exists, word, span};
      if (word == "true") return {Tok::True, word, span};
      if (word == "false") return {Tok::False, word, span};
      return {Tok::Ident, word, span};
    }
    throw ParseError(std::string("unexpected character '") + c + "'", span_of(span, 1));
  }

  static SourceSpan span_of(SourceSpan s, std::size_t len) {
    s.end = s.start + len;
    return s;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(Lexer(src).run()) {}

  Formula formula_eof() {
    Formula f = quantified();
    expect(Tok::End, "end of input");
    return f;
  }

  LinearTerm term_eof() {
    LinearTerm t = term();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  Token take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError("expected " + what + ", found " + found, t.span);
  }

  Token expect(Tok k, const std::string& what) {
    if (!at(k)) fail(what);
    return take();
  }

  bool at_quantifier() const {
    if (at(Tok::Forall) || at(Tok::Exists)) return true;
    return at(Tok::Ident) && (peek().text == "A" || peek().text == "E") && peek(1).kind == Tok::Ident;
  }

  Var variable() {
    Token t = expect(Tok::Ident, "variable");
    if (t.text == "sqrt") throw ParseError("'sqrt' cannot be used as a variable", t.span);
    return Var(t.text);
  }

  Formula quantified() {
    if (!at_quantifier()) return implication();
    Token q = take();
    bool is_forall = q.kind == Tok::Forall || q.text == "A";
    Var v = variable();
    if (at(Tok::Dot)) take();
    Formula body = quantified();
    return is_forall ? Formula::forall(v, body) : Formula::exists(v, body);
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (!at(Tok::Arrow)) return lhs;
    take();
    return Formula::implies(lhs, implication());
  }

  Formula disjunction() {
    std::vector<Formula> parts{conjunction()};
    while (at(Tok::Or)) {
      take();
      parts.push_back(conjunction());
    }
    return Formula::disj(std::move(parts));
  }

  Formula conjunction() {
    std::vector<Formula> parts{negation()};
    while (at(Tok::And)) {
      take();
      parts.push_back(negation());
    }
    return Formula::conj(std::move(parts));
  }

  Formula negation() {
    if (at(Tok::Not)) {
      take();
      return Formula::negation(negation());
    }
    if (at_quantifier()) return quantified();
    if (at(Tok::LParen)) {
      take();
      Formula f = quantified();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (at(Tok::True)) {
      take();
      return Formula::top();
    }
    if (at(Tok::False)) {
      take();
      return Formula::bottom();
    }
    return atom();
  }

  Formula atom() {
    if (at(Tok::Ident) && peek().text != "sqrt" && peek(1).kind == Tok::LParen) {
      std::string name = take().text;
      take();
      LinearTerm arg = term();
      expect(Tok::RParen, "')' closing predicate argument");
      return pred(name, arg);
    }
    LinearTerm lhs = term();
    Token rel = take();
    switch (rel.kind) {
      case Tok::Less: return lt(lhs, term());
      case Tok::Greater: return lt(term(), lhs);
      case Tok::Equal: return eq(lhs, term());
      case Tok::NotEqual: return Formula::negation(eq(lhs, term()));
      case Tok::LessEq: return le(lhs, term());
      case Tok::GreaterEq: return le(term(), lhs);
      default:
        --pos_;
        fail("relation (<, <=, =, !=, >, >=)");
    }
  }

  LinearTerm term() {
    SourceSpan start = peek().span;
    try {
      LinearTerm t = mono();
      while (at(Tok::Plus) || at(Tok::Minus)) {
        bool minus = take().kind == Tok::Minus;
        LinearTerm m = mono();
        t = minus ? t - m : t + m;
      }
      return t;
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), start);
    }
  }

  LinearTerm sqrt_literal(const Rational& coeff) {
    Token kw = take();
    expect(Tok::LParen, "'(' after sqrt");
    Token d = expect(Tok::Number, "radicand");
    expect(Tok::RParen, "')' after radicand");
    if (d.text.find('/') != std::string::npos) throw ParseError("radicand must be an integer", d.span);
    int radicand = d.text.size() > 3 ? 0 : std::stoi(d.text);
    if (!is_valid_radicand(radicand))
      throw ParseError("radicand " + d.text + " is not a square-free integer in [2, 97]", d.span);
    (void)kw;
    return LinearTerm(Scalar::quad(0, coeff, radicand));
  }

  LinearTerm mono() {
    if (at(Tok::Minus)) {
      take();
      return -mono();
    }
    if (at(Tok::Number)) {
      Rational coeff = Rational::parse(take().text);
      if (!at(Tok::Star)) return LinearTerm(Scalar(coeff));
      take();
      if (at(Tok::Ident) && peek().text == "sqrt") return sqrt_literal(coeff);
      return LinearTerm::variable(variable(), coeff);
    }
    if (at(Tok::Ident) && peek().text == "sqrt") return sqrt_literal(1);
    if (at(Tok::Ident)) return LinearTerm::variable(variable());
    fail("term");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).formula_eof(); }

LinearTerm parse_term(std::string_view text) { return Parser(text).term_eof(); }

}  // namespace oag
