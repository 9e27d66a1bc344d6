#include "veltman/parser.hpp"

#include <cctype>

namespace veltman {
namespace {

enum class Tok {
  End, LParen, RParen, Neg, Box, Dia, And, Or, Arrow, Iff, Rhd, True, False, Ident,
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::End: return "end of input";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Neg: return "'~'";
    case Tok::Box: return "'[]'";
    case Tok::Dia: return "'<>'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::Rhd: return "'|>'";
    case Tok::True: return "'true'";
    case Tok::False: return "'false'";
    case Tok::Ident: return "variable";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  Tok tok() const { return tok_; }
  std::size_t tok_pos() const { return tokPos_; }
  const std::string& ident() const { return ident_; }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    tokPos_ = pos_;
    if (pos_ >= text_.size()) {
      tok_ = Tok::End;
      return;
    }
    char c = text_[pos_];
    switch (c) {
      case '(': ++pos_; tok_ = Tok::LParen; return;
      case ')': ++pos_; tok_ = Tok::RParen; return;
      case '~': case '!': ++pos_; tok_ = Tok::Neg; return;
      case '&': ++pos_; tok_ = Tok::And; return;
      case '[':
        if (peek(1) == ']') { pos_ += 2; tok_ = Tok::Box; return; }
        fail("'[]'");
      case '<':
        if (peek(1) == '-' && peek(2) == '>') { pos_ += 3; tok_ = Tok::Iff; return; }
        if (peek(1) == '>') { pos_ += 2; tok_ = Tok::Dia; return; }
        fail("'<>' or '<->'");
      case '-':
        if (peek(1) == '>') { pos_ += 2; tok_ = Tok::Arrow; return; }
        fail("'->'");
      case '|':
        if (peek(1) == '>') { pos_ += 2; tok_ = Tok::Rhd; return; }
        ++pos_; tok_ = Tok::Or; return;
      default: break;
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      ident_.assign(text_.substr(start, pos_ - start));
      if (ident_ == "true") tok_ = Tok::True;
      else if (ident_ == "false") tok_ = Tok::False;
      else tok_ = Tok::Ident;
      return;
    }
    fail("formula");
  }

  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(tokPos_, expected,
                     "syntax error at offset " + std::to_string(tokPos_) + ": expected " + expected);
  }

 private:
  char peek(std::size_t k) const { return pos_ + k < text_.size() ? text_[pos_ + k] : '\0'; }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t tokPos_ = 0;
  Tok tok_ = Tok::End;
  std::string ident_;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  Formula run() {
    Formula f = parse_iff();
    if (lex_.tok() != Tok::End) lex_.fail("end of input");
    return f;
  }

 private:
  Formula parse_iff() {
    Formula f = parse_imp();
    while (lex_.tok() == Tok::Iff) {
      lex_.advance();
      f = iff(f, parse_imp());
    }
    return f;
  }

  Formula parse_imp() {
    Formula f = parse_or();
    if (lex_.tok() == Tok::Arrow) {
      lex_.advance();
      return imp(f, parse_imp());
    }
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (lex_.tok() == Tok::Or) {
      lex_.advance();
      f = disj(f, parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_rhd();
    while (lex_.tok() == Tok::And) {
      lex_.advance();
      f = conj(f, parse_rhd());
    }
    return f;
  }

  Formula parse_rhd() {
    Formula f = parse_unary();
    if (lex_.tok() == Tok::Rhd) {
      lex_.advance();
      Formula g = parse_unary();
      // |> does not chain: a second unparenthesized |> is a syntax error
      if (lex_.tok() == Tok::Rhd) lex_.fail("parenthesized operand ('|>' is non-associative)");
      return rhd(f, g);
    }
    return f;
  }

  Formula parse_unary() {
    switch (lex_.tok()) {
      case Tok::Neg: lex_.advance(); return neg(parse_unary());
      case Tok::Box: lex_.advance(); return box(parse_unary());
      case Tok::Dia: lex_.advance(); return dia(parse_unary());
      case Tok::True: lex_.advance(); return top();
      case Tok::False: lex_.advance(); return bot();
      case Tok::Ident: {
        Formula f = var(lex_.ident());
        lex_.advance();
        return f;
      }
      case Tok::LParen: {
        lex_.advance();
        Formula f = parse_iff();
        if (lex_.tok() != Tok::RParen) lex_.fail(tok_name(Tok::RParen));
        lex_.advance();
        return f;
      }
      default:
        lex_.fail("formula");
    }
  }

  Lexer lex_;
};

}  // namespace

Formula parse(std::string_view text) { return Parser(text).run(); }

}  // namespace veltman
