#include "rightham/parser.hpp"

#include <cctype>
#include <limits>
#include <optional>

#include "rightham/errors.hpp"

namespace rightham {

namespace {

enum class Tok { Number, Identifier, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t position;  // 1-based
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::size_t start = pos_;
    if (pos_ >= text_.size()) return {Tok::End, {}, start + 1};
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '.') {
        ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
      return {Tok::Number, text_.substr(start, pos_ - start), start + 1};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      return {Tok::Identifier, text_.substr(start, pos_ - start), start + 1};
    }
    ++pos_;
    switch (c) {
      case '+': return {Tok::Plus, text_.substr(start, 1), start + 1};
      case '-': return {Tok::Minus, text_.substr(start, 1), start + 1};
      case '*': return {Tok::Star, text_.substr(start, 1), start + 1};
      case '/': return {Tok::Slash, text_.substr(start, 1), start + 1};
      case '^': return {Tok::Caret, text_.substr(start, 1), start + 1};
      case '(': return {Tok::LParen, text_.substr(start, 1), start + 1};
      case ')': return {Tok::RParen, text_.substr(start, 1), start + 1};
      default:
        throw ParseError(ParseError::Kind::Syntax, start + 1,
                         std::string("unexpected character '") + c + "'");
    }
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::string_view text, const ContextPtr& ctx, const SymbolTable* symbols)
      : lexer_(text), ctx_(ctx), symbols_(symbols) {
    advance();
  }

  PhasePoly parse() {
    auto result = expr();
    if (current_.kind != Tok::End) syntax("unexpected '" + std::string(current_.text) + "'");
    return result;
  }

 private:
  void advance() { current_ = lexer_.next(); }

  [[noreturn]] void syntax(const std::string& message) const {
    throw ParseError(ParseError::Kind::Syntax, current_.position, message);
  }

  PhasePoly expr() {
    auto lhs = term();
    while (current_.kind == Tok::Plus || current_.kind == Tok::Minus) {
      const bool minus = current_.kind == Tok::Minus;
      advance();
      auto rhs = term();
      if (minus) {
        lhs -= rhs;
      } else {
        lhs += rhs;
      }
    }
    return lhs;
  }

  PhasePoly term() {
    auto lhs = factor();
    while (current_.kind == Tok::Star || current_.kind == Tok::Slash) {
      const bool divide = current_.kind == Tok::Slash;
      const std::size_t at = current_.position;
      advance();
      auto rhs = factor();
      if (divide) {
        if (!rhs.is_constant()) {
          throw ParseError(ParseError::Kind::BadDivision, at, "division by a non-constant expression");
        }
        if (rhs.is_zero()) throw ParseError(ParseError::Kind::BadDivision, at, "division by zero");
        lhs *= Rational(1) / rhs.constant_term();
      } else {
        lhs = guarded([&] { return lhs * rhs; }, at);
      }
    }
    return lhs;
  }

  PhasePoly factor() {
    if (current_.kind == Tok::Minus) {
      advance();
      return -factor();
    }
    auto b = base();
    if (current_.kind == Tok::Caret) {
      const std::size_t at = current_.position;
      advance();
      if (current_.kind != Tok::Number || current_.text.find('.') != std::string_view::npos) {
        syntax("exponent must be an unsigned integer");
      }
      const unsigned long exponent = exponent_value();
      advance();
      if (!b.is_constant() && exponent > ctx_->limits().max_degree) {
        throw ParseError(ParseError::Kind::ExponentOverflow, at,
                         "exponent " + std::to_string(exponent) + " exceeds the degree budget of " +
                             std::to_string(ctx_->limits().max_degree));
      }
      return guarded([&] { return pow(b, static_cast<unsigned>(exponent)); }, at);
    }
    return b;
  }

  unsigned long exponent_value() const {
    // Large enough for any constant the budget would let through.
    constexpr unsigned long cap = 1UL << 16;
    unsigned long value = 0;
    for (char c : current_.text) {
      value = value * 10 + static_cast<unsigned long>(c - '0');
      if (value > cap) {
        throw ParseError(ParseError::Kind::ExponentOverflow, current_.position, "exponent too large");
      }
    }
    return value;
  }

  PhasePoly base() {
    switch (current_.kind) {
      case Tok::Number: {
        auto value = parse_rational(current_.text);
        advance();
        return PhasePoly::constant(ctx_, value);
      }
      case Tok::Identifier: {
        auto result = resolve(current_.text, current_.position);
        advance();
        return result;
      }
      case Tok::LParen: {
        advance();
        auto inner = expr();
        if (current_.kind != Tok::RParen) syntax("expected ')'");
        advance();
        return inner;
      }
      case Tok::End:
        syntax("unexpected end of expression");
      default:
        syntax("unexpected '" + std::string(current_.text) + "'");
    }
  }

  PhasePoly resolve(std::string_view name, std::size_t at) const {
    if (auto var = ctx_->lookup_variable(name)) return PhasePoly::variable(ctx_, *var);
    if (auto value = ctx_->param(name)) return PhasePoly::constant(ctx_, *value);
    if (symbols_ != nullptr) {
      if (auto it = symbols_->find(name); it != symbols_->end()) {
        if (!it->second.context()->compatible(*ctx_)) throw ContextMismatch();
        return it->second;
      }
    }
    throw ParseError(ParseError::Kind::UnboundIdentifier, at,
                     "unbound identifier '" + std::string(name) + "'");
  }

  template <typename F>
  PhasePoly guarded(F&& op, std::size_t at) const {
    try {
      return op();
    } catch (const BudgetExceeded& e) {
      throw ParseError(ParseError::Kind::ExponentOverflow, at, e.what());
    }
  }

  Lexer lexer_;
  Token current_{Tok::End, {}, 0};
  const ContextPtr& ctx_;
  const SymbolTable* symbols_;
};

}  // namespace

PhasePoly parse_expression(std::string_view text, const ContextPtr& ctx, const SymbolTable* symbols) {
  return Parser(text, ctx, symbols).parse();
}

}  // namespace rightham
