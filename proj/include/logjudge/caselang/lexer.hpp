#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace logjudge::caselang {

struct SourcePos {
  std::size_t line = 1;    // 1-based
  std::size_t column = 1;  // 1-based, counted in code points

  friend auto operator<=>(const SourcePos&, const SourcePos&) = default;
};

enum class TokenKind : std::uint8_t {
  Ident,        // lowercase-initial name
  Variable,     // uppercase- or underscore-initial name
  Integer,
  QuotedAtom,   // 'text', '' escapes a quote
  String,       // "text", "" escapes a quote
  LParen,
  RParen,
  LBracket,
  RBracket,
  Bar,
  Comma,
  End,          // clause-terminating '.'
  Neck,         // :-
  Naf,          // \+
  Gt,
  Lt,
  Ge,
  Le,
  NotUnify,     // \=
  Plus,
  Minus,
  Star,
  Error,        // offending input, only produced by tokenize_lenient
  Eof,
};

inline std::string_view token_kind_name(TokenKind k) {
  switch (k) {
    case TokenKind::Ident: return "identifier";
    case TokenKind::Variable: return "variable";
    case TokenKind::Integer: return "integer";
    case TokenKind::QuotedAtom: return "quoted atom";
    case TokenKind::String: return "string";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::Bar: return "'|'";
    case TokenKind::Comma: return "','";
    case TokenKind::End: return "'.'";
    case TokenKind::Neck: return "':-'";
    case TokenKind::Naf: return "'\\+'";
    case TokenKind::Gt: return "'>'";
    case TokenKind::Lt: return "'<'";
    case TokenKind::Ge: return "'>='";
    case TokenKind::Le: return "'=<'";
    case TokenKind::NotUnify: return "'\\='";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::Star: return "'*'";
    case TokenKind::Error: return "invalid input";
    case TokenKind::Eof: return "end of input";
  }
  return "token";
}

struct Token {
  TokenKind kind;
  std::string text;     // decoded value for quoted atoms/strings, lexeme otherwise
  SourcePos pos;
  std::size_t offset;   // byte offset of the lexeme
  std::size_t length;   // byte length of the lexeme
};

class LexError : public std::runtime_error {
 public:
  LexError(SourcePos pos, const std::string& message)
      : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message),
        pos_(pos),
        message_(message) {}
  SourcePos pos() const noexcept { return pos_; }
  const std::string& message() const noexcept { return message_; }

 private:
  SourcePos pos_;
  std::string message_;
};

namespace detail {

inline bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
inline bool is_upper(char c) { return (c >= 'A' && c <= 'Z') || c == '_'; }
inline bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_name_char(char c) { return is_lower(c) || is_upper(c) || is_digit(c); }

class Scanner {
 public:
  explicit Scanner(std::string_view text, std::vector<LexError>* sink = nullptr) : text_(text), sink_(sink) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      stray_ = false;
      try {
        skip_layout();
        if (at_end()) break;
        out.push_back(scan());
      } catch (const LexError& e) {
        if (!sink_) throw;
        sink_->push_back(e);
        if (!stray_) {
          const std::size_t start = i_;
          const SourcePos pos = pos_;
          while (!at_end()) advance();
          out.push_back(make(TokenKind::Error, start, pos, std::string(text_.substr(start))));
          break;
        }
        // Skip the offending code point and keep scanning.
        const std::size_t start = i_;
        const SourcePos pos = pos_;
        const std::size_t width = utf8_width(peek());
        for (std::size_t k = 0; k < width && !at_end(); ++k) advance();
        out.push_back(make(TokenKind::Error, start, pos, std::string(text_.substr(start, i_ - start))));
      }
    }
    out.push_back(Token{TokenKind::Eof, "", pos_, i_, 0});
    return out;
  }

 private:
  bool at_end() const { return i_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const { return i_ + ahead < text_.size() ? text_[i_ + ahead] : '\0'; }

  void advance() {
    char c = text_[i_++];
    if (c == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++pos_.column;
    }
  }

  void skip_layout() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '%') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        SourcePos open = pos_;
        advance();
        advance();
        while (!(peek() == '*' && peek(1) == '/')) {
          if (at_end()) throw LexError(open, "unterminated block comment");
          advance();
        }
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  Token make(TokenKind kind, std::size_t start, SourcePos pos, std::string text) const {
    return Token{kind, std::move(text), pos, start, i_ - start};
  }

  Token scan() {
    const std::size_t start = i_;
    const SourcePos pos = pos_;
    const char c = peek();
    auto single = [&](TokenKind k) {
      advance();
      return make(k, start, pos, std::string(text_.substr(start, 1)));
    };
    auto pair = [&](TokenKind k) {
      advance();
      advance();
      return make(k, start, pos, std::string(text_.substr(start, 2)));
    };

    if (is_lower(c) || is_upper(c)) {
      while (is_name_char(peek())) advance();
      return make(is_lower(c) ? TokenKind::Ident : TokenKind::Variable, start, pos,
                  std::string(text_.substr(start, i_ - start)));
    }
    if (is_digit(c)) {
      while (is_digit(peek())) advance();
      return make(TokenKind::Integer, start, pos, std::string(text_.substr(start, i_ - start)));
    }
    if (c == '\'' || c == '"') return quoted(c, start, pos);
    switch (c) {
      case '(': return single(TokenKind::LParen);
      case ')': return single(TokenKind::RParen);
      case '[': return single(TokenKind::LBracket);
      case ']': return single(TokenKind::RBracket);
      case '|': return single(TokenKind::Bar);
      case ',': return single(TokenKind::Comma);
      case '.': return single(TokenKind::End);
      case '+': return single(TokenKind::Plus);
      case '-': return single(TokenKind::Minus);
      case '*': return single(TokenKind::Star);
      case ':':
        if (peek(1) == '-') return pair(TokenKind::Neck);
        break;
      case '\\':
        if (peek(1) == '+') return pair(TokenKind::Naf);
        if (peek(1) == '=') return pair(TokenKind::NotUnify);
        break;
      case '>':
        if (peek(1) == '=') return pair(TokenKind::Ge);
        return single(TokenKind::Gt);
      case '<':
        return single(TokenKind::Lt);
      case '=':
        if (peek(1) == '<') return pair(TokenKind::Le);
        break;
      default:
        break;
    }
    stray_ = true;
    throw LexError(pos, "unexpected character '" + std::string(text_.substr(start, utf8_width(c))) + "'");
  }

  static std::size_t utf8_width(char lead) {
    auto u = static_cast<unsigned char>(lead);
    if (u >= 0xF0) return 4;
    if (u >= 0xE0) return 3;
    if (u >= 0xC0) return 2;
    return 1;
  }

  Token quoted(char quote, std::size_t start, SourcePos pos) {
    advance();
    std::string value;
    while (true) {
      if (at_end()) {
        throw LexError(pos, quote == '\'' ? "unterminated quoted atom" : "unterminated string");
      }
      char c = peek();
      if (c == quote) {
        if (peek(1) == quote) {
          value.push_back(quote);
          advance();
          advance();
          continue;
        }
        advance();
        break;
      }
      value.push_back(c);
      advance();
    }
    return make(quote == '\'' ? TokenKind::QuotedAtom : TokenKind::String, start, pos, std::move(value));
  }

  std::string_view text_;
  std::vector<LexError>* sink_;
  bool stray_ = false;
  std::size_t i_ = 0;
  SourcePos pos_;
};

}  // namespace detail

/// Splits case-language source into tokens, ending with an Eof token.
/// Comments and whitespace are skipped. Throws LexError.
inline std::vector<Token> tokenize(std::string_view text) { return detail::Scanner(text).run(); }

/// Like tokenize, but records errors instead of throwing. A stray character
/// becomes an Error token; an unterminated quote or comment ends the input.
inline std::vector<Token> tokenize_lenient(std::string_view text, std::vector<LexError>& errors) {
  return detail::Scanner(text, &errors).run();
}

}  // namespace logjudge::caselang
