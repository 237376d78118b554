// SPDX-License-Identifier: Apache-2.0
#include "hypred/dot_syntax.hpp"

#include <cctype>
#include <optional>

#include "hypred/error.hpp"

namespace hypred {

namespace {

enum class Tok { Id, LBrace, RBrace, LBracket, RBracket, Equals, Semi, Comma, Colon, EdgeOp, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip();
      Token t{Tok::End, "", line_, column_};
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      const char ch = text_[pos_];
      switch (ch) {
        case '{': t.kind = Tok::LBrace; break;
        case '}': t.kind = Tok::RBrace; break;
        case '[': t.kind = Tok::LBracket; break;
        case ']': t.kind = Tok::RBracket; break;
        case '=': t.kind = Tok::Equals; break;
        case ';': t.kind = Tok::Semi; break;
        case ',': t.kind = Tok::Comma; break;
        case ':': t.kind = Tok::Colon; break;
        default: break;
      }
      if (t.kind != Tok::End) {
        t.text = std::string(1, ch);
        advance();
      } else if (ch == '-' && pos_ + 1 < text_.size() && (text_[pos_ + 1] == '-' || text_[pos_ + 1] == '>')) {
        t.kind = Tok::EdgeOp;
        t.text = text_.substr(pos_, 2);
        advance();
        advance();
      } else if (ch == '"') {
        t.kind = Tok::Id;
        t.text = quoted();
      } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_' || static_cast<unsigned char>(ch) >= 0x80) {
        t.kind = Tok::Id;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
                                       static_cast<unsigned char>(text_[pos_]) >= 0x80)) {
          t.text += text_[pos_];
          advance();
        }
      } else if (ch == '-' || ch == '.' || std::isdigit(static_cast<unsigned char>(ch))) {
        t.kind = Tok::Id;
        t.text = numeral();
      } else {
        throw ParseError(line_, column_, std::string("unexpected character '") + ch + "'");
      }
      out.push_back(std::move(t));
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < text_.size()) {
      const char ch = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(ch))) {
        advance();
      } else if (ch == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (ch == '#' && column_ == 1) {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (ch == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '*') {
        const std::size_t line = line_;
        const std::size_t column = column_;
        advance();
        advance();
        while (pos_ + 1 < text_.size() && !(text_[pos_] == '*' && text_[pos_ + 1] == '/')) advance();
        if (pos_ + 1 >= text_.size()) throw ParseError(line, column, "unterminated comment");
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  std::string quoted() {
    const std::size_t line = line_;
    const std::size_t column = column_;
    advance();
    std::string s;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) {
        advance();
        if (text_[pos_] != '"') s += '\\';
      }
      s += text_[pos_];
      advance();
    }
    if (pos_ >= text_.size()) throw ParseError(line, column, "unterminated string");
    advance();
    return s;
  }

  std::string numeral() {
    const std::size_t line = line_;
    const std::size_t column = column_;
    std::string s;
    if (text_[pos_] == '-') {
      s += '-';
      advance();
    }
    bool digits = false;
    bool dot = false;
    while (pos_ < text_.size()) {
      const char ch = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        digits = true;
      } else if (ch == '.' && !dot) {
        dot = true;
      } else {
        break;
      }
      s += ch;
      advance();
    }
    if (!digits) throw ParseError(line, column, "malformed numeral");
    return s;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

bool keyword(const Token& t, std::string_view word) {
  if (t.kind != Tok::Id || t.text.size() != word.size()) return false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(t.text[i])) != word[i]) return false;
  }
  return true;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  DotGraph graph() {
    DotGraph g;
    if (keyword(peek(), "strict")) {
      g.strict = true;
      ++i_;
    }
    if (keyword(peek(), "graph")) {
      g.directed = false;
    } else if (keyword(peek(), "digraph")) {
      g.directed = true;
    } else {
      fail("expected 'graph' or 'digraph'");
    }
    ++i_;
    if (peek().kind == Tok::Id) g.name = toks_[i_++].text;
    expect(Tok::LBrace, "'{'");
    graph_ = &g;
    Defaults defaults;
    stmt_list(defaults);
    expect(Tok::RBrace, "'}'");
    if (peek().kind != Tok::End) fail("trailing input after graph");
    return g;
  }

 private:
  struct Defaults {
    DotAttributes node;
    DotAttributes edge;
  };

  const Token& peek() const { return toks_[i_]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(peek().line, peek().column, msg + (peek().text.empty() ? "" : ", found '" + peek().text + "'"));
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    ++i_;
  }

  std::string id() {
    if (peek().kind != Tok::Id) fail("expected an identifier");
    return toks_[i_++].text;
  }

  void stmt_list(Defaults& defaults) {
    while (peek().kind != Tok::RBrace && peek().kind != Tok::End) {
      stmt(defaults);
      if (peek().kind == Tok::Semi) ++i_;
    }
  }

  void attr_list(DotAttributes& into) {
    while (peek().kind == Tok::LBracket) {
      ++i_;
      while (peek().kind != Tok::RBracket) {
        const std::string key = id();
        std::string value = "true";
        if (peek().kind == Tok::Equals) {
          ++i_;
          value = id();
        }
        into[key] = value;
        if (peek().kind == Tok::Semi || peek().kind == Tok::Comma) ++i_;
      }
      ++i_;
    }
  }

  // Returns the node ids of a node_id or subgraph operand.
  std::vector<std::string> operand(Defaults& defaults) {
    if (peek().kind == Tok::LBrace || keyword(peek(), "subgraph")) return subgraph(defaults);
    std::string name = id();
    if (peek().kind == Tok::Colon) {
      ++i_;
      id();
      if (peek().kind == Tok::Colon) {
        ++i_;
        id();
      }
    }
    return {name};
  }

  std::vector<std::string> subgraph(Defaults& defaults) {
    if (keyword(peek(), "subgraph")) {
      ++i_;
      if (peek().kind == Tok::Id) ++i_;
    }
    expect(Tok::LBrace, "'{'");
    const std::size_t first_node = graph_->nodes.size();
    const std::size_t first_edge = graph_->edges.size();
    Defaults inner = defaults;
    stmt_list(inner);
    expect(Tok::RBrace, "'}'");
    std::vector<std::string> ids;
    for (std::size_t k = first_node; k < graph_->nodes.size(); ++k) ids.push_back(graph_->nodes[k].id);
    for (std::size_t k = first_edge; k < graph_->edges.size(); ++k) {
      ids.push_back(graph_->edges[k].tail);
      ids.push_back(graph_->edges[k].head);
    }
    return ids;
  }

  void stmt(Defaults& defaults) {
    if (keyword(peek(), "graph") || keyword(peek(), "node") || keyword(peek(), "edge")) {
      const std::string which = toks_[i_].text;
      ++i_;
      if (peek().kind != Tok::LBracket) fail("expected '[' after '" + which + "'");
      DotAttributes attrs;
      attr_list(attrs);
      auto& target = which == "node" ? defaults.node : which == "edge" ? defaults.edge : graph_attrs_;
      for (auto& [k, v] : attrs) target[k] = v;
      return;
    }
    const bool starts_subgraph = peek().kind == Tok::LBrace || keyword(peek(), "subgraph");
    const std::size_t before = i_;
    auto left = operand(defaults);
    if (!starts_subgraph && peek().kind == Tok::Equals) {
      i_ = before;
      const std::string key = id();
      ++i_;
      graph_attrs_[key] = id();
      return;
    }
    if (peek().kind == Tok::EdgeOp) {
      std::vector<std::vector<std::string>> chain{left};
      while (peek().kind == Tok::EdgeOp) {
        if ((peek().text == "->") != graph_->directed) fail("edge operator does not match the graph kind");
        ++i_;
        chain.push_back(operand(defaults));
      }
      DotAttributes attrs = defaults.edge;
      attr_list(attrs);
      for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        for (const auto& a : chain[k]) {
          for (const auto& b : chain[k + 1]) graph_->edges.push_back(DotEdge{a, b, attrs});
        }
      }
      return;
    }
    if (starts_subgraph) return;
    DotAttributes attrs = defaults.node;
    attr_list(attrs);
    graph_->nodes.push_back(DotNode{left.front(), attrs});
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  DotGraph* graph_ = nullptr;
  DotAttributes graph_attrs_;
};

}  // namespace

DotGraph parse_dot(std::string_view text) { return Parser(Lexer(text).run()).graph(); }

}  // namespace hypred
