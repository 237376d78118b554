// SPDX-License-Identifier: Apache-2.0
#include "hypred/raw_input.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <type_traits>

#include "hypred/error.hpp"
#include "json.hpp"

namespace hypred {

namespace {

using nlohmann::ordered_json;

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;
};

Position position_of(std::string_view text, std::size_t offset) {
  Position pos;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
  }
  return pos;
}

std::string where(const Position& pos) {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column);
}

// Location of an input key, used to anchor validation errors.
struct KeyLocations {
  Position p, c, points;
};

RawPoint parse_point(std::string_view token, bool allow_inf) {
  if (token == "inf" || token == "infinity") {
    if (!allow_inf) throw Error(ErrorCode::InvalidArgument, "\"inf\" is only allowed in roots");
    return std::nullopt;
  }
  return Rational::parse(token);
}

std::int64_t parse_int64(std::string_view token) {
  const Rational q = Rational::parse(token);
  if (!q.is_integer() || !q.num().fits_slong_p()) {
    throw Error(ErrorCode::InvalidArgument, "p must be a machine-size integer, got " + std::string(token));
  }
  return q.num().get_si();
}

// Inline form: `name = value` statements separated by ';' or newlines,
// values are tokens or bracketed lists; '#' starts a comment.
class InlineParser {
 public:
  explicit InlineParser(std::string_view text) : text_(text) {}

  RawInput parse(KeyLocations& keys) {
    RawInput in;
    bool have_p = false;
    bool have_c = false;
    skip_separators();
    while (pos_ < text_.size()) {
      const std::size_t key_at = pos_;
      const std::string key = identifier();
      skip_blanks();
      expect('=');
      skip_blanks();
      const Position loc = position_of(text_, key_at);
      if (key == "p") {
        if (have_p) fail(key_at, "duplicate key 'p'");
        have_p = true;
        keys.p = loc;
        in.p = guarded(key_at, [&] { return parse_int64(token()); });
      } else if (key == "c") {
        if (have_c) fail(key_at, "duplicate key 'c'");
        have_c = true;
        keys.c = loc;
        const auto tok = token();
        in.c = guarded(key_at, [&] { return Rational::parse(tok); });
      } else if (key == "roots" || key == "coeffs") {
        if (in.roots || in.coeffs) fail(key_at, "only one of 'roots' and 'coeffs' may be given");
        keys.points = loc;
        const bool roots = key == "roots";
        std::vector<RawPoint> items;
        for (const auto& [at, tok] : list()) {
          items.push_back(guarded(at, [&] { return parse_point(tok, roots); }));
        }
        if (roots) {
          in.roots = std::move(items);
        } else {
          in.coeffs.emplace();
          for (auto& it : items) in.coeffs->push_back(*it);
        }
      } else {
        fail(key_at, "unknown key '" + key + "'");
      }
      skip_blanks();
      if (pos_ < text_.size() && text_[pos_] != ';' && text_[pos_] != '\n') {
        fail(pos_, "expected ';' or end of line");
      }
      skip_separators();
    }
    if (!have_p) fail(pos_, "missing key 'p'");
    if (!in.roots && !in.coeffs) fail(pos_, "missing 'roots' or 'coeffs'");
    return in;
  }

 private:
  template <typename F>
  std::invoke_result_t<F&> guarded(std::size_t at, F&& f) {
    try {
      return f();
    } catch (const Error& e) {
      fail(at, e.what());
    }
  }

  [[noreturn]] void fail(std::size_t at, const std::string& msg) const {
    const Position pos = position_of(text_, at);
    throw ParseError(pos.line, pos.column, msg);
  }

  void skip_blanks() {
    while (pos_ < text_.size()) {
      const char ch = text_[pos_];
      if (ch == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (ch == ' ' || ch == '\t' || ch == '\r') {
        ++pos_;
      } else {
        break;
      }
    }
  }

  void skip_separators() {
    for (;;) {
      skip_blanks();
      if (pos_ < text_.size() && (text_[pos_] == ';' || text_[pos_] == '\n')) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  void skip_space_and_newlines() {
    for (;;) {
      skip_blanks();
      if (pos_ < text_.size() && text_[pos_] == '\n') {
        ++pos_;
      } else {
        return;
      }
    }
  }

  void expect(char ch) {
    if (pos_ >= text_.size() || text_[pos_] != ch) fail(pos_, std::string("expected '") + ch + "'");
    ++pos_;
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail(start, "expected a key");
    return std::string(text_.substr(start, pos_ - start));
  }

  static bool token_char(char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+' || ch == '/';
  }

  std::string_view token() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && token_char(text_[pos_])) ++pos_;
    if (start == pos_) fail(start, "expected a value");
    return text_.substr(start, pos_ - start);
  }

  std::vector<std::pair<std::size_t, std::string_view>> list() {
    std::vector<std::pair<std::size_t, std::string_view>> out;
    expect('[');
    skip_space_and_newlines();
    if (pos_ < text_.size() && text_[pos_] == ']') {
      ++pos_;
      return out;
    }
    for (;;) {
      skip_space_and_newlines();
      const std::size_t at = pos_;
      out.emplace_back(at, token());
      skip_space_and_newlines();
      if (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        continue;
      }
      expect(']');
      return out;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

Position key_position(std::string_view text, const std::string& key) {
  const std::string quoted = "\"" + key + "\"";
  const auto at = text.find(quoted);
  return at == std::string_view::npos ? Position{} : position_of(text, at);
}

std::string scalar_text(const ordered_json& value, const Position& pos, const std::string& what) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return value.dump();
  throw ParseError(pos.line, pos.column, what + " must be a string or an integer");
}

RawInput parse_json(std::string_view text, KeyLocations& keys) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    const Position pos = position_of(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    if (const auto cut = msg.find("; last read"); cut != std::string::npos) msg = msg.substr(cut + 2);
    throw ParseError(pos.line, pos.column, "malformed JSON: " + msg);
  }
  if (!doc.is_object()) throw ParseError(1, 1, "input must be a JSON object");

  RawInput in;
  keys.p = key_position(text, "p");
  keys.c = key_position(text, "c");
  for (const auto& [key, value] : doc.items()) {
    const Position pos = key_position(text, key);
    try {
      if (key == "p") {
        if (!value.is_number_integer()) throw ParseError(pos.line, pos.column, "p must be an integer");
        in.p = value.get<std::int64_t>();
      } else if (key == "c") {
        in.c = Rational::parse(scalar_text(value, pos, "c"));
      } else if (key == "roots" || key == "coeffs") {
        if (in.roots || in.coeffs) throw ParseError(pos.line, pos.column, "only one of 'roots' and 'coeffs' may be given");
        if (!value.is_array()) throw ParseError(pos.line, pos.column, key + " must be an array");
        keys.points = pos;
        const bool roots = key == "roots";
        std::vector<RawPoint> items;
        for (const auto& item : value) items.push_back(parse_point(scalar_text(item, pos, key + " entries"), roots));
        if (roots) {
          in.roots = std::move(items);
        } else {
          in.coeffs.emplace();
          for (auto& it : items) in.coeffs->push_back(*it);
        }
      } else {
        throw ParseError(pos.line, pos.column, "unknown key '" + key + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(pos.line, pos.column, e.what());
    }
  }
  if (!doc.contains("p")) throw ParseError(1, 1, "missing key 'p'");
  if (!in.roots && !in.coeffs) throw ParseError(1, 1, "missing 'roots' or 'coeffs'");
  return in;
}

OddPrime checked_prime(std::int64_t p) {
  if (p == 2) throw Error(ErrorCode::ResidueCharTwo, "p = 2: residue characteristic 2 is not supported");
  if (!is_prime(p)) throw Error(ErrorCode::NotPrime, "p = " + std::to_string(p) + " is not a prime");
  return OddPrime(p);
}

}  // namespace

std::vector<RawPoint> branch_points(const RawInput& input) {
  checked_prime(input.p);
  if (input.c.is_zero()) throw Error(ErrorCode::InvalidArgument, "c must be nonzero");
  if (input.roots) return *input.roots;

  const RatPoly f(*input.coeffs);
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "coeffs describe the zero polynomial");
  const auto roots = rational_roots(f);
  std::vector<RawPoint> out;
  for (const auto& r : roots) {
    if (r.multiplicity > 1) {
      throw Error(ErrorCode::NotSquarefree, "root " + r.root.to_string() + " has multiplicity " +
                                                std::to_string(r.multiplicity));
    }
    out.emplace_back(r.root);
  }
  if (f.degree() % 2 != 0) out.emplace_back(std::nullopt);
  return out;
}

BranchConfig to_branch_config(const RawInput& input) {
  const auto points = branch_points(input);
  Rational c = input.c;
  if (input.coeffs) c *= RatPoly(*input.coeffs).leading();
  return normalize_branch_config(points, c, input.p);
}

RawInput parse_input(std::string_view text) {
  std::size_t first = 0;
  while (first < text.size() && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
  KeyLocations keys;
  RawInput in = first < text.size() && text[first] == '{' ? parse_json(text, keys) : InlineParser(text).parse(keys);
  try {
    to_branch_config(in);
  } catch (const Error& e) {
    const Position& pos = (e.code() == ErrorCode::NotPrime || e.code() == ErrorCode::ResidueCharTwo) ? keys.p
                          : e.code() == ErrorCode::InvalidArgument                                    ? keys.c
                                                                                                       : keys.points;
    const std::string msg = e.what();
    const auto colon = msg.find(": ");
    throw Error(e.code(), "input " + where(pos) + ": " + (colon == std::string::npos ? msg : msg.substr(colon + 2)));
  }
  return in;
}

std::string input_to_json(const RawInput& input) {
  ordered_json doc;
  doc["p"] = input.p;
  if (input.roots) {
    auto arr = ordered_json::array();
    for (const auto& r : *input.roots) arr.push_back(r ? r->to_string() : "inf");
    doc["roots"] = std::move(arr);
  } else if (input.coeffs) {
    auto arr = ordered_json::array();
    for (const auto& q : *input.coeffs) arr.push_back(q.to_string());
    doc["coeffs"] = std::move(arr);
  }
  doc["c"] = input.c.to_string();
  return doc.dump();
}

}  // namespace hypred
