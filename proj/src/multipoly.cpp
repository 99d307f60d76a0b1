#include "hypsign/multipoly.hpp"

#include <cctype>
#include <stdexcept>

namespace hypsign {

MultiPoly MultiPoly::constant(const Rational& c) {
  MultiPoly p;
  p.add_term({}, c);
  return p;
}

MultiPoly MultiPoly::variable(const std::string& name) {
  MultiPoly p;
  p.add_term({{name, 1}}, 1);
  return p;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int MultiPoly::degree_in(const std::string& var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [m, c] : terms_) {
    auto it = m.find(var);
    if (it != m.end() && it->second > d) d = it->second;
  }
  return d;
}

MultiPoly MultiPoly::coefficient(const std::string& var, int k) const {
  MultiPoly out;
  for (const auto& [m, c] : terms_) {
    auto it = m.find(var);
    int e = it == m.end() ? 0 : it->second;
    if (e != k) continue;
    Monomial rest = m;
    rest.erase(var);
    out.add_term(rest, c);
  }
  return out;
}

Rational MultiPoly::evaluate(const std::map<std::string, Rational>& values) const {
  Rational acc = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (const auto& [v, e] : m) {
      auto it = values.find(v);
      if (it == values.end()) throw std::invalid_argument("MultiPoly::evaluate: no value for '" + v + "'");
      for (int i = 0; i < e; ++i) t *= it->second;
    }
    acc += t;
  }
  return acc;
}

MultiPoly MultiPoly::partial(const std::map<std::string, Rational>& values) const {
  MultiPoly out;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    Monomial rest;
    for (const auto& [v, e] : m) {
      auto it = values.find(v);
      if (it == values.end()) {
        rest[v] = e;
        continue;
      }
      for (int i = 0; i < e; ++i) t *= it->second;
    }
    out.add_term(rest, t);
  }
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
  MultiPoly out;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m = ma;
      for (const auto& [v, e] : mb) m[v] += e;
      out.add_term(m, ca * cb);
    }
  }
  *this = std::move(out);
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out;
  for (const auto& [m, c] : terms_) out.add_term(m, -c);
  return out;
}

MultiPoly MultiPoly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("MultiPoly::pow: negative exponent");
  MultiPoly out = constant(1);
  for (int i = 0; i < e; ++i) out *= *this;
  return out;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational mag = abs(c);
    s += c < 0 ? (s.empty() ? "-" : " - ") : (s.empty() ? "" : " + ");
    bool unit = mag == 1 && !m.empty();
    if (!unit) s += to_exact_string(mag);
    for (const auto& [v, e] : m) {
      s += v;
      if (e > 1) s += "^" + std::to_string(e);
    }
  }
  return s;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  MultiPoly run() {
    MultiPoly p = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("cannot parse '" + std::string(text_) + "' at " + std::to_string(pos_) + ": " + why);
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool starts_primary(char c) {
    return c == '(' || std::isalpha(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c)) ||
           c == '.';
  }

  MultiPoly expr() {
    MultiPoly acc = term();
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        acc += term();
      } else if (c == '-') {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc *= factor();
      } else if (c == '/') {
        ++pos_;
        MultiPoly d = factor();
        if (d.terms().size() != 1 || !d.terms().begin()->first.empty()) fail("division by a non-constant");
        acc *= MultiPoly::constant(1 / d.terms().begin()->second);
      } else if (starts_primary(c)) {
        acc *= power();
      } else {
        return acc;
      }
    }
  }

  MultiPoly factor() {
    if (peek() == '-') {
      ++pos_;
      return -factor();
    }
    if (peek() == '+') {
      ++pos_;
      return factor();
    }
    return power();
  }

  MultiPoly power() {
    MultiPoly base = primary();
    if (peek() == '^') {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected an integer exponent");
      return base.pow(std::stoi(std::string(text_.substr(start, pos_ - start))));
    }
    return base;
  }

  MultiPoly primary() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      MultiPoly p = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return p;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      ++pos_;
      return MultiPoly::variable(std::string(1, c));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
        ++pos_;
      }
      return MultiPoly::constant(parse_decimal(text_.substr(start, pos_ - start)));
    }
    fail("expected a number, a variable or '('");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

MultiPoly MultiPoly::parse(std::string_view text) { return Parser(text).run(); }

}  // namespace hypsign
