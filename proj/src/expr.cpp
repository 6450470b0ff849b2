#include "arbor/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <vector>

#include "arbor/core.hpp"

namespace arbor {

namespace {

using Fn = std::function<double(double)>;

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Fn parse() {
    Fn f = expression();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidArgument("expression error at offset " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Fn expression() {
    Fn lhs = term();
    for (;;) {
      if (accept('+')) {
        Fn r = term();
        lhs = [lhs, r](double t) { return lhs(t) + r(t); };
      } else if (accept('-')) {
        Fn r = term();
        lhs = [lhs, r](double t) { return lhs(t) - r(t); };
      } else {
        return lhs;
      }
    }
  }

  Fn term() {
    Fn lhs = unary();
    for (;;) {
      if (accept('*')) {
        Fn r = unary();
        lhs = [lhs, r](double t) { return lhs(t) * r(t); };
      } else if (accept('/')) {
        Fn r = unary();
        lhs = [lhs, r](double t) { return lhs(t) / r(t); };
      } else {
        return lhs;
      }
    }
  }

  Fn unary() {
    if (accept('-')) {
      Fn f = unary();
      return [f](double t) { return -f(t); };
    }
    if (accept('+')) return unary();
    return power();
  }

  Fn power() {
    Fn base = primary();
    if (accept('^')) {
      Fn e = unary();  // right associative
      return [base, e](double t) { return std::pow(base(t), e(t)); };
    }
    return base;
  }

  std::vector<Fn> arguments() {
    std::vector<Fn> args;
    if (!accept('(')) fail("expected '('");
    if (accept(')')) return args;
    do args.push_back(expression());
    while (accept(','));
    if (!accept(')')) fail("expected ')'");
    return args;
  }

  Fn primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (accept('(')) {
      Fn f = expression();
      if (!accept(')')) fail("expected ')'");
      return f;
    }
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return [v](double) { return v; };
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      if (name == "t" || name == "r") return [](double t) { return t; };
      if (name == "pi") return [](double) { return kPi; };
      return call(name);
    }
    fail("unexpected character");
  }

  Fn call(const std::string& name) {
    std::vector<Fn> a = arguments();
    auto need = [&](std::size_t n) {
      if (a.size() != n) fail(name + " expects " + std::to_string(n) + " argument(s)");
    };
    using U = double (*)(double);
    static const std::pair<const char*, U> unary_table[] = {
        {"abs", [](double x) { return std::abs(x); }},   {"exp", [](double x) { return std::exp(x); }},
        {"log", [](double x) { return std::log(x); }},   {"sqrt", [](double x) { return std::sqrt(x); }},
        {"sin", [](double x) { return std::sin(x); }},   {"cos", [](double x) { return std::cos(x); }},
        {"tanh", [](double x) { return std::tanh(x); }},
    };
    for (auto [n, f] : unary_table) {
      if (name == n) {
        need(1);
        Fn x = a[0];
        return [f, x](double t) { return f(x(t)); };
      }
    }
    if (name == "min" || name == "max" || name == "pow") {
      need(2);
      Fn x = a[0], y = a[1];
      if (name == "min") return [x, y](double t) { return std::min(x(t), y(t)); };
      if (name == "max") return [x, y](double t) { return std::max(x(t), y(t)); };
      return [x, y](double t) { return std::pow(x(t), y(t)); };
    }
    fail("unknown function " + name);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::function<double(double)> parse_expression(const std::string& text) { return Parser(text).parse(); }

}  // namespace arbor
