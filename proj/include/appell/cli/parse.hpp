#pragma once

// Text forms used on the command line: complex literals (a+bi), grids
// (min:max:steps), integer lists, and g specifications.

#include <cctype>
#include <charconv>
#include <complex>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "appell/errors.hpp"
#include "appell/generating_function.hpp"
#include "appell/polynomial.hpp"

namespace appell::cli {

using cplx = std::complex<double>;

/// Raised for malformed command-line input (exit status 2).
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

inline double parse_real(std::string_view s, std::string_view what) {
  std::string t(s);
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || p != t.data() + t.size())
    throw input_error("invalid number '" + std::string(s) + "' in " + std::string(what));
  return v;
}

// "", "+", "-" stand for 1, 1, -1 in front of i.
inline double parse_imag_factor(std::string_view s, std::string_view what) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_real(s, what);
}

}  // namespace detail

/// a, bi, a+bi, a-bi, i, -i (no spaces).
inline cplx parse_complex(std::string_view text) {
  const std::string s = detail::trim(text);
  if (s.empty()) throw input_error("empty complex literal");
  if (s.back() != 'i') return {detail::parse_real(s, s), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not leading and not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, detail::parse_imag_factor(body, s)};
  return {detail::parse_real(body.substr(0, split), s), detail::parse_imag_factor(body.substr(split), s)};
}

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Inverse of parse_complex, exact for doubles.
inline std::string format_complex(cplx z) {
  if (z.imag() == 0.0) return format_real(z.real());
  char buf[80];
  if (z.real() == 0.0)
    std::snprintf(buf, sizeof buf, "%.17gi", z.imag());
  else
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

struct Axis {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;
  bool operator==(const Axis&) const = default;

  double at(int k) const { return steps == 1 ? min : min + (max - min) * double(k) / double(steps - 1); }
};

inline Axis parse_axis(std::string_view text) {
  const auto parts = detail::split(text, ':');
  if (parts.size() != 3) throw input_error("grid must be min:max:steps, got '" + std::string(text) + "'");
  Axis a;
  a.min = detail::parse_real(parts[0], "grid");
  a.max = detail::parse_real(parts[1], "grid");
  int steps = 0;
  const auto [p, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), steps);
  if (ec != std::errc{} || p != parts[2].data() + parts[2].size() || steps < 1)
    throw input_error("grid steps must be a positive integer, got '" + parts[2] + "'");
  a.steps = steps;
  return a;
}

inline std::string format_axis(const Axis& a) {
  return format_real(a.min) + ":" + format_real(a.max) + ":" + std::to_string(a.steps);
}

inline std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  for (const auto& item : detail::split(text, ',')) {
    int v = 0;
    const auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || p != item.data() + item.size())
      throw input_error("invalid integer '" + item + "'");
    out.push_back(v);
  }
  return out;
}

inline std::vector<cplx> parse_complex_list(std::string_view text) {
  std::vector<cplx> out;
  for (const auto& item : detail::split(text, ',')) out.push_back(parse_complex(item));
  return out;
}

namespace detail {

/// Recursive descent over +, -, *, ^, parentheses, complex literals and x (or z).
class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  PolynomialC parse() {
    PolynomialC p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw input_error("g expression: " + msg + " at position " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  PolynomialC expr() {
    PolynomialC acc = term();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      const PolynomialC t = term();
      acc = c == '+' ? acc + t : acc - t;
    }
    return acc;
  }

  static bool starts_factor(char c) {
    return c == '(' || c == 'x' || c == 'z' || c == 'i' || c == '.' || std::isdigit(static_cast<unsigned char>(c));
  }

  PolynomialC term() {
    PolynomialC acc = unary();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * unary();
      } else if (starts_factor(c)) {
        acc = acc * power();  // implicit product, e.g. (x-1)(x+2) or 2x
      } else {
        return acc;
      }
    }
  }

  PolynomialC unary() {
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  PolynomialC power() {
    PolynomialC base = atom();
    if (peek() != '^') return base;
    ++pos_;
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a non-negative integer exponent");
    const int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
    PolynomialC out(std::vector<cplx>{1.0});
    for (int k = 0; k < e; ++k) out = out * base;
    return out;
  }

  PolynomialC atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      PolynomialC p = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return p;
    }
    if (c == 'x' || c == 'z') {
      ++pos_;
      return PolynomialC(std::vector<cplx>{0.0, 1.0});
    }
    if (c == 'i') {
      ++pos_;
      return PolynomialC(std::vector<cplx>{cplx(0.0, 1.0)});
    }
    if (c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
        std::size_t k = pos_ + 1;
        if (k < s_.size() && (s_[k] == '+' || s_[k] == '-')) ++k;
        if (k < s_.size() && std::isdigit(static_cast<unsigned char>(s_[k]))) {
          pos_ = k;
          while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
      }
      const double v = parse_real(s_.substr(start, pos_ - start), "g expression");
      if (pos_ < s_.size() && s_[pos_] == 'i') {
        ++pos_;
        return PolynomialC(std::vector<cplx>{cplx(0.0, v)});
      }
      return PolynomialC(std::vector<cplx>{v});
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

}  // namespace detail

/// "bernoulli", a coefficient list "c0,c1,..." or a polynomial expression in x.
inline GeneratingFunction parse_gspec(std::string_view text) {
  const std::string s = detail::trim(text);
  if (s.empty()) throw input_error("empty g specification");
  if (s == "bernoulli") return GeneratingFunction::bernoulli();
  PolynomialC p;
  if (s.find(',') != std::string::npos)
    p = PolynomialC(parse_complex_list(s));
  else
    p = detail::PolyParser(s).parse();
  try {
    return GeneratingFunction::polynomial(p);
  } catch (const appell::domain_error& e) {
    throw input_error(std::string("invalid g '") + s + "': " + e.what());
  }
}

}  // namespace appell::cli
