#include "newton_shape/io.hpp"

#include <algorithm>
#include <cctype>

#include "newton_shape/errors.hpp"

namespace nshape {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  LaurentPoly parse() {
    LaurentPoly out;
    skip();
    if (at_end()) fail({"term"});
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = peek() == '-';
      ++pos_;
      skip();
    }
    add(out, term(), negative);
    while (true) {
      skip();
      if (at_end()) break;
      char c = peek();
      if (c != '+' && c != '-') fail({"'+'", "'-'", "end of input"});
      ++pos_;
      skip();
      add(out, term(), c == '-');
    }
    return out;
  }

 private:
  struct Term {
    Rational coeff = 1;
    Rational xexp = 0;
    long yexp = 0;
  };

  static void add(LaurentPoly& out, const Term& t, bool negative) {
    out.add_term(ExpPoint(t.xexp, t.yexp), negative ? Rational(-t.coeff) : t.coeff);
  }

  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::string found = at_end() ? "end of input" : std::string(1, peek());
    throw ParseError(pos_, std::move(expected), found);
  }

  Integer integer(bool allow_sign) {
    skip();
    std::size_t start = pos_;
    if (allow_sign && !at_end() && peek() == '-') ++pos_;
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
      pos_ = start;
      fail({"integer"});
    }
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  Integer positive_integer() {
    skip();
    std::size_t start = pos_;
    Integer v = integer(false);
    if (v == 0) {
      pos_ = start;
      fail({"positive integer"});
    }
    return v;
  }

  void expect(char c) {
    skip();
    if (at_end() || peek() != c) fail({std::string("'") + c + "'"});
    ++pos_;
  }

  Term term() {
    skip();
    Term t;
    if (at_end()) fail({"integer", "'x'", "'y'"});
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = integer(false);
      Integer den = 1;
      skip();
      if (!at_end() && peek() == '/') {
        ++pos_;
        den = positive_integer();
      }
      t.coeff = make_rational(num, den);
      skip();
      if (at_end() || peek() != '*') return t;
      ++pos_;
      factor(t);
    } else if (c == 'x' || c == 'y') {
      factor(t);
    } else {
      fail({"integer", "'x'", "'y'"});
    }
    while (true) {
      skip();
      if (at_end() || peek() != '*') return t;
      ++pos_;
      factor(t);
    }
  }

  void factor(Term& t) {
    skip();
    if (at_end() || (peek() != 'x' && peek() != 'y')) fail({"'x'", "'y'"});
    char var = peek();
    ++pos_;
    skip();
    bool has_exp = !at_end() && peek() == '^';
    if (has_exp) ++pos_;
    if (var == 'x') {
      Rational e = 1;
      if (has_exp) {
        skip();
        if (!at_end() && peek() == '(') {
          ++pos_;
          Integer num = integer(true);
          expect('/');
          Integer den = positive_integer();
          expect(')');
          e = make_rational(num, den);
        } else {
          e = Rational(integer(true));
        }
      }
      t.xexp += e;
    } else {
      long e = 1;
      if (has_exp) e = to_long(integer(false));
      t.yexp += e;
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string render_exponent(const Rational& e) {
  if (is_integer(e)) return e.get_str();
  return "(" + e.get_str() + ")";
}

}  // namespace

LaurentPoly parse_poly(std::string_view text) { return Parser(text).parse(); }

std::string render_poly(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<ExpPoint, Rational>> terms(p.terms().begin(), p.terms().end());
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    Rational va = a.first.x + a.first.y, vb = b.first.x + b.first.y;
    if (va != vb) return va > vb;
    if (a.first.y != b.first.y) return a.first.y > b.first.y;
    return a.first.x > b.first.x;
  });
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms) {
    const bool negative = c < 0;
    const Rational mag = abs(c);
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::vector<std::string> parts;
    if (e.x != 0) parts.push_back(e.x == 1 ? "x" : "x^" + render_exponent(e.x));
    if (e.y != 0) parts.push_back(e.y == 1 ? "y" : "y^" + std::to_string(e.y));
    std::string mono;
    for (std::size_t i = 0; i < parts.size(); ++i) mono += (i ? "*" : "") + parts[i];
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out;
}

std::string render_point(const ExpPoint& e) { return "(" + e.x.get_str() + "," + std::to_string(e.y) + ")"; }

std::string render_point(const PlanePoint& p) { return "(" + p.x.get_str() + "," + p.y.get_str() + ")"; }

std::string render_direction(const Direction& d) {
  return "(" + std::to_string(d.rho()) + "," + std::to_string(d.sigma()) + ")";
}

}  // namespace nshape
