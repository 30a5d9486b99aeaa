#include "dclab/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace dclab {

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto bad = [&] {
    return std::invalid_argument("not a rational literal: '" + text + "'");
  };
  std::string s = text;
  // Trim surrounding whitespace.
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw bad();

  if (auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den)) throw bad();
    Int d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    return Rational(Int(num), d);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string head = s.substr(0, dot), frac = s.substr(dot + 1);
    if (head.empty() || head == "-" || head == "+") head += "0";
    if (!is_integer_token(head) || frac.empty()) throw bad();
    for (char c : frac)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
    const bool negative = head[0] == '-';
    Int scale = pow_int(10, frac.size());
    Int whole(head);
    Int value = whole * scale + (negative ? -Int(frac) : Int(frac));
    return Rational(value, scale);
  }
  if (!is_integer_token(s)) throw bad();
  return Rational(Int(s));
}

std::string rat_str(const Rational& r) {
  std::string out = numerator(r).str();
  if (denominator(r) != 1) out += "/" + denominator(r).str();
  return out;
}

double rat_double(const Rational& r) { return static_cast<double>(r); }

Int pow_int(const Int& base, std::uint64_t exp) {
  Int result(1), b = base;
  while (exp != 0) {
    if (exp & 1) result *= b;
    exp >>= 1;
    if (exp != 0) b *= b;
  }
  return result;
}

int ceil_log3(const Int& n) {
  if (n < 1) throw std::invalid_argument("ceil_log3 needs n >= 1");
  int k = 0;
  Int p(1);
  while (p < n) {
    p *= 3;
    ++k;
  }
  return k;
}

int delta_exponent(const Rational& delta) {
  if (delta <= 0 || delta > 1)
    throw std::invalid_argument("delta_exponent needs 0 < delta <= 1: " + rat_str(delta));
  // Find m with 2^-(m+1) < delta <= 2^-m, i.e. the largest m with delta <= 2^-m.
  int m = 0;
  Rational bound(1, 2);
  while (delta <= bound) {
    bound /= 2;
    ++m;
  }
  return m;
}

}  // namespace dclab
