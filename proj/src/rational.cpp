#include "frcert/rational.hpp"

#include <cctype>
#include <cstdio>
#include <numeric>

namespace frcert {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

// GMP auto-detects the base from a leading 0 (octal) or 0x, so strip them.
BigInt decimal_int(std::string_view digits) {
  std::size_t first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return BigInt(0);
  return BigInt{std::string(digits.substr(first))};
}

BigInt parse_int(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
  BigInt value = decimal_int(s);
  return negative ? BigInt(-value) : value;
}

BigInt pow10(unsigned long e) {
  BigInt r(1);
  for (unsigned long i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_int(text.substr(0, slash), whole);
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && den_text.front() == '+') den_text.remove_prefix(1);
    if (!all_digits(den_text)) throw std::invalid_argument("malformed denominator in '" + std::string(whole) + "'");
    BigInt den = decimal_int(den_text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
    return Rat(num, den);
  }

  // Decimal with optional fraction and exponent.
  long exponent = 0;
  std::string_view mantissa = text;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    BigInt ex = parse_int(text.substr(e + 1), whole);
    if (abs(ex) > 100000) throw std::invalid_argument("exponent out of range in '" + std::string(whole) + "'");
    exponent = ex.convert_to<long>();
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long frac_len = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view ip = mantissa.substr(0, dot), fp = mantissa.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
    digits = std::string(ip) + std::string(fp);
    frac_len = static_cast<long>(fp.size());
  } else {
    if (!all_digits(mantissa)) throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
    digits = std::string(mantissa);
  }
  BigInt num = decimal_int(digits);
  if (negative) num = -num;
  long scale = exponent - frac_len;
  if (scale >= 0) return Rat(num * pow10(static_cast<unsigned long>(scale)));
  return Rat(num, pow10(static_cast<unsigned long>(-scale)));
}

std::string to_string(const Rat& value) { return value.str(); }

std::string terminating_decimal(const Rat& value) {
  BigInt num = numerator(value), den = denominator(value);
  unsigned long twos = 0, fives = 0;
  BigInt d = den;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1) return {};
  unsigned long places = std::max(twos, fives);
  BigInt scaled = num * pow10(places) / den;
  bool negative = scaled < 0;
  std::string digits = (negative ? BigInt(-scaled) : scaled).str();
  if (places > 0) {
    if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
    digits.insert(digits.size() - places, ".");
    while (digits.back() == '0') digits.pop_back();
    if (digits.back() == '.') digits.pop_back();
  }
  return negative ? "-" + digits : digits;
}

std::string approx_decimal(const Rat& value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value.convert_to<double>());
  return buf;
}

RatMatrix identity(Index n) {
  RatMatrix m = RatMatrix::Constant(n, n, Rat(0));
  for (Index i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix zeros(Index rows, Index cols) { return RatMatrix::Constant(rows, cols, Rat(0)); }

RatMatrix sym_from_upper(Index n, const std::vector<Rat>& upper) {
  if (static_cast<Index>(upper.size()) != n * (n + 1) / 2)
    throw DimensionError("sym_from_upper: expected " + std::to_string(n * (n + 1) / 2) + " entries, got " +
                         std::to_string(upper.size()));
  RatMatrix m(n, n);
  std::size_t k = 0;
  for (Index r = 0; r < n; ++r)
    for (Index c = r; c < n; ++c) m(r, c) = m(c, r) = upper[k++];
  return m;
}

std::vector<Rat> upper_entries(const RatMatrix& a) {
  std::vector<Rat> out;
  out.reserve(static_cast<std::size_t>(a.rows() * (a.rows() + 1) / 2));
  for (Index r = 0; r < a.rows(); ++r)
    for (Index c = r; c < a.cols(); ++c) out.push_back(a(r, c));
  return out;
}

RatMatrix make_matrix(std::initializer_list<std::initializer_list<Rat>> rows) {
  Index nr = static_cast<Index>(rows.size());
  Index nc = nr == 0 ? 0 : static_cast<Index>(rows.begin()->size());
  RatMatrix m(nr, nc);
  Index r = 0;
  for (const auto& row : rows) {
    if (static_cast<Index>(row.size()) != nc) throw DimensionError("make_matrix: ragged rows");
    Index c = 0;
    for (const auto& v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

RatVector make_vector(std::initializer_list<Rat> entries) {
  RatVector v(static_cast<Index>(entries.size()));
  Index i = 0;
  for (const auto& e : entries) v(i++) = e;
  return v;
}

Matrix<double> to_double(const RatMatrix& a) {
  Matrix<double> d(a.rows(), a.cols());
  for (Index c = 0; c < a.cols(); ++c)
    for (Index r = 0; r < a.rows(); ++r) d(r, c) = a(r, c).convert_to<double>();
  return d;
}

BigInt lcm_of_denominators(const RatVector& v) {
  BigInt l(1);
  for (Index i = 0; i < v.size(); ++i) l = lcm(l, BigInt(denominator(v(i))));
  return l;
}

}  // namespace frcert
