#include "addbasis/natural.hpp"

#include <cctype>
#include <limits>
#include <string>

#include "addbasis/error.hpp"

namespace addbasis {

std::optional<Natural> checked_add(Natural a, Natural b) noexcept {
  Natural r;
  if (__builtin_add_overflow(a, b, &r)) return std::nullopt;
  return r;
}

std::optional<Natural> checked_mul(Natural a, Natural b) noexcept {
  Natural r;
  if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
  return r;
}

std::optional<Natural> checked_pow(Natural base, unsigned exp) noexcept {
  Natural r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    auto next = checked_mul(r, base);
    if (!next) return std::nullopt;
    r = *next;
  }
  return r;
}

namespace {
[[noreturn]] void overflow(std::string_view what) {
  throw Error(ErrorKind::Overflow, "64-bit overflow computing " + std::string(what));
}
}  // namespace

Natural add_or_throw(Natural a, Natural b, std::string_view what) {
  auto r = checked_add(a, b);
  if (!r) overflow(what);
  return *r;
}

Natural mul_or_throw(Natural a, Natural b, std::string_view what) {
  auto r = checked_mul(a, b);
  if (!r) overflow(what);
  return *r;
}

Natural pow_or_throw(Natural base, unsigned exp, std::string_view what) {
  auto r = checked_pow(base, exp);
  if (!r) overflow(what);
  return *r;
}

Natural integer_root(Natural n, unsigned k) noexcept {
  if (k <= 1 || n <= 1) return n;
  // Binary search keeps this exact without relying on floating-point pow.
  Natural lo = 1, hi = 1;
  while (true) {
    auto p = checked_pow(hi, k);
    if (!p || *p > n) break;
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    Natural mid = lo + (hi - lo) / 2;
    auto p = checked_pow(mid, k);
    if (p && *p <= n)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

Natural parse_natural(std::string_view text) {
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) -> Natural { throw SyntaxError(i, msg + " in '" + std::string(text) + "'"); };
  if (text.empty()) return fail("empty number");

  std::string digits;  // mantissa digits with the decimal point removed
  int frac_digits = 0;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char ch = text[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      if (seen_point) ++frac_digits;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (digits.empty()) return fail("expected digits");

  long exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      exponent = exponent * 10 + (text[i] - '0');
      if (exponent > 1000) return fail("exponent too large");
      ++i;
    }
    if (i == start) return fail("expected exponent digits");
    if (neg) exponent = -exponent;
  }
  if (i != text.size()) return fail("unexpected character");

  long shift = exponent - frac_digits;
  // Strip trailing zeros that a negative shift would remove.
  while (shift < 0 && digits.size() > 1 && digits.back() == '0') {
    digits.pop_back();
    ++shift;
  }
  if (shift < 0) {
    if (digits.find_first_not_of('0') == std::string::npos) return 0;
    return fail("value is not an integer");
  }

  Natural value = 0;
  for (char ch : digits) {
    auto v = checked_mul(value, 10);
    if (v) v = checked_add(*v, static_cast<Natural>(ch - '0'));
    if (!v) throw Error(ErrorKind::Overflow, "number exceeds 64 bits: '" + std::string(text) + "'");
    value = *v;
  }
  for (long s = 0; s < shift && value != 0; ++s) {
    auto v = checked_mul(value, 10);
    if (!v) throw Error(ErrorKind::Overflow, "number exceeds 64 bits: '" + std::string(text) + "'");
    value = *v;
  }
  return value;
}

}  // namespace addbasis
