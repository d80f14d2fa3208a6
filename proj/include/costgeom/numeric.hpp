#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <string_view>
#include <type_traits>

#include <boost/multiprecision/cpp_int.hpp>

#include "costgeom/error.hpp"

namespace costgeom {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr double kDefaultTolerance = 1e-9;

enum class NumericMode { kRational, kFloat };

inline std::string to_string(NumericMode mode) {
  return mode == NumericMode::kRational ? "rational" : "float";
}

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool kExact = false;
  static constexpr NumericMode kMode = NumericMode::kFloat;

  static double to_double(double x) { return x; }
  static double from_double(double x) { return x; }
  static double from_int(long long x) { return static_cast<double>(x); }

  static double parse(std::string_view text) {
    std::string s(text);
    if (auto slash = s.find('/'); slash != std::string::npos) {
      return parse(s.substr(0, slash)) / parse(s.substr(slash + 1));
    }
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
      throw InputError("not a number: '" + s + "'");
    }
    return v;
  }

  // 12 significant digits; integers print without a trailing ".0".
  static std::string format(double x) {
    if (x == 0.0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
  }
};

namespace detail {

inline Rational pow10(int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= 10;
  return r;
}

// Exact value of a decimal literal such as "-12.5e-3".
inline Rational parse_decimal(std::string_view s) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
    negative = s[pos] == '-';
    ++pos;
  }
  boost::multiprecision::cpp_int mantissa = 0;
  int scale = 0;
  bool any_digit = false;
  bool seen_point = false;
  for (; pos < s.size(); ++pos) {
    char ch = s[pos];
    if (ch >= '0' && ch <= '9') {
      mantissa = mantissa * 10 + (ch - '0');
      if (seen_point) ++scale;
      any_digit = true;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw InputError("not a number: '" + std::string(s) + "'");
  int exponent = 0;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    auto rest = s.substr(pos);
    if (rest.starts_with('+')) rest.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), exponent);
    if (ec != std::errc() || ptr != rest.data() + rest.size()) {
      throw InputError("bad exponent in '" + std::string(s) + "'");
    }
    pos = s.size();
  }
  if (pos != s.size()) throw InputError("not a number: '" + std::string(s) + "'");
  Rational value(mantissa);
  int shift = exponent - scale;
  if (shift > 0) value *= pow10(shift);
  if (shift < 0) value /= pow10(-shift);
  return negative ? Rational(-value) : value;
}

}  // namespace detail

template <>
struct ScalarTraits<Rational> {
  static constexpr bool kExact = true;
  static constexpr NumericMode kMode = NumericMode::kRational;

  static double to_double(const Rational& x) { return static_cast<double>(x); }

  // Uses the shortest decimal representation, so 0.1 becomes 1/10 rather
  // than the binary expansion of the double.
  static Rational from_double(double x) {
    if (!std::isfinite(x)) throw InputError("non-finite value in rational mode");
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return detail::parse_decimal(std::string_view(buf, ptr - buf));
  }

  static Rational from_int(long long x) { return Rational(x); }

  static Rational parse(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      Rational num = detail::parse_decimal(text.substr(0, slash));
      Rational den = detail::parse_decimal(text.substr(slash + 1));
      if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
      return num / den;
    }
    return detail::parse_decimal(text);
  }

  static std::string format(const Rational& x) { return x.str(); }
};

template <class T>
inline constexpr bool kIsExact = ScalarTraits<T>::kExact;

template <class T>
double to_double(const T& x) {
  return ScalarTraits<T>::to_double(x);
}

template <class T>
T abs_value(const T& x) {
  return x < T(0) ? T(-x) : x;
}

/// Tolerance-aware comparisons. In exact mode the tolerance is ignored.
/// Float comparisons are relative: |a - b| <= tau * max(1, |scale|).
template <class T>
bool near_equal(const T& a, const T& b, double tau, const T& scale) {
  if constexpr (kIsExact<T>) {
    (void)tau;
    (void)scale;
    return a == b;
  } else {
    return std::abs(a - b) <= tau * std::max(1.0, std::abs(scale));
  }
}

/// True when a exceeds b by more than the tolerance.
template <class T>
bool definitely_greater(const T& a, const T& b, double tau, const T& scale) {
  if constexpr (kIsExact<T>) {
    (void)tau;
    (void)scale;
    return a > b;
  } else {
    return a - b > tau * std::max(1.0, std::abs(scale));
  }
}

/// Strict positivity: > 0 exactly, or > tau in float mode.
template <class T>
bool is_positive(const T& x, double tau) {
  if constexpr (kIsExact<T>) {
    (void)tau;
    return x > 0;
  } else {
    return x > tau;
  }
}

/// A value in the reals extended by a single +INF sentinel.
///
/// INF absorbs addition and subtraction of finite values; comparisons are
/// total with INF above every finite value. Subtracting INF is undefined and
/// throws.
template <class T>
class Extended {
 public:
  Extended() = default;
  Extended(T value) : value_(std::move(value)) {}  // NOLINT: implicit by intent
  template <class I>
    requires std::is_integral_v<I>
  Extended(I value) : value_(ScalarTraits<T>::from_int(static_cast<long long>(value))) {}

  static Extended infinity() {
    Extended e;
    e.inf_ = true;
    return e;
  }

  bool is_inf() const { return inf_; }
  bool is_finite() const { return !inf_; }

  const T& value() const {
    if (inf_) throw DomainError("value() of an infinite cost");
    return value_;
  }

  friend Extended operator+(const Extended& a, const Extended& b) {
    if (a.inf_ || b.inf_) return infinity();
    return Extended(a.value_ + b.value_);
  }

  friend Extended operator-(const Extended& a, const Extended& b) {
    if (b.inf_) throw DomainError("subtracting an infinite cost");
    if (a.inf_) return infinity();
    return Extended(a.value_ - b.value_);
  }

  friend bool operator==(const Extended& a, const Extended& b) {
    if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
    return a.value_ == b.value_;
  }
  friend bool operator<(const Extended& a, const Extended& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator>(const Extended& a, const Extended& b) { return b < a; }
  friend bool operator<=(const Extended& a, const Extended& b) { return !(b < a); }
  friend bool operator>=(const Extended& a, const Extended& b) { return !(a < b); }

 private:
  T value_{};
  bool inf_ = false;
};

template <class T>
Extended<T> min(const Extended<T>& a, const Extended<T>& b) {
  return b < a ? b : a;
}

template <class T>
Extended<T> max(const Extended<T>& a, const Extended<T>& b) {
  return a < b ? b : a;
}

template <class T>
std::string format(const Extended<T>& x) {
  return x.is_inf() ? std::string("inf") : ScalarTraits<T>::format(x.value());
}

template <class T>
std::string format(const T& x) {
  return ScalarTraits<T>::format(x);
}

/// Parses "inf" (any case) or a scalar literal.
template <class T>
Extended<T> parse_extended(std::string_view text) {
  std::string s(text);
  std::string lower = s;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "inf" || lower == "+inf" || lower == "infinity") return Extended<T>::infinity();
  return Extended<T>(ScalarTraits<T>::parse(s));
}

template <class T>
bool near_equal(const Extended<T>& a, const Extended<T>& b, double tau) {
  if (a.is_inf() || b.is_inf()) return a == b;
  return near_equal(a.value(), b.value(), tau, a.value());
}

}  // namespace costgeom
