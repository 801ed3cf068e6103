#include "dlat/rational.hpp"

#include <algorithm>
#include <stdexcept>

#include "dlat/errors.hpp"

namespace dlat {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

void require_same_size(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("vector length mismatch: " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  }
}

}  // namespace

Rat parse_rat(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  std::string_view num = body;
  std::string_view den = "1";
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    num = body.substr(0, slash);
    den = body.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den)) {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) {
    throw ParseError("zero denominator in '" + std::string(text) + "'");
  }
  Rat r(negative ? mpz_class(-n) : n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& value) { return value.get_str(10); }

std::string to_string(const RatVector& values) {
  std::string out = "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += to_string(values[i]);
  }
  return out + ")";
}

bool is_integer(const Rat& value) { return value.get_den() == 1; }

RatVector zeros(std::size_t n) { return RatVector(n, Rat(0)); }

RatVector unit_vector(std::size_t n, std::size_t index) {
  RatVector v = zeros(n);
  v.at(index) = 1;
  return v;
}

Rat dot(const RatVector& a, const RatVector& b) {
  require_same_size(a, b);
  Rat sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

RatVector operator+(const RatVector& a, const RatVector& b) {
  require_same_size(a, b);
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RatVector operator-(const RatVector& a, const RatVector& b) {
  require_same_size(a, b);
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RatVector operator-(const RatVector& a) {
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return out;
}

RatVector operator*(const Rat& s, const RatVector& a) {
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

RatVector componentwise_max(const RatVector& a, const RatVector& b) {
  require_same_size(a, b);
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] < b[i] ? b[i] : a[i];
  return out;
}

RatVector componentwise_min(const RatVector& a, const RatVector& b) {
  require_same_size(a, b);
  RatVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = b[i] < a[i] ? b[i] : a[i];
  return out;
}

bool is_zero(const RatVector& a) {
  return std::all_of(a.begin(), a.end(), [](const Rat& x) { return sgn(x) == 0; });
}

bool is_nonnegative(const RatVector& a) {
  return std::all_of(a.begin(), a.end(), [](const Rat& x) { return sgn(x) >= 0; });
}

bool dominated_by(const RatVector& a, const RatVector& b) {
  require_same_size(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] < a[i]) return false;
  }
  return true;
}

}  // namespace dlat
