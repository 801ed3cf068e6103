#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace dlat {

// Arbitrary precision rational. GMP keeps values canonical (lowest terms,
// positive denominator) after every arithmetic operation.
using Rat = mpq_class;
using RatVector = std::vector<Rat>;

// Accepts "p", "-p", "+p" and "p/q" with q > 0 after sign handling.
// Throws ParseError on anything else.
Rat parse_rat(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rat& value);
std::string to_string(const RatVector& values);

bool is_integer(const Rat& value);

RatVector zeros(std::size_t n);
RatVector unit_vector(std::size_t n, std::size_t index);

Rat dot(const RatVector& a, const RatVector& b);
RatVector operator+(const RatVector& a, const RatVector& b);
RatVector operator-(const RatVector& a, const RatVector& b);
RatVector operator-(const RatVector& a);
RatVector operator*(const Rat& s, const RatVector& a);

RatVector componentwise_max(const RatVector& a, const RatVector& b);
RatVector componentwise_min(const RatVector& a, const RatVector& b);

bool is_zero(const RatVector& a);
bool is_nonnegative(const RatVector& a);
// a <= b in the dominance order.
bool dominated_by(const RatVector& a, const RatVector& b);

}  // namespace dlat
