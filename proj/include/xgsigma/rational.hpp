#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xgs {

using BigInt = mpz_class;
/// mpq_class keeps values canonical (lowest terms, positive denominator).
using Rat = mpq_class;

using IntVec = std::vector<BigInt>;
using RatVec = std::vector<Rat>;

IntVec make_int_vec(std::initializer_list<long> values);
RatVec make_rat_vec(std::initializer_list<long> values);

bool is_zero(std::span<const BigInt> v);
bool is_zero(std::span<const Rat> v);

/// gcd of absolute values; 0 for the zero vector.
BigInt content(std::span<const BigInt> v);

/// Divides by the content. The zero vector is returned unchanged.
IntVec primitive(std::span<const BigInt> v);

/// Positive rescaling of a rational vector to a primitive integer vector.
IntVec clear_denominators(std::span<const Rat> v);

BigInt dot(std::span<const BigInt> a, std::span<const BigInt> b);
Rat dot(std::span<const BigInt> a, std::span<const Rat> b);
Rat dot(std::span<const Rat> a, std::span<const Rat> b);

RatVec to_rat(std::span<const BigInt> v);

/// Canonical exact text: "3", "-1/2".
std::string format_rat(const Rat& q);
std::string format_int(const BigInt& z);

/// Accepts "p" or "p/q" with optional sign; throws Error(InvalidArgument).
Rat parse_rat(std::string_view text);
BigInt parse_int(std::string_view text);

/// "1,-2/3,0" style list.
RatVec parse_rat_list(std::string_view text);
std::string format_vec(std::span<const BigInt> v, char sep = ' ');
std::string format_vec(std::span<const Rat> v, char sep = ' ');

}  // namespace xgs
