#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace prickle {

// Exact rational scalar. mpq_class keeps the canonical form (gcd(num, den) = 1,
// den > 0) after every arithmetic operation, and operator== is value equality.
using Rat = mpq_class;
using BigInt = mpz_class;

inline Rat rat(long n) { return Rat(n); }
inline Rat rat(long n, long d) { Rat q(n, d); q.canonicalize(); return q; }

inline int sign(const Rat& q) { return sgn(q); }

// Accepts integers ("-12"), fractions ("7/3"), and decimals with optional
// exponent ("3.25", "1.5e-3"). Conversion is exact. Returns nullopt on
// malformed input.
std::optional<Rat> parse_rat(std::string_view token);

// Canonical token: integer when den = 1, exact terminating decimal when the
// denominator is of the form 2^a * 5^b (and the expansion is short), "p/q"
// otherwise. parse_rat(format_rat(q)) == q always.
std::string format_rat(const Rat& q);

// Fits-in-int64 check for the guarded integer fast paths.
std::optional<std::int64_t> as_int64(const Rat& q);

} // namespace prickle
