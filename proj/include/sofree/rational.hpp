#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace sofree {

using Rational = mpq_class;

// Wire form is always "num/den", including integers ("3/1"), so that
// a consumer never has to guess whether a field is a rational.
std::string to_wire(const Rational& r);

// Accepts "num/den", "num" or a signed integer. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// Human form: "3", "-1/2".
std::string to_text(const Rational& r);

// Canonical a/b; mpq_class(a, b) alone does not reduce.
Rational frac(long a, long b);

Rational binomial(long n, long k);
Rational catalan(long n);

}  // namespace sofree
