#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace vpower {

using Q = mpq_class;
using Z = mpz_class;

// Canonical num/den; mpq_class's two-argument constructor does not reduce.
Q frac(const Z& num, const Z& den);

// Accepts "p/q", "p", and terminating decimals such as "0.25" or "-1.5".
Q parse_rational(const std::string& text);
std::string to_string(const Q& value);

Z factorial(unsigned n);
Z binomial(long n, long k);
Q power(const Q& base, unsigned exponent);

Q sum(const std::vector<Q>& values);
Q l1_distance(const std::vector<Q>& a, const std::vector<Q>& b);
Q linf_distance(const std::vector<Q>& a, const std::vector<Q>& b);

// Space separated "p/q" list, the CLI's plain output form.
std::string join(const std::vector<Q>& values, const std::string& sep = " ");

}  // namespace vpower
