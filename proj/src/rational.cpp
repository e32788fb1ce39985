#include "vpower/rational.hpp"

#include <cstdlib>
#include <stdexcept>

namespace vpower {

namespace {

Q parse_decimal(const std::string& text) {
    std::string digits;
    bool negative = false;
    std::size_t pos = 0;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        negative = text[pos] == '-';
        ++pos;
    }
    std::size_t frac_digits = 0;
    bool seen_point = false;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (c == '.') {
            if (seen_point) throw std::invalid_argument("bad rational: " + text);
            seen_point = true;
        } else if (c >= '0' && c <= '9') {
            digits.push_back(c);
            if (seen_point) ++frac_digits;
        } else {
            throw std::invalid_argument("bad rational: " + text);
        }
    }
    if (digits.empty()) throw std::invalid_argument("bad rational: " + text);
    Z num(digits, 10);
    Z den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_digits);
    Q result(num, den);
    result.canonicalize();
    return negative ? Q(-result) : result;
}

}  // namespace

Q frac(const Z& num, const Z& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    Q q(num, den);
    q.canonicalize();
    return q;
}

Q parse_rational(const std::string& raw) {
    std::string text;
    for (char c : raw)
        if (c != ' ' && c != '\t' && c != '"') text.push_back(c);
    if (text.empty()) throw std::invalid_argument("empty rational");
    auto slash = text.find('/');
    if (slash == std::string::npos) return parse_decimal(text);
    Q num = parse_decimal(text.substr(0, slash));
    Q den = parse_decimal(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + raw);
    Q result = num / den;
    result.canonicalize();
    return result;
}

std::string to_string(const Q& value) {
    Q v = value;
    v.canonicalize();
    return v.get_str();
}

Z factorial(unsigned n) {
    Z result;
    mpz_fac_ui(result.get_mpz_t(), n);
    return result;
}

Z binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Z result;
    mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return result;
}

Q power(const Q& base, unsigned exponent) {
    Z num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
    Q result(num, den);
    result.canonicalize();
    return result;
}

Q sum(const std::vector<Q>& values) {
    Q total = 0;
    for (const auto& v : values) total += v;
    return total;
}

Q l1_distance(const std::vector<Q>& a, const std::vector<Q>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("l1_distance: size mismatch");
    Q total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) total += abs(Q(a[i] - b[i]));
    return total;
}

Q linf_distance(const std::vector<Q>& a, const std::vector<Q>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("linf_distance: size mismatch");
    Q best = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        Q d = abs(Q(a[i] - b[i]));
        if (d > best) best = d;
    }
    return best;
}

std::string join(const std::vector<Q>& values, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += sep;
        out += to_string(values[i]);
    }
    return out;
}

}  // namespace vpower
