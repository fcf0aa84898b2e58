#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace crec {

/// Arbitrary-precision signed integer used throughout the library.
using BigInt = mpz_class;

/// Parses a decimal integer with optional leading sign. Throws
/// std::invalid_argument on anything else (including empty input).
inline BigInt parse_bigint(std::string_view text) {
    std::string s(text);
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size())
        throw std::invalid_argument("not a decimal integer: '" + s + "'");
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw std::invalid_argument("not a decimal integer: '" + s + "'");
    if (s[0] == '+') s.erase(0, 1);
    return BigInt(s, 10);
}

inline std::string to_string(const BigInt& x) { return x.get_str(10); }

/// Number of bits in |x|; zero has bit length 0.
inline std::size_t bit_length(const BigInt& x) {
    return sgn(x) == 0 ? 0 : mpz_sizeinbase(x.get_mpz_t(), 2);
}

inline BigInt pow(const BigInt& base, unsigned long exp) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline BigInt magnitude(const BigInt& x) { return abs(x); }

}  // namespace crec
