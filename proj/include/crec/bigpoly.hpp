#pragma once

/**
 * @file bigpoly.hpp
 * @brief Dense integer polynomials with arbitrary-precision coefficients.
 *
 * Degrees in this library are tiny (the order of a recurrence, plus one
 * after shifting), so a dense vector of coefficients with Horner evaluation
 * is all that is needed. The cost is dominated by the size of the
 * coefficients and of the evaluation points, which the big-integer layer
 * handles.
 *
 * Coefficient i is the coefficient of x^i. The stored vector never has a
 * trailing zero, so the zero polynomial is the empty vector.
 */

#include "crec/bigint.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crec {

class IntPoly {
  public:
    IntPoly() = default;

    explicit IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    IntPoly(std::initializer_list<long> coeffs) {
        coeffs_.reserve(coeffs.size());
        for (long c : coeffs) coeffs_.emplace_back(c);
        trim();
    }

    bool is_zero() const noexcept { return coeffs_.empty(); }

    /// Highest index with a nonzero coefficient; empty for the zero polynomial.
    std::optional<std::size_t> degree() const noexcept {
        if (coeffs_.empty()) return std::nullopt;
        return coeffs_.size() - 1;
    }

    /// Lowest index with a nonzero coefficient. Requires a nonzero polynomial.
    std::size_t lowest_index() const {
        require_nonzero("lowest_index");
        std::size_t i = 0;
        while (sgn(coeffs_[i]) == 0) ++i;
        return i;
    }

    /// Coefficient of x^i; zero beyond the degree.
    BigInt coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

    const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }

    BigInt free_term() const { return coeff(0); }

    const BigInt& leading() const {
        require_nonzero("leading");
        return coeffs_.back();
    }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<BigInt> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
        return IntPoly(std::move(r));
    }

    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<BigInt> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
        return IntPoly(std::move(r));
    }

    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<BigInt> r(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return IntPoly(std::move(r));
    }

    friend IntPoly operator*(const BigInt& k, const IntPoly& p) {
        std::vector<BigInt> r(p.coeffs_);
        for (auto& c : r) c *= k;
        return IntPoly(std::move(r));
    }

  private:
    void trim() {
        while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
    }

    void require_nonzero(const char* what) const {
        if (coeffs_.empty()) throw std::invalid_argument(std::string(what) + ": zero polynomial");
    }

    std::vector<BigInt> coeffs_;
};

/// Horner evaluation, exact.
inline BigInt eval(const IntPoly& p, const BigInt& x) {
    BigInt acc = 0;
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

/// x^d * P(1/x): the coefficient of x^(d-i) in the result is the coefficient
/// of x^i in P.
inline IntPoly reciprocal(const IntPoly& p, std::size_t d) {
    if (p.is_zero()) throw std::invalid_argument("reciprocal: zero polynomial");
    if (*p.degree() > d)
        throw std::invalid_argument("reciprocal: target degree " + std::to_string(d) +
                                    " below polynomial degree " + std::to_string(*p.degree()));
    std::vector<BigInt> r(d + 1);
    for (std::size_t i = 0; i <= *p.degree(); ++i) r[d - i] = p.coeff(i);
    return IntPoly(std::move(r));
}

/// Integer M with |z| < M for every complex root z of P:
/// 1 + ceil(max_{i<deg} |c_i| / |lead|).
inline BigInt cauchy_root_bound(const IntPoly& p) {
    if (p.is_zero() || *p.degree() == 0)
        throw std::invalid_argument("cauchy_root_bound: polynomial must have degree >= 1");
    BigInt lead = abs(p.leading());
    BigInt worst = 0;
    for (std::size_t i = 0; i < *p.degree(); ++i) worst = std::max(worst, BigInt(abs(p.coeffs()[i])));
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), worst.get_mpz_t(), lead.get_mpz_t());
    return q + 1;
}

/// Smallest integer x0 >= 1 such that P(x) > 0 for every integer x >= x0.
///
/// The Cauchy bound certifies the tail (no real root at or above it and a
/// positive leading coefficient); values below it are checked directly
/// while scanning downward.
inline BigInt positivity_threshold(const IntPoly& p) {
    if (p.is_zero() || sgn(p.leading()) <= 0)
        throw std::invalid_argument("positivity_threshold: leading coefficient must be positive");
    if (*p.degree() == 0) return 1;
    BigInt x = cauchy_root_bound(p);
    while (x > 1 && sgn(eval(p, x - 1)) > 0) x -= 1;
    return x;
}

// {"coeffs": ["c0", "c1", ...]} with decimal-string coefficients. Plain JSON
// integers are accepted on input.

inline BigInt bigint_from_json(const nlohmann::json& j) {
    if (j.is_string()) return parse_bigint(j.get<std::string>());
    if (j.is_number_integer()) return BigInt(j.dump(), 10);
    throw std::invalid_argument("expected a decimal string or integer, got " + j.dump());
}

inline void to_json(nlohmann::json& j, const IntPoly& p) {
    auto arr = nlohmann::json::array();
    for (const auto& c : p.coeffs()) arr.push_back(to_string(c));
    j = nlohmann::json{{"coeffs", std::move(arr)}};
}

inline void from_json(const nlohmann::json& j, IntPoly& p) {
    std::vector<BigInt> c;
    for (const auto& v : j.at("coeffs")) c.push_back(bigint_from_json(v));
    p = IntPoly(std::move(c));
}

}  // namespace crec
