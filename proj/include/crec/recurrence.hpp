#pragma once

/**
 * @file recurrence.hpp
 * @brief Constant-coefficient linear recurrences and their generating functions.
 *
 * A recurrence of order d is stored in homogeneous form
 *
 *   t(n+d) + a_1 t(n+d-1) + ... + a_d t(n) = 0,
 *
 * together with t(0), ..., t(d-1). Its generating function is A(z)/B(z) with
 * B(z) = 1 + a_1 z + ... + a_d z^d and deg A < d.
 */

#include "crec/bigint.hpp"
#include "crec/bigpoly.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crec {

class Recurrence {
  public:
    /// coeffs = (a_1, ..., a_d), initial = (t(0), ..., t(d-1)).
    Recurrence(std::vector<BigInt> coeffs, std::vector<BigInt> initial)
        : coeffs_(std::move(coeffs)), initial_(std::move(initial)) {
        if (coeffs_.empty()) throw std::invalid_argument("recurrence order must be at least 1");
        if (sgn(coeffs_.back()) == 0) throw std::invalid_argument("recurrence: a_d must be nonzero");
        if (initial_.size() != coeffs_.size())
            throw std::invalid_argument("recurrence: expected " + std::to_string(coeffs_.size()) +
                                        " initial terms, got " + std::to_string(initial_.size()));
    }

    Recurrence(std::initializer_list<long> coeffs, std::initializer_list<long> initial)
        : Recurrence(to_big(coeffs), to_big(initial)) {}

    std::size_t order() const noexcept { return coeffs_.size(); }
    const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }
    const std::vector<BigInt>& initial() const noexcept { return initial_; }

    /// a_d, which is also the free term of the reciprocal denominator.
    const BigInt& last_coeff() const noexcept { return coeffs_.back(); }

    bool is_zero_sequence() const {
        for (const auto& t : initial_)
            if (sgn(t) != 0) return false;
        return true;
    }

    friend bool operator==(const Recurrence&, const Recurrence&) = default;

  private:
    static std::vector<BigInt> to_big(std::initializer_list<long> xs) {
        std::vector<BigInt> r;
        for (long x : xs) r.emplace_back(x);
        return r;
    }

    std::vector<BigInt> coeffs_;
    std::vector<BigInt> initial_;
};

/// t(0), ..., t(count-1) by forward iteration.
inline std::vector<BigInt> oracle_prefix(const Recurrence& rec, std::size_t count) {
    const std::size_t d = rec.order();
    std::vector<BigInt> t;
    t.reserve(std::max(count, d));
    for (std::size_t i = 0; i < std::min(count, d); ++i) t.push_back(rec.initial()[i]);
    while (t.size() < count) {
        const std::size_t k = t.size();
        BigInt next = 0;
        for (std::size_t i = 0; i < d; ++i) next -= rec.coeffs()[i] * t[k - 1 - i];
        t.push_back(std::move(next));
    }
    return t;
}

/// Exact t(n).
inline BigInt oracle_eval(const Recurrence& rec, std::size_t n) { return oracle_prefix(rec, n + 1)[n]; }

/// B(z) = 1 + a_1 z + ... + a_d z^d.
inline IntPoly denominator(const Recurrence& rec) {
    std::vector<BigInt> c{BigInt(1)};
    c.insert(c.end(), rec.coeffs().begin(), rec.coeffs().end());
    return IntPoly(std::move(c));
}

/// A(z), the truncation of B(z) * sum t(n) z^n below degree d:
/// A_j = t(j) + sum_{i=1..j} a_i t(j-i).
inline IntPoly numerator_from_initial(const Recurrence& rec) {
    const std::size_t d = rec.order();
    std::vector<BigInt> a(d);
    for (std::size_t j = 0; j < d; ++j) {
        a[j] = rec.initial()[j];
        for (std::size_t i = 1; i <= j; ++i) a[j] += rec.coeffs()[i - 1] * rec.initial()[j - i];
    }
    return IntPoly(std::move(a));
}

enum class NaturalityStatus { certified, checked_prefix, rejected };

inline const char* to_string(NaturalityStatus s) {
    switch (s) {
        case NaturalityStatus::certified: return "certified";
        case NaturalityStatus::checked_prefix: return "checked-prefix";
        case NaturalityStatus::rejected: return "rejected";
    }
    return "?";
}

struct NaturalityCertificate {
    NaturalityStatus status;
    std::size_t prefix_length = 0;              // checked_prefix: terms examined
    std::optional<std::size_t> first_negative;  // rejected: offending index
};

/// Whether the sequence takes values in N. Non-positive a_i with
/// non-negative initial terms is a proof by induction; otherwise the first
/// `prefix` terms are inspected.
inline NaturalityCertificate naturality(const Recurrence& rec, std::size_t prefix) {
    bool coeffs_ok = true;
    for (const auto& a : rec.coeffs()) coeffs_ok = coeffs_ok && sgn(a) <= 0;
    bool init_ok = true;
    for (const auto& t : rec.initial()) init_ok = init_ok && sgn(t) >= 0;
    if (coeffs_ok && init_ok) return {NaturalityStatus::certified, 0, std::nullopt};

    auto t = oracle_prefix(rec, std::max(prefix, rec.order()));
    for (std::size_t n = 0; n < t.size(); ++n)
        if (sgn(t[n]) < 0) return {NaturalityStatus::rejected, 0, n};
    return {NaturalityStatus::checked_prefix, t.size(), std::nullopt};
}

/// True when |t(n)| <= h^(n+1) for all n follows by induction:
/// sum_i |a_i| h^(d-i) <= h^d and |t(m)| <= h^(m+1) for m < d.
inline bool shift_certified(const Recurrence& rec, const BigInt& h) {
    if (h < 1) return false;
    const std::size_t d = rec.order();
    BigInt weighted = 0;
    for (std::size_t i = 1; i <= d; ++i) weighted += abs(rec.coeffs()[i - 1]) * pow(h, d - i);
    if (weighted > pow(h, d)) return false;
    for (std::size_t m = 0; m < d; ++m)
        if (abs(rec.initial()[m]) > pow(h, m + 1)) return false;
    return true;
}

/// The order-(d+1) recurrence of s(n) = t(n) + h^(n+1), whose denominator is
/// B(z)(1 - hz). Rejects h unless s is provably non-negative.
inline Recurrence shift_to_natural(const Recurrence& rec, const BigInt& h) {
    if (h < 1) throw std::invalid_argument("shift_to_natural: h must be positive");
    if (!shift_certified(rec, h))
        throw std::invalid_argument("shift_to_natural: h = " + to_string(h) +
                                    " does not certify t(n) + h^(n+1) >= 0");
    const std::size_t d = rec.order();
    IntPoly shifted_den = denominator(rec) * IntPoly(std::vector<BigInt>{BigInt(1), BigInt(-h)});
    std::vector<BigInt> coeffs(shifted_den.coeffs().begin() + 1, shifted_den.coeffs().end());

    auto t = oracle_prefix(rec, d + 1);
    std::vector<BigInt> init(d + 1);
    for (std::size_t m = 0; m <= d; ++m) init[m] = t[m] + pow(h, m + 1);
    Recurrence shifted(std::move(coeffs), std::move(init));

    IntPoly expected_num =
        numerator_from_initial(rec) * IntPoly(std::vector<BigInt>{BigInt(1), BigInt(-h)}) +
        h * denominator(rec);
    if (!(numerator_from_initial(shifted) == expected_num))
        throw std::logic_error("shift_to_natural: numerator identity A' = A(1-hz) + hB failed");
    return shifted;
}

// {"coeffs": ["-1","-1"], "initial": ["0","1"]}

inline void to_json(nlohmann::json& j, const Recurrence& rec) {
    auto cs = nlohmann::json::array();
    for (const auto& c : rec.coeffs()) cs.push_back(to_string(c));
    auto is = nlohmann::json::array();
    for (const auto& t : rec.initial()) is.push_back(to_string(t));
    j = nlohmann::json{{"coeffs", std::move(cs)}, {"initial", std::move(is)}};
}

inline Recurrence recurrence_from_json(const nlohmann::json& j) {
    std::vector<BigInt> cs, is;
    for (const auto& v : j.at("coeffs")) cs.push_back(bigint_from_json(v));
    for (const auto& v : j.at("initial")) is.push_back(bigint_from_json(v));
    return Recurrence(std::move(cs), std::move(is));
}

}  // namespace crec
