#pragma once

/**
 * @file bounds.hpp
 * @brief Growth bounds and certified base selection.
 *
 * Every bound here is constructive and checked in exact integer arithmetic.
 * A base is "certified" when the inequalities that make a representation
 * valid for every n >= 1 have been proven: finitely many n by direct
 * evaluation, the remaining tail by an induction bound of the form
 * |t(n)| < g^(n+1).
 *
 * The searches ascend from the smallest admissible base and return the
 * first candidate whose certificate closes. Candidates whose finite-check
 * cutoff would exceed SearchOptions::max_cutoff are skipped; with the
 * default budget this only affects bases within a fraction of a percent of
 * the analytic threshold.
 */

#include "crec/bigint.hpp"
#include "crec/bigpoly.hpp"
#include "crec/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace crec {

enum class BaseMode { certified, asserted };

inline const char* to_string(BaseMode m) { return m == BaseMode::certified ? "certified" : "asserted"; }

struct CertifiedBase {
    BigInt base;
    std::size_t cutoff = 0;  // n < cutoff checked directly, n >= cutoff by the growth bound
    BigInt growth;           // the g used for the tail
    BigInt root_bound;       // strict integer bound on 1/R, i.e. on the roots of B~
    BaseMode mode = BaseMode::certified;

    friend bool operator==(const CertifiedBase&, const CertifiedBase&) = default;
};

struct SearchOptions {
    std::size_t max_cutoff = 512;
    std::optional<BigInt> ceiling;  // defaults per search (see below)
};

namespace detail {

// Smallest g >= floor with scale*|t(m)| < g^(m+1) for every m < d.
inline BigInt smallest_growth(const Recurrence& rec, const BigInt& floor, const BigInt& scale) {
    BigInt g = floor;
    for (std::size_t m = 0; m < rec.order(); ++m) {
        BigInt v = scale * abs(rec.initial()[m]);
        BigInt r;
        mpz_root(r.get_mpz_t(), v.get_mpz_t(), m + 1);
        // r = floor(v^(1/(m+1))), so r+1 is the least g with g^(m+1) > v.
        g = std::max(g, BigInt(r + 1));
    }
    return g;
}

inline BigInt sum_abs_coeffs(const Recurrence& rec) {
    BigInt s = 0;
    for (const auto& a : rec.coeffs()) s += abs(a);
    return s;
}

// Smallest n >= 1 with g^(k(n+1)) <= c^n, given c > g^k (so the predicate is
// monotone in n). Returns nullopt if that n would exceed `limit`.
inline std::optional<std::size_t> tail_cutoff(const BigInt& g, unsigned k, const BigInt& c,
                                              std::size_t limit) {
    auto holds = [&](std::size_t n) { return pow(g, k * (n + 1)) <= pow(c, n); };
    const long double lg = std::log(g.get_d()), lc = std::log(c.get_d());
    const long double est = k * lg / (lc - k * lg);
    if (!(est < static_cast<long double>(limit) + 2)) return std::nullopt;
    std::size_t n = est > 3 ? static_cast<std::size_t>(est) - 2 : 1;
    while (n > 1 && holds(n - 1)) --n;
    while (!holds(n)) {
        if (++n > limit) return std::nullopt;
    }
    return n;
}

// Lazily extended oracle prefix shared across candidates of one search.
class PrefixCache {
  public:
    explicit PrefixCache(const Recurrence& rec) : rec_(rec) {}

    const BigInt& at(std::size_t n) {
        if (n >= terms_.size()) terms_ = oracle_prefix(rec_, std::max(n + 1, 2 * terms_.size()));
        return terms_[n];
    }

  private:
    const Recurrence& rec_;
    std::vector<BigInt> terms_;
};

}  // namespace detail

/// Minimal integer g >= 2 with g >= sum |a_i| and |t(m)| < g^(m+1) for m < d.
/// Induction then gives |t(n)| < g^(n+1) for all n.
inline BigInt growth_bound(const Recurrence& rec) {
    return detail::smallest_growth(rec, std::max(BigInt(2), detail::sum_abs_coeffs(rec)), BigInt(1));
}

/// A base supplied by the caller. Nothing is proven about it; the bound
/// fields are filled in for reporting only.
inline CertifiedBase asserted_base(const Recurrence& rec, const BigInt& base) {
    if (base < 2) throw std::invalid_argument("base must be at least 2, got " + to_string(base));
    return CertifiedBase{base, 0, growth_bound(rec),
                         cauchy_root_bound(reciprocal(denominator(rec), rec.order())), BaseMode::asserted};
}

/// Smallest base c >= max(8, cauchy_root_bound(B~)) with t(n)^3 < c^n for
/// every n >= 1, certified through g^(3(n+1)) <= c^n beyond the cutoff.
inline CertifiedBase divmod_base(const Recurrence& rec, const BigInt& g, const SearchOptions& opts = {}) {
    if (g < 2) throw std::invalid_argument("divmod_base: growth bound must be at least 2");
    const IntPoly btilde = reciprocal(denominator(rec), rec.order());
    const BigInt root_bound = cauchy_root_bound(btilde);
    const BigInt lower = std::max(BigInt(8), root_bound);
    const BigInt ceiling = opts.ceiling.value_or(pow(g, 6) + 8);

    if (rec.is_zero_sequence()) return CertifiedBase{lower, 0, g, root_bound, BaseMode::certified};

    detail::PrefixCache t(rec);
    const BigInt g3 = pow(g, 3);
    for (BigInt c = std::max(lower, BigInt(g3 + 1)); c <= ceiling; ++c) {
        auto cutoff = detail::tail_cutoff(g, 3, c, opts.max_cutoff);
        if (!cutoff) continue;
        bool ok = true;
        BigInt cn = 1;
        for (std::size_t n = 1; n < *cutoff && ok; ++n) {
            cn *= c;
            const BigInt& tn = t.at(n);
            ok = BigInt(tn * tn * tn) < cn;
        }
        if (ok) return CertifiedBase{c, *cutoff, g, root_bound, BaseMode::certified};
    }
    throw std::runtime_error("divmod_base: no certified base up to " + to_string(ceiling));
}

/// Smallest base e for the mod-mod form, at least c0 and large enough that
/// B~(e^n), A~(e^n) > 0 and
///   |alpha_d| t(n) < e^n        (alpha_d < 0)
///   alpha_d (t(n) + 1) < e^n    (alpha_d > 0)
/// for every n >= 1. The tail uses g_s, a growth bound for 2|alpha_d| t(n).
/// The result inherits c0's mode: the mod-mod form is only as valid as the
/// div-mod form at the same base.
inline CertifiedBase modmod_base(const Recurrence& rec, const BigInt& alpha_d, const CertifiedBase& c0,
                                 const SearchOptions& opts = {}) {
    if (sgn(alpha_d) == 0) throw std::invalid_argument("modmod_base: alpha_d must be nonzero");
    const std::size_t d = rec.order();
    const IntPoly btilde = reciprocal(denominator(rec), d);
    const IntPoly num = numerator_from_initial(rec);
    const BigInt abs_alpha = abs(alpha_d);
    const BigInt gs = detail::smallest_growth(rec, std::max(BigInt(2), detail::sum_abs_coeffs(rec)),
                                              BigInt(2 * abs_alpha));

    BigInt lower = std::max(c0.base, positivity_threshold(btilde));
    if (!num.is_zero()) lower = std::max(lower, positivity_threshold(reciprocal(num, d)));
    if (sgn(alpha_d) > 0) lower = std::max(lower, BigInt(alpha_d + 1));
    const BigInt root_bound = cauchy_root_bound(btilde);

    if (rec.is_zero_sequence()) return CertifiedBase{lower, 0, gs, root_bound, c0.mode};

    const BigInt ceiling = opts.ceiling.value_or(std::max(lower, BigInt(gs * gs)) + 8);
    detail::PrefixCache t(rec);
    for (BigInt e = std::max(lower, BigInt(gs + 1)); e <= ceiling; ++e) {
        auto cutoff = detail::tail_cutoff(gs, 1, e, opts.max_cutoff);
        if (!cutoff) continue;
        bool ok = true;
        BigInt en = 1;
        for (std::size_t n = 1; n < *cutoff && ok; ++n) {
            en *= e;
            const BigInt& tn = t.at(n);
            ok = sgn(alpha_d) < 0 ? BigInt(abs_alpha * tn) < en : BigInt(alpha_d * (tn + 1)) < en;
        }
        if (ok) return CertifiedBase{e, *cutoff, gs, root_bound, c0.mode};
    }
    throw std::runtime_error("modmod_base: no certified base up to " + to_string(ceiling));
}

}  // namespace crec
