#pragma once

/**
 * @file eval.hpp
 * @brief Exact evaluation of closed-form representations.
 *
 * All remainders are Euclidean (in [0, m) for m > 0) and all quotients are
 * floors, whatever the sign of the dividend. C++'s built-in / and % truncate
 * toward zero, so nothing in this file uses them on signed values.
 */

#include "crec/bigint.hpp"
#include "crec/bigpoly.hpp"
#include "crec/error.hpp"
#include "crec/repr.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>

namespace crec {

enum class EvalStrategy { naive, fast };

inline const char* to_string(EvalStrategy s) { return s == EvalStrategy::naive ? "naive" : "fast"; }

inline EvalStrategy parse_strategy(const std::string& s) {
    if (s == "naive") return EvalStrategy::naive;
    if (s == "fast") return EvalStrategy::fast;
    throw std::invalid_argument("unknown strategy '" + s + "' (expected naive or fast)");
}

/// Bit sizes seen during one evaluation. `operand_bits` covers the values an
/// evaluation holds on to; `product_bits` also covers unreduced products.
struct EvalStats {
    std::size_t operand_bits = 0;
    std::size_t product_bits = 0;
    bool modulus_divides = false;  // B~(e^n) divided the mod-mod numerator

    void operand(const BigInt& x) {
        operand_bits = std::max(operand_bits, bit_length(x));
        product_bits = std::max(product_bits, bit_length(x));
    }
    void product(const BigInt& x) { product_bits = std::max(product_bits, bit_length(x)); }
};

/// x mod m in [0, m).
inline BigInt euclid_mod(const BigInt& x, const BigInt& m) {
    if (sgn(m) <= 0) throw std::invalid_argument("euclid_mod: modulus must be positive, got " + to_string(m));
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

/// floor(x / m) for m > 0.
inline BigInt floor_div(const BigInt& x, const BigInt& m) {
    if (sgn(m) <= 0) throw std::invalid_argument("floor_div: divisor must be positive, got " + to_string(m));
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return q;
}

/// b^k mod m by left-to-right square-and-multiply. 0^0 = 1.
inline BigInt modpow(const BigInt& b, const BigInt& k, const BigInt& m, EvalStats* stats = nullptr) {
    if (sgn(m) <= 0) throw std::invalid_argument("modpow: modulus must be positive");
    if (sgn(k) < 0) throw std::invalid_argument("modpow: exponent must be non-negative");
    const BigInt base = euclid_mod(b, m);
    BigInt acc = euclid_mod(BigInt(1), m);
    for (std::size_t i = bit_length(k); i-- > 0;) {
        BigInt sq = acc * acc;
        if (stats) stats->product(sq);
        acc = euclid_mod(sq, m);
        if (mpz_tstbit(k.get_mpz_t(), i)) {
            BigInt pr = acc * base;
            if (stats) stats->product(pr);
            acc = euclid_mod(pr, m);
        }
    }
    return acc;
}

namespace detail {

inline void require_positive_n(unsigned long n) {
    if (n < 1) throw std::invalid_argument("representations are evaluated for n >= 1");
}

inline BigInt checked_modulus(const IntPoly& btilde, const BigInt& xn, unsigned long n) {
    BigInt m = eval(btilde, xn);
    if (sgn(m) <= 0)
        throw RepresentationError("B~(base^n) = " + to_string(m) + " is not positive at n = " + std::to_string(n) +
                                  "; base is below the positivity threshold");
    return m;
}

}  // namespace detail

/// floor(c^(n^2) A~(c^n) / B~(c^n)) mod c^n, built at full width.
inline BigInt eval_divmod(const DivModRepr& r, unsigned long n, EvalStats* stats = nullptr) {
    detail::require_positive_n(n);
    const BigInt& c = r.base.base;
    const BigInt cn = pow(c, n);
    const BigInt den = detail::checked_modulus(r.btilde, cn, n);
    const BigInt num = pow(c, n * n) * eval(r.atilde, cn);
    if (stats) {
        stats->operand(num);
        stats->operand(den);
    }
    return euclid_mod(floor_div(num, den), cn);
}

/// The mod-mod form. `fast` never builds e^(n^2): it uses
/// e^(n^2) = (e^n)^n and exponentiates modulo B~(e^n).
inline BigInt eval_modmod(const ModModRepr& r, unsigned long n, EvalStrategy strategy,
                          EvalStats* stats = nullptr) {
    detail::require_positive_n(n);
    const BigInt& e = r.base.base;
    const BigInt en = pow(e, n);
    const BigInt m = detail::checked_modulus(r.btilde, en, n);
    const BigInt at = eval(r.atilde, en);
    if (stats) {
        stats->operand(en);
        stats->operand(m);
        stats->operand(at);
    }

    BigInt inner;
    if (strategy == EvalStrategy::naive) {
        BigInt num = pow(e, n * n) * at;
        if (stats) stats->operand(num);
        if (r.sign > 0) num = -num;
        inner = euclid_mod(num, m);
    } else {
        const BigInt p = modpow(euclid_mod(en, m), BigInt(n), m, stats);
        BigInt prod = at * p;
        if (stats) {
            stats->operand(p);
            stats->product(prod);
        }
        if (r.sign > 0) prod = -prod;
        inner = euclid_mod(prod, m);
    }
    if (sgn(inner) == 0 && stats) stats->modulus_divides = true;

    const BigInt rem = euclid_mod(inner, en);
    BigInt q, left;
    mpz_fdiv_qr(q.get_mpz_t(), left.get_mpz_t(), rem.get_mpz_t(), r.divisor.get_mpz_t());
    if (sgn(left) != 0)
        throw RepresentationError("remainder " + to_string(rem) + " is not divisible by |alpha_d| = " +
                                  to_string(r.divisor) + " at n = " + std::to_string(n));
    return q + r.offset;
}

inline BigInt eval_shifted(const ShiftedRepr& r, unsigned long n, EvalStrategy strategy,
                           EvalStats* stats = nullptr) {
    return eval_modmod(r.inner, n, strategy, stats) - pow(r.h, n + 1);
}

/// Dispatch on the representation kind. Div-mod ignores the strategy.
inline BigInt evaluate(const Repr& repr, unsigned long n, EvalStrategy strategy = EvalStrategy::fast,
                       EvalStats* stats = nullptr) {
    struct Visitor {
        unsigned long n;
        EvalStrategy strategy;
        EvalStats* stats;
        BigInt operator()(const ZeroRepr&) const {
            detail::require_positive_n(n);
            return 0;
        }
        BigInt operator()(const DivModRepr& r) const { return eval_divmod(r, n, stats); }
        BigInt operator()(const ModModRepr& r) const { return eval_modmod(r, n, strategy, stats); }
        BigInt operator()(const ShiftedRepr& r) const { return eval_shifted(r, n, strategy, stats); }
    };
    return std::visit(Visitor{n, strategy, stats}, repr);
}

// ---------------------------------------------------------------------------

struct LemmaPreconditions {
    bool a_positive = false;       // A > 0
    bool b_positive = false;       // B > 0
    bool c_at_least_two = false;   // C >= 2
    bool c_divides_a = false;      // C | A
    bool b_not_divides_a = false;  // B does not divide A
    bool residue_matches = false;  // B = a (mod C)
    bool a_nonzero = false;        // a != 0
    bool size_bound = false;       // |a|(q mod C) < C  resp.  a + a(q mod C) < C

    bool all() const {
        return a_positive && b_positive && c_at_least_two && c_divides_a && b_not_divides_a && residue_matches &&
               a_nonzero && size_bound;
    }
};

struct LemmaCheck {
    BigInt lhs;
    BigInt rhs;
    LemmaPreconditions pre;
    bool preconditions_hold = false;
    bool equal = false;
};

/// Both sides of the two-remainder identity, computed independently:
///   a < 0:  (A mod B) mod C    = |a| (floor(A/B) mod C)
///   a > 0:  ((-A) mod B) mod C = a (1 + (floor(A/B) mod C))
/// Violated preconditions are reported, not thrown.
inline LemmaCheck lemma_main_check(const BigInt& A, const BigInt& B, const BigInt& C, const BigInt& a) {
    LemmaCheck out;
    auto& p = out.pre;
    p.a_positive = sgn(A) > 0;
    p.b_positive = sgn(B) > 0;
    p.c_at_least_two = C >= 2;
    p.a_nonzero = sgn(a) != 0;
    if (p.c_at_least_two) {
        p.c_divides_a = sgn(euclid_mod(A, C)) == 0;
        p.residue_matches = sgn(euclid_mod(B - a, C)) == 0;
    }
    if (!p.b_positive || !p.c_at_least_two) return out;

    p.b_not_divides_a = sgn(euclid_mod(A, B)) != 0;
    const BigInt qc = euclid_mod(floor_div(A, B), C);
    if (sgn(a) < 0) {
        p.size_bound = abs(a) * qc < C;
        out.lhs = euclid_mod(euclid_mod(A, B), C);
        out.rhs = abs(a) * qc;
    } else if (sgn(a) > 0) {
        p.size_bound = a + a * qc < C;
        out.lhs = euclid_mod(euclid_mod(BigInt(-A), B), C);
        out.rhs = a * (1 + qc);
    }
    out.preconditions_hold = p.all();
    out.equal = p.a_nonzero && out.lhs == out.rhs;
    return out;
}

}  // namespace crec
