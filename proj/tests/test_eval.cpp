#include "crec/eval.hpp"
#include "crec/verify.hpp"

#include <gtest/gtest.h>

#include <random>

using crec::BigInt;
using crec::DeriveOptions;
using crec::EvalStrategy;
using crec::Recurrence;

namespace {

const Recurrence kFibonacci{{-1, -1}, {0, 1}};
const Recurrence kMersenne{{-3, 2}, {0, 1}};
const Recurrence kNaturals{{-2, 1}, {0, 1}};
const Recurrence kTwoPowPlusOne{{-3, 2}, {2, 3}};

DeriveOptions at_base(long base) {
    DeriveOptions o;
    o.base = BigInt(base);
    return o;
}

crec::ModModRepr modmod(const Recurrence& rec, long base) {
    return std::get<crec::ModModRepr>(derive_modmod(rec, at_base(base)));
}

long long floor_mod(long long x, long long m) { return ((x % m) + m) % m; }

}  // namespace

TEST(Arith, EuclidMod) {
    EXPECT_EQ(crec::euclid_mod(BigInt(-16), BigInt(9)), 2);
    EXPECT_EQ(crec::euclid_mod(BigInt(7), BigInt(7)), 0);
    EXPECT_EQ(crec::euclid_mod(BigInt(-96), BigInt(9)), 3);
    EXPECT_EQ(crec::euclid_mod(BigInt(5), BigInt(9)), 5);
    EXPECT_THROW(crec::euclid_mod(BigInt(5), BigInt(0)), std::invalid_argument);
    EXPECT_THROW(crec::euclid_mod(BigInt(5), BigInt(-3)), std::invalid_argument);
    EXPECT_EQ(crec::floor_div(BigInt(-7), BigInt(2)), -4);
    EXPECT_EQ(crec::floor_div(BigInt(7), BigInt(2)), 3);
}

TEST(Arith, ModPow) {
    EXPECT_EQ(crec::modpow(BigInt(3), BigInt(4), BigInt(5)), 1);
    EXPECT_EQ(crec::modpow(BigInt(2), BigInt(10), BigInt(1000)), 24);
    EXPECT_EQ(crec::modpow(BigInt(7), BigInt(0), BigInt(1)), 0);
    EXPECT_EQ(crec::modpow(BigInt(-2), BigInt(3), BigInt(5)), 2);
    for (long b = 0; b <= 12; ++b)
        for (long k = 0; k <= 12; ++k)
            for (long m = 1; m <= 100; ++m)
                ASSERT_EQ(crec::modpow(BigInt(b), BigInt(k), BigInt(m)),
                          crec::euclid_mod(crec::pow(BigInt(b), k), BigInt(m)))
                    << b << "^" << k << " mod " << m;
}

TEST(Eval, DivMod) {
    const auto r = std::get<crec::DivModRepr>(derive_divmod(kFibonacci, at_base(3)));
    EXPECT_EQ(crec::eval_divmod(r, 3), 2);
    EXPECT_EQ(crec::eval_divmod(r, 4), 3);
    EXPECT_THROW(crec::eval_divmod(r, 0), std::invalid_argument);
}

TEST(Eval, ModModExamples) {
    for (auto s : {EvalStrategy::naive, EvalStrategy::fast}) {
        EXPECT_EQ(crec::eval_modmod(modmod(kFibonacci, 3), 4, s), 3);
        EXPECT_EQ(crec::eval_modmod(modmod(kMersenne, 6), 2, s), 3);
        EXPECT_EQ(crec::eval_modmod(modmod(kNaturals, 4), 2, s), 2);
        EXPECT_EQ(crec::eval_modmod(modmod(kTwoPowPlusOne, 9), 1, s), 3);
    }
}

TEST(Eval, RejectsNonPositiveModulus) {
    // x^2 - 3x - 1 at x = 2 is -3.
    const auto r = modmod(Recurrence({-3, -1}, {0, 1}), 2);
    EXPECT_THROW(crec::eval_modmod(r, 1, EvalStrategy::fast), crec::RepresentationError);
    const auto d = std::get<crec::DivModRepr>(derive_divmod(Recurrence({-3, -1}, {0, 1}), at_base(2)));
    EXPECT_THROW(crec::eval_divmod(d, 1), crec::RepresentationError);
}

TEST(Eval, RejectsInexactDivision) {
    auto r = modmod(kMersenne, 6);
    r.divisor = 3;  // inner remainder at n = 1 is 4
    EXPECT_THROW(crec::eval_modmod(r, 1, EvalStrategy::naive), crec::RepresentationError);
    EXPECT_THROW(crec::eval_modmod(r, 1, EvalStrategy::fast), crec::RepresentationError);
}

// B~(2) = 1 for Tribonacci at n = 1: the modulus divides everything, and the
// form still gives t(1) = 0. The event is reported, not raised.
TEST(Eval, ReportsDivisibleNumerator) {
    const auto r = modmod(Recurrence({-1, -1, -1}, {0, 0, 1}), 2);
    for (auto s : {EvalStrategy::naive, EvalStrategy::fast}) {
        crec::EvalStats at1, at2;
        EXPECT_EQ(crec::eval_modmod(r, 1, s, &at1), 0);
        EXPECT_TRUE(at1.modulus_divides);
        EXPECT_EQ(crec::eval_modmod(r, 2, s, &at2), 1);
        EXPECT_FALSE(at2.modulus_divides);
    }
    auto same = modmod(kFibonacci, 3);
    same.atilde = same.btilde;
    crec::EvalStats stats;
    EXPECT_EQ(crec::eval_modmod(same, 2, EvalStrategy::fast, &stats), 0);
    EXPECT_TRUE(stats.modulus_divides);
}

TEST(Eval, StatsTrackOperandSizes) {
    crec::EvalStats naive, fast;
    const auto r = modmod(kFibonacci, 3);
    EXPECT_EQ(crec::eval_modmod(r, 64, EvalStrategy::naive, &naive), crec::oracle_eval(kFibonacci, 64));
    EXPECT_EQ(crec::eval_modmod(r, 64, EvalStrategy::fast, &fast), crec::oracle_eval(kFibonacci, 64));
    const BigInt m = eval(r.btilde, crec::pow(BigInt(3), 64));
    EXPECT_EQ(fast.operand_bits, crec::bit_length(m));
    EXPECT_GE(naive.operand_bits, crec::bit_length(crec::pow(BigInt(3), 64 * 64)));
    EXPECT_LE(fast.product_bits, 2 * crec::bit_length(m));
}

TEST(Lemma, Examples) {
    const auto neg = crec::lemma_main_check(BigInt(729), BigInt(71), BigInt(9), BigInt(-1));
    EXPECT_TRUE(neg.preconditions_hold);
    EXPECT_TRUE(neg.equal);
    EXPECT_EQ(neg.lhs, 1);

    const auto pos = crec::lemma_main_check(BigInt(16), BigInt(9), BigInt(4), BigInt(1));
    EXPECT_TRUE(pos.preconditions_hold);
    EXPECT_EQ(pos.lhs, 2);
    EXPECT_EQ(pos.rhs, 2);

    const auto divides = crec::lemma_main_check(BigInt(18), BigInt(9), BigInt(3), BigInt(-3));
    EXPECT_FALSE(divides.pre.b_not_divides_a);
    EXPECT_FALSE(divides.preconditions_hold);
}

// Small identities the main identity rests on, checked exhaustively.
TEST(Lemma, AuxiliaryIdentities) {
    for (long long C = 2; C <= 30; ++C) {
        for (long long x = -100; x <= 100; ++x) {
            // (x + 1) mod C = (x mod C) + 1 unless x = -1 (mod C)
            if (floor_mod(x, C) != C - 1) {
                ASSERT_EQ(floor_mod(x + 1, C), floor_mod(x, C) + 1);
            }
            // (-x) mod C = C - (x mod C) when C does not divide x
            if (floor_mod(x, C) != 0) {
                ASSERT_EQ(floor_mod(-x, C), C - floor_mod(x, C));
            }
        }
        for (long long a = 1; a < C; ++a)
            for (long long y = 0; a * y < C; ++y) ASSERT_EQ(floor_mod(a * y, C), a * floor_mod(y, C));
    }
}

TEST(LemmaProperty, RandomTuples) {
    std::mt19937_64 rng(37);
    std::uniform_int_distribution<long long> cs(2, 2000), as(1, 6), ks(0, 50), ms(1, 5000);
    int neg = 0, pos = 0;
    while (neg + pos < 4000) {
        const long long C = cs(rng);
        const long long a = (rng() & 1) ? as(rng) : -as(rng);
        const long long B = a + ks(rng) * C;
        const long long A = ms(rng) * C;
        const auto chk = crec::lemma_main_check(BigInt(long(A)), BigInt(long(B)), BigInt(long(C)), BigInt(long(a)));
        if (!chk.preconditions_hold) continue;
        const long long q = floor_mod(A / B, C);
        if (a < 0) {
            ASSERT_EQ(chk.lhs, long(floor_mod(floor_mod(A, B), C)));
            ASSERT_EQ(chk.rhs, long(-a * q));
            ++neg;
        } else {
            ASSERT_EQ(chk.lhs, long(floor_mod(floor_mod(-A, B), C)));
            ASSERT_EQ(chk.rhs, long(a * (1 + q)));
            ++pos;
        }
        ASSERT_TRUE(chk.equal) << "A=" << A << " B=" << B << " C=" << C << " a=" << a;
    }
    EXPECT_GT(neg, 500);
    EXPECT_GT(pos, 500);
}

TEST(EvalProperty, NaiveEqualsFastAndDivMod) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const Recurrence rec = crec::random_natural_recurrence(seed, 3, 4, 9);
        if (rec.is_zero_sequence()) continue;
        const auto mm = std::get<crec::ModModRepr>(derive_modmod(rec));
        const auto dm = std::get<crec::DivModRepr>(derive_divmod(rec));
        const auto t = crec::oracle_prefix(rec, 31);
        for (unsigned long n = 1; n <= 30; ++n) {
            const BigInt naive = crec::eval_modmod(mm, n, EvalStrategy::naive);
            ASSERT_EQ(naive, crec::eval_modmod(mm, n, EvalStrategy::fast)) << "seed " << seed << " n=" << n;
            ASSERT_EQ(naive, crec::eval_divmod(dm, n));
            ASSERT_EQ(naive, t[n]);
        }
    }
}

TEST(EvalProperty, PositiveAlphaRecurrences) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Recurrence rec = crec::random_mixed_recurrence(seed, 4, 5, 9);
        DeriveOptions opts;
        opts.force = true;
        const auto mm = std::get<crec::ModModRepr>(derive_modmod(rec, opts));
        EXPECT_EQ(mm.sign, 1);
        const auto t = crec::oracle_prefix(rec, 21);
        for (unsigned long n = 1; n <= 20; ++n) {
            if (t[n] < 0) break;
            ASSERT_EQ(crec::eval_modmod(mm, n, EvalStrategy::fast), t[n]) << "seed " << seed << " n=" << n;
        }
    }
}
