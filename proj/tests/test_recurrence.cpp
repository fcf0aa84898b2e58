#include "crec/recurrence.hpp"

#include <gtest/gtest.h>

#include <random>

using crec::BigInt;
using crec::IntPoly;
using crec::NaturalityStatus;
using crec::Recurrence;

namespace {

const Recurrence kFibonacci{{-1, -1}, {0, 1}};
const Recurrence kLucas{{-1, -1}, {2, 1}};
const Recurrence kTribonacci{{-1, -1, -1}, {0, 0, 1}};
const Recurrence kAllTwos{{-2, 1}, {2, 2}};
const Recurrence kA002249{{-1, 2}, {2, 1}};
const Recurrence kA088137{{-2, 3}, {0, 1}};

// Power-series coefficients of num/den by long division (den(0) = 1).
std::vector<BigInt> series(const IntPoly& num, const IntPoly& den, std::size_t count) {
    std::vector<BigInt> q(count);
    for (std::size_t n = 0; n < count; ++n) {
        BigInt acc = num.coeff(n);
        for (std::size_t i = 1; i <= n; ++i) acc -= den.coeff(i) * q[n - i];
        q[n] = acc;
    }
    return q;
}

Recurrence random_recurrence(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> ord(1, 5), coeff(-6, 6), init(-20, 20);
    const long d = ord(rng);
    std::vector<BigInt> a, t;
    for (long i = 0; i < d; ++i) a.emplace_back(coeff(rng));
    while (sgn(a.back()) == 0) a.back() = coeff(rng);
    for (long i = 0; i < d; ++i) t.emplace_back(init(rng));
    return Recurrence(a, t);
}

}  // namespace

TEST(Recurrence, RejectsMalformed) {
    EXPECT_THROW(Recurrence(std::vector<BigInt>{}, std::vector<BigInt>{}), std::invalid_argument);
    EXPECT_THROW(Recurrence({-1, 0}, {0, 1}), std::invalid_argument);
    EXPECT_THROW(Recurrence({-1, -1}, {0}), std::invalid_argument);
}

TEST(Recurrence, Oracle) {
    EXPECT_EQ(oracle_eval(kFibonacci, 10), 55);
    EXPECT_EQ(oracle_eval(kTribonacci, 7), 13);
    EXPECT_EQ(oracle_eval(kLucas, 0), 2);
    EXPECT_EQ(oracle_eval(kTribonacci, 1), 0);
    const auto t = oracle_prefix(kA002249, 6);
    EXPECT_EQ(t, (std::vector<BigInt>{2, 1, -3, -5, 1, 11}));
    EXPECT_TRUE(oracle_prefix(kFibonacci, 0).empty());
    EXPECT_EQ(oracle_eval(kFibonacci, 100), BigInt("354224848179261915075"));
}

TEST(Recurrence, Numerator) {
    EXPECT_EQ(numerator_from_initial(kFibonacci), (IntPoly{0, 1}));
    EXPECT_EQ(numerator_from_initial(kAllTwos), (IntPoly{2, -2}));
    EXPECT_TRUE(numerator_from_initial(Recurrence({-3, 1}, {0, 0})).is_zero());
}

TEST(Recurrence, Denominator) {
    EXPECT_EQ(denominator(kFibonacci), (IntPoly{1, -1, -1}));
    EXPECT_EQ(denominator(Recurrence({-2}, {1})), (IntPoly{1, -2}));
    EXPECT_EQ(denominator(kTribonacci), (IntPoly{1, -1, -1, -1}));
}

TEST(Recurrence, Naturality) {
    EXPECT_EQ(naturality(kFibonacci, 64).status, NaturalityStatus::certified);
    EXPECT_EQ(naturality(kLucas, 64).status, NaturalityStatus::certified);
    const auto bad = naturality(kA002249, 64);
    EXPECT_EQ(bad.status, NaturalityStatus::rejected);
    EXPECT_EQ(bad.first_negative, 2u);
    const auto naturals = naturality(Recurrence({-2, 1}, {0, 1}), 64);
    EXPECT_EQ(naturals.status, NaturalityStatus::checked_prefix);
    EXPECT_EQ(naturals.prefix_length, 64u);
}

TEST(Recurrence, ShiftA002249) {
    const Recurrence s = shift_to_natural(kA002249, BigInt(2));
    EXPECT_EQ(s.order(), 3u);
    EXPECT_EQ(reciprocal(denominator(s), 3), (IntPoly{-4, 4, -3, 1}));
    EXPECT_EQ(reciprocal(numerator_from_initial(s), 3), (IntPoly{0, 6, -7, 4}));
}

TEST(Recurrence, ShiftA088137) {
    const Recurrence s = shift_to_natural(kA088137, BigInt(3));
    EXPECT_EQ(reciprocal(denominator(s), 3), (IntPoly{-9, 9, -5, 1}));
    EXPECT_EQ(reciprocal(numerator_from_initial(s), 3), (IntPoly{0, 6, -5, 3}));
}

TEST(Recurrence, ShiftZeroSequence) {
    const Recurrence s = shift_to_natural(Recurrence({-1}, {0}), BigInt(2));
    EXPECT_EQ(denominator(s), ((IntPoly{1, -1}) * IntPoly{1, -2}));
    for (std::size_t n = 0; n < 20; ++n) EXPECT_EQ(oracle_eval(s, n), crec::pow(BigInt(2), n + 1));
}

TEST(Recurrence, ShiftRejectsSmallH) {
    EXPECT_THROW(shift_to_natural(kA002249, BigInt(1)), std::invalid_argument);
    EXPECT_THROW(shift_to_natural(kA002249, BigInt(0)), std::invalid_argument);
    // Fibonacci-like growth with t(1) = 5 needs h^2 >= 5.
    EXPECT_THROW(shift_to_natural(Recurrence({-1, -1}, {0, 5}), BigInt(2)), std::invalid_argument);
    EXPECT_NO_THROW(shift_to_natural(Recurrence({-1, -1}, {0, 5}), BigInt(3)));
}

TEST(Recurrence, Json) {
    nlohmann::json j = kFibonacci;
    EXPECT_EQ(j.dump(), R"({"coeffs":["-1","-1"],"initial":["0","1"]})");
    EXPECT_EQ(crec::recurrence_from_json(j), kFibonacci);
    EXPECT_THROW(crec::recurrence_from_json(nlohmann::json::parse(R"({"coeffs":["x"],"initial":["1"]})")),
                 std::invalid_argument);
}

TEST(RecurrenceProperty, GeneratingFunctionExpandsToOracle) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 300; ++i) {
        const Recurrence rec = random_recurrence(rng);
        EXPECT_LT(numerator_from_initial(rec).degree().value_or(0), rec.order());
        EXPECT_EQ(series(numerator_from_initial(rec), denominator(rec), 61), oracle_prefix(rec, 61));
    }
}

TEST(RecurrenceProperty, ShiftAddsPowersOfH) {
    std::mt19937_64 rng(5);
    int shifted = 0;
    for (int i = 0; i < 300; ++i) {
        const Recurrence rec = random_recurrence(rng);
        BigInt h = 1;
        while (!crec::shift_certified(rec, h)) ++h;
        const Recurrence s = shift_to_natural(rec, h);
        ++shifted;
        const auto t = oracle_prefix(rec, 61);
        const auto u = oracle_prefix(s, 61);
        for (std::size_t n = 0; n <= 60; ++n) {
            EXPECT_EQ(u[n], t[n] + crec::pow(h, n + 1));
            EXPECT_GE(u[n], 0);
        }
    }
    EXPECT_EQ(shifted, 300);
}

TEST(RecurrenceProperty, CertifiedNaturalityHolds) {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 300; ++i) {
        const Recurrence rec = random_recurrence(rng);
        if (naturality(rec, 40).status != NaturalityStatus::certified) continue;
        for (const auto& t : oracle_prefix(rec, 100)) EXPECT_GE(t, 0);
    }
}
