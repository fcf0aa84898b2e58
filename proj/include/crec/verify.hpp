#pragma once

/**
 * @file verify.hpp
 * @brief Fixture catalogue, oracle comparison, random recurrences, b-files.
 */

#include "crec/bigint.hpp"
#include "crec/error.hpp"
#include "crec/eval.hpp"
#include "crec/recurrence.hpp"
#include "crec/repr.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

namespace crec {

// ---------------------------------------------------------------------------
// Fixtures

enum class ReprKind { divmod, modmod, shifted };

inline const char* to_string(ReprKind k) {
    switch (k) {
        case ReprKind::divmod: return "divmod";
        case ReprKind::modmod: return "modmod";
        case ReprKind::shifted: return "shifted";
    }
    return "?";
}

inline ReprKind parse_kind(const std::string& s) {
    if (s == "divmod") return ReprKind::divmod;
    if (s == "modmod") return ReprKind::modmod;
    if (s == "shifted") return ReprKind::shifted;
    throw std::invalid_argument("unknown representation kind '" + s + "'");
}

struct Fixture {
    std::string name;
    std::string oeis;
    std::string title;
    Recurrence rec;
    ReprKind kind;
    BigInt base;                       // the published base, used as an asserted base
    std::optional<BigInt> shift_h;     // shifted fixtures only
    std::vector<BigInt> known_prefix;  // t(0), t(1), ... as listed in the OEIS
};

namespace detail {

inline std::vector<BigInt> bigs(std::initializer_list<long long> xs) {
    std::vector<BigInt> r;
    for (long long x : xs) r.emplace_back(static_cast<long>(x));
    return r;
}

inline std::vector<Fixture> make_fixtures() {
    auto fx = [](std::string name, std::string oeis, std::string title, Recurrence rec, ReprKind kind, long base,
                 std::optional<long> h, std::vector<BigInt> prefix) {
        std::optional<BigInt> hh;
        if (h) hh = BigInt(*h);
        return Fixture{std::move(name), std::move(oeis), std::move(title), std::move(rec), kind, BigInt(base),
                       std::move(hh), std::move(prefix)};
    };
    const auto M = ReprKind::modmod;
    const auto S = ReprKind::shifted;
    std::vector<Fixture> v;
    v.push_back(fx("fibonacci", "A000045", "Fibonacci numbers", {{-1, -1}, {0, 1}}, M, 3, {},
                   bigs({0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144})));
    v.push_back(fx("lucas", "A000032", "Lucas numbers", {{-1, -1}, {2, 1}}, M, 5, {},
                   bigs({2, 1, 3, 4, 7, 11, 18, 29, 47, 76, 123, 199})));
    v.push_back(fx("pell", "A000129", "Pell numbers", {{-2, -1}, {0, 1}}, M, 3, {},
                   bigs({0, 1, 2, 5, 12, 29, 70, 169, 408, 985, 2378})));
    v.push_back(fx("pell_lucas", "A002203", "Pell-Lucas numbers", {{-2, -1}, {2, 2}}, M, 9, {},
                   bigs({2, 2, 6, 14, 34, 82, 198, 478, 1154, 2786, 6726})));
    v.push_back(fx("naturals", "A001477", "natural numbers", {{-2, 1}, {0, 1}}, M, 4, {},
                   bigs({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11})));
    v.push_back(fx("all_twos", "A007395", "constant 2", {{-2, 1}, {2, 2}}, M, 4, {},
                   bigs({2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2})));
    v.push_back(fx("mersenne", "A000225", "Mersenne numbers 2^n - 1", {{-3, 2}, {0, 1}}, M, 6, {},
                   bigs({0, 1, 3, 7, 15, 31, 63, 127, 255, 511, 1023})));
    v.push_back(fx("two_pow_n_plus_one", "A000051", "2^n + 1", {{-3, 2}, {2, 3}}, M, 9, {},
                   bigs({2, 3, 5, 9, 17, 33, 65, 129, 257, 513, 1025})));
    v.push_back(fx("pell_x_k7", "A001081", "x-solutions of X^2 - 7Y^2 = 1", {{-16, 1}, {1, 8}}, M, 143, {},
                   bigs({1, 8, 127, 2024, 32257, 514088, 8193151})));
    v.push_back(fx("pell_y_k7", "A001080", "y-solutions of X^2 - 7Y^2 = 1", {{-16, 1}, {0, 3}}, M, 64, {},
                   bigs({0, 3, 48, 765, 12192, 194307, 3096720})));
    v.push_back(fx("a088137", "A088137", "generalized Gaussian Fibonacci integers", {{-2, 3}, {0, 1}}, S, 91, 3,
                   bigs({0, 1, 2, 1, -4, -11, -10, 13, 56, 73, -22})));
    v.push_back(fx("a002249", "A002249", "t(n) = t(n-1) - 2t(n-2)", {{-1, 2}, {2, 1}}, S, 21, 2,
                   bigs({2, 1, -3, -5, 1, 11, 9, -13, -31, -5, 57})));
    v.push_back(fx("tribonacci", "A000073", "Tribonacci numbers", {{-1, -1, -1}, {0, 0, 1}}, M, 2, {},
                   bigs({0, 0, 1, 1, 2, 4, 7, 13, 24, 44, 81, 149})));
    v.push_back(fx("padovan", "A000931", "Padovan numbers", {{0, -1, -1}, {1, 0, 0}}, M, 2, {},
                   bigs({1, 0, 0, 1, 0, 1, 1, 1, 2, 2, 3, 4, 5, 7, 9, 12})));
    v.push_back(fx("narayana", "A000930", "Narayana's cows sequence", {{-1, 0, -1}, {1, 1, 1}}, M, 2, {},
                   bigs({1, 1, 1, 2, 3, 4, 6, 9, 13, 19, 28, 41, 60})));
    return v;
}

}  // namespace detail

/// The published examples, in publication order.
inline const std::vector<Fixture>& fixtures() {
    static const std::vector<Fixture> all = detail::make_fixtures();
    return all;
}

inline const Fixture& find_fixture(std::string_view name) {
    for (const auto& f : fixtures())
        if (f.name == name) return f;
    throw std::invalid_argument("unknown fixture '" + std::string(name) + "'");
}

/// The fixture's representation at its published base, or at `base` when given.
/// Either way the base is asserted, not certified.
inline Repr derive_fixture(const Fixture& f, std::optional<BigInt> base = std::nullopt) {
    DeriveOptions opts;
    opts.base = base.value_or(f.base);
    opts.shift_h = f.shift_h;
    switch (f.kind) {
        case ReprKind::divmod: return derive_divmod(f.rec, opts);
        case ReprKind::modmod: return derive_modmod(f.rec, opts);
        case ReprKind::shifted: return derive_shifted(f.rec, opts);
    }
    throw std::logic_error("unreachable");
}

inline nlohmann::json fixture_json(const Fixture& f) {
    nlohmann::json j;
    j["name"] = f.name;
    j["oeis"] = f.oeis;
    j["title"] = f.title;
    j["recurrence"] = f.rec;
    j["kind"] = to_string(f.kind);
    j["base"] = to_string(f.base);
    j["shift_h"] = f.shift_h ? nlohmann::json(to_string(*f.shift_h)) : nlohmann::json(nullptr);
    auto prefix = nlohmann::json::array();
    for (const auto& t : f.known_prefix) prefix.push_back(to_string(t));
    j["known_prefix"] = std::move(prefix);
    j["representation"] = to_json(derive_fixture(f));
    return j;
}

// ---------------------------------------------------------------------------
// Oracle comparison

enum class VerifyStatus { ok, mismatch };

struct Mismatch {
    unsigned long n = 0;
    BigInt expected;
    std::optional<BigInt> got;  // empty when evaluation raised
    std::string error;          // RepresentationError message, if any
    std::string dump;           // operands at n
};

struct VerifyReport {
    unsigned long n_lo = 0;
    unsigned long n_hi = 0;
    VerifyStatus status = VerifyStatus::ok;
    std::optional<Mismatch> first_mismatch;
    std::size_t checked = 0;
    std::vector<std::chrono::nanoseconds> timings;  // per n, when requested
    std::vector<unsigned long> modulus_divides;      // n where B~(e^n) divided the numerator

    bool ok() const { return status == VerifyStatus::ok; }
};

struct VerifyOptions {
    EvalStrategy strategy = EvalStrategy::fast;
    bool exhaustive = false;  // keep going after the first mismatch
    unsigned threads = 1;     // 0 = hardware concurrency
    bool timing = false;
};

/// Operands of the representation at n, one "name = value" per line.
inline std::string operand_dump(const Repr& repr, unsigned long n) {
    std::ostringstream os;
    auto dump_poly_pair = [&](const CertifiedBase& b, const IntPoly& at, const IntPoly& bt, bool full_width) {
        const BigInt xn = pow(b.base, n);
        const BigInt num = pow(b.base, n * n) * eval(at, xn);
        const BigInt den = eval(bt, xn);
        os << "base^n = " << to_string(xn) << "\n";
        os << "B~(base^n) = " << to_string(den) << "\n";
        os << "base^(n^2) A~(base^n) = " << to_string(num) << "\n";
        if (sgn(den) > 0) {
            if (full_width) os << "quotient = " << to_string(floor_div(num, den)) << "\n";
            os << "N mod B = " << to_string(euclid_mod(num, den)) << "\n";
            os << "(-N) mod B = " << to_string(euclid_mod(BigInt(-num), den)) << "\n";
        }
    };
    if (auto* d = std::get_if<DivModRepr>(&repr)) dump_poly_pair(d->base, d->atilde, d->btilde, true);
    if (auto* m = std::get_if<ModModRepr>(&repr)) dump_poly_pair(m->base, m->atilde, m->btilde, false);
    if (auto* s = std::get_if<ShiftedRepr>(&repr)) {
        dump_poly_pair(s->inner.base, s->inner.atilde, s->inner.btilde, false);
        os << "h^(n+1) = " << to_string(pow(s->h, n + 1)) << "\n";
    }
    return os.str();
}

/// Evaluates repr on [n_lo, n_hi] and compares each value with the
/// recurrence. The report is identical for every thread count.
inline VerifyReport verify_range(const Repr& repr, const Recurrence& rec, unsigned long n_lo, unsigned long n_hi,
                                 const VerifyOptions& opts = {}) {
    if (n_lo < 1 || n_lo > n_hi)
        throw std::invalid_argument("verify_range: need 1 <= n_lo <= n_hi, got " + std::to_string(n_lo) + ":" +
                                    std::to_string(n_hi));
    const auto expected = oracle_prefix(rec, n_hi + 1);
    const std::size_t count = n_hi - n_lo + 1;

    struct Slot {
        std::optional<BigInt> got;
        std::string error;
        std::chrono::nanoseconds elapsed{0};
        bool divides = false;
    };
    std::vector<Slot> slots(count);
    auto run_one = [&](std::size_t i) {
        const unsigned long n = n_lo + i;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            EvalStats stats;
            slots[i].got = evaluate(repr, n, opts.strategy, &stats);
            slots[i].divides = stats.modulus_divides;
        } catch (const RepresentationError& e) {
            slots[i].error = e.what();
        }
        slots[i].elapsed = std::chrono::steady_clock::now() - t0;
    };

    unsigned threads = opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opts.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    const bool sequential_stop = threads <= 1 && !opts.exhaustive;
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            run_one(i);
            if (sequential_stop && (!slots[i].got || *slots[i].got != expected[n_lo + i])) {
                slots.resize(i + 1);
                break;
            }
        }
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < count; i += threads) run_one(i);
            });
        for (auto& t : pool) t.join();
    }

    VerifyReport rep;
    rep.n_lo = n_lo;
    rep.n_hi = n_hi;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        const unsigned long n = n_lo + i;
        ++rep.checked;
        if (opts.timing) rep.timings.push_back(slots[i].elapsed);
        if (slots[i].divides) rep.modulus_divides.push_back(n);
        const bool good = slots[i].got && *slots[i].got == expected[n];
        if (!good && !rep.first_mismatch) {
            rep.status = VerifyStatus::mismatch;
            rep.first_mismatch = Mismatch{n, expected[n], slots[i].got, slots[i].error, operand_dump(repr, n)};
            if (!opts.exhaustive) break;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Random recurrences

/// Order in [1, d_max], a_i in [-coeff_max, 0] with a_d != 0, initial terms in
/// [0, init_max]. Such sequences are N-valued by induction.
inline Recurrence random_natural_recurrence(std::uint64_t seed, std::size_t d_max, long coeff_max, long init_max) {
    if (d_max < 1 || coeff_max < 1 || init_max < 0) throw std::invalid_argument("random_natural_recurrence: bad bounds");
    std::mt19937_64 rng(seed);
    auto uniform = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
    const auto d = static_cast<std::size_t>(uniform(1, static_cast<long>(d_max)));
    std::vector<BigInt> coeffs, init;
    for (std::size_t i = 0; i + 1 < d; ++i) coeffs.emplace_back(uniform(-coeff_max, 0));
    coeffs.emplace_back(uniform(-coeff_max, -1));
    for (std::size_t i = 0; i < d; ++i) init.emplace_back(uniform(0, init_max));
    return Recurrence(std::move(coeffs), std::move(init));
}

/// A recurrence with a_d > 0 (so alpha_d > 0) and some positive coefficients,
/// kept only if it is nonzero and its first `prefix` terms are non-negative.
/// Order is in [2, max(2, d_max)].
inline Recurrence random_mixed_recurrence(std::uint64_t seed, std::size_t d_max, long coeff_max, long init_max,
                                          std::size_t prefix = 64) {
    if (coeff_max < 1 || init_max < 1) throw std::invalid_argument("random_mixed_recurrence: bad bounds");
    std::mt19937_64 rng(seed);
    auto uniform = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
    for (int attempt = 0; attempt < 100000; ++attempt) {
        const auto d = static_cast<std::size_t>(uniform(2, static_cast<long>(std::max<std::size_t>(2, d_max))));
        std::vector<BigInt> coeffs, init;
        coeffs.emplace_back(uniform(-coeff_max, -1));
        for (std::size_t i = 1; i + 1 < d; ++i) coeffs.emplace_back(uniform(-coeff_max, coeff_max));
        coeffs.emplace_back(uniform(1, coeff_max));
        for (std::size_t i = 0; i < d; ++i) init.emplace_back(uniform(0, init_max));
        Recurrence rec(std::move(coeffs), std::move(init));
        if (!rec.is_zero_sequence() && naturality(rec, prefix).status != NaturalityStatus::rejected) return rec;
    }
    throw std::runtime_error("random_mixed_recurrence: no admissible recurrence found");
}

// ---------------------------------------------------------------------------
// OEIS b-files: "n a(n)" per line, '#' comments and blank lines ignored.

struct BFileEntry {
    std::int64_t n;
    BigInt value;

    friend bool operator==(const BFileEntry&, const BFileEntry&) = default;
};

inline std::vector<BFileEntry> parse_bfile(std::istream& in) {
    std::vector<BFileEntry> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        std::string idx, val, extra;
        fields >> idx >> val;
        if (val.empty()) throw ParseError(lineno, "expected 'n a(n)', got '" + line + "'");
        if (fields >> extra) throw ParseError(lineno, "trailing field '" + extra + "'");
        BFileEntry e{};
        auto [p, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), e.n);
        if (ec != std::errc() || p != idx.data() + idx.size()) throw ParseError(lineno, "bad index '" + idx + "'");
        try {
            e.value = parse_bigint(val);
        } catch (const std::invalid_argument&) {
            throw ParseError(lineno, "bad value '" + val + "'");
        }
        out.push_back(std::move(e));
    }
    return out;
}

inline std::vector<BFileEntry> load_bfile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open b-file '" + path + "'");
    return parse_bfile(in);
}

/// First b-file entry (with n >= 0) that disagrees with the recurrence.
inline std::optional<BFileEntry> crosscheck_bfile(const Recurrence& rec, const std::vector<BFileEntry>& entries) {
    std::int64_t hi = -1;
    for (const auto& e : entries) hi = std::max(hi, e.n);
    if (hi < 0) return std::nullopt;
    const auto t = oracle_prefix(rec, static_cast<std::size_t>(hi) + 1);
    for (const auto& e : entries)
        if (e.n >= 0 && t[static_cast<std::size_t>(e.n)] != e.value) return e;
    return std::nullopt;
}

}  // namespace crec
