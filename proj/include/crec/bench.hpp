#pragma once

/**
 * @file bench.hpp
 * @brief Full-width division against modular exponentiation.
 *
 * Each row records the exact bit length of the largest operand an
 * evaluation holds (c^(n^2) A~(c^n) for the full-width forms, B~(e^n) and
 * its residues for the fast form) next to the median wall time. The bit
 * lengths are hardware-independent; only wall_ns varies between runs.
 */

#include "crec/bigint.hpp"
#include "crec/error.hpp"
#include "crec/eval.hpp"
#include "crec/repr.hpp"
#include "crec/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace crec {

/// divmod: full-width quotient. naive / fast: the mod-mod form.
enum class BenchStrategy { divmod, naive, fast };

inline const char* to_string(BenchStrategy s) {
    switch (s) {
        case BenchStrategy::divmod: return "divmod";
        case BenchStrategy::naive: return "modmod-naive";
        case BenchStrategy::fast: return "modmod-fast";
    }
    return "?";
}

inline BenchStrategy parse_bench_strategy(const std::string& s) {
    if (s == "divmod") return BenchStrategy::divmod;
    if (s == "modmod-naive" || s == "naive") return BenchStrategy::naive;
    if (s == "modmod-fast" || s == "fast") return BenchStrategy::fast;
    throw std::invalid_argument("unknown bench strategy '" + s + "'");
}

struct BenchRow {
    std::string fixture;
    unsigned long n = 0;
    BenchStrategy strategy = BenchStrategy::fast;
    std::size_t operand_bits = 0;
    std::uint64_t wall_ns = 0;
    unsigned reps = 0;

    friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

namespace detail {

// The fixture's representation in the form a strategy evaluates, plus the
// amount to subtract afterwards for shifted fixtures.
struct BenchTarget {
    Repr repr;
    BigInt shift_h;  // 0 when not shifted
};

inline BenchTarget bench_target(const Fixture& f, BenchStrategy s) {
    if (s != BenchStrategy::divmod) return {derive_fixture(f), 0};
    DeriveOptions opts;
    opts.base = f.base;
    if (f.kind != ReprKind::shifted) return {derive_divmod(f.rec, opts), 0};
    const BigInt h = *f.shift_h;
    return {derive_divmod(shift_to_natural(f.rec, h), opts), h};
}

}  // namespace detail

/// Median-of-`reps` timing after one discarded warm-up run. Every value is
/// checked against the recurrence; a disagreement throws RepresentationError.
inline std::vector<BenchRow> bench_eval(const Fixture& f, std::span<const unsigned long> ns,
                                        std::span<const BenchStrategy> strategies, unsigned reps = 5) {
    if (reps < 1) throw std::invalid_argument("bench_eval: reps must be at least 1");
    unsigned long n_max = 0;
    for (auto n : ns) n_max = std::max(n_max, n);
    const auto expected = oracle_prefix(f.rec, n_max + 1);

    std::vector<BenchRow> rows;
    for (auto s : strategies) {
        const auto target = detail::bench_target(f, s);
        const EvalStrategy es = s == BenchStrategy::naive ? EvalStrategy::naive : EvalStrategy::fast;
        for (auto n : ns) {
            EvalStats stats;
            BigInt value = evaluate(target.repr, n, es, &stats);  // warm-up
            if (sgn(target.shift_h) != 0) value -= pow(target.shift_h, n + 1);
            if (value != expected[n])
                throw RepresentationError(f.name + ": " + to_string(s) + " gives " + to_string(value) +
                                          " at n = " + std::to_string(n) + ", expected " + to_string(expected[n]));
            std::vector<std::uint64_t> times;
            for (unsigned r = 0; r < reps; ++r) {
                const auto t0 = std::chrono::steady_clock::now();
                BigInt v = evaluate(target.repr, n, es);
                const auto t1 = std::chrono::steady_clock::now();
                if (sgn(target.shift_h) != 0) v -= pow(target.shift_h, n + 1);
                if (v != value) throw std::logic_error("bench_eval: evaluation is not deterministic");
                times.push_back(static_cast<std::uint64_t>(
                    std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count()));
            }
            std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
            rows.push_back({f.name, n, s, stats.operand_bits, times[times.size() / 2], reps});
        }
    }
    return rows;
}

inline constexpr const char* kCsvHeader = "fixture,n,strategy,operand_bits,wall_ns,reps";

inline void emit_csv(std::span<const BenchRow> rows, std::ostream& out) {
    out << kCsvHeader << "\n";
    for (const auto& r : rows)
        out << r.fixture << ',' << r.n << ',' << to_string(r.strategy) << ',' << r.operand_bits << ','
            << r.wall_ns << ',' << r.reps << "\n";
}

inline void emit_csv(std::span<const BenchRow> rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    emit_csv(rows, out);
    out.flush();
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

/// Whitespace-separated columns with a commented header, for gnuplot.
inline void emit_gnuplot(std::span<const BenchRow> rows, std::ostream& out) {
    out << "# fixture n strategy operand_bits wall_ns reps\n";
    for (const auto& r : rows)
        out << r.fixture << ' ' << r.n << ' ' << to_string(r.strategy) << ' ' << r.operand_bits << ' '
            << r.wall_ns << ' ' << r.reps << "\n";
}

inline std::vector<BenchRow> parse_csv(std::istream& in) {
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(in, line) || line != kCsvHeader) throw ParseError(1, "missing CSV header");
    std::vector<BenchRow> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
        if (f.size() != 6) throw ParseError(lineno, "expected 6 fields, got " + std::to_string(f.size()));
        try {
            rows.push_back({f[0], std::stoul(f[1]), parse_bench_strategy(f[2]), std::stoull(f[3]), std::stoull(f[4]),
                            static_cast<unsigned>(std::stoul(f[5]))});
        } catch (const std::exception& e) {
            throw ParseError(lineno, e.what());
        }
    }
    return rows;
}

}  // namespace crec
