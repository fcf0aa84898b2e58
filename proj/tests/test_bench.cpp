#include "crec/bench.hpp"

#include <gtest/gtest.h>

#include <sstream>

using crec::BenchRow;
using crec::BenchStrategy;
using crec::BigInt;

namespace {

std::vector<BenchRow> run(const std::string& fixture, std::vector<unsigned long> ns, std::vector<BenchStrategy> ss,
                          unsigned reps = 1) {
    return crec::bench_eval(crec::find_fixture(fixture), ns, ss, reps);
}

}  // namespace

TEST(Bench, OperandBitsFibonacci64) {
    const auto rows = run("fibonacci", {64}, {BenchStrategy::divmod, BenchStrategy::naive, BenchStrategy::fast});
    ASSERT_EQ(rows.size(), 3u);
    const BigInt three = 3;
    EXPECT_EQ(rows[0].operand_bits, crec::bit_length(crec::pow(three, 4160)));
    EXPECT_EQ(rows[1].operand_bits, crec::bit_length(crec::pow(three, 4160)));
    EXPECT_EQ(rows[2].operand_bits, crec::bit_length(crec::pow(three, 128) - crec::pow(three, 64) - 1));
    for (const auto& r : rows) {
        EXPECT_EQ(r.fixture, "fibonacci");
        EXPECT_EQ(r.n, 64u);
        EXPECT_EQ(r.reps, 1u);
    }
}

TEST(Bench, ShiftedFixtureAllStrategies) {
    const auto rows = run("a002249", {5, 9}, {BenchStrategy::divmod, BenchStrategy::fast}, 3);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0].strategy, BenchStrategy::divmod);
    EXPECT_EQ(rows[3].strategy, BenchStrategy::fast);
    EXPECT_EQ(rows[3].n, 9u);
}

TEST(Bench, RejectsZeroReps) {
    EXPECT_THROW(run("fibonacci", {3}, {BenchStrategy::fast}, 0), std::invalid_argument);
}

TEST(Bench, OperandBitsGrowWithN) {
    const auto rows = run("lucas", {8, 16, 32, 64, 128}, {BenchStrategy::naive, BenchStrategy::fast});
    for (std::size_t i = 1; i < 5; ++i) {
        EXPECT_GT(rows[i].operand_bits, rows[i - 1].operand_bits);
        EXPECT_GT(rows[5 + i].operand_bits, rows[5 + i - 1].operand_bits);
    }
    // Quadratic against linear: doubling n roughly quadruples naive, doubles fast.
    EXPECT_GT(rows[4].operand_bits, 3 * rows[3].operand_bits);
    EXPECT_LT(rows[9].operand_bits, 3 * rows[8].operand_bits);
}

TEST(Csv, RoundTrip) {
    const std::vector<BenchRow> rows = {
        {"fibonacci", 64, BenchStrategy::divmod, 6594, 12345, 5},
        {"fibonacci", 64, BenchStrategy::naive, 6594, 23456, 5},
        {"pell_x_k7", 25, BenchStrategy::fast, 358, 789, 5},
    };
    std::ostringstream out;
    crec::emit_csv(rows, out);
    EXPECT_EQ(out.str().substr(0, out.str().find('\n')), crec::kCsvHeader);
    EXPECT_NE(out.str().find("fibonacci,64,modmod-naive,6594,23456,5\n"), std::string::npos);
    std::istringstream in(out.str());
    EXPECT_EQ(crec::parse_csv(in), rows);
}

TEST(Csv, EmptyRowsGiveHeaderOnly) {
    std::ostringstream out;
    crec::emit_csv(std::span<const BenchRow>{}, out);
    EXPECT_EQ(out.str(), std::string(crec::kCsvHeader) + "\n");
}

TEST(Csv, ParseErrors) {
    std::istringstream no_header("fibonacci,1,divmod,1,1,1\n");
    EXPECT_THROW(crec::parse_csv(no_header), crec::ParseError);
    std::istringstream short_row(std::string(crec::kCsvHeader) + "\nfibonacci,1,divmod\n");
    try {
        crec::parse_csv(short_row);
        FAIL() << "expected ParseError";
    } catch (const crec::ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    std::istringstream bad_strategy(std::string(crec::kCsvHeader) + "\nf,1,slow,1,1,1\n");
    EXPECT_THROW(crec::parse_csv(bad_strategy), crec::ParseError);
}

TEST(Gnuplot, Columns) {
    const std::vector<BenchRow> rows = {{"lucas", 3, BenchStrategy::fast, 10, 20, 5}};
    std::ostringstream out;
    crec::emit_gnuplot(rows, out);
    EXPECT_EQ(out.str(), "# fixture n strategy operand_bits wall_ns reps\nlucas 3 modmod-fast 10 20 5\n");
}
