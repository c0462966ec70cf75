#include <gtest/gtest.h>

#include <sstream>

#include "narrow/io.hpp"

using namespace narrow;

namespace {

TupleFile parse(const std::string& text) {
  std::istringstream in(text);
  return parse_tuple_text(in, "mem");
}

}  // namespace

TEST(TupleFile, OffsetsCommentsAndSeparators) {
  const auto f = parse("# header\n0 2 6\n\n  0,4, 6\n0\t2\t6\t8\n");
  ASSERT_EQ(f.tuples.size(), 3u);
  EXPECT_EQ(f.tuples[0], Constellation::from_offsets({0, 2, 6}));
  EXPECT_EQ(f.tuples[1], Constellation::from_offsets({0, 4, 6}));
  EXPECT_EQ(f.tuples[2].length(), 3u);
  EXPECT_TRUE(f.warnings.empty());
}

TEST(TupleFile, GapsModeSwitching) {
  const auto f = parse("!gaps\n2 4\n!offsets\n0 4 6\n");
  ASSERT_EQ(f.tuples.size(), 2u);
  EXPECT_EQ(f.tuples[0], Constellation::from_offsets({0, 2, 6}));
  EXPECT_EQ(f.tuples[1], Constellation::from_offsets({0, 4, 6}));
}

TEST(TupleFile, InadmissibleKeptWithWarning) {
  const auto f = parse("0 2 4\n0 2\n");
  ASSERT_EQ(f.tuples.size(), 2u);
  EXPECT_FALSE(f.admissible[0]);
  EXPECT_TRUE(f.admissible[1]);
  ASSERT_EQ(f.warnings.size(), 1u);
  EXPECT_NE(f.warnings[0].find("mem:1"), std::string::npos);
}

TEST(TupleFile, ErrorsCarryLineNumbers) {
  try {
    parse("0 2\n0 x 4\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse("2 4\n"), ParseError);      // does not start at 0
  EXPECT_THROW(parse("0 4 2\n"), ParseError);    // not ascending
  EXPECT_THROW(parse("0 -2\n"), ParseError);
  EXPECT_THROW(parse("!gaps\n2 0\n"), ParseError);
  EXPECT_THROW(parse_tuple_file("/nonexistent/narrow.tuples"), std::runtime_error);
}

TEST(TupleFile, RoundTrip) {
  const auto f = parse("!gaps\n2 4 2 4\n6 6\n!offsets\n0 2 6 8 12 18\n");
  const std::string text = serialize_tuples(f.tuples);
  const auto g = parse(text);
  EXPECT_EQ(g.tuples, f.tuples);
  EXPECT_EQ(serialize_tuples(g.tuples), text);
}

TEST(TupleFile, BigOffsets) {
  const auto f = parse("0 2 123456789012345678901234567890\n");
  ASSERT_EQ(f.tuples.size(), 1u);
  EXPECT_EQ(f.tuples[0].span(), BigNat("123456789012345678901234567890"));
  EXPECT_FALSE(f.tuples[0].is_small());
}

TEST(Phi, CountsGapsEndingAtOrBeforeX) {
  const auto s = Constellation::from_offsets({0, 2, 6, 8});
  EXPECT_EQ(phi(s, 0), 0u);
  EXPECT_EQ(phi(s, 1), 0u);
  EXPECT_EQ(phi(s, 2), 1u);
  EXPECT_EQ(phi(s, 7), 2u);
  EXPECT_EQ(phi(s, 8), 3u);
  EXPECT_EQ(phi(s, 100), 3u);
  // Against the prime counting function for the prime-gap tuple.
  const auto p = prime_gap_constellation(100);
  for (std::uint64_t x = 0; x <= 541; ++x) EXPECT_EQ(phi(p, x), prime_count(x)) << x;  // p_100 = 541
}

TEST(DeltaPhi, SmallSeries) {
  const auto s = Constellation::from_offsets({0, 2, 6});
  const auto d = delta_phi(s, 2.0);
  ASSERT_EQ(d.breakpoints.size(), 5u);
  EXPECT_EQ(d.breakpoints[0], std::make_pair(0.0, 0.0));
  EXPECT_EQ(d.breakpoints[1], std::make_pair(2.0, -1.0));
  EXPECT_EQ(d.breakpoints[2], std::make_pair(2.0, 0.0));
  EXPECT_EQ(d.breakpoints[3], std::make_pair(6.0, -2.0));
  EXPECT_EQ(d.breakpoints[4], std::make_pair(6.0, -1.0));
  EXPECT_EQ(d.rises(), 2u);
  EXPECT_THROW(delta_phi(s, 0), DomainError);
}

TEST(DeltaPhi, PrimeGapTupleEndsAtJMinusPJOverMu) {
  for (std::size_t J : {10u, 100u, 459u}) {
    const auto s = prime_gap_constellation(J);
    const double mu = default_mu(J);
    const auto d = delta_phi(s, mu);
    EXPECT_EQ(d.rises(), J);
    EXPECT_NEAR(d.final_value(), static_cast<double>(J) - static_cast<double>(nth_prime(J)) / mu, 1e-9);
  }
  EXPECT_NEAR(default_mu(459), 7.087146, 5e-7);
}

TEST(Csv, DeterministicAndStable) {
  const auto s = Constellation::from_offsets({0, 2, 6});
  const auto a = to_csv(delta_phi(s, 3.0)).str();
  const auto b = to_csv(delta_phi(s, 3.0)).str();
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, "x,delta_phi\n0,0\n2,-0.6666666667\n2,0.3333333333\n6,-1\n6,0\n");
  EXPECT_EQ(histogram_csv(gap_histogram(Constellation::from_gaps({4, 2, 4}))).str(), "gap,count\n2,1\n4,2\n");
}

TEST(DeltaPhi, BalancedPairOfGaps) {
  const auto d = delta_phi(Constellation::from_gaps({2, 2}), 2.0);
  EXPECT_EQ(d.final_value(), 0.0);
}
