#include <gtest/gtest.h>

#include <numeric>

#include "narrow/evolution.hpp"

using namespace narrow;

namespace {

std::vector<std::uint64_t> gcd_survivors(std::uint64_t g, std::uint64_t span, std::uint64_t stage) {
  const std::uint64_t P = static_cast<std::uint64_t>(primorial(stage));
  std::vector<std::uint64_t> out;
  for (std::uint64_t t = 0; t <= span; ++t) {
    if (std::gcd(g + t, P) == 1) out.push_back(t);
  }
  return out;
}

}  // namespace

TEST(Survivors, MatchGcdOracle) {
  for (std::uint64_t stage : {2u, 3u, 5u, 7u, 11u, 13u}) {
    for (std::uint64_t g = 2; g < 400; ++g) {
      ASSERT_EQ(survivors_in_window(encode(g), 60, stage), gcd_survivors(g, 60, stage)) << g << " " << stage;
    }
  }
}

TEST(Survivors, RejectsDegenerateInput) {
  EXPECT_THROW(survivors_in_window(encode(5), 10, 1), DomainError);
  EXPECT_THROW(survivors_in_window(encode(1), 10, 3), DomainError);
}

TEST(DrivingTerm, TwinAtEleven) {
  const auto twin = Constellation::from_offsets({0, 2});
  const auto d = driving_term(encode(11), twin, 3);
  EXPECT_EQ(d.survivors, (std::vector<std::uint64_t>{0, 2}));
  EXPECT_TRUE(d.contains_target);
  EXPECT_TRUE(d.equals(twin));
  EXPECT_EQ(d.length, 1u);
}

TEST(DrivingTerm, FusesAsStagesAdvance) {
  // 101..113 at stage 2 keeps every odd number; by stage 7 only 101,103,107,109,113 remain.
  const auto s = Constellation::from_offsets({0, 2, 6, 8, 12});
  const auto at2 = driving_term(encode(101), s, 2);
  EXPECT_EQ(at2.length, 6u);
  EXPECT_FALSE(at2.equals(s));
  EXPECT_TRUE(at2.contains_target);
  const auto at7 = driving_term(encode(101), s, 7);
  EXPECT_TRUE(at7.equals(s));
}

TEST(TrackPrefix, Triplet) {
  const auto s = Constellation::from_offsets({0, 2, 6});
  TrackOptions opt;
  opt.start_stage = 2;
  const auto rows = track_prefix(s, 7, opt);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].count, 1);
  EXPECT_EQ(rows[1].count, 1);
  EXPECT_EQ(rows[2].count, 2);
  EXPECT_EQ(rows[3].count, 8);
  // Brute force: g mod 210 with g + h coprime to 210 for all offsets.
  std::size_t brute = 0;
  for (std::uint64_t g = 0; g < 210; ++g) {
    bool ok = true;
    for (std::uint64_t h : {0u, 2u, 6u}) ok = ok && std::gcd(g + h, std::uint64_t{210}) == 1;
    brute += ok;
  }
  EXPECT_EQ(brute, 8u);
  ASSERT_TRUE(rows[1].unique);
  EXPECT_EQ(decode(*rows[1].unique), 5);
  EXPECT_FALSE(rows[2].unique);
}

TEST(TrackPrefix, BudgetExceeded) {
  const auto s = Constellation::from_offsets({0, 2, 6});
  TrackOptions opt;
  opt.start_stage = 2;
  opt.budget = 5;
  try {
    track_prefix(s, 11, opt);
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.last_completed_stage(), 5u);
  }
}

TEST(TrackPrefix, RejectsInadmissible) {
  EXPECT_THROW(track_prefix(Constellation::from_offsets({0, 2, 4}), 7), DomainError);
}

TEST(FirstAppearance, SmallTuples) {
  EXPECT_EQ(first_appearance(Constellation::from_offsets({0, 2}), 100), 3u);
  EXPECT_EQ(first_appearance(Constellation::from_offsets({0, 2, 6}), 100), 3u);  // 5,7,11
  EXPECT_EQ(first_appearance(Constellation::from_offsets({0, 2, 4}), 100), std::nullopt);
}

TEST(FirstAppearance, AgreesWithScanOfSmallStarts) {
  // Brute force over starts: at each stage, does some g in [2, stage#) have its
  // window survivors exactly equal to the offsets?
  for (const auto& off : std::vector<std::vector<std::uint64_t>>{{0, 4}, {0, 6}, {0, 2, 6, 8}, {0, 4, 6, 10}}) {
    const auto s = Constellation::from_offsets(std::span<const std::uint64_t>(off));
    std::optional<std::uint64_t> expected;
    for (std::uint64_t stage : {2u, 3u, 5u, 7u, 11u, 13u}) {
      const std::uint64_t P = static_cast<std::uint64_t>(primorial(stage));
      for (std::uint64_t g = 2; g < P && !expected; ++g) {
        if (gcd_survivors(g, off.back(), stage) == off) expected = stage;
      }
      if (expected) break;
    }
    EXPECT_EQ(first_appearance(s, 13), expected) << off.back();
  }
}
