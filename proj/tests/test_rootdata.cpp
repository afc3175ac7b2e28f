#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "pargrade/rootdata.hpp"

namespace {

using namespace pargrade::rootdata;
using pargrade::oracle::torsion_primes;

std::set<long long> subset_torsion(const std::vector<Weight>& vectors, const std::vector<Weight>& extra,
                                   std::size_t rank, unsigned mask) {
  std::vector<std::vector<long long>> rows(extra.begin(), extra.end());
  for (std::size_t i = 0; i < vectors.size(); ++i)
    if (mask & (1u << i)) rows.push_back(vectors[i]);
  return torsion_primes(rows, rank);
}

// Brute force over every subset of roots and coroots.
PrimeReport brute_force_report(const RootDatum& rd) {
  PrimeReport r;
  r.bad = bad_primes(rd);
  const unsigned subsets = 1u << rd.roots.size();
  for (unsigned mask = 0; mask < subsets; ++mask) {
    for (long long p : subset_torsion(rd.coroots, {}, rd.rank, mask)) r.torsion.insert(p);
    for (long long p : subset_torsion(rd.roots, rd.character_relations, rd.rank, mask))
      r.pretty_good_excluded.insert(p);
  }
  r.pretty_good_excluded.insert(r.torsion.begin(), r.torsion.end());
  r.rather_good_excluded = r.bad;
  for (long long p : subset_torsion(rd.roots, rd.character_relations, rd.rank, subsets - 1))
    r.rather_good_excluded.insert(p);
  return r;
}

TEST(RootDatum, RootCounts) {
  EXPECT_EQ(standard_root_datum(GroupType::SL, 4).roots.size(), 12u);
  EXPECT_EQ(standard_root_datum(GroupType::Sp, 4).roots.size(), 8u);
  EXPECT_EQ(standard_root_datum(GroupType::Sp, 6).roots.size(), 18u);
  EXPECT_THROW(standard_root_datum(GroupType::Sp, 3), pargrade::Error);
}

TEST(RootDatum, PairingOfRootWithOwnCorootIsTwo) {
  for (auto [t, n] : {std::pair{GroupType::SL, 4}, std::pair{GroupType::Sp, 4}, std::pair{GroupType::Sp, 6}}) {
    const auto rd = standard_root_datum(t, n);
    for (std::size_t i = 0; i < rd.roots.size(); ++i) EXPECT_EQ(rd.pairing(rd.roots[i], rd.coroots[i]), 2);
  }
}

TEST(RootDatum, ReflectionsPermuteRoots) {
  for (auto [t, n] : {std::pair{GroupType::SL, 4}, std::pair{GroupType::SL, 5}, std::pair{GroupType::Sp, 4},
                      std::pair{GroupType::Sp, 6}}) {
    const auto rd = standard_root_datum(t, n);
    for (std::size_t a = 0; a < rd.roots.size(); ++a) {
      std::vector<std::size_t> images;
      for (const auto& beta : rd.roots) {
        const auto idx = rd.index_of_root(rd.reflect(a, beta));
        ASSERT_LT(idx, rd.roots.size());
        images.push_back(idx);
      }
      std::sort(images.begin(), images.end());
      EXPECT_TRUE(std::adjacent_find(images.begin(), images.end()) == images.end());
    }
  }
}

TEST(PrimeReport, Sp4) {
  const auto r = prime_report(standard_root_datum(GroupType::Sp, 4));
  const std::set<long long> two{2};
  EXPECT_EQ(r.bad, two);
  EXPECT_EQ(r.torsion, two);
  EXPECT_EQ(r.pretty_good_excluded, two);
  EXPECT_EQ(r.rather_good_excluded, two);
}

TEST(PrimeReport, SL4) {
  const auto r = prime_report(standard_root_datum(GroupType::SL, 4));
  EXPECT_TRUE(r.bad.empty());
  EXPECT_TRUE(r.torsion.empty());
  EXPECT_EQ(r.pretty_good_excluded, (std::set<long long>{2}));
  EXPECT_EQ(r.rather_good_excluded, (std::set<long long>{2}));
}

TEST(PrimeReport, TorsionOfSLIsEmpty) {
  for (int n = 2; n <= 5; ++n) EXPECT_TRUE(prime_report(standard_root_datum(GroupType::SL, n)).torsion.empty()) << n;
}

TEST(PrimeReport, CenterPrimesOfSL) {
  EXPECT_EQ(prime_report(standard_root_datum(GroupType::SL, 3)).rather_good_excluded, (std::set<long long>{3}));
  EXPECT_EQ(prime_report(standard_root_datum(GroupType::SL, 6)).rather_good_excluded, (std::set<long long>{2, 3}));
}

TEST(PrimeReport, MatchesBruteForceOverAllSubsets) {
  for (auto [t, n] : {std::pair{GroupType::SL, 2}, std::pair{GroupType::SL, 3}, std::pair{GroupType::SL, 4},
                      std::pair{GroupType::Sp, 4}}) {
    const auto rd = standard_root_datum(t, n);
    const auto lib = prime_report(rd);
    const auto ref = brute_force_report(rd);
    EXPECT_EQ(lib.torsion, ref.torsion) << rd.label;
    EXPECT_EQ(lib.pretty_good_excluded, ref.pretty_good_excluded) << rd.label;
    EXPECT_EQ(lib.rather_good_excluded, ref.rather_good_excluded) << rd.label;
  }
}

TEST(PrimeReport, InvariantUnderRootOrder) {
  std::mt19937 rng(11);
  for (auto [t, n] : {std::pair{GroupType::SL, 4}, std::pair{GroupType::Sp, 4}, std::pair{GroupType::Sp, 6}}) {
    const auto rd = standard_root_datum(t, n);
    const auto base = prime_report(rd);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<std::size_t> perm(rd.roots.size());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      RootDatum shuffled = rd;
      for (std::size_t i = 0; i < perm.size(); ++i) {
        shuffled.roots[i] = rd.roots[perm[i]];
        shuffled.coroots[i] = rd.coroots[perm[i]];
      }
      const auto r = prime_report(shuffled);
      EXPECT_EQ(r.bad, base.bad);
      EXPECT_EQ(r.torsion, base.torsion);
      EXPECT_EQ(r.pretty_good_excluded, base.pretty_good_excluded);
      EXPECT_EQ(r.rather_good_excluded, base.rather_good_excluded);
    }
  }
}

TEST(ClosedSubsets, A1HasTwoClosedSubsets) {
  const auto rd = standard_root_datum(GroupType::SL, 2);
  EXPECT_EQ(closed_subsystems(rd).size(), 2u);
}

TEST(GroupType, Parse) {
  EXPECT_EQ(parse_group_type("sl"), GroupType::SL);
  EXPECT_EQ(parse_group_type("sp"), GroupType::Sp);
  EXPECT_THROW(parse_group_type("so"), pargrade::Error);
}

}  // namespace
