#include <gtest/gtest.h>

#include "solv/corpus.hpp"
#include "solv/magma.hpp"

namespace solv {
namespace {

TEST(TableMagma, RejectsOutOfRangeEntries) {
  EXPECT_THROW(TableMagma(2, {0, 1, 1, 2}), std::invalid_argument);
  EXPECT_THROW(TableMagma(2, {0, 1, 1}), std::invalid_argument);
  EXPECT_THROW(TableMagma(0, {}), std::invalid_argument);
}

TEST(MagmaOracle, CyclicProduct) {
  const TableMagma z5 = generate({Family::kCyclic, {5}});
  QueryCounter counter;
  MagmaOracle oracle(z5, counter);
  EXPECT_EQ(oracle.product(2, 3), 0u);
}

TEST(MagmaOracle, RepeatedProductCountsTwice) {
  const TableMagma m = random_magma(7, 11);
  QueryCounter counter;
  MagmaOracle oracle(m, counter);
  const ElementId first = oracle.product(3, 5);
  const ElementId second = oracle.product(3, 5);
  EXPECT_EQ(first, second);
  EXPECT_EQ(counter.total(), 2u);
}

TEST(MagmaOracle, TranspositionSquaredIsIdentity) {
  const TableMagma s3 = generate({Family::kSymmetric, {3}});
  QueryCounter counter;
  MagmaOracle oracle(s3, counter);
  int transpositions = 0;
  for (ElementId g = 0; g < 6; ++g) {
    if (g != 0 && oracle.product(g, g) == 0) {
      ++transpositions;
    }
  }
  EXPECT_EQ(transpositions, 3);
}

TEST(MagmaOracle, OutOfRangeIsContractViolation) {
  const TableMagma z3 = generate({Family::kCyclic, {3}});
  QueryCounter counter;
  MagmaOracle oracle(z3, counter);
  EXPECT_THROW(oracle.product(3, 0), ContractViolation);
  EXPECT_EQ(counter.total(), 0u);
}

TEST(MagmaOracle, PhaseTallies) {
  const TableMagma z4 = generate({Family::kCyclic, {4}});
  QueryCounter counter;
  MagmaOracle oracle(z4, counter);
  oracle.product(1, 1);
  {
    PhaseScope scope(oracle, Phase::kPeriod);
    oracle.product(1, 2);
    oracle.product(2, 2);
  }
  oracle.product(0, 0);
  EXPECT_EQ(counter.phase(Phase::kPeriod), 2u);
  EXPECT_EQ(counter.phase(Phase::kUnlabeled), 2u);
  EXPECT_EQ(counter.total(), 4u);
}

TEST(PowRight, Examples) {
  const TableMagma z5 = generate({Family::kCyclic, {5}});
  QueryCounter counter;
  MagmaOracle oracle(z5, counter);
  EXPECT_EQ(pow_right(oracle, 1, 3), 3u);
  for (ElementId g = 0; g < 5; ++g) EXPECT_EQ(pow_right(oracle, g, 1), g);
  const PowerAnchor anchor{2, 4};
  EXPECT_EQ(pow_right(oracle, 3, 0, anchor), pow_right(oracle, 2, 4));
  EXPECT_THROW(pow_right(oracle, 3, 0), ContractViolation);
}

TEST(PowRight, FoldMatchesSquaringAndCost) {
  const TableMagma d6 = generate({Family::kDihedral, {6}});
  QueryCounter counter;
  MagmaOracle oracle(d6, counter);
  for (ElementId g = 0; g < d6.size(); ++g) {
    for (std::uint64_t r = 1; r <= 40; ++r) {
      const std::uint64_t before = counter.total();
      const ElementId fast = pow_right(oracle, g, r);
      EXPECT_EQ(counter.total() - before, pow_right_cost(r));
      const std::uint64_t mid = counter.total();
      EXPECT_EQ(fast, pow_right_fold(oracle, g, r));
      EXPECT_EQ(counter.total() - mid, r - 1);
    }
  }
}

TEST(PowRight, RightAssociatedOnNonAssociativeTable) {
  // Only exponents whose square-and-multiply shape is literally right
  // associated agree on a non-associative table.
  const TableMagma m = random_magma(9, 5);
  QueryCounter counter;
  MagmaOracle oracle(m, counter);
  for (ElementId g = 0; g < 9; ++g) {
    for (std::uint64_t r : {1u, 2u, 3u}) {
      EXPECT_EQ(pow_right(oracle, g, r), pow_right_fold(oracle, g, r));
    }
    EXPECT_EQ(pow_right_fold(oracle, g, 3), m.at(g, m.at(g, g)));
  }
}

TEST(SampleUniform, Singleton) {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_uniform(1, rng), 0u);
}

TEST(SampleUniform, SeededSequenceIsReproducible) {
  Rng a(42), b(42);
  for (int i = 0; i < 64; ++i) EXPECT_EQ(sample_uniform(16, a), sample_uniform(16, b));
}

TEST(SampleUniform, ChiSquare) {
  constexpr std::size_t n = 12;
  constexpr int draws = 100000;
  Rng rng(2024);
  std::vector<int> hits(n, 0);
  for (int i = 0; i < draws; ++i) ++hits[sample_uniform(n, rng)];
  const double expected = static_cast<double>(draws) / n;
  double chi2 = 0;
  for (int h : hits) chi2 += (h - expected) * (h - expected) / expected;
  EXPECT_LT(chi2, 24.725);  // 99th percentile, 11 degrees of freedom
}

TEST(DeriveSeed, DistinctPerIndex) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(9, 3), derive_seed(9, 3));
}

}  // namespace
}  // namespace solv
