#include <random>

#include <gtest/gtest.h>

#include "dessin/perm.hpp"
#include "oracles.hpp"

using namespace dessin;

namespace {

const Permutation kSigmaP9 = Permutation::parse("(176)(23)(485)(9)", 9);
const Permutation kAlphaP9 = Permutation::parse("(12)(34)(567)(89)", 9);
const Permutation kPhiP9 = Permutation::parse("(135)(7)(26894)", 9);

Permutation random_permutation(int n, std::mt19937_64& rng) {
  auto raw = oracle::random_perm(n, rng);
  std::vector<Label> img;
  for (int x : raw) img.push_back(x + 1);
  return Permutation::from_images(img);
}

}  // namespace

TEST(Permutation, IdentityMapsEveryLabelToItself) {
  const Permutation id = identity(3);
  EXPECT_EQ(id(1), 1);
  EXPECT_EQ(id(2), 2);
  EXPECT_EQ(id(3), 3);
  EXPECT_TRUE(identity(1).is_identity());
  EXPECT_EQ(identity(1).size(), 1);
}

TEST(Permutation, ZeroDegreeRejected) {
  try {
    (void)identity(0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_size);
  }
}

TEST(Permutation, ComposeIsLeftToRight) {
  const Permutation p = Permutation::parse("(1 2)", 3);
  const Permutation q = Permutation::parse("(2 3)", 3);
  // x -> q(p(x)): 1 -> 2 -> 3
  EXPECT_EQ(compose(p, q)(1), 3);
  EXPECT_EQ(compose(p, q), Permutation::parse("(1 3 2)", 3));
}

TEST(Permutation, Planar9TripleMultipliesToIdentity) {
  EXPECT_TRUE(compose(compose(kSigmaP9, kAlphaP9), kPhiP9).is_identity());
  EXPECT_EQ(inverse(compose(kSigmaP9, kAlphaP9)), kPhiP9);
}

TEST(Permutation, ComposeWithIdentityAndInvolution) {
  std::mt19937_64 rng(11);
  const Permutation p = random_permutation(9, rng);
  EXPECT_EQ(compose(identity(9), p), p);
  EXPECT_EQ(compose(p, identity(9)), p);
  const Permutation t = Permutation::parse("(12)", 2);
  EXPECT_EQ(compose(t, t), identity(2));
}

TEST(Permutation, ComposeSizeMismatch) {
  try {
    (void)compose(identity(2), identity(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::degree_mismatch);
  }
}

TEST(Permutation, Inverse) {
  EXPECT_EQ(inverse(Permutation::parse("(123)", 3)), Permutation::parse("(132)", 3));
  EXPECT_EQ(inverse(identity(5)), identity(5));
}

TEST(Permutation, CycleDecompositionCanonicalOrder) {
  const auto cd = cycle_decomposition(kSigmaP9);
  const std::vector<std::vector<Label>> expected{{1, 7, 6}, {2, 3}, {4, 8, 5}, {9}};
  EXPECT_EQ(cd.cycles, expected);
  EXPECT_EQ(cycle_decomposition(identity(4)).count(), 4u);
  EXPECT_EQ(cycle_decomposition(kPhiP9).cycle_type(), (std::vector<int>{1, 3, 5}));
}

TEST(Permutation, TextFormRoundTrip) {
  EXPECT_EQ(kSigmaP9.to_string(), "(1 7 6)(2 3)(4 8 5)(9)");
  EXPECT_EQ(Permutation::parse(kSigmaP9.to_string(), 9), kSigmaP9);
  const Permutation big = Permutation::parse("(1 10 12)(2 11)", 12);
  EXPECT_EQ(big(10), 12);
  EXPECT_EQ(big.to_string(), "(1 10 12)(2 11)(3)(4)(5)(6)(7)(8)(9)");
}

TEST(Permutation, ParseErrors) {
  EXPECT_THROW((void)Permutation::parse("(1 2", 3), Error);
  EXPECT_THROW((void)Permutation::parse("(1 2)(2 3)", 3), Error);
  EXPECT_THROW((void)Permutation::parse("(1 4)", 3), Error);
  EXPECT_THROW((void)Permutation::parse("(a b)", 3), Error);
  EXPECT_THROW((void)Permutation::from_images({1, 1, 2}), Error);
}

TEST(Permutation, Transitivity) {
  EXPECT_TRUE(is_transitive({kSigmaP9, kAlphaP9}, 9));
  EXPECT_FALSE(is_transitive({identity(2)}, 2));
  EXPECT_FALSE(is_transitive(std::span<const Permutation>{}, 2));
  EXPECT_TRUE(is_transitive(std::span<const Permutation>{}, 1));
  for (int n = 1; n <= 8; ++n) {
    std::vector<std::vector<Label>> c(1);
    for (int k = 1; k <= n; ++k) c[0].push_back(k);
    EXPECT_TRUE(is_transitive({Permutation::from_cycles(n, c)}, n));
  }
  EXPECT_THROW((void)is_transitive({identity(3)}, 2), Error);
}

TEST(Permutation, GroupOrder) {
  EXPECT_EQ(group_order({Permutation::parse("(12)", 2)}, 2, 100), 2u);
  for (int n = 1; n <= 7; ++n) {
    std::vector<std::vector<Label>> c(1);
    for (int k = 1; k <= n; ++k) c[0].push_back(k);
    EXPECT_EQ(group_order({Permutation::from_cycles(n, c)}, n, 1000), static_cast<std::size_t>(n));
  }
  EXPECT_EQ(group_order({Permutation::parse("(123)", 3), identity(3)}, 3, 100), 3u);
  // Oracle (independent closure in Python): the group of the nine-edge planar dessin is all of S_9.
  EXPECT_EQ(group_order({kSigmaP9, kAlphaP9}, 9, 1'000'000), 362880u);
  EXPECT_FALSE(group_order({kSigmaP9, kAlphaP9}, 9, 1000).has_value());
  EXPECT_THROW((void)group_order({identity(2)}, 2, 0), Error);
}

// Property checks over random permutations.

TEST(PermutationProperties, InverseIsTwoSided) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const Permutation p = random_permutation(n, rng);
    EXPECT_TRUE(compose(p, inverse(p)).is_identity());
    EXPECT_TRUE(compose(inverse(p), p).is_identity());
  }
}

TEST(PermutationProperties, ComposeIsAssociative) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const Permutation a = random_permutation(n, rng), b = random_permutation(n, rng), c = random_permutation(n, rng);
    EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
  }
}

TEST(PermutationProperties, CyclesRoundTripAndPartition) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 15);
    const Permutation p = random_permutation(n, rng);
    const auto cd = p.cycles();
    EXPECT_EQ(Permutation::from_cycles(n, cd.cycles), p);
    std::vector<int> all;
    for (const auto& c : cd.cycles) {
      EXPECT_EQ(c.front(), *std::min_element(c.begin(), c.end()));
      all.insert(all.end(), c.begin(), c.end());
    }
    std::sort(all.begin(), all.end());
    for (int k = 0; k < n; ++k) EXPECT_EQ(all[static_cast<std::size_t>(k)], k + 1);
    for (std::size_t i = 1; i < cd.cycles.size(); ++i) EXPECT_LT(cd.cycles[i - 1].front(), cd.cycles[i].front());
  }
}
