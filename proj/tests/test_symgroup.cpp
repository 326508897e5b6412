#include <map>
#include <random>
#include <set>

#include "ellqkz/symgroup.hpp"
#include "support.hpp"

using namespace ellqkz;

namespace {

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

Permutation random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 1);
  std::shuffle(im.begin(), im.end(), rng);
  return Permutation(im);
}

// Brute-force parabolic subgroup: closure of the generators s_i, i in I.
std::set<Permutation> parabolic_subgroup(const ParabolicIndex& pi) {
  std::set<Permutation> group{Permutation::identity(pi.n)};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& g : std::set<Permutation>(group))
      for (int i : pi.I) grew |= group.insert(g * Permutation::simple(pi.n, i)).second;
  }
  return group;
}

}  // namespace

TEST(Permutation, RejectsNonPermutations) {
  EXPECT_THROW(Permutation({1, 1, 2}), PreconditionError);
  EXPECT_THROW(Permutation({0, 1}), PreconditionError);
  EXPECT_THROW(Permutation::simple(3, 3), PreconditionError);
}

TEST(Permutation, CompositionIsRightToLeft) {
  // (u v)(k) = u(v(k))
  const Permutation u({2, 3, 1});
  const Permutation v({1, 3, 2});
  const Permutation uv = u * v;
  for (int k = 1; k <= 3; ++k) EXPECT_EQ(uv(k), u(v(k)));
}

TEST(Permutation, InverseAndIdentity) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const auto w = random_permutation(5, rng);
    EXPECT_TRUE((w * w.inverse()).is_identity());
    EXPECT_TRUE((w.inverse() * w).is_identity());
  }
}

TEST(Length, LongestElement) {
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(length(Permutation::longest(n)), n * (n - 1) / 2);
}

TEST(ReducedWord, SpellsTheElementWithMinimalLength) {
  std::mt19937_64 rng(2);
  for (int n = 2; n <= 7; ++n)
    for (int t = 0; t < 30; ++t) {
      const auto w = random_permutation(n, rng);
      const Word word = reduced_word(w);
      EXPECT_EQ(word_product(n, word), w);
      EXPECT_EQ(static_cast<int>(word.size()), length(w));
    }
}

TEST(ReducedWord, AllReducedWordsOfLongestElement) {
  // Counts of reduced words of w0: 1, 1, 2, 16, 768 (standard Young tableaux of staircase shape).
  const std::map<int, std::size_t> expected{{1, 1}, {2, 1}, {3, 2}, {4, 16}, {5, 768}};
  for (const auto& [n, count] : expected) {
    const auto words = all_reduced_words(Permutation::longest(n));
    EXPECT_EQ(words.size(), count) << n;
    for (const auto& w : words) EXPECT_EQ(word_product(n, w), Permutation::longest(n));
  }
}

TEST(AllPermutations, LexicographicAndComplete) {
  for (int n = 1; n <= 6; ++n) {
    const auto perms = all_permutations(n);
    EXPECT_EQ(static_cast<long>(perms.size()), factorial(n));
    EXPECT_TRUE(std::is_sorted(perms.begin(), perms.end()));
  }
}

TEST(Length, InversionCountMatchesWordLengthSum) {
  // sum over S_n of q^{l(w)} at q = 1 is n!, and sum of lengths is n! n(n-1)/4.
  for (int n = 2; n <= 6; ++n) {
    long total = 0;
    for (const auto& w : all_permutations(n)) total += length(w);
    EXPECT_EQ(total * 4, factorial(n) * n * (n - 1));
  }
}

TEST(MinCosetReps, AgreeWithBruteForceCosets) {
  // Every coset w S_{n,I} contains exactly one minimal-length element.
  for (int n = 2; n <= 5; ++n)
    for (int mask = 0; mask < (1 << (n - 1)); ++mask) {
      std::set<int> I;
      for (int i = 1; i < n; ++i)
        if (mask & (1 << (i - 1))) I.insert(i);
      const ParabolicIndex pi(n, I);
      const auto sub = parabolic_subgroup(pi);
      const auto reps = min_coset_reps(pi);
      EXPECT_EQ(static_cast<long>(reps.size() * sub.size()), factorial(n));
      for (const auto& w : reps) {
        for (const auto& u : sub) {
          if (u.is_identity()) continue;
          EXPECT_GT(length(w * u), length(w));
        }
      }
    }
}

TEST(BlockLabels, CountAndDimensionIdentity) {
  for (int n = 2; n <= 6; ++n) {
    const auto labels = block_labels(n);
    EXPECT_EQ(static_cast<int>(labels.size()), (n + 1) * (n + 2) / 2);
    int total = 0;
    for (const auto& r : labels) {
      const int reps = static_cast<int>(min_coset_reps(block_parabolic(r)).size());
      EXPECT_EQ(reps, static_cast<int>(multi_indices(r).size())) << r.to_string();
      total += reps;
    }
    EXPECT_EQ(total, ipow(3, n));
  }
}

TEST(BlockLabels, ParabolicExamples) {
  EXPECT_TRUE(block_parabolic({1, 1, 1}).I.empty());
  EXPECT_EQ(block_parabolic({0, 2, 1}).I, std::set<int>{2});
  EXPECT_EQ(block_parabolic({3, 0, 0}).I, (std::set<int>{1, 2}));
}

TEST(WAlpha, IsTheCosetRepresentativeMappingTheBaseIndex) {
  for (int n = 2; n <= 5; ++n)
    for (const auto& r : block_labels(n)) {
      const auto pi = block_parabolic(r);
      const auto base = block_base_index(r);
      std::set<MultiIndex> seen;
      for (const auto& alpha : multi_indices(r)) {
        const Permutation w = w_alpha(alpha);
        EXPECT_TRUE(is_min_coset_rep(w, pi));
        EXPECT_EQ(act(w, base), alpha);
        seen.insert(alpha);
      }
      EXPECT_EQ(seen.size(), multi_indices(r).size());
    }
}

TEST(Eta, VariantsAgreeOffTheFirstBlock) {
  // The two counts differ only through j = r3, so they agree when r3 = 0.
  for (int n = 2; n <= 5; ++n)
    for (const auto& r : block_labels(n)) {
      if (r.r3 != 0) continue;
      for (const auto& w : min_coset_reps(block_parabolic(r)))
        EXPECT_EQ(eta(w, r), eta(w, r, EtaVariant::AsPrinted));
    }
}

TEST(Eta, PrintedVariantVanishesWhenR3IsOne) {
  const BlockLabel r{1, 1, 1};
  for (const auto& w : min_coset_reps(block_parabolic(r))) EXPECT_EQ(eta(w, r, EtaVariant::AsPrinted), 0);
  EXPECT_EQ(eta(Permutation({2, 3, 1}), r), 1);
}

TEST(Eta, RejectsNonRepresentatives) {
  EXPECT_THROW(eta(Permutation({1, 3, 2}), BlockLabel{0, 2, 1}), PreconditionError);
}

TEST(SigmaConjugation, DefiningProperty) {
  for (int n = 2; n <= 5; ++n)
    for (const auto& r : block_labels(n)) {
      const auto pi = block_parabolic(r);
      for (const auto& sigma : min_coset_reps(pi))
        for (int i = 1; i < n; ++i) {
          const Permutation s = Permutation::simple(n, n - i);
          if (is_min_coset_rep(s * sigma, pi)) {
            EXPECT_THROW(sigma_conjugation_index(sigma, i, pi), PreconditionError);
            continue;
          }
          const int k = sigma_conjugation_index(sigma, i, pi);
          EXPECT_TRUE(pi.contains(k));
          EXPECT_EQ(s * sigma, sigma * Permutation::simple(n, k));
        }
    }
}

TEST(Lemma53, PredicatesMatchGroupComputation) {
  for (int n = 2; n <= 5; ++n)
    for (const auto& r : block_labels(n)) {
      const auto pi = block_parabolic(r);
      for (const auto& alpha : multi_indices(r)) {
        const Permutation w = w_alpha(alpha);
        for (int i = 1; i < n; ++i) {
          const auto pred = lemma53_predicates(alpha, i);
          const Permutation moved = Permutation::simple(n, n - i) * w;
          EXPECT_EQ(pred.in_coset, is_min_coset_rep(moved, pi));
          if (pred.in_coset) {
            EXPECT_EQ(*pred.length_up, length(moved) > length(w));
          } else {
            EXPECT_EQ(*pred.idx_in_first_block, sigma_conjugation_index(w, i, pi) < r.r3);
          }
        }
      }
    }
}

TEST(ActOnTuple, IsALeftAction) {
  std::mt19937_64 rng(3);
  const std::vector<int> v{10, 20, 30, 40};
  for (int t = 0; t < 30; ++t) {
    const auto u = random_permutation(4, rng);
    const auto w = random_permutation(4, rng);
    EXPECT_EQ(act_on_tuple(u * w, v), act_on_tuple(u, act_on_tuple(w, v)));
  }
}
