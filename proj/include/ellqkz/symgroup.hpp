#pragma once

// Combinatorics of the symmetric group S_n used by the principal series
// decomposition: lengths, reduced words, minimal coset representatives of
// parabolic subgroups, the coset representative w_alpha of a multi-index and
// the sign statistic eta.
//
// Conventions: permutations are stored in one-line notation with 1-based
// images; composition is (uv)(x) = u(v(x)); s_i swaps i and i+1. A word
// (i_1, ..., i_r) denotes the product s_{i_1} s_{i_2} ... s_{i_r}. S_n acts on
// tuples by (w v)_k = v_{w^{-1}(k)}.

#include <algorithm>
#include <compare>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"

namespace ellqkz {

using Word = std::vector<int>;

class Permutation {
public:
  Permutation() = default;

  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size() + 1, false);
    for (int v : images_) {
      if (v < 1 || v > size() || seen[v]) {
        throw PreconditionError("not a permutation in one-line notation");
      }
      seen[v] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 1);
    return Permutation(std::move(im));
  }

  static Permutation simple(int n, int i) {
    if (i < 1 || i >= n) throw PreconditionError("s_i needs 1 <= i < n");
    Permutation s = identity(n);
    std::swap(s.images_[i - 1], s.images_[i]);
    return s;
  }

  static Permutation longest(int n) {
    std::vector<int> im(n);
    for (int k = 0; k < n; ++k) im[k] = n - k;
    return Permutation(std::move(im));
  }

  int size() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_.at(i - 1); }
  const std::vector<int>& images() const noexcept { return images_; }

  Permutation inverse() const {
    std::vector<int> inv(images_.size());
    for (int k = 0; k < size(); ++k) inv[images_[k] - 1] = k + 1;
    return Permutation(std::move(inv));
  }

  bool is_identity() const {
    for (int k = 0; k < size(); ++k)
      if (images_[k] != k + 1) return false;
    return true;
  }

  friend Permutation operator*(const Permutation& u, const Permutation& v) {
    if (u.size() != v.size()) throw PreconditionError("permutation sizes differ");
    std::vector<int> im(v.size());
    for (int k = 0; k < v.size(); ++k) im[k] = u.images_[v.images_[k] - 1];
    return Permutation(std::move(im));
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

  std::string to_string() const {
    std::string s = "(";
    for (int k = 0; k < size(); ++k) {
      if (k) s += ",";
      s += std::to_string(images_[k]);
    }
    return s + ")";
  }

private:
  std::vector<int> images_;
};

inline Permutation word_product(int n, const Word& word) {
  Permutation w = Permutation::identity(n);
  for (int i : word) w = w * Permutation::simple(n, i);
  return w;
}

/// Number of inversions #{(i,j) : i < j, w(i) > w(j)}.
inline int length(const Permutation& w) {
  int count = 0;
  for (int i = 1; i <= w.size(); ++i)
    for (int j = i + 1; j <= w.size(); ++j)
      if (w(i) > w(j)) ++count;
  return count;
}

/// Lexicographically first reduced word: repeatedly peel off the smallest
/// left descent s_i (l(s_i w) < l(w), i.e. w^{-1}(i) > w^{-1}(i+1)).
inline Word reduced_word(const Permutation& w) {
  Word word;
  Permutation rest = w;
  const int n = w.size();
  while (!rest.is_identity()) {
    const Permutation inv = rest.inverse();
    int i = 1;
    while (inv(i) < inv(i + 1)) ++i;
    word.push_back(i);
    rest = Permutation::simple(n, i) * rest;
  }
  return word;
}

/// Every reduced word of w, in lexicographic order.
inline std::vector<Word> all_reduced_words(const Permutation& w) {
  if (w.is_identity()) return {Word{}};
  std::vector<Word> out;
  const int n = w.size();
  const Permutation inv = w.inverse();
  for (int i = 1; i < n; ++i) {
    if (inv(i) < inv(i + 1)) continue;
    for (Word tail : all_reduced_words(Permutation::simple(n, i) * w)) {
      tail.insert(tail.begin(), i);
      out.push_back(std::move(tail));
    }
  }
  return out;
}

/// All of S_n in lexicographic one-line order.
inline std::vector<Permutation> all_permutations(int n) {
  std::vector<int> im(n);
  std::iota(im.begin(), im.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(im);
  } while (std::next_permutation(im.begin(), im.end()));
  return out;
}

/// A subset I of {1, ..., n-1}; S_{n,I} is generated by the s_i, i in I.
struct ParabolicIndex {
  int n = 2;
  std::set<int> I;

  ParabolicIndex() = default;
  ParabolicIndex(int n_, std::set<int> I_) : n(n_), I(std::move(I_)) {
    if (n < 2) throw PreconditionError("parabolic index needs n >= 2");
    for (int i : I)
      if (i < 1 || i >= n) throw PreconditionError("I must be a subset of {1..n-1}");
  }

  static ParabolicIndex full(int n) {
    std::set<int> all;
    for (int i = 1; i < n; ++i) all.insert(i);
    return {n, all};
  }

  bool contains(int i) const { return I.count(i) != 0; }
  friend bool operator==(const ParabolicIndex&, const ParabolicIndex&) = default;
};

/// w is a minimal length representative of w S_{n,I}: l(w s_i) = l(w) + 1 for i in I.
inline bool is_min_coset_rep(const Permutation& w, const ParabolicIndex& pi) {
  for (int i : pi.I)
    if (w(i) > w(i + 1)) return false;
  return true;
}

/// S_n^I in lexicographic one-line order.
inline std::vector<Permutation> min_coset_reps(const ParabolicIndex& pi) {
  std::vector<Permutation> out;
  for (auto& w : all_permutations(pi.n))
    if (is_min_coset_rep(w, pi)) out.push_back(std::move(w));
  return out;
}

template <class T>
std::vector<T> act_on_tuple(const Permutation& w, const std::vector<T>& v) {
  std::vector<T> out(v.size());
  const Permutation inv = w.inverse();
  for (int k = 1; k <= w.size(); ++k) out[k - 1] = v[inv(k) - 1];
  return out;
}

/// Content (r1, r2, r3) of a block: r_j entries equal to j, r1 + r2 + r3 = n.
struct BlockLabel {
  int r1 = 0;
  int r2 = 0;
  int r3 = 0;

  int n() const noexcept { return r1 + r2 + r3; }
  int operator[](int j) const { return j == 1 ? r1 : j == 2 ? r2 : r3; }
  friend auto operator<=>(const BlockLabel&, const BlockLabel&) = default;

  std::string to_string() const {
    return "(" + std::to_string(r1) + "," + std::to_string(r2) + "," + std::to_string(r3) + ")";
  }
};

/// J_n, ordered lexicographically in (r1, r2, r3) descending.
inline std::vector<BlockLabel> block_labels(int n) {
  std::vector<BlockLabel> out;
  for (int r1 = n; r1 >= 0; --r1)
    for (int r2 = n - r1; r2 >= 0; --r2) out.push_back({r1, r2, n - r1 - r2});
  return out;
}

/// An n-tuple with entries in {1, 2, 3}.
class MultiIndex {
public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries) : alpha_(std::move(entries)) {
    for (int a : alpha_)
      if (a < 1 || a > 3) throw PreconditionError("multi-index entries must lie in {1,2,3}");
  }

  int size() const noexcept { return static_cast<int>(alpha_.size()); }
  int operator[](int k) const { return alpha_.at(k - 1); }
  const std::vector<int>& entries() const noexcept { return alpha_; }

  BlockLabel content() const {
    BlockLabel r;
    for (int a : alpha_) (a == 1 ? r.r1 : a == 2 ? r.r2 : r.r3)++;
    return r;
  }

  /// Increasing positions k with alpha_k = j.
  std::vector<int> occurrences(int j) const {
    std::vector<int> pos;
    for (int k = 1; k <= size(); ++k)
      if (alpha_[k - 1] == j) pos.push_back(k);
    return pos;
  }

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

  std::string to_string() const {
    std::string s = "(";
    for (int k = 0; k < size(); ++k) s += (k ? "," : "") + std::to_string(alpha_[k]);
    return s + ")";
  }

private:
  std::vector<int> alpha_;
};

/// alpha^(r) = (3,...,3, 2,...,2, 1,...,1).
inline MultiIndex block_base_index(const BlockLabel& r) {
  std::vector<int> a;
  a.insert(a.end(), r.r3, 3);
  a.insert(a.end(), r.r2, 2);
  a.insert(a.end(), r.r1, 1);
  return MultiIndex(std::move(a));
}

/// K_n[r] in lexicographic order.
inline std::vector<MultiIndex> multi_indices(const BlockLabel& r) {
  std::vector<int> a;
  a.insert(a.end(), r.r1, 1);
  a.insert(a.end(), r.r2, 2);
  a.insert(a.end(), r.r3, 3);
  std::vector<MultiIndex> out;
  do {
    out.emplace_back(a);
  } while (std::next_permutation(a.begin(), a.end()));
  return out;
}

/// Stabiliser index set I^(r) = {1..n-1} \ {r3, r2 + r3}.
inline ParabolicIndex block_parabolic(const BlockLabel& r) {
  const int n = r.n();
  std::set<int> I;
  for (int i = 1; i < n; ++i)
    if (i != r.r3 && i != r.r2 + r.r3) I.insert(i);
  return {n, I};
}

inline MultiIndex act(const Permutation& w, const MultiIndex& alpha) {
  return MultiIndex(act_on_tuple(w, alpha.entries()));
}

/// The minimal coset representative with w_alpha alpha^(r) = alpha: it sends
/// 1..r3 to the 3-positions, then the 2-positions, then the 1-positions.
inline Permutation w_alpha(const MultiIndex& alpha) {
  std::vector<int> im;
  for (int j : {3, 2, 1}) {
    const auto pos = alpha.occurrences(j);
    im.insert(im.end(), pos.begin(), pos.end());
  }
  return Permutation(std::move(im));
}

enum class EtaVariant {
  ProofConsistent,  ///< pairs 1 <= j <= r3 < i <= n
  AsPrinted,        ///< pairs 1 <= j <  r3 < i <= n
};

/// eta(w) = #{(i, j) : j in the 3-block, i > r3, w(i) < w(j)}.
inline int eta(const Permutation& w, const BlockLabel& r,
               EtaVariant variant = EtaVariant::ProofConsistent) {
  if (w.size() != r.n() || !is_min_coset_rep(w, block_parabolic(r))) {
    throw PreconditionError("eta: w must lie in S_n^{I^(r)}");
  }
  const int j_max = variant == EtaVariant::ProofConsistent ? r.r3 : r.r3 - 1;
  int count = 0;
  for (int j = 1; j <= j_max; ++j)
    for (int i = r.r3 + 1; i <= r.n(); ++i)
      if (w(i) < w(j)) ++count;
  return count;
}

/// The index i_sigma in I with s_{n-i} sigma = sigma s_{i_sigma}. Requires
/// sigma in S_n^I and s_{n-i} sigma not in S_n^I.
inline int sigma_conjugation_index(const Permutation& sigma, int i, const ParabolicIndex& pi) {
  const int n = pi.n;
  if (i < 1 || i >= n) throw PreconditionError("sigma_conjugation_index: need 1 <= i < n");
  if (!is_min_coset_rep(sigma, pi)) throw PreconditionError("sigma must lie in S_n^I");
  const Permutation s = Permutation::simple(n, n - i);
  if (is_min_coset_rep(s * sigma, pi)) {
    throw PreconditionError("s_{n-i} sigma lies in S_n^I; no conjugation index");
  }
  // sigma^{-1} s_{n-i} sigma is the transposition of sigma^{-1}(n-i), sigma^{-1}(n-i+1).
  const Permutation inv = sigma.inverse();
  const int a = inv(n - i);
  const int b = inv(n - i + 1);
  const int k = std::min(a, b);
  if (std::abs(a - b) != 1 || !pi.contains(k)) {
    throw PreconditionError("sigma_conjugation_index: conjugate is not a simple reflection in I");
  }
  return k;
}

struct Lemma53Predicates {
  bool in_coset = false;                   ///< s_{n-i} w_alpha in S_n^{I^(r)}
  std::optional<bool> length_up;           ///< set when in_coset
  std::optional<bool> idx_in_first_block;  ///< set when !in_coset: i_{w_alpha} < r3
};

inline Lemma53Predicates lemma53_predicates(const MultiIndex& alpha, int i) {
  const int n = alpha.size();
  if (i < 1 || i >= n) throw PreconditionError("lemma53_predicates: need 1 <= i < n");
  const int left = alpha[n - i];
  const int right = alpha[n + 1 - i];
  Lemma53Predicates out;
  out.in_coset = left != right;
  if (out.in_coset) {
    out.length_up = left > right;
  } else {
    out.idx_in_first_block = left == 3;
  }
  return out;
}

}  // namespace ellqkz
