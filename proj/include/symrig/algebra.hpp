#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "symrig/linalg.hpp"
#include "symrig/matrix.hpp"

namespace symrig {

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Bijection between strictly increasing k-subsets of {0,...,n-1} and positions
/// 0..C(n,k)-1 in lexicographic order. Labels are 1-based when printed.
class LexIndex {
 public:
  LexIndex(std::size_t n, std::size_t k) : n_(n), k_(k) {
    if (k > n) throw InputError("grade exceeds ambient dimension");
    std::vector<int> t(k);
    for (std::size_t i = 0; i < k; ++i) t[i] = static_cast<int>(i);
    while (true) {
      position_.emplace(t, tuples_.size());
      tuples_.push_back(t);
      // next combination in lexicographic order
      std::size_t i = k;
      while (i > 0 && t[i - 1] == static_cast<int>(n - k + i - 1)) --i;
      if (i == 0) break;
      ++t[i - 1];
      for (std::size_t j = i; j < k; ++j) t[j] = t[j - 1] + 1;
    }
  }

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t size() const { return tuples_.size(); }
  const std::vector<int>& tuple(std::size_t pos) const { return tuples_.at(pos); }

  std::size_t position(const std::vector<int>& tuple) const {
    auto it = position_.find(tuple);
    if (it == position_.end()) throw InputError("index tuple is not strictly increasing or out of range");
    return it->second;
  }

  /// Complement of the tuple at pos, increasing.
  std::vector<int> complement(std::size_t pos) const {
    std::vector<bool> used(n_, false);
    for (int i : tuples_.at(pos)) used[i] = true;
    std::vector<int> out;
    for (std::size_t i = 0; i < n_; ++i)
      if (!used[i]) out.push_back(static_cast<int>(i));
    return out;
  }

  /// "(1,2)"-style label.
  std::string label(std::size_t pos) const {
    std::string s = "(";
    const auto& t = tuples_.at(pos);
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i] + 1);
    return s + ")";
  }

 private:
  std::size_t n_, k_;
  std::vector<std::vector<int>> tuples_;
  std::map<std::vector<int>, std::size_t> position_;
};

/// Sign of the permutation taking the concatenation (I, J) to (0, 1, ..., n-1).
inline int shuffle_sign(const std::vector<int>& first, const std::vector<int>& second) {
  std::vector<int> seq(first);
  seq.insert(seq.end(), second.begin(), second.end());
  int inversions = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

/// Element of the k-th exterior power of R^{d+1}, lexicographically indexed.
template <class Scalar>
struct Extensor {
  std::size_t d = 0;
  std::size_t grade = 0;
  std::vector<Scalar> coords;

  Extensor() = default;
  Extensor(std::size_t dim, std::size_t k, std::vector<Scalar> c) : d(dim), grade(k), coords(std::move(c)) {
    if (coords.size() != binomial(d + 1, grade)) throw InputError("extensor coordinate count does not match C(d+1,k)");
  }

  static Extensor zero(std::size_t dim, std::size_t k) {
    return Extensor(dim, k, std::vector<Scalar>(binomial(dim + 1, k), ScalarTraits<Scalar>::zero()));
  }

  bool is_zero() const {
    for (const auto& x : coords)
      if (!ScalarTraits<Scalar>::is_zero(x)) return false;
    return true;
  }

  Extensor operator-() const {
    Extensor out(*this);
    for (auto& x : out.coords) x = -x;
    return out;
  }

  friend bool operator==(const Extensor& a, const Extensor& b) {
    return a.d == b.d && a.grade == b.grade && a.coords == b.coords;
  }
};

using RationalExtensor = Extensor<Rational>;

/// p_1 ^ ... ^ p_k: coordinate I is the k x k minor on rows I of the stacked columns.
inline RationalExtensor wedge(const std::vector<RationalVector>& vectors, std::size_t d) {
  const std::size_t k = vectors.size();
  if (k < 1 || k > d + 1) throw InputError("wedge needs between 1 and d+1 vectors");
  for (const auto& v : vectors)
    if (v.size() != d + 1) throw InputError("wedge input vector has wrong length");
  LexIndex index(d + 1, k);
  std::vector<Rational> coords(index.size());
  RationalMatrix minor(k, k);
  for (std::size_t pos = 0; pos < index.size(); ++pos) {
    const auto& rows = index.tuple(pos);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) minor(r, c) = vectors[c][rows[r]];
    coords[pos] = determinant(minor);
  }
  return RationalExtensor(d, k, std::move(coords));
}

inline RationalExtensor wedge(const RationalVector& p, const RationalVector& q, std::size_t d) {
  return wedge(std::vector<RationalVector>{p, q}, d);
}

/// Hodge star: e_I -> sign(I, J) e_J with J the complement of I.
template <class Scalar>
Extensor<Scalar> hodge_star(const Extensor<Scalar>& x) {
  const std::size_t n = x.d + 1;
  LexIndex from(n, x.grade), to(n, n - x.grade);
  std::vector<Scalar> out(to.size(), ScalarTraits<Scalar>::zero());
  for (std::size_t pos = 0; pos < from.size(); ++pos) {
    const auto comp = from.complement(pos);
    const int s = shuffle_sign(from.tuple(pos), comp);
    out[to.position(comp)] = s > 0 ? x.coords[pos] : Scalar(-x.coords[pos]);
  }
  return Extensor<Scalar>(x.d, n - x.grade, std::move(out));
}

/// The pairing p o q between complementary grades; equals <p, *q>.
template <class Scalar>
Scalar cap_product(const Extensor<Scalar>& p, const Extensor<Scalar>& q) {
  if (p.d != q.d || p.grade + q.grade != p.d + 1) throw InputError("cap product needs complementary grades");
  const std::size_t n = p.d + 1;
  LexIndex ip(n, p.grade), iq(n, q.grade);
  Scalar s = ScalarTraits<Scalar>::zero();
  for (std::size_t pos = 0; pos < ip.size(); ++pos) {
    const auto comp = ip.complement(pos);
    const Scalar term = p.coords[pos] * q.coords[iq.position(comp)];
    if (shuffle_sign(ip.tuple(pos), comp) > 0)
      s += term;
    else
      s -= term;
  }
  return s;
}

/// k-th compound matrix: entry [I, J] is the minor of A on rows I, columns J.
/// Satisfies A^(k) (p_1 ^ ... ^ p_k) = (A p_1) ^ ... ^ (A p_k).
inline RationalMatrix induced_rep(const RationalMatrix& a, std::size_t k) {
  if (!a.square()) throw InputError("induced representation needs a square matrix");
  LexIndex index(a.rows(), k);
  RationalMatrix out(index.size(), index.size());
  RationalMatrix minor(k, k);
  for (std::size_t r = 0; r < index.size(); ++r)
    for (std::size_t c = 0; c < index.size(); ++c) {
      const auto& ri = index.tuple(r);
      const auto& ci = index.tuple(c);
      for (std::size_t x = 0; x < k; ++x)
        for (std::size_t y = 0; y < k; ++y) minor(x, y) = a(ri[x], ci[y]);
      out(r, c) = determinant(minor);
    }
  return out;
}

inline bool is_orthogonal(const RationalMatrix& a) {
  return a.square() && a.transpose() * a == RationalMatrix::identity(a.rows());
}

/// Homogeneous coordinates (x, 1).
inline RationalVector homogeneous(const RationalVector& x) {
  RationalVector out(x);
  out.push_back(Rational(1));
  return out;
}

}  // namespace symrig
