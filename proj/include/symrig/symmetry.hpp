#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "symrig/algebra.hpp"
#include "symrig/linalg.hpp"

namespace symrig {

/// Element of Z/k_1 x ... x Z/k_l, stored reduced.
struct GroupElement {
  std::vector<int> components;

  auto operator<=>(const GroupElement&) const = default;

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < components.size(); ++i) s += (i ? "," : "") + std::to_string(components[i]);
    return s + "]";
  }
};

class AbelianGroup {
 public:
  AbelianGroup() = default;
  explicit AbelianGroup(std::vector<int> orders) : orders_(std::move(orders)) {
    for (int k : orders_)
      if (k < 2) throw InputError("cyclic factor orders must be at least 2");
  }

  const std::vector<int>& orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }

  std::size_t order() const {
    std::size_t n = 1;
    for (int k : orders_) n *= static_cast<std::size_t>(k);
    return n;
  }

  /// (Z/2Z)^l, including the trivial group.
  bool is_elementary_abelian_2() const {
    for (int k : orders_)
      if (k != 2) return false;
    return true;
  }

  GroupElement identity() const { return GroupElement{std::vector<int>(orders_.size(), 0)}; }

  /// Mixed radix, last component fastest.
  GroupElement element(std::size_t index) const {
    GroupElement g{std::vector<int>(orders_.size(), 0)};
    for (std::size_t t = orders_.size(); t-- > 0;) {
      g.components[t] = static_cast<int>(index % orders_[t]);
      index /= orders_[t];
    }
    return g;
  }

  std::size_t index(const GroupElement& g) const {
    check(g);
    std::size_t idx = 0;
    for (std::size_t t = 0; t < orders_.size(); ++t) idx = idx * orders_[t] + g.components[t];
    return idx;
  }

  std::vector<GroupElement> elements() const {
    std::vector<GroupElement> out;
    for (std::size_t i = 0; i < order(); ++i) out.push_back(element(i));
    return out;
  }

  GroupElement add(const GroupElement& a, const GroupElement& b) const {
    check(a);
    check(b);
    GroupElement c = a;
    for (std::size_t t = 0; t < orders_.size(); ++t) c.components[t] = (a.components[t] + b.components[t]) % orders_[t];
    return c;
  }

  GroupElement negate(const GroupElement& a) const {
    check(a);
    GroupElement c = a;
    for (std::size_t t = 0; t < orders_.size(); ++t) c.components[t] = (orders_[t] - a.components[t]) % orders_[t];
    return c;
  }

  std::size_t add_index(std::size_t a, std::size_t b) const { return index(add(element(a), element(b))); }

  int element_order(const GroupElement& a) const {
    GroupElement x = a;
    int n = 1;
    while (x != identity()) {
      x = add(x, a);
      ++n;
    }
    return n;
  }

  /// Reduces arbitrary integers into range; rejects wrong arity.
  GroupElement make(std::vector<int> components) const {
    GroupElement g{std::move(components)};
    check(g);
    return g;
  }

  void check(const GroupElement& g) const {
    if (g.components.size() != orders_.size()) throw InputError("group element has wrong number of components");
    for (std::size_t t = 0; t < orders_.size(); ++t)
      if (g.components[t] < 0 || g.components[t] >= orders_[t]) throw InputError("group element component out of range");
  }

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

 private:
  std::vector<int> orders_;
};

/// Value of an irreducible character: exp(2 pi i * phase) with phase in [0, 1).
class IrrepValue {
 public:
  explicit IrrepValue(Rational phase) : phase_(std::move(phase)) {}

  const Rational& phase() const { return phase_; }
  bool is_real() const { return sgn(phase_) == 0 || phase_ == Rational(1, 2); }

  /// +1 or -1; only valid when is_real().
  int sign() const {
    if (!is_real()) throw UnsupportedError("irrep value is not real");
    return sgn(phase_) == 0 ? 1 : -1;
  }

  Complex complex() const {
    if (is_real()) return Complex(sign(), 0.0);
    const double angle = 2.0 * std::numbers::pi * phase_.get_d();
    return Complex(std::cos(angle), std::sin(angle));
  }

  /// rho^{-1} = conj(rho) on the unit circle.
  IrrepValue inverse() const {
    if (sgn(phase_) == 0) return *this;
    return IrrepValue(Rational(1) - phase_);
  }

  template <class Scalar>
  Scalar as() const {
    if constexpr (std::is_same_v<Scalar, Rational>) {
      return Rational(sign());
    } else {
      return complex();
    }
  }

 private:
  Rational phase_;
};

/// rho_j(i) = prod_t omega_t^{i_t j_t}, omega_t = exp(2 pi i / k_t).
inline IrrepValue irrep_value(const AbelianGroup& group, const GroupElement& j, const GroupElement& i) {
  group.check(j);
  group.check(i);
  Rational phase(0);
  for (std::size_t t = 0; t < group.rank(); ++t) phase += Rational(i.components[t] * j.components[t], group.orders()[t]);
  phase.canonicalize();
  // reduce mod 1
  Integer whole = phase.get_num() / phase.get_den();
  phase -= Rational(whole);
  return IrrepValue(phase);
}

/// Every value of rho_j is +-1.
inline bool irrep_is_real(const AbelianGroup& group, const GroupElement& j) {
  group.check(j);
  for (std::size_t t = 0; t < group.rank(); ++t)
    if ((2 * j.components[t]) % group.orders()[t] != 0) return false;
  return true;
}

/// Orthogonal rational representation tau : Gamma -> O(R^d), given on the generators of
/// the cyclic factors and extended to the whole group.
class PointRepresentation {
 public:
  PointRepresentation(AbelianGroup group, std::size_t d, std::vector<RationalMatrix> generators)
      : group_(std::move(group)), d_(d), generators_(std::move(generators)) {
    if (d_ < 1) throw InputError("dimension must be at least 1");
    if (generators_.size() != group_.rank())
      throw InputError("representation needs one generator image per cyclic factor");
    for (const auto& g : generators_) {
      if (g.rows() != d_ || g.cols() != d_) throw InputError("generator image must be d x d");
      if (!is_orthogonal(g)) throw InputError("generator image is not orthogonal");
    }
    images_.reserve(group_.order());
    for (std::size_t idx = 0; idx < group_.order(); ++idx) {
      const GroupElement e = group_.element(idx);
      RationalMatrix m = RationalMatrix::identity(d_);
      for (std::size_t t = 0; t < group_.rank(); ++t)
        for (int p = 0; p < e.components[t]; ++p) m = m * generators_[t];
      images_.push_back(std::move(m));
    }
    // exhaustive homomorphism check (also catches generators of the wrong order or
    // non-commuting generators)
    for (std::size_t a = 0; a < group_.order(); ++a)
      for (std::size_t b = 0; b < group_.order(); ++b)
        if (images_[group_.add_index(a, b)] != images_[a] * images_[b])
          throw InputError("generator images do not define a homomorphism of the group");
    const auto id = RationalMatrix::identity(d_);
    for (std::size_t idx = 1; idx < group_.order(); ++idx)
      if (images_[idx] == id)
        throw InputError("representation is not faithful: element " + group_.element(idx).str() + " acts trivially");
    for (const auto& m : images_) {
      RationalMatrix aug(d_ + 1, d_ + 1);
      for (std::size_t r = 0; r < d_; ++r)
        for (std::size_t c = 0; c < d_; ++c) aug(r, c) = m(r, c);
      aug(d_, d_) = 1;
      compound2_.push_back(induced_rep(aug, 2));
      augmented_.push_back(std::move(aug));
    }
  }

  /// Trivial group acting on R^d.
  static PointRepresentation trivial(std::size_t d) { return PointRepresentation(AbelianGroup{}, d, {}); }

  const AbelianGroup& group() const { return group_; }
  std::size_t d() const { return d_; }
  std::size_t screw_dim() const { return binomial(d_ + 1, 2); }
  const std::vector<RationalMatrix>& generators() const { return generators_; }

  const RationalMatrix& image(const GroupElement& g) const { return images_[group_.index(g)]; }
  /// blockdiag(tau(g), 1)
  const RationalMatrix& augmented(const GroupElement& g) const { return augmented_[group_.index(g)]; }
  /// (tau-hat(g))^(2)
  const RationalMatrix& compound2(const GroupElement& g) const { return compound2_[group_.index(g)]; }

  /// Every image diagonal with entries +-1.
  bool is_diagonal_sign() const {
    for (const auto& m : images_) {
      if (!m.is_diagonal()) return false;
      for (std::size_t i = 0; i < d_; ++i)
        if (m(i, i) != 1 && m(i, i) != -1) return false;
    }
    return true;
  }

  /// Preconditions of the signed-graphic (combinatorial) path.
  void require_combinatorial() const {
    if (!group_.is_elementary_abelian_2())
      throw UnsupportedError("combinatorial characterization needs a group of the form (Z/2Z)^l");
    if (!is_diagonal_sign())
      throw UnsupportedError("combinatorial characterization needs diagonal +-1 representation matrices");
  }

 private:
  AbelianGroup group_;
  std::size_t d_;
  std::vector<RationalMatrix> generators_;
  std::vector<RationalMatrix> images_;
  std::vector<RationalMatrix> augmented_;
  std::vector<RationalMatrix> compound2_;
};

/// rho_j(g)^{-1} * tau-hat^(2)(g). Scalar = Rational requires rho_j(g) = +-1.
template <class Scalar>
Matrix<Scalar> tau_hat2_j(const PointRepresentation& rep, const GroupElement& j, const GroupElement& g) {
  const IrrepValue inv = irrep_value(rep.group(), j, g).inverse();
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return rep.compound2(g).scaled(Rational(inv.sign()));
  } else {
    return convert<Complex>(rep.compound2(g)).scaled(inv.complex());
  }
}

/// (tau-hat^(2)_j(g))^{-1}, computed as rho_j(g) * tau-hat^(2)(g)^T.
template <class Scalar>
Matrix<Scalar> tau_hat2_j_inverse(const PointRepresentation& rep, const GroupElement& j, const GroupElement& g) {
  const IrrepValue rho = irrep_value(rep.group(), j, g);
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return rep.compound2(g).transpose().scaled(Rational(rho.sign()));
  } else {
    return convert<Complex>(rep.compound2(g).transpose()).scaled(rho.complex());
  }
}

/// Dimension of the rho_j-symmetric trivial motions: the average trace of tau-hat^(2)_j.
inline std::size_t trivial_motion_dim(const PointRepresentation& rep, const GroupElement& j) {
  const auto& group = rep.group();
  if (irrep_is_real(group, j)) {
    Rational sum(0);
    for (const auto& g : group.elements()) {
      const auto m = tau_hat2_j<Rational>(rep, j, g);
      for (std::size_t i = 0; i < m.rows(); ++i) sum += m(i, i);
    }
    sum /= static_cast<unsigned long>(group.order());
    if (sum.get_den() != 1 || sgn(sum) < 0)
      throw InputError("average trace " + sum.get_str() + " is not a nonnegative integer; invalid representation");
    return sum.get_num().get_ui();
  }
  Complex sum(0.0, 0.0);
  for (const auto& g : group.elements()) {
    const auto m = tau_hat2_j<Complex>(rep, j, g);
    for (std::size_t i = 0; i < m.rows(); ++i) sum += m(i, i);
  }
  sum /= static_cast<double>(group.order());
  const double r = std::round(sum.real());
  if (std::abs(sum - Complex(r, 0.0)) > 1e-9 || r < 0)
    throw InputError("average trace is not a nonnegative integer; invalid representation");
  return static_cast<std::size_t>(r);
}

/// Basis of {t : tau-hat^(2)_j(g) t = t for all g}. Real irreps only (exact).
inline std::vector<RationalVector> fixed_subspace_basis(const PointRepresentation& rep, const GroupElement& j) {
  if (!irrep_is_real(rep.group(), j)) throw UnsupportedError("fixed-subspace basis is only computed for real irreps");
  const std::size_t n = rep.screw_dim();
  const auto elems = rep.group().elements();
  RationalMatrix stacked(n * elems.size(), n);
  const auto id = RationalMatrix::identity(n);
  for (std::size_t e = 0; e < elems.size(); ++e) {
    const auto diff = tau_hat2_j<Rational>(rep, j, elems[e]) - id;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) stacked(e * n + r, c) = diff(r, c);
  }
  return nullspace(stacked);
}

/// The one-dimensional summand tau_g^{i,j}: value at each group element (by index) of the
/// diagonal entry of tau-hat^(2)_g at the pair position. Needs diagonal +-1 images.
inline std::vector<int> induced_labeling(const PointRepresentation& rep, const GroupElement& g, std::size_t pair_position) {
  rep.require_combinatorial();
  if (pair_position >= rep.screw_dim()) throw InputError("pair index out of range");
  std::vector<int> out;
  for (const auto& gamma : rep.group().elements()) {
    const auto m = tau_hat2_j<Rational>(rep, g, gamma);
    out.push_back(sgn(m(pair_position, pair_position)));
  }
  return out;
}

}  // namespace symrig
