#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

// Exact finite-dimensional algebra of symmetric m-tensors on R^n.
// Storage is compressed: one coefficient per non-decreasing multi-index
// (i_1 <= ... <= i_m), indices in {0,...,n-1}, lexicographic order.
// The symmetric product is sym_product(a,b) = sigma(a (x) b) with the
// plain 1/m! permutation average (no multinomial rescaling).

namespace grt {

using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using MultiIndex = std::vector<int>;

std::int64_t binomial(int n, int k);

// dim S^m R^n = C(m+n-1, m)
std::size_t sym_dim(int n, int m);

// Cached per-(n,m) index bookkeeping: the ordered list of non-decreasing
// multi-indices, the number of distinct permutations of each, and rank lookup.
class SymIndexTable {
public:
  static const SymIndexTable& get(int n, int m);

  int n() const { return n_; }
  int m() const { return m_; }
  std::size_t dim() const { return indices_.size(); }
  const std::vector<MultiIndex>& indices() const { return indices_; }
  const MultiIndex& index(std::size_t r) const { return indices_[r]; }
  // number of distinct arrangements of index r (m! / prod of repetitions!)
  double multiplicity(std::size_t r) const { return mult_[r]; }
  const Vec& multiplicities() const { return mult_vec_; }
  // rank of a multi-index; the argument need not be sorted
  std::size_t rank(const MultiIndex& idx) const;

private:
  SymIndexTable(int n, int m);
  int n_, m_;
  std::vector<MultiIndex> indices_;
  std::vector<double> mult_;
  Vec mult_vec_;
  std::vector<std::size_t> rank_of_code_;
};

// Ordered basis of non-decreasing multi-indices for S^m R^n.
std::vector<MultiIndex> sym_basis(int n, int m);

struct SymTensor {
  int n = 0;
  int m = 0;
  Vec c; // length sym_dim(n, m)

  SymTensor() = default;
  SymTensor(int n_, int m_) : n(n_), m(m_), c(Vec::Zero(sym_dim(n_, m_))) {}

  const SymIndexTable& table() const { return SymIndexTable::get(n, m); }
  double& at(const MultiIndex& idx) { return c[table().rank(idx)]; }
  double at(const MultiIndex& idx) const { return c[table().rank(idx)]; }
};

// sigma(T) for a dense m-index array (C-order, extent n per axis).
SymTensor symmetrize(int n, int m, std::span<const double> dense);

// Dense expansion, n^m entries in C-order.
std::vector<double> expand(const SymTensor& t);

// sigma(a (x) b), order a.m + b.m.
SymTensor sym_product(const SymTensor& a, const SymTensor& b);

// Full contraction <a, b> = sum over all n^m index tuples (with multiplicity).
double pair(const SymTensor& a, const SymTensor& b);

// Pairing of a complex coefficient vector (same layout as SymTensor.c, order m)
// against a real symmetric tensor of the same shape.
std::complex<double> pair(const CVec& a, const SymTensor& b);

// v^{sym-power l}; order l tensor with entries prod v_{i_k}.
SymTensor sym_power(const Vec& v, int l);

// sigma(v (x) u), raising the order of u by one.
SymTensor sym_mul_vector(const SymTensor& u, const Vec& v);

// Contraction of the last index of u with v (order drops by one).
SymTensor contract(const SymTensor& u, const Vec& v);

struct Frame {
  Vec omega;               // unit normal
  std::vector<Vec> tangent; // omega_1, ..., omega_{n-1}
};

// Deterministic orthonormal tangent frame of omega^perp: drop the standard
// basis vector most aligned with omega (ties -> smallest index), Gram-Schmidt
// the rest in index order. Invariant under omega -> -omega.
Frame frame(const Vec& omega);

// omega_1^{sym l_1} ... omega_{n-1}^{sym l_{n-1}} sym omega^{sym l_n};
// degrees has length n, entries sum to the resulting order.
SymTensor frame_tensor(const Frame& fr, const std::vector<int>& degrees);

// All degree signatures (l_1,...,l_slots) with sum m, lexicographic.
std::vector<std::vector<int>> degree_signatures(int slots, int m);

} // namespace grt
