#include "grt/symtensor.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace grt {

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  k = std::min(k, n - k);
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::size_t sym_dim(int n, int m) {
  if (n < 1 || m < 0) throw std::invalid_argument("sym_dim: need n >= 1, m >= 0");
  return static_cast<std::size_t>(binomial(m + n - 1, m));
}

namespace {

void enumerate_nondecreasing(int n, int m, int start, MultiIndex& cur,
                             std::vector<MultiIndex>& out) {
  if (static_cast<int>(cur.size()) == m) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    enumerate_nondecreasing(n, m, i, cur, out);
    cur.pop_back();
  }
}

double factorial(int k) {
  double r = 1;
  for (int i = 2; i <= k; ++i) r *= i;
  return r;
}

std::size_t encode(const MultiIndex& sorted, int n) {
  std::size_t code = 0;
  for (int v : sorted) code = code * static_cast<std::size_t>(n) + static_cast<std::size_t>(v);
  return code;
}

} // namespace

SymIndexTable::SymIndexTable(int n, int m) : n_(n), m_(m) {
  MultiIndex cur;
  enumerate_nondecreasing(n, m, 0, cur, indices_);
  mult_.resize(indices_.size());
  mult_vec_.resize(static_cast<Eigen::Index>(indices_.size()));
  std::size_t codes = 1;
  for (int i = 0; i < m; ++i) codes *= static_cast<std::size_t>(n);
  rank_of_code_.assign(codes, static_cast<std::size_t>(-1));
  for (std::size_t r = 0; r < indices_.size(); ++r) {
    double denom = 1;
    int run = 1;
    for (std::size_t k = 1; k <= indices_[r].size(); ++k) {
      if (k < indices_[r].size() && indices_[r][k] == indices_[r][k - 1]) {
        ++run;
      } else {
        denom *= factorial(run);
        run = 1;
      }
    }
    mult_[r] = factorial(m) / denom;
    mult_vec_[static_cast<Eigen::Index>(r)] = mult_[r];
    rank_of_code_[encode(indices_[r], n)] = r;
  }
}

const SymIndexTable& SymIndexTable::get(int n, int m) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<SymIndexTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, m);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::unique_ptr<SymIndexTable>(new SymIndexTable(n, m))).first;
  }
  return *it->second;
}

std::size_t SymIndexTable::rank(const MultiIndex& idx) const {
  if (static_cast<int>(idx.size()) != m_) throw std::invalid_argument("rank: wrong order");
  MultiIndex s = idx;
  std::sort(s.begin(), s.end());
  if (!s.empty() && (s.front() < 0 || s.back() >= n_))
    throw std::out_of_range("rank: index out of range");
  std::size_t r = rank_of_code_[encode(s, n_)];
  return r;
}

std::vector<MultiIndex> sym_basis(int n, int m) {
  return SymIndexTable::get(n, m).indices();
}

SymTensor symmetrize(int n, int m, std::span<const double> dense) {
  std::size_t need = 1;
  for (int i = 0; i < m; ++i) need *= static_cast<std::size_t>(n);
  if (dense.size() != need) throw std::invalid_argument("symmetrize: dense size mismatch");
  const auto& tab = SymIndexTable::get(n, m);
  SymTensor out(n, m);
  for (std::size_t r = 0; r < tab.dim(); ++r) {
    MultiIndex perm = tab.index(r);
    std::sort(perm.begin(), perm.end());
    double acc = 0;
    std::size_t count = 0;
    do {
      std::size_t flat = 0;
      for (int v : perm) flat = flat * static_cast<std::size_t>(n) + static_cast<std::size_t>(v);
      acc += dense[flat];
      ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.c[static_cast<Eigen::Index>(r)] = acc / static_cast<double>(count);
  }
  return out;
}

std::vector<double> expand(const SymTensor& t) {
  std::size_t total = 1;
  for (int i = 0; i < t.m; ++i) total *= static_cast<std::size_t>(t.n);
  std::vector<double> dense(total);
  const auto& tab = t.table();
  MultiIndex idx(static_cast<std::size_t>(t.m));
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int k = t.m - 1; k >= 0; --k) {
      idx[static_cast<std::size_t>(k)] = static_cast<int>(rem % static_cast<std::size_t>(t.n));
      rem /= static_cast<std::size_t>(t.n);
    }
    dense[flat] = t.c[static_cast<Eigen::Index>(tab.rank(idx))];
  }
  return dense;
}

SymTensor sym_product(const SymTensor& a, const SymTensor& b) {
  if (a.n != b.n) throw std::invalid_argument("sym_product: dimension mismatch");
  const int m = a.m + b.m;
  SymTensor out(a.n, m);
  const auto& tab = out.table();
  const auto& ta = a.table();
  const auto& tb = b.table();

  // positions 0..m-1; choose which a.m of them feed a
  std::vector<int> sel(static_cast<std::size_t>(m), 0);
  std::fill(sel.begin(), sel.begin() + a.m, 1);
  std::sort(sel.begin(), sel.end());
  std::vector<std::vector<int>> subsets;
  do {
    std::vector<int> pos;
    for (int i = 0; i < m; ++i)
      if (sel[static_cast<std::size_t>(i)]) pos.push_back(i);
    subsets.push_back(pos);
  } while (std::next_permutation(sel.begin(), sel.end()));

  const double norm = 1.0 / static_cast<double>(subsets.size());
  MultiIndex ia(static_cast<std::size_t>(a.m)), ib(static_cast<std::size_t>(b.m));
  for (std::size_t r = 0; r < tab.dim(); ++r) {
    const MultiIndex& idx = tab.index(r);
    double acc = 0;
    for (const auto& pos : subsets) {
      std::size_t pa = 0, pb = 0, psel = 0;
      for (int i = 0; i < m; ++i) {
        if (psel < pos.size() && pos[psel] == i) {
          ia[pa++] = idx[static_cast<std::size_t>(i)];
          ++psel;
        } else {
          ib[pb++] = idx[static_cast<std::size_t>(i)];
        }
      }
      acc += a.c[static_cast<Eigen::Index>(ta.rank(ia))] *
             b.c[static_cast<Eigen::Index>(tb.rank(ib))];
    }
    out.c[static_cast<Eigen::Index>(r)] = acc * norm;
  }
  return out;
}

double pair(const SymTensor& a, const SymTensor& b) {
  if (a.n != b.n || a.m != b.m) throw std::invalid_argument("pair: shape mismatch");
  const Vec& w = a.table().multiplicities();
  return (a.c.array() * b.c.array() * w.array()).sum();
}

std::complex<double> pair(const CVec& a, const SymTensor& b) {
  if (a.size() != b.c.size()) throw std::invalid_argument("pair: shape mismatch");
  const Vec& w = b.table().multiplicities();
  std::complex<double> acc = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) acc += a[i] * b.c[i] * w[i];
  return acc;
}

SymTensor sym_power(const Vec& v, int l) {
  const int n = static_cast<int>(v.size());
  SymTensor out(n, l);
  const auto& tab = out.table();
  for (std::size_t r = 0; r < tab.dim(); ++r) {
    double prod = 1;
    for (int i : tab.index(r)) prod *= v[i];
    out.c[static_cast<Eigen::Index>(r)] = prod;
  }
  return out;
}

SymTensor sym_mul_vector(const SymTensor& u, const Vec& v) {
  if (u.n != static_cast<int>(v.size()))
    throw std::invalid_argument("sym_mul_vector: dimension mismatch");
  const int m = u.m + 1;
  SymTensor out(u.n, m);
  const auto& tab = out.table();
  const auto& tu = u.table();
  MultiIndex sub(static_cast<std::size_t>(u.m));
  for (std::size_t r = 0; r < tab.dim(); ++r) {
    const MultiIndex& idx = tab.index(r);
    double acc = 0;
    for (int drop = 0; drop < m; ++drop) {
      std::size_t p = 0;
      for (int i = 0; i < m; ++i)
        if (i != drop) sub[p++] = idx[static_cast<std::size_t>(i)];
      acc += v[idx[static_cast<std::size_t>(drop)]] *
             u.c[static_cast<Eigen::Index>(tu.rank(sub))];
    }
    out.c[static_cast<Eigen::Index>(r)] = acc / m;
  }
  return out;
}

SymTensor contract(const SymTensor& u, const Vec& v) {
  if (u.m < 1) throw std::invalid_argument("contract: order must be >= 1");
  if (u.n != static_cast<int>(v.size()))
    throw std::invalid_argument("contract: dimension mismatch");
  SymTensor out(u.n, u.m - 1);
  const auto& tab = out.table();
  const auto& tu = u.table();
  for (std::size_t r = 0; r < tab.dim(); ++r) {
    MultiIndex idx = tab.index(r);
    idx.push_back(0);
    double acc = 0;
    for (int t = 0; t < u.n; ++t) {
      idx.back() = t;
      acc += v[t] * u.c[static_cast<Eigen::Index>(tu.rank(idx))];
    }
    out.c[static_cast<Eigen::Index>(r)] = acc;
  }
  return out;
}

Frame frame(const Vec& omega) {
  const int n = static_cast<int>(omega.size());
  if (std::abs(omega.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("frame: omega must be a unit vector");
  // drop the basis vector most aligned with omega (ties -> smallest index)
  int worst = 0;
  double wa = std::abs(omega[0]);
  for (int j = 1; j < n; ++j) {
    if (std::abs(omega[j]) > wa + 1e-15) {
      wa = std::abs(omega[j]);
      worst = j;
    }
  }
  Frame fr;
  fr.omega = omega;
  for (int j = 0; j < n; ++j) {
    if (j == worst) continue;
    Vec v = Vec::Zero(n);
    v[j] = 1;
    v -= omega.dot(v) * omega;
    for (const Vec& t : fr.tangent) v -= t.dot(v) * t;
    double nv = v.norm();
    if (nv < 1e-8) throw std::runtime_error("frame: degenerate Gram-Schmidt step");
    fr.tangent.push_back(v / nv);
  }
  return fr;
}

SymTensor frame_tensor(const Frame& fr, const std::vector<int>& degrees) {
  const int n = static_cast<int>(fr.omega.size());
  if (static_cast<int>(degrees.size()) != n)
    throw std::invalid_argument("frame_tensor: degrees must have length n");
  SymTensor out(n, 0);
  out.c[0] = 1.0;
  for (int a = 0; a < n - 1; ++a)
    if (degrees[static_cast<std::size_t>(a)] > 0)
      out = sym_product(out, sym_power(fr.tangent[static_cast<std::size_t>(a)],
                                       degrees[static_cast<std::size_t>(a)]));
  if (degrees.back() > 0) out = sym_product(out, sym_power(fr.omega, degrees.back()));
  return out;
}

std::vector<std::vector<int>> degree_signatures(int slots, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(slots), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == slots - 1) {
      cur[static_cast<std::size_t>(pos)] = left;
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[static_cast<std::size_t>(pos)] = v;
      rec(pos + 1, left - v);
    }
  };
  if (slots <= 0) throw std::invalid_argument("degree_signatures: slots must be >= 1");
  rec(0, m);
  return out;
}

} // namespace grt
