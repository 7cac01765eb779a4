#pragma once

// Independent reference implementations used to judge the library:
//  - permutation-average symmetrization on dense arrays,
//  - exact term calculus (derivative, symmetrized gradient, divergence) on
//    polynomial-times-Gaussian phantom specs,
//  - closed-form Radon/Fourier formulas for Gaussian bumps.
// Everything here is deliberately slow and simple.

#include "grt/decomp.hpp"
#include "grt/field.hpp"
#include "grt/symtensor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace oracle {

// sigma(T): average over all index permutations, dense n^m array, C-order.
inline std::vector<double> dense_symmetrize(int n, int m, const std::vector<double>& dense) {
  std::size_t total = 1;
  for (int d = 0; d < m; ++d) total *= static_cast<std::size_t>(n);
  std::vector<double> out(total, 0.0);
  std::vector<int> perm(static_cast<std::size_t>(m));
  for (int d = 0; d < m; ++d) perm[static_cast<std::size_t>(d)] = d;
  std::size_t count = 0;
  do {
    ++count;
    std::vector<int> idx(static_cast<std::size_t>(m), 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t src = 0;
      for (int d = 0; d < m; ++d)
        src = src * static_cast<std::size_t>(n) +
              static_cast<std::size_t>(idx[static_cast<std::size_t>(perm[static_cast<std::size_t>(d)])]);
      out[flat] += dense[src];
      for (int d = m - 1; d >= 0; --d) {
        if (++idx[static_cast<std::size_t>(d)] < n) break;
        idx[static_cast<std::size_t>(d)] = 0;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (double& v : out) v /= static_cast<double>(count);
  return out;
}

// ---- term calculus on PhantomSpec ------------------------------------------
// A component is a sum of terms coef * (x-c)^expo * exp(-|x-c|^2 / w^2);
// the family is closed under d/dx_j.

inline std::vector<grt::PhantomTerm> term_derivative(const grt::PhantomTerm& t, int j) {
  std::vector<grt::PhantomTerm> out;
  auto js = static_cast<std::size_t>(j);
  if (t.expo[js] > 0) {
    grt::PhantomTerm a = t;
    a.coef *= t.expo[js];
    --a.expo[js];
    out.push_back(std::move(a));
  }
  grt::PhantomTerm b = t;
  b.coef *= -2.0 / (t.width * t.width);
  ++b.expo[js];
  out.push_back(std::move(b));
  return out;
}

// Symmetrized gradient: (dv)_I = 1/(m+1) sum_k d_{I_k} v_{I without slot k}.
inline grt::PhantomSpec d_spec(const grt::PhantomSpec& v) {
  const auto& in_tab = grt::SymIndexTable::get(v.n, v.m);
  const auto& out_tab = grt::SymIndexTable::get(v.n, v.m + 1);
  std::vector<std::vector<grt::PhantomTerm>> by_comp(in_tab.dim());
  for (const auto& t : v.terms) by_comp[t.component].push_back(t);

  grt::PhantomSpec out;
  out.n = v.n;
  out.m = v.m + 1;
  for (std::size_t r = 0; r < out_tab.dim(); ++r) {
    const grt::MultiIndex& I = out_tab.index(r);
    for (std::size_t k = 0; k < I.size(); ++k) {
      grt::MultiIndex J = I;
      int j = J[k];
      J.erase(J.begin() + static_cast<std::ptrdiff_t>(k));
      for (const auto& t : by_comp[in_tab.rank(J)]) {
        for (auto dt : term_derivative(t, j)) {
          dt.component = r;
          dt.coef /= static_cast<double>(v.m + 1);
          out.terms.push_back(std::move(dt));
        }
      }
    }
  }
  return out;
}

// Divergence: (delta u)_J = sum_j d_j u_{(j, J)}.
inline grt::PhantomSpec delta_spec(const grt::PhantomSpec& u) {
  const auto& in_tab = grt::SymIndexTable::get(u.n, u.m);
  const auto& out_tab = grt::SymIndexTable::get(u.n, u.m - 1);
  std::vector<std::vector<grt::PhantomTerm>> by_comp(in_tab.dim());
  for (const auto& t : u.terms) by_comp[t.component].push_back(t);

  grt::PhantomSpec out;
  out.n = u.n;
  out.m = u.m - 1;
  for (std::size_t r = 0; r < out_tab.dim(); ++r) {
    grt::MultiIndex J = out_tab.index(r);
    for (int j = 0; j < u.n; ++j) {
      grt::MultiIndex I = J;
      I.push_back(j);
      for (const auto& t : by_comp[in_tab.rank(I)]) {
        for (auto dt : term_derivative(t, j)) {
          dt.component = r;
          out.terms.push_back(std::move(dt));
        }
      }
    }
  }
  return out;
}

// ---- closed forms for an isotropic Gaussian bump ---------------------------

// Radon transform of exp(-|x-c|^2/w^2) over the hyperplane <x,omega> = p.
inline double gaussian_radon(const grt::Vec& c, double w, const grt::Vec& omega, double p) {
  int n = static_cast<int>(c.size());
  double q = p - omega.dot(c);
  return std::pow(std::numbers::pi, 0.5 * (n - 1)) * std::pow(w, n - 1) *
         std::exp(-q * q / (w * w));
}

// 1-D FT (convention (2pi)^{-1/2} int g e^{-ips} dp) of exp(-(p-c)^2/w^2).
inline std::complex<double> gaussian_ft_1d(double c, double w, double s) {
  std::complex<double> phase(std::cos(c * s), -std::sin(c * s));
  return (w / std::numbers::sqrt2) * std::exp(-0.25 * s * s * w * w) * phase;
}

// ---- helpers ---------------------------------------------------------------

inline double rel_err(const grt::TensorField& got, const grt::TensorField& ref) {
  grt::TensorField diff = got;
  grt::axpy(-1.0, ref, diff);
  double den = grt::l2_norm(ref);
  return den > 0 ? grt::l2_norm(diff) / den : grt::l2_norm(diff);
}

// multiplicity-weighted L2 inner product sum_x <f(x), g(x)> h^n
inline double inner(const grt::TensorField& f, const grt::TensorField& g) {
  const auto& mult = grt::SymIndexTable::get(f.grid.n, f.m).multiplicities();
  const std::size_t dim = f.dim();
  double acc = 0;
  for (std::size_t node = 0; node < f.grid.nodes(); ++node)
    for (std::size_t ci = 0; ci < dim; ++ci)
      acc += mult[static_cast<Eigen::Index>(ci)] * f.at(node, ci) * g.at(node, ci);
  return acc * std::pow(f.grid.h(), f.grid.n);
}

} // namespace oracle
