#pragma once

// Independent reference constructions used as oracles by the unit tests.

#include <random>
#include <vector>

#include "fermag/fock.hpp"

namespace oracle {

using fermag::CMatrix;
using fermag::cplx;

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Jordan-Wigner ladder operator assembled from 2x2 factors, site 1 leftmost.
inline CMatrix ladder(int sites, int index) {
  const int mode = (index + 1) / 2;
  const bool dagger = index % 2 == 1;
  CMatrix z(2, 2), id = CMatrix::Identity(2, 2), lower = CMatrix::Zero(2, 2);
  z << 1, 0, 0, -1;
  lower(0, 1) = 1.0;  // |1> -> |0>
  CMatrix out = CMatrix::Identity(1, 1);
  for (int s = 1; s <= sites; ++s) {
    const CMatrix& f = s < mode ? z : (s == mode ? lower : id);
    out = kron(out, f);
  }
  return dagger ? CMatrix(out.adjoint()) : out;
}

// Product over J in increasing order; a same-mode pair becomes (n - 1/2).
inline CMatrix symmetric(int sites, const std::vector<int>& j) {
  const Eigen::Index d = Eigen::Index{1} << sites;
  CMatrix out = CMatrix::Identity(d, d);
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (j[k] % 2 == 1 && k + 1 < j.size() && j[k + 1] == j[k] + 1) {
      out = out * (ladder(sites, j[k]) * ladder(sites, j[k] + 1) - 0.5 * CMatrix::Identity(d, d));
      ++k;
    } else {
      out = out * ladder(sites, j[k]);
    }
  }
  return out;
}

inline int inversions(const std::vector<int>& v) {
  int n = 0;
  for (std::size_t a = 0; a < v.size(); ++a)
    for (std::size_t b = a + 1; b < v.size(); ++b) n += v[a] > v[b];
  return n;
}

// Sum over perfect matchings, each signed by the parity of its flattened
// pair sequence.
inline cplx pfaffian(const CMatrix& a) {
  const int n = static_cast<int>(a.rows());
  if (n % 2) return 0.0;
  cplx total = 0.0;
  std::vector<int> seq;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  auto rec = [&](auto&& self, cplx weight) -> void {
    int first = -1;
    for (int i = 0; i < n; ++i)
      if (!used[static_cast<std::size_t>(i)]) { first = i; break; }
    if (first < 0) {
      total += (inversions(seq) % 2 ? -1.0 : 1.0) * weight;
      return;
    }
    used[static_cast<std::size_t>(first)] = true;
    for (int k = first + 1; k < n; ++k) {
      if (used[static_cast<std::size_t>(k)]) continue;
      used[static_cast<std::size_t>(k)] = true;
      seq.push_back(first);
      seq.push_back(k);
      self(self, weight * a(first, k));
      seq.pop_back();
      seq.pop_back();
      used[static_cast<std::size_t>(k)] = false;
    }
    used[static_cast<std::size_t>(first)] = false;
  };
  rec(rec, cplx(1.0));
  return total;
}

inline CMatrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g;
  CMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = cplx(g(rng), g(rng));
  return out;
}

inline CMatrix random_antisymmetric(std::mt19937_64& rng, Eigen::Index n) {
  const CMatrix x = random_matrix(rng, n, n);
  return x - x.transpose();
}

// Random operator supported on the even-parity sector.
inline CMatrix random_even_block(std::mt19937_64& rng, int sites) {
  const Eigen::Index d = Eigen::Index{1} << sites;
  CMatrix x = random_matrix(rng, d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      if ((__builtin_popcountll(i) | __builtin_popcountll(j)) & 1) x(i, j) = 0.0;
  return x;
}

}  // namespace oracle
