#pragma once

#include "deltalab/arith/rational.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace deltalab {

using IntMatrix = std::vector<std::vector<BigInt>>;
using RatMatrix = std::vector<std::vector<BigRational>>;

/// Hermite normal form of the full-rank lattice spanned by the rows of `gens`
/// (each of length n). Returns n rows; row i has its positive pivot in
/// column i, zeros right of it, and entries left of it reduced into
/// [0, pivot of that column).
inline IntMatrix hnf_lower(IntMatrix gens, size_t n) {
  IntMatrix out(n, std::vector<BigInt>(n, 0));
  for (size_t col = n; col-- > 0;) {
    // gcd-eliminate column `col` among the remaining rows
    size_t piv = gens.size();
    while (true) {
      piv = gens.size();
      for (size_t r = 0; r < gens.size(); ++r)
        if (gens[r][col] != 0 && (piv == gens.size() || abs(gens[r][col]) < abs(gens[piv][col]))) piv = r;
      if (piv == gens.size()) throw std::domain_error("hnf_lower: lattice is not of full rank");
      bool clean = true;
      for (size_t r = 0; r < gens.size(); ++r) {
        if (r == piv || gens[r][col] == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), gens[r][col].get_mpz_t(), gens[piv][col].get_mpz_t());
        for (size_t k = 0; k <= col; ++k) gens[r][k] -= q * gens[piv][k];
        if (gens[r][col] != 0) clean = false;
      }
      if (clean) break;
    }
    std::vector<BigInt> row = std::move(gens[piv]);
    gens.erase(gens.begin() + static_cast<long>(piv));
    if (row[col] < 0)
      for (auto &v : row) v = -v;
    out[col] = std::move(row);
    // drop zero rows
    std::vector<std::vector<BigInt>> keep;
    for (auto &r : gens) {
      bool zero = true;
      for (size_t k = 0; k < col && zero; ++k) zero = r[k] == 0;
      if (!zero) keep.push_back(std::move(r));
    }
    gens = std::move(keep);
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i; j-- > 0;) {
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), out[i][j].get_mpz_t(), out[j][j].get_mpz_t());
      if (q != 0)
        for (size_t k = 0; k <= j; ++k) out[i][k] -= q * out[j][k];
    }
  return out;
}

/// HNF of a full-rank rational lattice: rows scaled by a common
/// denominator, reduced, scaled back.
inline RatMatrix hnf_lower(const RatMatrix &gens, size_t n) {
  BigInt den = 1;
  for (const auto &r : gens)
    for (const auto &v : r) den = lcm(den, BigInt(v.get_den()));
  IntMatrix z;
  for (const auto &r : gens) {
    std::vector<BigInt> row;
    for (const auto &v : r) row.push_back(BigInt(v * den));
    z.push_back(std::move(row));
  }
  IntMatrix h = hnf_lower(std::move(z), n);
  RatMatrix out(n, std::vector<BigRational>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      out[i][j] = BigRational(h[i][j], den);
      out[i][j].canonicalize();
    }
  return out;
}

/// Coordinates of x in the lower-triangular basis B (row i pivot in column i).
inline std::vector<BigRational> triangular_coords(const RatMatrix &B, std::vector<BigRational> x) {
  size_t n = B.size();
  std::vector<BigRational> c(n);
  for (size_t i = n; i-- > 0;) {
    c[i] = x[i] / B[i][i];
    if (c[i] != 0)
      for (size_t k = 0; k <= i; ++k) x[k] -= c[i] * B[i][k];
  }
  return c;
}

inline BigRational diagonal_product(const RatMatrix &B) {
  BigRational d = 1;
  for (size_t i = 0; i < B.size(); ++i) d *= B[i][i];
  return d;
}

} // namespace deltalab
