#pragma once

#include "deltalab/census/census.hpp"

#include <utility>
#include <vector>

namespace deltalab {

/// Eisenstein criterion at p.
inline bool eisenstein(const IntPolynomial &f, const BigInt &p) {
  if (f.degree() < 1 || mpz_divisible_p(f.lc().get_mpz_t(), p.get_mpz_t())) return false;
  for (int i = 0; i < f.degree(); ++i)
    if (!mpz_divisible_p(f.coeff(i).get_mpz_t(), p.get_mpz_t())) return false;
  BigInt p2 = p * p;
  return !mpz_divisible_p(f.coeff(0).get_mpz_t(), p2.get_mpz_t());
}

/// Prime pairs p < q < 2p ordered by (q, p).
inline std::vector<std::pair<long, long>> prime_pairs(int count) {
  std::vector<std::pair<long, long>> out;
  auto prime = [](long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  };
  for (long q = 3; static_cast<int>(out.size()) < count; ++q) {
    if (!prime(q)) continue;
    for (long p = q / 2 + 1; p < q && static_cast<int>(out.size()) < count; ++p)
      if (prime(p) && q < 2 * p) out.emplace_back(p, q);
  }
  return out;
}

struct FamilyChecks {
  bool eisenstein = false;       // x^D - p q^(D-1) at p
  bool irreducible = false;      // q x^D - p
  bool height_exact = false;     // M(q x^D - p) = q
  bool ramification = false;     // (pq)^(D-1) | Delta_L
  bool chain_first = false;      // q^(1/D) <= (2pq)^(1/(2D)), i.e. q <= 2p
  bool chain_second = false;     // (2pq)^(1/(2D)) <= 2^(1/(2D)) |Delta_L|^(1/(2D(D-1)))
  bool all() const { return eisenstein && irreducible && height_exact && ramification && chain_first && chain_second; }
};

struct FamilyItem {
  long p = 0, q = 0;
  int D = 0;
  IntPolynomial poly; // q x^D - p
  AlgebraicNumber alpha;
  NumberField field;
  HeightValue height;
  RealBall middle, right; // (2pq)^(1/(2D)) and 2^(1/(2D)) |Delta|^(1/(2D(D-1)))
  FamilyChecks checks;
};

inline FamilyItem family_item(int D, long p, long q) {
  if (D < 2) throw std::domain_error("ruppert_family: degree must be at least 2");
  FamilyItem it;
  it.p = p;
  it.q = q;
  it.D = D;
  it.poly = IntPolynomial::monomial(q, D) - IntPolynomial::constant(p);
  BigInt P(p), Q(q);
  IntPolynomial conj = IntPolynomial::monomial(1, D) - IntPolynomial::constant(P * pow(Q, static_cast<unsigned long>(D - 1)));
  it.checks.eisenstein = eisenstein(conj, P);
  it.checks.irreducible = is_irreducible(it.poly);
  it.field = NumberField::from_poly(it.poly);
  auto disks = isolate_roots(it.poly, 64);
  int pos = -1;
  for (const auto &d : disks)
    if (d.real && d.center_re().sign() > 0) pos = d.index;
  it.alpha = AlgebraicNumber::from_root(it.poly, pos < 0 ? 0 : pos, 64);
  it.height = weil_height(it.alpha, 128);
  auto e = it.height.structure().exact_integer();
  it.checks.height_exact = e && *e == q;
  BigInt ram = pow(P * Q, static_cast<unsigned long>(D - 1));
  BigInt disc = abs(it.field.discriminant);
  it.checks.ramification = mpz_divisible_p(disc.get_mpz_t(), ram.get_mpz_t()) != 0;
  it.checks.chain_first = q <= 2 * p;
  it.checks.chain_second = ram <= disc;
  long prec = 128;
  it.middle = ball_pow_rational(RealBall(BigInt(2 * p * q), prec), BigRational(1, 2 * D));
  it.right = ball_pow_rational(RealBall(BigInt(2), prec), BigRational(1, 2 * D)) *
             ball_pow_rational(RealBall(disc, prec), BigRational(1, 2 * D * (D - 1)));
  return it;
}

/// The first `count` members of the totally ramified family in degree D.
inline std::vector<FamilyItem> ruppert_family(int D, int count) {
  std::vector<FamilyItem> out;
  for (auto [p, q] : prime_pairs(count)) out.push_back(family_item(D, p, q));
  return out;
}

} // namespace deltalab
