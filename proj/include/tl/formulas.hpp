#pragma once

// Closed-form enumerations and nest distributions, evaluated exactly.

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "tl/matching.hpp"

namespace tl {

/// A formula produced a non-integer where an integer is required.
class NonIntegralError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

mpz_class factorial(long n);
/// Zero when k < 0 or k > n.
mpz_class binomial(long n, long k);
/// Rising factorial (a)_k, k >= 0.
mpq_class pochhammer(const mpq_class& a, long k);

/// n x n ASMs: 1, 2, 7, 42, 429, ...
mpz_class asm_count(int n);
/// (2n+1) x (2n+1) vertically symmetric ASMs: 1, 3, 26, 646, ...
mpz_class vsasm_count(int n);
/// 2n x 2n half-turn symmetric ASMs: 2, 10, 140, ...
mpz_class htasm_count(int n);

struct NestDistribution {
  enum class Family { V, HT };
  Family family = Family::V;
  int n = 0;
  std::map<int, mpz_class> values;  // k = 1..n

  mpz_class total() const;
  /// sum k P(k) / sum P(k)
  mpq_class average() const;
};

/// Throws NonIntegralError if a value fails to be an integer.
NestDistribution nest_distribution_v(int n);
NestDistribution nest_distribution_ht(int n);

mpq_class avg_nests_ht(int n);
mpq_class avg_nests_v(int n);

/// Large-n approximations, reported as diagnostics only.
double avg_nests_ht_asymptotic(int n);
double avg_nests_v_asymptotic(int n);

/// Coefficient of [s,t,p] as a product over j = 1..s.
mpz_class hex_coeff_product(int s, int t, int p);
/// The same coefficient as an s x s determinant of binomial differences.
mpz_class hex_coeff_determinant(int s, int t, int p);

/// (^p (^s )^s (^t )^t )^p
Matching pattern_stp(int s, int t, int p);

/// Exact terminating 5F4 at argument 4 against its product evaluation.
/// Throws std::domain_error on a vanishing lower parameter.
bool strange_5f4_check(const mpq_class& a, const mpq_class& d, int m);
/// Left and right sides separately.
std::pair<mpq_class, mpq_class> strange_5f4_sides(const mpq_class& a, const mpq_class& d, int m);

/// Trial division; n > 0.
std::vector<std::pair<mpz_class, int>> factorize(const mpz_class& n);
/// "2^3*7", "1" for 1.
std::string factorization_string(const mpz_class& n);

/// Exact determinant of a square integer matrix (fraction-free).
mpz_class determinant(std::vector<std::vector<mpz_class>> m);

}  // namespace tl
