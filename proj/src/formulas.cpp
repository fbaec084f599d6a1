#include "tl/formulas.hpp"

#include <cmath>
#include <numbers>

namespace tl {

namespace {

mpz_class as_integer(const mpq_class& q, const std::string& what) {
  if (q.get_den() != 1) throw NonIntegralError(what + " is not an integer: " + q.get_str());
  return q.get_num();
}

mpq_class ratio(const mpz_class& a, const mpz_class& b) {
  mpq_class q(a, b);
  q.canonicalize();
  return q;
}

void require_positive(int n, const char* what) {
  if (n < 1) throw std::domain_error(std::string(what) + " needs n >= 1");
}

}  // namespace

mpz_class factorial(long n) {
  if (n < 0) throw std::domain_error("factorial of a negative number");
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

mpz_class binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

mpq_class pochhammer(const mpq_class& a, long k) {
  if (k < 0) throw std::domain_error("negative Pochhammer index");
  mpq_class r = 1;
  for (long i = 0; i < k; ++i) r *= a + i;
  return r;
}

mpz_class asm_count(int n) {
  require_positive(n, "asm_count");
  mpq_class r = 1;
  for (int j = 0; j < n; ++j) r *= ratio(factorial(3 * j + 1), factorial(n + j));
  return as_integer(r, "A_n");
}

mpz_class vsasm_count(int n) {
  require_positive(n, "vsasm_count");
  mpq_class r = 1;
  for (int j = 0; j < n; ++j) {
    r *= ratio((3 * j + 2) * factorial(6 * j + 3) * factorial(2 * j + 1),
               factorial(4 * j + 2) * factorial(4 * j + 3));
  }
  return as_integer(r, "A^V");
}

mpz_class htasm_count(int n) {
  require_positive(n, "htasm_count");
  const mpz_class a = asm_count(n);
  mpq_class r = a * a;
  for (int j = 0; j < n; ++j) r *= mpq_class(3 * j + 2, 3 * j + 1);
  r.canonicalize();
  return as_integer(r, "A^HT");
}

mpz_class NestDistribution::total() const {
  mpz_class t = 0;
  for (const auto& [k, v] : values) t += v;
  return t;
}

mpq_class NestDistribution::average() const {
  mpz_class num = 0;
  for (const auto& [k, v] : values) num += k * v;
  return ratio(num, total());
}

NestDistribution nest_distribution_v(int n) {
  require_positive(n, "nest_distribution_v");
  NestDistribution d;
  d.family = NestDistribution::Family::V;
  d.n = n;
  const mpz_class av = vsasm_count(n);
  const mpq_class third_2n = pochhammer(mpq_class(1, 3), 2 * n);
  mpz_class p27 = 1;
  mpz_pow_ui(p27.get_mpz_t(), mpz_class(27).get_mpz_t(), static_cast<unsigned long>(n));
  for (int k = 1; k <= n; ++k) {
    mpz_class p4;
    mpz_pow_ui(p4.get_mpz_t(), mpz_class(4).get_mpz_t(), static_cast<unsigned long>(n + k));
    mpq_class v = mpq_class(k) * ratio(p4, p27) * pochhammer(mpq_class(1, 2), n + k) / third_2n;
    v *= ratio(factorial(3 * n + 1) * factorial(2 * n - k - 1), factorial(n) * factorial(n - k) * factorial(2 * n + k + 1));
    v *= av;
    d.values[k] = as_integer(v, "P_V(" + std::to_string(k) + ")");
  }
  return d;
}

NestDistribution nest_distribution_ht(int n) {
  require_positive(n, "nest_distribution_ht");
  NestDistribution d;
  d.family = NestDistribution::Family::HT;
  d.n = n;
  const mpz_class aht = htasm_count(n);
  for (int k = 1; k <= n; ++k) {
    const mpz_class kf = factorial(k);
    mpq_class v = ratio(3 * n * k * factorial(2 * k) * factorial(n + k - 1) * factorial(2 * n - k - 1),
                        kf * kf * factorial(n - k) * factorial(2 * n + k));
    v *= aht;
    d.values[k] = as_integer(v, "P_HT(" + std::to_string(k) + ")");
  }
  return d;
}

mpq_class avg_nests_ht(int n) {
  require_positive(n, "avg_nests_ht");
  mpq_class r = n;
  for (int j = 1; j < n; ++j) r *= mpq_class(3 * j + 1, 3 * j + 2);
  r.canonicalize();
  return r;
}

mpq_class avg_nests_v(int n) {
  require_positive(n, "avg_nests_v");
  mpq_class prod = 1;
  for (int j = 0; j < n; ++j) {
    mpq_class f((2 * j + 1) * (3 * j + 4), (j + 1) * (6 * j + 1));
    f.canonicalize();
    prod *= f;
  }
  return (prod - 1) / 3;
}

double avg_nests_ht_asymptotic(int n) {
  return std::tgamma(5.0 / 6.0) / std::sqrt(std::numbers::pi) * std::pow(2.0 * n, 2.0 / 3.0);
}

double avg_nests_v_asymptotic(int n) {
  return std::tgamma(1.0 / 3.0) * std::sqrt(3.0) / (2 * std::numbers::pi) * std::pow(2.0 * n, 2.0 / 3.0);
}

mpz_class hex_coeff_product(int s, int t, int p) {
  if (s < 0 || t < 0 || p < 0 || s + t + p < 1) throw std::domain_error("hex coefficient needs s,t,p >= 0, not all 0");
  mpq_class r = 1;
  for (int j = 1; j <= s; ++j) {
    mpq_class num = factorial(j - 1) * factorial(2 * t + 2 * p + 2 * j - 1);
    num *= pochhammer(2 * p + 2 * j, j) * pochhammer(3 * t + 2 * p + 3 * j, s - j);
    r *= num / mpq_class(factorial(t + 2 * p + s + 2 * j - 1) * factorial(t + s - j));
  }
  return as_integer(r, "a_[s,t,p] product");
}

mpz_class determinant(std::vector<std::vector<mpz_class>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m[k][k]) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(m[p][k]) == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

mpz_class hex_coeff_determinant(int s, int t, int p) {
  if (s < 0 || t < 0 || p < 0 || s + t + p < 1) throw std::domain_error("hex coefficient needs s,t,p >= 0, not all 0");
  const long N = 2L * (s + t + p);
  std::vector<std::vector<mpz_class>> m(static_cast<std::size_t>(s), std::vector<mpz_class>(static_cast<std::size_t>(s)));
  for (long i = 1; i <= s; ++i) {
    for (long j = 1; j <= s; ++j) {
      const long top = N + j - 2 * i;
      m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
          binomial(top, s + t - j) - binomial(top, s + t - j - 2 * i + 1);
    }
  }
  return determinant(std::move(m));
}

Matching pattern_stp(int s, int t, int p) {
  if (s < 0 || t < 0 || p < 0 || s + t + p < 1) throw MatchingError("[s,t,p] needs s,t,p >= 0, not all 0");
  std::string text;
  text.append(static_cast<std::size_t>(p), '(');
  text.append(static_cast<std::size_t>(s), '(');
  text.append(static_cast<std::size_t>(s), ')');
  text.append(static_cast<std::size_t>(t), '(');
  text.append(static_cast<std::size_t>(t), ')');
  text.append(static_cast<std::size_t>(p), ')');
  return parse_parentheses(text, MatchingClass::Perfect);
}

std::pair<mpq_class, mpq_class> strange_5f4_sides(const mpq_class& a, const mpq_class& d, int m) {
  if (m < 0) throw std::domain_error("m must be non-negative");
  const mpq_class upper[5] = {a, 1 + 2 * a / 3, 1 - 2 * d, mpq_class(1, 2) + a + m, mpq_class(-m)};
  const mpq_class lower[4] = {2 * a / 3, mpq_class(1, 2) + a + d, mpq_class(-2 * m), 1 + 2 * a + 2 * m};
  mpq_class sum = 0;
  mpq_class term = 1;
  for (int k = 0; k <= m; ++k) {
    sum += term;
    if (k == m) break;
    for (const auto& u : upper) term *= u + k;
    for (const auto& l : lower) {
      if (sgn(l + k) == 0) throw std::domain_error("vanishing lower parameter in 5F4");
      term /= l + k;
    }
    term *= 4;
    term /= k + 1;
  }
  const mpq_class rhs = pochhammer(1 - d, m) * pochhammer(a + 1, m) /
                        (pochhammer(mpq_class(1, 2), m) * pochhammer(mpq_class(1, 2) + a + d, m));
  return {sum, rhs};
}

bool strange_5f4_check(const mpq_class& a, const mpq_class& d, int m) {
  const auto [lhs, rhs] = strange_5f4_sides(a, d, m);
  return lhs == rhs;
}

std::vector<std::pair<mpz_class, int>> factorize(const mpz_class& n) {
  if (sgn(n) <= 0) throw std::domain_error("factorize needs a positive integer");
  std::vector<std::pair<mpz_class, int>> out;
  mpz_class r = n;
  for (mpz_class p = 2; p * p <= r; ++p) {
    int e = 0;
    while (mpz_divisible_p(r.get_mpz_t(), p.get_mpz_t())) {
      r /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (r > 1) out.emplace_back(r, 1);
  return out;
}

std::string factorization_string(const mpz_class& n) {
  const auto f = factorize(n);
  if (f.empty()) return "1";
  std::string s;
  for (const auto& [p, e] : f) {
    if (!s.empty()) s += "*";
    s += p.get_str();
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

}  // namespace tl
