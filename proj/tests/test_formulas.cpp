#include <doctest.h>

#include "oracles.hpp"
#include "tl/formulas.hpp"

using namespace tl;

namespace {

mpq_class q(long a, long b) {
  mpq_class r(a, b);
  r.canonicalize();
  return r;
}

long count_if_asm(int n, bool (*keep)(const oracle::Matrix&)) {
  long c = 0;
  for (const auto& a : oracle::asms(n)) c += keep(a);
  return c;
}

bool any(const oracle::Matrix&) { return true; }

}  // namespace

TEST_CASE("basic helpers") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(10) == 3628800);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(5, -1) == 0);
  CHECK(binomial(5, 6) == 0);
  CHECK(pochhammer(q(1, 2), 3) == q(15, 8));
  CHECK(pochhammer(q(-2, 1), 3) == 0);
  CHECK_THROWS(factorial(-1));
}

TEST_CASE("ASM counts") {
  const long a[] = {1, 2, 7, 42, 429, 7436};
  for (int n = 1; n <= 6; ++n) CHECK(asm_count(n) == a[n - 1]);
  for (int n = 1; n <= 6; ++n) CHECK(asm_count(n) == count_if_asm(n, any));
  CHECK(vsasm_count(1) == 1);
  CHECK(vsasm_count(2) == 3);
  CHECK(vsasm_count(3) == 26);
  CHECK(vsasm_count(4) == 646);
  CHECK(vsasm_count(2) == count_if_asm(5, oracle::mirror_symmetric));
  CHECK(vsasm_count(3) == count_if_asm(7, oracle::mirror_symmetric));
  CHECK(htasm_count(1) == 2);
  CHECK(htasm_count(2) == 10);
  CHECK(htasm_count(3) == 140);
  for (int n = 1; n <= 3; ++n) CHECK(htasm_count(n) == count_if_asm(2 * n, oracle::half_turn_symmetric));
  CHECK_THROWS(asm_count(0));
}

TEST_CASE("nest distributions") {
  const auto v2 = nest_distribution_v(2);
  CHECK(v2.total() == 3);
  CHECK(v2.average() == q(5, 3));
  CHECK(nest_distribution_v(3).average() == q(29, 13));
  const auto h2 = nest_distribution_ht(2);
  CHECK(h2.values.at(1) * 5 == 2 * h2.total());
  CHECK(h2.values.at(2) * 5 == 3 * h2.total());
  CHECK(h2.average() == q(8, 5));
  CHECK(nest_distribution_ht(4).average() == q(28, 11));
}

TEST_CASE("averages reproduce the tables") {
  const std::pair<long, long> ht[] = {{8, 5}, {21, 10}, {28, 11}, {65, 22}, {624, 187}};
  for (int n = 2; n <= 6; ++n) CHECK(avg_nests_ht(n) == q(ht[n - 2].first, ht[n - 2].second));
  // The 2n = 14 entry is printed as 3485/935; its printed factorisation is
  // 2*7*13*19 / 5*11*17.
  CHECK(avg_nests_ht(7) == q(2 * 7 * 13 * 19, 5 * 11 * 17));
  const std::pair<long, long> v[] = {{5, 3}, {29, 13}, {52, 19}, {913, 285}, {1693, 465}, {69769, 17205}};
  for (int n = 2; n <= 7; ++n) CHECK(avg_nests_v(n) == q(v[n - 2].first, v[n - 2].second));
}

TEST_CASE("formula identities up to n = 30") {
  for (int n = 1; n <= 30; ++n) {
    const auto v = nest_distribution_v(n);
    const auto h = nest_distribution_ht(n);
    CHECK(v.total() == vsasm_count(n));
    CHECK(h.total() == htasm_count(n));
    CHECK(v.average() == avg_nests_v(n));
    CHECK(h.average() == avg_nests_ht(n));
    for (const auto& [k, x] : v.values) CHECK(x >= 0);
    for (const auto& [k, x] : h.values) CHECK(x >= 0);
  }
}

TEST_CASE("asymptotics are diagnostics") {
  CHECK(avg_nests_ht_asymptotic(50) > 0);
  const double r = avg_nests_ht(50).get_d() / avg_nests_ht_asymptotic(50);
  CHECK(r > 0.99);
  CHECK(r < 1.01);
}

TEST_CASE("hexagon coefficients") {
  CHECK(hex_coeff_product(1, 1, 1) == 4);
  CHECK(hex_coeff_determinant(1, 1, 1) == 4);
  CHECK(hex_coeff_product(0, 2, 3) == 1);
  CHECK(hex_coeff_determinant(0, 2, 3) == 1);
  CHECK(hex_coeff_product(2, 1, 3) == hex_coeff_determinant(2, 1, 3));
  CHECK_THROWS(hex_coeff_product(0, 0, 0));
  for (int s = 1; s <= 5; ++s) {
    for (int t = 1; t <= 5; ++t) {
      for (int p = 1; p <= 5; ++p) {
        const mpz_class prod = hex_coeff_product(s, t, p);
        CHECK(prod == hex_coeff_determinant(s, t, p));
        // Independent rational determinant of the same binomial matrix.
        const long big = 2L * (s + t + p);
        std::vector<std::vector<mpq_class>> m(static_cast<std::size_t>(s), std::vector<mpq_class>(static_cast<std::size_t>(s)));
        for (long i = 1; i <= s; ++i) {
          for (long j = 1; j <= s; ++j) {
            m[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
                oracle::choose(big + j - 2 * i, s + t - j) - oracle::choose(big + j - 2 * i, s + t - j - 2 * i + 1);
          }
        }
        CHECK(oracle::determinant(m) == mpq_class(prod));
      }
    }
  }
}

TEST_CASE("integer determinant") {
  CHECK(determinant({}) == 1);
  CHECK(determinant({{0, 1}, {1, 0}}) == -1);
  CHECK(determinant({{2, 3}, {4, 6}}) == 0);
  CHECK(determinant({{0, 0, 1}, {0, 2, 0}, {3, 0, 0}}) == -6);
}

TEST_CASE("[s,t,p] patterns") {
  CHECK(pattern_stp(2, 1, 3).text() == "((((())())))");
  CHECK(pattern_stp(1, 1, 1).text() == "(()())");
  CHECK(pattern_stp(0, 1, 1).text() == "(())");
  CHECK_THROWS(pattern_stp(0, 0, 0));
}

TEST_CASE("the 5F4 identity") {
  const mpq_class a = q(3, 2), d = q(-1, 3);
  for (int m = 0; m <= 10; ++m) {
    CHECK(strange_5f4_check(a, d, m));
    const std::vector<mpq_class> up = {a, 1 + 2 * a / 3, 1 - 2 * d, q(1, 2) + a + m, mpq_class(-m)};
    const std::vector<mpq_class> down = {2 * a / 3, q(1, 2) + a + d, mpq_class(-2 * m), 1 + 2 * a + 2 * m};
    const auto [lhs, rhs] = strange_5f4_sides(a, d, m);
    CHECK(lhs == oracle::hyper_5f4(up, down, m + 1));
    CHECK(rhs == oracle::rising(1 - d, m) * oracle::rising(a + 1, m) /
                     (oracle::rising(q(1, 2), m) * oracle::rising(q(1, 2) + a + d, m)));
  }
  const auto [l0, r0] = strange_5f4_sides(q(7, 3), q(1, 5), 0);
  CHECK(l0 == 1);
  CHECK(r0 == 1);
}

TEST_CASE("factorisation") {
  CHECK(factorization_string(1) == "1");
  CHECK(factorization_string(8) == "2^3");
  CHECK(factorization_string(3458) == "2*7*13*19");
  CHECK(factorization_string(17205) == "3*5*31*37");
  CHECK_THROWS(factorize(0));
}
