#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "tl/formulas.hpp"
#include "tl/stationary.hpp"

using namespace tl;

namespace {

std::vector<mpz_class> sorted(std::vector<mpz_class> v) {
  std::sort(v.begin(), v.end(), [](const mpz_class& a, const mpz_class& b) { return a > b; });
  return v;
}

std::vector<mpz_class> ints(std::initializer_list<long> xs) {
  std::vector<mpz_class> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("closed stationary vectors") {
  CHECK(sorted(stationary_state(build_hamiltonian(Boundary::Closed, 2)).coefficients) == ints({1}));
  CHECK(sorted(stationary_state(build_hamiltonian(Boundary::Closed, 4)).coefficients) == ints({2, 1}));
  CHECK(sorted(stationary_state(build_hamiltonian(Boundary::Closed, 6)).coefficients) == ints({11, 5, 5, 4, 1}));
  CHECK(sorted(stationary_state(build_hamiltonian(Boundary::Closed, 8)).coefficients) ==
        ints({170, 75, 75, 71, 56, 56, 50, 30, 14, 14, 14, 14, 6, 1}));

  const auto p6 = stationary_state(build_hamiltonian(Boundary::Closed, 6));
  CHECK(coefficient_of(p6, "()()()") == 11);
  CHECK(coefficient_of(p6, "(())()") == 5);
  CHECK(coefficient_of(p6, "()(())") == 5);
  CHECK(coefficient_of(p6, "(()())") == 4);
  CHECK(coefficient_of(p6, "((()))") == 1);
  CHECK_THROWS_AS(coefficient_of(p6, "()()"), MatchingError);
  CHECK(coefficient_of(stationary_state(build_hamiltonian(Boundary::Closed, 8)), "(((())))") == 1);
}

TEST_CASE("statistics") {
  const auto s6 = state_statistics(stationary_state(build_hamiltonian(Boundary::Closed, 6)));
  CHECK(s6.sum == 26);
  CHECK(s6.max == 11);
  CHECK(s6.min == 1);
  const auto s8 = state_statistics(stationary_state(build_hamiltonian(Boundary::Closed, 8)));
  CHECK(s8.sum == 646);
  CHECK(s8.max == 170);
  const auto s2 = state_statistics(stationary_state(build_hamiltonian(Boundary::Closed, 2)));
  CHECK(s2.sum == 1);
  CHECK(s2.max == 1);
}

TEST_CASE("the 2n = 6 Hamiltonian") {
  const auto h = build_hamiltonian(Boundary::Closed, 6);
  const std::vector<std::string> order = {"()()()", "(())()", "()(())", "(()())", "((()))"};
  const long printed[5][5] = {{-2, 2, 2, 0, 2}, {1, -3, 0, 1, 0}, {1, 0, -3, 1, 0}, {0, 1, 1, -3, 2}, {0, 0, 0, 1, -4}};
  auto pos = [&](const std::string& t) {
    return static_cast<std::size_t>(std::find(h.basis().begin(), h.basis().end(), t) - h.basis().begin());
  };
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) CHECK(h.at(pos(order[i]), pos(order[j])) == -printed[i][j]);
  }
  const auto h2 = build_hamiltonian(Boundary::Closed, 2);
  CHECK(h2.dimension() == 1);
  CHECK(h2.at(0, 0) == 0);
}

TEST_CASE("intensity matrices") {
  for (int n = 1; n <= 12; ++n) {
    if (n % 2 == 0) {
      CHECK(build_hamiltonian(Boundary::Closed, n).is_intensity_matrix());
      CHECK(build_hamiltonian(Boundary::Periodic, n).is_intensity_matrix());
    } else {
      CHECK(build_hamiltonian(Boundary::Closed, n).is_intensity_matrix());
    }
    CHECK(build_hamiltonian(Boundary::Mixed, n).is_intensity_matrix());
    if (n >= 2) CHECK(build_hamiltonian(Boundary::PeriodicDirected, n).is_intensity_matrix());
    if (n <= 10) CHECK(build_hamiltonian(Boundary::Open, n).is_intensity_matrix());
  }
  CHECK_THROWS_AS(build_hamiltonian(Boundary::Periodic, 5), MatchingError);
  CHECK(build_hamiltonian(Boundary::PeriodicDirected, 3).dimension() == 3);
}

TEST_CASE("diagonal counts non-trivial generators") {
  for (auto bc : {Boundary::Closed, Boundary::Mixed, Boundary::Open, Boundary::PeriodicDirected}) {
    const int n = 6;
    const auto h = build_hamiltonian(bc, n);
    const auto table = build_action_table(bc, n);
    for (std::size_t i = 0; i < h.dimension(); ++i) {
      long moved = 0;
      for (const auto& img : table.image) moved += img[i] != static_cast<int>(i);
      CHECK(h.at(i, i) == moved);
    }
  }
}

TEST_CASE("stationary states against an exact rational kernel") {
  struct Case {
    Boundary bc;
    int n;
  };
  const Case cases[] = {{Boundary::Closed, 4},  {Boundary::Closed, 7},  {Boundary::Closed, 10},
                        {Boundary::Mixed, 3},   {Boundary::Mixed, 6},   {Boundary::Open, 4},
                        {Boundary::Open, 6},    {Boundary::Periodic, 6}, {Boundary::Periodic, 8},
                        {Boundary::PeriodicDirected, 5}, {Boundary::PeriodicDirected, 8}};
  for (const auto& c : cases) {
    const auto h = build_hamiltonian(c.bc, c.n);
    const auto [dim, v] = oracle::kernel(h.dense());
    INFO(to_string(c.bc), " ", c.n);
    REQUIRE(dim == 1);
    CHECK(kernel_dimension(h) == 1);
    CHECK(stationary_state(h, KernelMethod::Bareiss).coefficients == v);
    CHECK(stationary_state(h, KernelMethod::Modular).coefficients == v);
  }
}

TEST_CASE("state invariants") {
  for (int n : {2, 4, 6, 8, 10, 12}) {
    const auto h = build_hamiltonian(Boundary::Closed, n);
    const auto s = stationary_state(h);
    mpz_class g = 0;
    for (const auto& x : s.coefficients) {
      CHECK(x > 0);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    }
    CHECK(g == 1);
    for (std::size_t i = 0; i < h.dimension(); ++i) {
      mpz_class r = 0;
      for (std::size_t j = 0; j < h.dimension(); ++j) r += mpz_class(static_cast<long>(h.at(i, j))) * s.coefficients[j];
      CHECK(r == 0);
    }
    const auto st = state_statistics(s);
    CHECK(st.sum == vsasm_count(n / 2));
    CHECK(st.min == 1);
  }
}

TEST_CASE("largest closed components") {
  const long cstcpp[] = {1, 2, 11, 170};
  for (int k = 1; k <= 4; ++k) {
    CHECK(state_statistics(stationary_state(build_hamiltonian(Boundary::Closed, 2 * k))).max == cstcpp[k - 1]);
  }
}
