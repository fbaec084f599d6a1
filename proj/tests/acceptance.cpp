// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "tl/formulas.hpp"
#include "tl/fpl.hpp"
#include "tl/generators.hpp"
#include "tl/stationary.hpp"
#include "tl/verify.hpp"

using namespace tl;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
  void report(const VerificationReport& r) {
    int fails = 0;
    for (const auto& c : r.cases) fails += c.status == Status::Fail;
    expect(fails == 0 && r.overall() == Status::Pass, r.subject + " (" + std::to_string(fails) + " failing cases)");
  }
};

std::vector<mpz_class> descending(std::vector<mpz_class> v) {
  std::sort(v.begin(), v.end(), [](const mpz_class& a, const mpz_class& b) { return a > b; });
  return v;
}

std::vector<mpz_class> ints(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

std::string total_of(const VerificationReport& r) {
  for (const auto& c : r.cases) {
    if (c.parameters.rfind("total", 0) == 0) return c.computed;
  }
  return "?";
}

Outcome stationary_vectors() {
  Outcome o;
  const std::vector<std::vector<mpz_class>> table = {
      ints({1}), ints({2, 1}), ints({11, 5, 5, 4, 1}), ints({170, 75, 75, 71, 56, 56, 50, 30, 14, 14, 14, 14, 6, 1})};
  for (int k = 1; k <= 4; ++k) {
    const auto s = stationary_state(build_hamiltonian(Boundary::Closed, 2 * k));
    o.expect(descending(s.coefficients) == table[static_cast<std::size_t>(k - 1)], "2n=" + std::to_string(2 * k));
  }
  const auto p6 = stationary_state(build_hamiltonian(Boundary::Closed, 6));
  const std::pair<const char*, long> printed[] = {
      {"()()()", 11}, {"(())()", 5}, {"()(())", 5}, {"(()())", 4}, {"((()))", 1}};
  for (const auto& [text, v] : printed) o.expect(coefficient_of(p6, text) == v, text);
  o.detail << " 2n=2,4,6,8 multisets; 2n=6 by matching";
  return o;
}

Outcome hamiltonian_structure() {
  Outcome o;
  const Budgets b;
  int built = 0;
  auto check = [&](Boundary bc, int n) {
    const auto h = build_hamiltonian(bc, n);
    o.expect(h.is_intensity_matrix(), std::string(to_string(bc)) + " " + std::to_string(n));
    // Independent column-sum and sign scan on the dense copy.
    const auto d = h.dense();
    for (std::size_t j = 0; j < d.size(); ++j) {
      long sum = 0;
      for (std::size_t i = 0; i < d.size(); ++i) {
        sum += d[i][j];
        if (i != j && d[i][j] > 0) o.expect(false, "positive off-diagonal");
      }
      if (sum != 0) o.expect(false, "column sum");
    }
    ++built;
  };
  for (int n = 1; n <= b.closed; ++n) check(Boundary::Closed, n);
  for (int n = 2; n <= b.periodic; n += 2) check(Boundary::Periodic, n);
  for (int n = 2; n <= b.periodic; ++n) check(Boundary::PeriodicDirected, n);
  for (int n = 1; n <= b.mixed; ++n) check(Boundary::Mixed, n);
  for (int n = 1; n <= b.open; ++n) check(Boundary::Open, n);

  const auto h = build_hamiltonian(Boundary::Closed, 6);
  const std::vector<std::string> order = {"()()()", "(())()", "()(())", "(()())", "((()))"};
  const long printed[5][5] = {{-2, 2, 2, 0, 2}, {1, -3, 0, 1, 0}, {1, 0, -3, 1, 0}, {0, 1, 1, -3, 2}, {0, 0, 0, 1, -4}};
  auto pos = [&](const std::string& t) {
    return static_cast<std::size_t>(std::find(h.basis().begin(), h.basis().end(), t) - h.basis().begin());
  };
  bool same = true;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) same = same && h.at(pos(order[i]), pos(order[j])) == -printed[i][j];
  o.expect(same, "2n=6 matrix");
  o.detail << " " << built << " Hamiltonians; 2n=6 matrix equal up to basis order";
  return o;
}

Outcome relations() {
  Outcome o;
  int checks = 0;
  for (auto cls : {MatchingClass::Perfect, MatchingClass::NearPerfect, MatchingClass::RightExtended,
                   MatchingClass::Extended, MatchingClass::PeriodicUndirected, MatchingClass::Directed}) {
    for (int n = 2; n <= 10; ++n) {
      if ((cls == MatchingClass::Perfect || cls == MatchingClass::PeriodicUndirected) && n % 2) continue;
      if (cls == MatchingClass::NearPerfect && n % 2 == 0) continue;
      for (const auto& c : check_relations(cls, n).checks) {
        // e_n e_1 e_n against the identity is recorded, not asserted.
        if (c.relation.size() > 4 && c.relation.compare(c.relation.size() - 4, 4, " = 1") == 0) continue;
        o.expect(c.holds, std::string(to_string(cls)) + " " + std::to_string(n) + ": " + c.relation);
        ++checks;
      }
    }
  }
  o.detail << " " << checks << " relations, all classes, n <= 10";
  return o;
}

Outcome fpl_bijection() {
  Outcome o;
  CensusOptions opt;
  const auto g3 = census(make_grid(GridFamily::G, 3), opt);
  std::multiset<long> card;
  for (const auto& [k, v] : g3.counts) card.insert(v.get_si());
  o.expect(g3.total == 7, "G(3) total");
  o.expect(enumerate_fpl(make_grid(GridFamily::G, 3)).size() == 7, "G(3) diagrams");
  o.expect(card == std::multiset<long>{1, 1, 1, 2, 2}, "G(3) cardinalities");
  for (int n = 1; n <= 5; ++n) {
    const auto c = census(make_grid(GridFamily::G, n), opt);
    o.expect(c.total == asm_count(n), "G(" + std::to_string(n) + ") vs A_n");
    o.expect(c.total == static_cast<long>(oracle::asms(n).size()), "G(" + std::to_string(n) + ") vs monotone triangles");
  }
  o.detail << " G(3)=7 {1,1,1,2,2}; G(n) totals 1,2,7,42,429";
  return o;
}

Outcome stationary_vs_census(VerifyContext& ctx) {
  Outcome o;
  struct Case {
    Boundary bc;
    int n;
    const char* total;
  };
  const Case cases[] = {{Boundary::Closed, 4, "3"},        {Boundary::Closed, 6, "26"},
                        {Boundary::Closed, 8, "646"},      {Boundary::Periodic, 6, "7"},
                        {Boundary::Periodic, 8, "42"},     {Boundary::Mixed, 3, "6"},
                        {Boundary::Mixed, 4, "33"},        {Boundary::PeriodicDirected, 4, "10"},
                        {Boundary::PeriodicDirected, 5, ""}, {Boundary::PeriodicDirected, 6, "140"}};
  for (const auto& c : cases) {
    const auto r = verify_rs(c.bc, c.n, ctx);
    o.report(r);
    if (*c.total) o.expect(total_of(r) == c.total, r.subject + " total");
    o.detail << " " << to_string(c.bc) << c.n << "=" << total_of(r);
  }
  for (auto f : {GridFamily::GV, GridFamily::G, GridFamily::GVH, GridFamily::GHT}) {
    o.detail << "; " << ctx.calibration(f).record;
  }
  return o;
}

Outcome nests(VerifyContext& ctx) {
  Outcome o;
  for (int n : {2, 3, 4}) {
    const auto r = verify_nests(NestFamily::V, n, ctx);
    o.report(r);
    o.expect(std::none_of(r.cases.begin(), r.cases.end(), [](const auto& c) { return c.status == Status::Skip; }),
             r.subject + " has skipped cases");
  }
  for (int n : {2, 3}) {
    const auto r = verify_nests(NestFamily::HT, n, ctx);
    o.report(r);
    o.expect(std::none_of(r.cases.begin(), r.cases.end(), [](const auto& c) { return c.status == Status::Skip; }),
             r.subject + " has skipped cases");
  }
  const auto ht = verify_nest_table(NestFamily::HT);
  const auto v = verify_nest_table(NestFamily::V);
  o.report(ht);
  o.report(v);
  o.detail << " V 2n=4,6,8 and HT 2n=4,6 empirical = formula; tables " << ht.cases.size() << "+" << v.cases.size()
           << " entries";
  for (const auto& c : ht.cases) {
    if (!c.note.empty()) o.detail << "; " << c.parameters << ": " << c.note;
  }
  return o;
}

Outcome identities() {
  Outcome o;
  const auto id = verify_identities(30);
  const auto st = verify_strange(10);
  o.report(id);
  o.report(st);
  o.detail << " " << id.cases.size() << " identity cases n <= 30; 5F4 m = 0..10";
  return o;
}

Outcome hexagon(VerifyContext& ctx) {
  Outcome o;
  VerifyContext local;
  local.budgets.closed = 12;  // stationary leg for s+t+p <= 6
  const auto small = verify_hex(6, 6, 6, local);
  const auto cube = verify_hex(5, 5, 5, local, 1, 1, 1);
  o.report(small);
  o.report(cube);
  int three_way = 0;
  for (const auto& c : small.cases) {
    if (c.status == Status::Pass && c.parameters.find("stationary") != std::string::npos) ++three_way;
  }
  o.expect(three_way == 83, "three-way cases " + std::to_string(three_way) + " of 83");
  o.expect(coefficient_of(ctx.stationary(Boundary::Closed, 6), pattern_stp(1, 1, 1)) == 4, "a[1,1,1]");
  o.expect(hex_coeff_product(1, 1, 1) == 4 && hex_coeff_determinant(1, 1, 1) == 4, "a[1,1,1] formulas");
  o.detail << " " << three_way << " three-way triples (s+t+p <= 6); det = product on 1..5 cube";
  return o;
}

}  // namespace

int main() {
  VerifyContext ctx;
  ctx.census_options.cache_dir = default_cache_dir();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"stationary vectors, closed", stationary_vectors},
      {"Hamiltonian structure", hamiltonian_structure},
      {"TL relations", relations},
      {"FPL bijection", fpl_bijection},
      {"stationary state = FPL census", [&] { return stationary_vs_census(ctx); }},
      {"nest distributions", [&] { return nests(ctx); }},
      {"formula identities", identities},
      {"hexagon coefficients", [&] { return hexagon(ctx); }},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << " [error: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << "criterion " << i + 1 << ": " << (o.ok ? "PASS" : "FAIL") << "  " << criteria[i].first << " ("
              << timing << ")" << o.detail.str() << "\n";
    all = all && o.ok;
  }
  return all ? 0 : 1;
}
