#include "tl/verify.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include <json.hpp>

namespace tl {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string str(const mpz_class& v) { return v.get_str(); }
std::string str(const mpq_class& v) { return v.get_str(); }

Boundary boundary_of(GridFamily f) {
  switch (f) {
    case GridFamily::G: return Boundary::Periodic;
    case GridFamily::GV:
    case GridFamily::GVOdd: return Boundary::Closed;
    case GridFamily::GVH: return Boundary::Mixed;
    case GridFamily::GHT:
    case GridFamily::GHTOdd: return Boundary::PeriodicDirected;
  }
  return Boundary::Closed;
}

// Census key of a stationary basis element.
std::string census_key(GridFamily f, const std::string& basis_text) {
  if (f == GridFamily::GVOdd) return defect_to_right(parse_parentheses(basis_text)).text();
  return basis_text;
}

struct Comparison {
  std::string matching;
  mpz_class stationary;
  mpz_class census;
};

std::vector<Comparison> compare(const StationaryState& st, const Census& c) {
  std::vector<Comparison> out;
  std::map<std::string, mpz_class> remaining = c.counts;
  for (std::size_t i = 0; i < st.basis.size(); ++i) {
    const std::string key = census_key(c.grid.family, st.basis[i]);
    mpz_class count = 0;
    if (auto it = remaining.find(key); it != remaining.end()) {
      count = it->second;
      remaining.erase(it);
    }
    out.push_back({st.basis[i], st.coefficients[i], count});
  }
  for (const auto& [k, v] : remaining) out.push_back({k, 0, v});
  return out;
}

GridSpec grid_at(GridFamily f, int loop_n, Numbering numbering) {
  return make_grid(f, f == GridFamily::G ? loop_n / 2 : loop_n, numbering);
}

std::optional<mpz_class> known_total(GridFamily f, int loop_n) {
  switch (f) {
    case GridFamily::G: return asm_count(loop_n / 2);
    case GridFamily::GV: return vsasm_count(loop_n / 2);
    case GridFamily::GHT: return htasm_count(loop_n / 2);
    default: return std::nullopt;
  }
}

}  // namespace

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Skip: return "SKIP";
  }
  return "?";
}

Status VerificationReport::overall() const {
  bool any_pass = false;
  for (const auto& c : cases) {
    if (c.status == Status::Fail) return Status::Fail;
    any_pass |= c.status == Status::Pass;
  }
  return any_pass || cases.empty() ? Status::Pass : Status::Skip;
}

void VerificationReport::add(std::string parameters, const std::string& expected, const std::string& computed,
                             std::string note) {
  cases.push_back({std::move(parameters), expected, computed, expected == computed ? Status::Pass : Status::Fail,
                   std::move(note)});
}

void VerificationReport::skip(std::string parameters, std::string why) {
  cases.push_back({std::move(parameters), "", "", Status::Skip, std::move(why)});
}

std::string report_to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["subject"] = r.subject;
  j["overall"] = to_string(r.overall());
  j["seconds"] = r.seconds;
  j["notes"] = r.notes;
  auto& cases = j["cases"] = nlohmann::ordered_json::array();
  for (const auto& c : r.cases) {
    nlohmann::ordered_json x;
    x["parameters"] = c.parameters;
    x["expected"] = c.expected;
    x["computed"] = c.computed;
    x["status"] = to_string(c.status);
    if (!c.note.empty()) x["note"] = c.note;
    cases.push_back(std::move(x));
  }
  return j.dump(2);
}

std::string report_to_text(const VerificationReport& r) {
  std::ostringstream out;
  std::size_t pass = 0, fail = 0, skip = 0;
  for (const auto& c : r.cases) {
    (c.status == Status::Pass ? pass : c.status == Status::Fail ? fail : skip) += 1;
  }
  out << r.subject << ": " << to_string(r.overall()) << " (" << pass << " pass, " << fail << " fail, " << skip
      << " skip)\n";
  for (const auto& c : r.cases) {
    out << "  " << to_string(c.status) << "  " << c.parameters;
    if (c.status != Status::Skip) out << "  expected " << c.expected << "  computed " << c.computed;
    if (!c.note.empty()) out << "  [" << c.note << "]";
    out << "\n";
  }
  for (const auto& n : r.notes) out << "  note: " << n << "\n";
  return out.str();
}

bool stationary_within_budget(Boundary bc, int n, const Budgets& b) {
  switch (bc) {
    case Boundary::Closed: return n <= b.closed;
    case Boundary::Mixed: return n <= b.mixed;
    case Boundary::Open: return n <= b.open;
    case Boundary::Periodic:
    case Boundary::PeriodicDirected: return n <= b.periodic;
  }
  return false;
}

int calibration_size(GridFamily f) {
  switch (f) {
    case GridFamily::G: return 6;
    case GridFamily::GV: return 4;
    case GridFamily::GVOdd: return 5;
    case GridFamily::GVH: return 3;
    case GridFamily::GHT: return 4;
    case GridFamily::GHTOdd: return 5;
  }
  return 0;
}

GridSpec grid_for(Boundary bc, int n) {
  switch (bc) {
    case Boundary::Closed:
      return make_grid(n % 2 == 0 ? GridFamily::GV : GridFamily::GVOdd, n);
    case Boundary::Mixed: return make_grid(GridFamily::GVH, n);
    case Boundary::Periodic:
      if (n % 2 != 0) throw MatchingError("periodic boundaries need an even size");
      return make_grid(GridFamily::G, n / 2);
    case Boundary::PeriodicDirected:
      return make_grid(n % 2 == 0 ? GridFamily::GHT : GridFamily::GHTOdd, n);
    case Boundary::Open: break;
  }
  throw MatchingError("open boundaries have no FPL counterpart");
}

const StationaryState& VerifyContext::stationary(Boundary bc, int n) {
  std::lock_guard lock(mu_);
  auto& slot = states_[{static_cast<int>(bc), n}];
  if (!slot) slot = std::make_shared<const StationaryState>(stationary_state(build_hamiltonian(bc, n)));
  return *slot;
}

Census VerifyContext::census_of(const GridSpec& g) { return census(g, census_options); }

Calibration VerifyContext::calibration(GridFamily f) {
  std::lock_guard lock(mu_);
  if (auto it = calibrations_.find(f); it != calibrations_.end()) return it->second;
  Calibration cal;
  cal.family = f;
  cal.size = calibration_size(f);
  const auto& st = stationary(boundary_of(f), cal.size);
  std::string tried;
  for (Numbering num : {Numbering::CounterClockwise, Numbering::Clockwise}) {
    const auto cs = compare(st, census_of(grid_at(f, cal.size, num)));
    const auto bad = std::count_if(cs.begin(), cs.end(), [](const auto& c) { return c.stationary != c.census; });
    if (bad == 0) {
      cal.numbering = num;
      cal.record = std::string(to_string(f)) + ": " + tried + std::string(to_string(num)) + " numbering selected at size " +
                   std::to_string(cal.size) + " (" + std::to_string(cs.size()) + " matchings agree)";
      calibrations_[f] = cal;
      return cal;
    }
    tried += std::string(to_string(num)) + " rejected (" + std::to_string(bad) + " of " + std::to_string(cs.size()) +
             " matchings differ); ";
  }
  throw GridError("calibration unresolved for " + std::string(to_string(f)) + ": " + tried);
}

VerificationReport verify_rs(Boundary bc, int n, VerifyContext& ctx) {
  const auto t0 = Clock::now();
  VerificationReport r;
  r.subject = "rs " + std::string(to_string(bc)) + " " + std::to_string(n);
  const GridSpec probe = grid_for(bc, n);
  const std::string grid_name = std::string(to_string(probe.family)) + "(" + std::to_string(probe.n) + ")";
  if (!stationary_within_budget(bc, n, ctx.budgets)) {
    r.skip(grid_name, "stationary state over budget");
    return r;
  }
  if (!within_budget(probe, ctx.census_options.budget)) {
    r.skip(grid_name, "census over budget");
    return r;
  }
  const Calibration cal = ctx.calibration(probe.family);
  r.notes.push_back("calibration " + cal.record);
  const GridSpec g = make_grid(probe.family, probe.n, cal.numbering);
  const auto& st = ctx.stationary(bc, n);
  const Census c = ctx.census_of(g);
  for (const auto& cmp : compare(st, c)) {
    r.add("F=" + cmp.matching, str(cmp.stationary), str(cmp.census));
  }
  const mpz_class stat_sum = state_statistics(st).sum;
  r.add("total " + grid_name, str(known_total(probe.family, n).value_or(stat_sum)), str(c.total),
        known_total(probe.family, n) ? "ASM count formula" : "sum of the stationary state");
  r.seconds = since(t0);
  return r;
}

NestFamily nest_family_from_string(std::string_view s) {
  if (s == "v" || s == "V") return NestFamily::V;
  if (s == "ht" || s == "HT") return NestFamily::HT;
  throw std::invalid_argument("nest family must be v or ht");
}

const std::vector<TableEntry>& nest_table(NestFamily f) {
  // value as printed, then the printed factorisations
  static const std::vector<TableEntry> ht = {
      {2, mpq_class(8, 5), 8, 5},
      {3, mpq_class(21, 10), 3 * 7, 2 * 5},
      {4, mpq_class(28, 11), 4 * 7, 11},
      {5, mpq_class(65, 22), 5 * 13, 2 * 11},
      {6, mpq_class(624, 187), 16 * 3 * 13, 11 * 17},
      {7, mpq_class(3485, 935), 2 * 7 * 13 * 19, 5 * 11 * 17},
  };
  static const std::vector<TableEntry> v = {
      {2, mpq_class(5, 3), 5, 3},
      {3, mpq_class(29, 13), 29, 13},
      {4, mpq_class(52, 19), 4 * 13, 19},
      {5, mpq_class(913, 285), 11 * 83, 3 * 5 * 19},
      {6, mpq_class(1693, 465), 1693, 3 * 5 * 31},
      {7, mpq_class(69769, 17205), 7 * 9967, 3 * 5 * 31 * 37},
  };
  return f == NestFamily::HT ? ht : v;
}

VerificationReport verify_nest_table(NestFamily family) {
  const auto t0 = Clock::now();
  VerificationReport r;
  r.subject = std::string("nest table ") + (family == NestFamily::HT ? "ht" : "v");
  for (const auto& e : nest_table(family)) {
    const mpq_class formula = family == NestFamily::HT ? avg_nests_ht(e.n) : avg_nests_v(e.n);
    mpq_class factored(e.numerator_factored, e.denominator_factored);
    factored.canonicalize();
    const std::string params = "2n=" + std::to_string(2 * e.n);
    if (e.value.get_num() * factored.get_den() == factored.get_num() * e.value.get_den()) {
      r.add(params, str(e.value), str(formula));
    } else {
      r.add(params, str(factored), str(formula),
            "printed value " + str(e.value) + " disagrees with its printed factorisation " +
                factorization_string(e.numerator_factored) + "/" + factorization_string(e.denominator_factored) +
                "; compared with the factorisation");
    }
  }
  r.seconds = since(t0);
  return r;
}

VerificationReport verify_nests(NestFamily family, int n, VerifyContext& ctx) {
  const auto t0 = Clock::now();
  VerificationReport r;
  const bool ht = family == NestFamily::HT;
  r.subject = std::string("nests ") + (ht ? "ht " : "v ") + std::to_string(n);
  const NestDistribution formula = ht ? nest_distribution_ht(n) : nest_distribution_v(n);
  const mpq_class average = ht ? avg_nests_ht(n) : avg_nests_v(n);
  r.add("formula average", str(average), str(formula.average()), "closed product against the distribution");
  for (const auto& e : nest_table(family)) {
    if (e.n != n) continue;
    mpq_class printed(e.numerator_factored, e.denominator_factored);
    printed.canonicalize();
    r.add("table average", str(printed), str(average), e.value.get_num() * printed.get_den() == printed.get_num() * e.value.get_den() ? "" : "printed factorisation");
  }
  const GridFamily f = ht ? GridFamily::GHT : GridFamily::GV;
  const GridSpec probe = make_grid(f, 2 * n);
  if (!within_budget(probe, ctx.census_options.budget)) {
    r.skip("empirical " + std::string(to_string(f)) + "(" + std::to_string(2 * n) + ")", "census over budget");
    r.seconds = since(t0);
    return r;
  }
  const Calibration cal = ctx.calibration(f);
  r.notes.push_back("calibration " + cal.record);
  const Census c = ctx.census_of(make_grid(f, 2 * n, cal.numbering));
  std::map<int, mpz_class> empirical;
  for (const auto& [text, count] : c.counts) {
    empirical[ht ? nest_count(parse_directed(text)) : nest_count(parse_parentheses(text))] += count;
  }
  for (int k = 1; k <= n; ++k) {
    const auto it = empirical.find(k);
    r.add("P(" + std::to_string(k) + ")", str(formula.values.at(k)), str(it == empirical.end() ? mpz_class(0) : it->second));
  }
  for (const auto& [k, v] : empirical) {
    if (k < 1 || k > n) r.add("P(" + std::to_string(k) + ")", "0", str(v), "outside 1..n");
  }
  NestDistribution emp{formula.family, n, empirical};
  r.add("empirical average", str(average), str(emp.average()));
  const double asym = ht ? avg_nests_ht_asymptotic(n) : avg_nests_v_asymptotic(n);
  std::ostringstream diag;
  diag << "average/asymptotic = " << average.get_d() / asym << " (diagnostic only)";
  r.notes.push_back(diag.str());
  r.seconds = since(t0);
  return r;
}

VerificationReport verify_hex(int s_max, int t_max, int p_max, VerifyContext& ctx, int s_min, int t_min, int p_min) {
  const auto t0 = Clock::now();
  VerificationReport r;
  r.subject = "hex " + std::to_string(s_max) + " " + std::to_string(t_max) + " " + std::to_string(p_max);
  for (int s = s_min; s <= s_max; ++s) {
    for (int t = t_min; t <= t_max; ++t) {
      for (int p = p_min; p <= p_max; ++p) {
        if (s + t + p < 1) continue;
        const std::string params = "[" + std::to_string(s) + "," + std::to_string(t) + "," + std::to_string(p) + "]";
        const mpz_class prod = hex_coeff_product(s, t, p);
        r.add(params + " det", str(prod), str(hex_coeff_determinant(s, t, p)), "determinant against product");
        const int size = 2 * (s + t + p);
        if (!stationary_within_budget(Boundary::Closed, size, ctx.budgets)) {
          r.skip(params + " stationary", "closed " + std::to_string(size) + " over budget");
          continue;
        }
        const auto& st = ctx.stationary(Boundary::Closed, size);
        r.add(params + " stationary", str(prod), str(coefficient_of(st, pattern_stp(s, t, p))),
              pattern_stp(s, t, p).text());
      }
    }
  }
  r.seconds = since(t0);
  return r;
}

VerificationReport verify_identities(int n_max) {
  const auto t0 = Clock::now();
  VerificationReport r;
  r.subject = "identities " + std::to_string(n_max);
  for (int n = 1; n <= n_max; ++n) {
    const auto v = nest_distribution_v(n);
    const auto h = nest_distribution_ht(n);
    const std::string at = "n=" + std::to_string(n);
    r.add("sum P_V " + at, str(vsasm_count(n)), str(v.total()));
    r.add("sum P_HT " + at, str(htasm_count(n)), str(h.total()));
    r.add("average V " + at, str(avg_nests_v(n)), str(v.average()));
    r.add("average HT " + at, str(avg_nests_ht(n)), str(h.average()));
  }
  r.seconds = since(t0);
  return r;
}

VerificationReport verify_strange(int m_max) {
  const auto t0 = Clock::now();
  VerificationReport r;
  r.subject = "strange " + std::to_string(m_max);
  for (int m = 0; m <= m_max; ++m) {
    const auto [lhs, rhs] = strange_5f4_sides(mpq_class(3, 2), mpq_class(-1, 3), m);
    r.add("a=3/2 d=-1/3 m=" + std::to_string(m), str(rhs), str(lhs));
  }
  r.seconds = since(t0);
  return r;
}

}  // namespace tl
