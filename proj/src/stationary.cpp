#include "tl/stationary.hpp"

#include <algorithm>
#include <cstdint>
#include <future>
#include <optional>
#include <thread>

namespace tl {

namespace {

void check_size(Boundary bc, int n) {
  const bool ok = [&] {
    switch (bc) {
      case Boundary::Closed:
      case Boundary::Mixed:
      case Boundary::Open: return n >= 1;
      case Boundary::Periodic: return n >= 2 && n % 2 == 0;
      case Boundary::PeriodicDirected: return n >= 2;
    }
    return false;
  }();
  if (!ok) {
    throw MatchingError("size " + std::to_string(n) + " is not valid for " + std::string(to_string(bc)) +
                        " boundaries");
  }
}

// Fraction-free Gauss-Jordan elimination. On return the pivot rows share the
// common pivot value `scale`, every pivot column is zero elsewhere, and the
// entries are integer minors of the input.
struct Elimination {
  std::vector<std::vector<mpz_class>> m;
  std::vector<int> pivot_column;  // per pivot row
  mpz_class scale = 1;
};

Elimination eliminate(const LoopHamiltonian& h) {
  const std::size_t d = h.dimension();
  Elimination e;
  e.m.assign(d, std::vector<mpz_class>(d, 0));
  for (std::size_t c = 0; c < d; ++c) {
    for (const auto& [r, v] : h.column(c)) e.m[static_cast<std::size_t>(r)][c] = static_cast<long>(v);
  }
  auto& m = e.m;
  mpz_class prev = 1;
  mpz_class t;
  std::size_t r = 0;
  for (std::size_t c = 0; c < d && r < d; ++c) {
    std::size_t p = r;
    while (p < d && sgn(m[p][c]) == 0) ++p;
    if (p == d) continue;
    std::swap(m[p], m[r]);
    const mpz_class piv = m[r][c];
    for (std::size_t i = 0; i < d; ++i) {
      if (i == r) continue;
      auto& row = m[i];
      const mpz_class factor = row[c];
      if (sgn(factor) == 0) {
        if (piv == prev) continue;
        for (std::size_t j = 0; j < d; ++j) {
          if (sgn(row[j]) == 0) continue;
          row[j] *= piv;
          mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), prev.get_mpz_t());
        }
        continue;
      }
      for (std::size_t j = 0; j < d; ++j) {
        if (j == c) continue;
        t = piv * row[j];
        t -= factor * m[r][j];
        mpz_divexact(row[j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      row[c] = 0;
    }
    prev = piv;
    e.pivot_column.push_back(static_cast<int>(c));
    ++r;
  }
  e.scale = prev;
  return e;
}

using u64 = std::uint64_t;

bool is_prime(u64 p) {
  if (p < 2) return false;
  for (u64 q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

u64 pow_mod(u64 b, u64 e, u64 p) {
  u64 r = 1;
  for (b %= p; e; e >>= 1, b = b * b % p) {
    if (e & 1) r = r * b % p;
  }
  return r;
}

// Kernel vector mod p normalized to x_0 = 1, or nothing for an unlucky prime.
std::optional<std::vector<u64>> kernel_mod(const LoopHamiltonian& h, u64 p) {
  const std::size_t d = h.dimension();
  std::vector<std::vector<u64>> m(d, std::vector<u64>(d, 0));
  for (std::size_t c = 0; c < d; ++c) {
    for (const auto& [r, v] : h.column(c)) {
      const auto lv = static_cast<std::int64_t>(v % static_cast<std::int64_t>(p));
      m[static_cast<std::size_t>(r)][c] = static_cast<u64>(lv < 0 ? lv + static_cast<std::int64_t>(p) : lv);
    }
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < d && row < d; ++c) {
    std::size_t q = row;
    while (q < d && m[q][c] == 0) ++q;
    if (q == d) continue;
    std::swap(m[q], m[row]);
    const u64 inv = pow_mod(m[row][c], p - 2, p);
    auto& pr = m[row];
    for (std::size_t j = c; j < d; ++j) pr[j] = pr[j] * inv % p;
    for (std::size_t i = row + 1; i < d; ++i) {
      auto& ri = m[i];
      const u64 f = ri[c];
      if (f == 0) continue;
      const u64 nf = p - f;
      for (std::size_t j = c; j < d; ++j) {
        if (pr[j] != 0) ri[j] = (ri[j] + nf * pr[j]) % p;
      }
    }
    pivot_col.push_back(c);
    ++row;
  }
  if (pivot_col.size() + 1 != d) return std::nullopt;
  std::vector<bool> is_pivot(d, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  const auto free_col = static_cast<std::size_t>(std::find(is_pivot.begin(), is_pivot.end(), false) - is_pivot.begin());
  std::vector<u64> x(d, 0);
  x[free_col] = 1;
  for (std::size_t i = pivot_col.size(); i-- > 0;) {
    const std::size_t c = pivot_col[i];
    u64 acc = 0;
    for (std::size_t j = c + 1; j < d; ++j) {
      if (m[i][j] != 0 && x[j] != 0) acc = (acc + m[i][j] * x[j]) % p;
    }
    x[c] = (p - acc) % p;
  }
  if (x[0] == 0) return std::nullopt;
  const u64 inv0 = pow_mod(x[0], p - 2, p);
  for (auto& v : x) v = v * inv0 % p;
  return x;
}

// a/b with |a|, b <= sqrt(m/2) and a/b = u mod m.
std::optional<mpq_class> rational_reconstruction(const mpz_class& u, const mpz_class& m) {
  mpz_class bound;
  mpz_class half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = m, r1 = u, t0 = 0, t1 = 1;
  while (r1 > bound) {
    const mpz_class q = r0 / r1;
    mpz_class tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (sgn(t1) == 0 || abs(t1) > bound) return std::nullopt;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return std::nullopt;
  mpq_class q(r1, t1);
  q.canonicalize();
  return q;
}

}  // namespace

std::int64_t LoopHamiltonian::at(std::size_t row, std::size_t col) const {
  const auto& c = columns_.at(col);
  const auto it = c.find(static_cast<int>(row));
  return it == c.end() ? 0 : it->second;
}

std::vector<std::vector<std::int64_t>> LoopHamiltonian::dense() const {
  const std::size_t d = dimension();
  std::vector<std::vector<std::int64_t>> out(d, std::vector<std::int64_t>(d, 0));
  for (std::size_t c = 0; c < d; ++c) {
    for (const auto& [r, v] : columns_[c]) out[static_cast<std::size_t>(r)][c] = v;
  }
  return out;
}

bool LoopHamiltonian::is_intensity_matrix() const {
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    std::int64_t sum = 0;
    for (const auto& [r, v] : columns_[c]) {
      sum += v;
      if (static_cast<std::size_t>(r) != c && v > 0) return false;
    }
    if (sum != 0) return false;
  }
  return true;
}

LoopHamiltonian build_hamiltonian(Boundary bc, int n) {
  check_size(bc, n);
  const ActionTable table = build_action_table(bc, n);
  LoopHamiltonian h;
  h.bc_ = bc;
  h.n_ = n;
  h.cls_ = table.cls;
  h.basis_ = table.basis;
  h.columns_.resize(table.basis.size());
  for (const auto& images : table.image) {
    for (std::size_t i = 0; i < images.size(); ++i) {
      const int j = images[i];
      if (static_cast<std::size_t>(j) == i) continue;
      h.columns_[i][static_cast<int>(i)] += 1;
      h.columns_[i][j] -= 1;
    }
  }
  for (auto& col : h.columns_) std::erase_if(col, [](const auto& kv) { return kv.second == 0; });
  return h;
}

std::size_t kernel_dimension(const LoopHamiltonian& h) {
  return h.dimension() - eliminate(h).pivot_column.size();
}

namespace {

StationaryState finalize(const LoopHamiltonian& h, std::vector<mpz_class> x) {
  const std::size_t d = h.dimension();
  StationaryState s;
  s.bc = h.bc();
  s.n = h.n();
  s.basis = h.basis();

  mpz_class g = 0;
  for (const auto& v : x) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  if (sgn(g) == 0) throw KernelError("zero kernel vector");
  if (sgn(x[0]) < 0) g = -g;
  for (auto& v : x) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());

  for (std::size_t i = 0; i < d; ++i) {
    if (sgn(x[i]) <= 0) throw KernelError("stationary state is not positive at " + s.basis[i]);
  }
  // Exact residual H x = 0.
  std::vector<mpz_class> residual(d, 0);
  for (std::size_t c = 0; c < d; ++c) {
    for (const auto& [r, v] : h.column(c)) residual[static_cast<std::size_t>(r)] += x[c] * static_cast<long>(v);
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (sgn(residual[i]) != 0) throw KernelError("kernel residual is nonzero");
  }
  s.coefficients = std::move(x);
  return s;
}

StationaryState solve_bareiss(const LoopHamiltonian& h) {
  const std::size_t d = h.dimension();
  const Elimination e = eliminate(h);
  if (e.pivot_column.size() + 1 != d) {
    throw KernelError("kernel dimension is " + std::to_string(d - e.pivot_column.size()) + ", expected 1");
  }
  std::vector<bool> is_pivot(d, false);
  for (int c : e.pivot_column) is_pivot[static_cast<std::size_t>(c)] = true;
  const auto free_col = static_cast<std::size_t>(std::find(is_pivot.begin(), is_pivot.end(), false) - is_pivot.begin());

  std::vector<mpz_class> x(d, 0);
  x[free_col] = e.scale;
  for (std::size_t i = 0; i < e.pivot_column.size(); ++i) {
    x[static_cast<std::size_t>(e.pivot_column[i])] = -e.m[i][free_col];
  }
  return finalize(h, std::move(x));
}

// The mod-p rank is a lower bound for the rank over Q, so a prime with rank
// d-1 plus the exact residual check certifies a one-dimensional kernel.
StationaryState solve_modular(const LoopHamiltonian& h) {
  const std::size_t d = h.dimension();
  if (d == 1) return finalize(h, {mpz_class(1)});
  const unsigned workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  u64 next_prime = (u64{1} << 31) - 1;
  auto take_primes = [&](unsigned k) {
    std::vector<u64> ps;
    while (ps.size() < k) {
      if (is_prime(next_prime)) ps.push_back(next_prime);
      --next_prime;
    }
    return ps;
  };
  std::vector<mpz_class> residues(d, 0);
  mpz_class modulus = 1;
  int good = 0;
  for (int round = 0; round < 64; ++round) {
    const auto ps = take_primes(round == 0 ? std::max(2u, workers) : workers);
    std::vector<std::future<std::optional<std::vector<u64>>>> jobs;
    for (u64 p : ps) jobs.push_back(std::async(std::launch::async, [&h, p] { return kernel_mod(h, p); }));
    for (std::size_t k = 0; k < ps.size(); ++k) {
      const auto x = jobs[k].get();
      if (!x) continue;
      const mpz_class p(static_cast<unsigned long>(ps[k]));
      // CRT: r <- r + M * ((x - r) * M^{-1} mod p)
      mpz_class minv;
      mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), p.get_mpz_t());
      for (std::size_t i = 0; i < d; ++i) {
        mpz_class t = (mpz_class(static_cast<unsigned long>((*x)[i])) - residues[i]) * minv;
        mpz_mod(t.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
        residues[i] += modulus * t;
      }
      modulus *= p;
      ++good;
    }
    if (good == 0) continue;
    std::vector<mpq_class> y(d);
    bool ok = true;
    for (std::size_t i = 0; i < d && ok; ++i) {
      auto q = rational_reconstruction(residues[i], modulus);
      if (!q) ok = false;
      else y[i] = *q;
    }
    if (!ok) continue;
    mpz_class l = 1;
    for (const auto& q : y) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<mpz_class> x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = y[i].get_num() * (l / y[i].get_den());
    try {
      return finalize(h, std::move(x));
    } catch (const KernelError&) {
      // reconstruction not yet stable; add primes
    }
  }
  if (good == 0) throw KernelError("kernel dimension is not 1 modulo any tried prime");
  throw KernelError("modular kernel reconstruction did not converge");
}

}  // namespace

StationaryState stationary_state(const LoopHamiltonian& h, KernelMethod method) {
  const std::size_t d = h.dimension();
  // The all-ones row must annihilate H.
  for (std::size_t c = 0; c < d; ++c) {
    std::int64_t sum = 0;
    for (const auto& [r, v] : h.column(c)) sum += v;
    if (sum != 0) throw KernelError("column " + std::to_string(c) + " of the Hamiltonian does not sum to zero");
  }
  if (method == KernelMethod::Auto) method = d > 200 ? KernelMethod::Modular : KernelMethod::Bareiss;
  return method == KernelMethod::Bareiss ? solve_bareiss(h) : solve_modular(h);
}

StateStatistics state_statistics(const StationaryState& s) {
  StateStatistics st;
  st.sum = 0;
  if (s.coefficients.empty()) return st;
  st.max = s.coefficients.front();
  st.min = s.coefficients.front();
  for (const auto& v : s.coefficients) {
    st.sum += v;
    if (v > st.max) st.max = v;
    if (v < st.min) st.min = v;
  }
  return st;
}

mpz_class coefficient_of(const StationaryState& s, std::string_view text) {
  std::string key(text);
  if (s.bc == Boundary::Periodic) key = parse_parentheses(text, MatchingClass::PeriodicUndirected).text();
  const auto it = std::find(s.basis.begin(), s.basis.end(), key);
  if (it == s.basis.end()) throw MatchingError("'" + key + "' is not in the basis");
  return s.coefficients[static_cast<std::size_t>(it - s.basis.begin())];
}

mpz_class coefficient_of(const StationaryState& s, const Matching& m) { return coefficient_of(s, m.text()); }

mpz_class coefficient_of(const StationaryState& s, const DirectedMatching& m) {
  return coefficient_of(s, m.text());
}

}  // namespace tl
