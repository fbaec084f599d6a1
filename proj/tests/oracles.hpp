#pragma once

// Slow, independent reference computations used as test oracles. Nothing in
// here calls into the library except for plain value types.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Matrix = std::vector<std::vector<int>>;

/// All n x n ASMs, built from monotone triangles with bottom row 1..n.
/// Row k of the ASM is the indicator of triangle row k minus that of row k-1.
inline std::vector<Matrix> asms(int n) {
  std::vector<Matrix> out;
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n));
  rows[static_cast<std::size_t>(n - 1)].resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(i)] = i + 1;

  auto emit = [&]() {
    Matrix a(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
    for (int k = 0; k < n; ++k) {
      for (int x : rows[static_cast<std::size_t>(k)]) a[static_cast<std::size_t>(k)][static_cast<std::size_t>(x - 1)] += 1;
      if (k > 0) {
        for (int x : rows[static_cast<std::size_t>(k - 1)]) a[static_cast<std::size_t>(k)][static_cast<std::size_t>(x - 1)] -= 1;
      }
    }
    out.push_back(std::move(a));
  };

  // Row k has k+1 entries, strictly increasing, with below[i] <= row[i] <= below[i+1].
  auto fill = [&](auto&& self, int k, int i) -> void {
    if (k < 0) {
      emit();
      return;
    }
    const auto& below = rows[static_cast<std::size_t>(k + 1)];
    auto& row = rows[static_cast<std::size_t>(k)];
    if (i == k + 1) {
      self(self, k - 1, 0);
      return;
    }
    const int lo = std::max(below[static_cast<std::size_t>(i)], i > 0 ? row[static_cast<std::size_t>(i - 1)] + 1 : 1);
    const int hi = below[static_cast<std::size_t>(i + 1)];
    for (int x = lo; x <= hi; ++x) {
      row[static_cast<std::size_t>(i)] = x;
      self(self, k, i + 1);
    }
  };
  for (int k = 0; k < n - 1; ++k) rows[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(k + 1), 0);
  if (n == 1) emit();
  else fill(fill, n - 2, 0);
  return out;
}

inline bool mirror_symmetric(const Matrix& a) {
  for (const auto& r : a) {
    if (!std::equal(r.begin(), r.end(), r.rbegin())) return false;
  }
  return true;
}

inline bool half_turn_symmetric(const Matrix& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i][j] != a[n - 1 - i][n - 1 - j]) return false;
    }
  }
  return true;
}

inline bool both_mirrors(const Matrix& a) {
  Matrix t(a.rbegin(), a.rend());
  return mirror_symmetric(a) && t == a;
}

/// Every string over "()" of length len, plus those with one '|' when
/// with_defect is set, filtered by a predicate on the string.
template <class Pred>
std::vector<std::string> strings(int len, bool with_defect, Pred keep) {
  std::vector<std::string> out;
  const std::string alphabet = with_defect ? "()|" : "()";
  std::string s(static_cast<std::size_t>(len), '(');
  auto rec = [&](auto&& self, int i) -> void {
    if (i == len) {
      if (keep(s)) out.push_back(s);
      return;
    }
    for (char c : alphabet) {
      s[static_cast<std::size_t>(i)] = c;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// Depth profile: returns false if a ')' closes nothing (when allow_left is
/// false), and reports the final depth and whether '|' sits at depth 0.
struct Profile {
  bool ok = true;
  int depth = 0;
  int defects = 0;
  bool defect_enclosed = false;
  int unmatched_close = 0;
};

inline Profile profile(const std::string& s) {
  Profile p;
  std::vector<char> stack;
  for (char c : s) {
    if (c == '(') stack.push_back(c);
    else if (c == ')') {
      if (stack.empty()) ++p.unmatched_close;
      else stack.pop_back();
    } else {
      ++p.defects;
      if (!stack.empty()) p.defect_enclosed = true;
    }
  }
  p.depth = static_cast<int>(stack.size());
  return p;
}

inline std::vector<std::string> perfect(int len) {
  return strings(len, false, [](const std::string& s) {
    const auto p = profile(s);
    return p.depth == 0 && p.unmatched_close == 0;
  });
}

inline std::vector<std::string> near_perfect(int len) {
  return strings(len, true, [](const std::string& s) {
    const auto p = profile(s);
    return p.defects == 1 && !p.defect_enclosed && p.depth == 0 && p.unmatched_close == 0;
  });
}

inline std::vector<std::string> right_extended(int len) {
  return strings(len, false, [](const std::string& s) { return profile(s).unmatched_close == 0; });
}

inline std::vector<std::string> extended(int len) {
  return strings(len, false, [](const std::string&) { return true; });
}

/// Returns of the Dyck path to the axis.
inline int returns_to_axis(const std::string& s) {
  int h = 0, r = 0;
  for (char c : s) {
    h += c == '(' ? 1 : -1;
    if (h == 0) ++r;
  }
  return r;
}

/// e_j on a perfect line matching given as a partner array (0-based), with
/// a closed loop erased.
inline std::vector<int> e_perfect(std::vector<int> p, int j) {
  const int a = j - 1, b = j;
  if (p[static_cast<std::size_t>(a)] == b) return p;
  const int x = p[static_cast<std::size_t>(a)], y = p[static_cast<std::size_t>(b)];
  p[static_cast<std::size_t>(a)] = b;
  p[static_cast<std::size_t>(b)] = a;
  p[static_cast<std::size_t>(x)] = y;
  p[static_cast<std::size_t>(y)] = x;
  return p;
}

inline std::vector<int> partners(const std::string& s) {
  std::vector<int> p(s.size(), -1), st;
  for (int i = 0; i < static_cast<int>(s.size()); ++i) {
    if (s[static_cast<std::size_t>(i)] == '(') st.push_back(i);
    else {
      p[static_cast<std::size_t>(i)] = st.back();
      p[static_cast<std::size_t>(st.back())] = i;
      st.pop_back();
    }
  }
  return p;
}

inline std::string render(const std::vector<int>& p) {
  std::string s;
  for (int i = 0; i < static_cast<int>(p.size()); ++i) s += p[static_cast<std::size_t>(i)] > i ? '(' : ')';
  return s;
}

/// Kernel of an integer matrix by Gauss-Jordan over the rationals. Returns
/// the kernel dimension and, when it is one, a primitive positive-leading
/// integer vector.
inline std::pair<std::size_t, std::vector<mpz_class>> kernel(const std::vector<std::vector<std::int64_t>>& m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<std::vector<mpq_class>> a(rows, std::vector<mpq_class>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = static_cast<long>(m[i][j]);
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const mpq_class inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const mpq_class f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  const std::size_t dim = cols - r;
  if (dim != 1) return {dim, {}};
  std::size_t free_col = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(c)) == pivot_col.end()) free_col = c;
  }
  std::vector<mpq_class> x(cols, 0);
  x[free_col] = 1;
  for (std::size_t i = 0; i < r; ++i) x[static_cast<std::size_t>(pivot_col[i])] = -a[i][free_col];
  mpz_class l = 1, g = 0;
  for (const auto& q : x) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  std::vector<mpz_class> v;
  for (const auto& q : x) {
    mpq_class s = q * l;
    v.push_back(s.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_num_mpz_t());
  }
  if (v[0] < 0) g = -g;
  for (auto& e : v) e /= g;
  return {1, v};
}

/// Determinant over the rationals with partial pivoting.
inline mpq_class determinant(std::vector<std::vector<mpq_class>> a) {
  const std::size_t n = a.size();
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      const mpq_class f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

inline mpz_class choose(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline mpq_class rising(mpq_class a, long k) {
  mpq_class r = 1;
  for (long i = 0; i < k; ++i) r *= a + i;
  return r;
}

/// Terminating 5F4 at z = 4 by the term-by-term definition.
inline mpq_class hyper_5f4(const std::vector<mpq_class>& up, const std::vector<mpq_class>& down, int terms) {
  mpq_class sum = 0;
  mpz_class kfact = 1;
  mpz_class four = 1;
  for (int k = 0; k < terms; ++k) {
    if (k > 0) {
      kfact *= k;
      four *= 4;
    }
    mpq_class t = mpq_class(four) / mpq_class(kfact);
    for (const auto& u : up) t *= rising(u, k);
    for (const auto& d : down) t /= rising(d, k);
    sum += t;
  }
  return sum;
}

}  // namespace oracle
