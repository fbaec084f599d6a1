#include "tl/fpl.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <exception>
#include <map>
#include <thread>

namespace tl {

namespace {

bool on_a(bool corner_a, int r, int c) { return ((r + c) % 2 == 0) == corner_a; }

std::vector<Site> designated_sites(int rows, int cols, bool corner_a, bool with_right) {
  std::vector<Site> out;
  for (int r = 0; r < rows; ++r) {
    if (on_a(corner_a, r, 0)) out.push_back({Site::Side::Left, r, 0});
  }
  for (int c = 0; c < cols; ++c) {
    if (!on_a(corner_a, rows - 1, c)) out.push_back({Site::Side::Bottom, rows, c});
  }
  if (with_right) {
    for (int r = rows - 1; r >= 0; --r) {
      if (on_a(corner_a, r, cols - 1)) out.push_back({Site::Side::Right, r, cols});
    }
  }
  for (int c = cols - 1; c >= 0; --c) {
    if (!on_a(corner_a, 0, c)) out.push_back({Site::Side::Top, 0, c});
  }
  return out;
}

// Edge of a rows x cols grid: horizontal edges left of (r,c), vertical ones
// above (r,c).
struct Edge {
  bool horizontal = true;
  int r = 0;
  int c = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

bool occupied(const FplConfig& f, const Edge& e) {
  return e.horizontal ? f.h[static_cast<std::size_t>(e.r)][static_cast<std::size_t>(e.c)]
                      : f.v[static_cast<std::size_t>(e.r)][static_cast<std::size_t>(e.c)];
}

struct Region {
  int r0, r1, c0, c1;
  bool axis_right = false;
  bool axis_bottom = false;
  bool contains(int r, int c) const { return r >= r0 && r <= r1 && c >= c0 && c <= c1; }
};

// Follows a strand that enters the region through `e` at vertex (r,c) and
// returns the edge through which it leaves.
Edge trace(const FplConfig& f, const Region& reg, Edge e, int r, int c) {
  for (std::size_t steps = 0;; ++steps) {
    if (steps > static_cast<std::size_t>(4 * f.rows * f.cols + 4)) throw GridError("strand does not terminate");
    const std::array<Edge, 4> inc{Edge{true, r, c}, Edge{true, r, c + 1}, Edge{false, r, c}, Edge{false, r + 1, c}};
    int found = -1;
    int degree = 0;
    for (int k = 0; k < 4; ++k) {
      if (!occupied(f, inc[static_cast<std::size_t>(k)])) continue;
      ++degree;
      if (inc[static_cast<std::size_t>(k)] != e) found = k;
    }
    if (degree != 2 || found < 0) throw GridError("vertex is not fully packed");
    static constexpr int dr[4] = {0, 0, -1, 1};
    static constexpr int dc[4] = {-1, 1, 0, 0};
    e = inc[static_cast<std::size_t>(found)];
    r += dr[found];
    c += dc[found];
    if (r < 0 || c < 0 || r >= f.rows || c >= f.cols || !reg.contains(r, c)) return e;
  }
}

struct Crossing {
  Edge edge;
  int r, c;  // inside vertex
};

// Occupied edges entering the region, counterclockwise. With an axis side
// the walk starts just after the axis, i.e. on the top side next to it.
std::vector<Crossing> boundary_crossings(const FplConfig& f, const Region& reg, bool with_axis_sides) {
  std::vector<Crossing> out;
  auto add = [&](Edge e, int r, int c) {
    if (occupied(f, e)) out.push_back({e, r, c});
  };
  auto top = [&] {
    for (int c = reg.c1; c >= reg.c0; --c) add({false, reg.r0, c}, reg.r0, c);
  };
  const bool axis = reg.axis_right || reg.axis_bottom;
  if (axis) top();
  for (int r = reg.r0; r <= reg.r1; ++r) add({true, r, reg.c0}, r, reg.c0);
  if (!reg.axis_bottom || with_axis_sides) {
    for (int c = reg.c0; c <= reg.c1; ++c) add({false, reg.r1 + 1, c}, reg.r1, c);
  }
  if (!reg.axis_right || with_axis_sides) {
    for (int r = reg.r1; r >= reg.r0; --r) add({true, r, reg.c1 + 1}, r, reg.c1);
  }
  if (!axis) top();
  return out;
}

bool on_axis_side(const Region& reg, const Edge& e) {
  if (reg.axis_right && e.horizontal && e.c == reg.c1 + 1) return true;
  if (reg.axis_bottom && !e.horizontal && e.r == reg.r1 + 1) return true;
  return false;
}

Region fundamental_region(const GridSpec& g) {
  const int N = g.square;
  switch (g.family) {
    case GridFamily::G:
    case GridFamily::GHT:
    case GridFamily::GHTOdd: return {0, N - 1, 0, N - 1};
    case GridFamily::GV: return {0, N - 1, 0, g.n / 2 - 1, true, false};
    case GridFamily::GVOdd: return {0, N - 1, 0, (N - 1) / 2 - 1, true, false};
    case GridFamily::GVH: return {1, g.n, 1, g.n, true, true};
  }
  return {0, 0, 0, 0};
}

std::string read_line_matching(const FplConfig& f, const GridSpec& g) {
  const Region reg = fundamental_region(g);
  auto sites = boundary_crossings(f, reg, false);
  if (g.numbering == Numbering::Clockwise) std::reverse(sites.begin(), sites.end());
  if (static_cast<int>(sites.size()) != g.sites) {
    throw GridError("found " + std::to_string(sites.size()) + " boundary sites, expected " + std::to_string(g.sites));
  }
  std::map<Edge, int> index;
  for (std::size_t i = 0; i < sites.size(); ++i) index[sites[i].edge] = static_cast<int>(i);
  std::vector<int> partner(sites.size(), kDefect);
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const Edge out = trace(f, reg, sites[i].edge, sites[i].r, sites[i].c);
    if (auto it = index.find(out); it != index.end()) {
      partner[i] = it->second;
    } else if (on_axis_side(reg, out)) {
      partner[i] = kRight;
    } else {
      throw GridError("strand ends at an undesignated edge");
    }
  }
  try {
    Matching m(std::move(partner));
    if (!belongs_to(m, g.matching_class)) {
      throw GridError("matching " + m.text() + " is not " + std::string(to_string(g.matching_class)));
    }
    return m.text();
  } catch (const MatchingError& e) {
    throw GridError(std::string("inconsistent boundary connectivity: ") + e.what());
  }
}

std::string read_directed_matching(const FplConfig& f, const GridSpec& g) {
  const int N = g.square;
  const Region reg = fundamental_region(g);
  auto sites = boundary_crossings(f, reg, true);
  if (g.numbering == Numbering::Clockwise) std::reverse(sites.begin(), sites.end());
  if (static_cast<int>(sites.size()) != 2 * N) throw GridError("half-turn grid without 2N boundary sites");
  std::map<Edge, int> index;
  for (std::size_t i = 0; i < sites.size(); ++i) index[sites[i].edge] = static_cast<int>(i);
  std::vector<std::pair<int, int>> pairs;
  int defect = -1;
  for (int i = 0; i < N; ++i) {
    const auto& s = sites[static_cast<std::size_t>(i)];
    const auto it = index.find(trace(f, reg, s.edge, s.r, s.c));
    if (it == index.end()) throw GridError("strand ends at an undesignated edge");
    const int j = it->second;
    if (j == i + N) {
      if (defect >= 0) throw GridError("two strands through the centre");
      defect = i;
    } else if (j < N) {
      if (i < j) pairs.emplace_back(i, j);
    } else if (j - N < i) {
      pairs.emplace_back(i, j - N);
    }
  }
  try {
    return DirectedMatching(N, pairs, defect).text();
  } catch (const MatchingError& e) {
    throw GridError(std::string("inconsistent boundary connectivity: ") + e.what());
  }
}

// Row-by-row ASM search. Column partial sums stay in {0,1}; rows are built
// cell by cell with the row partial sum in {0,1}. Only rows of the
// fundamental domain are branched on; mirrored cells are forced.
class AsmSearch {
 public:
  AsmSearch(int n, Symmetry sym) : n_(n), sym_(sym), a_(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0)), s_(static_cast<std::size_t>(n), 0) {
    switch (sym) {
      case Symmetry::None:
      case Symmetry::Vertical: free_rows_ = n; break;
      case Symmetry::HalfTurn: free_rows_ = (n + 1) / 2; break;
      case Symmetry::VerticalHorizontal: free_rows_ = (n - 1) / 2; break;
    }
  }

  struct Prefix {
    Asm rows;
    std::vector<int> sums;
  };

  int free_rows() const { return free_rows_; }

  void run(const std::function<void(const Asm&)>& visit) {
    visit_ = &visit;
    stop_at_ = -1;
    rows(0);
  }

  std::vector<Prefix> prefixes(int depth) {
    std::vector<Prefix> out;
    const std::function<void(const Asm&)> noop = [](const Asm&) {};
    visit_ = &noop;
    stop_at_ = depth;
    prefixes_ = &out;
    rows(0);
    prefixes_ = nullptr;
    return out;
  }

  void resume(const Prefix& p, int depth, const std::function<void(const Asm&)>& visit) {
    a_ = p.rows;
    s_ = p.sums;
    visit_ = &visit;
    stop_at_ = -1;
    rows(depth);
  }

 private:
  bool mirrored_row(int r) const {
    return sym_ == Symmetry::Vertical || sym_ == Symmetry::VerticalHorizontal ||
           (sym_ == Symmetry::HalfTurn && n_ % 2 == 1 && r == n_ / 2);
  }

  void rows(int r) {
    if (r == stop_at_) {
      prefixes_->push_back({a_, s_});
      return;
    }
    if (r == free_rows_) {
      finish();
      return;
    }
    cells(r, 0, 0);
  }

  void cells(int r, int c, int t) {
    if (c == n_) {
      if (t == 1) rows(r + 1);
      return;
    }
    auto& row = a_[static_cast<std::size_t>(r)];
    auto& s = s_[static_cast<std::size_t>(c)];
    const int mirror = n_ - 1 - c;
    const bool forced = mirrored_row(r) && mirror < c;
    for (int x : {0, 1, -1}) {
      if (forced && x != row[static_cast<std::size_t>(mirror)]) continue;
      if (x == 1 && (s != 0 || t != 0)) continue;
      if (x == -1 && (s != 1 || t != 1)) continue;
      row[static_cast<std::size_t>(c)] = x;
      s += x;
      cells(r, c + 1, t + x);
      s -= x;
    }
    row[static_cast<std::size_t>(c)] = 0;
  }

  void finish() {
    const auto n = static_cast<std::size_t>(n_);
    switch (sym_) {
      case Symmetry::None:
      case Symmetry::Vertical: (*visit_)(a_); return;
      case Symmetry::HalfTurn: {
        const std::size_t top = n / 2;  // rows strictly above the middle
        for (std::size_t c = 0; c < n; ++c) {
          const int partner_above = s_[n - 1 - c] - (n % 2 == 1 ? a_[top][n - 1 - c] : 0);
          if (s_[c] + partner_above != 1) return;
        }
        Asm full = a_;
        for (std::size_t r = 0; r < top; ++r) {
          for (std::size_t c = 0; c < n; ++c) full[n - 1 - r][n - 1 - c] = a_[r][c];
        }
        (*visit_)(full);
        return;
      }
      case Symmetry::VerticalHorizontal: {
        if (n % 2 == 0) return;
        const std::size_t mid = n / 2;
        for (std::size_t c = 0; c < n; ++c) {
          if (s_[c] != static_cast<int>(c % 2)) return;
        }
        Asm full = a_;
        for (std::size_t c = 0; c < n; ++c) full[mid][c] = 1 - 2 * s_[c];
        for (std::size_t r = 0; r < mid; ++r) full[n - 1 - r] = a_[r];
        (*visit_)(full);
        return;
      }
    }
  }

  int n_;
  Symmetry sym_;
  Asm a_;
  std::vector<int> s_;
  int free_rows_ = 0;
  int stop_at_ = -1;
  const std::function<void(const Asm&)>* visit_ = nullptr;
  std::vector<Prefix>* prefixes_ = nullptr;
};

void gv_odd_search(const GridSpec& g, const std::function<void(const FplConfig&)>& visit) {
  const int R = g.square;
  const int C = (R - 1) / 2;
  FplConfig f;
  f.rows = R;
  f.cols = C;
  f.h.assign(static_cast<std::size_t>(R), std::vector<bool>(static_cast<std::size_t>(C + 1), false));
  f.v.assign(static_cast<std::size_t>(R + 1), std::vector<bool>(static_cast<std::size_t>(C), false));
  for (const auto& s : g.designated) {
    if (s.side == Site::Side::Left) f.h[static_cast<std::size_t>(s.row)][0] = true;
    else f.v[static_cast<std::size_t>(s.row)][static_cast<std::size_t>(s.col)] = true;
  }
  const int cells = R * C;
  std::function<void(int, int)> dfs = [&](int idx, int exits) {
    if (idx == cells) {
      if (exits == 1) visit(f);
      return;
    }
    const auto r = static_cast<std::size_t>(idx / C);
    const auto c = static_cast<std::size_t>(idx % C);
    const int have = f.h[r][c] + f.v[r][c];
    const bool last_row = static_cast<int>(r) == R - 1;
    const bool last_col = static_cast<int>(c) == C - 1;
    for (int right = 0; right <= 1; ++right) {
      const int down = 2 - have - right;
      if (down < 0 || down > 1) continue;
      if (last_row && down != static_cast<int>(f.v[r + 1][c])) continue;
      if (last_col && right == 1 && exits > 0) continue;
      f.h[r][c + 1] = right;
      if (!last_row) f.v[r + 1][c] = down;
      dfs(idx + 1, exits + (last_col ? right : 0));
      f.h[r][c + 1] = false;
      if (!last_row) f.v[r + 1][c] = false;
    }
  };
  dfs(0, 0);
}

}  // namespace

std::string_view to_string(GridFamily f) {
  switch (f) {
    case GridFamily::G: return "g";
    case GridFamily::GV: return "gv";
    case GridFamily::GVOdd: return "gv-odd";
    case GridFamily::GVH: return "gvh";
    case GridFamily::GHT: return "ght";
    case GridFamily::GHTOdd: return "ght-odd";
  }
  return "?";
}

std::string_view to_string(Symmetry s) {
  switch (s) {
    case Symmetry::None: return "none";
    case Symmetry::Vertical: return "vertical";
    case Symmetry::VerticalHorizontal: return "vertical+horizontal";
    case Symmetry::HalfTurn: return "half-turn";
  }
  return "?";
}

GridFamily grid_family_from_string(std::string_view s) {
  if (s == "g") return GridFamily::G;
  if (s == "gv" || s == "v") return GridFamily::GV;
  if (s == "gv-odd" || s == "v-odd") return GridFamily::GVOdd;
  if (s == "gvh" || s == "vh") return GridFamily::GVH;
  if (s == "ght" || s == "ht") return GridFamily::GHT;
  if (s == "ght-odd" || s == "ht-odd") return GridFamily::GHTOdd;
  throw GridError("unknown grid family '" + std::string(s) + "'");
}

std::string_view to_string(Numbering d) { return d == Numbering::CounterClockwise ? "ccw" : "cw"; }

Numbering numbering_from_string(std::string_view s) {
  if (s == "ccw") return Numbering::CounterClockwise;
  if (s == "cw") return Numbering::Clockwise;
  throw GridError("numbering must be ccw or cw");
}

GridSpec make_grid(GridFamily family, int n, Numbering numbering) {
  GridSpec g;
  g.family = family;
  g.n = n;
  g.numbering = numbering;
  auto require = [&](bool ok, const char* what) {
    if (!ok) throw GridError(std::string(to_string(family)) + " needs " + what + ", got " + std::to_string(n));
  };
  switch (family) {
    case GridFamily::G:
      require(n >= 1, "n >= 1");
      g.square = n;
      g.sites = 2 * n;
      g.matching_class = MatchingClass::PeriodicUndirected;
      break;
    case GridFamily::GV:
      require(n >= 2 && n % 2 == 0, "an even size >= 2");
      g.square = n + 1;
      g.symmetry = Symmetry::Vertical;
      g.corner_a = (n / 2) % 2 == 1;
      g.sites = n;
      break;
    case GridFamily::GVOdd:
      require(n >= 3 && n % 2 == 1, "an odd size >= 3");
      g.square = n;
      g.corner_a = ((n - 1) / 2) % 2 == 0;
      g.sites = n;
      g.matching_class = MatchingClass::RightExtended;
      break;
    case GridFamily::GVH:
      require(n >= 1, "n >= 1");
      g.square = 2 * n + 3;
      g.symmetry = Symmetry::VerticalHorizontal;
      g.corner_a = n % 2 == 1;
      g.sites = n;
      g.matching_class = MatchingClass::RightExtended;
      break;
    case GridFamily::GHT:
    case GridFamily::GHTOdd:
      require(n >= 1 && n % 2 == (family == GridFamily::GHT ? 0 : 1),
              family == GridFamily::GHT ? "an even size" : "an odd size");
      g.square = n;
      g.symmetry = Symmetry::HalfTurn;
      g.sites = n;
      g.matching_class = MatchingClass::Directed;
      break;
  }
  if (family == GridFamily::GVOdd) {
    g.designated = designated_sites(g.square, (g.square - 1) / 2, g.corner_a, false);
    if (static_cast<int>(g.designated.size()) != g.sites) throw GridError("inconsistent half grid");
  } else {
    g.designated = designated_sites(g.square, g.square, g.corner_a, true);
  }
  return g;
}

int loop_size(const GridSpec& g) { return g.family == GridFamily::G ? 2 * g.n : g.n; }

bool is_asm(const Asm& a) {
  const std::size_t n = a.size();
  if (n == 0) return false;
  for (const auto& row : a) {
    if (row.size() != n) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    int rs = 0;
    int cs = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (a[i][j] < -1 || a[i][j] > 1) return false;
      rs += a[i][j];
      cs += a[j][i];
      if (rs < 0 || rs > 1 || cs < 0 || cs > 1) return false;
    }
    if (rs != 1 || cs != 1) return false;
  }
  return true;
}

SixVertexConfig asm_to_sixvertex(const Asm& a) {
  if (!is_asm(a)) throw GridError("not an alternating sign matrix");
  const auto n = a.size();
  SixVertexConfig cfg;
  cfg.size = static_cast<int>(n);
  cfg.h.assign(n, std::vector<bool>(n + 1));
  cfg.v.assign(n + 1, std::vector<bool>(n));
  for (std::size_t r = 0; r < n; ++r) {
    int sum = 0;
    for (std::size_t c = 0; c <= n; ++c) {
      cfg.h[r][c] = sum == 0;
      if (c < n) sum += a[r][c];
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    int sum = 0;
    for (std::size_t r = 0; r <= n; ++r) {
      cfg.v[r][c] = sum == 0;
      if (r < n) sum += a[r][c];
    }
  }
  return cfg;
}

bool satisfies_ice_rule(const SixVertexConfig& cfg) {
  const auto n = static_cast<std::size_t>(cfg.size);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const int in = cfg.h[r][c] + !cfg.h[r][c + 1] + !cfg.v[r][c] + cfg.v[r + 1][c];
      if (in != 2) return false;
    }
  }
  return true;
}

bool has_domain_wall_boundary(const SixVertexConfig& cfg) {
  const auto n = static_cast<std::size_t>(cfg.size);
  for (std::size_t i = 0; i < n; ++i) {
    if (!cfg.h[i][0] || cfg.h[i][n] || !cfg.v[0][i] || cfg.v[n][i]) return false;
  }
  return true;
}

Asm sixvertex_to_asm(const SixVertexConfig& cfg) {
  if (!satisfies_ice_rule(cfg)) throw GridError("ice rule violated");
  if (!has_domain_wall_boundary(cfg)) throw GridError("not a domain-wall boundary");
  const auto n = static_cast<std::size_t>(cfg.size);
  Asm a(n, std::vector<int>(n, 0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const bool in_left = cfg.h[r][c];
      const bool in_right = !cfg.h[r][c + 1];
      if (in_left && in_right) a[r][c] = 1;
      else if (!in_left && !in_right) a[r][c] = -1;
    }
  }
  if (!is_asm(a) || asm_to_sixvertex(a) != cfg) throw GridError("configuration does not encode an ASM");
  return a;
}

FplConfig sixvertex_to_fpl(const SixVertexConfig& cfg, bool corner_a) {
  const auto n = static_cast<std::size_t>(cfg.size);
  FplConfig f;
  f.rows = cfg.size;
  f.cols = cfg.size;
  f.h.assign(n, std::vector<bool>(n + 1));
  f.v.assign(n + 1, std::vector<bool>(n));
  auto a = [&](std::size_t r, std::size_t c) { return on_a(corner_a, static_cast<int>(r), static_cast<int>(c)); };
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c <= n; ++c) {
      // read at the vertex to the right, or the left one on the right boundary
      f.h[r][c] = c < n ? cfg.h[r][c] == a(r, c) : cfg.h[r][c] != a(r, c - 1);
    }
  }
  for (std::size_t r = 0; r <= n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      f.v[r][c] = r < n ? cfg.v[r][c] != a(r, c) : cfg.v[r][c] == a(r - 1, c);
    }
  }
  return f;
}

bool is_fully_packed(const FplConfig& f) {
  const auto R = static_cast<std::size_t>(f.rows);
  const auto C = static_cast<std::size_t>(f.cols);
  for (std::size_t r = 0; r < R; ++r) {
    for (std::size_t c = 0; c < C; ++c) {
      if (f.h[r][c] + f.h[r][c + 1] + f.v[r][c] + f.v[r + 1][c] != 2) return false;
    }
  }
  return true;
}

bool is_symmetric(const Asm& a, Symmetry sym) {
  const std::size_t n = a.size();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const int x = a[r][c];
      switch (sym) {
        case Symmetry::None: break;
        case Symmetry::Vertical:
          if (x != a[r][n - 1 - c]) return false;
          break;
        case Symmetry::VerticalHorizontal:
          if (x != a[r][n - 1 - c] || x != a[n - 1 - r][c]) return false;
          break;
        case Symmetry::HalfTurn:
          if (x != a[n - 1 - r][n - 1 - c]) return false;
          break;
      }
    }
  }
  return true;
}

void for_each_asm(int n, Symmetry sym, const std::function<void(const Asm&)>& visit) {
  if (n < 1) throw GridError("ASM size must be positive");
  AsmSearch(n, sym).run(visit);
}

std::vector<Asm> enumerate_asms(int n, Symmetry sym) {
  std::vector<Asm> out;
  for_each_asm(n, sym, [&](const Asm& a) { out.push_back(a); });
  return out;
}

void for_each_fpl(const GridSpec& g, const std::function<void(const FplConfig&)>& visit) {
  if (g.family == GridFamily::GVOdd) {
    gv_odd_search(g, visit);
    return;
  }
  for_each_asm(g.square, g.symmetry, [&](const Asm& a) {
    FplConfig f = sixvertex_to_fpl(asm_to_sixvertex(a), g.corner_a);
    f.matrix = a;
    visit(f);
  });
}

std::vector<FplConfig> enumerate_fpl(const GridSpec& g) {
  std::vector<FplConfig> out;
  for_each_fpl(g, [&](const FplConfig& f) { out.push_back(f); });
  return out;
}

std::string extract_matching(const FplConfig& f, const GridSpec& g) {
  if (g.matching_class == MatchingClass::Directed) return read_directed_matching(f, g);
  return read_line_matching(f, g);
}

void for_each_fpl_parallel(const GridSpec& g, int threads,
                           const std::function<void(int, const FplConfig&)>& visit) {
  if (g.family == GridFamily::GVOdd || threads <= 1) {
    for_each_fpl(g, [&](const FplConfig& f) { visit(0, f); });
    return;
  }
  AsmSearch root(g.square, g.symmetry);
  const int depth = std::min(3, root.free_rows());
  const auto tasks = root.prefixes(depth);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  auto work = [&](int worker) {
    try {
      AsmSearch s(g.square, g.symmetry);
      const std::function<void(const Asm&)> each = [&](const Asm& a) {
        FplConfig f = sixvertex_to_fpl(asm_to_sixvertex(a), g.corner_a);
        f.matrix = a;
        visit(worker, f);
      };
      for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) s.resume(tasks[i], depth, each);
    } catch (...) {
      errors[static_cast<std::size_t>(worker)] = std::current_exception();
      next = tasks.size();
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace tl
