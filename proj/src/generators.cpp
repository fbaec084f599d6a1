#include "tl/generators.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <queue>
#include <set>

namespace tl {

namespace {

constexpr std::pair<Boundary, std::string_view> kBoundaryNames[] = {
    {Boundary::Closed, "closed"},     {Boundary::Mixed, "mixed"},
    {Boundary::Open, "open"},         {Boundary::Periodic, "periodic"},
    {Boundary::PeriodicDirected, "periodic-directed"},
};

bool is_periodic(MatchingClass cls) {
  return cls == MatchingClass::Directed || cls == MatchingClass::PeriodicUndirected;
}

// Vertices (0-based) touched by E(j).
std::pair<int, int> sites(const Generator& g, int n) {
  const int a = g.index - 1;
  return {a, (a + 1) % n};
}

int mod(int x, int n) { return ((x % n) + n) % n; }

// Displacement of travelling along the arc at x to its partner.
int arc_displacement(const DirectedMatching& m, int x) {
  const int n = m.size();
  const int y = m.partner(x);
  return m.opens(x) ? mod(y - x, n) : -mod(x - y, n);
}

// Orders every pair so that no arc covers the defect.
DirectedMatching orient_around_defect(int n, const std::vector<int>& partner, int defect) {
  std::vector<std::pair<int, int>> pairs;
  for (int v = 0; v < n; ++v) {
    const int p = partner[static_cast<std::size_t>(v)];
    if (p <= v) continue;
    // Front arc (v,p) covers v..p; it is legal iff the defect is outside.
    if (defect > v && defect < p) {
      pairs.emplace_back(p, v);
    } else {
      pairs.emplace_back(v, p);
    }
  }
  return DirectedMatching(n, pairs, defect);
}

}  // namespace

std::string_view to_string(Boundary bc) {
  for (const auto& [b, name] : kBoundaryNames) {
    if (b == bc) return name;
  }
  return "unknown";
}

Boundary boundary_from_string(std::string_view s) {
  for (const auto& [b, name] : kBoundaryNames) {
    if (name == s) return b;
  }
  if (s == "directed") return Boundary::PeriodicDirected;
  throw MatchingError("unknown boundary condition '" + std::string(s) + "'");
}

Generator parse_generator(std::string_view text, int n) {
  if (text.size() < 2) throw MatchingError("bad generator '" + std::string(text) + "'");
  const char kind = text[0];
  const std::string_view rest = text.substr(1);
  if (kind == 'f' && rest == "n") return Generator::f_right(n);
  int index = 0;
  const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), index);
  if (ec != std::errc{} || ptr != rest.data() + rest.size()) {
    throw MatchingError("bad generator '" + std::string(text) + "'");
  }
  if (kind == 'e') return Generator::e(index);
  if (kind == 'f' && index == 1) return Generator::f_left();
  if (kind == 'f' && index == n) return Generator::f_right(n);
  throw MatchingError("bad generator '" + std::string(text) + "'");
}

std::string to_string(const Generator& g) {
  switch (g.kind) {
    case Generator::Kind::E: return "e" + std::to_string(g.index);
    case Generator::Kind::FLeft: return "f1";
    case Generator::Kind::FRight: return "f" + std::to_string(g.index);
  }
  return "?";
}

void check_generator(const Generator& g, MatchingClass cls, int n) {
  switch (g.kind) {
    case Generator::Kind::E: {
      const int top = is_periodic(cls) ? n : n - 1;
      if (g.index < 1 || g.index > top) {
        throw MatchingError(to_string(g) + " is out of range for " + std::string(to_string(cls)) +
                            " matchings of size " + std::to_string(n));
      }
      return;
    }
    case Generator::Kind::FLeft:
      if (cls != MatchingClass::Extended) throw MatchingError("f1 acts on extended matchings only");
      return;
    case Generator::Kind::FRight:
      if (cls != MatchingClass::Extended && cls != MatchingClass::RightExtended) {
        throw MatchingError("fn acts on (right) extended matchings only");
      }
      if (g.index != n) throw MatchingError("fn index must equal the size");
      return;
  }
}

// Fast rewrites ------------------------------------------------------------------

Matching apply(const Generator& g, const Matching& m, MatchingClass cls) {
  const int n = m.size();
  check_generator(g, cls, n);
  if (g.kind == Generator::Kind::FLeft) return apply_f(Side::Left, m, cls);
  if (g.kind == Generator::Kind::FRight) return apply_f(Side::Right, m, cls);

  const auto [a, b] = sites(g, n);
  const int pa = m.partner(a);
  const int pb = m.partner(b);
  if (pa == b) return m;

  std::vector<int> next(m.partners().begin(), m.partners().end());
  next[static_cast<std::size_t>(a)] = b;
  next[static_cast<std::size_t>(b)] = a;
  if (pa >= 0 && pb >= 0) {
    next[static_cast<std::size_t>(pa)] = pb;
    next[static_cast<std::size_t>(pb)] = pa;
  } else if (pa >= 0) {
    next[static_cast<std::size_t>(pa)] = pb;
  } else if (pb >= 0) {
    next[static_cast<std::size_t>(pb)] = pa;
  }
  // Both ends external: the strand is detached from the vertex line and erased.
  return Matching(std::move(next));
}

Matching apply_f(Side side, const Matching& m, MatchingClass cls) {
  const int n = m.size();
  check_generator(side == Side::Left ? Generator::f_left() : Generator::f_right(n), cls, n);
  const int v = side == Side::Left ? 0 : n - 1;
  const int own = side == Side::Left ? kLeft : kRight;
  const int p = m.partner(v);
  if (p == own) return m;
  std::vector<int> next(m.partners().begin(), m.partners().end());
  next[static_cast<std::size_t>(v)] = own;
  if (p >= 0) next[static_cast<std::size_t>(p)] = own;
  return Matching(std::move(next));
}

DirectedMatching apply(const Generator& g, const DirectedMatching& m) {
  const int n = m.size();
  check_generator(g, MatchingClass::Directed, n);
  const auto [a, b] = sites(g, n);
  const int d = m.defect();

  std::vector<int> partner(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) partner[static_cast<std::size_t>(v)] = v == d ? kDefect : m.partner(v);

  if (partner[static_cast<std::size_t>(a)] == b) {
    // Contractible or non-contractible loop: erased, leaving the cup (a,b).
    std::vector<std::pair<int, int>> pairs;
    for (const auto& arc : m.pairs()) {
      if (arc.first != a && arc.first != b) pairs.push_back(arc);
    }
    pairs.emplace_back(a, b);
    return DirectedMatching(n, pairs, d);
  }

  if (a == d || b == d) {
    // The defect line is pulled to the partner of the other site.
    const int q = partner[static_cast<std::size_t>(a == d ? b : a)];
    partner[static_cast<std::size_t>(a)] = b;
    partner[static_cast<std::size_t>(b)] = a;
    partner[static_cast<std::size_t>(q)] = -1;
    return orient_around_defect(n, partner, q);
  }

  const int pa = partner[static_cast<std::size_t>(a)];
  const int pb = partner[static_cast<std::size_t>(b)];
  // pa -> a along its arc, a -> b along the cup, b -> pb along its arc.
  const int total = arc_displacement(m, pa) + 1 + arc_displacement(m, b);
  std::vector<std::pair<int, int>> pairs;
  for (const auto& arc : m.pairs()) {
    const bool touched = arc.first == a || arc.first == b || arc.second == a || arc.second == b;
    if (!touched) pairs.push_back(arc);
  }
  pairs.emplace_back(a, b);
  if (total > 0) {
    pairs.emplace_back(pa, pb);
  } else {
    pairs.emplace_back(pb, pa);
  }
  return DirectedMatching(n, pairs, d);
}

// Reference composition ---------------------------------------------------------

namespace {

// Strand endpoints in the stacked picture. Matching points are identified with
// the generator's top points; generator bottom points form the new matching.
struct Stack {
  int n = 0;
  // Generator: for top point v, where it goes. >= 0: bottom point index;
  // encoded top-to-top links use kTop offset; sentinels for external ends.
  std::vector<int> top_link;     // from top v
  std::vector<int> bottom_link;  // from bottom v
};

constexpr int kTopBase = 1 << 20;

Stack generator_diagram(const Generator& g, int n) {
  Stack s;
  s.n = n;
  s.top_link.resize(static_cast<std::size_t>(n));
  s.bottom_link.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    s.top_link[static_cast<std::size_t>(v)] = v;
    s.bottom_link[static_cast<std::size_t>(v)] = kTopBase + v;
  }
  switch (g.kind) {
    case Generator::Kind::E: {
      const int a = g.index - 1;
      const int b = (a + 1) % n;
      s.top_link[static_cast<std::size_t>(a)] = kTopBase + b;
      s.top_link[static_cast<std::size_t>(b)] = kTopBase + a;
      s.bottom_link[static_cast<std::size_t>(a)] = b;
      s.bottom_link[static_cast<std::size_t>(b)] = a;
      break;
    }
    case Generator::Kind::FLeft:
      s.top_link[0] = kLeft;
      s.bottom_link[0] = kLeft;
      break;
    case Generator::Kind::FRight:
      s.top_link[static_cast<std::size_t>(n - 1)] = kRight;
      s.bottom_link[static_cast<std::size_t>(n - 1)] = kRight;
      break;
  }
  return s;
}

struct TraceEnd {
  int target = 0;        // bottom vertex, or a sentinel
  int displacement = 0;  // accumulated winding on the annulus
};

// Walks from bottom point v until it reaches another bottom point or an
// external end. `step` returns the partner of a matching point (or a
// sentinel) and the displacement of that step.
TraceEnd trace(const Stack& s, int v, const std::function<std::pair<int, int>(int)>& step,
               const std::function<int(int, int)>& cup_displacement) {
  int disp = 0;
  int link = s.bottom_link[static_cast<std::size_t>(v)];
  if (link < kTopBase) {
    // Cap straight into another bottom point, or an external end.
    if (link >= 0) disp = cup_displacement(v, link);
    return {link, disp};
  }
  int top = link - kTopBase;
  for (int guard = 0; guard < 4 * s.n + 4; ++guard) {
    const auto [next, d] = step(top);
    disp += d;
    if (next < 0) return {next, disp};
    const int out = s.top_link[static_cast<std::size_t>(next)];
    if (out < kTopBase) return {out, disp};
    disp += cup_displacement(next, out - kTopBase);
    top = out - kTopBase;
  }
  throw MatchingError("strand trace did not terminate");
}

}  // namespace

Matching compose_reference(const Generator& g, const Matching& m, MatchingClass cls) {
  const int n = m.size();
  check_generator(g, cls, n);
  const Stack s = generator_diagram(g, n);
  auto step = [&](int top) { return std::pair<int, int>{m.partner(top), 0}; };
  auto no_winding = [](int, int) { return 0; };
  std::vector<int> partner(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) partner[static_cast<std::size_t>(v)] = trace(s, v, step, no_winding).target;
  return Matching(std::move(partner));
}

DirectedMatching compose_reference(const Generator& g, const DirectedMatching& m) {
  const int n = m.size();
  check_generator(g, MatchingClass::Directed, n);
  const Stack s = generator_diagram(g, n);
  const int d = m.defect();
  auto step = [&](int top) {
    if (top == d) return std::pair<int, int>{kDefect, 0};
    return std::pair<int, int>{m.partner(top), arc_displacement(m, top)};
  };
  // Cup/cap of E(j) runs from j-1 to j (mod n) in the positive direction;
  // at n = 2 the two vertices are adjacent both ways, so use the index.
  const int a = g.index - 1;
  auto cup = [a](int from, int) { return from == a ? 1 : -1; };

  std::vector<std::pair<int, int>> pairs;
  int defect = -1;
  std::vector<int> partner(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    const TraceEnd end = trace(s, v, step, cup);
    if (end.target == kDefect) {
      defect = v;
      continue;
    }
    partner[static_cast<std::size_t>(v)] = end.target;
    if (end.displacement > 0) pairs.emplace_back(v, end.target);
  }
  if (defect >= 0) return orient_around_defect(n, partner, defect);
  return DirectedMatching(n, pairs, -1);
}

// Hamiltonian data --------------------------------------------------------------

MatchingClass basis_class(Boundary bc, int n) {
  switch (bc) {
    case Boundary::Closed:
      return n % 2 == 0 ? MatchingClass::Perfect : MatchingClass::NearPerfect;
    case Boundary::Mixed: return MatchingClass::RightExtended;
    case Boundary::Open: return MatchingClass::Extended;
    case Boundary::Periodic:
      if (n % 2 != 0) throw MatchingError("periodic undirected matchings need an even size");
      return MatchingClass::PeriodicUndirected;
    case Boundary::PeriodicDirected: return MatchingClass::Directed;
  }
  throw MatchingError("unknown boundary");
}

std::vector<Generator> generators_for(MatchingClass cls, int n) {
  std::vector<Generator> out;
  const int top = is_periodic(cls) && n >= 2 ? n : n - 1;
  if (cls == MatchingClass::Extended) out.push_back(Generator::f_left());
  for (int j = 1; j <= top; ++j) out.push_back(Generator::e(j));
  if (cls == MatchingClass::Extended || cls == MatchingClass::RightExtended) out.push_back(Generator::f_right(n));
  return out;
}

std::vector<Generator> generators_for(Boundary bc, int n) { return generators_for(basis_class(bc, n), n); }

std::vector<DirectedMatching> enumerate_directed_basis(int n) {
  if (n < 1) throw MatchingError("basis size must be positive");
  std::string seed;
  for (int i = 0; i + 1 < n; i += 2) seed += "()";
  if (n % 2 == 1) seed += "|";
  const auto gens = generators_for(MatchingClass::Directed, n);
  std::set<DirectedMatching> seen{parse_directed(seed)};
  std::queue<DirectedMatching> todo;
  todo.push(*seen.begin());
  while (!todo.empty()) {
    const DirectedMatching m = todo.front();
    todo.pop();
    for (const auto& g : gens) {
      DirectedMatching next = apply(g, m);
      if (seen.insert(next).second) todo.push(std::move(next));
    }
  }
  return {seen.begin(), seen.end()};
}

ActionTable build_action_table(Boundary bc, int n) {
  ActionTable t;
  t.bc = bc;
  t.n = n;
  t.cls = basis_class(bc, n);
  t.generators = generators_for(t.cls, n);
  std::map<std::string, int> index;
  if (t.cls == MatchingClass::Directed) {
    const auto basis = enumerate_directed_basis(n);
    for (const auto& m : basis) {
      index.emplace(m.text(), static_cast<int>(t.basis.size()));
      t.basis.push_back(m.text());
    }
    for (const auto& g : t.generators) {
      auto& row = t.image.emplace_back();
      for (const auto& m : basis) row.push_back(index.at(apply(g, m).text()));
    }
  } else {
    const auto basis = enumerate_basis(t.cls, n);
    for (const auto& m : basis) {
      index.emplace(m.text(), static_cast<int>(t.basis.size()));
      t.basis.push_back(m.text());
    }
    for (const auto& g : t.generators) {
      auto& row = t.image.emplace_back();
      for (const auto& m : basis) {
        const auto it = index.find(apply(g, m, t.cls).text());
        if (it == index.end()) throw MatchingError("basis is not closed under " + to_string(g));
        row.push_back(it->second);
      }
    }
  }
  return t;
}

// Relations -------------------------------------------------------------------------

bool RelationReport::all_hold() const {
  return std::all_of(checks.begin(), checks.end(), [](const RelationCheck& c) { return c.holds; });
}

std::optional<RelationCheck> RelationReport::find(std::string_view relation) const {
  for (const auto& c : checks) {
    if (c.relation == relation) return c;
  }
  return std::nullopt;
}

RelationReport check_relations(MatchingClass cls, int n) {
  RelationReport report;
  report.cls = cls;
  report.n = n;

  // Everything is done on basis indices through a table of images.
  std::vector<std::string> basis;
  std::map<std::string, int> index;
  const auto gens = generators_for(cls, n);
  std::vector<std::vector<int>> image;
  if (cls == MatchingClass::Directed) {
    const auto b = enumerate_directed_basis(n);
    for (const auto& m : b) basis.push_back(m.text());
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);
    for (const auto& g : gens) {
      auto& row = image.emplace_back();
      for (const auto& m : b) row.push_back(index.at(apply(g, m).text()));
    }
  } else {
    const auto b = enumerate_basis(cls, n);
    for (const auto& m : b) basis.push_back(m.text());
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);
    for (const auto& g : gens) {
      auto& row = image.emplace_back();
      for (const auto& m : b) row.push_back(index.at(apply(g, m, cls).text()));
    }
  }
  auto slot = [&](const Generator& g) {
    const auto it = std::find(gens.begin(), gens.end(), g);
    return static_cast<std::size_t>(it - gens.begin());
  };
  // Applies a word right to left, i.e. the last letter acts first.
  auto act = [&](const std::vector<Generator>& word, int i) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) i = image[slot(*it)][static_cast<std::size_t>(i)];
    return i;
  };
  auto name = [](const std::vector<Generator>& word) {
    if (word.empty()) return std::string("1");
    std::string s;
    for (const auto& g : word) s += (s.empty() ? "" : " ") + to_string(g);
    return s;
  };
  auto check = [&](const std::vector<Generator>& lhs, const std::vector<Generator>& rhs) {
    RelationCheck c;
    c.relation = name(lhs) + " = " + name(rhs);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (act(lhs, static_cast<int>(i)) != act(rhs, static_cast<int>(i))) {
        c.holds = false;
        c.witness = basis[i];
        break;
      }
    }
    report.checks.push_back(std::move(c));
  };

  const bool periodic = is_periodic(cls);
  const int top = periodic ? n : n - 1;
  auto e = [](int j) { return Generator::e(j); };
  auto wrap = [&](int j) { return periodic ? ((j - 1 + n) % n) + 1 : j; };

  for (int j = 1; j <= top; ++j) check({e(j), e(j)}, {e(j)});

  if (n >= 3) {
    for (int j = 1; j <= top; ++j) {
      for (int step : {-1, 1}) {
        const int k = j + step;
        if (!periodic && (k < 1 || k > top)) continue;
        const int kk = wrap(k);
        if (periodic && j == n && kk == 1) {
          // Recorded both ways; see the header comment.
          check({e(n), e(1), e(n)}, {e(n)});
          check({e(n), e(1), e(n)}, {});
          continue;
        }
        check({e(j), e(kk), e(j)}, {e(j)});
      }
    }
    for (int j = 1; j <= top; ++j) {
      for (int k = j + 1; k <= top; ++k) {
        const int gap = k - j;
        const bool adjacent = gap == 1 || (periodic && gap == n - 1);
        if (adjacent) continue;
        check({e(j), e(k)}, {e(k), e(j)});
      }
    }
  }

  if (cls == MatchingClass::Extended) {
    const auto f1 = Generator::f_left();
    check({f1, f1}, {f1});
    if (n >= 2) check({e(1), f1, e(1)}, {e(1)});
    for (int j = 2; j <= n - 1; ++j) check({f1, e(j)}, {e(j), f1});
  }
  if (cls == MatchingClass::Extended || cls == MatchingClass::RightExtended) {
    const auto fn = Generator::f_right(n);
    check({fn, fn}, {fn});
    if (n >= 2) check({e(n - 1), fn, e(n - 1)}, {e(n - 1)});
    for (int j = 1; j <= n - 2; ++j) check({fn, e(j)}, {e(j), fn});
  }
  return report;
}

}  // namespace tl
