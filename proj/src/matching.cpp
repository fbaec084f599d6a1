#include "tl/matching.hpp"

#include <algorithm>
#include <array>

#include <json.hpp>

namespace tl {

namespace {

constexpr std::array kClassNames = {
    std::pair{MatchingClass::Perfect, std::string_view{"perfect"}},
    std::pair{MatchingClass::NearPerfect, std::string_view{"near-perfect"}},
    std::pair{MatchingClass::RightExtended, std::string_view{"right-extended"}},
    std::pair{MatchingClass::Extended, std::string_view{"extended"}},
    std::pair{MatchingClass::Directed, std::string_view{"directed"}},
    std::pair{MatchingClass::PeriodicUndirected, std::string_view{"periodic"}},
};

std::string render_line(std::span<const int> partner) {
  std::string out(partner.size(), '?');
  for (std::size_t v = 0; v < partner.size(); ++v) {
    const int p = partner[v];
    if (p == kDefect) {
      out[v] = '|';
    } else if (p == kRight || (p >= 0 && static_cast<std::size_t>(p) > v)) {
      out[v] = '(';
    } else {
      out[v] = ')';
    }
  }
  return out;
}

// Pairs each '(' with the next free ')' going round the circle. Returns the
// partner array with kDefect at the '|'. Throws if the text is not a
// balanced cyclic word or an arc would pass the defect.
std::vector<int> cyclic_pairing(std::string_view text) {
  const int n = static_cast<int>(text.size());
  if (n == 0) throw MatchingError("empty matching");
  int defect = -1;
  int opens = 0;
  int closes = 0;
  for (int i = 0; i < n; ++i) {
    switch (text[static_cast<std::size_t>(i)]) {
      case '(': ++opens; break;
      case ')': ++closes; break;
      case '|':
        if (defect >= 0) throw MatchingError("more than one defect in '" + std::string(text) + "'");
        defect = i;
        break;
      default:
        throw MatchingError("invalid character in '" + std::string(text) + "'");
    }
  }
  if (opens != closes) throw MatchingError("unbalanced directed matching '" + std::string(text) + "'");

  // Start just after the defect, or just after the last prefix minimum.
  int start = 0;
  if (defect >= 0) {
    start = (defect + 1) % n;
  } else {
    int balance = 0;
    int lowest = 0;
    for (int i = 0; i < n; ++i) {
      balance += text[static_cast<std::size_t>(i)] == '(' ? 1 : -1;
      if (balance <= lowest) {
        lowest = balance;
        start = (i + 1) % n;
      }
    }
  }

  std::vector<int> partner(static_cast<std::size_t>(n), kDefect);
  std::vector<int> stack;
  for (int k = 0; k < n; ++k) {
    const int v = (start + k) % n;
    const char c = text[static_cast<std::size_t>(v)];
    if (c == '(') {
      stack.push_back(v);
    } else if (c == ')') {
      if (stack.empty()) throw MatchingError("arc crosses the defect in '" + std::string(text) + "'");
      const int u = stack.back();
      stack.pop_back();
      partner[static_cast<std::size_t>(u)] = v;
      partner[static_cast<std::size_t>(v)] = u;
    }
  }
  return partner;
}

// Covered cyclic interval of the arc (first, second): start and length.
std::pair<int, int> covered(int first, int second, int n) {
  return {first, ((second - first) % n + n) % n + 1};
}

bool interval_contains(std::pair<int, int> outer, std::pair<int, int> inner, int n) {
  const int offset = ((inner.first - outer.first) % n + n) % n;
  return offset + inner.second <= outer.second;
}

void dfs_strings(std::string& prefix, int n, int depth, MatchingClass cls, bool used_defect,
                 std::vector<Matching>& out) {
  const int remaining = n - static_cast<int>(prefix.size());
  if (remaining == 0) {
    const bool closed = depth == 0;
    switch (cls) {
      case MatchingClass::Perfect:
      case MatchingClass::PeriodicUndirected:
        if (!closed) return;
        break;
      case MatchingClass::NearPerfect:
        if (!closed || !used_defect) return;
        break;
      default:
        break;
    }
    out.push_back(parse_parentheses(prefix));
    return;
  }
  const bool must_close = cls == MatchingClass::Perfect || cls == MatchingClass::PeriodicUndirected ||
                          cls == MatchingClass::NearPerfect;
  const int pending_defect = cls == MatchingClass::NearPerfect && !used_defect ? 1 : 0;
  // '('
  if (!must_close || depth + 1 + pending_defect <= remaining - 1) {
    prefix.push_back('(');
    dfs_strings(prefix, n, depth + 1, cls, used_defect, out);
    prefix.pop_back();
  }
  // ')'
  if (depth > 0 || cls == MatchingClass::Extended) {
    prefix.push_back(')');
    dfs_strings(prefix, n, depth > 0 ? depth - 1 : 0, cls, used_defect, out);
    prefix.pop_back();
  }
  // '|'
  if (cls == MatchingClass::NearPerfect && !used_defect && depth == 0) {
    prefix.push_back('|');
    dfs_strings(prefix, n, depth, cls, true, out);
    prefix.pop_back();
  }
}

}  // namespace

std::string_view to_string(MatchingClass c) {
  for (const auto& [cls, name] : kClassNames) {
    if (cls == c) return name;
  }
  return "unknown";
}

MatchingClass matching_class_from_string(std::string_view s) {
  for (const auto& [cls, name] : kClassNames) {
    if (name == s) return cls;
  }
  throw MatchingError("unknown matching class '" + std::string(s) + "'");
}

// Matching -----------------------------------------------------------------

Matching::Matching(std::vector<int> partner) : partner_(std::move(partner)) {
  const int n = size();
  for (int v = 0; v < n; ++v) {
    const int p = partner_[static_cast<std::size_t>(v)];
    if (p == kLeft || p == kRight || p == kDefect) continue;
    if (p < 0 || p >= n || p == v) throw MatchingError("partner out of range");
    if (partner_[static_cast<std::size_t>(p)] != v) throw MatchingError("partner array is not an involution");
  }
  if (!is_non_crossing(partner_)) throw MatchingError("crossing matching");
  text_ = render_line(partner_);
}

int Matching::count_left() const {
  return static_cast<int>(std::count(partner_.begin(), partner_.end(), kLeft));
}

int Matching::count_right() const {
  return static_cast<int>(std::count(partner_.begin(), partner_.end(), kRight));
}

int Matching::defect() const {
  const auto it = std::find(partner_.begin(), partner_.end(), kDefect);
  return it == partner_.end() ? -1 : static_cast<int>(it - partner_.begin());
}

bool Matching::is_perfect() const {
  return std::all_of(partner_.begin(), partner_.end(), [](int p) { return p >= 0; });
}

// DirectedMatching ----------------------------------------------------------

DirectedMatching::DirectedMatching(int n, std::span<const std::pair<int, int>> pairs, int defect) {
  if (n <= 0) throw MatchingError("directed matching needs at least one vertex");
  text_.assign(static_cast<std::size_t>(n), '?');
  auto mark = [&](int v, char c) {
    if (v < 0 || v >= n) throw MatchingError("vertex out of range");
    if (text_[static_cast<std::size_t>(v)] != '?') throw MatchingError("vertex used twice");
    text_[static_cast<std::size_t>(v)] = c;
  };
  for (const auto& [first, second] : pairs) {
    mark(first, '(');
    mark(second, ')');
  }
  if (defect >= 0) mark(defect, '|');
  if (text_.find('?') != std::string::npos) throw MatchingError("vertex left unmatched");

  partner_ = cyclic_pairing(text_);
  for (const auto& [first, second] : pairs) {
    if (partner_[static_cast<std::size_t>(first)] != second) {
      throw MatchingError("arcs cross on the annulus");
    }
  }
}

int DirectedMatching::defect() const {
  const auto pos = text_.find('|');
  return pos == std::string::npos ? -1 : static_cast<int>(pos);
}

std::vector<std::pair<int, int>> DirectedMatching::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int v = 0; v < size(); ++v) {
    if (opens(v)) out.emplace_back(v, partner(v));
  }
  return out;
}

// Parsing --------------------------------------------------------------------

Matching parse_parentheses(std::string_view text) {
  std::vector<int> partner(text.size(), 0);
  std::vector<int> stack;
  bool seen_defect = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const int v = static_cast<int>(i);
    switch (text[i]) {
      case '(':
        stack.push_back(v);
        break;
      case ')':
        if (stack.empty()) {
          if (seen_defect) throw MatchingError("left boundary line crosses the defect in '" + std::string(text) + "'");
          partner[i] = kLeft;
        } else {
          partner[i] = stack.back();
          partner[static_cast<std::size_t>(stack.back())] = v;
          stack.pop_back();
        }
        break;
      case '|':
        if (seen_defect) throw MatchingError("more than one defect in '" + std::string(text) + "'");
        if (!stack.empty()) throw MatchingError("enclosed defect in '" + std::string(text) + "'");
        seen_defect = true;
        partner[i] = kDefect;
        break;
      default:
        throw MatchingError("invalid character in '" + std::string(text) + "'");
    }
  }
  for (int v : stack) partner[static_cast<std::size_t>(v)] = kRight;
  return Matching(std::move(partner));
}

bool belongs_to(const Matching& m, MatchingClass cls) {
  const int left = m.count_left();
  const int right = m.count_right();
  const bool defect = m.defect() >= 0;
  switch (cls) {
    case MatchingClass::Perfect:
    case MatchingClass::PeriodicUndirected:
      return m.is_perfect() && m.size() % 2 == 0;
    case MatchingClass::NearPerfect:
      return defect && left == 0 && right == 0;
    case MatchingClass::RightExtended:
      return !defect && left == 0;
    case MatchingClass::Extended:
      return !defect;
    case MatchingClass::Directed:
      return false;
  }
  return false;
}

Matching parse_parentheses(std::string_view text, MatchingClass cls) {
  if (cls == MatchingClass::Directed) throw MatchingError("use parse_directed for directed matchings");
  if (cls == MatchingClass::PeriodicUndirected) {
    std::vector<int> partner = cyclic_pairing(text);
    if (std::find(partner.begin(), partner.end(), kDefect) != partner.end()) {
      throw MatchingError("defect in a periodic perfect matching");
    }
    return Matching(std::move(partner));
  }
  Matching m = parse_parentheses(text);
  if (!belongs_to(m, cls)) {
    throw MatchingError("'" + std::string(text) + "' is not a " + std::string(to_string(cls)) + " matching");
  }
  return m;
}

DirectedMatching parse_directed(std::string_view text) {
  const std::vector<int> partner = cyclic_pairing(text);
  std::vector<std::pair<int, int>> pairs;
  int defect = -1;
  for (std::size_t v = 0; v < text.size(); ++v) {
    if (text[v] == '(') pairs.emplace_back(static_cast<int>(v), partner[v]);
    if (text[v] == '|') defect = static_cast<int>(v);
  }
  return DirectedMatching(static_cast<int>(text.size()), pairs, defect);
}

std::string render_parentheses(const Matching& m) { return m.text(); }
std::string render_parentheses(const DirectedMatching& m) { return m.text(); }

Matching defect_to_right(const Matching& m) {
  if (m.defect() < 0) throw MatchingError("matching has no defect");
  std::vector<int> partner(m.partners().begin(), m.partners().end());
  std::replace(partner.begin(), partner.end(), kDefect, kRight);
  return Matching(std::move(partner));
}

Matching right_to_defect(const Matching& m) {
  if (m.count_right() != 1 || m.count_left() != 0 || m.defect() >= 0) {
    throw MatchingError("only a right-extended (p,1) matching has a defect form");
  }
  std::vector<int> partner(m.partners().begin(), m.partners().end());
  std::replace(partner.begin(), partner.end(), kRight, kDefect);
  return Matching(std::move(partner));
}

// Statistics -----------------------------------------------------------------

std::vector<DyckStep> to_dyck(const Matching& m) {
  if (!m.is_perfect()) throw MatchingError("Dyck path needs a perfect matching");
  std::vector<DyckStep> steps;
  steps.reserve(static_cast<std::size_t>(m.size()));
  for (char c : m.text()) steps.push_back(c == '(' ? DyckStep::NE : DyckStep::SE);
  return steps;
}

int nest_count(const Matching& m) {
  if (!m.is_perfect()) throw MatchingError("nests are defined for perfect matchings");
  int depth = 0;
  int returns = 0;
  for (char c : m.text()) {
    depth += c == '(' ? 1 : -1;
    if (depth == 0) ++returns;
  }
  return returns;
}

int nest_count(const DirectedMatching& m) {
  if (m.defect() >= 0) throw MatchingError("nests are defined for perfect matchings");
  const int n = m.size();
  const auto arcs = m.pairs();
  int outermost = 0;
  for (const auto& a : arcs) {
    const auto ia = covered(a.first, a.second, n);
    const bool enclosed = std::any_of(arcs.begin(), arcs.end(), [&](const auto& b) {
      return b != a && interval_contains(covered(b.first, b.second, n), ia, n);
    });
    if (!enclosed) ++outermost;
  }
  return outermost;
}

// Validators -----------------------------------------------------------------

bool is_non_crossing(std::span<const int> partner) {
  const int n = static_cast<int>(partner.size());
  int defects = 0;
  int last_left = -1;
  int first_right = n;
  int defect_at = -1;
  for (int v = 0; v < n; ++v) {
    const int p = partner[static_cast<std::size_t>(v)];
    if (p == kLeft) last_left = std::max(last_left, v);
    if (p == kRight) first_right = std::min(first_right, v);
    if (p == kDefect) {
      ++defects;
      defect_at = v;
    }
  }
  if (defects > 1 || last_left > first_right) return false;
  if (defect_at >= 0 && (last_left > defect_at || first_right < defect_at)) return false;
  for (int i = 0; i < n; ++i) {
    const int j = partner[static_cast<std::size_t>(i)];
    if (j <= i) continue;
    for (int k = i + 1; k < j; ++k) {
      const int q = partner[static_cast<std::size_t>(k)];
      if (q < 0 || q < i || q > j) return false;
    }
  }
  return true;
}

bool is_non_crossing_annulus(const DirectedMatching& m) {
  const int n = m.size();
  const auto arcs = m.pairs();
  const int d = m.defect();
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    const auto ia = covered(arcs[a].first, arcs[a].second, n);
    if (d >= 0 && interval_contains(ia, {d, 1}, n)) return false;
    for (std::size_t b = a + 1; b < arcs.size(); ++b) {
      const auto ib = covered(arcs[b].first, arcs[b].second, n);
      const bool disjoint = !interval_contains(ia, {ib.first, 1}, n) && !interval_contains(ib, {ia.first, 1}, n);
      const bool nested = (interval_contains(ia, ib, n) && ia.second > ib.second) ||
                          (interval_contains(ib, ia, n) && ib.second > ia.second);
      if (!disjoint && !nested) return false;
    }
  }
  return true;
}

// Bases ----------------------------------------------------------------------

std::vector<Matching> enumerate_basis(MatchingClass cls, int n) {
  if (n <= 0) throw MatchingError("basis size must be positive");
  switch (cls) {
    case MatchingClass::Perfect:
    case MatchingClass::PeriodicUndirected:
      if (n % 2 != 0) throw MatchingError("perfect matchings need an even vertex count");
      break;
    case MatchingClass::NearPerfect:
      if (n % 2 == 0) throw MatchingError("near-perfect matchings need an odd vertex count");
      break;
    case MatchingClass::Directed:
      throw MatchingError("directed bases come from enumerate_directed_basis");
    default:
      break;
  }
  std::vector<Matching> out;
  std::string prefix;
  dfs_strings(prefix, n, 0, cls, false, out);
  return out;
}

// JSON -----------------------------------------------------------------------

std::string to_json(const Matching& m) {
  nlohmann::ordered_json j;
  j["n"] = m.size();
  j["pairs"] = nlohmann::ordered_json::array();
  j["left"] = nlohmann::ordered_json::array();
  j["right"] = nlohmann::ordered_json::array();
  j["defect"] = nullptr;
  for (int v = 0; v < m.size(); ++v) {
    const int p = m.partner(v);
    if (p > v) j["pairs"].push_back({v + 1, p + 1});
    if (p == kLeft) j["left"].push_back(v + 1);
    if (p == kRight) j["right"].push_back(v + 1);
    if (p == kDefect) j["defect"] = v + 1;
  }
  return j.dump();
}

std::string to_json(const DirectedMatching& m) {
  nlohmann::ordered_json j;
  j["n"] = m.size();
  j["pairs"] = nlohmann::ordered_json::array();
  j["left"] = nlohmann::ordered_json::array();
  j["right"] = nlohmann::ordered_json::array();
  j["defect"] = nullptr;
  for (const auto& [first, second] : m.pairs()) j["pairs"].push_back({first + 1, second + 1});
  if (m.defect() >= 0) j["defect"] = m.defect() + 1;
  return j.dump();
}

}  // namespace tl
