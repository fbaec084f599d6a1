#pragma once

// Non-crossing matchings of a vertex line or annulus, in the variants the
// loop model needs: perfect, near-perfect, left/right extended and directed.
//
// Vertices are 0-based inside the library. The parenthesis text format is
// the universal serialization:
//   '('  vertex opens a pair (or is joined to the right external vertex)
//   ')'  vertex closes a pair (or is joined to the left external vertex)
//   '|'  unpaired defect vertex
// Basis order everywhere is plain lexicographic order on that text, which
// coincides with '(' < ')' < '|' in ASCII.

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tl {

class MatchingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class MatchingClass {
  Perfect,            // F_{2n}
  NearPerfect,        // F_{2n+1}, one defect
  RightExtended,      // F^re_n
  Extended,           // F^e_n
  Directed,           // F*_n on the annulus
  PeriodicUndirected  // F_{2n} on a circle
};

std::string_view to_string(MatchingClass c);
MatchingClass matching_class_from_string(std::string_view s);

// Partner sentinels.
inline constexpr int kLeft = -1;
inline constexpr int kRight = -2;
inline constexpr int kDefect = -3;

/// Undirected matching of a line of n vertices.
class Matching {
 public:
  Matching() = default;

  /// Validates involution, non-crossing and sentinel placement.
  explicit Matching(std::vector<int> partner);

  int size() const { return static_cast<int>(partner_.size()); }
  int partner(int v) const { return partner_.at(static_cast<std::size_t>(v)); }
  std::span<const int> partners() const { return partner_; }

  int count_left() const;
  int count_right() const;
  /// Defect vertex, or -1.
  int defect() const;
  bool is_perfect() const;

  /// Parenthesis rendering; also the equality/order key.
  const std::string& text() const { return text_; }

  friend bool operator==(const Matching& a, const Matching& b) { return a.text_ == b.text_; }
  friend std::strong_ordering operator<=>(const Matching& a, const Matching& b) {
    return a.text_ <=> b.text_;
  }

 private:
  std::vector<int> partner_;
  std::string text_;
};

/// Matching on the annulus. A pair (i,j) is the arc from i to j that keeps
/// the annulus centre on its left; it covers the cyclic interval i, i+1, ..., j.
/// Defect winding is not recorded.
class DirectedMatching {
 public:
  DirectedMatching() = default;

  /// Ordered pairs (first, second) plus an optional defect vertex (-1: none).
  DirectedMatching(int n, std::span<const std::pair<int, int>> pairs, int defect = -1);

  int size() const { return static_cast<int>(partner_.size()); }
  int partner(int v) const { return partner_.at(static_cast<std::size_t>(v)); }
  /// True if v is the first element of its ordered pair.
  bool opens(int v) const { return text_.at(static_cast<std::size_t>(v)) == '('; }
  int defect() const;
  std::vector<std::pair<int, int>> pairs() const;

  const std::string& text() const { return text_; }

  friend bool operator==(const DirectedMatching& a, const DirectedMatching& b) {
    return a.text_ == b.text_;
  }
  friend std::strong_ordering operator<=>(const DirectedMatching& a, const DirectedMatching& b) {
    return a.text_ <=> b.text_;
  }

 private:
  std::vector<int> partner_;
  std::string text_;
};

// Parsing ----------------------------------------------------------------

/// Line matching from parenthesis text. Unmatched ')' become kLeft and
/// unmatched '(' become kRight; at most one '|', which must not be enclosed.
Matching parse_parentheses(std::string_view text);

/// Parses and checks membership in a class. For PeriodicUndirected the text
/// may be a cyclic rotation (e.g. ")(())(") and is normalized to line form.
Matching parse_parentheses(std::string_view text, MatchingClass cls);

/// Cyclic parse: each '(' pairs with the next free ')' going round the annulus.
DirectedMatching parse_directed(std::string_view text);

std::string render_parentheses(const Matching& m);
std::string render_parentheses(const DirectedMatching& m);

bool belongs_to(const Matching& m, MatchingClass cls);

/// Defect <-> right-extended (p,1) identification.
Matching defect_to_right(const Matching& m);
Matching right_to_defect(const Matching& m);

// Statistics --------------------------------------------------------------

enum class DyckStep : std::uint8_t { NE, SE };
std::vector<DyckStep> to_dyck(const Matching& m);

/// Number of top-level pairs (returns of the Dyck path to the axis).
int nest_count(const Matching& m);
/// Annulus analogue: pairs whose covered interval is not inside another's.
int nest_count(const DirectedMatching& m);

// Validators (quadratic scans, independent of parsing) ------------------

bool is_non_crossing(std::span<const int> partner);
bool is_non_crossing_annulus(const DirectedMatching& m);

// Bases -------------------------------------------------------------------

/// Canonically ordered basis of a line class. The directed basis is an
/// orbit closure under the periodic generators; see tl/generators.hpp.
std::vector<Matching> enumerate_basis(MatchingClass cls, int n);

/// {"n":..,"pairs":[[i,j],..],"left":[..],"right":[..],"defect":i|null}, 1-based.
std::string to_json(const Matching& m);
std::string to_json(const DirectedMatching& m);

}  // namespace tl
