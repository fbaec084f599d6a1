#pragma once

// Temperley-Lieb generators at loop weight 1 acting on matchings.
//
// Generator indices are 1-based like the sites they act on: E(j) acts on
// vertices j and j+1, the periodic E(n) on vertices n and 1. Closed loops,
// lines joining the two external vertices and non-contractible loops are all
// erased with weight 1.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tl/matching.hpp"

namespace tl {

enum class Boundary { Closed, Mixed, Open, Periodic, PeriodicDirected };

std::string_view to_string(Boundary bc);
Boundary boundary_from_string(std::string_view s);

struct Generator {
  enum class Kind { E, FLeft, FRight };
  Kind kind = Kind::E;
  int index = 1;  // E: site j; FLeft: 1; FRight: n

  static Generator e(int j) { return {Kind::E, j}; }
  static Generator f_left() { return {Kind::FLeft, 1}; }
  static Generator f_right(int n) { return {Kind::FRight, n}; }

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// "e3", "f1", "fn" / "f<n>".
Generator parse_generator(std::string_view text, int n);
std::string to_string(const Generator& g);

/// Throws MatchingError if g is not a generator of cls at size n.
void check_generator(const Generator& g, MatchingClass cls, int n);

/// Local rewrite on the partner array.
Matching apply(const Generator& g, const Matching& m, MatchingClass cls);
DirectedMatching apply(const Generator& g, const DirectedMatching& m);

enum class Side { Left, Right };
Matching apply_f(Side side, const Matching& m, MatchingClass cls = MatchingClass::Extended);

/// Slow reference: stack the generator diagram on the matching and trace
/// every strand. Used to cross-check apply().
Matching compose_reference(const Generator& g, const Matching& m, MatchingClass cls);
DirectedMatching compose_reference(const Generator& g, const DirectedMatching& m);

/// Matching class and generator set of a loop Hamiltonian.
MatchingClass basis_class(Boundary bc, int n);
std::vector<Generator> generators_for(Boundary bc, int n);
std::vector<Generator> generators_for(MatchingClass cls, int n);

/// Closure of ()()..() (or ()..()|) under E(1..n).
std::vector<DirectedMatching> enumerate_directed_basis(int n);

/// Basis rendered to text plus the image of every basis element under
/// every generator, as basis indices.
struct ActionTable {
  Boundary bc = Boundary::Closed;
  int n = 0;
  MatchingClass cls = MatchingClass::Perfect;
  std::vector<std::string> basis;
  std::vector<Generator> generators;
  std::vector<std::vector<int>> image;  // image[g][i]
};

ActionTable build_action_table(Boundary bc, int n);

struct RelationCheck {
  std::string relation;  // e.g. "e2 e3 e2 = e2"
  bool holds = true;
  std::string witness;   // first basis element where it fails
};

struct RelationReport {
  MatchingClass cls = MatchingClass::Perfect;
  int n = 0;
  std::vector<RelationCheck> checks;
  bool all_hold() const;
  /// Looks up a check by its relation text.
  std::optional<RelationCheck> find(std::string_view relation) const;
};

/// Verifies the Temperley-Lieb relations pointwise on the whole basis.
/// For the periodic classes the comparison e_n e_1 e_n against both e_n
/// and the identity is recorded rather than asserted.
RelationReport check_relations(MatchingClass cls, int n);

}  // namespace tl
