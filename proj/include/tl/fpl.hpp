#pragma once

// Alternating sign matrices, six-vertex configurations with domain-wall
// boundaries and fully packed loop diagrams on the grid families
//
//   G(n)          n x n square, perfect matchings on 2n sites read on a circle
//   GV(2n)        (2n+1)-square with vertical symmetry, perfect matchings on 2n
//   GV_ODD(2n+1)  (2n+1) x n half grid, one strand ends on the axis side
//   GVH(n)        (2n+3)-square with both mirror symmetries, right-extended on n
//   GHT(N)        N-square with half-turn symmetry, directed matchings on N
//
// Symmetric families are enumerated on the full square; the matching is read
// off a fundamental region.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "tl/matching.hpp"

namespace tl {

class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GridFamily { G, GV, GVOdd, GVH, GHT, GHTOdd };
enum class Symmetry { None, Vertical, VerticalHorizontal, HalfTurn };

std::string_view to_string(GridFamily f);
std::string_view to_string(Symmetry s);
/// Accepts "g", "gv", "gv-odd", "gvh", "ght", "ght-odd" and the short forms
/// "v", "vh", "ht".
GridFamily grid_family_from_string(std::string_view s);

/// Site numbering direction around the fundamental region.
enum class Numbering { CounterClockwise, Clockwise };
std::string_view to_string(Numbering d);
Numbering numbering_from_string(std::string_view s);

/// A designated boundary edge. Horizontal external edges sit left of column
/// `col` (col == cols for the right boundary); vertical ones sit above row
/// `row` (row == rows for the bottom boundary).
struct Site {
  enum class Side { Left, Bottom, Right, Top };
  Side side = Side::Left;
  int row = 0;
  int col = 0;
  friend bool operator==(const Site&, const Site&) = default;
};

struct GridSpec {
  GridFamily family = GridFamily::G;
  int n = 1;            // family parameter as in the family name
  int square = 1;       // full square size N (GV_ODD: height of the half grid)
  Symmetry symmetry = Symmetry::None;
  bool corner_a = true; // upper left vertex on sublattice A
  int sites = 0;        // number of numbered matching sites
  MatchingClass matching_class = MatchingClass::Perfect;
  Numbering numbering = Numbering::CounterClockwise;
  /// Designated external edges of the full square (GV_ODD: of the half
  /// grid, axis exits excluded) in counterclockwise order from the top of
  /// the left side.
  std::vector<Site> designated;
};

/// Validates the parameter: GV needs even n >= 2, GV_ODD odd n >= 3, GHT even,
/// GHT_ODD odd.
GridSpec make_grid(GridFamily family, int n, Numbering numbering = Numbering::CounterClockwise);

/// Size of the loop model the grid is compared with: 2n for G(n), n otherwise.
int loop_size(const GridSpec& g);

// ASMs and six-vertex configurations -----------------------------------

using Asm = std::vector<std::vector<int>>;

bool is_asm(const Asm& a);

/// Edge arrows. h[r][c] is the horizontal edge left of vertex (r,c),
/// c = 0..N; true points right. v[r][c] is the vertical edge above vertex
/// (r,c), r = 0..N; true points up.
struct SixVertexConfig {
  int size = 0;
  std::vector<std::vector<bool>> h;
  std::vector<std::vector<bool>> v;
  friend bool operator==(const SixVertexConfig&, const SixVertexConfig&) = default;
};

/// Throws GridError for an invalid ASM.
SixVertexConfig asm_to_sixvertex(const Asm& a);
/// Inverse; throws GridError if the ice rule or the boundary fails.
Asm sixvertex_to_asm(const SixVertexConfig& c);
bool satisfies_ice_rule(const SixVertexConfig& c);
bool has_domain_wall_boundary(const SixVertexConfig& c);

/// Occupied edges, same layout as SixVertexConfig over a rows x cols grid.
struct FplConfig {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<bool>> h;  // rows x (cols+1)
  std::vector<std::vector<bool>> v;  // (rows+1) x cols
  Asm matrix;                        // empty for GV_ODD
  friend bool operator==(const FplConfig&, const FplConfig&) = default;
};

/// A-vertices keep inward arrows, B-vertices outward ones.
FplConfig sixvertex_to_fpl(const SixVertexConfig& c, bool corner_a = true);
bool is_fully_packed(const FplConfig& f);

// Enumeration ---------------------------------------------------------------

/// Symmetric ASMs of size n, one branch per free cell of the fundamental
/// domain.
void for_each_asm(int n, Symmetry sym, const std::function<void(const Asm&)>& visit);
std::vector<Asm> enumerate_asms(int n, Symmetry sym = Symmetry::None);

/// Applies the symmetry (mirror, both mirrors or half turn) to a matrix.
bool is_symmetric(const Asm& a, Symmetry sym);

void for_each_fpl(const GridSpec& g, const std::function<void(const FplConfig&)>& visit);
std::vector<FplConfig> enumerate_fpl(const GridSpec& g);
/// Splits the search into independent subtrees handled by `threads`
/// workers; visit(worker, f) runs concurrently.
void for_each_fpl_parallel(const GridSpec& g, int threads,
                           const std::function<void(int, const FplConfig&)>& visit);

/// Boundary connectivity of a diagram. Returns the line text in the grid's
/// matching class (directed text for the half-turn families). Throws
/// GridError if a strand ends at an undesignated edge.
std::string extract_matching(const FplConfig& f, const GridSpec& g);

// Census ------------------------------------------------------------------

struct Census {
  GridSpec grid;
  std::map<std::string, mpz_class> counts;  // matching text -> M_F(G)
  mpz_class total = 0;

  /// Exact addition of another census of the same grid.
  void merge(const Census& other);
};

struct CensusBudget {
  int plain = 9;      // largest full square without symmetry
  int symmetric = 11; // with symmetry
};

bool within_budget(const GridSpec& g, const CensusBudget& b);

struct CensusOptions {
  CensusBudget budget;
  int threads = 0;  // 0: hardware concurrency
  /// Cache directory; empty disables caching.
  std::filesystem::path cache_dir;
  /// Recount even when a cache entry exists, and check it.
  bool verify_cache = false;
  /// Writes one SVG per diagram into this directory when set.
  std::optional<std::filesystem::path> svg_dir;
};

/// Throws BudgetExceeded before doing any work when the grid is too large.
Census census(const GridSpec& g, const CensusOptions& opt = {});

/// Directory from $TL_CACHE_DIR, or empty.
std::filesystem::path default_cache_dir();
std::filesystem::path cache_file(const std::filesystem::path& dir, const GridSpec& g);

std::string census_to_json(const Census& c);
/// Throws GridError on a schema mismatch.
Census census_from_json(std::string_view json);

std::string fpl_to_svg(const FplConfig& f, const GridSpec& g);

}  // namespace tl
