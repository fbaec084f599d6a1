#pragma once

// Cross-module checks: stationary states against FPL censuses, nest
// distributions against their formulas, hexagon coefficients three ways.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "tl/fpl.hpp"
#include "tl/formulas.hpp"
#include "tl/stationary.hpp"

namespace tl {

enum class Status { Pass, Fail, Skip };
std::string_view to_string(Status s);

struct VerificationCase {
  std::string parameters;
  std::string expected;  // exact decimal or fraction
  std::string computed;
  Status status = Status::Pass;
  std::string note;
};

struct VerificationReport {
  std::string subject;
  std::vector<VerificationCase> cases;
  std::vector<std::string> notes;  // calibration records and diagnostics
  double seconds = 0;

  /// Fail if any case fails, Skip if every case was skipped, else Pass.
  /// A report without cases passes.
  Status overall() const;
  void add(std::string parameters, const std::string& expected, const std::string& computed,
           std::string note = {});
  void skip(std::string parameters, std::string why);
};

std::string report_to_json(const VerificationReport& r);
std::string report_to_text(const VerificationReport& r);

struct Budgets {
  int closed = 16;    // largest closed system size for stationary states
  int periodic = 12;  // periodic and periodic-directed
  int mixed = 12;
  int open = 10;
  CensusBudget census;
};

bool stationary_within_budget(Boundary bc, int n, const Budgets& b);

/// Numbering direction chosen for a family at its smallest nontrivial size.
struct Calibration {
  GridFamily family = GridFamily::G;
  int size = 0;
  Numbering numbering = Numbering::CounterClockwise;
  std::string record;
};

/// Smallest size used to calibrate a family.
int calibration_size(GridFamily f);

/// Shared state for a run: budgets, census options, calibrations and a
/// stationary-state memo. Thread-safe.
class VerifyContext {
 public:
  Budgets budgets;
  CensusOptions census_options;

  /// Calibrates on first use. Throws KernelError/GridError when neither
  /// direction works.
  Calibration calibration(GridFamily f);
  const StationaryState& stationary(Boundary bc, int n);
  Census census_of(const GridSpec& g);

 private:
  std::recursive_mutex mu_;
  std::map<GridFamily, Calibration> calibrations_;
  std::map<std::pair<int, int>, std::shared_ptr<const StationaryState>> states_;
};

/// Grid compared with the stationary state of (bc, n), with ccw numbering.
/// Throws MatchingError when there is none (open boundaries, bad parity).
GridSpec grid_for(Boundary bc, int n);

VerificationReport verify_rs(Boundary bc, int n, VerifyContext& ctx);

enum class NestFamily { V, HT };
NestFamily nest_family_from_string(std::string_view s);
VerificationReport verify_nests(NestFamily family, int n, VerifyContext& ctx);

VerificationReport verify_hex(int s_max, int t_max, int p_max, VerifyContext& ctx, int s_min = 0, int t_min = 0,
                              int p_min = 0);

/// Formula identities for sizes 1..n_max.
VerificationReport verify_identities(int n_max);
/// 5F4 at (a, d) = (3/2, -1/3) for m = 0..m_max.
VerificationReport verify_strange(int m_max);

/// Printed average-nest tables: 2n -> (value, numerator and denominator
/// factorisations as printed).
struct TableEntry {
  int n;
  mpq_class value;
  mpz_class numerator_factored;
  mpz_class denominator_factored;
};
const std::vector<TableEntry>& nest_table(NestFamily f);

/// Formula averages against the printed tables.
VerificationReport verify_nest_table(NestFamily family);

}  // namespace tl
