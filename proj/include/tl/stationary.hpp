#pragma once

// Loop Hamiltonians as exact integer intensity matrices and their stationary
// states.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "tl/generators.hpp"

namespace tl {

class KernelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// H = sum over generators g of (1 - g), stored column-wise. Column i holds
/// the image of basis element i.
class LoopHamiltonian {
 public:
  Boundary bc() const { return bc_; }
  int n() const { return n_; }
  MatchingClass matching_class() const { return cls_; }
  const std::vector<std::string>& basis() const { return basis_; }
  std::size_t dimension() const { return basis_.size(); }

  /// Sparse column: row index -> entry.
  const std::map<int, std::int64_t>& column(std::size_t i) const { return columns_.at(i); }
  std::int64_t at(std::size_t row, std::size_t col) const;

  std::vector<std::vector<std::int64_t>> dense() const;

  /// Zero column sums and non-positive off-diagonals.
  bool is_intensity_matrix() const;

  friend LoopHamiltonian build_hamiltonian(Boundary bc, int n);

 private:
  Boundary bc_ = Boundary::Closed;
  int n_ = 0;
  MatchingClass cls_ = MatchingClass::Perfect;
  std::vector<std::string> basis_;
  std::vector<std::map<int, std::int64_t>> columns_;
};

/// Throws MatchingError for an inconsistent (bc, n).
LoopHamiltonian build_hamiltonian(Boundary bc, int n);

struct StationaryState {
  Boundary bc = Boundary::Closed;
  int n = 0;
  std::vector<std::string> basis;
  std::vector<mpz_class> coefficients;  // positive, overall gcd 1
};

/// Dimension of the right kernel, by exact elimination.
std::size_t kernel_dimension(const LoopHamiltonian& h);

enum class KernelMethod {
  Auto,     // Bareiss up to dimension 200, modular above
  Bareiss,  // fraction-free Gauss-Jordan over the integers
  Modular   // elimination mod 31-bit primes, CRT and rational reconstruction
};

/// Exact one-dimensional kernel scaled to coprime positive integers. Throws
/// KernelError when the kernel is not one-dimensional or not positive. Both
/// methods finish with an exact integer check of H x = 0.
StationaryState stationary_state(const LoopHamiltonian& h, KernelMethod method = KernelMethod::Auto);

struct StateStatistics {
  mpz_class sum;
  mpz_class max;
  mpz_class min;
};

StateStatistics state_statistics(const StationaryState& s);

/// Coefficient of the basis element with this parenthesis text. For the
/// periodic undirected class, cyclic notation is accepted.
mpz_class coefficient_of(const StationaryState& s, std::string_view text);
mpz_class coefficient_of(const StationaryState& s, const Matching& m);
mpz_class coefficient_of(const StationaryState& s, const DirectedMatching& m);

}  // namespace tl
