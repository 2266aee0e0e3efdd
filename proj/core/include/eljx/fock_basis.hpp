#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace eljx {

/// Occupation numbers (n_1, ..., n_L), one entry per lattice site.
using Occupation = std::vector<int>;

/// Number of configurations of N bosons on L sites: C(L+N-1, N).
/// Exact in 64-bit integers for the desk-scale ranges used here.
std::uint64_t basis_dimension(int N, int L);

/// Ordered basis of the N-particle sector on L sites.
///
/// States are enumerated in strictly ascending lexicographic order on
/// (n_1, ..., n_L), so the first state puts every particle on site L and
/// the last puts every particle on site 1. Lookup is by combinatorial
/// ranking, O(L) per query. Indices are 0-based in this API; file formats
/// and printed output use 1-based labels l = 1..D_N.
///
/// Immutable after construction; safe to share across threads.
class FockBasis {
public:
  static FockBasis enumerate(int N, int L);

  int particles() const { return N_; }
  int sites() const { return L_; }
  std::size_t size() const { return states_.size(); }

  const Occupation& state(std::size_t i) const { return states_[i]; }
  const std::vector<Occupation>& states() const { return states_; }

  /// Rank of v in the enumeration order. Throws validation_error when v is
  /// not a basis state (wrong length, negative entry, wrong particle count).
  std::size_t index_of(const Occupation& v) const;

  /// One row per state: l, n_1, ..., n_L (1-based l).
  void write_csv(std::ostream& os) const;

private:
  FockBasis(int N, int L, std::vector<Occupation> states);

  int N_ = 0;
  int L_ = 0;
  std::vector<Occupation> states_;
};

} // namespace eljx
