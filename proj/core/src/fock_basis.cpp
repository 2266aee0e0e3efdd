#include "eljx/fock_basis.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "eljx/common.hpp"

namespace eljx {

namespace {

// C(n, k) by the multiplicative formula, exact for the ranges we accept.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

// Compositions of `particles` into `parts` ordered slots.
std::uint64_t compositions(int particles, int parts) {
  if (parts == 0) return particles == 0 ? 1 : 0;
  return binomial(static_cast<std::uint64_t>(particles + parts - 1),
                  static_cast<std::uint64_t>(parts - 1));
}

} // namespace

std::uint64_t basis_dimension(int N, int L) {
  if (L < 1) throw validation_error("basis_dimension: L must be >= 1 (got " + std::to_string(L) + ")");
  if (N < 0) throw validation_error("basis_dimension: N must be >= 0 (got " + std::to_string(N) + ")");
  return binomial(static_cast<std::uint64_t>(L + N - 1), static_cast<std::uint64_t>(N));
}

FockBasis::FockBasis(int N, int L, std::vector<Occupation> states)
    : N_(N), L_(L), states_(std::move(states)) {}

FockBasis FockBasis::enumerate(int N, int L) {
  const std::uint64_t dim = basis_dimension(N, L);
  std::vector<Occupation> states;
  states.reserve(dim);

  // Ascending lexicographic order on (n_1, ..., n_L): start from all
  // particles on the last site, then repeatedly move one particle from the
  // tail block onto the rightmost incrementable earlier site.
  Occupation v(static_cast<std::size_t>(L), 0);
  v[static_cast<std::size_t>(L) - 1] = N;
  states.push_back(v);
  while (true) {
    // Successor: find the last slot p with particles strictly to its right,
    // move one of them onto p, and park the rest on the final site.
    int p = L - 2;
    int tail = v[static_cast<std::size_t>(L) - 1];
    while (p >= 0 && tail == 0) {
      tail += v[static_cast<std::size_t>(p)];
      --p;
    }
    if (p < 0) break; // v = (N, 0, ..., 0): last state
    // Increment slot p, dump the remaining tail onto the last site.
    const int moved = tail - 1;
    v[static_cast<std::size_t>(p)] += 1;
    for (std::size_t q = static_cast<std::size_t>(p) + 1; q < static_cast<std::size_t>(L); ++q) v[q] = 0;
    v[static_cast<std::size_t>(L) - 1] = moved;
    states.push_back(v);
  }

  return FockBasis(N, L, std::move(states));
}

std::size_t FockBasis::index_of(const Occupation& v) const {
  if (v.size() != static_cast<std::size_t>(L_)) {
    throw validation_error("index_of: occupation vector not in basis (length " +
                           std::to_string(v.size()) + ", expected " + std::to_string(L_) + ")");
  }
  int sum = 0;
  for (int n : v) {
    if (n < 0) throw validation_error("index_of: occupation vector not in basis (negative entry)");
    sum += n;
  }
  if (sum != N_) {
    throw validation_error("index_of: occupation vector not in basis (particle count " +
                           std::to_string(sum) + ", expected " + std::to_string(N_) + ")");
  }

  // Combinatorial ranking: count lexicographically smaller states by fixing
  // the prefix and summing completions for every smaller entry at each slot.
  std::uint64_t rank = 0;
  int remaining = N_;
  for (int j = 0; j < L_; ++j) {
    const int nj = v[static_cast<std::size_t>(j)];
    for (int smaller = 0; smaller < nj; ++smaller) {
      rank += compositions(remaining - smaller, L_ - j - 1);
    }
    remaining -= nj;
  }
  return static_cast<std::size_t>(rank);
}

void FockBasis::write_csv(std::ostream& os) const {
  os << "l";
  for (int j = 1; j <= L_; ++j) os << ",n_" << j;
  os << "\n";
  for (std::size_t i = 0; i < states_.size(); ++i) {
    os << (i + 1);
    for (int n : states_[i]) os << "," << n;
    os << "\n";
  }
}

} // namespace eljx
