#pragma once

#include <set>
#include <string>
#include <vector>

#include "pargrade/error.hpp"

namespace pargrade::rootdata {

PARGRADE_DEFINE_ERROR(UnsupportedType);
PARGRADE_DEFINE_ERROR(TooLarge);

enum class GroupType { SL, Sp };

GroupType parse_group_type(const std::string& s);
std::string to_string(GroupType t);

using Weight = std::vector<long long>;

/// Root datum realised in coordinates: X and Y are both Z^rank with the dot
/// pairing. `character_relations` are extra vectors quotiented out of X (the
/// all-ones vector for SL(n), where X = Z^n / Z(1,...,1)); Y is always a
/// saturated sublattice of Z^rank, so torsion of Y/L equals torsion of Z^rank/L.
struct RootDatum {
  std::string label;
  std::size_t rank = 0;
  std::vector<Weight> roots;
  std::vector<Weight> coroots;  // parallel to roots
  std::vector<Weight> character_relations;

  long long pairing(const Weight& x, const Weight& y) const;
  /// s_alpha(beta) = beta - <beta, alpha^v> alpha.
  Weight reflect(std::size_t alpha, const Weight& beta) const;
  std::size_t index_of_root(const Weight& w) const;  // roots.size() if absent
};

RootDatum standard_root_datum(GroupType type, int n);

/// Indices into the root list, sorted ascending.
struct ClosedSubsystem {
  std::vector<std::size_t> member_indices;
  friend auto operator<=>(const ClosedSubsystem&, const ClosedSubsystem&) = default;
};

inline constexpr std::size_t kMaxRootsForEnumeration = 48;

/// All Z-closed subsystems of a finite set of integer vectors (Phi ∩ Z<S> = S),
/// deduplicated and sorted by (size, indices).
std::vector<ClosedSubsystem> closed_subsets(const std::vector<Weight>& vectors, std::size_t ambient_rank);

std::vector<ClosedSubsystem> closed_subsystems(const RootDatum& rd);

/// Primes dividing the torsion of Z^rank / <rows>.
std::set<long long> torsion_primes_of_quotient(const std::vector<Weight>& rows, std::size_t ambient_rank);

struct PrimeReport {
  std::set<long long> bad;  // good_excluded
  std::set<long long> torsion;
  std::set<long long> pretty_good_excluded;
  std::set<long long> rather_good_excluded;
  /// Coefficients of the highest root in the simple roots, per irreducible factor.
  std::vector<std::vector<long long>> highest_root_coefficients;
};

PrimeReport prime_report(const RootDatum& rd);

/// Bad primes from highest-root coefficients of each irreducible component.
std::set<long long> bad_primes(const RootDatum& rd, std::vector<std::vector<long long>>* coefficients = nullptr);

}  // namespace pargrade::rootdata
