#pragma once

#include <string>
#include <vector>

#include "pargrade/error.hpp"
#include "pargrade/exactlin.hpp"
#include "pargrade/liegrade.hpp"
#include "pargrade/rootdata.hpp"

namespace pargrade::orbitlib {

using exactlin::IntMatrix;
using exactlin::Partition;
using rootdata::GroupType;

PARGRADE_DEFINE_ERROR(WeightMismatch);
PARGRADE_DEFINE_ERROR(NotTypeA);
PARGRADE_DEFINE_ERROR(UnsortedWeights);
PARGRADE_DEFINE_ERROR(NotInComponent);

struct ComponentGroup {
  enum class Kind { Cyclic, ElementaryAbelian2 };
  Kind kind = Kind::Cyclic;
  int parameter = 1;  // d for Z/d, a for (Z/2)^a

  long long order() const;
  /// "1", "Z/4", "Z/2", "(Z/2)^2".
  std::string to_string() const;
};

struct NilpotentOrbit {
  GroupType type = GroupType::SL;
  Partition partition;
  long long dimension = 0;
  ComponentGroup component_group;
};

/// For Sp: every odd part has even multiplicity and the weight is even.
bool is_valid_partition(GroupType type, const Partition& p);

/// Orbits of SL(n) or Sp(n), largest first.
std::vector<NilpotentOrbit> nilpotent_orbits(GroupType type, int n);

long long orbit_dimension(GroupType type, const Partition& p);
ComponentGroup component_group(GroupType type, const Partition& p);

/// Dominance order: every partial sum of lambda is at most that of mu.
bool closure_leq(const Partition& lambda, const Partition& mu);

/// Representative in Jordan form (SL) or in sp for the standard form (Sp).
IntMatrix orbit_representative(GroupType type, const Partition& p);

/// A positive root of a type A quiver slice: a run of consecutive vertices.
struct Segment {
  std::size_t first = 0;  // block index of the start vertex
  std::size_t last = 0;   // block index of the end vertex
  std::size_t label = 0;  // 1-based root label
};

/// The quiver attached to (chi, n): vertices are the blocks of equal weight,
/// arrows join blocks whose weights differ by n.
struct QuiverSlice {
  std::vector<long long> block_weights;
  std::vector<std::size_t> block_sizes;
  std::vector<std::size_t> block_offsets;
  std::vector<std::vector<std::size_t>> chains;  // each chain lists block indices along the arrows
  std::vector<Segment> roots;                    // simple roots first, then by (first, last)
};

QuiverSlice quiver_slice(const liegrade::Cocharacter& chi, long long n);

struct GradedOrbitRep {
  std::vector<int> multiplicities;  // indexed by root label - 1
  std::string decomposition;        // e.g. "a4+a6", "a1+2a2+a3"
  IntMatrix representative;
  long long dimension = 0;
};

/// G_0-orbits on g_n for sl_d with weakly decreasing weights, by orbit
/// dimension descending, ties by decomposition.
std::vector<GradedOrbitRep> graded_orbit_reps_typeA(const liegrade::Cocharacter& chi, long long n);

/// Rank of y -> [y, x] from g_0 to g_n.
long long graded_orbit_dimension(const liegrade::MatrixLieAlgebra& alg, const liegrade::Cocharacter& chi, long long n,
                                 const exactlin::RationalMatrix& x);

}  // namespace pargrade::orbitlib
