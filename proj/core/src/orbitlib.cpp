#include "pargrade/orbitlib.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <tuple>

namespace pargrade::orbitlib {

using exactlin::RationalMatrix;
using exactlin::RationalVector;

namespace {

long long sum_of_squares_of_transpose(const Partition& p) {
  const Partition t = p.transpose();
  long long s = 0;
  for (int c : t.parts()) s += static_cast<long long>(c) * c;
  return s;
}

void require_valid(GroupType type, const Partition& p) {
  if (!is_valid_partition(type, p))
    throw exactlin::InvalidPartition(p.to_string() + " does not label a nilpotent orbit of " + rootdata::to_string(type));
}

}  // namespace

long long ComponentGroup::order() const {
  if (kind == Kind::Cyclic) return parameter;
  return 1LL << parameter;
}

std::string ComponentGroup::to_string() const {
  if (order() == 1) return "1";
  if (kind == Kind::Cyclic) return "Z/" + std::to_string(parameter);
  if (parameter == 1) return "Z/2";
  return "(Z/2)^" + std::to_string(parameter);
}

bool is_valid_partition(GroupType type, const Partition& p) {
  if (p.length() == 0) return false;
  if (type == GroupType::SL) return true;
  if (p.weight() % 2 != 0) return false;
  for (int part : p.parts())
    if (part % 2 != 0 && p.multiplicity(part) % 2 != 0) return false;
  return true;
}

long long orbit_dimension(GroupType type, const Partition& p) {
  require_valid(type, p);
  const long long n = p.weight();
  if (type == GroupType::SL) return n * n - sum_of_squares_of_transpose(p);
  const long long m = n / 2;
  long long odd = 0;
  for (int part : p.parts()) odd += part % 2;
  return 2 * m * m + m - (sum_of_squares_of_transpose(p) + odd) / 2;
}

ComponentGroup component_group(GroupType type, const Partition& p) {
  require_valid(type, p);
  ComponentGroup g;
  if (type == GroupType::SL) {
    int d = 0;
    for (int part : p.parts()) d = std::gcd(d, part);
    g.kind = ComponentGroup::Kind::Cyclic;
    g.parameter = d;
    return g;
  }
  std::vector<int> evens;
  for (int part : p.parts())
    if (part % 2 == 0 && std::find(evens.begin(), evens.end(), part) == evens.end()) evens.push_back(part);
  g.kind = ComponentGroup::Kind::ElementaryAbelian2;
  g.parameter = static_cast<int>(evens.size());
  return g;
}

std::vector<NilpotentOrbit> nilpotent_orbits(GroupType type, int n) {
  if (n < 1) throw PreconditionViolated("n must be positive");
  if (type == GroupType::Sp && n % 2 != 0) throw PreconditionViolated("Sp(n) needs n even");
  std::vector<NilpotentOrbit> out;
  for (const auto& p : exactlin::partitions_of(n)) {
    if (!is_valid_partition(type, p)) continue;
    out.push_back(NilpotentOrbit{type, p, orbit_dimension(type, p), component_group(type, p)});
  }
  return out;
}

bool closure_leq(const Partition& lambda, const Partition& mu) {
  if (lambda.weight() != mu.weight())
    throw WeightMismatch(lambda.to_string() + " and " + mu.to_string() + " have different weights");
  long long a = 0, b = 0;
  const std::size_t len = std::max(lambda.length(), mu.length());
  for (std::size_t i = 0; i < len; ++i) {
    a += i < lambda.length() ? lambda.parts()[i] : 0;
    b += i < mu.length() ? mu.parts()[i] : 0;
    if (a > b) return false;
  }
  return true;
}

IntMatrix orbit_representative(GroupType type, const Partition& p) {
  require_valid(type, p);
  if (type == GroupType::SL) return exactlin::jordan_matrix(p);
  const std::size_t d = static_cast<std::size_t>(p.weight());
  const std::size_t m = d / 2;
  IntMatrix x(d, d);
  std::size_t next = 0;
  // x = [[A, S], [0, -A^T]]: an even part 2k is J_k in A with S(k, k) = 1;
  // a pair of odd parts k, k is J_k in A with no S contribution.
  auto place_jordan = [&](std::size_t start, std::size_t k) {
    for (std::size_t i = 0; i + 1 < k; ++i) {
      x(start + i, start + i + 1) = 1;
      x(m + start + i + 1, m + start + i) = -1;
    }
  };
  const auto& parts = p.parts();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto k = static_cast<std::size_t>(parts[i]);
    if (k % 2 == 0) {
      place_jordan(next, k / 2);
      x(next + k / 2 - 1, m + next + k / 2 - 1) = 1;
      next += k / 2;
    } else {
      place_jordan(next, k);
      next += k;
      ++i;  // the partner odd part
    }
  }
  return x;
}

QuiverSlice quiver_slice(const liegrade::Cocharacter& chi, long long n) {
  if (n == 0) throw PreconditionViolated("degree n must be nonzero");
  const auto& w = chi.weights;
  if (w.empty()) throw PreconditionViolated("empty cocharacter");
  if (std::accumulate(w.begin(), w.end(), 0LL) != 0) throw NotTypeA("weights do not sum to zero");
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] > w[i - 1]) throw UnsortedWeights("weights must be weakly decreasing");

  QuiverSlice q;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i == 0 || w[i] != w[i - 1]) {
      q.block_weights.push_back(w[i]);
      q.block_sizes.push_back(0);
      q.block_offsets.push_back(i);
    }
    ++q.block_sizes.back();
  }
  const std::size_t nb = q.block_weights.size();
  auto block_of_weight = [&](long long v) -> std::size_t {
    for (std::size_t b = 0; b < nb; ++b)
      if (q.block_weights[b] == v) return b;
    return nb;
  };
  // Chains follow the arithmetic progressions of step |n| through the block weights.
  const long long step = n > 0 ? n : -n;
  std::vector<bool> used(nb, false);
  for (std::size_t b = 0; b < nb; ++b) {
    if (used[b]) continue;
    std::size_t top = b;
    while (block_of_weight(q.block_weights[top] + step) < nb) top = block_of_weight(q.block_weights[top] + step);
    std::vector<std::size_t> chain;
    for (std::size_t c = top; c < nb; c = block_of_weight(q.block_weights[c] - step)) {
      chain.push_back(c);
      used[c] = true;
    }
    q.chains.push_back(std::move(chain));
  }
  std::sort(q.chains.begin(), q.chains.end());

  for (std::size_t b = 0; b < nb; ++b) q.roots.push_back(Segment{b, b, b + 1});
  std::vector<Segment> longer;
  for (const auto& chain : q.chains)
    for (std::size_t s = 0; s < chain.size(); ++s)
      for (std::size_t e = s + 1; e < chain.size(); ++e) longer.push_back(Segment{chain[s], chain[e], 0});
  std::sort(longer.begin(), longer.end(),
            [](const Segment& a, const Segment& b) { return std::tie(a.first, a.last) < std::tie(b.first, b.last); });
  for (auto& s : longer) {
    s.label = q.roots.size() + 1;
    q.roots.push_back(s);
  }
  return q;
}

std::vector<GradedOrbitRep> graded_orbit_reps_typeA(const liegrade::Cocharacter& chi, long long n) {
  const QuiverSlice q = quiver_slice(chi, n);
  const std::size_t d = chi.size();

  auto position_in_chain = [&](std::size_t block) -> std::pair<std::size_t, std::size_t> {
    for (std::size_t c = 0; c < q.chains.size(); ++c)
      for (std::size_t i = 0; i < q.chains[c].size(); ++i)
        if (q.chains[c][i] == block) return {c, i};
    return {q.chains.size(), 0};
  };
  // Blocks covered by each root, in chain order.
  std::vector<std::vector<std::size_t>> covers;
  for (const auto& r : q.roots) {
    auto [c, s] = position_in_chain(r.first);
    const std::size_t e = position_in_chain(r.last).second;
    std::vector<std::size_t> blocks(q.chains[c].begin() + static_cast<std::ptrdiff_t>(s),
                                    q.chains[c].begin() + static_cast<std::ptrdiff_t>(e) + 1);
    covers.push_back(std::move(blocks));
  }

  std::vector<std::vector<int>> solutions;
  std::vector<int> mult(q.roots.size(), 0);
  std::vector<long long> remaining(q.block_sizes.begin(), q.block_sizes.end());
  std::function<void(std::size_t)> search = [&](std::size_t r) {
    if (r == q.roots.size()) {
      if (std::all_of(remaining.begin(), remaining.end(), [](long long v) { return v == 0; })) solutions.push_back(mult);
      return;
    }
    long long cap = std::numeric_limits<long long>::max();
    for (auto b : covers[r]) cap = std::min(cap, remaining[b]);
    for (long long k = 0; k <= cap; ++k) {
      mult[r] = static_cast<int>(k);
      for (auto b : covers[r]) remaining[b] -= k;
      search(r + 1);
      for (auto b : covers[r]) remaining[b] += k;
    }
    mult[r] = 0;
  };
  search(0);

  const auto alg = liegrade::MatrixLieAlgebra::build(GroupType::SL, d);
  std::vector<GradedOrbitRep> out;
  for (const auto& m : solutions) {
    GradedOrbitRep rep;
    rep.multiplicities = m;
    rep.representative = IntMatrix(d, d);
    std::vector<std::size_t> next_slot(q.block_offsets.begin(), q.block_offsets.end());
    for (std::size_t r = 0; r < q.roots.size(); ++r) {
      if (m[r] == 0) continue;
      if (!rep.decomposition.empty()) rep.decomposition += "+";
      if (m[r] > 1) rep.decomposition += std::to_string(m[r]);
      rep.decomposition += "a" + std::to_string(q.roots[r].label);
      for (int copy = 0; copy < m[r]; ++copy) {
        std::vector<std::size_t> slots;
        for (auto b : covers[r]) slots.push_back(next_slot[b]++);
        // Arrow from weight w to weight w + n: column = source slot, row = target slot.
        for (std::size_t i = 0; i + 1 < slots.size(); ++i) {
          const std::size_t a = covers[r][i], b = covers[r][i + 1];
          if (q.block_weights[b] - q.block_weights[a] == n)
            rep.representative(slots[i + 1], slots[i]) = 1;
          else
            rep.representative(slots[i], slots[i + 1]) = 1;
        }
      }
    }
    rep.dimension = graded_orbit_dimension(alg, chi, n, RationalMatrix(rep.representative));
    out.push_back(std::move(rep));
  }
  std::sort(out.begin(), out.end(), [](const GradedOrbitRep& a, const GradedOrbitRep& b) {
    if (a.dimension != b.dimension) return a.dimension > b.dimension;
    return a.decomposition < b.decomposition;
  });
  return out;
}

long long graded_orbit_dimension(const liegrade::MatrixLieAlgebra& alg, const liegrade::Cocharacter& chi, long long n,
                                 const RationalMatrix& x) {
  liegrade::validate_cocharacter(alg, chi);
  if (!alg.contains(x) || !liegrade::is_homogeneous(x, chi, n))
    throw NotInComponent("x is not in g_" + std::to_string(n));
  const auto g0 = liegrade::graded_component(alg, chi, 0).basis;
  std::vector<RationalVector> images;
  for (const auto& y : g0) images.push_back(exactlin::commutator(y, x).flatten());
  return static_cast<long long>(exactlin::span_basis(images).size());
}

}  // namespace pargrade::orbitlib
