#include "pargrade/rootdata.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>

#include "pargrade/exactlin.hpp"

namespace pargrade::rootdata {

using exactlin::Integer;
using exactlin::IntMatrix;
using exactlin::IntVector;
using exactlin::Rational;
using exactlin::RationalVector;

namespace {

IntVector to_int_vector(const Weight& w) { return IntVector(w.begin(), w.end()); }

Weight unit(std::size_t n, std::size_t i, long long s = 1) {
  Weight w(n, 0);
  w[i] = s;
  return w;
}

Weight add(const Weight& a, const Weight& b, long long sb = 1) {
  Weight w(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) w[i] = a[i] + sb * b[i];
  return w;
}

std::vector<std::size_t> closure_of(const std::vector<Weight>& vectors, std::size_t ambient_rank,
                                    const std::vector<std::size_t>& generators) {
  std::vector<IntVector> gens;
  for (auto i : generators) gens.push_back(to_int_vector(vectors[i]));
  exactlin::LatticeSpan span(gens, ambient_rank);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vectors.size(); ++i)
    if (span.contains(to_int_vector(vectors[i]))) out.push_back(i);
  return out;
}

}  // namespace

GroupType parse_group_type(const std::string& s) {
  if (s == "sl" || s == "SL") return GroupType::SL;
  if (s == "sp" || s == "Sp" || s == "SP") return GroupType::Sp;
  throw UnsupportedType("unsupported group type '" + s + "' (expected sl or sp)");
}

std::string to_string(GroupType t) { return t == GroupType::SL ? "SL" : "Sp"; }

long long RootDatum::pairing(const Weight& x, const Weight& y) const {
  long long s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

Weight RootDatum::reflect(std::size_t alpha, const Weight& beta) const {
  return add(beta, roots[alpha], -pairing(beta, coroots[alpha]));
}

std::size_t RootDatum::index_of_root(const Weight& w) const {
  auto it = std::find(roots.begin(), roots.end(), w);
  return static_cast<std::size_t>(it - roots.begin());
}

RootDatum standard_root_datum(GroupType type, int n) {
  RootDatum rd;
  if (type == GroupType::SL) {
    if (n < 2) throw PreconditionViolated("SL(n) needs n >= 2");
    const auto r = static_cast<std::size_t>(n);
    rd.label = "SL(" + std::to_string(n) + ")";
    rd.rank = r;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        if (i == j) continue;
        Weight a = add(unit(r, i), unit(r, j), -1);
        rd.roots.push_back(a);
        rd.coroots.push_back(a);
      }
    rd.character_relations.push_back(Weight(r, 1));
    return rd;
  }
  if (n < 2 || n % 2 != 0) throw PreconditionViolated("Sp(n) needs n even and >= 2");
  const auto m = static_cast<std::size_t>(n / 2);
  rd.label = "Sp(" + std::to_string(n) + ")";
  rd.rank = m;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (long long si : {1, -1})
        for (long long sj : {1, -1}) {
          Weight a = add(unit(m, i, si), unit(m, j, sj));
          rd.roots.push_back(a);
          rd.coroots.push_back(a);
        }
  for (std::size_t i = 0; i < m; ++i)
    for (long long s : {1, -1}) {
      rd.roots.push_back(unit(m, i, 2 * s));
      rd.coroots.push_back(unit(m, i, s));
    }
  return rd;
}

std::vector<ClosedSubsystem> closed_subsets(const std::vector<Weight>& vectors, std::size_t ambient_rank) {
  if (vectors.size() > kMaxRootsForEnumeration)
    throw TooLarge(std::to_string(vectors.size()) + " roots exceed the enumeration guard of " +
                   std::to_string(kMaxRootsForEnumeration));
  // Every closed set is reached by adjoining one vector at a time and closing.
  std::set<std::vector<std::size_t>> seen{{}};
  std::deque<std::vector<std::size_t>> queue{{}};
  while (!queue.empty()) {
    auto cur = std::move(queue.front());
    queue.pop_front();
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (std::binary_search(cur.begin(), cur.end(), i)) continue;
      auto gens = cur;
      gens.push_back(i);
      auto next = closure_of(vectors, ambient_rank, gens);
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  std::vector<ClosedSubsystem> out;
  for (const auto& s : seen) out.push_back(ClosedSubsystem{s});
  std::sort(out.begin(), out.end(), [](const ClosedSubsystem& a, const ClosedSubsystem& b) {
    if (a.member_indices.size() != b.member_indices.size())
      return a.member_indices.size() < b.member_indices.size();
    return a.member_indices < b.member_indices;
  });
  return out;
}

std::vector<ClosedSubsystem> closed_subsystems(const RootDatum& rd) { return closed_subsets(rd.roots, rd.rank); }

std::set<long long> torsion_primes_of_quotient(const std::vector<Weight>& rows, std::size_t ambient_rank) {
  std::set<long long> out;
  if (rows.empty()) return out;
  IntMatrix m(rows.size(), ambient_rank);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < ambient_rank; ++j) m(i, j) = rows[i][j];
  for (const auto& d : exactlin::smith_normal_form(m).torsion())
    for (auto p : exactlin::prime_divisors(d)) out.insert(p);
  return out;
}

std::set<long long> bad_primes(const RootDatum& rd, std::vector<std::vector<long long>>* coefficients) {
  const auto& roots = rd.roots;
  if (roots.empty()) return {};
  // Generic linear functional to split positive and negative roots.
  std::vector<long long> c(rd.rank);
  for (long long base = 2;; ++base) {
    long long v = 1;
    for (std::size_t i = rd.rank; i-- > 0;) {
      c[i] = v;
      v *= base;
    }
    bool generic = std::all_of(roots.begin(), roots.end(), [&](const Weight& r) { return rd.pairing(r, c) != 0; });
    if (generic) break;
  }
  std::vector<std::size_t> positive;
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (rd.pairing(roots[i], c) > 0) positive.push_back(i);
  std::vector<std::size_t> simple;
  for (auto i : positive) {
    bool decomposable = false;
    for (auto a : positive) {
      for (auto b : positive)
        if (add(roots[a], roots[b]) == roots[i]) {
          decomposable = true;
          break;
        }
      if (decomposable) break;
    }
    if (!decomposable) simple.push_back(i);
  }
  // Connected components of the Dynkin graph.
  const std::size_t s = simple.size();
  std::vector<std::size_t> comp(s);
  std::iota(comp.begin(), comp.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
  for (std::size_t a = 0; a < s; ++a)
    for (std::size_t b = a + 1; b < s; ++b)
      if (rd.pairing(roots[simple[a]], rd.coroots[simple[b]]) != 0) comp[find(a)] = find(b);

  // Express positive roots in the simple basis.
  std::vector<RationalVector> a(rd.rank, RationalVector(s));
  for (std::size_t j = 0; j < s; ++j)
    for (std::size_t k = 0; k < rd.rank; ++k) a[k][j] = Rational(roots[simple[j]][k]);
  std::map<std::size_t, std::vector<long long>> best;  // component -> coefficients of highest root
  for (auto i : positive) {
    RationalVector rhs(rd.rank);
    for (std::size_t k = 0; k < rd.rank; ++k) rhs[k] = Rational(roots[i][k]);
    auto sol = exactlin::solve_linear(a, rhs);
    if (!sol) throw PreconditionViolated("positive root outside the span of simple roots");
    std::vector<long long> coeff(s);
    std::size_t component = s;
    long long height = 0;
    for (std::size_t j = 0; j < s; ++j) {
      coeff[j] = numerator((*sol)[j]).convert_to<long long>();
      height += coeff[j];
      if (coeff[j] != 0) component = find(j);
    }
    auto it = best.find(component);
    if (it == best.end() || std::accumulate(it->second.begin(), it->second.end(), 0LL) < height)
      best[component] = coeff;
  }
  std::set<long long> bad;
  for (const auto& [component, coeff] : best) {
    std::vector<long long> nonzero;
    for (auto x : coeff)
      if (x != 0) nonzero.push_back(x);
    if (coefficients) coefficients->push_back(nonzero);
    for (auto x : nonzero)
      for (auto p : exactlin::prime_divisors(Integer(x))) bad.insert(p);
  }
  return bad;
}

PrimeReport prime_report(const RootDatum& rd) {
  PrimeReport rep;
  rep.bad = bad_primes(rd, &rep.highest_root_coefficients);

  // Lattices Z<S^v> over all subsets S are exactly the lattices of the
  // Z-closed subsets of the coroot system; likewise on the character side.
  for (const auto& sub : closed_subsets(rd.coroots, rd.rank)) {
    std::vector<Weight> rows;
    for (auto i : sub.member_indices) rows.push_back(rd.coroots[i]);
    auto primes = torsion_primes_of_quotient(rows, rd.rank);
    rep.torsion.insert(primes.begin(), primes.end());
  }
  rep.pretty_good_excluded = rep.torsion;
  for (const auto& sub : closed_subsets(rd.roots, rd.rank)) {
    std::vector<Weight> rows = rd.character_relations;
    for (auto i : sub.member_indices) rows.push_back(rd.roots[i]);
    auto primes = torsion_primes_of_quotient(rows, rd.rank);
    rep.pretty_good_excluded.insert(primes.begin(), primes.end());
  }

  rep.rather_good_excluded = rep.bad;
  std::vector<Weight> all = rd.character_relations;
  all.insert(all.end(), rd.roots.begin(), rd.roots.end());
  auto center = torsion_primes_of_quotient(all, rd.rank);
  rep.rather_good_excluded.insert(center.begin(), center.end());
  return rep;
}

}  // namespace pargrade::rootdata
