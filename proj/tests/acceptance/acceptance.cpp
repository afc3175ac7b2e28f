// Acceptance runner: one PASS/FAIL line per criterion.
// Usage: pargrade_acceptance [criterion...]   (default: all)

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"
#include "pargrade/cohom.hpp"
#include "pargrade/exactlin.hpp"
#include "pargrade/ffgeom.hpp"
#include "pargrade/liegrade.hpp"
#include "pargrade/orbitlib.hpp"
#include "pargrade/rootdata.hpp"

namespace {

using namespace pargrade;
using exactlin::IntMatrix;
using exactlin::Partition;
using exactlin::RationalMatrix;
using liegrade::Cocharacter;
using liegrade::MatrixLieAlgebra;
using rootdata::GroupType;

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& what) { notes_.push_back(what); }
  bool ok() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

struct CliResult {
  int code;
  std::string out;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "pargrade");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str() + err.str()};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string shape_text(const std::vector<std::size_t>& s) {
  std::string r = "(";
  for (std::size_t i = 0; i < s.size(); ++i) r += (i ? "," : "") + std::to_string(s[i]);
  return r + ")";
}

liegrade::Sl2Triple triple_or_zero(const MatrixLieAlgebra& alg, const Cocharacter& chi, long long n,
                                   const RationalMatrix& x) {
  return x.is_zero() ? liegrade::Sl2Triple::zero(alg.ambient_dim()) : liegrade::adapted_sl2_triple(alg, chi, n, x);
}

// ---------------------------------------------------------------- criteria

void criterion_orbit_tables(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  struct Row {
    std::string partition;
    long long dim;
    std::string group;
  };
  auto table = [&](GroupType type, const std::vector<Row>& expected, const std::string& label) {
    const auto orbits = orbitlib::nilpotent_orbits(type, 4);
    c.expect(orbits.size() == expected.size(), label + ": orbit count");
    for (std::size_t i = 0; i < std::min(orbits.size(), expected.size()); ++i) {
      c.expect(orbits[i].partition.to_string() == expected[i].partition, label + ": partition " + expected[i].partition);
      c.expect(orbits[i].dimension == expected[i].dim, label + ": dimension of " + expected[i].partition);
      c.expect(orbits[i].component_group.to_string() == expected[i].group,
               label + ": component group of " + expected[i].partition);
    }
  };
  table(GroupType::Sp, {{"[4]", 8, "Z/2"}, {"[2^2]", 6, "Z/2"}, {"[2,1^2]", 4, "Z/2"}, {"[1^4]", 0, "1"}}, "sp4");
  table(GroupType::SL,
        {{"[4]", 12, "Z/4"}, {"[3,1]", 10, "1"}, {"[2^2]", 8, "Z/2"}, {"[2,1^2]", 6, "1"}, {"[1^4]", 0, "1"}}, "sl4");
  c.expect(cli({"orbits", "--type", "sp", "--n", "4"}).code == 0, "orbits CLI sp4");
  c.expect(cli({"orbits", "--type", "sl", "--n", "4"}).code == 0, "orbits CLI sl4");
  const double s = seconds_since(t0);
  c.expect(s < 1.0, "runtime under 1s");
  c.note("runtime " + std::to_string(s) + "s");
}

void criterion_grading_example(Check& c) {
  const Cocharacter chi{{1, 0, 0, -1}};
  const auto sl4 = MatrixLieAlgebra::build(GroupType::SL, 4);
  c.expect(liegrade::weight_matrix(chi).to_string() == "0,1,1,2;-1,0,0,1;-1,0,0,1;-2,-1,-1,0", "weight matrix");
  const auto g2 = liegrade::graded_component(sl4, chi, 2);
  c.expect(g2.dimension() == 1 && g2.basis[0] == RationalMatrix::unit(4, 0, 3), "g_2 is spanned by E_14");
  c.expect(liegrade::graded_component(sl4, chi, 1).dimension() == 4, "dim g_1 = 4");
  c.expect(liegrade::graded_component(sl4, chi, 0).dimension() == 5, "dim g_0 = 5");
  const auto grading = cli({"grading", "--type", "sl", "--d", "4", "--cochar", "1,0,0,-1", "--degree", "2"});
  c.expect(grading.code == 0 && grading.out.find("0,1,1,2;-1,0,0,1;-1,0,0,1;-2,-1,-1,0") != std::string::npos,
           "grading CLI prints the weight matrix");

  const auto x = RationalMatrix::parse("0,0,0,0;1,0,0,0;0,0,0,0;0,0,1,0");
  const auto t = liegrade::adapted_sl2_triple(sl4, chi, -1, x);
  const auto cp = liegrade::chi_prime(t, &chi);
  c.expect(cp.weights.weights == std::vector<long long>{-1, 1, -1, 1}, "chi' = (-1,1,-1,1)");
  const auto pd = liegrade::canonical_parabolic(sl4, chi, t, -1);
  c.expect(pd.chi_prime_weights.to_string() == "0,-2,0,-2;2,0,2,0;0,-2,0,-2;2,0,2,0", "bigrading matrix");
  c.expect(pd.combined.to_string() == "0,0,2,2;0,0,2,2;-2,-2,0,0;-2,-2,0,0", "m+2m' matrix");
}

void criterion_table_levis(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const Cocharacter chi{{1, 0, 0, -1}};
  const auto sl4 = MatrixLieAlgebra::build(GroupType::SL, 4);
  const auto reps = orbitlib::graded_orbit_reps_typeA(chi, -1);
  c.expect(reps.size() == 5, "exactly five orbits");

  struct Expected {
    std::string decomposition;
    long long dim;
    std::vector<std::size_t> shape;
  };
  const std::vector<Expected> rows{{"a2+a3+a4", 2, {3, 1}},
                                   {"a4+a6", 3, {2, 2}},
                                   {"a2+a5", 4, {2, 1, 1}},
                                   {"a1+a2+a6", 2, {2, 1, 1}},
                                   {"a1+2a2+a3", 0, {4}}};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& e = rows[i];
    const auto it = std::find_if(reps.begin(), reps.end(), [&](const auto& r) { return r.decomposition == e.decomposition; });
    const std::string row = "row " + std::to_string(i + 1) + " " + e.decomposition;
    if (it == reps.end()) {
      c.expect(false, row + ": decomposition missing");
      continue;
    }
    c.expect(it->dimension == e.dim, row + ": dimension " + std::to_string(it->dimension));
    const RationalMatrix x(it->representative);
    const auto pd = liegrade::canonical_parabolic(sl4, chi, triple_or_zero(sl4, chi, -1, x), -1);
    const auto shape = pd.levi_block_shape();
    c.expect(shape == e.shape, row + ": Levi shape " + shape_text(shape) + ", table has " + shape_text(e.shape));
  }
  c.expect(seconds_since(t0) < 1.0, "runtime under 1s");
}

void expect_triple(Check& c, const MatrixLieAlgebra& alg, const Cocharacter& chi, long long n, const RationalMatrix& x,
                   const std::string& label) {
  try {
    const auto t = liegrade::adapted_sl2_triple(alg, chi, n, x);
    c.expect(t.e == x && t.satisfies_relations(), label + ": bracket relations");
    c.expect(liegrade::is_homogeneous(t.e, chi, n), label + ": e in g_n");
    c.expect(liegrade::is_homogeneous(t.h, chi, 0), label + ": h in g_0");
    c.expect(liegrade::is_homogeneous(t.f, chi, -n), label + ": f in g_-n");
    c.expect(alg.contains(t.h) && alg.contains(t.f), label + ": h, f in the algebra");
  } catch (const Error& e) {
    c.expect(false, label + ": " + e.what());
  }
}

void criterion_triples_and_rigidity(Check& c) {
  const Cocharacter chi{{1, 0, 0, -1}};
  const auto sl4 = MatrixLieAlgebra::build(GroupType::SL, 4);
  for (const auto& r : orbitlib::graded_orbit_reps_typeA(chi, -1)) {
    const RationalMatrix x(r.representative);
    if (!x.is_zero()) expect_triple(c, sl4, chi, -1, x, r.decomposition);
    const auto t = triple_or_zero(sl4, chi, -1, x);
    const auto pd = liegrade::canonical_parabolic(sl4, chi, t, -1);
    c.expect(liegrade::check_n_rigid(pd.levi_algebra(), chi, t, -1).is_rigid, r.decomposition + ": Levi datum rigid");
  }
  for (GroupType type : {GroupType::Sp, GroupType::SL}) {
    const auto alg = MatrixLieAlgebra::build(type, 4);
    for (const auto& o : orbitlib::nilpotent_orbits(type, 4)) {
      const RationalMatrix x(orbitlib::orbit_representative(type, o.partition));
      if (x.is_zero()) continue;
      const auto hg = liegrade::homogeneous_grading(alg, x);
      expect_triple(c, alg, hg.chi, hg.degree, x, rootdata::to_string(type) + " " + o.partition.to_string());
    }
  }
  const auto x = RationalMatrix::parse("0,0,0,0;1,0,0,0;0,0,0,0;0,0,1,0");
  const auto t = liegrade::adapted_sl2_triple(sl4, chi, -1, x);
  const auto full = liegrade::check_n_rigid(sl4, chi, t, -1);
  c.expect(!full.is_rigid && full.witness.has_value(), "full sl4 datum is not rigid");
  if (full.witness) {
    const auto& w = *full.witness;
    c.note("full-datum witness: condition " + std::to_string(w.condition) + " at cell (" + std::to_string(w.row + 1) +
           "," + std::to_string(w.col + 1) + "), m=" + std::to_string(w.m) + ", m'=" + std::to_string(w.m_prime));
    c.expect(w.m * -1 != 2 * w.m_prime, "witness cell violates n*m = 2m'");
  }
}

std::set<long long> oracle_torsion_over_subsets(const std::vector<rootdata::Weight>& vectors,
                                                const std::vector<rootdata::Weight>& extra, std::size_t rank,
                                                const std::vector<std::vector<std::size_t>>& subsets) {
  std::set<long long> out;
  for (const auto& s : subsets) {
    std::vector<std::vector<long long>> rows(extra.begin(), extra.end());
    for (auto i : s) rows.push_back(vectors[i]);
    for (long long p : oracle::torsion_primes(rows, rank)) out.insert(p);
  }
  return out;
}

std::vector<std::vector<std::size_t>> all_subsets(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    out.push_back(std::move(s));
  }
  return out;
}

void criterion_primes(Check& c) {
  const std::set<long long> two{2};
  for (GroupType type : {GroupType::Sp, GroupType::SL}) {
    const auto rd = rootdata::standard_root_datum(type, 4);
    const auto r = rootdata::prime_report(rd);
    c.expect(r.pretty_good_excluded == two, rd.label + ": pretty good excludes exactly {2}");
    c.expect(r.rather_good_excluded == two, rd.label + ": rather good excludes exactly {2}");
  }
  c.expect(rootdata::prime_report(rootdata::standard_root_datum(GroupType::Sp, 4)).torsion == two, "Sp4 torsion {2}");
  for (int n = 2; n <= 5; ++n)
    c.expect(rootdata::prime_report(rootdata::standard_root_datum(GroupType::SL, n)).torsion.empty(),
             "SL" + std::to_string(n) + " torsion empty");

  // Independent invariant-factor oracle on the lattice quotients.
  for (auto [type, n] : {std::pair{GroupType::SL, 2}, std::pair{GroupType::SL, 3}, std::pair{GroupType::SL, 4},
                         std::pair{GroupType::SL, 5}, std::pair{GroupType::Sp, 4}}) {
    const auto rd = rootdata::standard_root_datum(type, n);
    const auto lib = rootdata::prime_report(rd);
    std::vector<std::vector<std::size_t>> coroot_sets, root_sets;
    if (rd.roots.size() <= 12) {
      coroot_sets = root_sets = all_subsets(rd.roots.size());
    } else {
      for (const auto& s : rootdata::closed_subsets(rd.coroots, rd.rank)) coroot_sets.push_back(s.member_indices);
      for (const auto& s : rootdata::closed_subsystems(rd)) root_sets.push_back(s.member_indices);
    }
    const auto torsion = oracle_torsion_over_subsets(rd.coroots, {}, rd.rank, coroot_sets);
    auto pretty = oracle_torsion_over_subsets(rd.roots, rd.character_relations, rd.rank, root_sets);
    pretty.insert(torsion.begin(), torsion.end());
    auto rather = lib.bad;
    std::vector<std::size_t> everything(rd.roots.size());
    std::iota(everything.begin(), everything.end(), 0);
    for (long long p : oracle_torsion_over_subsets(rd.roots, rd.character_relations, rd.rank, {everything}))
      rather.insert(p);
    c.expect(lib.torsion == torsion, rd.label + ": torsion agrees with oracle");
    c.expect(lib.pretty_good_excluded == pretty, rd.label + ": pretty good agrees with oracle");
    c.expect(lib.rather_good_excluded == rather, rd.label + ": rather good agrees with oracle");
  }
}

void criterion_fiber_counts(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto sp = cli({"fibers", "--case", "sp4", "--primes", "3,5"});
  c.expect(sp.code == 0 && sp.out.find("all match") != std::string::npos, "fibers sp4 3,5 all match");
  const auto sl = cli({"fibers", "--case", "sl4", "--primes", "2,3,5"});
  c.expect(sl.code == 0 && sl.out.find("all match") != std::string::npos, "fibers sl4 2,3,5 all match");

  auto counts = [](const std::string& name, const std::vector<long long>& primes) {
    std::map<std::tuple<std::string, std::string, long long>, long long> m;
    for (const auto& r : ffgeom::verify_fiber_counts(cohom::load_case(name), primes).rows)
      m[{r.orbit, r.stratum, r.q}] = r.count;
    return m;
  };
  const auto spc = counts("sp4", {3, 5});
  const auto slc = counts("sl4", {2, 3, 5});
  using Poly = std::function<long long(long long)>;
  const std::vector<std::pair<std::string, Poly>> sp_full{{"[4]", [](long long) { return 1; }},
                                                          {"[2^2]", [](long long q) { return q + 1; }},
                                                          {"[2,1^2]", [](long long q) { return q * q + q + 1; }},
                                                          {"[1^4]", [](long long q) { return q * q * q + q * q + q + 1; }}};
  const std::vector<std::pair<std::string, Poly>> sp_cusp{{"[4]", [](long long) { return 1; }},
                                                          {"[2^2]", [](long long q) { return q % 4 == 1 ? q - 1 : q + 1; }},
                                                          {"[2,1^2]", [](long long q) { return q * q + q; }},
                                                          {"[1^4]", [](long long) { return 0; }}};
  for (long long q : {3, 5}) {
    for (const auto& [o, f] : sp_full) c.expect(spc.at({o, "full", q}) == f(q), "sp4 " + o + " full at q=" + std::to_string(q));
    for (const auto& [o, f] : sp_cusp)
      c.expect(spc.at({o, "cuspidal", q}) == f(q), "sp4 " + o + " cuspidal at q=" + std::to_string(q));
  }
  c.expect(spc.at({"[2^2]", "zero", 5}) == 2, "sp4 [2^2] zero part has 2 points at q=5");
  c.expect(spc.at({"[2^2]", "zero", 3}) == 0, "sp4 [2^2] zero part has 0 points at q=3");
  c.note("sp4 [2^2] cuspidal part: q-1 points for q = 1 mod 4, q+1 for q = 3 mod 4 (full q+1 minus the zero part)");

  const std::vector<std::pair<std::string, Poly>> sl_full{
      {"[4]", [](long long) { return 1; }},
      {"[3,1]", [](long long q) { return q + 1; }},
      {"[2^2]", [](long long q) { return q * q + q + 1; }},
      {"[2,1^2]", [](long long q) { return 2 * q * q + q + 1; }},
      {"[1^4]", [](long long q) { return q * q * q * q + q * q * q + 2 * q * q + q + 1; }}};
  for (long long q : {2, 3, 5})
    for (const auto& [o, f] : sl_full) c.expect(slc.at({o, "full", q}) == f(q), "sl4 " + o + " full at q=" + std::to_string(q));
  c.note("sl4 [2^2] full fiber counts q^2+q+1 (the listed q^2+q is its cuspidal part)");
  const double s = seconds_since(t0);
  c.expect(s < 30.0, "runtime under 30s");
  c.note("runtime " + std::to_string(s) + "s");
}

void criterion_stalks(Check& c) {
  auto single = [](const cohom::Degrees& d) { return d.size() == 1 && d.begin()->second == 1; };
  auto pair_two_apart = [](const cohom::Degrees& d) {
    return d.size() == 2 && d.begin()->second == 1 && d.rbegin()->second == 1 && d.rbegin()->first - d.begin()->first == 2;
  };
  for (long long l : {0, 3, 5}) {
    const std::string tag = " (l=" + std::to_string(l) + ")";
    const auto sp = cohom::stalk_table(cohom::load_case("sp4"), l);
    c.expect(single(sp.column("[4]")), "sp4 [4] one rank-1 entry" + tag);
    c.expect(pair_two_apart(sp.column("[2,1^2]")), "sp4 [2,1^2] two entries two apart" + tag);
    c.expect(sp.column("[2^2]").empty() && sp.column("[1^4]").empty(), "sp4 [2^2], [1^4] empty" + tag);
    c.expect(sp.has_parity(), "sp4 parity" + tag);
    const auto sl = cohom::stalk_table(cohom::load_case("sl4"), l);
    c.expect(single(sl.column("[4]")), "sl4 [4] one entry" + tag);
    c.expect(pair_two_apart(sl.column("[2^2]")), "sl4 [2^2] two entries two apart" + tag);
    c.expect(sl.column("[3,1]").empty() && sl.column("[2,1^2]").empty() && sl.column("[1^4]").empty(),
             "sl4 other columns empty" + tag);
    c.expect(sl.has_parity(), "sl4 parity" + tag);
  }
  const auto two = cohom::stalk_table(cohom::load_case("sp4"), 2, true);
  const auto& col = two.column("[2^2]");
  c.expect(col.size() == 2 && col.rbegin()->first - col.begin()->first == 1, "l=2: sp4 [2^2] in consecutive degrees");
  c.expect(!two.column_has_parity("[2^2]"), "l=2: parity fails");
}

void criterion_properties(Check& c) {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> size(1, 6), entry(-9, 9);
  int snf_ok = 0;
  for (int trial = 0; trial < 500; ++trial) {
    IntMatrix m(size(rng), size(rng));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = entry(rng);
    const auto snf = exactlin::smith_normal_form(m);
    IntMatrix diag(m.rows(), m.cols());
    for (std::size_t i = 0; i < snf.invariant_factors.size(); ++i) diag(i, i) = snf.invariant_factors[i];
    const bool ok = snf.left * m * snf.right == diag && abs(exactlin::determinant(snf.left)) == 1 &&
                    abs(exactlin::determinant(snf.right)) == 1 &&
                    snf.invariant_factors == oracle::invariant_factors_by_minors(m);
    snf_ok += ok;
  }
  c.expect(snf_ok == 500, "SNF round trip on 500 random matrices (" + std::to_string(snf_ok) + " ok)");

  auto bracket_ok = [&](GroupType type, const Cocharacter& chi) {
    const auto alg = MatrixLieAlgebra::build(type, 4);
    const auto degrees = liegrade::occurring_degrees(alg, chi);
    for (long long a : degrees)
      for (long long b : degrees)
        for (const auto& x : liegrade::graded_component(alg, chi, a).basis)
          for (const auto& y : liegrade::graded_component(alg, chi, b).basis) {
            const auto z = exactlin::commutator(x, y);
            if (!z.is_zero() && !(liegrade::is_homogeneous(z, chi, a + b) && alg.contains(z))) return false;
          }
    return true;
  };
  c.expect(bracket_ok(GroupType::SL, Cocharacter{{1, 0, 0, -1}}), "bracket grading on sl4");
  c.expect(bracket_ok(GroupType::SL, Cocharacter{{3, 1, -1, -3}}), "bracket grading on sl4 (regular)");
  c.expect(bracket_ok(GroupType::Sp, Cocharacter{{3, 1, -3, -1}}), "bracket grading on sp4");
  c.expect(bracket_ok(GroupType::Sp, Cocharacter{{1, 0, -1, 0}}), "bracket grading on sp4 (subregular)");

  for (int n = 1; n <= 6; ++n)
    for (const auto& p : exactlin::partitions_of(n))
      c.expect(exactlin::nilpotent_jordan_partition(RationalMatrix(exactlin::jordan_matrix(p))) == p,
               "Jordan round trip " + p.to_string());

  for (int n = 1; n <= 6; ++n) {
    const auto ps = exactlin::partitions_of(n);
    for (const auto& l : ps)
      for (const auto& m : ps) {
        const RationalMatrix a(exactlin::jordan_matrix(l)), b(exactlin::jordan_matrix(m));
        bool by_rank = true;
        for (unsigned k = 1; k <= static_cast<unsigned>(n); ++k)
          by_rank = by_rank && exactlin::rank(a.power(k)) <= exactlin::rank(b.power(k));
        c.expect(orbitlib::closure_leq(l, m) == by_rank, "dominance " + l.to_string() + " vs " + m.to_string());
      }
  }
}

struct Criterion {
  int id;
  std::string title;
  std::function<void(Check&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "orbit tables for sp4 and sl4", criterion_orbit_tables},
      {2, "grading, chi' and bigrading of the worked example", criterion_grading_example},
      {3, "graded orbits and canonical Levis for (1,0,0,-1), n=-1", criterion_table_levis},
      {4, "sl2-triple contract and n-rigidity", criterion_triples_and_rigidity},
      {5, "prime classifiers against the invariant-factor oracle", criterion_primes},
      {6, "fiber point counts over finite fields", criterion_fiber_counts},
      {7, "stalk tables and parity", criterion_stalks},
      {8, "property suites", criterion_properties},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));

  bool all_ok = true;
  for (const auto& cr : all) {
    if (!selected.empty() && !selected.count(cr.id)) continue;
    Check c;
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << cr.id << ": " << (c.ok() ? "PASS" : "FAIL") << "  " << cr.title << "\n";
    for (const auto& f : c.failures()) std::cout << "    failed: " << f << "\n";
    for (const auto& n : c.notes()) std::cout << "    note: " << n << "\n";
    all_ok = all_ok && c.ok();
  }
  return all_ok ? 0 : 1;
}
