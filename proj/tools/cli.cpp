#include "cli.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pargrade/cohom.hpp"
#include "pargrade/exactlin.hpp"
#include "pargrade/ffgeom.hpp"
#include "pargrade/liegrade.hpp"
#include "pargrade/orbitlib.hpp"
#include "pargrade/rootdata.hpp"

namespace pargrade::cli {

namespace {

using json = nlohmann::ordered_json;
using exactlin::IntMatrix;
using exactlin::RationalMatrix;
using liegrade::Cocharacter;
using liegrade::MatrixLieAlgebra;

struct Options {
  bool json = false;
  bool quiet = false;

  std::string type = "sl";
  int n = 0;
  std::size_t d = 0;
  std::string cochar;
  long long degree = 0;
  std::string x;
  std::string case_name;
  std::string case_file;
  std::vector<long long> primes;
  long long characteristic = 0;
  bool allow_char_2 = false;
};

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

std::string join(const std::vector<long long>& v, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

std::string blocks_to_string(const std::vector<std::vector<std::size_t>>& blocks) {
  std::string s;
  for (const auto& b : blocks) {
    s += "{";
    for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i] + 1);
    s += "}";
  }
  return s;
}

json blocks_to_json(const std::vector<std::vector<std::size_t>>& blocks) {
  json arr = json::array();
  for (const auto& b : blocks) {
    json inner = json::array();
    for (auto i : b) inner.push_back(i + 1);
    arr.push_back(inner);
  }
  return arr;
}

json mask_json(const IntMatrix& m) { return m.to_string(); }

MatrixLieAlgebra algebra_for(const Options& o) {
  return MatrixLieAlgebra::build(rootdata::parse_group_type(o.type), o.d);
}

liegrade::Sl2Triple triple_for(const MatrixLieAlgebra& alg, const Cocharacter& chi, long long n,
                               const RationalMatrix& x) {
  if (x.is_zero()) return liegrade::Sl2Triple::zero(alg.ambient_dim());
  return liegrade::adapted_sl2_triple(alg, chi, n, x);
}

// ------------------------------------------------------------------ orbits

int cmd_orbits(const Options& o, std::ostream& out) {
  const auto type = rootdata::parse_group_type(o.type);
  const auto orbits = orbitlib::nilpotent_orbits(type, o.n);
  const std::string label = (type == rootdata::GroupType::SL ? "sl" : "sp") + std::to_string(o.n);
  if (o.json) {
    json j;
    j["algebra"] = label;
    j["orbits"] = json::array();
    for (const auto& orb : orbits)
      j["orbits"].push_back({{"partition", orb.partition.to_string()},
                             {"dimension", orb.dimension},
                             {"component_group", orb.component_group.to_string()},
                             {"component_group_order", orb.component_group.order()},
                             {"representative", orbitlib::orbit_representative(type, orb.partition).to_string()}});
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << "Nilpotent orbits in " << label << "\n";
  out << pad("orbit", 12) << pad("dim", 6) << pad("A(x)", 8) << "representative\n";
  for (const auto& orb : orbits)
    out << pad(orb.partition.to_string(), 12) << pad(std::to_string(orb.dimension), 6)
        << pad(orb.component_group.to_string(), 8) << orbitlib::orbit_representative(type, orb.partition).to_string()
        << "\n";
  return kExitOk;
}

// ----------------------------------------------------------- graded-orbits

int cmd_graded_orbits(const Options& o, std::ostream& out) {
  const auto chi = Cocharacter::parse(o.cochar);
  const auto slice = orbitlib::quiver_slice(chi, o.degree);
  const auto reps = orbitlib::graded_orbit_reps_typeA(chi, o.degree);
  const auto alg = MatrixLieAlgebra::build(rootdata::GroupType::SL, chi.size());

  struct Row {
    const orbitlib::GradedOrbitRep* rep;
    liegrade::ParabolicDatum pd;
    bool rigid;
  };
  std::vector<Row> rows;
  for (const auto& r : reps) {
    RationalMatrix x(r.representative);
    auto t = triple_for(alg, chi, o.degree, x);
    auto pd = liegrade::canonical_parabolic(alg, chi, t, o.degree);
    bool rigid = liegrade::check_n_rigid(pd.levi_algebra(), chi, t, o.degree).is_rigid;
    rows.push_back(Row{&r, std::move(pd), rigid});
  }

  auto root_name = [&](const orbitlib::Segment& s) {
    std::vector<long long> blocks;
    for (const auto& chain : slice.chains) {
      auto a = std::find(chain.begin(), chain.end(), s.first);
      auto b = std::find(chain.begin(), chain.end(), s.last);
      if (a == chain.end() || b == chain.end()) continue;
      for (auto it = a; it <= b; ++it) blocks.push_back(static_cast<long long>(*it) + 1);
    }
    return blocks;
  };

  if (o.json) {
    json j;
    j["cochar"] = chi.weights;
    j["degree"] = o.degree;
    j["block_sizes"] = slice.block_sizes;
    j["roots"] = json::array();
    for (const auto& s : slice.roots) j["roots"].push_back({{"label", "a" + std::to_string(s.label)}, {"blocks", root_name(s)}});
    j["orbits"] = json::array();
    for (const auto& row : rows)
      j["orbits"].push_back({{"decomposition", row.rep->decomposition},
                             {"representative", row.rep->representative.to_string()},
                             {"dimension", row.rep->dimension},
                             {"chi_prime", row.pd.chi_prime.weights.weights},
                             {"levi_blocks", blocks_to_json(row.pd.levi_blocks())},
                             {"levi_shape", row.pd.levi_block_shape()},
                             {"levi_rigid", row.rigid}});
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << "G_0-orbits on g_" << o.degree << " for cocharacter (" << chi.to_string() << ")\n";
  out << "roots:";
  for (const auto& s : slice.roots) out << " a" << s.label << "=[" << join(root_name(s)) << "]";
  out << "\n";
  out << pad("decomposition", 16) << pad("representative", 36) << pad("dim", 5) << pad("chi'", 14) << pad("Levi", 16)
      << "rigid\n";
  for (const auto& row : rows)
    out << pad(row.rep->decomposition, 16) << pad(row.rep->representative.to_string(), 36)
        << pad(std::to_string(row.rep->dimension), 5) << pad(row.pd.chi_prime.weights.to_string(), 14)
        << pad(blocks_to_string(row.pd.levi_blocks()), 16) << (row.rigid ? "yes" : "no") << "\n";
  return kExitOk;
}

// ----------------------------------------------------------------- grading

int cmd_grading(const Options& o, std::ostream& out) {
  const auto alg = algebra_for(o);
  const auto chi = Cocharacter::parse(o.cochar);
  const auto gc = liegrade::graded_component(alg, chi, o.degree);
  const auto w = liegrade::weight_matrix(chi);
  if (o.json) {
    json j;
    j["algebra"] = alg.label();
    j["cochar"] = chi.weights;
    j["degree"] = o.degree;
    j["weight_matrix"] = w.to_string();
    j["dimension"] = gc.dimension();
    j["basis"] = json::array();
    for (const auto& b : gc.basis) j["basis"].push_back(b.to_string());
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << "algebra: " << alg.label() << "\n";
  out << "cocharacter: (" << chi.to_string() << ")\n";
  out << "weight matrix: " << w.to_string() << "\n";
  out << "g_" << o.degree << " dimension: " << gc.dimension() << "\n";
  for (std::size_t i = 0; i < gc.basis.size(); ++i) out << "  b" << i + 1 << " = " << gc.basis[i].to_string() << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------ triple

int cmd_triple(const Options& o, std::ostream& out) {
  const auto alg = algebra_for(o);
  const auto chi = Cocharacter::parse(o.cochar);
  const auto x = RationalMatrix::parse(o.x);
  const auto t = liegrade::adapted_sl2_triple(alg, chi, o.degree, x);
  const auto cp = liegrade::chi_prime(t, &chi);
  if (o.json) {
    json j;
    j["e"] = t.e.to_string();
    j["h"] = t.h.to_string();
    j["f"] = t.f.to_string();
    j["relations_hold"] = t.satisfies_relations();
    j["chi_prime"] = cp.weights.weights;
    j["basis_change"] = cp.basis_change.to_string();
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << "e = " << t.e.to_string() << "\n";
  out << "h = " << t.h.to_string() << "\n";
  out << "f = " << t.f.to_string() << "\n";
  out << "relations [h,e]=2e [h,f]=-2f [e,f]=h: " << (t.satisfies_relations() ? "hold" : "FAIL") << "\n";
  out << "chi' = (" << cp.weights.to_string() << ")\n";
  if (!cp.basis_is_standard) out << "basis change = " << cp.basis_change.to_string() << "\n";
  return kExitOk;
}

// --------------------------------------------------------------- parabolic

int cmd_parabolic(const Options& o, std::ostream& out) {
  const auto alg = algebra_for(o);
  const auto chi = Cocharacter::parse(o.cochar);
  const auto x = RationalMatrix::parse(o.x);
  const auto t = triple_for(alg, chi, o.degree, x);
  const auto pd = liegrade::canonical_parabolic(alg, chi, t, o.degree);
  const auto levi_rigid = liegrade::check_n_rigid(pd.levi_algebra(), chi, t, o.degree);
  const auto full_rigid = liegrade::check_n_rigid(alg, chi, t, o.degree);
  auto witness_json = [](const liegrade::RigidityReport& r) {
    json j;
    j["rigid"] = r.is_rigid;
    if (r.witness)
      j["witness"] = {{"condition", r.witness->condition},
                      {"row", r.witness->row + 1},
                      {"col", r.witness->col + 1},
                      {"m", r.witness->m},
                      {"m_prime", r.witness->m_prime}};
    return j;
  };
  if (o.json) {
    json j;
    j["chi"] = chi.weights;
    j["chi_prime"] = pd.chi_prime.weights.weights;
    j["degree"] = o.degree;
    j["basis_change"] = pd.chi_prime.basis_change.to_string();
    j["chi_weights"] = pd.chi_weights.to_string();
    j["bigrading"] = pd.chi_prime_weights.to_string();
    j["combined"] = pd.combined.to_string();
    j["p_mask"] = mask_json(pd.p_mask);
    j["n_mask"] = mask_json(pd.nilradical_mask);
    j["l_mask"] = mask_json(pd.l_mask);
    j["dims"] = {{"p", pd.p_basis.size()}, {"n", pd.nilradical_basis.size()}, {"l", pd.l_basis.size()}};
    j["levi_blocks"] = blocks_to_json(pd.levi_blocks());
    j["levi_rigidity"] = witness_json(levi_rigid);
    j["full_rigidity"] = witness_json(full_rigid);
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  auto witness_text = [](const liegrade::RigidityReport& r) {
    if (r.is_rigid) return std::string("rigid");
    const auto& w = *r.witness;
    if (w.condition == 1) return std::string("not rigid (triple not in J_n)");
    return "not rigid (condition " + std::to_string(w.condition) + " fails at cell (" + std::to_string(w.row + 1) +
           "," + std::to_string(w.col + 1) + "), m=" + std::to_string(w.m) + ", m'=" + std::to_string(w.m_prime) + ")";
  };
  out << "chi  = (" << chi.to_string() << ")\n";
  out << "chi' = (" << pd.chi_prime.weights.to_string() << ")\n";
  if (!pd.chi_prime.basis_is_standard) out << "basis change = " << pd.chi_prime.basis_change.to_string() << "\n";
  out << "chi weights m'     : " << pd.chi_weights.to_string() << "\n";
  out << "chi' weights m     : " << pd.chi_prime_weights.to_string() << "\n";
  out << "sign(n)(n m - 2m') : " << pd.combined.to_string() << "\n";
  out << "p mask : " << pd.p_mask.to_string() << "  (dim " << pd.p_basis.size() << ")\n";
  out << "n mask : " << pd.nilradical_mask.to_string() << "  (dim " << pd.nilradical_basis.size() << ")\n";
  out << "l mask : " << pd.l_mask.to_string() << "  (dim " << pd.l_basis.size() << ")\n";
  out << "Levi blocks: " << blocks_to_string(pd.levi_blocks()) << "\n";
  out << "Levi datum: " << witness_text(levi_rigid) << "\n";
  out << "full datum: " << witness_text(full_rigid) << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------ primes

int cmd_primes(const Options& o, std::ostream& out) {
  const auto rd = rootdata::standard_root_datum(rootdata::parse_group_type(o.type), o.n);
  const auto rep = rootdata::prime_report(rd);
  auto vec = [](const std::set<long long>& s) { return std::vector<long long>(s.begin(), s.end()); };
  if (o.json) {
    json j;
    j["group"] = rd.label;
    j["good_excluded"] = vec(rep.bad);
    j["torsion"] = vec(rep.torsion);
    j["pretty_good_excluded"] = vec(rep.pretty_good_excluded);
    j["rather_good_excluded"] = vec(rep.rather_good_excluded);
    j["highest_root_coefficients"] = rep.highest_root_coefficients;
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  auto set_text = [&](const std::set<long long>& s) { return s.empty() ? std::string("{}") : "{" + join(vec(s)) + "}"; };
  out << "group: " << rd.label << " (" << rd.roots.size() << " roots)\n";
  out << pad("bad (not good)", 24) << set_text(rep.bad) << "\n";
  out << pad("torsion", 24) << set_text(rep.torsion) << "\n";
  out << pad("not pretty good", 24) << set_text(rep.pretty_good_excluded) << "\n";
  out << pad("not rather good", 24) << set_text(rep.rather_good_excluded) << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------ fibers

cohom::CaseData case_for(const Options& o) {
  if (!o.case_file.empty()) return cohom::load_case_file(o.case_file);
  return cohom::load_case(o.case_name);
}

int cmd_fibers(const Options& o, std::ostream& out) {
  const auto c = case_for(o);
  const auto report = ffgeom::verify_fiber_counts(c, o.primes);
  const bool ok = report.all_match();
  if (o.json) {
    json j;
    j["case"] = c.name;
    j["primes"] = o.primes;
    j["rows"] = json::array();
    for (const auto& r : report.rows)
      j["rows"].push_back({{"orbit", r.orbit},
                           {"stratum", r.stratum},
                           {"q", r.q},
                           {"count", r.count},
                           {"predicted", r.predicted},
                           {"prediction", r.prediction},
                           {"verdict", r.match ? "match" : "mismatch"}});
    j["all_match"] = ok;
    out << j.dump(2) << "\n";
  } else {
    out << "Fiber point counts for case " << c.name << "\n";
    out << pad("orbit", 10) << pad("stratum", 18) << pad("q", 4) << pad("count", 7) << pad("predicted", 11)
        << pad("prediction", 28) << "verdict\n";
    for (const auto& r : report.rows)
      out << pad(r.orbit, 10) << pad(r.stratum, 18) << pad(std::to_string(r.q), 4)
          << pad(std::to_string(r.count), 7) << pad(std::to_string(r.predicted), 11) << pad(r.prediction, 28)
          << (r.match ? "match" : "MISMATCH") << "\n";
    out << (ok ? "all match" : "mismatches found") << "\n";
  }
  return ok ? kExitOk : kExitMismatch;
}

// ------------------------------------------------------------------ stalks

int cmd_stalks(const Options& o, std::ostream& out) {
  const auto c = case_for(o);
  const auto t = cohom::stalk_table(c, o.characteristic, o.allow_char_2);
  if (o.json) {
    json j;
    j["case"] = c.name;
    j["char"] = o.characteristic;
    j["convention"] = t.convention;
    j["dim_C"] = c.dim_c;
    j["columns"] = json::object();
    for (const auto& [label, degrees] : t.columns) {
      json col = json::object();
      for (const auto& [deg, rank] : degrees) col[std::to_string(deg)] = rank;
      j["columns"][label] = col;
    }
    j["parity"] = t.has_parity();
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  int lo = 0, hi = 0;
  bool any = false;
  for (const auto& [label, degrees] : t.columns)
    for (const auto& [deg, rank] : degrees) {
      lo = any ? std::min(lo, deg) : deg;
      hi = any ? std::max(hi, deg) : deg;
      any = true;
    }
  out << "Stalks of the induced cuspidal pair, case " << c.name << ", characteristic " << o.characteristic
      << " (convention " << t.convention << ", dim C = " << c.dim_c << ")\n";
  out << pad("degree", 8);
  for (const auto& col : t.columns) out << pad(col.first, 10);
  out << "\n";
  for (int deg = hi; any && deg >= lo; --deg) {
    out << pad(std::to_string(deg), 8);
    for (const auto& [label, degrees] : t.columns) {
      auto it = degrees.find(deg);
      out << pad(it == degrees.end() ? "." : std::to_string(it->second), 10);
    }
    out << "\n";
  }
  out << "parity: " << (t.has_parity() ? "every column has a single parity" : "VIOLATED") << "\n";
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Graded Lie algebra and parity-sheaf computations", "pargrade"};
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "Emit JSON instead of text");
  app.add_flag("--quiet", o.quiet, "Suppress standard output; only the exit code reports");

  const std::vector<std::string> types{"sl", "sp"};
  auto* orbits = app.add_subcommand("orbits", "Nilpotent orbits of sl_n or sp_n");
  orbits->add_option("--type", o.type, "sl or sp")->required()->check(CLI::IsMember(types));
  orbits->add_option("--n", o.n, "Matrix size")->required()->check(CLI::Range(1, 12));

  auto* graded = app.add_subcommand("graded-orbits", "G_0-orbits on g_n for sl_d (type A quiver slices)");
  graded->add_option("--cochar", o.cochar, "Weakly decreasing weights, e.g. 1,0,0,-1")->required();
  graded->add_option("--degree", o.degree, "Degree n (nonzero)")->required();

  auto* grading = app.add_subcommand("grading", "Weight matrix and a basis of g_n");
  grading->add_option("--type", o.type, "sl or sp")->required()->check(CLI::IsMember(types));
  grading->add_option("--d", o.d, "Matrix size")->required()->check(CLI::Range(1, 12));
  grading->add_option("--cochar", o.cochar, "Cocharacter weights")->required();
  grading->add_option("--degree", o.degree, "Degree n")->required();

  auto* triple = app.add_subcommand("triple", "Graded sl2-triple through x and its cocharacter chi'");
  triple->add_option("--type", o.type, "sl or sp")->required()->check(CLI::IsMember(types));
  triple->add_option("--d", o.d, "Matrix size")->required()->check(CLI::Range(1, 12));
  triple->add_option("--cochar", o.cochar, "Cocharacter weights")->required();
  triple->add_option("--degree", o.degree, "Degree n (nonzero)")->required();
  triple->add_option("--x", o.x, "Nilpotent x in g_n, rows ';' entries ','")->required();

  auto* parabolic = app.add_subcommand("parabolic", "Canonical parabolic, nilradical and Levi of x");
  parabolic->add_option("--type", o.type, "sl or sp")->required()->check(CLI::IsMember(types));
  parabolic->add_option("--d", o.d, "Matrix size")->required()->check(CLI::Range(1, 12));
  parabolic->add_option("--cochar", o.cochar, "Cocharacter weights")->required();
  parabolic->add_option("--x", o.x, "x in g_n, rows ';' entries ','")->required();
  parabolic->add_option("--degree", o.degree, "Degree n (nonzero)")->required();

  auto* primes = app.add_subcommand("primes", "Bad, torsion, pretty good and rather good primes");
  primes->add_option("--type", o.type, "sl or sp")->required()->check(CLI::IsMember(types));
  primes->add_option("--n", o.n, "Matrix size")->required()->check(CLI::Range(2, 12));

  const std::vector<std::string> cases{"sp4", "sl4"};
  auto* fibers = app.add_subcommand("fibers", "Finite-field point counts of the fibers against predictions");
  auto* fcase = fibers->add_option("--case", o.case_name, "sp4 or sl4")->check(CLI::IsMember(cases));
  fibers->add_option("--case-file", o.case_file, "Case fixture JSON instead of a built-in case")->excludes(fcase);
  fibers->add_option("--primes", o.primes, "Comma separated primes, each at most 13")
      ->required()
      ->delimiter(',');

  auto* stalks = app.add_subcommand("stalks", "Stalk table of the induced cuspidal pair");
  auto* scase = stalks->add_option("--case", o.case_name, "sp4 or sl4")->check(CLI::IsMember(cases));
  stalks->add_option("--case-file", o.case_file, "Case fixture JSON instead of a built-in case")->excludes(scase);
  stalks->add_option("--char", o.characteristic, "Coefficient characteristic l (0 or prime)")->required();
  stalks->add_flag("--allow-char-2", o.allow_char_2, "Permit l = 2 to exhibit the parity failure");

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(std::move(args));
    for (auto* sub : {fibers, stalks})
      if (sub->parsed() && o.case_name.empty() && o.case_file.empty())
        throw CLI::RequiredError("--case or --case-file");
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParseError;
  }

  std::ostringstream sink;
  std::ostream& dest = o.quiet ? static_cast<std::ostream&>(sink) : out;
  try {
    if (orbits->parsed()) return cmd_orbits(o, dest);
    if (graded->parsed()) return cmd_graded_orbits(o, dest);
    if (grading->parsed()) return cmd_grading(o, dest);
    if (triple->parsed()) return cmd_triple(o, dest);
    if (parabolic->parsed()) return cmd_parabolic(o, dest);
    if (primes->parsed()) return cmd_primes(o, dest);
    if (fibers->parsed()) return cmd_fibers(o, dest);
    if (stalks->parsed()) return cmd_stalks(o, dest);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitParseError;
}

}  // namespace pargrade::cli
