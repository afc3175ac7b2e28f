#include "pargrade/liegrade.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace pargrade::liegrade {

using exactlin::Integer;
using exactlin::RationalVector;
using exactlin::RowEchelon;

namespace {

RationalMatrix unflatten(std::size_t d, const RationalVector& v) { return RationalMatrix::from_entries(d, d, v); }

std::vector<RationalMatrix> canonical_basis(std::size_t d, const std::vector<RationalMatrix>& gens) {
  std::vector<RationalVector> flat;
  for (const auto& g : gens) flat.push_back(g.flatten());
  std::vector<RationalMatrix> out;
  for (const auto& v : exactlin::span_basis(flat)) out.push_back(unflatten(d, v));
  return out;
}

template <class Keep>
std::vector<RationalMatrix> intersect_with_cells(std::size_t d, const std::vector<RationalMatrix>& basis, Keep keep) {
  if (basis.empty()) return {};
  std::vector<RationalVector> rows;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (keep(i, j)) continue;
      RationalVector row(basis.size());
      bool nonzero = false;
      for (std::size_t k = 0; k < basis.size(); ++k) {
        row[k] = basis[k].at(i, j);
        nonzero = nonzero || row[k] != 0;
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  auto kernel = RowEchelon::reduce(std::move(rows), basis.size()).kernel();
  std::vector<RationalMatrix> combos;
  for (const auto& c : kernel) {
    RationalMatrix m(d, d);
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (c[k] != 0) m = m + c[k] * basis[k];
    combos.push_back(std::move(m));
  }
  return canonical_basis(d, combos);
}

IntMatrix support_mask(std::size_t d, const std::vector<RationalMatrix>& basis) {
  IntMatrix mask(d, d);
  for (const auto& b : basis)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (b.at(i, j) != 0) mask(i, j) = 1;
  return mask;
}

long long sign(long long v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

RationalMatrix conjugate(const RationalMatrix& p_inv, const RationalMatrix& m, const RationalMatrix& p) {
  return p_inv * m * p;
}

void require_same_dim(const MatrixLieAlgebra& alg, const RationalMatrix& m, const char* what) {
  if (m.rows() != alg.ambient_dim() || m.cols() != alg.ambient_dim())
    throw exactlin::DimensionMismatch(std::string(what) + " has the wrong size for " + alg.label());
}

}  // namespace

IntMatrix standard_symplectic_form(std::size_t d) {
  if (d == 0 || d % 2 != 0) throw BadForm("symplectic form needs an even positive dimension");
  const std::size_t m = d / 2;
  IntMatrix b(d, d);
  for (std::size_t i = 0; i < m; ++i) {
    b(i, i + m) = 1;
    b(i + m, i) = -1;
  }
  return b;
}

MatrixLieAlgebra MatrixLieAlgebra::build(rootdata::GroupType type, std::size_t d, std::optional<IntMatrix> form) {
  MatrixLieAlgebra alg;
  alg.d_ = d;
  if (type == rootdata::GroupType::SL) {
    if (d < 1) throw PreconditionViolated("sl_d needs d >= 1");
    if (form) throw BadForm("a form is only meaningful for Sp");
    alg.kind_ = AlgebraKind::SL;
    alg.label_ = "sl" + std::to_string(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (i != j) alg.basis_.push_back(RationalMatrix::unit(d, i, j));
    for (std::size_t i = 0; i + 1 < d; ++i)
      alg.basis_.push_back(RationalMatrix::unit(d, i, i) - RationalMatrix::unit(d, i + 1, i + 1));
    return alg;
  }

  IntMatrix b = form ? *form : standard_symplectic_form(d);
  if (b.rows() != d || b.cols() != d) throw BadForm("form size does not match d");
  if (b.transpose() != Integer(-1) * b) throw BadForm("form is not antisymmetric");
  if (exactlin::determinant(b) == 0) throw BadForm("form is singular");
  alg.kind_ = AlgebraKind::Sp;
  alg.label_ = "sp" + std::to_string(d);
  alg.form_ = b;
  // M^T B + B M = 0, one equation per cell, unknowns M(a, c) at index a*d + c.
  std::vector<RationalVector> rows;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      RationalVector row(d * d, Rational(0));
      for (std::size_t k = 0; k < d; ++k) {
        row[k * d + i] += Rational(b(k, j));
        row[k * d + j] += Rational(b(i, k));
      }
      rows.push_back(std::move(row));
    }
  std::vector<RationalMatrix> gens;
  for (const auto& v : RowEchelon::reduce(std::move(rows), d * d).kernel()) gens.push_back(unflatten(d, v));
  alg.basis_ = canonical_basis(d, gens);
  return alg;
}

MatrixLieAlgebra MatrixLieAlgebra::span_of(std::string label, std::size_t d,
                                           const std::vector<RationalMatrix>& generators) {
  MatrixLieAlgebra alg;
  alg.kind_ = AlgebraKind::Sub;
  alg.label_ = std::move(label);
  alg.d_ = d;
  alg.basis_ = canonical_basis(d, generators);
  return alg;
}

bool MatrixLieAlgebra::has_standard_form() const {
  return kind_ == AlgebraKind::Sp && form_ && *form_ == standard_symplectic_form(d_);
}

bool MatrixLieAlgebra::contains(const RationalMatrix& m) const {
  if (m.rows() != d_ || m.cols() != d_) return false;
  switch (kind_) {
    case AlgebraKind::SL:
      return m.trace() == 0;
    case AlgebraKind::Sp: {
      RationalMatrix b(*form_);
      return (m.transpose() * b + b * m).is_zero();
    }
    case AlgebraKind::Sub:
      if (m.is_zero()) return true;
      if (basis_.empty()) return false;
      std::vector<RationalVector> flat;
      for (const auto& x : basis_) flat.push_back(x.flatten());
      return exactlin::coordinates_in_span(flat, m.flatten()).has_value();
  }
  return false;
}

std::string Cocharacter::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < weights.size(); ++i) os << (i ? "," : "") << weights[i];
  return os.str();
}

Cocharacter Cocharacter::parse(std::string_view text) {
  Cocharacter chi;
  std::string s(text);
  if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(tok, &used);
      if (tok.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(tok);
      chi.weights.push_back(v);
    } catch (const std::logic_error&) {
      throw ParseError("bad cocharacter weight '" + tok + "'");
    }
  }
  if (chi.weights.empty()) throw ParseError("empty cocharacter");
  return chi;
}

void validate_cocharacter(const MatrixLieAlgebra& alg, const Cocharacter& chi) {
  if (chi.size() != alg.ambient_dim())
    throw PreconditionViolated("cocharacter has " + std::to_string(chi.size()) + " weights, expected " +
                               std::to_string(alg.ambient_dim()));
  if (alg.kind() == AlgebraKind::SL &&
      std::accumulate(chi.weights.begin(), chi.weights.end(), 0LL) != 0)
    throw PreconditionViolated("SL cocharacter weights must sum to zero");
  if (alg.has_standard_form()) {
    const std::size_t m = alg.ambient_dim() / 2;
    for (std::size_t i = 0; i < m; ++i)
      if (chi.weights[i + m] != -chi.weights[i])
        throw PreconditionViolated("Sp cocharacter must satisfy w[i+m] = -w[i]");
  }
}

IntMatrix weight_matrix(const Cocharacter& chi) {
  const std::size_t d = chi.size();
  IntMatrix w(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) w(i, j) = chi.weights[i] - chi.weights[j];
  return w;
}

bool is_homogeneous(const RationalMatrix& m, const Cocharacter& chi, long long n) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m.at(i, j) != 0 && chi.weights[i] - chi.weights[j] != n) return false;
  return true;
}

GradedComponent graded_component(const MatrixLieAlgebra& alg, const Cocharacter& chi, long long n) {
  validate_cocharacter(alg, chi);
  GradedComponent gc;
  gc.degree = n;
  gc.basis = intersect_with_cells(alg.ambient_dim(), alg.basis(), [&](std::size_t i, std::size_t j) {
    return chi.weights[i] - chi.weights[j] == n;
  });
  return gc;
}

std::vector<long long> occurring_degrees(const MatrixLieAlgebra& alg, const Cocharacter& chi) {
  std::set<long long> candidates;
  for (auto a : chi.weights)
    for (auto b : chi.weights) candidates.insert(a - b);
  std::vector<long long> out;
  for (auto n : candidates)
    if (graded_component(alg, chi, n).dimension() > 0) out.push_back(n);
  return out;
}

bool Sl2Triple::satisfies_relations() const {
  using exactlin::commutator;
  return commutator(h, e) == Rational(2) * e && commutator(h, f) == Rational(-2) * f && commutator(e, f) == h;
}

Sl2Triple Sl2Triple::zero(std::size_t d) { return Sl2Triple{RationalMatrix(d, d), RationalMatrix(d, d), RationalMatrix(d, d)}; }

Sl2Triple adapted_sl2_triple(const MatrixLieAlgebra& alg, const Cocharacter& chi, long long n,
                             const RationalMatrix& x) {
  using exactlin::commutator;
  require_same_dim(alg, x, "x");
  validate_cocharacter(alg, chi);
  if (n == 0) throw PreconditionViolated("degree n must be nonzero");
  if (!alg.contains(x)) throw NotInAlgebra("x is not in " + alg.label());
  if (!is_homogeneous(x, chi, n)) throw PreconditionViolated("x is not in g_" + std::to_string(n));
  exactlin::nilpotent_jordan_partition(x);
  if (x.is_zero()) throw NoTriple("the zero element has no sl2-triple");

  const std::size_t d = alg.ambient_dim();
  const auto fs = graded_component(alg, chi, -n).basis;
  if (fs.empty()) throw NoTriple("g_{-n} is zero");
  const std::size_t k = fs.size();

  std::vector<RationalMatrix> hs, brackets;
  for (const auto& f : fs) {
    hs.push_back(commutator(x, f));
    brackets.push_back(commutator(hs.back(), x));
  }
  const RationalMatrix two_x = Rational(2) * x;

  // Solve [[x, f0], x] = 2x, first insisting that h = [x, f0] is diagonal.
  std::optional<RationalVector> coeff;
  for (bool want_diagonal : {true, false}) {
    std::vector<RationalVector> a;
    RationalVector b;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        RationalVector row(k);
        for (std::size_t t = 0; t < k; ++t) row[t] = brackets[t].at(i, j);
        a.push_back(std::move(row));
        b.push_back(two_x.at(i, j));
        if (want_diagonal && i != j) {
          RationalVector off(k);
          for (std::size_t t = 0; t < k; ++t) off[t] = hs[t].at(i, j);
          a.push_back(std::move(off));
          b.push_back(0);
        }
      }
    coeff = exactlin::solve_linear(a, b);
    if (coeff) break;
  }
  if (!coeff) throw NoTriple("no h in [x, g_{-n}] with [h, x] = 2x");
  RationalMatrix h(d, d);
  for (std::size_t t = 0; t < k; ++t)
    if ((*coeff)[t] != 0) h = h + (*coeff)[t] * hs[t];

  // f in g_{-n} with [x, f] = h and [h, f] = -2f.
  std::vector<RationalVector> a;
  RationalVector b;
  std::vector<RationalMatrix> hf;
  for (const auto& f : fs) hf.push_back(commutator(h, f) + Rational(2) * f);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      RationalVector r1(k), r2(k);
      for (std::size_t t = 0; t < k; ++t) {
        r1[t] = hs[t].at(i, j);
        r2[t] = hf[t].at(i, j);
      }
      a.push_back(std::move(r1));
      b.push_back(h.at(i, j));
      a.push_back(std::move(r2));
      b.push_back(0);
    }
  auto fc = exactlin::solve_linear(a, b);
  if (!fc) throw NoTriple("no f in g_{-n} completing the triple");
  RationalMatrix f(d, d);
  for (std::size_t t = 0; t < k; ++t)
    if ((*fc)[t] != 0) f = f + (*fc)[t] * fs[t];

  Sl2Triple triple{x, h, f};
  if (!triple.satisfies_relations()) throw NoTriple("constructed triple fails the bracket relations");
  return triple;
}

ChiPrime chi_prime(const Sl2Triple& triple, const Cocharacter* chi) {
  const auto& h = triple.h;
  const std::size_t d = h.rows();
  ChiPrime out;
  out.basis_change = RationalMatrix::identity(d);
  if (chi && chi->size() != d) throw PreconditionViolated("cocharacter length does not match the triple");

  if (h.is_diagonal()) {
    for (std::size_t i = 0; i < d; ++i) {
      Rational v = h.at(i, i);
      if (denominator(v) != 1) throw NonIntegralWeights("h has a non-integral eigenvalue");
      out.weights.weights.push_back(numerator(v).convert_to<long long>());
    }
    return out;
  }

  out.basis_is_standard = false;
  // Groups of slots sharing one chi-weight (a single group without chi).
  std::map<long long, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < d; ++i) groups[chi ? chi->weights[i] : 0].push_back(i);

  std::vector<RationalVector> columns(d);
  out.weights.weights.assign(d, 0);
  for (const auto& [w, slots] : groups) {
    std::vector<std::pair<long long, RationalVector>> eigen;
    for (long long m = static_cast<long long>(d); m >= -static_cast<long long>(d); --m) {
      std::vector<RationalVector> rows;
      for (std::size_t r = 0; r < d; ++r) {
        RationalVector row(slots.size());
        for (std::size_t c = 0; c < slots.size(); ++c) {
          row[c] = h.at(r, slots[c]);
          if (r == slots[c]) row[c] -= m;
        }
        rows.push_back(std::move(row));
      }
      for (const auto& v : RowEchelon::reduce(std::move(rows), slots.size()).kernel()) {
        RationalVector full(d, Rational(0));
        for (std::size_t c = 0; c < slots.size(); ++c) full[slots[c]] = v[c];
        eigen.emplace_back(m, std::move(full));
      }
    }
    if (eigen.size() != slots.size()) {
      if (chi) throw NotSimultaneouslyDiagonal("h does not diagonalize inside the chi-weight space " + std::to_string(w));
      throw NonIntegralWeights("h is not diagonalizable with integer eigenvalues");
    }
    for (std::size_t c = 0; c < slots.size(); ++c) {
      columns[slots[c]] = eigen[c].second;
      out.weights.weights[slots[c]] = eigen[c].first;
    }
  }
  RationalVector entries;
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) entries.push_back(columns[c][r]);
  out.basis_change = RationalMatrix::from_entries(d, d, entries);
  return out;
}

std::vector<std::vector<std::size_t>> ParabolicDatum::levi_blocks() const {
  const std::size_t d = l_mask.rows();
  std::vector<std::size_t> parent(d);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (i != j && l_mask(i, j) != 0) parent[find(i)] = find(j);
  std::map<std::size_t, std::vector<std::size_t>> by_root;
  for (std::size_t i = 0; i < d; ++i) by_root[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> blocks;
  for (auto& [root, members] : by_root) blocks.push_back(std::move(members));
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

std::vector<std::size_t> ParabolicDatum::levi_block_shape() const {
  std::vector<std::size_t> shape;
  for (const auto& b : levi_blocks()) shape.push_back(b.size());
  std::sort(shape.rbegin(), shape.rend());
  return shape;
}

MatrixLieAlgebra ParabolicDatum::levi_algebra() const {
  return MatrixLieAlgebra::span_of("l", l_mask.rows(), l_basis);
}

ParabolicDatum canonical_parabolic(const MatrixLieAlgebra& alg, const Cocharacter& chi, const Sl2Triple& triple,
                                   long long n) {
  validate_cocharacter(alg, chi);
  if (n == 0) throw PreconditionViolated("degree n must be nonzero");
  if (!triple.satisfies_relations()) throw PreconditionViolated("triple fails the bracket relations");
  if (!is_homogeneous(triple.e, chi, n) || !is_homogeneous(triple.h, chi, 0) || !is_homogeneous(triple.f, chi, -n))
    throw PreconditionViolated("triple is not adapted to the grading");

  const std::size_t d = alg.ambient_dim();
  ParabolicDatum pd;
  pd.degree = n;
  pd.chi = chi;
  pd.chi_prime = chi_prime(triple, &chi);
  const auto& p = pd.chi_prime.basis_change;
  auto p_inv = exactlin::inverse(p);
  if (!p_inv) throw NotSimultaneouslyDiagonal("basis change is singular");

  std::vector<RationalMatrix> moved;
  for (const auto& b : alg.basis()) moved.push_back(conjugate(*p_inv, b, p));

  const auto& mp = pd.chi_prime.weights.weights;
  pd.chi_weights = weight_matrix(chi);
  pd.chi_prime_weights = weight_matrix(pd.chi_prime.weights);
  pd.combined = IntMatrix(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      long long m_prime = chi.weights[i] - chi.weights[j];
      long long m = mp[i] - mp[j];
      pd.combined(i, j) = sign(n) * (n * m - 2 * m_prime);
    }
  auto part = [&](auto keep) {
    return intersect_with_cells(d, moved, [&](std::size_t i, std::size_t j) { return keep(pd.combined(i, j)); });
  };
  auto p_new = part([](const Integer& v) { return v >= 0; });
  auto n_new = part([](const Integer& v) { return v > 0; });
  auto l_new = part([](const Integer& v) { return v == 0; });
  pd.p_mask = support_mask(d, p_new);
  pd.nilradical_mask = support_mask(d, n_new);
  pd.l_mask = support_mask(d, l_new);
  auto back = [&](const std::vector<RationalMatrix>& v) {
    std::vector<RationalMatrix> out;
    for (const auto& m : v) out.push_back(conjugate(p, m, *p_inv));
    return canonical_basis(d, out);
  };
  pd.p_basis = back(p_new);
  pd.nilradical_basis = back(n_new);
  pd.l_basis = back(l_new);
  return pd;
}

RigidityReport check_n_rigid(const MatrixLieAlgebra& alg, const Cocharacter& chi, const Sl2Triple& triple,
                             long long n) {
  RigidityReport rep;
  const bool in_jn = triple.satisfies_relations() && alg.contains(triple.e) && alg.contains(triple.h) &&
                     alg.contains(triple.f) && is_homogeneous(triple.e, chi, n) &&
                     is_homogeneous(triple.h, chi, 0) && is_homogeneous(triple.f, chi, -n);
  if (!in_jn) {
    rep.witness = RigidityWitness{1, 0, 0, 0, 0};
    return rep;
  }
  const std::size_t d = alg.ambient_dim();
  const auto cp = chi_prime(triple, &chi);
  auto p_inv = exactlin::inverse(cp.basis_change);
  if (!p_inv) throw NotSimultaneouslyDiagonal("basis change is singular");
  std::vector<RationalMatrix> moved;
  for (const auto& b : alg.basis()) moved.push_back(conjugate(*p_inv, b, cp.basis_change));
  const IntMatrix occupied = support_mask(d, moved);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (occupied(i, j) == 0) continue;
      long long m_prime = chi.weights[i] - chi.weights[j];
      long long m = cp.weights.weights[i] - cp.weights.weights[j];
      if (n * m == 2 * m_prime) continue;
      rep.witness = RigidityWitness{(n * m) % 2 != 0 ? 3 : 2, i, j, m, m_prime};
      return rep;
    }
  rep.is_rigid = true;
  return rep;
}

HomogeneousGrading homogeneous_grading(const MatrixLieAlgebra& alg, const RationalMatrix& x) {
  require_same_dim(alg, x, "x");
  const std::size_t d = alg.ambient_dim();
  HomogeneousGrading out;
  out.chi.weights.assign(d, 0);
  if (x.is_zero()) return out;
  std::vector<RationalVector> a;
  RationalVector b;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (x.at(i, j) == 0) continue;
      RationalVector row(d, Rational(0));
      row[i] += 1;
      row[j] -= 1;
      a.push_back(std::move(row));
      b.push_back(2);
    }
  if (alg.kind() == AlgebraKind::SL) {
    a.emplace_back(d, Rational(1));
    b.push_back(0);
  } else if (alg.has_standard_form()) {
    for (std::size_t i = 0; i < d / 2; ++i) {
      RationalVector row(d, Rational(0));
      row[i] = 1;
      row[i + d / 2] = 1;
      a.push_back(std::move(row));
      b.push_back(0);
    }
  }
  auto sol = exactlin::solve_linear(a, b);
  if (!sol) throw PreconditionViolated("x is not homogeneous for any diagonal cocharacter");
  Integer l = 1;
  for (const auto& q : *sol) l = boost::multiprecision::lcm(l, denominator(q));
  for (std::size_t i = 0; i < d; ++i)
    out.chi.weights[i] = (numerator((*sol)[i]) * (l / denominator((*sol)[i]))).convert_to<long long>();
  out.degree = 2 * l.convert_to<long long>();
  return out;
}

}  // namespace pargrade::liegrade
