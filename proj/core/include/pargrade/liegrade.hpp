#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pargrade/error.hpp"
#include "pargrade/exactlin.hpp"
#include "pargrade/rootdata.hpp"

namespace pargrade::liegrade {

using exactlin::IntMatrix;
using exactlin::Rational;
using exactlin::RationalMatrix;

PARGRADE_DEFINE_ERROR(BadForm);
PARGRADE_DEFINE_ERROR(NoTriple);
PARGRADE_DEFINE_ERROR(NonIntegralWeights);
PARGRADE_DEFINE_ERROR(NotSimultaneouslyDiagonal);
PARGRADE_DEFINE_ERROR(NotInAlgebra);

enum class AlgebraKind { SL, Sp, Sub };

/// The symplectic form [[0, I], [-I, 0]] on a space of even dimension d.
IntMatrix standard_symplectic_form(std::size_t d);

/// A Lie subalgebra of gl_d given by an explicit basis.
class MatrixLieAlgebra {
 public:
  /// sl_d, or sp(B) for the given form (default: standard_symplectic_form).
  static MatrixLieAlgebra build(rootdata::GroupType type, std::size_t d, std::optional<IntMatrix> form = std::nullopt);
  /// The span of `generators` (assumed bracket-closed, not checked here).
  static MatrixLieAlgebra span_of(std::string label, std::size_t d, const std::vector<RationalMatrix>& generators);

  AlgebraKind kind() const { return kind_; }
  const std::string& label() const { return label_; }
  std::size_t ambient_dim() const { return d_; }
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<RationalMatrix>& basis() const { return basis_; }
  const std::optional<IntMatrix>& form() const { return form_; }
  /// True when the form is the standard one, so cocharacters obey w[i+m] = -w[i].
  bool has_standard_form() const;

  bool contains(const RationalMatrix& m) const;

 private:
  AlgebraKind kind_ = AlgebraKind::Sub;
  std::string label_;
  std::size_t d_ = 0;
  std::vector<RationalMatrix> basis_;
  std::optional<IntMatrix> form_;
};

/// Diagonal one-parameter subgroup t -> diag(t^w1, ..., t^wd).
struct Cocharacter {
  std::vector<long long> weights;

  std::size_t size() const { return weights.size(); }
  std::string to_string() const;
  static Cocharacter parse(std::string_view text);
  friend bool operator==(const Cocharacter&, const Cocharacter&) = default;
};

/// Throws PreconditionViolated unless chi has the right length and satisfies
/// the type constraint (sum zero for SL, w[i+m] = -w[i] for standard Sp).
void validate_cocharacter(const MatrixLieAlgebra& alg, const Cocharacter& chi);

/// Entry (i, j) = w_i - w_j.
IntMatrix weight_matrix(const Cocharacter& chi);

/// True if every nonzero entry (i, j) of m has w_i - w_j = n.
bool is_homogeneous(const RationalMatrix& m, const Cocharacter& chi, long long n);

struct GradedComponent {
  long long degree = 0;
  std::vector<RationalMatrix> basis;
  std::size_t dimension() const { return basis.size(); }
};

GradedComponent graded_component(const MatrixLieAlgebra& alg, const Cocharacter& chi, long long n);

/// Degrees n with g_n nonzero, ascending.
std::vector<long long> occurring_degrees(const MatrixLieAlgebra& alg, const Cocharacter& chi);

struct Sl2Triple {
  RationalMatrix e, h, f;

  /// [h,e] = 2e, [h,f] = -2f, [e,f] = h.
  bool satisfies_relations() const;
  /// The degenerate triple (0, 0, 0) used for the zero orbit.
  static Sl2Triple zero(std::size_t d);
  bool is_zero() const { return e.is_zero() && h.is_zero() && f.is_zero(); }
};

/// Graded sl2-triple (x, h, f) with h in g_0 and f in g_{-n}. Prefers a
/// diagonal h when one exists.
Sl2Triple adapted_sl2_triple(const MatrixLieAlgebra& alg, const Cocharacter& chi, long long n,
                             const RationalMatrix& x);

struct ChiPrime {
  Cocharacter weights;           // eigenvalues of h, in the new basis order
  RationalMatrix basis_change;   // columns are the new basis vectors
  bool basis_is_standard = true;  // h was already diagonal
};

/// Eigen-decomposition of h into integer weight spaces. When chi is given the
/// new basis refines the chi-weight spaces slot by slot, so chi stays diagonal
/// with the same weight vector.
ChiPrime chi_prime(const Sl2Triple& triple, const Cocharacter* chi = nullptr);

struct ParabolicDatum {
  long long degree = 0;
  Cocharacter chi;
  ChiPrime chi_prime;
  std::vector<RationalMatrix> p_basis, nilradical_basis, l_basis;  // original coordinates
  IntMatrix chi_weights;        // m' per cell, new coordinates
  IntMatrix chi_prime_weights;  // m per cell, new coordinates
  IntMatrix combined;           // sign(n) * (n*m - 2*m')
  IntMatrix p_mask, nilradical_mask, l_mask;  // 0/1 cells occupied by the algebra

  /// Index sets of the diagonal blocks of l (connected components of its support).
  std::vector<std::vector<std::size_t>> levi_blocks() const;
  /// Block sizes, descending.
  std::vector<std::size_t> levi_block_shape() const;
  MatrixLieAlgebra levi_algebra() const;
};

ParabolicDatum canonical_parabolic(const MatrixLieAlgebra& alg, const Cocharacter& chi, const Sl2Triple& triple,
                                   long long n);

struct RigidityWitness {
  int condition = 0;  // 1: triple not in J_n; 2: nm/2 integral but m' != nm/2; 3: nm odd
  std::size_t row = 0, col = 0;
  long long m = 0, m_prime = 0;
};

struct RigidityReport {
  bool is_rigid = false;
  std::optional<RigidityWitness> witness;
};

/// First violating cell in row-major order of the new basis, if any.
RigidityReport check_n_rigid(const MatrixLieAlgebra& alg, const Cocharacter& chi, const Sl2Triple& triple,
                             long long n);

struct HomogeneousGrading {
  Cocharacter chi;
  long long degree = 2;
};

/// Integral diagonal cocharacter of the algebra's type making x homogeneous.
/// The degree is 2 unless the solution had to be scaled to clear denominators.
HomogeneousGrading homogeneous_grading(const MatrixLieAlgebra& alg, const RationalMatrix& x);

}  // namespace pargrade::liegrade
