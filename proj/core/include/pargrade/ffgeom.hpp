#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pargrade/cohom.hpp"
#include "pargrade/error.hpp"
#include "pargrade/exactlin.hpp"

namespace pargrade::ffgeom {

PARGRADE_DEFINE_ERROR(LimitExceeded);
PARGRADE_DEFINE_ERROR(NotStableUnderForm);

inline constexpr long long kMaxPrime = 13;
inline constexpr std::size_t kMaxDim = 6;

using Vec = std::vector<long long>;

/// Dense matrix over F_p with entries kept in [0, p).
class PrimeFieldMatrix {
 public:
  PrimeFieldMatrix(long long p, std::size_t rows, std::size_t cols);
  /// Reduces an integer matrix mod p.
  static PrimeFieldMatrix reduce(long long p, const exactlin::IntMatrix& m);

  long long modulus() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  long long at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, long long v);

  Vec apply(const Vec& v) const;
  PrimeFieldMatrix transpose() const;
  friend PrimeFieldMatrix operator*(const PrimeFieldMatrix& a, const PrimeFieldMatrix& b);
  friend PrimeFieldMatrix operator+(const PrimeFieldMatrix& a, const PrimeFieldMatrix& b);
  bool is_zero() const;

 private:
  long long p_;
  std::size_t rows_, cols_;
  std::vector<long long> data_;
};

/// A subspace of F_p^d in reduced row-echelon form.
struct Subspace {
  std::vector<Vec> rows;
  std::vector<std::size_t> pivots;

  std::size_t dim() const { return rows.size(); }
  bool contains(const Vec& v, long long p) const;
  bool contains(const Subspace& other, long long p) const;
};

/// Calls fn once per k-dimensional subspace of F_p^d.
void for_each_subspace(long long p, std::size_t d, std::size_t k, const std::function<void(const Subspace&)>& fn);
std::vector<Subspace> enumerate_subspaces(long long p, std::size_t d, std::size_t k);

/// Orthogonal complement under the bilinear form B.
Subspace orthogonal(const Subspace& v, const PrimeFieldMatrix& b);

struct Condition {
  enum class Kind { XStable, RestrictionZero, RestrictionNonzero, QuotientZero, QuotientNonzero };
  Kind kind = Kind::XStable;
  std::size_t part = 0;  // 1-based flag index; 0 for x-stable

  /// "x-stable", "restriction-zero:i", "restriction-nonzero:i",
  /// "induced-quotient-zero:i", "induced-quotient-nonzero:i".
  static Condition parse(const std::string& text);
  std::string to_string() const;
};

/// Flags V_1 < ... < V_r of the given dimensions. With a symplectic form only
/// the isotropic members are enumerated; their orthogonals are appended.
struct FlagSpec {
  std::size_t dim = 0;
  std::vector<std::size_t> flag_dims;
  std::optional<PrimeFieldMatrix> form;
  std::vector<Condition> conditions;
};

long long count_stable_flags(const PrimeFieldMatrix& x, const FlagSpec& spec);

/// Counts for several condition sets in one pass over the flags of `shape`.
std::vector<long long> count_stable_flags_multi(const PrimeFieldMatrix& x, const FlagSpec& shape,
                                                const std::vector<std::vector<Condition>>& condition_sets);

struct CountRow {
  std::string orbit;
  std::string stratum;  // "full", "cuspidal", an extra stratum, or "sum-rule"
  long long q = 0;
  long long count = 0;
  long long predicted = 0;
  std::string prediction;  // polynomial, count rule, or sum description
  bool match = false;
};

struct CountReport {
  std::string case_name;
  std::vector<CountRow> rows;
  bool all_match() const;
};

CountReport verify_fiber_counts(const cohom::CaseData& c, const std::vector<long long>& primes);

}  // namespace pargrade::ffgeom
