#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pargrade/error.hpp"

namespace pargrade::exactlin {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using IntVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

PARGRADE_DEFINE_ERROR(CompositeCharacteristic);
PARGRADE_DEFINE_ERROR(NotNilpotent);
PARGRADE_DEFINE_ERROR(DimensionMismatch);
PARGRADE_DEFINE_ERROR(InvalidPartition);

bool is_prime(long long n);

/// Dense row-major integer matrix with arbitrary-precision entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const std::vector<Integer>& diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool is_zero() const;

  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntMatrix transpose() const;

  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const Integer& s, const IntMatrix& a);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  /// Renders in the shared text format: rows separated by ';', entries by ','.
  std::string to_string() const;
  static IntMatrix parse(std::string_view text);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

Integer determinant(const IntMatrix& m);

/// Rational matrix stored as an integer numerator matrix over one common
/// positive denominator, always kept in lowest terms.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(IntMatrix numerator, Integer denominator = 1);
  RationalMatrix(std::size_t rows, std::size_t cols);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_entries(std::size_t rows, std::size_t cols, const RationalVector& entries);
  static RationalMatrix unit(std::size_t n, std::size_t r, std::size_t c);

  std::size_t rows() const { return num_.rows(); }
  std::size_t cols() const { return num_.cols(); }
  const IntMatrix& numerator() const { return num_; }
  const Integer& denominator() const { return den_; }

  Rational at(std::size_t r, std::size_t c) const;
  bool is_zero() const { return num_.is_zero(); }
  bool is_integral() const { return den_ == 1; }
  bool is_diagonal() const;
  Rational trace() const;

  /// Row-major entries as rationals (length rows*cols).
  RationalVector flatten() const;

  RationalMatrix transpose() const;
  RationalMatrix power(unsigned k) const;

  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const Rational& s, const RationalMatrix& a);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) = default;

  std::string to_string() const;
  /// Accepts the shared matrix format with integer or p/q entries.
  static RationalMatrix parse(std::string_view text);

 private:
  void normalize();

  IntMatrix num_;
  Integer den_ = 1;
};

/// Exact inverse, or nullopt for a singular matrix.
std::optional<RationalMatrix> inverse(const RationalMatrix& m);

/// [a, b] = ab - ba.
RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b);

/// Invariant factors d1 | d2 | ... with unimodular U, V such that U*M*V = diag(d).
struct SNFResult {
  std::vector<Integer> invariant_factors;  // length min(rows, cols), trailing zeros allowed
  IntMatrix left;                          // U
  IntMatrix right;                         // V

  std::size_t rank() const;
  /// Invariant factors strictly greater than one (the torsion of Z^cols / rowspace).
  std::vector<Integer> torsion() const;
};

SNFResult smith_normal_form(const IntMatrix& m);

/// Prime divisors of an integer (absolute value), ascending.
std::vector<long long> prime_divisors(const Integer& n);

struct RankKernel {
  std::size_t rank = 0;
  /// Over char 0: primitive integer vectors. Over F_p: entries in [0, p).
  std::vector<IntVector> kernel_basis;
};

/// Rank and right kernel of M over Q (field_char = 0) or F_p.
RankKernel rank_and_kernel(const IntMatrix& m, long long field_char);

/// Rank of a rational matrix over Q.
std::size_t rank(const RationalMatrix& m);

/// Rational row-echelon engine shared by kernel and solve routines.
struct RowEchelon {
  std::vector<RationalVector> rows;  // reduced rows, pivot entries equal 1
  std::vector<std::size_t> pivots;   // pivot column of each row
  std::size_t cols = 0;

  static RowEchelon reduce(std::vector<RationalVector> rows, std::size_t cols);
  std::size_t rank() const { return pivots.size(); }
  /// Kernel basis with each free variable set to 1 in turn.
  std::vector<RationalVector> kernel() const;
};

/// Solves A y = b over Q. Free variables are set to zero in the returned
/// particular solution; nullopt if the system is inconsistent.
std::optional<RationalVector> solve_linear(const std::vector<RationalVector>& a, const RationalVector& b);

/// Basis of the span of the given vectors (row-reduced, deterministic).
std::vector<RationalVector> span_basis(const std::vector<RationalVector>& vectors);

/// Coordinates of v in terms of the given vectors, if v lies in their span.
std::optional<RationalVector> coordinates_in_span(const std::vector<RationalVector>& vectors, const RationalVector& v);

/// Sublattice of Z^n generated by integer row vectors; membership via SNF.
class LatticeSpan {
 public:
  LatticeSpan(const std::vector<IntVector>& generators, std::size_t ambient_rank);
  bool contains(const IntVector& v) const;
  std::size_t ambient_rank() const { return n_; }

 private:
  std::size_t n_;
  std::vector<Integer> factors_;
  IntMatrix right_;
};

/// Weakly decreasing sequence of positive integers.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int weight() const;
  std::size_t length() const { return parts_.size(); }
  Partition transpose() const;
  /// Multiplicity of part value k.
  int multiplicity(int k) const;

  /// Exponent notation, e.g. "[2,1^2]".
  std::string to_string() const;
  /// Accepts "[2,1^2]", "[2,1,1]" or "2,1,1".
  static Partition parse(std::string_view text);

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// All partitions of n in reverse lexicographic order ([n] first).
std::vector<Partition> partitions_of(int n);

/// Jordan type of a nilpotent matrix from the rank sequence of its powers.
Partition nilpotent_jordan_partition(const RationalMatrix& n);

/// Direct sum of nilpotent Jordan blocks (ones on the superdiagonal) with the given sizes.
IntMatrix jordan_matrix(const Partition& p);

}  // namespace pargrade::exactlin
