#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pargrade/error.hpp"
#include "pargrade/exactlin.hpp"

namespace pargrade::cohom {

PARGRADE_DEFINE_ERROR(UnknownCase);
PARGRADE_DEFINE_ERROR(ExcludedCharacteristic);
PARGRADE_DEFINE_ERROR(UnsupportedLocalSystem);

/// Cohomological degree -> rank; zero ranks are never stored.
using Degrees = std::map<int, long long>;

/// Expression tree of the simple varieties appearing as fibers.
class SpaceExpr {
 public:
  enum class Kind { Empty, Pt, Aff, Proj, ProjLineMinus, Torus, Disjoint };

  static SpaceExpr empty();
  static SpaceExpr pt();
  static SpaceExpr aff(int k);
  static SpaceExpr proj(int k);
  /// P^1 minus m points; m = 2 is the torus.
  static SpaceExpr proj_line_minus(int m);
  static SpaceExpr torus();
  static SpaceExpr disjoint(std::vector<SpaceExpr> children);

  Kind kind() const { return kind_; }
  int param() const { return param_; }
  const std::vector<SpaceExpr>& children() const { return children_; }

  /// Components with nontrivial fundamental group, in depth-first order.
  std::size_t loop_count() const;

  /// S-expression: "(pt)", "(aff 2)", "(proj 1)", "(proj-line-minus 2)",
  /// "(torus)", "(disjoint ...)", "(empty)".
  std::string to_string() const;
  static SpaceExpr parse(std::string_view text);

  friend bool operator==(const SpaceExpr&, const SpaceExpr&) = default;

 private:
  Kind kind_ = Kind::Empty;
  int param_ = 0;
  std::vector<SpaceExpr> children_;
};

/// Integer polynomial in q, coefficient i of q^i.
struct Polynomial {
  std::vector<long long> coeffs;

  long long evaluate(long long q) const;
  std::string to_string() const;  // e.g. "2q^2+q+1"
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b);
};

/// Gaussian binomial [d choose k]_q.
Polynomial gaussian_binomial(int d, int k);

Degrees hc_constant(const SpaceExpr& x);

/// Compactly supported cohomology of the torus with a rank-1 system of
/// monodromy m over a field of characteristic l.
Degrees hc_rank1_torus(long long m, long long l);

/// hc with the given monodromy scalars on the loop components (depth-first order).
Degrees hc_local_system(const SpaceExpr& x, const std::vector<long long>& monodromy, long long l);

Polynomial counting_polynomial(const SpaceExpr& x);

/// Sum over degrees of (-1)^d * rank.
long long euler_characteristic(const Degrees& d);

/// A stratum prediction: a counting polynomial unless a named count rule
/// replaces it ("roots-of-t2+1", or "full-minus:<stratum>").
struct Prediction {
  SpaceExpr expr;
  std::string count_rule;
};

struct StratumSpec {
  std::string name;
  std::vector<std::string> conditions;
};

struct FiberDatum {
  exactlin::Partition partition;
  exactlin::IntMatrix representative;
  SpaceExpr full_fiber;
  Prediction cuspidal;
  std::vector<long long> monodromy;
  std::map<std::string, Prediction> strata;
};

struct CaseData {
  std::string name;
  std::string group;  // "sl" or "sp"
  std::size_t dim = 0;
  std::optional<exactlin::IntMatrix> form;
  std::vector<std::size_t> flag_dims;
  bool symplectic_flag = false;
  std::string cuspidal_levi;
  int dim_c = 0;
  std::vector<std::string> cuspidal_conditions;
  std::vector<StratumSpec> extra_strata;
  std::vector<FiberDatum> orbits;
};

std::vector<std::string> case_names();
CaseData load_case(std::string_view name);
CaseData parse_case_json(std::string_view json_text);
CaseData load_case_file(const std::string& path);

/// Predicted point count of a stratum of one orbit at q.
long long predicted_count(const FiberDatum& fiber, const std::string& stratum, long long q);

struct StalkTable {
  std::string case_name;
  long long characteristic = 0;
  std::string convention = "shift-by-dimC";
  std::vector<std::pair<std::string, Degrees>> columns;  // orbit label -> degrees, in case order

  const Degrees& column(const std::string& label) const;
  /// True if all nonzero degrees of the column have one parity.
  bool column_has_parity(const std::string& label) const;
  bool has_parity() const;
};

/// Degree d holds the rank of H_c^{d + dim C} of the cuspidal part.
StalkTable stalk_table(const CaseData& c, long long l, bool allow_char_2 = false);

}  // namespace pargrade::cohom
