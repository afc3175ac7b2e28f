#include "pargrade/exactlin.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

namespace pargrade::exactlin {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

Integer parse_integer(std::string_view tok) {
  tok = trim(tok);
  if (tok.empty()) throw ParseError("empty integer token");
  std::size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
  if (i == tok.size()) throw ParseError("bad integer '" + std::string(tok) + "'");
  for (std::size_t k = i; k < tok.size(); ++k) {
    if (tok[k] < '0' || tok[k] > '9') throw ParseError("bad integer '" + std::string(tok) + "'");
  }
  return Integer(std::string(tok));
}

Rational parse_rational(std::string_view tok) {
  tok = trim(tok);
  auto slash = tok.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(tok));
  Integer den = parse_integer(tok.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + std::string(tok) + "'");
  return Rational(parse_integer(tok.substr(0, slash)), den);
}

std::string rational_to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

// Row/column primitives used by the Smith reduction.
void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}
void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}
// row_dst += k * row_src
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& k) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) += k * m(src, c);
}
// col_dst += k * col_src
void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& k) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) += k * m(r, src);
}

Integer mod_floor(const Integer& a, const Integer& p) {
  Integer r = a % p;
  if (r < 0) r += p;
  return r;
}

Integer mod_inverse(const Integer& a, const Integer& p) {
  // extended Euclid
  Integer old_r = mod_floor(a, p), r = p, old_s = 1, s = 0;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  return mod_floor(old_s, p);
}

}  // namespace

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) throw DimensionMismatch("entry count does not equal rows*cols");
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
    for (long long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<Integer>& diag) {
  IntMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum");
  IntMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix difference");
  IntMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

IntMatrix operator*(const Integer& s, const IntMatrix& a) {
  IntMatrix out = a;
  for (auto& v : out.data_) v *= s;
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ';';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ',';
      os << (*this)(r, c);
    }
  }
  return os.str();
}

IntMatrix IntMatrix::parse(std::string_view text) {
  RationalMatrix q = RationalMatrix::parse(text);
  if (!q.is_integral()) throw ParseError("expected an integer matrix");
  return q.numerator();
}

Integer determinant(const IntMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMatrix a = m;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_with = k + 1;
      while (swap_with < n && a(swap_with, k) == 0) ++swap_with;
      if (swap_with == n) return 0;
      swap_rows(a, k, swap_with);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// ----------------------------------------------------------- RationalMatrix

RationalMatrix::RationalMatrix(IntMatrix numerator, Integer denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_ == 0) throw PreconditionViolated("zero denominator");
  normalize();
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols) : num_(rows, cols), den_(1) {}

RationalMatrix RationalMatrix::identity(std::size_t n) { return RationalMatrix(IntMatrix::identity(n)); }

RationalMatrix RationalMatrix::unit(std::size_t n, std::size_t r, std::size_t c) {
  IntMatrix m(n, n);
  m(r, c) = 1;
  return RationalMatrix(std::move(m));
}

RationalMatrix RationalMatrix::from_entries(std::size_t rows, std::size_t cols, const RationalVector& entries) {
  if (entries.size() != rows * cols) throw DimensionMismatch("entry count does not equal rows*cols");
  Integer den = 1;
  for (const auto& q : entries) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(q));
  IntMatrix num(rows, cols);
  for (std::size_t i = 0; i < entries.size(); ++i)
    num(i / cols, i % cols) = boost::multiprecision::numerator(entries[i]) * (den / boost::multiprecision::denominator(entries[i]));
  return RationalMatrix(std::move(num), den);
}

void RationalMatrix::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    num_ = Integer(-1) * num_;
  }
  Integer g = den_;
  for (std::size_t r = 0; r < num_.rows() && g != 1; ++r)
    for (std::size_t c = 0; c < num_.cols() && g != 1; ++c)
      if (num_(r, c) != 0) g = boost::multiprecision::gcd(g, num_(r, c));
  if (g != 1) {
    for (std::size_t r = 0; r < num_.rows(); ++r)
      for (std::size_t c = 0; c < num_.cols(); ++c) num_(r, c) /= g;
    den_ /= g;
  }
  if (num_.is_zero()) den_ = 1;
}

Rational RationalMatrix::at(std::size_t r, std::size_t c) const { return Rational(num_(r, c), den_); }

bool RationalMatrix::is_diagonal() const {
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t c = 0; c < cols(); ++c)
      if (r != c && num_(r, c) != 0) return false;
  return true;
}

Rational RationalMatrix::trace() const {
  Integer t = 0;
  for (std::size_t i = 0; i < std::min(rows(), cols()); ++i) t += num_(i, i);
  return Rational(t, den_);
}

RationalVector RationalMatrix::flatten() const {
  RationalVector out;
  out.reserve(rows() * cols());
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t c = 0; c < cols(); ++c) out.push_back(at(r, c));
  return out;
}

RationalMatrix RationalMatrix::transpose() const { return RationalMatrix(num_.transpose(), den_); }

RationalMatrix RationalMatrix::power(unsigned k) const {
  if (!num_.is_square()) throw DimensionMismatch("power of a non-square matrix");
  RationalMatrix out = identity(rows());
  for (unsigned i = 0; i < k; ++i) out = out * *this;
  return out;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  Integer l = boost::multiprecision::lcm(a.den_, b.den_);
  return RationalMatrix((l / a.den_) * a.num_ + (l / b.den_) * b.num_, l);
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  Integer l = boost::multiprecision::lcm(a.den_, b.den_);
  return RationalMatrix((l / a.den_) * a.num_ - (l / b.den_) * b.num_, l);
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  return RationalMatrix(a.num_ * b.num_, a.den_ * b.den_);
}

RationalMatrix operator*(const Rational& s, const RationalMatrix& a) {
  return RationalMatrix(numerator(s) * a.num_, denominator(s) * a.den_);
}

std::string RationalMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows(); ++r) {
    if (r) os << ';';
    for (std::size_t c = 0; c < cols(); ++c) {
      if (c) os << ',';
      os << rational_to_string(at(r, c));
    }
  }
  return os.str();
}

RationalMatrix RationalMatrix::parse(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw ParseError("empty matrix text");
  auto row_texts = split(text, ';');
  std::size_t cols = 0;
  RationalVector entries;
  for (std::size_t r = 0; r < row_texts.size(); ++r) {
    auto toks = split(trim(row_texts[r]), ',');
    if (r == 0) cols = toks.size();
    if (toks.size() != cols) throw ParseError("ragged matrix text '" + std::string(text) + "'");
    for (auto t : toks) entries.push_back(parse_rational(t));
  }
  return from_entries(row_texts.size(), cols, entries);
}

RationalMatrix commutator(const RationalMatrix& a, const RationalMatrix& b) { return a * b - b * a; }

std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<RationalVector> rows;
  for (std::size_t r = 0; r < n; ++r) {
    RationalVector row(2 * n, Rational(0));
    for (std::size_t c = 0; c < n; ++c) row[c] = m.at(r, c);
    row[n + r] = 1;
    rows.push_back(std::move(row));
  }
  auto e = RowEchelon::reduce(std::move(rows), 2 * n);
  if (e.rank() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  RationalVector entries;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) entries.push_back(e.rows[r][n + c]);
  return RationalMatrix::from_entries(n, n, entries);
}

// ---------------------------------------------------------------------- SNF

std::size_t SNFResult::rank() const {
  return static_cast<std::size_t>(
      std::count_if(invariant_factors.begin(), invariant_factors.end(), [](const Integer& d) { return d != 0; }));
}

std::vector<Integer> SNFResult::torsion() const {
  std::vector<Integer> out;
  for (const auto& d : invariant_factors)
    if (d > 1) out.push_back(d);
  return out;
}

SNFResult smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);
  const std::size_t k = std::min(rows, cols);

  std::size_t t = 0;
  for (; t < k; ++t) {
    bool found_any = true;
    for (;;) {
      // Pivot on the smallest nonzero absolute value in the trailing block.
      std::size_t pi = rows, pj = cols;
      Integer best = -1;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (a(i, j) == 0) continue;
          Integer av = abs(a(i, j));
          if (best < 0 || av < best) {
            best = av;
            pi = i;
            pj = j;
          }
        }
      if (pi == rows) {
        found_any = false;
        break;
      }
      swap_rows(a, t, pi);
      swap_rows(u, t, pi);
      swap_cols(a, t, pj);
      swap_cols(v, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Integer q = a(i, t) / a(t, t);
        add_row(a, i, t, -q);
        add_row(u, i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Integer q = a(t, j) / a(t, t);
        add_col(a, j, t, -q);
        add_col(v, j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce divisibility of the trailing block by the pivot.
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            add_row(a, t, i, 1);
            add_row(u, t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (!found_any) break;
    if (a(t, t) < 0) {
      for (std::size_t c = 0; c < cols; ++c) a(t, c) = -a(t, c);
      for (std::size_t c = 0; c < rows; ++c) u(t, c) = -u(t, c);
    }
  }

  SNFResult res;
  res.invariant_factors.resize(k);
  for (std::size_t i = 0; i < k; ++i) res.invariant_factors[i] = a(i, i);
  res.left = std::move(u);
  res.right = std::move(v);
  return res;
}

std::vector<long long> prime_divisors(const Integer& n) {
  Integer x = abs(n);
  std::vector<long long> out;
  if (x < 2) return out;
  for (long long p = 2; Integer(p) * p <= x; ++p) {
    if (x % p == 0) {
      out.push_back(p);
      while (x % p == 0) x /= p;
    }
  }
  if (x > 1) out.push_back(x.convert_to<long long>());
  return out;
}

// ------------------------------------------------------- rational echelon

RowEchelon RowEchelon::reduce(std::vector<RationalVector> rows, std::size_t cols) {
  RowEchelon e;
  e.cols = cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    e.pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  e.rows = std::move(rows);
  return e;
}

std::vector<RationalVector> RowEchelon::kernel() const {
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RationalVector> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][f];
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<RationalVector> solve_linear(const std::vector<RationalVector>& a, const RationalVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("solve_linear: row count differs from rhs length");
  std::size_t n = a.empty() ? 0 : a.front().size();
  std::vector<RationalVector> aug;
  aug.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != n) throw DimensionMismatch("solve_linear: ragged system");
    RationalVector row = a[i];
    row.push_back(b[i]);
    aug.push_back(std::move(row));
  }
  auto e = RowEchelon::reduce(std::move(aug), n + 1);
  if (!e.pivots.empty() && e.pivots.back() == n) return std::nullopt;
  RationalVector y(n, Rational(0));
  for (std::size_t i = 0; i < e.pivots.size(); ++i) y[e.pivots[i]] = e.rows[i][n];
  return y;
}

std::vector<RationalVector> span_basis(const std::vector<RationalVector>& vectors) {
  if (vectors.empty()) return {};
  return RowEchelon::reduce(vectors, vectors.front().size()).rows;
}

std::optional<RationalVector> coordinates_in_span(const std::vector<RationalVector>& vectors,
                                                  const RationalVector& v) {
  std::vector<RationalVector> a(v.size(), RationalVector(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != v.size()) throw DimensionMismatch("coordinates_in_span");
    for (std::size_t k = 0; k < v.size(); ++k) a[k][j] = vectors[j][k];
  }
  return solve_linear(a, v);
}

std::size_t rank(const RationalMatrix& m) { return rank_and_kernel(m.numerator(), 0).rank; }

RankKernel rank_and_kernel(const IntMatrix& m, long long field_char) {
  if (field_char != 0 && !is_prime(field_char))
    throw CompositeCharacteristic("field characteristic " + std::to_string(field_char) + " is neither 0 nor prime");
  const std::size_t cols = m.cols();
  RankKernel out;
  if (field_char == 0) {
    std::vector<RationalVector> rows;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      RationalVector row(cols);
      for (std::size_t c = 0; c < cols; ++c) row[c] = Rational(m(r, c));
      rows.push_back(std::move(row));
    }
    auto e = RowEchelon::reduce(std::move(rows), cols);
    out.rank = e.rank();
    for (const auto& kv : e.kernel()) {
      Integer l = 1;
      for (const auto& q : kv) l = boost::multiprecision::lcm(l, denominator(q));
      IntVector iv(cols);
      Integer g = 0;
      for (std::size_t c = 0; c < cols; ++c) {
        iv[c] = numerator(kv[c]) * (l / denominator(kv[c]));
        g = boost::multiprecision::gcd(g, iv[c]);
      }
      if (g > 1)
        for (auto& x : iv) x /= g;
      out.kernel_basis.push_back(std::move(iv));
    }
    return out;
  }

  const Integer p = field_char;
  std::vector<IntVector> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    IntVector row(cols);
    for (std::size_t c = 0; c < cols; ++c) row[c] = mod_floor(m(r, c), p);
    rows.push_back(std::move(row));
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    Integer inv = mod_inverse(rows[r][c], p);
    for (auto& x : rows[r]) x = mod_floor(x * inv, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Integer f = rows[i][c];
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] = mod_floor(rows[i][j] - f * rows[r][j], p);
    }
    pivots.push_back(c);
    ++r;
  }
  out.rank = pivots.size();
  std::vector<bool> is_pivot(cols, false);
  for (auto pc : pivots) is_pivot[pc] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    IntVector v(cols, Integer(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = mod_floor(-rows[i][f], p);
    out.kernel_basis.push_back(std::move(v));
  }
  return out;
}

// -------------------------------------------------------------- LatticeSpan

LatticeSpan::LatticeSpan(const std::vector<IntVector>& generators, std::size_t ambient_rank) : n_(ambient_rank) {
  IntMatrix m(generators.size(), n_);
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].size() != n_) throw DimensionMismatch("lattice generator length");
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = generators[i][j];
  }
  if (generators.empty()) {
    right_ = IntMatrix::identity(n_);
    return;
  }
  auto snf = smith_normal_form(m);
  factors_ = std::move(snf.invariant_factors);
  right_ = std::move(snf.right);
}

bool LatticeSpan::contains(const IntVector& v) const {
  if (v.size() != n_) throw DimensionMismatch("lattice membership vector length");
  for (std::size_t j = 0; j < n_; ++j) {
    Integer w = 0;
    for (std::size_t i = 0; i < n_; ++i) w += v[i] * right_(i, j);
    if (j < factors_.size() && factors_[j] != 0) {
      if (w % factors_[j] != 0) return false;
    } else if (w != 0) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- Partition

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw InvalidPartition("parts must be positive");
    if (i && parts_[i] > parts_[i - 1]) throw InvalidPartition("parts must be weakly decreasing");
  }
}

int Partition::weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

int Partition::multiplicity(int k) const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), k));
}

Partition Partition::transpose() const {
  std::vector<int> t;
  if (parts_.empty()) return Partition{};
  for (int k = 1; k <= parts_.front(); ++k) {
    t.push_back(static_cast<int>(std::count_if(parts_.begin(), parts_.end(), [k](int p) { return p >= k; })));
  }
  return Partition(std::move(t));
}

std::string Partition::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < parts_.size();) {
    std::size_t j = i;
    while (j < parts_.size() && parts_[j] == parts_[i]) ++j;
    if (i) s += ',';
    s += std::to_string(parts_[i]);
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s + "]";
}

Partition Partition::parse(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') throw ParseError("unbalanced partition brackets");
    text = text.substr(1, text.size() - 2);
  }
  std::vector<int> parts;
  if (trim(text).empty()) return Partition{};
  for (auto tok : split(text, ',')) {
    tok = trim(tok);
    auto caret = tok.find('^');
    Integer part = parse_integer(tok.substr(0, caret));
    Integer mult = caret == std::string_view::npos ? Integer(1) : parse_integer(tok.substr(caret + 1));
    if (part <= 0 || mult <= 0) throw InvalidPartition("bad partition token '" + std::string(tok) + "'");
    for (Integer k = 0; k < mult; ++k) parts.push_back(part.convert_to<int>());
  }
  std::vector<int> sorted = parts;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  if (sorted != parts) throw InvalidPartition("partition '" + std::string(text) + "' is not weakly decreasing");
  return Partition(std::move(parts));
}

namespace {
void partitions_rec(int remaining, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int p = std::min(remaining, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(remaining - p, p, cur, out);
    cur.pop_back();
  }
}
}  // namespace

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  if (n < 0) return out;
  std::vector<int> cur;
  partitions_rec(n, n, cur, out);
  return out;
}

Partition nilpotent_jordan_partition(const RationalMatrix& n) {
  if (n.rows() != n.cols()) throw DimensionMismatch("Jordan partition of a non-square matrix");
  const std::size_t d = n.rows();
  // ranks[k] = rank(N^k); only the numerator matters for rank.
  std::vector<std::size_t> ranks{d};
  IntMatrix power = IntMatrix::identity(d);
  for (std::size_t k = 1; k <= d; ++k) {
    power = power * n.numerator();
    ranks.push_back(rank_and_kernel(power, 0).rank);
  }
  if (d > 0 && ranks[d] != 0) throw NotNilpotent("matrix power N^" + std::to_string(d) + " is nonzero");
  std::vector<int> at_least;  // at_least[k-1] = #parts >= k
  for (std::size_t k = 1; k <= d; ++k) {
    int c = static_cast<int>(ranks[k - 1] - ranks[k]);
    if (c == 0) break;
    at_least.push_back(c);
  }
  return Partition(std::move(at_least)).transpose();
}

IntMatrix jordan_matrix(const Partition& p) {
  const auto d = static_cast<std::size_t>(p.weight());
  IntMatrix m(d, d);
  std::size_t offset = 0;
  for (int part : p.parts()) {
    for (int i = 0; i + 1 < part; ++i) m(offset + i, offset + i + 1) = 1;
    offset += static_cast<std::size_t>(part);
  }
  return m;
}

}  // namespace pargrade::exactlin
