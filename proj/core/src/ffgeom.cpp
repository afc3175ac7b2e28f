#include "pargrade/ffgeom.hpp"

#include <algorithm>

namespace pargrade::ffgeom {

namespace {

long long mod(long long v, long long p) {
  long long r = v % p;
  return r < 0 ? r + p : r;
}

long long inv_mod(long long a, long long p) {
  // a^(p-2) by square-and-multiply; p is a small prime
  long long result = 1, base = mod(a, p), e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

bool small_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

void check_limits(long long p, std::size_t d) {
  if (!small_prime(p)) throw exactlin::CompositeCharacteristic(std::to_string(p) + " is not prime");
  if (p > kMaxPrime) throw LimitExceeded("prime " + std::to_string(p) + " exceeds " + std::to_string(kMaxPrime));
  if (d > kMaxDim) throw LimitExceeded("dimension " + std::to_string(d) + " exceeds " + std::to_string(kMaxDim));
}

/// Row-reduces the given vectors mod p into canonical form.
Subspace rref(std::vector<Vec> rows, std::size_t d, long long p) {
  Subspace s;
  std::size_t r = 0;
  for (std::size_t c = 0; c < d && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    const long long inv = inv_mod(rows[r][c], p);
    for (auto& v : rows[r]) v = v * inv % p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const long long f = rows[i][c];
      for (std::size_t j = 0; j < d; ++j) rows[i][j] = mod(rows[i][j] - f * rows[r][j], p);
    }
    s.pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  s.rows = std::move(rows);
  return s;
}

struct Flag {
  std::vector<Subspace> members;  // V_1, ..., V_r
};

bool holds(const Condition& cond, const Flag& flag, const PrimeFieldMatrix& x, std::size_t d) {
  const long long p = x.modulus();
  auto stable = [&](const Subspace& v) {
    return std::all_of(v.rows.begin(), v.rows.end(), [&](const Vec& r) { return v.contains(x.apply(r), p); });
  };
  auto member = [&](std::size_t i) -> const Subspace& {
    if (i == 0 || i > flag.members.size()) throw PreconditionViolated("flag index out of range");
    return flag.members[i - 1];
  };
  auto restriction_zero = [&](const Subspace& v) {
    return std::all_of(v.rows.begin(), v.rows.end(), [&](const Vec& r) {
      auto img = x.apply(r);
      return std::all_of(img.begin(), img.end(), [](long long e) { return e == 0; });
    });
  };
  // x maps V_{i+1} into V_i, with V_{r+1} the ambient space.
  auto quotient_zero = [&](std::size_t i) {
    const Subspace& lower = member(i);
    if (i == flag.members.size()) {
      for (std::size_t c = 0; c < d; ++c) {
        Vec e(d, 0);
        e[c] = 1;
        if (!lower.contains(x.apply(e), p)) return false;
      }
      return true;
    }
    const Subspace& upper = member(i + 1);
    return std::all_of(upper.rows.begin(), upper.rows.end(),
                       [&](const Vec& r) { return lower.contains(x.apply(r), p); });
  };
  switch (cond.kind) {
    case Condition::Kind::XStable:
      return std::all_of(flag.members.begin(), flag.members.end(), stable);
    case Condition::Kind::RestrictionZero:
      return restriction_zero(member(cond.part));
    case Condition::Kind::RestrictionNonzero:
      return !restriction_zero(member(cond.part));
    case Condition::Kind::QuotientZero:
      return quotient_zero(cond.part);
    case Condition::Kind::QuotientNonzero:
      return !quotient_zero(cond.part);
  }
  return false;
}

bool in_symplectic_algebra(const PrimeFieldMatrix& x, const PrimeFieldMatrix& b) {
  return (x.transpose() * b + b * x).is_zero();
}

}  // namespace

PrimeFieldMatrix::PrimeFieldMatrix(long long p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  if (!small_prime(p)) throw exactlin::CompositeCharacteristic(std::to_string(p) + " is not prime");
}

PrimeFieldMatrix PrimeFieldMatrix::reduce(long long p, const exactlin::IntMatrix& m) {
  PrimeFieldMatrix out(p, m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      exactlin::Integer v = m(r, c) % p;
      out.set(r, c, v.convert_to<long long>());
    }
  return out;
}

void PrimeFieldMatrix::set(std::size_t r, std::size_t c, long long v) { data_[r * cols_ + c] = mod(v, p_); }

Vec PrimeFieldMatrix::apply(const Vec& v) const {
  Vec out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    long long s = 0;
    for (std::size_t c = 0; c < cols_; ++c) s += at(r, c) * v[c];
    out[r] = s % p_;
  }
  return out;
}

PrimeFieldMatrix PrimeFieldMatrix::transpose() const {
  PrimeFieldMatrix t(p_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
  return t;
}

PrimeFieldMatrix operator*(const PrimeFieldMatrix& a, const PrimeFieldMatrix& b) {
  PrimeFieldMatrix out(a.p_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) {
      long long s = 0;
      for (std::size_t k = 0; k < a.cols_; ++k) s += a.at(i, k) * b.at(k, j);
      out.set(i, j, s);
    }
  return out;
}

PrimeFieldMatrix operator+(const PrimeFieldMatrix& a, const PrimeFieldMatrix& b) {
  PrimeFieldMatrix out(a.p_, a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = (a.data_[i] + b.data_[i]) % a.p_;
  return out;
}

bool PrimeFieldMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](long long v) { return v == 0; });
}

bool Subspace::contains(const Vec& v, long long p) const {
  Vec w = v;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const long long f = w[pivots[i]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = mod(w[j] - f * rows[i][j], p);
  }
  return std::all_of(w.begin(), w.end(), [](long long e) { return e == 0; });
}

bool Subspace::contains(const Subspace& other, long long p) const {
  return std::all_of(other.rows.begin(), other.rows.end(), [&](const Vec& r) { return contains(r, p); });
}

void for_each_subspace(long long p, std::size_t d, std::size_t k, const std::function<void(const Subspace&)>& fn) {
  check_limits(p, d);
  if (k < 1 || k >= d) throw LimitExceeded("subspace dimension must satisfy 1 <= k < d");
  std::vector<std::size_t> piv(k);
  for (std::size_t i = 0; i < k; ++i) piv[i] = i;
  while (true) {
    // Free cells: row i, column c > piv[i] with c not a pivot.
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t c = piv[i] + 1; c < d; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.emplace_back(i, c);
    Subspace s;
    s.pivots = piv;
    s.rows.assign(k, Vec(d, 0));
    for (std::size_t i = 0; i < k; ++i) s.rows[i][piv[i]] = 1;
    std::vector<long long> digits(free.size(), 0);
    while (true) {
      for (std::size_t t = 0; t < free.size(); ++t) s.rows[free[t].first][free[t].second] = digits[t];
      fn(s);
      std::size_t t = 0;
      while (t < digits.size() && ++digits[t] == p) digits[t++] = 0;
      if (t == digits.size()) break;
    }
    // Next pivot combination in lexicographic order.
    std::size_t i = k;
    while (i > 0 && piv[i - 1] == d - k + (i - 1)) --i;
    if (i == 0) break;
    ++piv[i - 1];
    for (std::size_t j = i; j < k; ++j) piv[j] = piv[j - 1] + 1;
  }
}

std::vector<Subspace> enumerate_subspaces(long long p, std::size_t d, std::size_t k) {
  std::vector<Subspace> out;
  for_each_subspace(p, d, k, [&](const Subspace& s) { out.push_back(s); });
  return out;
}

Subspace orthogonal(const Subspace& v, const PrimeFieldMatrix& b) {
  const long long p = b.modulus();
  const std::size_t d = b.rows();
  // Rows v^T B; the orthogonal is their common kernel.
  std::vector<Vec> eqs;
  for (const auto& r : v.rows) {
    Vec e(d, 0);
    for (std::size_t j = 0; j < d; ++j) {
      long long s = 0;
      for (std::size_t i = 0; i < d; ++i) s += r[i] * b.at(i, j);
      e[j] = s % p;
    }
    eqs.push_back(std::move(e));
  }
  Subspace red = rref(eqs, d, p);
  std::vector<Vec> kernel;
  for (std::size_t f = 0; f < d; ++f) {
    if (std::find(red.pivots.begin(), red.pivots.end(), f) != red.pivots.end()) continue;
    Vec k(d, 0);
    k[f] = 1;
    for (std::size_t i = 0; i < red.pivots.size(); ++i) k[red.pivots[i]] = mod(-red.rows[i][f], p);
    kernel.push_back(std::move(k));
  }
  return rref(kernel, d, p);
}

Condition Condition::parse(const std::string& text) {
  Condition c;
  if (text == "x-stable") return c;
  auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("unknown flag condition '" + text + "'");
  const std::string head = text.substr(0, colon), tail = text.substr(colon + 1);
  if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos || tail.size() > 3)
    throw ParseError("bad flag index in '" + text + "'");
  c.part = std::stoul(tail);
  if (c.part == 0) throw ParseError("flag indices start at 1 in '" + text + "'");
  if (head == "restriction-zero") c.kind = Kind::RestrictionZero;
  else if (head == "restriction-nonzero") c.kind = Kind::RestrictionNonzero;
  else if (head == "induced-quotient-zero") c.kind = Kind::QuotientZero;
  else if (head == "induced-quotient-nonzero") c.kind = Kind::QuotientNonzero;
  else throw ParseError("unknown flag condition '" + text + "'");
  return c;
}

std::string Condition::to_string() const {
  switch (kind) {
    case Kind::XStable:
      return "x-stable";
    case Kind::RestrictionZero:
      return "restriction-zero:" + std::to_string(part);
    case Kind::RestrictionNonzero:
      return "restriction-nonzero:" + std::to_string(part);
    case Kind::QuotientZero:
      return "induced-quotient-zero:" + std::to_string(part);
    case Kind::QuotientNonzero:
      return "induced-quotient-nonzero:" + std::to_string(part);
  }
  return {};
}

std::vector<long long> count_stable_flags_multi(const PrimeFieldMatrix& x, const FlagSpec& shape,
                                                const std::vector<std::vector<Condition>>& condition_sets) {
  const long long p = x.modulus();
  const std::size_t d = shape.dim;
  check_limits(p, d);
  if (x.rows() != d || x.cols() != d) throw exactlin::DimensionMismatch("x does not match the flag dimension");
  if (shape.flag_dims.empty()) throw PreconditionViolated("empty flag");
  for (std::size_t i = 0; i < shape.flag_dims.size(); ++i)
    if (shape.flag_dims[i] < 1 || shape.flag_dims[i] >= d || (i > 0 && shape.flag_dims[i] <= shape.flag_dims[i - 1]))
      throw PreconditionViolated("flag dims must be strictly increasing within [1, d)");
  if (shape.form) {
    const auto& b = *shape.form;
    if (b.modulus() != p) throw PreconditionViolated("form and x live over different fields");
    if (!(b.transpose() + b).is_zero()) throw NotStableUnderForm("form is not alternating mod p");
    if (!in_symplectic_algebra(x, b)) throw NotStableUnderForm("x is not in sp(B) mod p");
  }

  // Candidate subspaces per level, isotropic ones only under a form.
  std::vector<std::vector<Subspace>> levels;
  for (auto k : shape.flag_dims) {
    std::vector<Subspace> cands;
    for_each_subspace(p, d, k, [&](const Subspace& s) {
      if (shape.form && !orthogonal(s, *shape.form).contains(s, p)) return;
      cands.push_back(s);
    });
    levels.push_back(std::move(cands));
  }

  std::vector<long long> counts(condition_sets.size(), 0);
  Flag flag;
  auto visit = [&](auto&& self, std::size_t level) -> void {
    if (level == levels.size()) {
      Flag full = flag;
      if (shape.form) {
        for (std::size_t i = flag.members.size(); i-- > 0;) {
          Subspace perp = orthogonal(flag.members[i], *shape.form);
          if (perp.dim() != full.members.back().dim()) full.members.push_back(std::move(perp));
        }
        // V stable implies V-perp stable for x in sp(B).
        const bool low = holds(Condition{}, flag, x, d);
        if (low && !holds(Condition{}, full, x, d))
          throw NotStableUnderForm("an x-stable isotropic flag has a non-stable orthogonal");
      }
      for (std::size_t s = 0; s < condition_sets.size(); ++s) {
        const auto& conds = condition_sets[s];
        if (std::all_of(conds.begin(), conds.end(), [&](const Condition& c) { return holds(c, full, x, d); }))
          ++counts[s];
      }
      return;
    }
    for (const auto& cand : levels[level]) {
      if (level > 0 && !cand.contains(flag.members.back(), p)) continue;
      flag.members.push_back(cand);
      self(self, level + 1);
      flag.members.pop_back();
    }
  };
  visit(visit, 0);
  return counts;
}

long long count_stable_flags(const PrimeFieldMatrix& x, const FlagSpec& spec) {
  return count_stable_flags_multi(x, spec, {spec.conditions}).front();
}

bool CountReport::all_match() const {
  return std::all_of(rows.begin(), rows.end(), [](const CountRow& r) { return r.match; });
}

CountReport verify_fiber_counts(const cohom::CaseData& c, const std::vector<long long>& primes) {
  CountReport report;
  report.case_name = c.name;
  std::vector<std::string> names{"full", "cuspidal"};
  std::vector<std::vector<Condition>> sets{{Condition{}}, {}};
  for (const auto& s : c.cuspidal_conditions) sets[1].push_back(Condition::parse(s));
  for (const auto& spec : c.extra_strata) {
    names.push_back(spec.name);
    std::vector<Condition> conds;
    for (const auto& s : spec.conditions) conds.push_back(Condition::parse(s));
    sets.push_back(std::move(conds));
  }

  for (long long q : primes) {
    FlagSpec shape;
    shape.dim = c.dim;
    shape.flag_dims = c.flag_dims;
    if (c.symplectic_flag) {
      if (!c.form) throw PreconditionViolated("symplectic case without a form");
      shape.form = PrimeFieldMatrix::reduce(q, *c.form);
    }
    for (const auto& f : c.orbits) {
      const auto x = PrimeFieldMatrix::reduce(q, f.representative);
      const auto counts = count_stable_flags_multi(x, shape, sets);
      const std::string orbit = f.partition.to_string();
      for (std::size_t s = 0; s < names.size(); ++s) {
        CountRow row;
        row.orbit = orbit;
        row.stratum = names[s];
        row.q = q;
        row.count = counts[s];
        row.predicted = cohom::predicted_count(f, names[s], q);
        if (names[s] == "full") {
          row.prediction = cohom::counting_polynomial(f.full_fiber).to_string();
        } else {
          const auto& pred = names[s] == "cuspidal" ? f.cuspidal : f.strata.at(names[s]);
          row.prediction = pred.count_rule.empty() ? cohom::counting_polynomial(pred.expr).to_string()
                                                   : "rule " + pred.count_rule;
        }
        row.match = row.count == row.predicted;
        report.rows.push_back(std::move(row));
      }
      CountRow sum;
      sum.orbit = orbit;
      sum.stratum = "sum-rule";
      sum.q = q;
      for (std::size_t s = 1; s < counts.size(); ++s) sum.count += counts[s];
      sum.predicted = counts[0];
      sum.prediction = "strata total = full count";
      sum.match = sum.count == sum.predicted;
      report.rows.push_back(std::move(sum));
    }
  }
  return report;
}

}  // namespace pargrade::ffgeom
