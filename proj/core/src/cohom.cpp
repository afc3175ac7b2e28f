#include "pargrade/cohom.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace pargrade::cohom {

namespace detail {
std::string_view embedded_case_json(std::string_view name);
}

namespace {

void add_into(Degrees& acc, const Degrees& d) {
  for (const auto& [deg, rank] : d) acc[deg] += rank;
}

void trim(std::vector<long long>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

long long reduce_mod(long long v, long long l) {
  if (l == 0) return v;
  long long r = v % l;
  return r < 0 ? r + l : r;
}

// Tokenizer for the s-expression grammar.
class SexprParser {
 public:
  explicit SexprParser(std::string_view text) : s_(text) {}

  SpaceExpr parse_all() {
    SpaceExpr e = parse_expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("space expression '" + std::string(s_) + "': " + why);
  }
  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n')) ++pos_;
  }
  std::string word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] != ' ' && s_[pos_] != '(' && s_[pos_] != ')' && s_[pos_] != '\t' &&
           s_[pos_] != '\n')
      ++pos_;
    if (start == pos_) fail("expected a word");
    return std::string(s_.substr(start, pos_ - start));
  }
  int integer() {
    std::string w = word();
    if (w.find_first_not_of("0123456789") != std::string::npos || w.size() > 6) fail("bad integer '" + w + "'");
    return std::stoi(w);
  }
  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  SpaceExpr parse_expr() {
    expect('(');
    std::string head = word();
    SpaceExpr out;
    if (head == "pt") {
      out = SpaceExpr::pt();
    } else if (head == "empty") {
      out = SpaceExpr::empty();
    } else if (head == "torus") {
      out = SpaceExpr::torus();
    } else if (head == "aff") {
      out = SpaceExpr::aff(integer());
    } else if (head == "proj") {
      out = SpaceExpr::proj(integer());
    } else if (head == "proj-line-minus") {
      out = SpaceExpr::proj_line_minus(integer());
    } else if (head == "disjoint") {
      std::vector<SpaceExpr> kids;
      skip_ws();
      while (pos_ < s_.size() && s_[pos_] == '(') {
        kids.push_back(parse_expr());
        skip_ws();
      }
      try {
        out = SpaceExpr::disjoint(std::move(kids));
      } catch (const PreconditionViolated& e) {
        fail(e.what());
      }
    } else {
      fail("unknown constructor '" + head + "'");
    }
    expect(')');
    return out;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

SpaceExpr SpaceExpr::empty() { return SpaceExpr(); }

SpaceExpr SpaceExpr::pt() {
  SpaceExpr e;
  e.kind_ = Kind::Pt;
  return e;
}

SpaceExpr SpaceExpr::aff(int k) {
  if (k < 0) throw PreconditionViolated("aff needs k >= 0");
  SpaceExpr e;
  e.kind_ = Kind::Aff;
  e.param_ = k;
  return e;
}

SpaceExpr SpaceExpr::proj(int k) {
  if (k < 0) throw PreconditionViolated("proj needs k >= 0");
  SpaceExpr e;
  e.kind_ = Kind::Proj;
  e.param_ = k;
  return e;
}

SpaceExpr SpaceExpr::proj_line_minus(int m) {
  if (m < 1) throw PreconditionViolated("proj-line-minus needs m >= 1");
  SpaceExpr e;
  e.kind_ = Kind::ProjLineMinus;
  e.param_ = m;
  return e;
}

SpaceExpr SpaceExpr::torus() {
  SpaceExpr e;
  e.kind_ = Kind::Torus;
  return e;
}

SpaceExpr SpaceExpr::disjoint(std::vector<SpaceExpr> children) {
  if (children.size() < 2) throw PreconditionViolated("disjoint needs at least two children");
  SpaceExpr e;
  e.kind_ = Kind::Disjoint;
  e.children_ = std::move(children);
  return e;
}

std::size_t SpaceExpr::loop_count() const {
  switch (kind_) {
    case Kind::Torus:
      return 1;
    case Kind::ProjLineMinus:
      return param_ >= 2 ? 1 : 0;
    case Kind::Disjoint: {
      std::size_t n = 0;
      for (const auto& c : children_) n += c.loop_count();
      return n;
    }
    default:
      return 0;
  }
}

std::string SpaceExpr::to_string() const {
  switch (kind_) {
    case Kind::Empty:
      return "(empty)";
    case Kind::Pt:
      return "(pt)";
    case Kind::Aff:
      return "(aff " + std::to_string(param_) + ")";
    case Kind::Proj:
      return "(proj " + std::to_string(param_) + ")";
    case Kind::ProjLineMinus:
      return "(proj-line-minus " + std::to_string(param_) + ")";
    case Kind::Torus:
      return "(torus)";
    case Kind::Disjoint: {
      std::string s = "(disjoint";
      for (const auto& c : children_) s += " " + c.to_string();
      return s + ")";
    }
  }
  return {};
}

SpaceExpr SpaceExpr::parse(std::string_view text) { return SexprParser(text).parse_all(); }

long long Polynomial::evaluate(long long q) const {
  long long v = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * q + *it;
  return v;
}

std::string Polynomial::to_string() const {
  std::vector<long long> c = coeffs;
  trim(c);
  if (c.empty()) return "0";
  std::string s;
  for (std::size_t i = c.size(); i-- > 0;) {
    long long a = c[i];
    if (a == 0) continue;
    if (!s.empty()) s += a > 0 ? "+" : "-";
    else if (a < 0) s += "-";
    long long mag = a < 0 ? -a : a;
    if (i == 0 || mag != 1) s += std::to_string(mag);
    if (i >= 1) s += "q";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  out.coeffs.assign(std::max(a.coeffs.size(), b.coeffs.size()), 0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) out.coeffs[i] += a.coeffs[i];
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
  trim(out.coeffs);
  return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  Polynomial neg = b;
  for (auto& c : neg.coeffs) c = -c;
  return a + neg;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  auto x = a.coeffs, y = b.coeffs;
  trim(x);
  trim(y);
  return x == y;
}

Polynomial gaussian_binomial(int d, int k) {
  if (k < 0 || k > d) return Polynomial{};
  if (k == 0 || k == d) return Polynomial{{1}};
  // [d, k] = [d-1, k-1] + q^k [d-1, k]
  Polynomial a = gaussian_binomial(d - 1, k - 1);
  Polynomial b = gaussian_binomial(d - 1, k);
  Polynomial shifted;
  shifted.coeffs.assign(static_cast<std::size_t>(k), 0);
  shifted.coeffs.insert(shifted.coeffs.end(), b.coeffs.begin(), b.coeffs.end());
  return a + shifted;
}

Degrees hc_constant(const SpaceExpr& x) {
  Degrees d;
  switch (x.kind()) {
    case SpaceExpr::Kind::Empty:
      break;
    case SpaceExpr::Kind::Pt:
      d[0] = 1;
      break;
    case SpaceExpr::Kind::Aff:
      d[2 * x.param()] = 1;
      break;
    case SpaceExpr::Kind::Proj:
      for (int i = 0; i <= x.param(); ++i) d[2 * i] = 1;
      break;
    case SpaceExpr::Kind::ProjLineMinus:
      if (x.param() > 1) d[1] = x.param() - 1;
      d[2] = 1;
      break;
    case SpaceExpr::Kind::Torus:
      d[1] = 1;
      d[2] = 1;
      break;
    case SpaceExpr::Kind::Disjoint:
      for (const auto& c : x.children()) add_into(d, hc_constant(c));
      break;
  }
  return d;
}

Degrees hc_rank1_torus(long long m, long long l) {
  if (l != 0 && !exactlin::is_prime(l))
    throw exactlin::CompositeCharacteristic("characteristic " + std::to_string(l) + " is neither 0 nor prime");
  const long long mr = reduce_mod(m, l);
  if (mr == 0) throw PreconditionViolated("monodromy scalar vanishes in the field");
  // Multiplication by (m - 1) on a line: kernel sits in degree 2, cokernel in degree 1.
  if (reduce_mod(m - 1, l) != 0) return {};
  return Degrees{{1, 1}, {2, 1}};
}

Degrees hc_local_system(const SpaceExpr& x, const std::vector<long long>& monodromy, long long l) {
  if (monodromy.size() != x.loop_count())
    throw PreconditionViolated("expected " + std::to_string(x.loop_count()) + " monodromy scalars, got " +
                               std::to_string(monodromy.size()));
  std::size_t next = 0;
  Degrees out;
  auto visit = [&](auto&& self, const SpaceExpr& e) -> void {
    if (e.kind() == SpaceExpr::Kind::Disjoint) {
      for (const auto& c : e.children()) self(self, c);
      return;
    }
    if (e.loop_count() == 0) {
      add_into(out, hc_constant(e));
      return;
    }
    const long long m = monodromy[next++];
    if (e.kind() == SpaceExpr::Kind::ProjLineMinus && e.param() > 2) {
      if (reduce_mod(m - 1, l) != 0)
        throw UnsupportedLocalSystem("a single monodromy scalar does not determine a local system on " + e.to_string());
      add_into(out, hc_constant(e));
      return;
    }
    add_into(out, hc_rank1_torus(m, l));
  };
  visit(visit, x);
  return out;
}

Polynomial counting_polynomial(const SpaceExpr& x) {
  Polynomial p;
  switch (x.kind()) {
    case SpaceExpr::Kind::Empty:
      break;
    case SpaceExpr::Kind::Pt:
      p.coeffs = {1};
      break;
    case SpaceExpr::Kind::Aff:
      p.coeffs.assign(static_cast<std::size_t>(x.param()) + 1, 0);
      p.coeffs.back() = 1;
      break;
    case SpaceExpr::Kind::Proj:
      p.coeffs.assign(static_cast<std::size_t>(x.param()) + 1, 1);
      break;
    case SpaceExpr::Kind::ProjLineMinus:
      p.coeffs = {1 - x.param(), 1};
      break;
    case SpaceExpr::Kind::Torus:
      p.coeffs = {-1, 1};
      break;
    case SpaceExpr::Kind::Disjoint:
      for (const auto& c : x.children()) p = p + counting_polynomial(c);
      break;
  }
  trim(p.coeffs);
  return p;
}

long long euler_characteristic(const Degrees& d) {
  long long e = 0;
  for (const auto& [deg, rank] : d) e += (deg % 2 == 0 ? 1 : -1) * rank;
  return e;
}

std::vector<std::string> case_names() { return {"sp4", "sl4"}; }

CaseData parse_case_json(std::string_view json_text) {
  using nlohmann::json;
  CaseData c;
  try {
    const json j = json::parse(json_text);
    c.name = j.at("case").get<std::string>();
    c.group = j.at("group").get<std::string>();
    c.dim = j.at("dim").get<std::size_t>();
    if (j.contains("form")) c.form = exactlin::IntMatrix::parse(j.at("form").get<std::string>());
    c.flag_dims = j.at("flag_dims").get<std::vector<std::size_t>>();
    c.symplectic_flag = j.value("symplectic_flag", false);
    c.cuspidal_levi = j.value("cuspidal_levi", "");
    c.dim_c = j.at("dim_C").get<int>();
    c.cuspidal_conditions = j.at("cuspidal_conditions").get<std::vector<std::string>>();
    const json extra = j.value("extra_strata", json::array());
    for (const auto& s : extra)
      c.extra_strata.push_back(
          StratumSpec{s.at("name").get<std::string>(), s.at("conditions").get<std::vector<std::string>>()});
    for (const auto& o : j.at("orbits")) {
      FiberDatum f;
      f.partition = exactlin::Partition::parse(o.at("partition").get<std::string>());
      f.representative = exactlin::IntMatrix::parse(o.at("representative").get<std::string>());
      f.full_fiber = SpaceExpr::parse(o.at("full_fiber").get<std::string>());
      f.cuspidal.expr = SpaceExpr::parse(o.at("cuspidal_part").get<std::string>());
      f.cuspidal.count_rule = o.value("cuspidal_count_rule", "");
      f.monodromy = o.value("monodromy", std::vector<long long>{});
      const json strata = o.value("strata", json::object());
      for (const auto& [name, s] : strata.items())
        f.strata[name] = Prediction{SpaceExpr::parse(s.at("expr").get<std::string>()), s.value("count_rule", "")};
      for (const auto& spec : c.extra_strata)
        if (!f.strata.count(spec.name))
          throw ParseError("orbit " + f.partition.to_string() + " lacks stratum '" + spec.name + "'");
      if (f.representative.rows() != c.dim || f.representative.cols() != c.dim)
        throw ParseError("representative of " + f.partition.to_string() + " has the wrong size");
      if (f.monodromy.size() != f.cuspidal.expr.loop_count())
        throw ParseError("monodromy list of " + f.partition.to_string() + " does not match its loops");
      c.orbits.push_back(std::move(f));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("case fixture: ") + e.what());
  }
  return c;
}

CaseData load_case(std::string_view name) {
  auto text = detail::embedded_case_json(name);
  if (text.empty()) throw UnknownCase("unknown case '" + std::string(name) + "' (expected sp4 or sl4)");
  return parse_case_json(text);
}

CaseData load_case_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UnknownCase("cannot read case file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_case_json(ss.str());
}

long long predicted_count(const FiberDatum& fiber, const std::string& stratum, long long q) {
  if (stratum == "full") return counting_polynomial(fiber.full_fiber).evaluate(q);
  const Prediction* p = nullptr;
  if (stratum == "cuspidal") {
    p = &fiber.cuspidal;
  } else {
    auto it = fiber.strata.find(stratum);
    if (it == fiber.strata.end()) throw PreconditionViolated("unknown stratum '" + stratum + "'");
    p = &it->second;
  }
  if (p->count_rule.empty()) return counting_polynomial(p->expr).evaluate(q);
  if (p->count_rule == "roots-of-t2+1") {
    if (q % 2 == 0) return 1;
    return q % 4 == 1 ? 2 : 0;
  }
  const std::string prefix = "full-minus:";
  if (p->count_rule.rfind(prefix, 0) == 0)
    return predicted_count(fiber, "full", q) - predicted_count(fiber, p->count_rule.substr(prefix.size()), q);
  throw PreconditionViolated("unknown count rule '" + p->count_rule + "'");
}

const Degrees& StalkTable::column(const std::string& label) const {
  for (const auto& [l, d] : columns)
    if (l == label) return d;
  throw PreconditionViolated("no column '" + label + "'");
}

bool StalkTable::column_has_parity(const std::string& label) const {
  const auto& d = column(label);
  if (d.empty()) return true;
  const int parity = ((d.begin()->first % 2) + 2) % 2;
  return std::all_of(d.begin(), d.end(), [&](const auto& e) { return ((e.first % 2) + 2) % 2 == parity; });
}

bool StalkTable::has_parity() const {
  return std::all_of(columns.begin(), columns.end(), [&](const auto& c) { return column_has_parity(c.first); });
}

StalkTable stalk_table(const CaseData& c, long long l, bool allow_char_2) {
  if (l < 0 || (l != 0 && !exactlin::is_prime(l)))
    throw exactlin::CompositeCharacteristic("characteristic " + std::to_string(l) + " is neither 0 nor prime");
  if (l == 2 && !allow_char_2)
    throw ExcludedCharacteristic("characteristic 2 is excluded; pass the char-2 flag to inspect it");
  StalkTable t;
  t.case_name = c.name;
  t.characteristic = l;
  for (const auto& f : c.orbits) {
    Degrees shifted;
    for (const auto& [deg, rank] : hc_local_system(f.cuspidal.expr, f.monodromy, l))
      if (rank != 0) shifted[deg - c.dim_c] = rank;
    t.columns.emplace_back(f.partition.to_string(), std::move(shifted));
  }
  return t;
}

}  // namespace pargrade::cohom
