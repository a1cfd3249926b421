#include "nilex/theorem1.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

namespace nilex {

namespace {

Integer lcm(Integer a, const Integer& b) {
  mpz_lcm(a.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return a;
}

Integer gcd(Integer a, const Integer& b) {
  mpz_gcd(a.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return a;
}

// Scale to a primitive integer vector with positive last nonzero entry.
void make_primitive(std::vector<Rational>& v) {
  Integer den = 1;
  for (const auto& x : v) den = lcm(den, x.denominator());
  Integer g = 0;
  for (auto& x : v) {
    x *= Rational(den);
    g = gcd(g, x.numerator());
  }
  if (g == 0) return;
  Rational scale(Integer(1), g);
  for (auto it = v.rbegin(); it != v.rend(); ++it) {
    if (!it->is_zero()) {
      if (it->sign() < 0) scale = -scale;
      break;
    }
  }
  for (auto& x : v) x *= scale;
}

std::string join_terms(const std::vector<std::string>& terms) {
  if (terms.empty()) return "0";
  std::string out = terms[0];
  for (std::size_t i = 1; i < terms.size(); ++i) out += " + " + terms[i];
  return out;
}

std::string affine_str(const Rational& p, const Rational& d) {
  if (d.is_zero()) return p.str();
  std::string t = d == Rational(1) ? "t" : d == Rational(-1) ? "-t" : d.str() + "*t";
  if (p.is_zero()) return t;
  if (t[0] == '-') return p.str() + " - " + t.substr(1);
  return p.str() + " + " + t;
}

std::string poly_str(const Polynomial& p) { return p.str(shift_variable_name); }

// Coefficient with sign pulled out front when it reads better.
std::string signed_factor(const Polynomial& c, const char* var, bool first) {
  const bool neg = poly_str(c)[0] == '-';
  const Polynomial mag = neg ? -c : c;
  std::string body;
  if (mag.is_constant()) {
    const Rational v = mag.constant_term();
    body = v == Rational(1) ? std::string(var) : v.str() + "*" + var;
  } else {
    body = "(" + poly_str(mag) + ")*" + var;
  }
  if (first) return neg ? "-" + body : body;
  return (neg ? " - " : " + ") + body;
}

// Same data as validate() needs, flattened for brute force.
struct Flat {
  int pieces = 0, root = 0;
  std::vector<int> succ;  // 1-based, succ[root] unused
  int t1 = 0, t2 = 0;
};

std::optional<MergeShape> classify_flat(const Flat& f) {
  const int P = f.pieces;
  // Every piece returns to the root.
  for (int i = 1; i <= P; ++i) {
    if (i == f.root) continue;
    int x = i;
    int steps = 0;
    while (x != f.root && steps <= P) {
      x = f.succ[static_cast<std::size_t>(x)];
      ++steps;
    }
    if (x != f.root) return std::nullopt;
  }
  std::vector<int> A, B;
  std::vector<char> inA(static_cast<std::size_t>(P + 1), 0);
  for (int x = f.t1; x != f.root; x = f.succ[static_cast<std::size_t>(x)]) {
    A.push_back(x);
    inA[static_cast<std::size_t>(x)] = 1;
  }
  int x = f.t2;
  for (; x != f.root && !inA[static_cast<std::size_t>(x)]; x = f.succ[static_cast<std::size_t>(x)]) B.push_back(x);
  const int j = x == f.root ? static_cast<int>(A.size())
                            : static_cast<int>(std::find(A.begin(), A.end(), x) - A.begin());
  // The root reaches everything exactly when both chains cover all pieces.
  if (static_cast<int>(A.size() + B.size()) != P - 1) return std::nullopt;
  MergeShape s{j, static_cast<int>(B.size()), static_cast<int>(A.size()) - j};
  if (s.a > s.b) std::swap(s.a, s.b);
  return s;
}

}  // namespace

std::vector<Source> Scenario::sources() const {
  std::vector<Source> out;
  for (int i = 1; i <= piece_count; ++i) {
    if (i == refining_piece) {
      out.push_back({i, 1});
      out.push_back({i, 2});
    } else {
      out.push_back({i, 0});
    }
  }
  return out;
}

void Scenario::validate() const {
  if (piece_count < 1) throw std::invalid_argument("scenario needs at least one piece");
  if (refining_piece < 0 || refining_piece > piece_count) throw std::invalid_argument("refining piece out of range");
  if (transitions.empty()) return;
  const auto src = sources();
  std::set<Source> seen;
  for (const auto& t : transitions) {
    if (t.to < 1 || t.to > piece_count) throw std::invalid_argument("transition target out of range");
    if (std::find(src.begin(), src.end(), t.from) == src.end())
      throw std::invalid_argument("unknown transition source " + source_name(t.from));
    if (!seen.insert(t.from).second) throw std::invalid_argument("duplicate transition from " + source_name(t.from));
    if (t.from.part == 0 && t.to == t.from.piece)
      throw std::invalid_argument(source_name(t.from) + " maps into itself");
  }
  if (seen.size() != src.size()) throw std::invalid_argument("transitions are not total");
  if (refining_piece != 0) {
    int t1 = 0, t2 = 0;
    for (const auto& t : transitions) {
      if (t.from.piece == refining_piece) (t.from.part == 1 ? t1 : t2) = t.to;
    }
    if (t1 == t2) throw std::invalid_argument("sub-pieces share a target");
  }
}

std::string source_name(const Source& s) {
  std::string out = "D" + std::to_string(s.piece);
  if (s.part) out += "(" + std::to_string(s.part) + ")";
  return out;
}

std::string measure_name(const Source& s) {
  std::string out = "a" + std::to_string(s.piece);
  if (s.part) out += "(" + std::to_string(s.part) + ")";
  return out;
}

std::string MeasureSystem::format(const LinearEquation& eq) const {
  std::string out;
  for (std::size_t i = 0; i < variables.size(); ++i) {
    const Rational& c = eq.coeff[i];
    if (c.is_zero()) continue;
    const Rational mag = abs(c);
    std::string term = mag == Rational(1) ? measure_name(variables[i]) : mag.str() + "*" + measure_name(variables[i]);
    if (out.empty()) {
      out = c.sign() < 0 ? "-" + term : term;
    } else {
      out += (c.sign() < 0 ? " - " : " + ") + term;
    }
  }
  if (out.empty()) out = "0";
  return out + " = " + eq.rhs.str();
}

MeasureSystem derive_constraints(const Scenario& s) {
  s.validate();
  MeasureSystem sys;
  sys.variables = s.sources();
  const std::size_t nv = sys.variables.size();
  auto index = [&](const Source& src) {
    return static_cast<std::size_t>(std::find(sys.variables.begin(), sys.variables.end(), src) - sys.variables.begin());
  };
  if (!s.transitions.empty()) {
    for (int j = 1; j <= s.piece_count; ++j) {
      LinearEquation eq{std::vector<Rational>(nv), Rational(), {}};
      std::vector<std::string> lhs, rhs;
      for (std::size_t v = 0; v < nv; ++v) {
        if (sys.variables[v].piece == j) {
          eq.coeff[v] += Rational(1);
          lhs.push_back(measure_name(sys.variables[v]));
        }
      }
      for (const auto& t : s.transitions) {
        if (t.to != j) continue;
        eq.coeff[index(t.from)] -= Rational(1);
        rhs.push_back(measure_name(t.from));
      }
      if (std::all_of(eq.coeff.begin(), eq.coeff.end(), [](const Rational& c) { return c.is_zero(); })) continue;
      eq.text = join_terms(lhs) + " = " + join_terms(rhs);
      sys.equalities.push_back(std::move(eq));
    }
  }
  sys.normalization.coeff.assign(nv, Rational(1));
  sys.normalization.rhs = Rational(1);
  std::vector<std::string> all;
  for (const auto& v : sys.variables) all.push_back(measure_name(v));
  sys.normalization.text = join_terms(all) + " = 1";
  return sys;
}

AffineSolution solve(const MeasureSystem& sys) {
  const std::size_t nv = sys.variables.size();
  struct Row {
    std::vector<Rational> c;
    Rational rhs;
    std::size_t pivot;
  };
  std::vector<Row> rows;
  std::vector<const LinearEquation*> eqs;
  for (const auto& e : sys.equalities) eqs.push_back(&e);
  eqs.push_back(&sys.normalization);
  for (const LinearEquation* e : eqs) {
    if (e->coeff.size() != nv) throw std::invalid_argument("equation width does not match the variables");
    Row r{e->coeff, e->rhs, nv};
    for (const auto& p : rows) {
      const Rational f = r.c[p.pivot];
      if (f.is_zero()) continue;
      for (std::size_t k = 0; k < nv; ++k) r.c[k] -= f * p.c[k];
      r.rhs -= f * p.rhs;
    }
    std::size_t piv = 0;
    while (piv < nv && r.c[piv].is_zero()) ++piv;
    if (piv == nv) {
      if (!r.rhs.is_zero()) throw InconsistentSystem(e->text.empty() ? sys.format(*e) : e->text);
      continue;
    }
    const Rational inv = Rational(1) / r.c[piv];
    for (auto& x : r.c) x *= inv;
    r.rhs *= inv;
    r.pivot = piv;
    for (auto& p : rows) {
      const Rational f = p.c[piv];
      if (f.is_zero()) continue;
      for (std::size_t k = 0; k < nv; ++k) p.c[k] -= f * r.c[k];
      p.rhs -= f * r.rhs;
    }
    rows.push_back(std::move(r));
  }
  AffineSolution sol;
  sol.particular.assign(nv, Rational());
  std::vector<char> is_pivot(nv, 0);
  for (const auto& r : rows) {
    is_pivot[r.pivot] = 1;
    sol.particular[r.pivot] = r.rhs;
  }
  for (std::size_t f = 0; f < nv; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> d(nv);
    d[f] = Rational(1);
    for (const auto& r : rows) d[r.pivot] = -r.c[f];
    make_primitive(d);
    sol.directions.push_back(std::move(d));
  }
  return sol;
}

std::optional<bool> has_positive_solution(const MeasureSystem& sys) {
  const AffineSolution sol = solve(sys);
  if (sol.dimension() >= 2) return std::nullopt;
  if (sol.dimension() == 0) {
    return std::all_of(sol.particular.begin(), sol.particular.end(), [](const Rational& x) { return x.sign() > 0; });
  }
  const auto& w = sol.directions[0];
  std::optional<Rational> lo, hi;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Rational& p = sol.particular[i];
    if (w[i].is_zero()) {
      if (p.sign() <= 0) return false;
      continue;
    }
    const Rational t = -p / w[i];  // p + t w > 0
    if (w[i].sign() > 0) {
      if (!lo || t > *lo) lo = t;
    } else {
      if (!hi || t < *hi) hi = t;
    }
  }
  return !lo || !hi || *lo < *hi;
}

Shifts Shifts::symbolic(int piece_count) {
  Shifts s;
  for (int i = 0; i < piece_count; ++i) {
    s.n.push_back(Polynomial::var(2 * i));
    s.m.push_back(Polynomial::var(2 * i + 1));
  }
  return s;
}

Shifts Shifts::concrete(const std::vector<long>& n, const std::vector<long>& m) {
  if (n.size() != m.size()) throw std::invalid_argument("shift vectors differ in length");
  Shifts s;
  for (std::size_t i = 0; i < n.size(); ++i) {
    s.n.emplace_back(n[i]);
    s.m.emplace_back(m[i]);
  }
  return s;
}

std::string shift_variable_name(int index) {
  return (index % 2 == 0 ? "n" : "m") + std::to_string(index / 2 + 1);
}

std::string IntegerRelation::str() const {
  if (kind == Kind::None) return "no forced relation";
  std::string out;
  if (!coeff_r.is_zero()) out += signed_factor(coeff_r, "r", true);
  if (!coeff_s.is_zero()) out += signed_factor(coeff_s, "s", out.empty());
  return out + " = " + poly_str(constant) + " in Z";
}

Dependence analyze(const MeasureSystem& sys, const Shifts& shifts) {
  Dependence d;
  d.solution = solve(sys);
  auto shift_of = [&](const std::vector<Polynomial>& v, const Source& src) -> const Polynomial& {
    const auto i = static_cast<std::size_t>(src.piece - 1);
    if (i >= v.size()) throw std::invalid_argument("no shift for piece " + std::to_string(src.piece));
    return v[i];
  };
  auto combine = [&](const std::vector<Rational>& a, const std::vector<Polynomial>& v) {
    Polynomial p;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i].is_zero()) p += a[i] * shift_of(v, sys.variables[i]);
    }
    return p;
  };
  d.r0 = combine(d.solution.particular, shifts.n);
  d.s0 = combine(d.solution.particular, shifts.m);
  for (const auto& w : d.solution.directions) {
    d.dr.push_back(combine(w, shifts.n));
    d.ds.push_back(combine(w, shifts.m));
  }
  IntegerRelation& rel = d.relation;
  auto rigid = [&](IntegerRelation::Kind kind) {
    const Rational D(d.r0.denominator_lcm());
    rel.kind = kind;
    rel.coeff_r = Polynomial(D);
    rel.coeff_s = Polynomial();
    rel.constant = D * d.r0;
  };
  const std::size_t dim = d.solution.dimension();
  if (dim == 0) {
    rigid(IntegerRelation::Kind::Rigid);
  } else if (dim == 1) {
    const Polynomial& R1 = d.dr[0];
    const Polynomial& S1 = d.ds[0];
    if (R1.is_zero() && S1.is_zero()) {
      rigid(IntegerRelation::Kind::Trivial);
    } else {
      rel.kind = IntegerRelation::Kind::Line;
      rel.coeff_r = S1;
      rel.coeff_s = -R1;
      rel.constant = S1 * d.r0 - R1 * d.s0;
      const Integer D = lcm(lcm(rel.coeff_r.denominator_lcm(), rel.coeff_s.denominator_lcm()),
                            rel.constant.denominator_lcm());
      rel.coeff_r *= Rational(D);
      rel.coeff_s *= Rational(D);
      rel.constant *= Rational(D);
      Integer g = 0;
      for (const Polynomial* p : {&rel.coeff_r, &rel.coeff_s, &rel.constant}) {
        for (const auto& [mono, c] : p->terms()) g = gcd(g, c.numerator());
      }
      if (g > 1) {
        const Rational inv(Integer(1), g);
        rel.coeff_r *= inv;
        rel.coeff_s *= inv;
        rel.constant *= inv;
      }
    }
  } else {
    rel.kind = IntegerRelation::Kind::None;
  }
  return d;
}

IntegerRelation detect_dependence(const MeasureSystem& sys, const Shifts& shifts) {
  return analyze(sys, shifts).relation;
}

namespace {

Transition tr(int piece, int part, int to) { return Transition{Source{piece, part}, to}; }

}  // namespace

std::vector<Scenario> enumerate_scenarios(int n) {
  if (n < 1) throw std::invalid_argument("step must be >= 1");
  std::vector<Scenario> out;
  if (n == 1) {
    out.push_back(Scenario{"two pieces", 2, 0, {}});
    return out;
  }
  if (n == 2) {
    out.push_back(Scenario{"case 1", 3, 1, {tr(1, 1, 2), tr(1, 2, 3), tr(2, 0, 1), tr(3, 0, 1)}});
    out.push_back(Scenario{"case 2", 3, 1, {tr(1, 1, 1), tr(1, 2, 3), tr(2, 0, 1), tr(3, 0, 2)}});
    out.push_back(Scenario{"case 3", 3, 1, {tr(1, 1, 2), tr(1, 2, 3), tr(2, 0, 1), tr(3, 0, 2)}});
    return out;
  }
  const int P = 2 * n - 1;
  {
    Scenario s{"chain", P, 1, {tr(1, 1, 1), tr(1, 2, 2)}};
    for (int i = 2; i < P; ++i) s.transitions.push_back(tr(i, 0, i + 1));
    s.transitions.push_back(tr(P, 0, 1));
    out.push_back(std::move(s));
  }
  // Two chains of k pieces each, merging at piece 2k+2.
  for (int k = 1; k <= n - 2; ++k) {
    Scenario s{"merge k=" + std::to_string(k), P, 1, {tr(1, 1, 2), tr(1, 2, 3)}};
    for (int i = 1; i <= k; ++i) s.transitions.push_back(tr(2 * i, 0, 2 * i + 2));
    for (int i = 1; i < k; ++i) s.transitions.push_back(tr(2 * i + 1, 0, 2 * i + 3));
    s.transitions.push_back(tr(2 * k + 1, 0, 2 * k + 2));
    for (int j = 2 * k + 2; j < P; ++j) s.transitions.push_back(tr(j, 0, j + 1));
    s.transitions.push_back(tr(P, 0, 1));
    out.push_back(std::move(s));
  }
  // The even chain of k pieces returns to piece 1; the odd one runs on
  // through every remaining piece.
  for (int k = 1; k <= n - 1; ++k) {
    Scenario s{"return k=" + std::to_string(k), P, 1, {tr(1, 1, 2), tr(1, 2, 3)}};
    for (int i = 1; i < k; ++i) s.transitions.push_back(tr(2 * i, 0, 2 * i + 2));
    s.transitions.push_back(tr(2 * k, 0, 1));
    for (int i = 1; i < k; ++i) s.transitions.push_back(tr(2 * i + 1, 0, 2 * i + 3));
    for (int j = 2 * k + 1; j < P; ++j) s.transitions.push_back(tr(j, 0, j + 1));
    s.transitions.push_back(tr(P, 0, 1));
    out.push_back(std::move(s));
  }
  return out;
}

std::string shape_name(const MergeShape& s) {
  return "a=" + std::to_string(s.a) + " b=" + std::to_string(s.b) + " c=" + std::to_string(s.c);
}

std::optional<MergeShape> classify(const Scenario& s) {
  if (s.refining_piece == 0 || s.transitions.empty()) return std::nullopt;
  s.validate();
  Flat f;
  f.pieces = s.piece_count;
  f.root = s.refining_piece;
  f.succ.assign(static_cast<std::size_t>(s.piece_count + 1), 0);
  for (const auto& t : s.transitions) {
    if (t.from.part == 0) {
      f.succ[static_cast<std::size_t>(t.from.piece)] = t.to;
    } else {
      (t.from.part == 1 ? f.t1 : f.t2) = t.to;
    }
  }
  return classify_flat(f);
}

Scenario scenario_from_shape(const MergeShape& shape, const std::string& name) {
  const int P = 1 + shape.a + shape.b + shape.c;
  std::vector<int> A, B, C;
  int next = 2;
  for (int i = 0; i < shape.a; ++i) A.push_back(next++);
  for (int i = 0; i < shape.b; ++i) B.push_back(next++);
  for (int i = 0; i < shape.c; ++i) C.push_back(next++);
  const int join = C.empty() ? 1 : C.front();
  Scenario s{name.empty() ? "shape " + shape_name(shape) : name, P, 1, {}};
  auto chain = [&](int part, const std::vector<int>& priv) {
    s.transitions.push_back(tr(1, part, priv.empty() ? join : priv.front()));
    for (std::size_t i = 0; i < priv.size(); ++i)
      s.transitions.push_back(tr(priv[i], 0, i + 1 < priv.size() ? priv[i + 1] : join));
  };
  chain(1, A);
  chain(2, B);
  for (std::size_t i = 0; i < C.size(); ++i) s.transitions.push_back(tr(C[i], 0, i + 1 < C.size() ? C[i + 1] : 1));
  s.validate();
  return s;
}

std::vector<MergeShape> all_shapes(int n) {
  if (n < 2) throw std::invalid_argument("shapes need step >= 2");
  const int L = 2 * n - 2;
  std::vector<MergeShape> out;
  for (int c = 0; c <= L; ++c) {
    for (int a = 0; 2 * a <= L - c; ++a) {
      const int b = L - c - a;
      if (a == 0 && b == 0) continue;
      out.push_back({a, b, c});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

CoverageReport coverage(int n, long brute_force_limit) {
  CoverageReport rep;
  rep.n = n;
  rep.shapes = all_shapes(n);
  std::set<MergeShape> cov;
  for (const auto& s : enumerate_scenarios(n)) {
    if (auto sh = classify(s)) cov.insert(*sh);
  }
  rep.covered.assign(cov.begin(), cov.end());
  for (const auto& sh : rep.shapes) {
    if (!cov.count(sh)) rep.uncovered.push_back(sh);
  }
  const int P = 2 * n - 1;
  const int sources = P + 1;
  double total = 1;
  for (int i = 0; i < sources; ++i) total *= P;
  if (total > static_cast<double>(brute_force_limit)) return rep;
  rep.brute_forced = true;
  // digits[0..P-2] are targets of pieces 2..P, then the two sub-pieces.
  std::vector<int> digits(static_cast<std::size_t>(sources), 1);
  Flat f;
  f.pieces = P;
  f.root = 1;
  f.succ.assign(static_cast<std::size_t>(P + 1), 0);
  for (;;) {
    bool ok = true;
    for (int i = 2; i <= P; ++i) {
      const int t = digits[static_cast<std::size_t>(i - 2)];
      if (t == i) ok = false;
      f.succ[static_cast<std::size_t>(i)] = t;
    }
    f.t1 = digits[static_cast<std::size_t>(P - 1)];
    f.t2 = digits[static_cast<std::size_t>(P)];
    if (ok && f.t1 != f.t2) {
      if (auto sh = classify_flat(f)) ++rep.raw_counts[*sh];
    }
    std::size_t k = 0;
    while (k < digits.size() && digits[k] == P) digits[k++] = 1;
    if (k == digits.size()) break;
    ++digits[k];
  }
  std::vector<MergeShape> raw;
  for (const auto& [sh, cnt] : rep.raw_counts) raw.push_back(sh);
  rep.brute_force_agrees = raw == rep.shapes;
  return rep;
}

std::string scenario_report(const Scenario& s) {
  std::ostringstream os;
  os << "scenario " << s.name << '\n';
  os << "pieces " << s.piece_count;
  if (s.refining_piece) os << ", D" << s.refining_piece << " refines into D" << s.refining_piece << "(1), D"
                           << s.refining_piece << "(2)";
  os << '\n';
  if (s.transitions.empty()) {
    os << "transitions: none assumed\n";
  } else {
    os << "transitions\n";
    for (const auto& t : s.transitions) os << "  R(" << source_name(t.from) << ") in D" << t.to << '\n';
  }
  if (auto sh = classify(s)) os << "shape " << shape_name(*sh) << '\n';
  const MeasureSystem sys = derive_constraints(s);
  os << "measure equalities\n";
  for (const auto& e : sys.equalities) os << "  " << e.text << '\n';
  os << "  " << sys.normalization.text << '\n';
  const Dependence d = analyze(sys, Shifts::symbolic(s.piece_count));
  const auto& sol = d.solution;
  os << "solution set, dimension " << sol.dimension() << '\n';
  for (std::size_t i = 0; i < sys.variables.size(); ++i) {
    os << "  " << measure_name(sys.variables[i]) << " = "
       << (sol.dimension() == 1 ? affine_str(sol.particular[i], sol.directions[0][i]) : sol.particular[i].str())
       << '\n';
  }
  if (sol.dimension() <= 1) {
    auto line = [&](const char* v, const Polynomial& p0, const std::vector<Polynomial>& dp) {
      os << v << " = " << poly_str(p0);
      if (!dp.empty() && !dp[0].is_zero()) os << " + t*(" << poly_str(dp[0]) << ")";
      os << '\n';
    };
    line("r", d.r0, d.dr);
    line("s", d.s0, d.ds);
  }
  os << "relation: " << d.relation.str() << '\n';
  return os.str();
}

std::string scenarios_json(const std::vector<Scenario>& scenarios) {
  using nlohmann::json;
  json arr = json::array();
  for (const auto& s : scenarios) {
    json o;
    o["name"] = s.name;
    o["pieces"] = s.piece_count;
    o["refining"] = s.refining_piece;
    json ts = json::array();
    for (const auto& t : s.transitions) ts.push_back({source_name(t.from), "D" + std::to_string(t.to)});
    o["transitions"] = ts;
    if (auto sh = classify(s)) o["shape"] = {sh->a, sh->b, sh->c};
    const MeasureSystem sys = derive_constraints(s);
    const Dependence d = analyze(sys, Shifts::symbolic(s.piece_count));
    o["dimension"] = d.solution.dimension();
    const char* kinds[] = {"line", "rigid", "trivial", "none"};
    o["relation"] = {{"kind", kinds[static_cast<int>(d.relation.kind)]},
                     {"coeff_r", poly_str(d.relation.coeff_r)},
                     {"coeff_s", poly_str(d.relation.coeff_s)},
                     {"constant", poly_str(d.relation.constant)},
                     {"nonzero", d.relation.nonzero()}};
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

MeasureSystem measure_system_from_areas(const std::vector<QPhi>& areas) {
  if (areas.empty()) throw std::invalid_argument("no areas");
  MeasureSystem sys;
  const std::size_t nv = areas.size();
  for (std::size_t i = 0; i < nv; ++i) sys.variables.push_back({static_cast<int>(i + 1), 0});
  std::size_t j = nv;
  for (std::size_t i = nv; i-- > 0;) {
    if (!areas[i].phi_part().is_zero()) {
      j = i;
      break;
    }
  }
  for (std::size_t i = 0; i < nv; ++i) {
    if (i == j) continue;
    LinearEquation eq{std::vector<Rational>(nv), Rational(), {}};
    eq.coeff[i] = Rational(1);
    eq.rhs = areas[i].rational_part();
    if (j < nv) {
      const Rational f = areas[i].phi_part() / areas[j].phi_part();
      eq.coeff[j] = -f;
      eq.rhs -= f * areas[j].rational_part();
    }
    Integer den = 1;
    for (const auto& c : eq.coeff) den = lcm(den, c.denominator());
    for (auto& c : eq.coeff) c *= Rational(den);
    eq.rhs *= Rational(den);
    eq.text = sys.format(eq);
    sys.equalities.push_back(std::move(eq));
  }
  sys.normalization.coeff.assign(nv, Rational(1));
  sys.normalization.rhs = Rational(1);
  sys.normalization.text = sys.format(sys.normalization);
  return sys;
}

BirkhoffCheck birkhoff_consistency(const PieceExchange& e, const Point& start, std::size_t steps) {
  if (steps == 0) throw std::invalid_argument("steps must be positive");
  const std::size_t np = e.pieces.size();
  std::vector<long> n, m;
  for (const auto& p : e.pieces) {
    n.push_back(p.n);
    m.push_back(p.m);
  }
  BirkhoffCheck out;
  out.relation = detect_dependence(measure_system_from_areas(piece_areas(e)), Shifts::concrete(n, m));
  if (out.relation.kind == IntegerRelation::Kind::None) return out;
  const Locator loc(e);
  std::vector<ShearMap> maps;
  for (std::size_t i = 0; i < np; ++i) maps.push_back(e.piece_map(i));
  std::vector<std::size_t> visits(np, 0);
  Point p = start;
  for (std::size_t k = 0; k < steps; ++k) {
    const std::size_t i = loc.locate_index(p);
    ++visits[i];
    p = maps[i](p);
  }
  for (std::size_t i = 0; i < np; ++i) {
    const double f = static_cast<double>(visits[i]) / static_cast<double>(steps);
    out.frequencies.push_back(f);
    out.r += f * static_cast<double>(n[i]);
    out.s += f * static_cast<double>(m[i]);
  }
  out.value = out.relation.coeff_r.constant_term().to_double() * out.r +
              out.relation.coeff_s.constant_term().to_double() * out.s;
  out.distance = std::abs(out.value - std::round(out.value));
  return out;
}

}  // namespace nilex
