#include "cal/poly.hh"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace cal {

// ---- variable interning ----
namespace {
std::vector<std::string>& var_table() {
  static std::vector<std::string> t;
  return t;
}
std::unordered_map<std::string, int>& var_index() {
  static std::unordered_map<std::string, int> m;
  return m;
}
}  // namespace

int var_id(const std::string& name) {
  auto& idx = var_index();
  auto it = idx.find(name);
  if (it != idx.end()) return it->second;
  int id = (int)var_table().size();
  var_table().push_back(name);
  idx.emplace(name, id);
  return id;
}

const std::string& var_name(int id) { return var_table().at(id); }

bool var_exists(const std::string& name) {
  return var_index().count(name) != 0;
}

// ---- Mono ----
int Mono::deg() const {
  int d = 0;
  for (auto& [v, k] : e) d += k;
  return d;
}

int Mono::deg(int var) const {
  for (auto& [v, k] : e)
    if (v == var) return k;
  return 0;
}

bool Mono::divides(const Mono& m) const {
  size_t j = 0;
  for (auto& [v, k] : e) {
    while (j < m.e.size() && m.e[j].first < v) ++j;
    if (j == m.e.size() || m.e[j].first != v || m.e[j].second < k) return false;
  }
  return true;
}

Mono Mono::operator*(const Mono& m) const {
  Mono r;
  size_t i = 0, j = 0;
  while (i < e.size() || j < m.e.size()) {
    if (j == m.e.size() || (i < e.size() && e[i].first < m.e[j].first)) {
      r.e.push_back(e[i++]);
    } else if (i == e.size() || m.e[j].first < e[i].first) {
      r.e.push_back(m.e[j++]);
    } else {
      r.e.push_back({e[i].first, e[i].second + m.e[j].second});
      ++i, ++j;
    }
  }
  return r;
}

Mono Mono::operator/(const Mono& m) const {
  Mono r;
  size_t j = 0;
  for (auto& [v, k] : e) {
    int sub = 0;
    while (j < m.e.size() && m.e[j].first < v) ++j;
    if (j < m.e.size() && m.e[j].first == v) sub = m.e[j].second;
    int d = k - sub;
    assert(d >= 0);
    if (d > 0) r.e.push_back({v, d});
  }
  return r;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono r;
  size_t i = 0, j = 0;
  while (i < a.e.size() || j < b.e.size()) {
    if (j == b.e.size() || (i < a.e.size() && a.e[i].first < b.e[j].first)) {
      r.e.push_back(a.e[i++]);
    } else if (i == a.e.size() || b.e[j].first < a.e[i].first) {
      r.e.push_back(b.e[j++]);
    } else {
      r.e.push_back({a.e[i].first, std::max(a.e[i].second, b.e[j].second)});
      ++i, ++j;
    }
  }
  return r;
}

Mono mono_gcd(const Mono& a, const Mono& b) {
  Mono r;
  size_t j = 0;
  for (auto& [v, k] : a.e) {
    while (j < b.e.size() && b.e[j].first < v) ++j;
    if (j < b.e.size() && b.e[j].first == v)
      r.e.push_back({v, std::min(k, b.e[j].second)});
  }
  return r;
}

bool coprime(const Mono& a, const Mono& b) { return mono_gcd(a, b).is_one(); }

int mono_cmp(const Mono& a, const Mono& b, const Order& ord) {
  // exponent lookup restricted to ord.vars; unlisted vars rank last (by id)
  auto exp_of = [](const Mono& m, int v) { return m.deg(v); };
  if (ord.kind == Order::LEX) {
    for (int v : ord.vars) {
      int da = exp_of(a, v), db = exp_of(b, v);
      if (da != db) return da < db ? -1 : 1;
    }
  } else {
    int ta = 0, tb = 0;
    for (int v : ord.vars) ta += exp_of(a, v), tb += exp_of(b, v);
    if (ta != tb) return ta < tb ? -1 : 1;
    for (auto it = ord.vars.rbegin(); it != ord.vars.rend(); ++it) {
      int da = exp_of(a, *it), db = exp_of(b, *it);
      if (da != db) return da < db ? 1 : -1;  // reversed
    }
  }
  // tie-break on the remaining variables so the order is total: compare the
  // residual monomials lexicographically by ascending var id
  auto strip = [&](const Mono& m) {
    Mono r;
    for (auto& [v, k] : m.e)
      if (std::find(ord.vars.begin(), ord.vars.end(), v) == ord.vars.end())
        r.e.push_back({v, k});
    return r;
  };
  Mono ra = strip(a), rb = strip(b);
  if (ra.deg() != rb.deg()) return ra.deg() < rb.deg() ? -1 : 1;
  if (ra.e < rb.e) return 1;   // smaller id first => "larger" arbitrarily
  if (rb.e < ra.e) return -1;
  return 0;
}

// ---- Poly ----
Poly::Poly(const Q& c) {
  if (c != 0) t_.emplace(Mono{}, c);
}
Poly::Poly(long c) {
  if (c != 0) t_.emplace(Mono{}, Q(c));
}

Poly Poly::var(int id, int exp) {
  Poly p;
  if (exp == 0) return Poly(1);
  Mono m;
  m.e.push_back({id, exp});
  p.t_.emplace(m, Q(1));
  return p;
}

Poly Poly::var(const std::string& name, int exp) {
  return var(var_id(name), exp);
}

Poly Poly::term(const Q& c, const Mono& m) {
  Poly p;
  if (c != 0) p.t_.emplace(m, c);
  return p;
}

bool Poly::is_constant() const {
  return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one());
}

Q Poly::constant() const {
  auto it = t_.find(Mono{});
  return it == t_.end() ? Q(0) : it->second;
}

int Poly::total_deg() const {
  int d = -1;
  for (auto& [m, c] : t_) d = std::max(d, m.deg());
  return d;
}

int Poly::deg(int var) const {
  int d = -1;
  for (auto& [m, c] : t_) d = std::max(d, m.deg(var));
  return d;
}

bool Poly::has_var(int var) const {
  for (auto& [m, c] : t_)
    if (m.deg(var) > 0) return true;
  return false;
}

std::vector<int> Poly::vars() const {
  std::vector<int> r;
  for (auto& [m, c] : t_)
    for (auto& [v, k] : m.e)
      if (std::find(r.begin(), r.end(), v) == r.end()) r.push_back(v);
  std::sort(r.begin(), r.end());
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.t_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& p) {
  for (auto& [m, c] : p.t_) {
    auto it = t_.find(m);
    if (it == t_.end()) {
      t_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) t_.erase(it);
    }
  }
  return *this;
}

Poly& Poly::operator-=(const Poly& p) {
  for (auto& [m, c] : p.t_) {
    auto it = t_.find(m);
    if (it == t_.end()) {
      t_.emplace(m, -c);
    } else {
      it->second -= c;
      if (it->second == 0) t_.erase(it);
    }
  }
  return *this;
}

Poly Poly::operator+(const Poly& p) const {
  Poly r = *this;
  r += p;
  return r;
}

Poly Poly::operator-(const Poly& p) const {
  Poly r = *this;
  r -= p;
  return r;
}

Poly Poly::operator*(const Poly& p) const {
  Poly r;
  for (auto& [m1, c1] : t_)
    for (auto& [m2, c2] : p.t_) {
      Mono m = m1 * m2;
      auto it = r.t_.find(m);
      if (it == r.t_.end()) {
        r.t_.emplace(m, c1 * c2);
      } else {
        it->second += c1 * c2;
        if (it->second == 0) r.t_.erase(it);
      }
    }
  return r;
}

Poly& Poly::operator*=(const Poly& p) {
  *this = *this * p;
  return *this;
}

Poly Poly::pow(int n) const {
  assert(n >= 0);
  Poly r(1), b = *this;
  while (n) {
    if (n & 1) r *= b;
    b = (n >>= 1) ? b * b : b;
  }
  return r;
}

Q Poly::coeff(const Mono& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? Q(0) : it->second;
}

void Poly::set_coeff(const Mono& m, const Q& c) {
  if (c == 0)
    t_.erase(m);
  else
    t_[m] = c;
}

const Mono& Poly::lead_mono(const Order& ord) const {
  assert(!t_.empty());
  const Mono* best = &t_.begin()->first;
  for (auto& [m, c] : t_)
    if (mono_cmp(m, *best, ord) > 0) best = &m;
  return *best;
}

Q Poly::lead_coeff(const Order& ord) const { return coeff(lead_mono(ord)); }

Poly operator*(const Q& c, const Poly& p) { return Poly(c) * p; }

std::string Poly::str() const {
  if (t_.empty()) return "0";
  // print highest total degree first, then storage order
  std::vector<const std::pair<const Mono, Q>*> ts;
  for (auto& kv : t_) ts.push_back(&kv);
  std::stable_sort(ts.begin(), ts.end(), [](auto* a, auto* b) {
    if (a->first.deg() != b->first.deg()) return a->first.deg() > b->first.deg();
    return a->first.e < b->first.e;
  });
  std::ostringstream os;
  bool first = true;
  for (auto* kv : ts) {
    const Mono& m = kv->first;
    Q c = kv->second;
    bool neg = c < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    Q a = neg ? Q(-c) : c;
    bool coeff_one = (a == 1) && !m.is_one();
    if (!coeff_one) os << a.get_str();
    bool star = !coeff_one;
    for (auto& [v, k] : m.e) {
      if (star) os << "*";
      os << var_name(v);
      if (k > 1) os << "^" << k;
      star = true;
    }
  }
  return os.str();
}

// ---- univariate views ----
Poly uv_coeff(const Poly& p, int var, int k) {
  Poly r;
  for (auto& [m, c] : p.terms())
    if (m.deg(var) == k) {
      Mono m2;
      for (auto& [v, e] : m.e)
        if (v != var) m2.e.push_back({v, e});
      r.set_coeff(m2, r.coeff(m2) + c);
    }
  return r;
}

std::vector<Poly> uv_coeffs(const Poly& p, int var) {
  int d = p.deg(var);
  std::vector<Poly> cs;
  if (d < 0) return cs;
  cs.resize(d + 1);
  for (auto& [m, c] : p.terms()) {
    int k = m.deg(var);
    Mono m2;
    for (auto& [v, e] : m.e)
      if (v != var) m2.e.push_back({v, e});
    cs[k].set_coeff(m2, cs[k].coeff(m2) + c);
  }
  return cs;
}

Poly uv_build(int var, const std::vector<Poly>& cs) {
  Poly r;
  for (size_t k = 0; k < cs.size(); ++k) r += cs[k] * Poly::var(var, (int)k);
  return r;
}

Poly uv_lead(const Poly& p, int var) {
  int d = p.deg(var);
  assert(d >= 0);
  return uv_coeff(p, var, d);
}

// ---- calculus / substitution ----
Poly deriv(const Poly& p, int var) {
  Poly r;
  for (auto& [m, c] : p.terms()) {
    int k = m.deg(var);
    if (k == 0) continue;
    Mono m2;
    for (auto& [v, e] : m.e) {
      if (v == var) {
        if (e > 1) m2.e.push_back({v, e - 1});
      } else {
        m2.e.push_back({v, e});
      }
    }
    r.set_coeff(m2, r.coeff(m2) + Q(k) * c);
  }
  return r;
}

Poly subst(const Poly& p, int var, const Poly& value) {
  // Horner in var
  auto cs = uv_coeffs(p, var);
  if (cs.empty()) return Poly();
  Poly r = cs.back();
  for (int k = (int)cs.size() - 2; k >= 0; --k) r = r * value + cs[k];
  return r;
}

Poly subst(const Poly& p, const std::map<int, Poly>& values) {
  // substitute simultaneously (term by term: values may mention the old vars)
  Poly r;
  for (auto& [m, c] : p.terms()) {
    Poly t(c);
    for (auto& [v, k] : m.e) {
      auto it = values.find(v);
      if (it != values.end())
        t *= it->second.pow(k);
      else
        t *= Poly::var(v, k);
    }
    r += t;
  }
  return r;
}

Q eval_q(const Poly& p, const std::map<int, Q>& values) {
  Q r = 0;
  for (auto& [m, c] : p.terms()) {
    Q t = c;
    for (auto& [v, k] : m.e) {
      auto it = values.find(v);
      if (it == values.end()) throw std::runtime_error("eval_q: unbound " + var_name(v));
      Q b = it->second;
      for (int i = 0; i < k; ++i) t *= b;
    }
    r += t;
  }
  return r;
}

Poly homogenize(const Poly& p, int x, int y, int z, int d) {
  Poly r;
  for (auto& [m, c] : p.terms()) {
    int k = m.deg(x) + m.deg(y) + m.deg(z);
    assert(k <= d);
    Mono m2 = m;
    if (k < d) m2 = m2 * Mono{{{z, d - k}}};
    r.set_coeff(m2, r.coeff(m2) + c);
  }
  return r;
}

// ---- division ----
bool try_divexact(const Poly& p, const Poly& q, Poly& out) {
  assert(!q.is_zero());
  Order ord{Order::GREVLEX, {}};  // any total order works; use all vars of p,q
  {
    auto vs = p.vars();
    auto vq = q.vars();
    vs.insert(vs.end(), vq.begin(), vq.end());
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    ord.vars = vs;
  }
  Poly r = p, quo;
  Mono lmq = q.lead_mono(ord);
  Q lcq = q.coeff(lmq);
  while (!r.is_zero()) {
    Mono lmr = r.lead_mono(ord);
    if (!lmq.divides(lmr)) return false;
    Q c = r.coeff(lmr) / lcq;
    Poly t = Poly::term(c, lmr / lmq);
    quo += t;
    r -= t * q;
  }
  out = quo;
  return true;
}

Poly divexact(const Poly& p, const Poly& q) {
  Poly out;
  if (!try_divexact(p, q, out)) throw std::runtime_error("divexact: not divisible");
  return out;
}

void pseudo_divmod(const Poly& p, const Poly& q, int x, Poly& quo, Poly& rem) {
  int dq = q.deg(x);
  assert(dq >= 0);
  Poly lc = uv_lead(q, x);
  rem = p;
  quo = Poly();
  int dp = rem.deg(x);
  if (dp < dq) {  // multiply through so the identity lc^(dp-dq+1) p = ... holds
    return;       // deg p < deg q: quo=0, rem=p (exponent taken as 0)
  }
  int steps = dp - dq + 1;
  for (int i = 0; i < steps; ++i) {
    int d = rem.deg(x);
    if (d < dq) {
      // multiply remaining factor of lc into quo and rem
      Poly f = lc.pow(steps - i);
      quo *= f;
      rem *= f;
      return;
    }
    Poly t = uv_lead(rem, x) * Poly::var(x, d - dq);
    quo = quo * lc + t;
    rem = rem * lc - t * q;
  }
  assert(rem.deg(x) < dq);
}

Poly prem(const Poly& p, const Poly& q, int x) {
  Poly quo, rem;
  pseudo_divmod(p, q, x, quo, rem);
  return rem;
}

// ---- content / gcd over Q ----
Q rational_content(const Poly& p) {
  if (p.is_zero()) return Q(1);
  Z num_g = 0, den_l = 1;
  for (auto& [m, c] : p.terms()) {
    num_g = gcd(num_g, Z(c.get_num()));
    den_l = lcm(den_l, Z(c.get_den()));
  }
  Q r(num_g, den_l);
  r.canonicalize();
  return r;
}

Poly normalize_primitive(const Poly& p) {
  if (p.is_zero()) return p;
  Q c = rational_content(p);
  // sign: leading coefficient in storage order positive
  if (p.terms().rbegin()->second < 0) c = -c;
  Poly r;
  for (auto& [m, co] : p.terms()) r.set_coeff(m, co / c);
  return r;
}

Poly uv_content(const Poly& p, int x) {
  auto cs = uv_coeffs(p, x);
  std::vector<Poly> nz;
  for (auto& c : cs)
    if (!c.is_zero()) nz.push_back(c);
  return gcd(nz);
}

Poly uv_primpart(const Poly& p, int x) {
  if (p.is_zero()) return p;
  return divexact(p, uv_content(p, x));
}

namespace {

// univariate gcd over Q via monic Euclid (x is the only variable present)
Poly gcd_uni_q(const Poly& a, const Poly& b, int x) {
  Poly f = a, g = b;
  while (!g.is_zero()) {
    // f mod g with rational arithmetic
    Poly lc = uv_lead(g, x);
    assert(lc.is_constant());
    Q inv = 1 / lc.constant();
    Poly gm = inv * g;
    Poly r = f;
    int dg = g.deg(x);
    while (!r.is_zero() && r.deg(x) >= dg) {
      int d = r.deg(x);
      Poly t = uv_lead(r, x);
      r -= t * Poly::var(x, d - dg) * gm;
    }
    f = g;
    g = r;
  }
  return normalize_primitive(f);
}

// balanced remainder in [-xi/2, xi/2)
mpz_class smod(const mpz_class& c, const mpz_class& xi) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
  if (r * 2 >= xi) r -= xi;
  return r;
}

mpz_class max_abs_coeff(const Poly& p) {
  mpz_class m = 0;
  for (auto& [mo, c] : p.terms()) {
    (void)mo;
    mpz_class a = abs(c.get_num());
    if (a > m) m = a;
  }
  return m;
}

// heuristic gcd by evaluation at a large integer and balanced-digit
// reconstruction; inputs must have integer coefficients; false on give-up
// (caller falls back to the subresultant PRS)
bool heugcd(const Poly& f, const Poly& g, Poly& out) {
  if (f.is_constant() && g.is_constant()) {
    mpz_class r;
    mpz_gcd(r.get_mpz_t(), f.constant().get_num().get_mpz_t(),
            g.constant().get_num().get_mpz_t());
    out = Poly(Q(r));
    return true;
  }
  auto va = f.vars(), vb = g.vars();
  std::vector<int> uni;
  std::set_union(va.begin(), va.end(), vb.begin(), vb.end(),
                 std::back_inserter(uni));
  int v = uni.front();
  int dmax = std::min(std::max(f.deg(v), 0), std::max(g.deg(v), 0));
  mpz_class xi = 2 * std::min(max_abs_coeff(f), max_abs_coeff(g)) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (mpz_sizeinbase(xi.get_mpz_t(), 2) * (size_t)(dmax + 1) > 600000)
      return false;
    Poly fe = subst(f, v, Poly(Q(xi)));
    Poly ge = subst(g, v, Poly(Q(xi)));
    Poly gam;
    bool ok = !fe.is_zero() && !ge.is_zero() && heugcd(fe, ge, gam);
    if (ok) {
      Poly cand;
      int i = 0;
      for (; !gam.is_zero() && i <= dmax; ++i) {
        Poly digit;
        for (auto& [mo, c] : gam.terms())
          digit.set_coeff(mo, Q(smod(c.get_num(), xi)));
        cand += digit * Poly::var(v, 1).pow(i);
        gam = Q(mpz_class(1), xi) * (gam - digit);
      }
      if (gam.is_zero()) {
        // verify over Z (integer quotients): over Q a constant candidate
        // would divide anything and defeat the check
        auto divides_z = [](const Poly& p, const Poly& d) {
          Poly q;
          if (!try_divexact(p, d, q)) return false;
          for (auto& [mo, c] : q.terms()) {
            (void)mo;
            if (c.get_den() != 1) return false;
          }
          return true;
        };
        if (divides_z(f, cand) && divides_z(g, cand)) {
          out = cand;
          return true;
        }
      }
    }
    xi = (xi * 73794) / 27011;
  }
  return false;
}

Poly gcd_impl(const Poly& a, const Poly& b) {
  if (a.is_zero()) return normalize_primitive(b);
  if (b.is_zero()) return normalize_primitive(a);
  if (a.is_constant() || b.is_constant()) return Poly(1);
  auto va = a.vars(), vb = b.vars();
  // pick main variable: one occurring in both if possible
  int x = -1;
  for (int v : va)
    if (std::find(vb.begin(), vb.end(), v) != vb.end()) {
      x = v;
      break;
    }
  if (x < 0) {
    // disjoint variable sets: gcd of contents only -> recurse on contents
    // (gcd over Q of two polys in disjoint vars is gcd of rational contents=1
    // after primitivization)
    return Poly(1);
  }
  if (va.size() == 1 && vb.size() == 1) return gcd_uni_q(a, b, x);

  Poly ca = uv_content(a, x), cb = uv_content(b, x);
  Poly cg = gcd_impl(ca, cb);
  Poly f = divexact(a, ca), g = divexact(b, cb);
  if (f.deg(x) < g.deg(x)) std::swap(f, g);
  {
    Poly fh = normalize_primitive(f), gh = normalize_primitive(g), hg;
    if (heugcd(fh, gh, hg)) {
      Poly res = hg.deg(x) > 0 ? hg : Poly(1);
      return normalize_primitive(cg * res);
    }
  }
  // subresultant PRS
  Poly h(1), s(1);
  while (true) {
    int df = f.deg(x), dg = g.deg(x);
    int d = df - dg;
    Poly r = prem(f, g, x);
    if (r.is_zero()) break;
    if (r.deg(x) == 0) {
      g = Poly(1);
      break;
    }
    Poly denom = s * h.pow(d);
    f = g;
    g = divexact(r, denom);
    s = uv_lead(f, x);
    // h = s^d / h^(d-1)
    if (d == 0) {
      // h unchanged
    } else if (d == 1) {
      h = s;
    } else {
      h = divexact(s.pow(d), h.pow(d - 1));
    }
  }
  Poly res = g.deg(x) > 0 ? uv_primpart(g, x) : Poly(1);
  return normalize_primitive(cg * res);
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) { return gcd_impl(a, b); }

Poly gcd(const std::vector<Poly>& ps) {
  Poly g;
  for (auto& p : ps) g = gcd(g, p);
  if (g.is_zero()) return g;
  return g;
}

// ---- resultants ----
Poly resultant_sylvester(const Poly& f, const Poly& g, int x) {
  int m = f.deg(x), n = g.deg(x);
  if (m < 0 || n < 0) return Poly();  // resultant with 0
  if (m == 0 && n == 0) return Poly(1);
  auto fc = uv_coeffs(f, x), gc = uv_coeffs(g, x);
  int N = m + n;
  // build Sylvester matrix
  std::vector<std::vector<Poly>> M(N, std::vector<Poly>(N));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) M[i][i + j] = fc[m - j];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) M[n + i][i + j] = gc[n - j];
  // Bareiss fraction-free elimination
  Poly prev(1);
  int sign = 1;
  for (int k = 0; k < N - 1; ++k) {
    if (M[k][k].is_zero()) {
      int p = -1;
      for (int i = k + 1; i < N; ++i)
        if (!M[i][k].is_zero()) {
          p = i;
          break;
        }
      if (p < 0) return Poly();  // singular -> resultant 0
      std::swap(M[k], M[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < N; ++i) {
      for (int j = k + 1; j < N; ++j) {
        Poly t = M[i][j] * M[k][k] - M[i][k] * M[k][j];
        M[i][j] = divexact(t, prev);
      }
      M[i][k] = Poly();
    }
    prev = M[k][k];
  }
  Poly det = M[N - 1][N - 1];
  return sign == 1 ? det : -det;
}

// fraction-free determinant of a square polynomial matrix (Bareiss)
static Poly poly_det(std::vector<std::vector<Poly>> M) {
  int N = (int)M.size();
  if (N == 0) return Poly(1);
  Poly prev(1);
  int sign = 1;
  for (int k = 0; k < N - 1; ++k) {
    if (M[k][k].is_zero()) {
      int p = -1;
      for (int i = k + 1; i < N; ++i)
        if (!M[i][k].is_zero()) {
          p = i;
          break;
        }
      if (p < 0) return Poly();
      std::swap(M[k], M[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < N; ++i) {
      for (int j = k + 1; j < N; ++j) {
        Poly t = M[i][j] * M[k][k] - M[i][k] * M[k][j];
        M[i][j] = divexact(t, prev);
      }
      M[i][k] = Poly();
    }
    prev = M[k][k];
  }
  Poly det = M[N - 1][N - 1];
  return sign == 1 ? det : -det;
}

void subresultant1(const Poly& f, const Poly& g, int x, Poly& u, Poly& v) {
  int m = f.deg(x), n = g.deg(x);
  assert(m >= 1 && n >= 1 && m + n >= 3);
  // rows f*x^(n-2)..f, g*x^(m-2)..g; scalar columns are the coefficients of
  // degrees m+n-2 .. 2, the last column holds the degree<=1 tail
  std::vector<Poly> rows;
  for (int i = n - 2; i >= 0; --i) rows.push_back(f * Poly::var(x).pow(i));
  for (int i = m - 2; i >= 0; --i) rows.push_back(g * Poly::var(x).pow(i));
  int N = m + n - 2;
  assert((int)rows.size() == N);
  auto det_with_tail = [&](int tail_deg) {
    std::vector<std::vector<Poly>> M(N, std::vector<Poly>(N));
    for (int r = 0; r < N; ++r) {
      for (int j = 0; j < N - 1; ++j)
        M[r][j] = uv_coeff(rows[r], x, m + n - 2 - j);
      M[r][N - 1] = uv_coeff(rows[r], x, tail_deg);
    }
    return poly_det(M);
  };
  u = det_with_tail(1);
  v = det_with_tail(0);
}

Poly resultant(const Poly& f, const Poly& g, int x) {
  int m = f.deg(x), n = g.deg(x);
  if (m < 0 || n < 0) return Poly();
  if (m == 0) return f.pow(n);
  if (n == 0) return g.pow(m);
  if (m < n) {
    Poly r = resultant(g, f, x);
    return ((m * n) % 2) ? -r : r;
  }
  // subresultant PRS with exact resultant bookkeeping
  Poly A = f, B = g;
  Poly gco(1), h(1);
  int s = 1;
  while (true) {
    int dA = A.deg(x), dB = B.deg(x);
    int d = dA - dB;
    if ((dA % 2) && (dB % 2)) s = -s;
    Poly R = prem(A, B, x);
    A = B;
    Poly denom = gco * h.pow(d);
    if (R.is_zero()) return Poly();  // common factor of positive degree
    B = divexact(R, denom);
    gco = uv_lead(A, x);
    if (d == 0) {
      // h unchanged
    } else if (d == 1) {
      h = gco;
    } else {
      h = divexact(gco.pow(d), h.pow(d - 1));
    }
    if (B.deg(x) == 0) {
      // res = s * h^(1-dA') * B^(dA')  where dA' = deg A
      int dAp = A.deg(x);
      Poly res;
      if (dAp == 0) {
        res = B;  // shouldn't happen (deg A >= 1 here)
      } else if (dAp == 1) {
        res = B;
      } else {
        res = divexact(B.pow(dAp), h.pow(dAp - 1));
      }
      return s == 1 ? res : -res;
    }
  }
}

Poly discriminant(const Poly& f, int x) {
  Poly r = resultant(f, deriv(f, x), x);
  if (r.is_zero()) return r;
  return divexact(r, uv_lead(f, x));
}

Poly squarefree_part(const Poly& p, int x) {
  if (p.deg(x) <= 0) return p;
  Poly g = gcd(p, deriv(p, x));
  if (g.is_constant()) return p;
  return divexact(p, g);
}

}  // namespace cal
