// Sparse multivariate polynomials over Q with exact (GMP) coefficients.
// Variables are interned globally; a Poly may mention any subset of them.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cal {

using Q = mpq_class;
using Z = mpz_class;

// ---- variable interning ----
int var_id(const std::string& name);          // intern (creates on first use)
const std::string& var_name(int id);
bool var_exists(const std::string& name);

// ---- monomials ----
// exponent vector stored sparsely: (var,exp) pairs, var ascending, exp > 0.
struct Mono {
  std::vector<std::pair<int, int>> e;

  int deg() const;
  int deg(int var) const;
  bool is_one() const { return e.empty(); }
  bool divides(const Mono& m) const;
  Mono operator*(const Mono& m) const;
  Mono operator/(const Mono& m) const;        // requires divisibility
  bool operator==(const Mono& m) const { return e == m.e; }
  bool operator<(const Mono& m) const { return e < m.e; }  // storage order only
};

Mono mono_lcm(const Mono& a, const Mono& b);
Mono mono_gcd(const Mono& a, const Mono& b);
bool coprime(const Mono& a, const Mono& b);

// ---- monomial orders ----
// Orders rank only the listed variables; any other variable appearing in a
// compared monomial ranks below all listed ones, tie-broken by id.
struct Order {
  enum Kind { LEX, GREVLEX } kind = GREVLEX;
  std::vector<int> vars;                      // most significant first
};

int mono_cmp(const Mono& a, const Mono& b, const Order& ord);  // -1,0,1

// ---- polynomials ----
class Poly {
 public:
  Poly() = default;
  Poly(const Q& c);                           // constant
  Poly(long c);
  static Poly var(int id, int exp = 1);
  static Poly var(const std::string& name, int exp = 1);
  static Poly term(const Q& c, const Mono& m);

  bool is_zero() const { return t_.empty(); }
  bool is_constant() const;
  Q constant() const;                         // value if constant, else the
                                              // coefficient of the 1 monomial
  int nterms() const { return (int)t_.size(); }
  int total_deg() const;
  int deg(int var) const;                     // -1 for zero poly
  bool has_var(int var) const;
  std::vector<int> vars() const;              // ascending

  const std::map<Mono, Q>& terms() const { return t_; }

  Poly operator-() const;
  Poly operator+(const Poly& p) const;
  Poly operator-(const Poly& p) const;
  Poly operator*(const Poly& p) const;
  Poly& operator+=(const Poly& p);
  Poly& operator-=(const Poly& p);
  Poly& operator*=(const Poly& p);
  bool operator==(const Poly& p) const { return t_ == p.t_; }
  bool operator!=(const Poly& p) const { return t_ != p.t_; }

  Poly pow(int n) const;

  Q coeff(const Mono& m) const;
  void set_coeff(const Mono& m, const Q& c);

  // leading data w.r.t. an order
  const Mono& lead_mono(const Order& ord) const;
  Q lead_coeff(const Order& ord) const;

  std::string str() const;                    // human-readable

 private:
  std::map<Mono, Q> t_;                       // no zero coefficients
};

Poly operator*(const Q& c, const Poly& p);

// ---- univariate views (coefficients are polys in the other variables) ----
Poly uv_coeff(const Poly& p, int var, int k);
std::vector<Poly> uv_coeffs(const Poly& p, int var);    // size deg+1 (or empty)
Poly uv_build(int var, const std::vector<Poly>& cs);
Poly uv_lead(const Poly& p, int var);                   // leading coeff in var

// ---- calculus / substitution ----
Poly deriv(const Poly& p, int var);
Poly subst(const Poly& p, int var, const Poly& value);
Poly subst(const Poly& p, const std::map<int, Poly>& values);
Q eval_q(const Poly& p, const std::map<int, Q>& values); // all vars assigned

// homogenize p in (x,y) with z, to degree d (>= total deg in x,y)
Poly homogenize(const Poly& p, int x, int y, int z, int d);

// ---- division ----
// exact division; aborts if q does not divide p
Poly divexact(const Poly& p, const Poly& q);
bool try_divexact(const Poly& p, const Poly& q, Poly& out);
// pseudo-division in variable x: lc(q,x)^(dp-dq+1) * p = quo*q + rem
void pseudo_divmod(const Poly& p, const Poly& q, int x, Poly& quo, Poly& rem);
Poly prem(const Poly& p, const Poly& q, int x);

// ---- gcd over Q (all variables treated transcendentally) ----
Poly gcd(const Poly& a, const Poly& b);
Poly gcd(const std::vector<Poly>& ps);
Poly uv_content(const Poly& p, int x);        // gcd of coeffs w.r.t. x
Poly uv_primpart(const Poly& p, int x);

// normalize: divide by rational content and make the sign of the leading
// coefficient (canonical storage order) positive; result has coprime integer
// coefficients
Poly normalize_primitive(const Poly& p);
Q rational_content(const Poly& p);            // result/content is int-primitive

// ---- resultants ----
Poly resultant(const Poly& f, const Poly& g, int x);     // subresultant PRS
Poly resultant_sylvester(const Poly& f, const Poly& g, int x);  // Bareiss
Poly discriminant(const Poly& f, int x);      // res(f, f') / lc(f)
// first subresultant polynomial S1 = u*x + v of f and g w.r.t. x (determinant
// form, so specialization-safe); requires deg f + deg g >= 3
void subresultant1(const Poly& f, const Poly& g, int x, Poly& u, Poly& v);

// squarefree part of p as a polynomial in x over Q[rest]: p / gcd(p, dp/dx)
Poly squarefree_part(const Poly& p, int x);

}  // namespace cal
