#include "weblin/poly.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>

namespace weblin {

// ---------------------------------------------------------------- Monomial

Monomial Monomial::symbol(int id, int exp) {
  Monomial m;
  if (exp != 0) m.exps_.push_back({id, exp});
  return m;
}

int Monomial::degree() const {
  int d = 0;
  for (auto& [id, e] : exps_) d += e;
  return d;
}

int Monomial::degree_in(int id) const {
  for (auto& [sid, e] : exps_)
    if (sid == id) return e;
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.exps_.reserve(exps_.size() + o.exps_.size());
  auto a = exps_.begin(), b = o.exps_.begin();
  while (a != exps_.end() || b != o.exps_.end()) {
    if (b == o.exps_.end() || (a != exps_.end() && a->first < b->first)) {
      r.exps_.push_back(*a++);
    } else if (a == exps_.end() || b->first < a->first) {
      r.exps_.push_back(*b++);
    } else {
      int e = a->first;
      int s = a->second + b->second;
      if (s != 0) r.exps_.push_back({e, s});
      ++a;
      ++b;
    }
  }
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  auto b = o.exps_.begin();
  for (auto& [id, e] : exps_) {
    while (b != o.exps_.end() && b->first < id) ++b;
    if (b == o.exps_.end() || b->first != id || b->second < e) return false;
  }
  return true;
}

Monomial Monomial::divided_into(const Monomial& o) const {
  Monomial r;
  auto a = exps_.begin();
  for (auto& [id, e] : o.exps_) {
    int sub = 0;
    while (a != exps_.end() && a->first < id) ++a;
    if (a != exps_.end() && a->first == id) sub = a->second;
    if (e - sub != 0) r.exps_.push_back({id, e - sub});
  }
  return r;
}

int Monomial::compare(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  // lexicographic by symbol id: lower id with higher exponent is "larger"
  auto i = a.exps_.begin(), j = b.exps_.begin();
  while (i != a.exps_.end() && j != b.exps_.end()) {
    if (i->first != j->first) return i->first < j->first ? 1 : -1;
    if (i->second != j->second) return i->second > j->second ? 1 : -1;
    ++i;
    ++j;
  }
  if (i != a.exps_.end()) return 1;
  if (j != b.exps_.end()) return -1;
  return 0;
}

std::size_t Monomial::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (auto& [id, e] : exps_) {
    h ^= std::size_t(id) * 0xff51afd7ed558ccdULL + std::size_t(e);
    h = (h << 13) | (h >> 51);
  }
  return h;
}

// -------------------------------------------------------------------- Poly

Poly::Poly(Rat c) {
  if (c != 0) terms_.push_back({Monomial(), std::move(c)});
}

Poly Poly::symbol(int id) { return term(Monomial::symbol(id), Rat(1)); }

Poly Poly::term(Monomial m, Rat c) {
  Poly p;
  if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_[0].first.is_one() && terms_[0].second == 1;
}

const Rat& Poly::constant_value() const {
  static const Rat kZero(0);
  if (terms_.empty()) return kZero;
  assert(is_constant());
  return terms_[0].second;
}

int Poly::total_degree() const {
  return terms_.empty() ? -1 : terms_[0].first.degree();
}

int Poly::degree_in(int id) const {
  int d = 0;
  for (auto& [m, c] : terms_) d = std::max(d, m.degree_in(id));
  return d;
}

const Monomial& Poly::leading_monomial() const {
  assert(!terms_.empty());
  return terms_[0].first;
}

const Rat& Poly::leading_coeff() const {
  assert(!terms_.empty());
  return terms_[0].second;
}

void Poly::symbols(std::vector<int>& out) const {
  for (auto& [m, c] : terms_)
    for (auto& [id, e] : m.exps()) out.push_back(id);
}

bool Poly::depends_on(int id) const {
  for (auto& [m, c] : terms_)
    if (m.degree_in(id) > 0) return true;
  return false;
}

Poly Poly::from_terms(std::vector<std::pair<Monomial, Rat>> terms) {
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    return Monomial::compare(a.first, b.first) > 0;
  });
  Poly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
      if (p.terms_.back().second == 0) p.terms_.pop_back();
    } else if (t.second != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin(), b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    int cmp;
    if (a == terms_.end())
      cmp = -1;
    else if (b == o.terms_.end())
      cmp = 1;
    else
      cmp = Monomial::compare(a->first, b->first);
    if (cmp > 0) {
      r.terms_.push_back(*a++);
    } else if (cmp < 0) {
      r.terms_.push_back(*b++);
    } else {
      Rat s = a->second + b->second;
      if (s != 0) r.terms_.push_back({a->first, std::move(s)});
      ++a;
      ++b;
    }
  }
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  if (is_one()) return o;
  if (o.is_one()) return *this;
  std::map<Monomial, Rat> acc;
  for (auto& [ma, ca] : terms_)
    for (auto& [mb, cb] : o.terms_) {
      Rat& slot = acc[ma * mb];
      slot += ca * cb;
    }
  std::vector<std::pair<Monomial, Rat>> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) terms.push_back({m, std::move(c)});
  // map is ascending; reverse into descending order
  std::reverse(terms.begin(), terms.end());
  Poly r;
  r.terms_ = std::move(terms);
  return r;
}

Poly Poly::operator*(const Rat& c) const {
  if (c == 0) return Poly();
  Poly r = *this;
  for (auto& [m, cc] : r.terms_) cc *= c;
  return r;
}

Poly Poly::pow(int e) const {
  assert(e >= 0);
  Poly r = Poly::constant(Rat(1));
  Poly base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

Poly Poly::derivative(int id) const {
  std::vector<std::pair<Monomial, Rat>> out;
  for (auto& [m, c] : terms_) {
    int e = m.degree_in(id);
    if (e == 0) continue;
    Monomial dm = Monomial::symbol(id).divided_into(m);
    out.push_back({dm, c * e});
  }
  return from_terms(std::move(out));
}

Poly Poly::substitute(int id, const Poly& value) const {
  // Horner over the exponent of id
  int maxe = degree_in(id);
  if (maxe == 0) return *this;
  std::vector<Poly> bucket(maxe + 1);
  for (auto& [m, c] : terms_) {
    int e = m.degree_in(id);
    Monomial rest = Monomial::symbol(id, e).divided_into(m);
    bucket[e] = bucket[e] + Poly::term(rest, c);
  }
  Poly r = bucket[maxe];
  for (int e = maxe - 1; e >= 0; --e) r = r * value + bucket[e];
  return r;
}

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
  if (divisor.is_zero()) return std::nullopt;
  if (is_zero()) return Poly();
  if (divisor.is_constant()) {
    Rat inv = 1 / divisor.constant_value();
    return *this * inv;
  }
  Poly rem = *this;
  std::vector<std::pair<Monomial, Rat>> q;
  const Monomial& dlm = divisor.leading_monomial();
  const Rat& dlc = divisor.leading_coeff();
  while (!rem.is_zero()) {
    const Monomial& rlm = rem.leading_monomial();
    if (!dlm.divides(rlm)) return std::nullopt;
    Monomial qm = dlm.divided_into(rlm);
    Rat qc = rem.leading_coeff() / dlc;
    q.push_back({qm, qc});
    rem = rem - divisor * Poly::term(qm, qc);
  }
  return from_terms(std::move(q));
}

Rat Poly::content() const {
  if (terms_.empty()) return Rat(0);
  Int num_gcd(0), den_lcm(1);
  for (auto& [m, c] : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
            c.get_num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
            c.get_den().get_mpz_t());
  }
  Rat cont(num_gcd, den_lcm);
  cont.canonicalize();
  if (leading_coeff() < 0) cont = -cont;
  return cont;
}

Poly Poly::primitive_part() const {
  if (is_zero()) return *this;
  return *this * (1 / content());
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * (1 / leading_coeff());
}

std::size_t Poly::hash() const {
  std::size_t h = 1469598103934665603ULL;
  for (auto& [m, c] : terms_) {
    h ^= m.hash();
    h *= 1099511628211ULL;
    h ^= std::hash<long>()(mpz_get_si(c.get_num().get_mpz_t()));
    h *= 1099511628211ULL;
    h ^= std::hash<long>()(mpz_get_si(c.get_den().get_mpz_t()));
    h *= 1099511628211ULL;
  }
  return h;
}

// ------------------------------------------------------------- heuristic gcd

namespace {

// Integer-coefficient view used by the heuristic. Coefficients are mpz
// stored as mpq with denominator 1.
Int max_norm(const Poly& p) {
  Int m(0);
  for (auto& [mon, c] : p.terms()) {
    Int a = abs(c.get_num());
    if (a > m) m = a;
  }
  return m;
}

// Evaluate p at symbol id := xi (big integer), exactly.
Poly eval_at(const Poly& p, int id, const Int& xi) {
  int maxe = p.degree_in(id);
  if (maxe == 0) return p;
  std::vector<Poly> bucket(maxe + 1);
  for (auto& [m, c] : p.terms()) {
    int e = m.degree_in(id);
    Monomial rest = Monomial::symbol(id, e).divided_into(m);
    bucket[e] = bucket[e] + Poly::term(rest, c);
  }
  Poly r = bucket[maxe];
  Poly xip = Poly::constant(Rat(xi));
  for (int e = maxe - 1; e >= 0; --e) r = r * xip + bucket[e];
  return r;
}

// Symmetric remainder of every coefficient modulo xi, in (-xi/2, xi/2].
Poly smod(const Poly& p, const Int& xi) {
  std::vector<std::pair<Monomial, Rat>> out;
  Int half = xi / 2;
  for (auto& [m, c] : p.terms()) {
    Int v = c.get_num();  // denominators are 1 here
    Int r;
    mpz_mod(r.get_mpz_t(), v.get_mpz_t(), xi.get_mpz_t());
    if (r > half) r -= xi;
    if (r != 0) out.push_back({m, Rat(r)});
  }
  return Poly::from_terms(std::move(out));
}

// gcd over Z for primitive integer polynomials; may return nullopt (give up).
std::optional<Poly> heugcd_z(const Poly& f, const Poly& g, int depth) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;
  if (f.is_constant() || g.is_constant()) {
    Int cf(0), cg(0);
    for (auto& [m, c] : f.terms())
      mpz_gcd(cf.get_mpz_t(), cf.get_mpz_t(), c.get_num().get_mpz_t());
    for (auto& [m, c] : g.terms())
      mpz_gcd(cg.get_mpz_t(), cg.get_mpz_t(), c.get_num().get_mpz_t());
    Int r;
    mpz_gcd(r.get_mpz_t(), cf.get_mpz_t(), cg.get_mpz_t());
    return Poly::constant(Rat(r));
  }
  if (depth > 16) return std::nullopt;

  std::vector<int> syms;
  f.symbols(syms);
  g.symbols(syms);
  std::sort(syms.begin(), syms.end());
  syms.erase(std::unique(syms.begin(), syms.end()), syms.end());
  int x = syms.front();

  Int nf = max_norm(f), ng = max_norm(g);
  Int xi = 2 * (nf < ng ? nf : ng) + 29;
  if (xi < 107) xi = 107;

  for (int attempt = 0; attempt < 6; ++attempt) {
    Poly fe = eval_at(f, x, xi);
    Poly ge = eval_at(g, x, xi);
    auto he = heugcd_z(fe, ge, depth + 1);
    if (he) {
      // xi-adic reconstruction of a candidate gcd in x
      Poly h = *he;
      Poly cand;
      int e = 0;
      while (!h.is_zero() && e < 2048) {
        Poly digit = smod(h, xi);
        cand = cand + digit * Poly::symbol(x).pow(e);
        Poly diff = h - digit;
        std::vector<std::pair<Monomial, Rat>> scaled;
        for (auto& [m, c] : diff.terms()) {
          Rat q = c / Rat(xi);
          scaled.push_back({m, q});
        }
        h = Poly::from_terms(std::move(scaled));
        ++e;
      }
      if (!cand.is_zero()) {
        // Keep the integer content: it carries digit information for the
        // enclosing reconstruction level. Only normalize the sign.
        if (cand.leading_coeff() < 0) cand = -cand;
        if (f.divide_exact(cand) && g.divide_exact(cand)) return cand;
      }
    }
    // retry with a larger evaluation point
    xi = xi * 7 + 2 * (xi % 1000) + 73;
  }
  return std::nullopt;
}

Poly to_integer_primitive(const Poly& p) {
  Rat c = p.content();
  if (c == 0) return p;
  return p * (1 / c);
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.is_zero() ? Poly() : b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly::constant(Rat(1));
  if (a == b) return a.monic();
  Poly fa = to_integer_primitive(a);
  Poly fb = to_integer_primitive(b);
  auto h = heugcd_z(fa, fb, 0);
  if (!h || h->is_zero()) return Poly::constant(Rat(1));
  return h->monic();
}

}  // namespace weblin
