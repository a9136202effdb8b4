#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "weblin/errors.hpp"
#include "weblin/point.hpp"
#include "weblin/ratfunc.hpp"

namespace weblin {

enum class FuncTag { Exp, Log, Sin, Cos };

class Expr;

/// Process-wide symbol registry. Ids 0 and 1 are always x1 and x2; parameters
/// and transcendental generators are registered on first use, so ids are
/// deterministic for a fixed input order.
class Symbols {
 public:
  enum class Kind { Var, Param, Generator };
  static constexpr int kX1 = 0;
  static constexpr int kX2 = 1;

  static Symbols& instance();

  int param(const std::string& name);            // get-or-register
  int find_param(const std::string& name) const; // -1 if absent
  int generator(FuncTag tag, const Expr& arg);   // get-or-register

  Kind kind(int id) const;
  const std::string& name(int id) const;  // Var/Param only
  FuncTag tag(int id) const;
  const Expr& gen_arg(int id) const;
  int count() const;

  /// Drops everything but x1/x2. Test support only.
  void reset();

 private:
  Symbols();
  struct Entry;
  std::vector<Entry> entries_;
};

/// Immutable symbolic expression in rational-function normal form over the
/// variables, parameters and opaque transcendental generators. All arithmetic
/// renormalizes, so structurally equal values compare equal.
class Expr {
 public:
  Expr();  // zero
  static Expr constant(Rat c);
  static Expr integer(long v) { return constant(Rat(v)); }
  static Expr x1() { return symbol(Symbols::kX1); }
  static Expr x2() { return symbol(Symbols::kX2); }
  static Expr parameter(const std::string& name);
  static Expr symbol(int id);
  static Expr from_ratfunc(RatFunc rf);

  bool is_zero() const { return rf_->is_zero(); }
  bool is_constant() const { return rf_->is_constant(); }
  Rat constant_value() const;  // requires is_constant

  Expr operator-() const;
  Expr operator+(const Expr& o) const;
  Expr operator-(const Expr& o) const;
  Expr operator*(const Expr& o) const;
  Expr operator/(const Expr& o) const;  // throws on symbolic zero divisor
  Expr pow(int e) const;

  bool operator==(const Expr& o) const { return *rf_ == *o.rf_; }
  bool operator!=(const Expr& o) const { return !(*this == o); }
  std::size_t hash() const { return rf_->hash(); }

  /// Exact partial derivative with respect to x1 or x2 (chain rule through
  /// transcendental generators).
  Expr derivative(int var_id) const;

  double eval(const Point& p) const;
  template <class T>
  T eval_generic(const std::map<int, T>& env) const;

  /// Simultaneous substitution followed by normalization. Keys are symbol ids.
  Expr substitute(const std::map<int, Expr>& bindings) const;

  /// True when the value genuinely depends on the symbol, looking through
  /// transcendental generator arguments.
  bool depends_on(int id) const;
  std::vector<int> symbols() const;

  std::string str() const;
  std::size_t node_count() const { return rf_->node_count(); }
  const RatFunc& rf() const { return *rf_; }

  friend Expr exp(const Expr& e);
  friend Expr log(const Expr& e);
  friend Expr sin(const Expr& e);
  friend Expr cos(const Expr& e);

 private:
  explicit Expr(std::shared_ptr<const RatFunc> rf) : rf_(std::move(rf)) {}
  std::shared_ptr<const RatFunc> rf_;
};

Expr exp(const Expr& e);
Expr log(const Expr& e);
Expr sin(const Expr& e);
Expr cos(const Expr& e);

std::string print_poly(const Poly& p);

/// Numeric scalar hooks for generic evaluation. Specialized for double here
/// and for the truncated-Taylor scalar in taylor.hpp.
template <class T>
struct ScalarOps;

template <>
struct ScalarOps<double> {
  static double from_rat(const Rat& r) { return r.get_d(); }
  static double apply(FuncTag tag, double x);
  static bool is_zero(double x) { return x == 0.0; }
  static bool is_nonpositive(double x) { return x <= 0.0; }
};

template <class T>
T Expr::eval_generic(const std::map<int, T>& env) const {
  Symbols& reg = Symbols::instance();
  std::map<int, T> local;  // resolved generator values
  auto value_of = [&](int id, auto&& self) -> T {
    auto it = env.find(id);
    if (it != env.end()) return it->second;
    auto hit = local.find(id);
    if (hit != local.end()) return hit->second;
    if (reg.kind(id) != Symbols::Kind::Generator)
      throw Error(ErrorKind::UnboundSymbol, "unbound symbol in evaluation");
    const Expr& arg = reg.gen_arg(id);
    T a = arg.template eval_generic<T>(env);
    if (reg.tag(id) == FuncTag::Log && ScalarOps<T>::is_nonpositive(a))
      throw SingularEvaluation("log(" + arg.str() + ")");
    T v = ScalarOps<T>::apply(reg.tag(id), a);
    local.emplace(id, v);
    (void)self;
    return v;
  };
  auto eval_poly = [&](const Poly& p) -> T {
    T acc = ScalarOps<T>::from_rat(Rat(0));
    for (auto& [m, c] : p.terms()) {
      T t = ScalarOps<T>::from_rat(c);
      for (auto& [id, e] : m.exps()) {
        T v = value_of(id, value_of);
        for (int k = 0; k < e; ++k) t = t * v;
      }
      acc = acc + t;
    }
    return acc;
  };
  T num = eval_poly(rf().num());
  if (rf().is_polynomial()) return num;
  T den = eval_poly(rf().den());
  if (ScalarOps<T>::is_zero(den))
    throw SingularEvaluation(print_poly(rf().den()));
  return num / den;
}

}  // namespace weblin
