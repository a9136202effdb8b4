#include "weblin/expr.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <sstream>

namespace weblin {

// ----------------------------------------------------------------- Symbols

struct Symbols::Entry {
  Kind kind;
  std::string name;          // Var/Param
  FuncTag tag = FuncTag::Exp;
  std::shared_ptr<Expr> arg;  // Generator
};

namespace {
std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Symbols::Symbols() {
  entries_.push_back({Kind::Var, "x1"});
  entries_.push_back({Kind::Var, "x2"});
}

Symbols& Symbols::instance() {
  static Symbols s;
  return s;
}

int Symbols::param(const std::string& name) {
  std::lock_guard<std::mutex> lock(registry_mutex());
  for (int i = 0; i < (int)entries_.size(); ++i)
    if (entries_[i].kind == Kind::Param && entries_[i].name == name) return i;
  entries_.push_back({Kind::Param, name});
  return (int)entries_.size() - 1;
}

int Symbols::find_param(const std::string& name) const {
  std::lock_guard<std::mutex> lock(registry_mutex());
  for (int i = 0; i < (int)entries_.size(); ++i)
    if (entries_[i].kind == Kind::Param && entries_[i].name == name) return i;
  return -1;
}

int Symbols::generator(FuncTag tag, const Expr& arg) {
  std::lock_guard<std::mutex> lock(registry_mutex());
  for (int i = 0; i < (int)entries_.size(); ++i)
    if (entries_[i].kind == Kind::Generator && entries_[i].tag == tag &&
        *entries_[i].arg == arg)
      return i;
  Entry e;
  e.kind = Kind::Generator;
  e.tag = tag;
  e.arg = std::make_shared<Expr>(arg);
  entries_.push_back(std::move(e));
  return (int)entries_.size() - 1;
}

Symbols::Kind Symbols::kind(int id) const { return entries_.at(id).kind; }
const std::string& Symbols::name(int id) const { return entries_.at(id).name; }
FuncTag Symbols::tag(int id) const { return entries_.at(id).tag; }
const Expr& Symbols::gen_arg(int id) const { return *entries_.at(id).arg; }
int Symbols::count() const { return (int)entries_.size(); }

void Symbols::reset() {
  std::lock_guard<std::mutex> lock(registry_mutex());
  entries_.resize(2);
}

// -------------------------------------------------------------------- Expr

namespace {
std::shared_ptr<const RatFunc> shared_rf(RatFunc rf) {
  return std::make_shared<const RatFunc>(std::move(rf));
}
}  // namespace

Expr::Expr() : rf_(shared_rf(RatFunc())) {}

Expr Expr::constant(Rat c) { return Expr(shared_rf(RatFunc::constant(std::move(c)))); }
Expr Expr::symbol(int id) { return Expr(shared_rf(RatFunc::symbol(id))); }
Expr Expr::parameter(const std::string& name) {
  return symbol(Symbols::instance().param(name));
}
Expr Expr::from_ratfunc(RatFunc rf) { return Expr(shared_rf(std::move(rf))); }

Rat Expr::constant_value() const {
  if (!is_constant()) throw Error(ErrorKind::InputError, "not a constant: " + str());
  return rf_->num().constant_value();
}

Expr Expr::operator-() const { return Expr(shared_rf(-*rf_)); }
Expr Expr::operator+(const Expr& o) const { return Expr(shared_rf(*rf_ + *o.rf_)); }
Expr Expr::operator-(const Expr& o) const { return Expr(shared_rf(*rf_ - *o.rf_)); }
Expr Expr::operator*(const Expr& o) const { return Expr(shared_rf(*rf_ * *o.rf_)); }
Expr Expr::operator/(const Expr& o) const {
  if (o.is_zero()) throw SingularEvaluation(o.str());
  return Expr(shared_rf(*rf_ / *o.rf_));
}
Expr Expr::pow(int e) const { return Expr(shared_rf(rf_->pow(e))); }

std::vector<int> Expr::symbols() const {
  std::vector<int> ids;
  rf_->symbols(ids);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

bool Expr::depends_on(int id) const {
  if (rf_->depends_on(id)) return true;
  Symbols& reg = Symbols::instance();
  for (int s : symbols())
    if (reg.kind(s) == Symbols::Kind::Generator && reg.gen_arg(s).depends_on(id))
      return true;
  return false;
}

Expr exp(const Expr& e) {
  if (e.is_zero()) return Expr::integer(1);
  return Expr::symbol(Symbols::instance().generator(FuncTag::Exp, e));
}
Expr log(const Expr& e) {
  if (e.is_constant() && e.constant_value() == 1) return Expr();
  return Expr::symbol(Symbols::instance().generator(FuncTag::Log, e));
}
Expr sin(const Expr& e) {
  if (e.is_zero()) return Expr();
  return Expr::symbol(Symbols::instance().generator(FuncTag::Sin, e));
}
Expr cos(const Expr& e) {
  if (e.is_zero()) return Expr::integer(1);
  return Expr::symbol(Symbols::instance().generator(FuncTag::Cos, e));
}

Expr Expr::derivative(int var_id) const {
  Symbols& reg = Symbols::instance();
  Expr result;
  for (int id : symbols()) {
    Expr partial = Expr::from_ratfunc(rf_->derivative(id));
    if (partial.is_zero()) continue;
    Expr dsym;
    switch (reg.kind(id)) {
      case Symbols::Kind::Var:
        if (id != var_id) continue;
        dsym = Expr::integer(1);
        break;
      case Symbols::Kind::Param:
        continue;
      case Symbols::Kind::Generator: {
        const Expr& arg = reg.gen_arg(id);
        Expr darg = arg.derivative(var_id);
        if (darg.is_zero()) continue;
        switch (reg.tag(id)) {
          case FuncTag::Exp: dsym = Expr::symbol(id) * darg; break;
          case FuncTag::Log: dsym = darg / arg; break;
          case FuncTag::Sin: dsym = cos(arg) * darg; break;
          case FuncTag::Cos: dsym = -sin(arg) * darg; break;
        }
        break;
      }
    }
    result = result + partial * dsym;
  }
  return result;
}

Expr Expr::substitute(const std::map<int, Expr>& bindings) const {
  if (bindings.empty()) return *this;
  Symbols& reg = Symbols::instance();

  // Resolve the replacement for each symbol appearing anywhere, rebuilding
  // generators whose argument is affected.
  std::map<int, Expr> resolved;
  std::function<Expr(int)> value_of = [&](int id) -> Expr {
    auto hit = resolved.find(id);
    if (hit != resolved.end()) return hit->second;
    Expr v = Expr::symbol(id);
    auto b = bindings.find(id);
    if (b != bindings.end()) {
      v = b->second;
    } else if (reg.kind(id) == Symbols::Kind::Generator) {
      const Expr& arg = reg.gen_arg(id);
      bool affected = false;
      for (int s : arg.symbols()) {
        if (bindings.count(s) || value_of(s) != Expr::symbol(s)) {
          affected = true;
          break;
        }
      }
      if (affected) {
        Expr new_arg = arg.substitute(bindings);
        switch (reg.tag(id)) {
          case FuncTag::Exp: v = exp(new_arg); break;
          case FuncTag::Log: v = log(new_arg); break;
          case FuncTag::Sin: v = sin(new_arg); break;
          case FuncTag::Cos: v = cos(new_arg); break;
        }
      }
    }
    resolved.emplace(id, v);
    return v;
  };

  auto eval_poly = [&](const Poly& p) -> Expr {
    Expr acc;
    for (auto& [m, c] : p.terms()) {
      Expr t = Expr::constant(c);
      for (auto& [id, e] : m.exps()) t = t * value_of(id).pow(e);
      acc = acc + t;
    }
    return acc;
  };

  Expr num = eval_poly(rf_->num());
  if (rf_->is_polynomial()) return num;
  Expr den = eval_poly(rf_->den());
  return num / den;
}

double Expr::eval(const Point& p) const {
  Symbols& reg = Symbols::instance();
  std::map<int, double> env;
  env[Symbols::kX1] = p.x1;
  env[Symbols::kX2] = p.x2;
  for (int id : symbols()) {
    if (reg.kind(id) == Symbols::Kind::Param) {
      auto it = p.params.find(reg.name(id));
      if (it == p.params.end())
        throw Error(ErrorKind::UnboundSymbol,
                    "unbound parameter '" + reg.name(id) + "'");
      env[id] = it->second;
    }
  }
  return eval_generic<double>(env);
}

// ----------------------------------------------------------------- printer

namespace {

std::string print_rat(const Rat& r) {
  std::ostringstream ss;
  ss << r;
  return ss.str();
}

std::string print_symbol(int id) {
  Symbols& reg = Symbols::instance();
  switch (reg.kind(id)) {
    case Symbols::Kind::Var:
    case Symbols::Kind::Param:
      return reg.name(id);
    case Symbols::Kind::Generator: {
      const char* fn = nullptr;
      switch (reg.tag(id)) {
        case FuncTag::Exp: fn = "exp"; break;
        case FuncTag::Log: fn = "log"; break;
        case FuncTag::Sin: fn = "sin"; break;
        case FuncTag::Cos: fn = "cos"; break;
      }
      return std::string(fn) + "(" + reg.gen_arg(id).str() + ")";
    }
  }
  return "?";
}

}  // namespace

std::string print_poly(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream ss;
  bool first = true;
  for (auto& [m, c] : p.terms()) {
    Rat a = c;
    if (a < 0) {
      ss << (first ? "-" : " - ");
      a = -a;
    } else if (!first) {
      ss << " + ";
    }
    first = false;
    if (m.is_one()) {
      ss << print_rat(a);
    } else {
      bool need_star = false;
      if (a != 1) {
        ss << print_rat(a);
        need_star = true;
      }
      for (auto& [id, e] : m.exps()) {
        if (need_star) ss << "*";
        ss << print_symbol(id);
        if (e != 1) ss << "^" << e;
        need_star = true;
      }
    }
  }
  return ss.str();
}

std::string Expr::str() const {
  if (rf_->is_polynomial()) return print_poly(rf_->num());
  return "(" + print_poly(rf_->num()) + ")/(" + print_poly(rf_->den()) + ")";
}

double ScalarOps<double>::apply(FuncTag tag, double x) {
  switch (tag) {
    case FuncTag::Exp: return std::exp(x);
    case FuncTag::Log: return std::log(x);
    case FuncTag::Sin: return std::sin(x);
    case FuncTag::Cos: return std::cos(x);
  }
  return 0.0;
}

}  // namespace weblin
