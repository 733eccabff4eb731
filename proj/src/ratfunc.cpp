#include "chernweil/ratfunc.hpp"

#include <map>
#include <sstream>

#include "chernweil/error.hpp"

namespace chernweil {

Chart::Chart(std::string id, std::vector<std::string> vars, std::vector<Poly> invertibles)
    : id_(std::move(id)), vars_(std::move(vars)) {
  for (auto& u : invertibles) {
    if (u.nvars() != vars_.size()) fail(ErrorCode::ShapeMismatch, "invertible polynomial arity on chart " + id_);
    if (u.is_zero()) fail(ErrorCode::ZeroDenominator, "zero declared invertible on chart " + id_);
    if (u.is_constant()) continue;
    invertibles_.push_back(u.monic());
  }
}

std::shared_ptr<const Chart> Chart::fraction_field(const Chart& base) {
  auto frac = std::make_shared<Chart>(base.id_ + "~frac", base.vars_, std::vector<Poly>{});
  frac->fraction_field_ = true;
  return frac;
}

int Chart::var_index(std::string_view name) const {
  for (std::size_t k = 0; k < vars_.size(); ++k) {
    if (vars_[k] == name) return static_cast<int>(k);
  }
  return -1;
}

ChartPtr make_chart(std::string id, std::vector<std::string> vars, std::vector<Poly> invertibles) {
  return std::make_shared<const Chart>(std::move(id), std::move(vars), std::move(invertibles));
}

bool same_chart(const ChartPtr& a, const ChartPtr& b) {
  return a == b || (a && b && a->id() == b->id());
}

void require_same_chart(const ChartPtr& a, const ChartPtr& b, std::string_view where) {
  if (!same_chart(a, b)) {
    fail(ErrorCode::ChartMismatch,
         std::string(where) + ": " + (a ? a->id() : "?") + " vs " + (b ? b->id() : "?"));
  }
}

RatFunc::RatFunc(ChartPtr chart)
    : chart_(std::move(chart)), num_(chart_->nvars()), den_(Poly::constant(chart_->nvars(), 1)) {}

RatFunc::RatFunc(ChartPtr chart, const Rational& c)
    : chart_(std::move(chart)),
      num_(Poly::constant(chart_->nvars(), c)),
      den_(Poly::constant(chart_->nvars(), 1)) {}

RatFunc::RatFunc(ChartPtr chart, Poly numerator)
    : chart_(std::move(chart)), num_(std::move(numerator)), den_(Poly::constant(chart_->nvars(), 1)) {
  if (num_.nvars() != chart_->nvars()) fail(ErrorCode::ShapeMismatch, "polynomial arity on chart " + chart_->id());
}

RatFunc RatFunc::variable(ChartPtr chart, std::size_t index) {
  const auto n = chart->nvars();
  return RatFunc(std::move(chart), Poly::variable(n, index));
}

RatFunc ratfunc_normalize(const Poly& n, const Poly& d, ChartPtr chart) {
  const auto nv = chart->nvars();
  if (n.nvars() != nv || d.nvars() != nv) fail(ErrorCode::ShapeMismatch, "polynomial arity on chart " + chart->id());
  if (d.is_zero()) fail(ErrorCode::ZeroDenominator, "zero denominator on chart " + chart->id());
  const Poly one = Poly::constant(nv, 1);
  if (n.is_zero()) return RatFunc(std::move(chart), Poly(nv), one);
  if (d.is_constant()) return RatFunc(std::move(chart), n * (Rational(1) / d.constant_term()), one);

  const Poly g = gcd(n, d);
  Poly num = *divide_exact(n, g);
  Poly den = *divide_exact(d, g);
  const Rational lead = den.leading_coefficient();
  num *= Rational(1) / lead;
  den = den.monic();
  if (den.is_constant()) return RatFunc(std::move(chart), std::move(num), one);

  if (!chart->is_fraction_field()) {
    Poly rest = den;
    for (const auto& u : chart->invertibles()) {
      while (!rest.is_constant()) {
        auto q = divide_exact(rest, u);
        if (!q) break;
        rest = std::move(*q);
      }
    }
    if (!rest.is_constant()) {
      fail(ErrorCode::NotInvertibleOnChart,
           "factor " + rest.to_string(chart->vars()) + " of denominator is not invertible on chart " + chart->id());
    }
  }
  return RatFunc(std::move(chart), std::move(num), std::move(den));
}

bool RatFunc::is_one() const { return den_.is_constant() && num_.is_constant() && num_.constant_term() == 1; }

RatFunc RatFunc::operator-() const { return RatFunc(chart_, -num_, den_); }

RatFunc& RatFunc::operator+=(const RatFunc& other) {
  require_same_chart(chart_, other.chart_, "RatFunc addition");
  if (other.is_zero()) return *this;
  if (den_ == other.den_) {
    if (den_.is_constant()) {
      num_ += other.num_;
      return *this;
    }
    *this = ratfunc_normalize(num_ + other.num_, den_, chart_);
    return *this;
  }
  *this = ratfunc_normalize(num_ * other.den_ + other.num_ * den_, den_ * other.den_, chart_);
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& other) { return *this += -other; }

RatFunc& RatFunc::operator*=(const RatFunc& other) {
  require_same_chart(chart_, other.chart_, "RatFunc product");
  if (is_zero()) return *this;
  if (other.is_zero()) {
    *this = RatFunc(chart_);
    return *this;
  }
  if (den_.is_constant() && other.den_.is_constant()) {
    num_ = num_ * other.num_;
    return *this;
  }
  *this = ratfunc_normalize(num_ * other.num_, den_ * other.den_, chart_);
  return *this;
}

bool operator==(const RatFunc& a, const RatFunc& b) {
  return same_chart(a.chart_, b.chart_) && a.num_ == b.num_ && a.den_ == b.den_;
}

RatFunc RatFunc::scaled(const Rational& c) const {
  if (c == 0) return RatFunc(chart_);
  return RatFunc(chart_, num_ * c, den_);
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) fail(ErrorCode::ZeroDenominator, "inverse of zero on chart " + chart_->id());
  return ratfunc_normalize(den_, num_, chart_);
}

RatFunc RatFunc::derivative(std::size_t var) const {
  if (den_.is_constant()) return RatFunc(chart_, num_.derivative(var), den_);
  return ratfunc_normalize(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_, chart_);
}

RatFunc RatFunc::on_chart(ChartPtr other) const {
  if (other->vars() != chart_->vars()) {
    fail(ErrorCode::ChartMismatch, "charts " + chart_->id() + " and " + other->id() + " have different variables");
  }
  return ratfunc_normalize(num_, den_, std::move(other));
}

std::string RatFunc::to_string() const {
  const auto& names = chart_->vars();
  if (den_.is_constant()) return num_.to_string(names);
  std::string n = num_.to_string(names);
  if (num_.terms().size() > 1) n = "(" + n + ")";
  std::string d = den_.to_string(names);
  int factors = 0;
  for (int e : den_.leading_exponents()) factors += e > 0 ? 1 : 0;
  if (den_.terms().size() > 1 || factors > 1) d = "(" + d + ")";
  return n + "/" + d;
}

RatFunc pow(const RatFunc& f, int n) {
  if (n < 0) return pow(f.inverse(), -n);
  RatFunc result(f.chart(), 1);
  RatFunc base = f;
  auto m = static_cast<unsigned>(n);
  while (m) {
    if (m & 1U) result *= base;
    m >>= 1U;
    if (m) base *= base;
  }
  return result;
}

Substitution Substitution::identity(ChartPtr chart) {
  Substitution s{chart, chart, {}};
  for (std::size_t k = 0; k < chart->nvars(); ++k) s.images.push_back(RatFunc::variable(chart, k));
  return s;
}

Substitution Substitution::by_name(ChartPtr source, ChartPtr target) {
  Substitution s{source, target, {}};
  for (const auto& name : source->vars()) {
    const int k = target->var_index(name);
    if (k < 0) {
      fail(ErrorCode::MissingRestriction,
           "variable " + name + " of chart " + source->id() + " has no counterpart on " + target->id());
    }
    s.images.push_back(RatFunc::variable(target, static_cast<std::size_t>(k)));
  }
  return s;
}

bool Substitution::is_identity() const {
  if (!same_chart(source, target)) return false;
  for (std::size_t k = 0; k < images.size(); ++k) {
    if (!(images[k] == RatFunc::variable(target, k))) return false;
  }
  return true;
}

RatFunc Substitution::apply(const Poly& p) const {
  if (p.nvars() != source->nvars()) fail(ErrorCode::ShapeMismatch, "substitution source arity");
  RatFunc result(target);
  std::vector<std::map<int, RatFunc>> powers(images.size());
  auto power = [&](std::size_t k, int e) -> const RatFunc& {
    auto it = powers[k].find(e);
    if (it == powers[k].end()) it = powers[k].emplace(e, pow(images[k], e)).first;
    return it->second;
  };
  for (const auto& [e, c] : p.terms()) {
    RatFunc term(target, c);
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k]) term *= power(k, e[k]);
    }
    result += term;
  }
  return result;
}

RatFunc Substitution::apply(const RatFunc& f) const {
  require_same_chart(f.chart(), source, "substitution");
  if (f.is_polynomial()) return apply(f.numerator()) * RatFunc(target, Rational(1) / f.denominator().constant_term());
  return apply(f.numerator()) / apply(f.denominator());
}

Substitution Substitution::then(const Substitution& next) const {
  require_same_chart(target, next.source, "substitution composition");
  Substitution s{source, next.target, {}};
  for (const auto& img : images) s.images.push_back(next.apply(img));
  return s;
}

bool operator==(const Substitution& a, const Substitution& b) {
  return same_chart(a.source, b.source) && same_chart(a.target, b.target) && a.images == b.images;
}

std::string Substitution::to_string() const {
  std::ostringstream out;
  for (std::size_t k = 0; k < images.size(); ++k) {
    out << (k ? ", " : "") << source->vars()[k] << " -> " << images[k].to_string();
  }
  return out.str();
}

}  // namespace chernweil
