#include "chernweil/forms.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "chernweil/error.hpp"
#include "chernweil/simplex.hpp"

namespace chernweil {

namespace {

std::vector<int> bits(std::uint32_t mask) {
  std::vector<int> out;
  for (int k = 0; mask; ++k, mask >>= 1U) {
    if (mask & 1U) out.push_back(k);
  }
  return out;
}

// Sign of sorting the concatenation a, b of two increasing generator lists.
int merge_sign(std::uint32_t a, std::uint32_t b) {
  int inversions = 0;
  for (int y : bits(b)) inversions += std::popcount(a >> (static_cast<unsigned>(y) + 1));
  return inversions % 2 ? -1 : 1;
}

void require_compatible(const Form& a, const Form& b, const char* what) {
  require_same_chart(a.chart(), b.chart(), what);
  if (a.p() != b.p()) {
    fail(ErrorCode::DegreeMismatch, std::string(what) + ": simplicial degrees " + std::to_string(a.p()) + " and " +
                                        std::to_string(b.p()));
  }
}

std::string t_monomial(const std::vector<int>& t) {
  std::string s;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!t[k]) continue;
    if (!s.empty()) s += "*";
    s += "t" + std::to_string(k + 1);
    if (t[k] > 1) s += "^" + std::to_string(t[k]);
  }
  return s;
}

}  // namespace

int FormKey::base_degree() const { return std::popcount(base); }
int FormKey::simplex_degree() const { return std::popcount(simplex); }

bool FormKeyLess::operator()(const FormKey& a, const FormKey& b) const {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  if (a.base_degree() != b.base_degree()) return a.base_degree() > b.base_degree();
  if (a.base != b.base) return bits(a.base) < bits(b.base);
  if (a.simplex != b.simplex) return bits(a.simplex) < bits(b.simplex);
  return GrlexGreater{}(a.t, b.t);
}

Form::Form(ChartPtr chart, int p) : chart_(std::move(chart)), p_(p) {
  if (p_ < 0 || p_ > 31) fail(ErrorCode::IndexOutOfRange, "simplicial degree " + std::to_string(p_));
}

Form Form::scalar(const RatFunc& f, int p) {
  Form w(f.chart(), p);
  w.add_term(FormKey{std::vector<int>(static_cast<std::size_t>(p), 0), 0, 0}, f);
  return w;
}

Form Form::constant(ChartPtr chart, int p, const Rational& c) { return scalar(RatFunc(std::move(chart), c), p); }

Form Form::t(ChartPtr chart, int p, int i) {
  if (i < 0 || i > p) fail(ErrorCode::IndexOutOfRange, "t" + std::to_string(i) + " at simplicial degree " + std::to_string(p));
  if (i == 0) {
    Form w = constant(chart, p, 1);
    for (int k = 1; k <= p; ++k) w -= t(chart, p, k);
    return w;
  }
  Form w(chart, p);
  std::vector<int> e(static_cast<std::size_t>(p), 0);
  e[static_cast<std::size_t>(i - 1)] = 1;
  w.add_term(FormKey{e, 0, 0}, RatFunc(chart, 1));
  return w;
}

Form Form::dt(ChartPtr chart, int p, int i) {
  if (i < 0 || i > p) fail(ErrorCode::IndexOutOfRange, "dt" + std::to_string(i) + " at simplicial degree " + std::to_string(p));
  Form w(chart, p);
  if (i == 0) {
    for (int k = 1; k <= p; ++k) w -= dt(chart, p, k);
    return w;
  }
  w.add_term(FormKey{std::vector<int>(static_cast<std::size_t>(p), 0), 0, 1U << static_cast<unsigned>(i - 1)},
             RatFunc(chart, 1));
  return w;
}

Form Form::dx(ChartPtr chart, int p, std::size_t k) {
  if (k >= chart->nvars()) fail(ErrorCode::IndexOutOfRange, "base generator index");
  Form w(chart, p);
  w.add_term(FormKey{std::vector<int>(static_cast<std::size_t>(p), 0), 1U << k, 0}, RatFunc(chart, 1));
  return w;
}

int Form::degree() const {
  if (terms_.empty()) return -1;
  const int d = terms_.begin()->first.degree();
  for (const auto& [k, c] : terms_) {
    if (k.degree() != d) return -1;
  }
  return d;
}

bool Form::is_homogeneous() const { return terms_.empty() || degree() >= 0; }

bool Form::is_base_only() const {
  for (const auto& [k, c] : terms_) {
    if (k.simplex || std::any_of(k.t.begin(), k.t.end(), [](int e) { return e != 0; })) return false;
  }
  return true;
}

void Form::add_term(const FormKey& key, const RatFunc& c) {
  if (key.t.size() != static_cast<std::size_t>(p_)) fail(ErrorCode::DegreeMismatch, "t-exponent arity");
  if (key.simplex >> static_cast<unsigned>(p_)) fail(ErrorCode::IndexOutOfRange, "dt generator beyond simplicial degree");
  if (key.base >> chart_->nvars()) fail(ErrorCode::IndexOutOfRange, "base generator beyond chart variables");
  if (c.is_zero()) return;
  require_same_chart(chart_, c.chart(), "form coefficient");
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Form Form::operator-() const {
  Form r = *this;
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

Form& Form::operator+=(const Form& o) {
  require_compatible(*this, o, "form sum");
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

Form& Form::operator-=(const Form& o) {
  require_compatible(*this, o, "form difference");
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

Form operator*(const Form& a, const Form& b) {
  require_compatible(a, b, "wedge");
  Form r(a.chart_, a.p_);
  FormKey key{std::vector<int>(static_cast<std::size_t>(a.p_)), 0, 0};
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      if ((ka.base & kb.base) || (ka.simplex & kb.simplex)) continue;
      int sign = merge_sign(ka.base, kb.base) * merge_sign(ka.simplex, kb.simplex);
      if (ka.simplex_degree() * kb.base_degree() % 2) sign = -sign;
      for (std::size_t k = 0; k < key.t.size(); ++k) key.t[k] = ka.t[k] + kb.t[k];
      key.base = ka.base | kb.base;
      key.simplex = ka.simplex | kb.simplex;
      RatFunc c = ca * cb;
      r.add_term(key, sign < 0 ? -c : c);
    }
  }
  return r;
}

bool operator==(const Form& a, const Form& b) {
  return same_chart(a.chart_, b.chart_) && a.p_ == b.p_ && a.terms_ == b.terms_;
}

Form Form::scaled(const Rational& c) const {
  Form r(chart_, p_);
  if (c == 0) return r;
  r.terms_ = terms_;
  for (auto& [k, v] : r.terms_) v = v.scaled(c);
  return r;
}

Form Form::times(const RatFunc& f) const {
  require_same_chart(chart_, f.chart(), "form scaling");
  Form r(chart_, p_);
  if (f.is_zero()) return r;
  for (const auto& [k, v] : terms_) r.add_term(k, v * f);
  return r;
}

Form Form::type_part(int i, int j) const {
  Form r(chart_, p_);
  for (const auto& [k, v] : terms_) {
    if (k.base_degree() == i && k.simplex_degree() == j) r.terms_.emplace(k, v);
  }
  return r;
}

Form Form::on_chart(ChartPtr other) const {
  Form r(other, p_);
  for (const auto& [k, v] : terms_) r.add_term(k, v.on_chart(other));
  return r;
}

Form Form::in_simplex_degree(int q) const {
  if (q < p_) fail(ErrorCode::DegreeMismatch, "cannot lower simplicial degree");
  Form r(chart_, q);
  for (const auto& [k, v] : terms_) {
    FormKey key = k;
    key.t.resize(static_cast<std::size_t>(q), 0);
    r.add_term(key, v);
  }
  return r;
}

std::string Form::to_string() const {
  if (terms_.empty()) return "0";
  const auto& names = chart_->vars();
  std::string out;
  bool first = true;
  for (const auto& [k, v] : terms_) {
    RatFunc c = v;
    bool negative = false;
    if (c.numerator().terms().size() == 1 && c.numerator().leading_coefficient() < 0) {
      negative = true;
      c = -c;
    }
    std::vector<std::string> scalar;
    if (!c.is_one()) {
      std::string cs = c.to_string();
      if (c.is_polynomial() && c.numerator().terms().size() > 1) cs = "(" + cs + ")";
      scalar.push_back(cs);
    }
    const std::string tm = t_monomial(k.t);
    if (!tm.empty()) scalar.push_back(tm);
    std::vector<std::string> gens;
    for (int b : bits(k.base)) gens.push_back("d" + names[static_cast<std::size_t>(b)]);
    for (int s : bits(k.simplex)) gens.push_back("dt" + std::to_string(s + 1));

    std::string term;
    for (std::size_t n = 0; n < scalar.size(); ++n) term += (n ? "*" : "") + scalar[n];
    if (!gens.empty()) {
      if (!term.empty()) term += " ";
      for (std::size_t n = 0; n < gens.size(); ++n) term += (n ? " ^ " : "") + gens[n];
    }
    if (term.empty()) term = "1";
    if (first) {
      out += negative ? "-" + term : term;
    } else {
      out += (negative ? " - " : " + ") + term;
    }
    first = false;
  }
  return out;
}

Form wedge(const Form& a, const Form& b) { return a * b; }

Form differential(const Form& w) {
  Form r(w.chart(), w.p());
  const auto nv = w.chart()->nvars();
  for (const auto& [k, c] : w.terms()) {
    for (std::size_t x = 0; x < nv; ++x) {
      const std::uint32_t bit = 1U << x;
      if (k.base & bit) continue;
      const RatFunc dc = c.derivative(x);
      if (dc.is_zero()) continue;
      FormKey key = k;
      key.base |= bit;
      const bool odd = std::popcount(k.base & (bit - 1)) % 2;
      r.add_term(key, odd ? -dc : dc);
    }
    const int bdeg = k.base_degree();
    for (int i = 0; i < w.p(); ++i) {
      const auto idx = static_cast<std::size_t>(i);
      const std::uint32_t bit = 1U << static_cast<unsigned>(i);
      if (!k.t[idx] || (k.simplex & bit)) continue;
      FormKey key = k;
      key.t[idx] -= 1;
      key.simplex |= bit;
      const bool odd = (bdeg + std::popcount(k.simplex & (bit - 1))) % 2;
      const RatFunc dc = c.scaled(k.t[idx]);
      r.add_term(key, odd ? -dc : dc);
    }
  }
  return r;
}

Form pow(const Form& w, int n) {
  if (n < 0) fail(ErrorCode::IndexOutOfRange, "negative form power");
  Form r = Form::constant(w.chart(), w.p(), 1);
  for (int k = 0; k < n; ++k) r = r * w;
  return r;
}

namespace {

// Expands c * t^a * dx_base * dt_simplex with t_j and dt_j replaced by images.
Form substitute_simplex(const Form& w, int q, const std::vector<Form>& t_img, const std::vector<Form>& dt_img) {
  const ChartPtr& chart = w.chart();
  Form r(chart, q);
  std::vector<std::map<int, Form>> powers(t_img.size());
  for (const auto& [k, c] : w.terms()) {
    Form term(chart, q);
    term.add_term(FormKey{std::vector<int>(static_cast<std::size_t>(q), 0), k.base, 0}, c);
    for (std::size_t j = 0; j < k.t.size() && !term.is_zero(); ++j) {
      const int e = k.t[j];
      if (!e) continue;
      auto it = powers[j].find(e);
      if (it == powers[j].end()) it = powers[j].emplace(e, pow(t_img[j], e)).first;
      term = term * it->second;
    }
    for (int s : bits(k.simplex)) {
      if (term.is_zero()) break;
      term = term * dt_img[static_cast<std::size_t>(s)];
    }
    r += term;
  }
  return r;
}

}  // namespace

Form pullback_coface(const Form& w, int i) {
  const int p = w.p();
  if (p < 1 || i < 0 || i > p) fail(ErrorCode::IndexOutOfRange, "coface index " + std::to_string(i) + " at degree " + std::to_string(p));
  const ChartPtr& chart = w.chart();
  const int q = p - 1;
  std::vector<Form> t_img, dt_img;
  for (int j = 1; j <= p; ++j) {
    if (j == i) {
      t_img.emplace_back(chart, q);
      dt_img.emplace_back(chart, q);
    } else {
      const int s = j < i ? j : j - 1;
      t_img.push_back(Form::t(chart, q, s));
      dt_img.push_back(Form::dt(chart, q, s));
    }
  }
  return substitute_simplex(w, q, t_img, dt_img);
}

Form pullback_nerve(const Form& w, const Substitution& s) {
  require_same_chart(w.chart(), s.source, "pullback");
  const int p = w.p();
  std::vector<Form> dx_img;
  for (const auto& img : s.images) dx_img.push_back(differential(Form::scalar(img, p)));
  Form r(s.target, p);
  for (const auto& [k, c] : w.terms()) {
    Form term(s.target, p);
    term.add_term(FormKey{k.t, 0, 0}, s.apply(c));
    for (int b : bits(k.base)) {
      if (term.is_zero()) break;
      term = term * dx_img[static_cast<std::size_t>(b)];
    }
    if (k.simplex && !term.is_zero()) {
      Form gens(s.target, p);
      gens.add_term(FormKey{std::vector<int>(static_cast<std::size_t>(p), 0), 0, k.simplex}, RatFunc(s.target, 1));
      term = term * gens;
    }
    r += term;
  }
  return r;
}

Form integrate_simplex(const Form& w) {
  const int p = w.p();
  const std::uint32_t full = p ? (1U << static_cast<unsigned>(p)) - 1U : 0U;
  Form r(w.chart(), 0);
  for (const auto& [k, c] : w.terms()) {
    if (k.simplex != full) continue;
    std::vector<int> exps{0};
    exps.insert(exps.end(), k.t.begin(), k.t.end());
    Rational v = simplex_monomial_integral(exps);
    if (k.base_degree() * p % 2) v = -v;
    r.add_term(FormKey{{}, k.base, 0}, c.scaled(v));
  }
  return r;
}

FMatrix lift(const Matrix<RatFunc>& m, int p) {
  return m.map([p](const RatFunc& f) { return Form::scalar(f, p); });
}

FMatrix zero_forms(const ChartPtr& chart, int p, std::size_t rows, std::size_t cols) {
  return FMatrix(rows, cols, Form(chart, p));
}

FMatrix identity_forms(const ChartPtr& chart, int p, std::size_t n) {
  return FMatrix::identity(n, Form(chart, p), Form::constant(chart, p, 1));
}

FMatrix differential(const FMatrix& m) {
  return m.map([](const Form& w) { return differential(w); });
}

FMatrix pullback_coface(const FMatrix& m, int i) {
  FMatrix r(m.rows(), m.cols(), pullback_coface(m.zero(), i));
  for (std::size_t a = 0; a < m.rows(); ++a) {
    for (std::size_t b = 0; b < m.cols(); ++b) r(a, b) = pullback_coface(m(a, b), i);
  }
  return r;
}

FMatrix pullback_nerve(const FMatrix& m, const Substitution& s) {
  return m.map([&](const Form& w) { return pullback_nerve(w, s); });
}

Form trace(const FMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::ShapeMismatch, "trace of " + m.shape());
  Form r = m.zero();
  for (std::size_t i = 0; i < m.rows(); ++i) r += m(i, i);
  return r;
}

std::optional<GluingViolationInfo> check_gluing(const CoverNerve& nerve, const FormFamily& family) {
  auto get = [&](const Tuple& t) {
    auto it = family.find(t);
    if (it != family.end()) return it->second;
    return Form(nerve.chart(t), static_cast<int>(t.size()) - 1);
  };
  for (const auto& t : nerve.tuples()) {
    const int p = static_cast<int>(t.size()) - 1;
    if (p < 1) continue;
    const Form w = get(t);
    for (int i = 0; i <= p; ++i) {
      const auto [f, s] = nerve.face(t, i);
      if (!(pullback_nerve(get(f), s) == pullback_coface(w, i))) return GluingViolationInfo{p, i, t};
    }
  }
  return std::nullopt;
}

}  // namespace chernweil
