#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chernweil/matrix.hpp"
#include "chernweil/nerve.hpp"
#include "chernweil/ratfunc.hpp"

namespace chernweil {

/// Monomial part of a term: t-exponents over t_1..t_p, then the wedge of base
/// generators dx_k (bit k of `base`) followed by simplex generators dt_i
/// (bit i-1 of `simplex`), each in increasing order.
struct FormKey {
  std::vector<int> t;
  std::uint32_t base = 0;
  std::uint32_t simplex = 0;

  int base_degree() const;
  int simplex_degree() const;
  int degree() const { return base_degree() + simplex_degree(); }
  friend bool operator==(const FormKey&, const FormKey&) = default;
};

/// Display order: base generators, then simplex generators, then t-monomials
/// in descending graded-lex order.
struct FormKeyLess {
  bool operator()(const FormKey& a, const FormKey& b) const;
};

/// Differential form on (chart) x Delta^p with coefficients rational in the
/// chart variables and polynomial in t_1..t_p. t_0 and dt_0 are eliminated.
class Form {
 public:
  using Terms = std::map<FormKey, RatFunc, FormKeyLess>;

  Form(ChartPtr chart, int p);
  /// Function on the chart, constant along the simplex.
  static Form scalar(const RatFunc& f, int p);
  static Form constant(ChartPtr chart, int p, const Rational& c);
  /// t_i for 0 <= i <= p; t_0 becomes 1 - t_1 - ... - t_p.
  static Form t(ChartPtr chart, int p, int i);
  static Form dt(ChartPtr chart, int p, int i);
  /// dx_k for the chart's k-th variable.
  static Form dx(ChartPtr chart, int p, std::size_t k);

  const ChartPtr& chart() const { return chart_; }
  int p() const { return p_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree when homogeneous; -1 for zero or mixed forms.
  int degree() const;
  bool is_homogeneous() const;
  /// No t-dependence and no dt generators.
  bool is_base_only() const;

  void add_term(const FormKey& key, const RatFunc& c);

  Form operator-() const;
  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  /// Wedge product.
  friend Form operator*(const Form& a, const Form& b);
  friend bool operator==(const Form& a, const Form& b);
  friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

  Form scaled(const Rational& c) const;
  Form times(const RatFunc& f) const;

  /// Part with `i` base generators and `j` simplex generators.
  Form type_part(int i, int j) const;
  Form on_chart(ChartPtr other) const;
  /// Same form with the simplex factor read in degree q >= p (t_{p+1}.. unused).
  Form in_simplex_degree(int q) const;

  std::string to_string() const;

 private:
  ChartPtr chart_;
  int p_;
  Terms terms_;
};

Form wedge(const Form& a, const Form& b);
Form differential(const Form& w);
Form pow(const Form& w, int n);

/// Pullback along id x (i-th coface Delta^{p-1} -> Delta^p).
Form pullback_coface(const Form& w, int i);
/// Pullback along a chart map given as a substitution of its variables.
Form pullback_nerve(const Form& w, const Substitution& s);

/// Definite integral over Delta^p of the type (r-p, p) part; the simplex factor
/// is integrated from the left, so a term xi ^ dt_1..dt_p picks up (-1)^((r-p)p).
Form integrate_simplex(const Form& w);

using FMatrix = Matrix<Form>;

FMatrix lift(const Matrix<RatFunc>& m, int p);
FMatrix zero_forms(const ChartPtr& chart, int p, std::size_t rows, std::size_t cols);
FMatrix identity_forms(const ChartPtr& chart, int p, std::size_t n);
FMatrix differential(const FMatrix& m);
FMatrix pullback_coface(const FMatrix& m, int i);
FMatrix pullback_nerve(const FMatrix& m, const Substitution& s);
Form trace(const FMatrix& m);

/// One form per nerve tuple; the tuple (a_0..a_p) carries a form at simplicial degree p.
using FormFamily = std::map<Tuple, Form>;

struct GluingViolationInfo {
  int p = 0;
  int i = 0;
  Tuple tuple;
};

/// Simplicial gluing: for every tuple a of length p+1 and 0 <= i <= p, the
/// restriction of the face form equals the coface pullback of the form on a.
/// Missing entries count as zero. Returns the first violation, if any.
std::optional<GluingViolationInfo> check_gluing(const CoverNerve& nerve, const FormFamily& family);

}  // namespace chernweil
