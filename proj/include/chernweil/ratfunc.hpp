#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "chernweil/poly.hpp"

namespace chernweil {

/// Coordinate ring of a chart: named variables plus the polynomials declared
/// invertible there. Declared invertibles are stored monic and are assumed
/// irreducible and pairwise non-associate.
class Chart {
 public:
  Chart(std::string id, std::vector<std::string> vars, std::vector<Poly> invertibles);

  /// The fraction field of `base`: same variables, every nonzero denominator allowed.
  static std::shared_ptr<const Chart> fraction_field(const Chart& base);

  const std::string& id() const { return id_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const std::vector<Poly>& invertibles() const { return invertibles_; }
  bool is_fraction_field() const { return fraction_field_; }

  /// -1 when absent.
  int var_index(std::string_view name) const;

 private:
  std::string id_;
  std::vector<std::string> vars_;
  std::vector<Poly> invertibles_;
  bool fraction_field_ = false;
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::string id, std::vector<std::string> vars,
                    std::vector<Poly> invertibles = {});

bool same_chart(const ChartPtr& a, const ChartPtr& b);
void require_same_chart(const ChartPtr& a, const ChartPtr& b, std::string_view where);

/// Exact rational function n/d on a chart, in canonical form: gcd(n, d) = 1,
/// d monic, and every irreducible factor of d declared invertible on the chart.
class RatFunc {
 public:
  explicit RatFunc(ChartPtr chart);
  RatFunc(ChartPtr chart, const Rational& c);
  RatFunc(ChartPtr chart, Poly numerator);

  static RatFunc variable(ChartPtr chart, std::size_t index);

  const ChartPtr& chart() const { return chart_; }
  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  RatFunc operator-() const;
  RatFunc& operator+=(const RatFunc& other);
  RatFunc& operator-=(const RatFunc& other);
  RatFunc& operator*=(const RatFunc& other);

  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
  friend bool operator==(const RatFunc& a, const RatFunc& b);

  RatFunc scaled(const Rational& c) const;

  /// Throws ZeroDenominator for 0 and NotInvertibleOnChart when the numerator
  /// has a factor that is not declared invertible.
  RatFunc inverse() const;

  RatFunc derivative(std::size_t var) const;

  /// Same value read on another chart with the identical variable list.
  RatFunc on_chart(ChartPtr other) const;

  std::string to_string() const;

 private:
  friend RatFunc ratfunc_normalize(const Poly& n, const Poly& d, ChartPtr chart);
  RatFunc(ChartPtr chart, Poly num, Poly den) : chart_(std::move(chart)), num_(std::move(num)), den_(std::move(den)) {}

  ChartPtr chart_;
  Poly num_;
  Poly den_;
};

/// Canonical form of n/d on `chart`.
RatFunc ratfunc_normalize(const Poly& n, const Poly& d, ChartPtr chart);

RatFunc pow(const RatFunc& f, int n);

/// Ring map from the source chart's coordinate ring into the target's: each
/// source variable is sent to a rational function on the target chart.
struct Substitution {
  ChartPtr source;
  ChartPtr target;
  std::vector<RatFunc> images;

  static Substitution identity(ChartPtr chart);
  /// Variables matched by name; each source variable must exist on the target.
  static Substitution by_name(ChartPtr source, ChartPtr target);

  bool is_identity() const;
  RatFunc apply(const Poly& p) const;
  RatFunc apply(const RatFunc& f) const;

  /// this : A -> B, then next : B -> C.
  Substitution then(const Substitution& next) const;

  friend bool operator==(const Substitution& a, const Substitution& b);

  std::string to_string() const;
};

}  // namespace chernweil
