#include "chernweil/twisting.hpp"

#include "chernweil/error.hpp"

namespace chernweil {

std::size_t LocalComplexFamily::rank(int open, int deg) const {
  auto it = ranks.find(open);
  if (it == ranks.end() || deg < lo || deg > hi) return 0;
  return it->second.at(static_cast<std::size_t>(deg - lo));
}

RMatrix LocalComplexFamily::differential(const CoverNerve& nerve, int open, int deg) const {
  auto it = differentials.find(open);
  if (it != differentials.end() && deg >= lo && deg < hi) return it->second.at(static_cast<std::size_t>(deg - lo));
  return zero_matrix(nerve.chart({open}), rank(open, deg + 1), rank(open, deg));
}

void validate_local_complexes(const CoverNerve& nerve, const LocalComplexFamily& v) {
  if (v.hi < v.lo) fail(ErrorCode::ValidationError, "local complexes need lo <= hi");
  const auto len = static_cast<std::size_t>(v.hi - v.lo + 1);
  for (const auto& [a, r] : v.ranks) {
    if (a < 0 || a >= static_cast<int>(nerve.opens().size())) fail(ErrorCode::ValidationError, "local complex on unknown open");
    if (r.size() != len) {
      fail(ErrorCode::ValidationError, "local complex on " + nerve.opens()[static_cast<std::size_t>(a)] + " needs " +
                                           std::to_string(len) + " ranks");
    }
  }
  for (const auto& [a, ds] : v.differentials) {
    if (!v.ranks.count(a)) fail(ErrorCode::ValidationError, "differential on an open without ranks");
    const std::string& name = nerve.opens()[static_cast<std::size_t>(a)];
    if (ds.size() + 1 != len) fail(ErrorCode::ValidationError, "local complex on " + name + " needs " + std::to_string(len - 1) + " differentials");
    const ChartPtr chart = nerve.chart({a});
    for (int i = v.lo; i < v.hi; ++i) {
      const RMatrix& d = ds[static_cast<std::size_t>(i - v.lo)];
      if (d.rows() != v.rank(a, i + 1) || d.cols() != v.rank(a, i) || !same_chart(matrix_chart(d), chart)) {
        fail(ErrorCode::ValidationError, "d^" + std::to_string(i) + " on " + name + " has shape " + d.shape());
      }
    }
    for (int i = v.lo; i + 1 < v.hi; ++i) {
      if (!(v.differential(nerve, a, i + 1) * v.differential(nerve, a, i)).is_zero()) {
        fail(ErrorCode::ValidationError, "d o d is not zero on " + name + " in degree " + std::to_string(i));
      }
    }
  }
}

GradedMap zero_graded(const CoverNerve& nerve, const LocalComplexFamily& v, const Tuple& t, int q) {
  const ChartPtr chart = nerve.chart(t);
  GradedMap out;
  for (int i = v.lo; i <= v.hi; ++i) out.push_back(zero_matrix(chart, v.rank(t.front(), i + q), v.rank(t.back(), i)));
  return out;
}

GradedMap identity_graded(const CoverNerve& nerve, const LocalComplexFamily& v, const Tuple& t) {
  GradedMap out = zero_graded(nerve, v, t, 0);
  for (auto& m : out) {
    for (std::size_t k = 0; k < m.rows() && k < m.cols(); ++k) m(k, k) = RatFunc(nerve.chart(t), 1);
  }
  return out;
}

GradedMap local_differential(const CoverNerve& nerve, const LocalComplexFamily& v, const Tuple& t) {
  GradedMap out;
  for (int i = v.lo; i <= v.hi; ++i) out.push_back(v.differential(nerve, t.front(), i));
  return out;
}

bool is_zero(const GradedMap& m) {
  for (const auto& b : m) {
    if (!b.is_zero()) return false;
  }
  return true;
}

void check_graded_shape(const CoverNerve& nerve, const LocalComplexFamily& v, const Tuple& t, int q, const GradedMap& m) {
  const GradedMap ref = zero_graded(nerve, v, t, q);
  bool ok = m.size() == ref.size();
  for (std::size_t k = 0; ok && k < m.size(); ++k) {
    ok = m[k].rows() == ref[k].rows() && m[k].cols() == ref[k].cols() && same_chart(matrix_chart(m[k]), nerve.chart(t));
  }
  if (!ok) fail(ErrorCode::ShapeMismatch, "component on " + nerve.tuple_name(t) + " does not have degree " + std::to_string(q) + " shapes");
}

namespace {

int level(const Tuple& t) { return static_cast<int>(t.size()) - 1; }

const GradedMap& component(const CoverNerve& nerve, const EndoCochain& c, const Tuple& t) {
  auto it = c.components.find(t);
  if (it == c.components.end()) fail(ErrorCode::MissingComponent, "no component on " + nerve.tuple_name(t));
  return it->second;
}

GradedMap restricted(const CoverNerve& nerve, const GradedMap& m, const Tuple& from, const Tuple& to) {
  const Substitution s = nerve.restriction(from, to);
  GradedMap out;
  for (const auto& b : m) out.push_back(restrict_matrix(b, s));
  return out;
}

// f o g on tuple t, with g of degree qg; only the block shapes of the result
// depend on t's end opens.
void add_composite(GradedMap& acc, const LocalComplexFamily& v, const GradedMap& f, const GradedMap& g, int qg, bool negate) {
  for (int i = v.lo; i <= v.hi; ++i) {
    const int mid = i + qg;
    if (mid < v.lo || mid > v.hi) continue;
    RMatrix prod = f[static_cast<std::size_t>(mid - v.lo)] * g[static_cast<std::size_t>(i - v.lo)];
    auto& slot = acc[static_cast<std::size_t>(i - v.lo)];
    if (negate) {
      slot -= prod;
    } else {
      slot += prod;
    }
  }
}

std::string describe_block(const LocalComplexFamily& v, const GradedMap& m) {
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (!m[k].is_zero()) return "source degree " + std::to_string(v.lo + static_cast<int>(k)) + ", " + m[k].to_string();
  }
  return "zero";
}

}  // namespace

EndoCochain deleted_cech_differential(const CoverNerve& nerve, const LocalComplexFamily& v, const EndoCochain& c, int p) {
  EndoCochain out{c.total_degree + 1, {}};
  const int q = c.total_degree - p;
  for (const auto& t : nerve.tuples_at(p + 1)) {
    GradedMap acc = zero_graded(nerve, v, t, q);
    for (int i = 1; i <= p; ++i) {
      const Tuple face = omit(t, i);
      const GradedMap r = restricted(nerve, component(nerve, c, face), face, t);
      for (std::size_t k = 0; k < acc.size(); ++k) {
        if (i % 2) {
          acc[k] -= r[k];
        } else {
          acc[k] += r[k];
        }
      }
    }
    out.components.emplace(t, std::move(acc));
  }
  return out;
}

EndoCochain cochain_product(const CoverNerve& nerve, const LocalComplexFamily& v, const EndoCochain& a,
                            const EndoCochain& b) {
  EndoCochain out{a.total_degree + b.total_degree, {}};
  for (const auto& t : nerve.tuples()) {
    const int p = level(t);
    GradedMap acc = zero_graded(nerve, v, t, out.total_degree - p);
    for (int j = 0; j <= p; ++j) {
      const Tuple head(t.begin(), t.begin() + j + 1);
      const Tuple tail(t.begin() + j, t.end());
      const auto ca = a.components.find(head);
      const auto cb = b.components.find(tail);
      if (ca == a.components.end() || cb == b.components.end()) continue;
      const int qb = b.total_degree - (p - j);
      check_graded_shape(nerve, v, head, a.total_degree - j, ca->second);
      check_graded_shape(nerve, v, tail, qb, cb->second);
      const GradedMap fa = restricted(nerve, ca->second, head, t);
      const GradedMap fb = restricted(nerve, cb->second, tail, t);
      add_composite(acc, v, fa, fb, qb, ((a.total_degree - j) * (p - j)) % 2 != 0);
    }
    out.components.emplace(t, std::move(acc));
  }
  return out;
}

EndoCochain mc_defect(const CoverNerve& nerve, const LocalComplexFamily& v, const TwistingCochain& a) {
  EndoCochain out = cochain_product(nerve, v, a, a);
  for (int p = 1; p < nerve.depth(); ++p) {
    const EndoCochain d = deleted_cech_differential(nerve, v, a, p);
    for (const auto& [t, m] : d.components) {
      auto& slot = out.components.at(t);
      for (std::size_t k = 0; k < m.size(); ++k) slot[k] += m[k];
    }
  }
  return out;
}

CheckReport mc_check(const CoverNerve& nerve, const LocalComplexFamily& v, const TwistingCochain& a) {
  CheckReport rep("maurer-cartan");
  for (const auto& t : nerve.tuples()) {
    const int k = level(t);
    const GradedMap& c = component(nerve, a, t);
    check_graded_shape(nerve, v, t, a.total_degree - k, c);
    const std::string at = nerve.tuple_name(t);
    if (k == 0 && c != local_differential(nerve, v, t)) {
      rep.reject("level-zero component on " + at + " is not the local differential");
      return rep;
    }
    if (k == 1 && t[0] == t[1] && c != identity_graded(nerve, v, t)) {
      rep.reject("level-one component on " + at + " is not the identity");
      return rep;
    }
    if (k >= 2 && !is_zero(c)) {
      for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        if (t[i] == t[i + 1]) {
          rep.reject("component on degenerate tuple " + at + " is not zero");
          return rep;
        }
      }
    }
  }
  rep.note("identity, local differentials and degenerate vanishing hold");
  for (const auto& t : nerve.tuples_at(1)) {
    const GradedMap& f = a.components.at(t);
    GradedMap defect = zero_graded(nerve, v, t, 1);
    add_composite(defect, v, restricted(nerve, local_differential(nerve, v, {t[0]}), {t[0]}, t), f, 0, false);
    add_composite(defect, v, f, restricted(nerve, local_differential(nerve, v, {t[1]}), {t[1]}, t), 1, true);
    if (!is_zero(defect)) {
      rep.reject("level-one component on " + nerve.tuple_name(t) + " is not a chain map, " + describe_block(v, defect));
      return rep;
    }
  }
  rep.note("level-one components are chain maps");
  const EndoCochain defect = mc_defect(nerve, v, a);
  for (const auto& t : nerve.tuples()) {
    const GradedMap& m = defect.components.at(t);
    if (!is_zero(m)) {
      rep.reject("Maurer-Cartan defect on " + nerve.tuple_name(t) + ", " + describe_block(v, m));
      return rep;
    }
  }
  rep.note("Maurer-Cartan equation holds on " + std::to_string(nerve.tuples().size()) + " tuples");
  return rep;
}

}  // namespace chernweil
