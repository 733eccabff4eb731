#include "chernweil/connections.hpp"

#include "chernweil/error.hpp"

namespace chernweil {

namespace {

FMatrix on_degree(const FMatrix& m, int p) {
  FMatrix out(m.rows(), m.cols(), m.zero().in_simplex_degree(p));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).in_simplex_degree(p);
  }
  return out;
}

int degree_of(const Tuple& t) { return static_cast<int>(t.size()) - 1; }

const FMatrix& connection_at(const CoverNerve& nerve, const SimplicialConnection& c, const Tuple& t) {
  auto it = c.find(t);
  if (it == c.end()) fail(ErrorCode::MissingComponent, "no connection on " + nerve.tuple_name(t));
  return it->second;
}

struct ComparisonData {
  Tuple face;
  Substitution res;
  FMatrix f;
};

ComparisonData comparison(const CoverNerve& nerve, const ComplexOnNerve& cx, int s, const Tuple& t, int i) {
  auto [face, res] = nerve.face(t, i);
  return {face, res, lift(cx.transition(nerve, t, i, s), degree_of(t) - 1)};
}

}  // namespace

FMatrix pullback_connection(const RMatrix& f, const FMatrix& a) {
  const int p = a.zero().p();
  require_same_chart(matrix_chart(f), a.zero().chart(), "pullback connection");
  const FMatrix lf = lift(f, p);
  const FMatrix inv = lift(inverse(f), p);
  return inv * a * lf + inv * differential(lf);
}

FMatrix curvature(const FMatrix& a) { return differential(a) + a * a; }

EndoFamily curvature(const SimplicialConnection& c) {
  EndoFamily out;
  for (const auto& [t, a] : c) out.emplace(t, curvature(a));
  return out;
}

FMatrix true_morphism_defect(const FMatrix& f, const FMatrix& a_src, const FMatrix& a_tgt) {
  return differential(f) + a_tgt * f - f * a_src;
}

CheckReport check_true_morphism(const FMatrix& f, const FMatrix& a_src, const FMatrix& a_tgt) {
  CheckReport rep("true-morphism");
  const FMatrix defect = true_morphism_defect(f, a_src, a_tgt);
  if (!defect.is_zero()) rep.reject("defect " + defect.to_string());
  return rep;
}

void validate_locals(const CoverNerve& nerve, const ComplexOnNerve& cx, int s, const LocalConnections& locals) {
  for (const auto& [k, m] : locals) {
    if (k < 0 || k >= static_cast<int>(nerve.opens().size()) || !nerve.contains({k})) {
      fail(ErrorCode::ValidationError, "local connection on unknown open " + std::to_string(k));
    }
    const std::string& name = nerve.opens()[static_cast<std::size_t>(k)];
    const std::size_t r = cx.rank({k}, s);
    if (m.rows() != r || m.cols() != r) {
      fail(ErrorCode::ValidationError, "local connection on " + name + " in degree " + std::to_string(s) + " has shape " +
                                           m.shape() + ", expected " + std::to_string(r) + "x" + std::to_string(r));
    }
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        const Form& w = m(i, j);
        if (!same_chart(w.chart(), nerve.chart({k})) || w.p() != 0 || (!w.is_zero() && (w.degree() != 1 || !w.is_base_only()))) {
          fail(ErrorCode::ValidationError, "local connection on " + name + " must hold base 1-forms on chart " + nerve.chart({k})->id());
        }
      }
    }
  }
}

SimplicialConnection barycentric(const CoverNerve& nerve, const ComplexOnNerve& cx, const GreenStructure& gs, int s,
                                 const LocalConnections& locals) {
  SimplicialConnection out;
  for (const auto& t : nerve.tuples()) {
    const int p = degree_of(t);
    const ChartPtr chart = nerve.chart(t);
    const std::size_t n = cx.rank(t, s);
    FMatrix a = zero_forms(chart, p, n, n);
    for (int i = 0; i <= p; ++i) {
      const Tuple vertex{t[static_cast<std::size_t>(i)]};
      const Splitting sp = splitting(nerve, cx, gs, t, 1U << i);
      const std::size_t r = cx.rank(vertex, s);
      FMatrix theta = zero_forms(chart, p, r, r);
      auto it = locals.find(vertex[0]);
      if (it != locals.end()) theta = on_degree(pullback_nerve(it->second, nerve.restriction(vertex, t)), p);
      const FMatrix block = direct_sum(theta, zero_forms(chart, p, n - r, n - r));
      const FMatrix moved = pullback_connection(sp.iso.at(static_cast<std::size_t>(s)), block);
      const Form ti = Form::t(chart, p, i);
      a += moved.map([&](const Form& w) { return ti * w; });
    }
    out.emplace(t, a);
  }
  return out;
}

CheckReport check_simplicial(const CoverNerve& nerve, const ComplexOnNerve& cx, int s, const SimplicialConnection& c) {
  CheckReport rep("simplicial");
  std::size_t maps = 0;
  for (const auto& t : nerve.tuples()) {
    if (t.size() < 2) continue;
    for (int i = 0; i < static_cast<int>(t.size()); ++i) {
      const auto cmp = comparison(nerve, cx, s, t, i);
      const FMatrix src = pullback_nerve(connection_at(nerve, c, cmp.face), cmp.res);
      const FMatrix tgt = pullback_coface(connection_at(nerve, c, t), i);
      const FMatrix defect = true_morphism_defect(cmp.f, src, tgt);
      if (!defect.is_zero()) {
        rep.reject("coface " + std::to_string(i) + " of " + nerve.tuple_name(t) + ", defect " + defect.to_string());
        return rep;
      }
      ++maps;
    }
  }
  rep.note(std::to_string(maps) + " comparison maps are true morphisms");
  return rep;
}

CheckReport check_endomorphism_gluing(const CoverNerve& nerve, const ComplexOnNerve& cx, int s, const EndoFamily& w) {
  CheckReport rep("endomorphism-gluing");
  for (const auto& t : nerve.tuples()) {
    if (t.size() < 2) continue;
    for (int i = 0; i < static_cast<int>(t.size()); ++i) {
      const auto cmp = comparison(nerve, cx, s, t, i);
      const FMatrix lhs = cmp.f * pullback_nerve(connection_at(nerve, w, cmp.face), cmp.res);
      const FMatrix rhs = pullback_coface(connection_at(nerve, w, t), i) * cmp.f;
      if (lhs != rhs) {
        rep.reject("p=" + std::to_string(degree_of(t)) + " i=" + std::to_string(i) + " " + nerve.tuple_name(t));
        return rep;
      }
    }
  }
  return rep;
}

AdmissibilityWitness green_witness(const CoverNerve& nerve, const ComplexOnNerve& cx, const GreenStructure& gs, int s,
                                   const Tuple& t, int i, int j) {
  if (j == i || j < 0 || j >= static_cast<int>(t.size())) fail(ErrorCode::IndexOutOfRange, "witness position must differ from the coface");
  const auto us = static_cast<std::size_t>(s);
  // Columns of the inverse splitting that span the elementary complement.
  auto complement = [&](const Tuple& u, int k) {
    const Splitting sp = splitting(nerve, cx, gs, u, 1U << k);
    const RMatrix inv = inverse(sp.iso.at(us));
    const std::size_t r = cx.rank({u[static_cast<std::size_t>(k)]}, s);
    return inv.block(0, r, inv.rows(), inv.cols() - r);
  };
  return {complement(omit(t, i), j < i ? j : j - 1), complement(t, j)};
}

WitnessFamily canonical_witnesses(const CoverNerve& nerve, const ComplexOnNerve& cx, const GreenStructure& gs, int s) {
  WitnessFamily out;
  for (const auto& t : nerve.tuples()) {
    if (t.size() < 2) continue;
    for (int i = 0; i < static_cast<int>(t.size()); ++i) {
      out.emplace(std::make_pair(t, i), green_witness(nerve, cx, gs, s, t, i, i == 0 ? 1 : 0));
    }
  }
  return out;
}

WitnessFamily green_witnesses(const CoverNerve& nerve, const ComplexOnNerve& cx, const GreenStructure& gs, int s,
                              const SimplicialConnection& c) {
  WitnessFamily out;
  for (const auto& t : nerve.tuples()) {
    if (t.size() < 2) continue;
    for (int i = 0; i < static_cast<int>(t.size()); ++i) {
      std::optional<AdmissibilityWitness> chosen;
      for (int j = 0; j < static_cast<int>(t.size()) && !chosen; ++j) {
        if (j == i) continue;
        AdmissibilityWitness w = green_witness(nerve, cx, gs, s, t, i, j);
        if (!coface_admissibility_defect(nerve, cx, s, c, t, i, w)) chosen = std::move(w);
      }
      if (!chosen) chosen = green_witness(nerve, cx, gs, s, t, i, i == 0 ? 1 : 0);
      out.emplace(std::make_pair(t, i), std::move(*chosen));
    }
  }
  return out;
}

std::optional<std::string> flat_subbundle_defect(const FMatrix& a, const RMatrix& w) {
  if (w.cols() == 0) return std::nullopt;
  const int p = a.zero().p();
  const auto left = left_inverse(w);
  if (!left) return "witness columns do not span a sub-bundle";
  const FMatrix lw = lift(w, p);
  const FMatrix moved = differential(lw) + a * lw;
  const FMatrix induced = lift(*left, p) * moved;
  if (lw * induced != moved) return "sub-bundle is not preserved by the connection";
  if (!curvature(induced).is_zero()) return "induced connection on the sub-bundle is not flat";
  return std::nullopt;
}

namespace {

struct WitnessData {
  ComparisonData cmp;
  RMatrix source;  // on the tuple's chart
  RMatrix target;
};

WitnessData witness_data(const CoverNerve& nerve, const ComplexOnNerve& cx, int s, const Tuple& t, int i,
                         const AdmissibilityWitness& w) {
  auto cmp = comparison(nerve, cx, s, t, i);
  if (w.source.rows() != cx.rank(cmp.face, s) || w.target.rows() != cx.rank(t, s) ||
      !same_chart(matrix_chart(w.source), nerve.chart(cmp.face)) || !same_chart(matrix_chart(w.target), nerve.chart(t))) {
    fail(ErrorCode::WitnessShapeMismatch, "witness for coface " + std::to_string(i) + " of " + nerve.tuple_name(t) +
                                              " has shapes " + w.source.shape() + ", " + w.target.shape());
  }
  RMatrix src = restrict_matrix(w.source, cmp.res);
  return {std::move(cmp), std::move(src), w.target};
}

const AdmissibilityWitness& witness_at(const CoverNerve& nerve, const WitnessFamily& witnesses, const Tuple& t, int i) {
  auto it = witnesses.find({t, i});
  if (it == witnesses.end()) {
    fail(ErrorCode::WitnessShapeMismatch, "missing witness for coface " + std::to_string(i) + " of " + nerve.tuple_name(t));
  }
  return it->second;
}

// Conditions (ii) and (iii): f carries source into target, and the induced
// map of quotients is an isomorphism on the chart.
std::optional<std::string> quotient_defect(const RMatrix& f, const RMatrix& source, const RMatrix& target) {
  const RMatrix image = f * source;
  if (target.cols() == 0) {
    if (!image.is_zero()) return "comparison map does not carry the source witness into the target";
  } else {
    const auto left = left_inverse(target);
    if (!left) return "target witness does not span a sub-bundle";
    if (target * (*left * image) != image) return "comparison map does not carry the source witness into the target";
  }
  if (f.cols() - source.cols() != f.rows() - target.cols()) return "quotients have different ranks";
  if (!left_inverse(hstack(f, target).transpose())) return "induced map of quotients is not an isomorphism";
  return std::nullopt;
}

}  // namespace

std::optional<std::string> coface_admissibility_defect(const CoverNerve& nerve, const ComplexOnNerve& cx, int s,
                                                       const SimplicialConnection& c, const Tuple& t, int i,
                                                       const AdmissibilityWitness& w) {
  const auto wd = witness_data(nerve, cx, s, t, i, w);
  const FMatrix src = pullback_nerve(connection_at(nerve, c, wd.cmp.face), wd.cmp.res);
  const FMatrix tgt = pullback_coface(connection_at(nerve, c, t), i);
  if (auto d = flat_subbundle_defect(src, wd.source)) return "(i) source " + *d;
  if (auto d = flat_subbundle_defect(tgt, wd.target)) return "(i) target " + *d;
  return quotient_defect(cx.transition(nerve, t, i, s), wd.source, wd.target);
}

CheckReport check_admissible(const CoverNerve& nerve, const ComplexOnNerve& cx, int s, const SimplicialConnection& c,
                             const WitnessFamily& witnesses) {
  CheckReport rep("admissible");
  std::size_t maps = 0;
  for (const auto& t : nerve.tuples()) {
    if (t.size() < 2) continue;
    for (int i = 0; i < static_cast<int>(t.size()); ++i) {
      if (auto d = coface_admissibility_defect(nerve, cx, s, c, t, i, witness_at(nerve, witnesses, t, i))) {
        rep.reject("coface " + std::to_string(i) + " of " + nerve.tuple_name(t) + ": " + *d);
        return rep;
      }
      ++maps;
    }
  }
  rep.note(std::to_string(maps) + " comparison maps are admissible for the witnesses");
  return rep;
}

CheckReport check_compatible_difference(const CoverNerve& nerve, const ComplexOnNerve& cx, int s,
                                        const SimplicialConnection& c1, const SimplicialConnection& c2,
                                        const WitnessFamily& witnesses) {
  CheckReport rep("compatible-difference");
  EndoFamily eta;
  for (const auto& t : nerve.tuples()) eta.emplace(t, connection_at(nerve, c2, t) - connection_at(nerve, c1, t));
  const CheckReport glue = check_endomorphism_gluing(nerve, cx, s, eta);
  if (!glue.passed) {
    rep.reject("gluing " + *glue.failure);
    return rep;
  }
  rep.note("difference glues as an endomorphism-valued 1-form");
  for (const auto& t : nerve.tuples()) {
    if (t.size() < 2) continue;
    for (int i = 0; i < static_cast<int>(t.size()); ++i) {
      const auto wd = witness_data(nerve, cx, s, t, i, witness_at(nerve, witnesses, t, i));
      const std::string where = "coface " + std::to_string(i) + " of " + nerve.tuple_name(t) + ": ";
      const int q = degree_of(t) - 1;
      const FMatrix src = pullback_nerve(eta.at(wd.cmp.face), wd.cmp.res);
      const FMatrix tgt = pullback_coface(eta.at(t), i);
      if (!(src * lift(wd.source, q)).is_zero()) {
        rep.reject(where + "difference does not vanish on the source witness");
        return rep;
      }
      if (!(tgt * lift(wd.target, q)).is_zero()) {
        rep.reject(where + "difference does not vanish on the target witness");
        return rep;
      }
      if (auto d = quotient_defect(cx.transition(nerve, t, i, s), wd.source, wd.target)) {
        rep.reject(where + *d);
        return rep;
      }
    }
  }
  rep.note("difference is admissible for the witnesses");
  return rep;
}

}  // namespace chernweil
