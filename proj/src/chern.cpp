#include "chernweil/chern.hpp"

#include "chernweil/error.hpp"

namespace chernweil {

namespace {

FMatrix power(const FMatrix& m, int k) {
  FMatrix out = m;
  for (int i = 1; i < k; ++i) out = out * m;
  return out;
}

FormFamily combine(const FormFamily& a, const FormFamily& b, const Rational& cb) {
  FormFamily out = a;
  for (const auto& [t, w] : b) {
    auto it = out.find(t);
    if (it == out.end()) {
      out.emplace(t, w.scaled(cb));
    } else {
      it->second += w.scaled(cb);
    }
  }
  return out;
}

}  // namespace

FormFamily invariant_trace_power(const EndoFamily& kappa, int k) {
  if (k < 1) fail(ErrorCode::ValidationError, "invariant polynomial degree must be at least 1");
  FormFamily out;
  for (const auto& [t, m] : kappa) out.emplace(t, trace(power(m, k)));
  return out;
}

FormFamily elementary_symmetric(const EndoFamily& kappa, int k) {
  if (k < 1) fail(ErrorCode::ValidationError, "invariant polynomial degree must be at least 1");
  std::vector<FormFamily> p(static_cast<std::size_t>(k) + 1);
  for (int i = 1; i <= k; ++i) p[static_cast<std::size_t>(i)] = invariant_trace_power(kappa, i);
  std::vector<FormFamily> e(static_cast<std::size_t>(k) + 1);
  for (const auto& [t, m] : kappa) e[0].emplace(t, Form::constant(m.zero().chart(), m.zero().p(), 1));
  for (int n = 1; n <= k; ++n) {
    // n e_n = sum_{i=1}^{n} (-1)^{i-1} e_{n-i} p_i
    FormFamily acc;
    for (const auto& [t, m] : kappa) acc.emplace(t, m.zero());
    for (int i = 1; i <= n; ++i) {
      FormFamily term;
      for (const auto& [t, w] : e[static_cast<std::size_t>(n - i)]) term.emplace(t, w * p[static_cast<std::size_t>(i)].at(t));
      acc = combine(acc, term, Rational(i % 2 ? 1 : -1));
    }
    for (auto& [t, w] : acc) w = w.scaled(Rational(1, n));
    e[static_cast<std::size_t>(n)] = std::move(acc);
  }
  return e[static_cast<std::size_t>(k)];
}

CechCochain chern_representative(const CoverNerve& nerve, const std::vector<SimplicialConnection>& by_degree, int k,
                                 Invariant inv) {
  FormFamily total;
  for (std::size_t s = 0; s < by_degree.size(); ++s) {
    const EndoFamily kappa = curvature(by_degree[s]);
    const FormFamily f = inv == Invariant::TracePower ? invariant_trace_power(kappa, k) : elementary_symmetric(kappa, k);
    total = combine(total, f, Rational(s % 2 ? -1 : 1));
  }
  return fibre_integrate(nerve, total, 2 * k);
}

CheckReport check_cocycle(const CoverNerve& nerve, const CechCochain& c) {
  CheckReport rep("cocycle");
  const CechCochain d = total_differential(nerve, c);
  for (const auto& t : nerve.tuples()) {
    const Form w = d.at(nerve, t);
    if (!w.is_zero()) {
      rep.reject("D c on " + nerve.tuple_name(t) + " is " + w.to_string());
      return rep;
    }
  }
  return rep;
}

}  // namespace chernweil
