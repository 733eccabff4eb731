#include "chernweil/cech.hpp"

#include <sstream>

#include "chernweil/error.hpp"

namespace chernweil {

Form CechCochain::at(const CoverNerve& nerve, const Tuple& t) const {
  auto it = components.find(t);
  if (it != components.end()) return it->second;
  return Form(nerve.chart(t), 0);
}

bool CechCochain::is_zero() const {
  for (const auto& [t, w] : components) {
    if (!w.is_zero()) return false;
  }
  return true;
}

CechCochain CechCochain::pruned() const {
  CechCochain out{degree, {}};
  for (const auto& [t, w] : components) {
    if (!w.is_zero()) out.components.emplace(t, w);
  }
  return out;
}

bool operator==(const CechCochain& a, const CechCochain& b) {
  return a.degree == b.degree && a.pruned().components == b.pruned().components;
}

std::string CechCochain::to_string(const CoverNerve& nerve) const {
  std::ostringstream out;
  for (const auto& t : nerve.tuples()) {
    auto it = components.find(t);
    if (it == components.end() || it->second.is_zero()) continue;
    out << "p=" << t.size() - 1 << " " << nerve.tuple_name(t) << ": " << it->second.to_string() << "\n";
  }
  return out.str();
}

CechCochain fibre_integrate(const CoverNerve& nerve, const FormFamily& family, int r) {
  if (auto bad = check_gluing(nerve, family)) {
    fail(ErrorCode::GluingViolation, "family does not glue at p=" + std::to_string(bad->p) + ", i=" +
                                         std::to_string(bad->i) + ", tuple " + nerve.tuple_name(bad->tuple));
  }
  CechCochain c{r, {}};
  for (const auto& [t, w] : family) {
    const int p = static_cast<int>(t.size()) - 1;
    if (w.p() != p) fail(ErrorCode::DegreeMismatch, "form on " + nerve.tuple_name(t) + " has wrong simplicial degree");
    if (p > r) continue;
    Form v = integrate_simplex(w.type_part(r - p, p));
    if (!v.is_zero()) c.components.emplace(t, std::move(v));
  }
  return c;
}

CechCochain total_differential(const CoverNerve& nerve, const CechCochain& c) {
  CechCochain out{c.degree + 1, {}};
  for (const auto& t : nerve.tuples()) {
    const int p = static_cast<int>(t.size()) - 1;
    if (p > c.degree + 1) continue;
    Form v(nerve.chart(t), 0);
    if (p >= 1) {
      for (int i = 0; i <= p; ++i) {
        auto it = c.components.find(omit(t, i));
        if (it == c.components.end()) continue;
        const auto [f, s] = nerve.face(t, i);
        const Form piece = pullback_nerve(it->second, s);
        v += i % 2 ? -piece : piece;
      }
    }
    auto it = c.components.find(t);
    if (it != c.components.end()) {
      const Form dw = differential(it->second);
      v += p % 2 ? -dw : dw;
    }
    if (!v.is_zero()) out.components.emplace(t, std::move(v));
  }
  return out;
}

bool is_cocycle(const CoverNerve& nerve, const CechCochain& c) { return total_differential(nerve, c).is_zero(); }

}  // namespace chernweil
