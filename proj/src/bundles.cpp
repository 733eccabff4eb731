#include "chernweil/bundles.hpp"

#include <algorithm>

#include "chernweil/error.hpp"

namespace chernweil {

Tuple sub_tuple(const Tuple& t, unsigned mask) {
  Tuple out;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (mask & (1U << k)) out.push_back(t[k]);
  }
  return out;
}

unsigned compress_mask(unsigned inner, unsigned outer) {
  if (inner & ~outer) fail(ErrorCode::IndexOutOfRange, "mask is not nested");
  unsigned out = 0;
  unsigned pos = 0;
  for (unsigned k = 0; k < 32; ++k) {
    if (!(outer & (1U << k))) continue;
    if (inner & (1U << k)) out |= 1U << pos;
    ++pos;
  }
  return out;
}

unsigned full_mask(const Tuple& t) { return t.size() >= 32 ? ~0U : (1U << t.size()) - 1; }

namespace {

std::string raw_name(const Tuple& t) {
  std::string s = "(";
  for (std::size_t k = 0; k < t.size(); ++k) s += (k ? "," : "") + std::to_string(t[k]);
  return s + ")";
}

// Drops the bit at position m and shifts the higher bits down.
unsigned drop_position(unsigned mask, int m) {
  const unsigned low = mask & ((1U << m) - 1);
  const unsigned high = (mask >> (m + 1)) << m;
  return low | high;
}

void expect_shape(const RMatrix& m, std::size_t rows, std::size_t cols, const ChartPtr& chart, const std::string& what) {
  if (m.rows() != rows || m.cols() != cols) {
    fail(ErrorCode::ValidationError, what + " has shape " + m.shape() + ", expected " + std::to_string(rows) + "x" +
                                         std::to_string(cols));
  }
  if (!same_chart(matrix_chart(m), chart)) fail(ErrorCode::ValidationError, what + " is not on chart " + chart->id());
}

}  // namespace

std::size_t ComplexOnNerve::rank(const Tuple& t, int s) const {
  auto it = ranks.find(t);
  if (it == ranks.end()) fail(ErrorCode::ValidationError, "no ranks for tuple " + raw_name(t));
  if (s < 0 || s > top) return 0;
  return it->second.at(static_cast<std::size_t>(s));
}

RMatrix ComplexOnNerve::differential(const CoverNerve& nerve, const Tuple& t, int s) const {
  const ChartPtr chart = nerve.chart(t);
  auto it = differentials.find(t);
  if (s < 1 || s > top || it == differentials.end()) return zero_matrix(chart, rank(t, s - 1), rank(t, s));
  return it->second.at(static_cast<std::size_t>(s - 1));
}

RMatrix ComplexOnNerve::transition(const CoverNerve& nerve, const Tuple& t, int i, int s) const {
  auto it = cofaces.find({t, i});
  if (it == cofaces.end()) {
    fail(ErrorCode::MissingTransition, "no transition for coface " + std::to_string(i) + " of " + nerve.tuple_name(t));
  }
  if (s < 0 || s > top) return zero_matrix(nerve.chart(t), 0, 0);
  return it->second.at(static_cast<std::size_t>(s));
}

RMatrix ComplexOnNerve::transition_from(const CoverNerve& nerve, const Tuple& t, unsigned mask, int s) const {
  const unsigned full = full_mask(t);
  if (mask == full) return identity_matrix(nerve.chart(t), rank(t, s));
  int m = static_cast<int>(t.size()) - 1;
  while (mask & (1U << m)) --m;
  const Tuple face = omit(t, m);
  const RMatrix inner = transition_from(nerve, face, drop_position(mask, m), s);
  return transition(nerve, t, m, s) * restrict_matrix(inner, nerve.restriction(face, t));
}

void validate_complex(const CoverNerve& nerve, const ComplexOnNerve& cx) {
  if (cx.top < 0) fail(ErrorCode::ValidationError, "negative top degree");
  const auto top = static_cast<std::size_t>(cx.top);
  for (const auto& [t, r] : cx.ranks) {
    if (!nerve.contains(t)) fail(ErrorCode::ValidationError, "ranks given for tuple " + raw_name(t) + " outside the nerve");
    if (r.size() != top + 1) fail(ErrorCode::ValidationError, "tuple " + nerve.tuple_name(t) + " needs " + std::to_string(top + 1) + " ranks");
  }
  for (const auto& t : nerve.tuples()) {
    if (!cx.ranks.count(t)) fail(ErrorCode::ValidationError, "no ranks for tuple " + nerve.tuple_name(t));
  }
  for (const auto& [t, ds] : cx.differentials) {
    if (!nerve.contains(t)) fail(ErrorCode::ValidationError, "differential given for tuple " + raw_name(t) + " outside the nerve");
    if (ds.size() != top) fail(ErrorCode::ValidationError, "tuple " + nerve.tuple_name(t) + " needs " + std::to_string(top) + " differentials");
    for (int s = 1; s <= cx.top; ++s) {
      expect_shape(ds[static_cast<std::size_t>(s - 1)], cx.rank(t, s - 1), cx.rank(t, s), nerve.chart(t),
                   "differential d" + std::to_string(s) + " on " + nerve.tuple_name(t));
    }
    for (int s = 2; s <= cx.top; ++s) {
      if (!(cx.differential(nerve, t, s - 1) * cx.differential(nerve, t, s)).is_zero()) {
        fail(ErrorCode::ValidationError, "d" + std::to_string(s - 1) + " o d" + std::to_string(s) + " != 0 on " + nerve.tuple_name(t));
      }
    }
  }
  for (const auto& [key, ms] : cx.cofaces) {
    const auto& [t, i] = key;
    if (!nerve.contains(t) || t.size() < 2 || i < 0 || i >= static_cast<int>(t.size())) {
      fail(ErrorCode::ValidationError, "transition given for coface " + std::to_string(i) + " of " + raw_name(t) + " outside the nerve");
    }
    if (ms.size() != top + 1) fail(ErrorCode::ValidationError, "transition " + std::to_string(i) + " of " + nerve.tuple_name(t) + " needs one matrix per degree");
  }
  for (const auto& t : nerve.tuples()) {
    if (t.size() < 2) continue;
    const ChartPtr chart = nerve.chart(t);
    for (int i = 0; i < static_cast<int>(t.size()); ++i) {
      const auto [face, res] = nerve.face(t, i);
      const std::string what = "transition " + std::to_string(i) + " of " + nerve.tuple_name(t);
      if (!cx.cofaces.count({t, i})) fail(ErrorCode::ValidationError, "missing " + what);
      for (int s = 0; s <= cx.top; ++s) {
        expect_shape(cx.transition(nerve, t, i, s), cx.rank(t, s), cx.rank(face, s), chart, what + " in degree " + std::to_string(s));
      }
      for (int s = 1; s <= cx.top; ++s) {
        const RMatrix lhs = cx.differential(nerve, t, s) * cx.transition(nerve, t, i, s);
        const RMatrix rhs = cx.transition(nerve, t, i, s - 1) * restrict_matrix(cx.differential(nerve, face, s), res);
        if (lhs != rhs) fail(ErrorCode::ValidationError, what + " does not commute with d" + std::to_string(s));
      }
    }
    // f^j f^i = f^i f^{j-1} for i < j, read on transitions.
    const int p = static_cast<int>(t.size()) - 1;
    for (int j = 0; j <= p && p >= 2; ++j) {
      for (int i = 0; i < j; ++i) {
        const Tuple fj = omit(t, j);
        const Tuple fi = omit(t, i);
        for (int s = 0; s <= cx.top; ++s) {
          const RMatrix a = cx.transition(nerve, t, j, s) * restrict_matrix(cx.transition(nerve, fj, i, s), nerve.restriction(fj, t));
          const RMatrix b = cx.transition(nerve, t, i, s) * restrict_matrix(cx.transition(nerve, fi, j - 1, s), nerve.restriction(fi, t));
          if (a != b) {
            fail(ErrorCode::ValidationError, "transitions of " + nerve.tuple_name(t) + " are not functorial at faces " +
                                                 std::to_string(i) + "," + std::to_string(j));
          }
        }
      }
    }
  }
}

std::vector<std::size_t> elementary_ranks(const std::vector<ElementarySummand>& summands, int top) {
  std::vector<std::size_t> r(static_cast<std::size_t>(std::max(top, 0)) + 1, 0);
  for (const auto& e : summands) {
    if (e.shift < 1 || e.shift > top) {
      fail(ErrorCode::ValidationError, "elementary summand shift " + std::to_string(e.shift) + " outside 1.." + std::to_string(top));
    }
    r[static_cast<std::size_t>(e.shift)] += e.rank;
    r[static_cast<std::size_t>(e.shift - 1)] += e.rank;
  }
  return r;
}

RMatrix elementary_differential(const ChartPtr& chart, const std::vector<ElementarySummand>& summands, int s) {
  int top = 0;
  for (const auto& e : summands) top = std::max(top, e.shift);
  const auto r = elementary_ranks(summands, std::max(top, s));
  const auto rank_at = [&](int d) { return d < 0 || d >= static_cast<int>(r.size()) ? 0 : r[static_cast<std::size_t>(d)]; };
  RMatrix d = zero_matrix(chart, rank_at(s - 1), rank_at(s));
  std::size_t row = 0;
  std::size_t col = 0;
  for (const auto& e : summands) {
    if (e.shift == s) {
      for (std::size_t k = 0; k < e.rank; ++k) d(row + k, col + k) = RatFunc(chart, 1);
    }
    if (e.shift == s || e.shift == s + 1) col += e.rank;
    if (e.shift == s - 1 || e.shift == s) row += e.rank;
  }
  return d;
}

Splitting splitting(const CoverNerve& nerve, const ComplexOnNerve& cx, const GreenStructure& gs, const Tuple& t,
                    unsigned mask) {
  Splitting out;
  if (mask == full_mask(t)) {
    for (int s = 0; s <= cx.top; ++s) out.iso.push_back(identity_matrix(nerve.chart(t), cx.rank(t, s)));
    return out;
  }
  auto it = gs.splittings.find({t, mask});
  if (it != gs.splittings.end()) return it->second;
  for (int s = 0; s <= cx.top; ++s) {
    const RMatrix m = cx.transition_from(nerve, t, mask, s);
    if (!is_invertible(m)) {
      fail(ErrorCode::MissingGreenStructure, "no splitting of " + nerve.tuple_name(t) + " against " +
                                                 nerve.tuple_name(sub_tuple(t, mask)) + " and the transition is not invertible");
    }
    out.iso.push_back(inverse(m));
  }
  return out;
}

namespace {

void check_splitting(const CoverNerve& nerve, const ComplexOnNerve& cx, const Tuple& t, unsigned mask,
                     const Splitting& sp, CheckReport& rep) {
  const Tuple sub = sub_tuple(t, mask);
  const ChartPtr chart = nerve.chart(t);
  const std::string where = nerve.tuple_name(t) + " over " + nerve.tuple_name(sub);
  if (sp.iso.size() != static_cast<std::size_t>(cx.top) + 1) return rep.reject(where + ": splitting needs one matrix per degree");
  for (const auto& e : sp.summands) {
    const int k = nerve.open_index(e.source);
    if (k < 0 || std::find(t.begin(), t.end(), k) == t.end()) {
      return rep.reject(where + ": elementary summand from " + e.source + ", which is not an open of the tuple");
    }
    bool matches = false;
    for (int s = 0; s <= cx.top; ++s) matches = matches || cx.rank({k}, s) == e.rank;
    if (!matches) return rep.reject(where + ": elementary summand of rank " + std::to_string(e.rank) + " is not a local module of " + e.source);
  }
  const auto lr = elementary_ranks(sp.summands, cx.top);
  const Substitution res = nerve.restriction(sub, t);
  for (int s = 0; s <= cx.top; ++s) {
    const auto us = static_cast<std::size_t>(s);
    const std::size_t n = cx.rank(t, s);
    if (cx.rank(sub, s) + lr[us] != n) return rep.reject(where + ": ranks do not add up in degree " + std::to_string(s));
    const RMatrix& a = sp.iso[us];
    if (a.rows() != n || a.cols() != n) return rep.reject(where + ": splitting in degree " + std::to_string(s) + " has shape " + a.shape());
    if (!is_invertible(a)) return rep.reject(where + ": splitting in degree " + std::to_string(s) + " is not an isomorphism");
    const RMatrix incl = a * cx.transition_from(nerve, t, mask, s);
    const RMatrix expect = vstack(identity_matrix(chart, cx.rank(sub, s)), zero_matrix(chart, lr[us], cx.rank(sub, s)));
    if (incl != expect) return rep.reject(where + ": splitting does not restrict to the transition in degree " + std::to_string(s));
    if (s >= 1) {
      const RMatrix split_d = direct_sum(restrict_matrix(cx.differential(nerve, sub, s), res),
                                         elementary_differential(chart, sp.summands, s));
      if (sp.iso[us - 1] * cx.differential(nerve, t, s) != split_d * a) {
        return rep.reject(where + ": splitting does not commute with d" + std::to_string(s));
      }
    }
  }
}

void check_nested(const CoverNerve& nerve, const ComplexOnNerve& cx, const GreenStructure& gs, const Tuple& t,
                  unsigned mb, unsigned mc, CheckReport& rep) {
  const Tuple b = sub_tuple(t, mb);
  const Tuple c = sub_tuple(t, mc);
  const ChartPtr chart = nerve.chart(t);
  const std::string where = nerve.tuple_name(c) + " < " + nerve.tuple_name(b) + " < " + nerve.tuple_name(t);
  const Splitting sab = splitting(nerve, cx, gs, t, mb);
  const Splitting sac = splitting(nerve, cx, gs, t, mc);
  const Splitting sbc = splitting(nerve, cx, gs, b, compress_mask(mc, mb));
  const Substitution res = nerve.restriction(b, t);
  const auto lab = elementary_ranks(sab.summands, cx.top);
  const auto lac = elementary_ranks(sac.summands, cx.top);
  const auto lbc = elementary_ranks(sbc.summands, cx.top);
  auto given = gs.cocycles.find({t, mb, mc});
  std::vector<RMatrix> iotas;
  std::vector<RMatrix> pis;
  for (int s = 0; s <= cx.top; ++s) {
    const auto us = static_cast<std::size_t>(s);
    const std::size_t rc = cx.rank(c, s);
    const RMatrix x = sac.iso[us] * cx.transition_from(nerve, t, mb, s) * inverse(restrict_matrix(sbc.iso[us], res));
    if (x.block(0, 0, rc, rc) != identity_matrix(chart, rc) || !x.block(0, rc, rc, lbc[us]).is_zero() ||
        !x.block(rc, 0, lac[us], rc).is_zero()) {
      return rep.reject(where + ": left square of the splitting diagram does not commute in degree " + std::to_string(s));
    }
    const RMatrix iota = x.block(rc, rc, lac[us], lbc[us]);
    const std::size_t rb = cx.rank(b, s);
    const RMatrix y = sab.iso[us].block(rb, 0, lab[us], cx.rank(t, s)) * inverse(sac.iso[us]);
    if (!y.block(0, 0, lab[us], rc).is_zero()) {
      return rep.reject(where + ": right square of the splitting diagram does not commute in degree " + std::to_string(s));
    }
    iotas.push_back(iota);
    pis.push_back(y.block(0, rc, lab[us], lac[us]));
  }
  for (int s = 0; s <= cx.top; ++s) {
    const auto us = static_cast<std::size_t>(s);
    const RMatrix& iota = iotas[us];
    const RMatrix& pi = pis[us];
    const std::string deg = " in degree " + std::to_string(s);
    if (given != gs.cocycles.end()) {
      if (given->second.size() != iotas.size()) return rep.reject(where + ": cocycle needs one matrix per degree");
      const RMatrix& cm = given->second[us];
      if (cm.rows() != lac[us] || cm.cols() != lac[us] || !is_invertible(cm)) {
        return rep.reject(where + ": cocycle is not an isomorphism" + deg);
      }
      const RMatrix ci = inverse(cm);
      if (ci.block(0, 0, lac[us], lbc[us]) != iota || cm.block(lbc[us], 0, lab[us], lac[us]) != pi) {
        return rep.reject(where + ": cocycle disagrees with the splittings" + deg);
      }
      if (s >= 1) {
        const RMatrix dsum = direct_sum(restrict_matrix(elementary_differential(nerve.chart(b), sbc.summands, s), res),
                                        elementary_differential(chart, sab.summands, s));
        if (given->second[us - 1] * elementary_differential(chart, sac.summands, s) != dsum * cm) {
          return rep.reject(where + ": cocycle does not commute with d" + std::to_string(s));
        }
      }
    } else {
      if (lac[us] != lbc[us] + lab[us]) return rep.reject(where + ": complement ranks do not add up" + deg);
      if (!(pi * iota).is_zero()) return rep.reject(where + ": complements are not exact" + deg);
      if (!left_inverse(iota) || !left_inverse(pi.transpose())) {
        return rep.reject(where + ": complements do not split" + deg);
      }
    }
  }
}

}  // namespace

CheckReport check_green(const CoverNerve& nerve, const ComplexOnNerve& cx, const GreenStructure& gs) {
  CheckReport rep("green");
  for (const auto& [key, sp] : gs.splittings) {
    if (!nerve.contains(key.first) || key.second == 0 || key.second >= full_mask(key.first)) {
      rep.reject("splitting listed for " + raw_name(key.first) + " with an invalid mask");
      return rep;
    }
  }
  std::size_t splittings = 0;
  std::size_t nested = 0;
  for (const auto& t : nerve.tuples()) {
    if (t.size() < 2) continue;
    const unsigned full = full_mask(t);
    for (unsigned mask = 1; mask < full; ++mask) {
      try {
        check_splitting(nerve, cx, t, mask, splitting(nerve, cx, gs, t, mask), rep);
      } catch (const Error& e) {
        rep.reject(nerve.tuple_name(t) + " over " + nerve.tuple_name(sub_tuple(t, mask)) + ": " + e.what());
      }
      if (!rep.passed) return rep;
      ++splittings;
    }
    for (unsigned mb = 1; mb < full; ++mb) {
      for (unsigned mc = (mb - 1) & mb; mc > 0; mc = (mc - 1) & mb) {
        try {
          check_nested(nerve, cx, gs, t, mb, mc, rep);
        } catch (const Error& e) {
          rep.reject(nerve.tuple_name(t) + ": " + e.what());
        }
        if (!rep.passed) return rep;
        ++nested;
      }
    }
  }
  rep.note(std::to_string(splittings) + " splittings are isomorphisms of complexes over the transitions");
  rep.note(std::to_string(nested) + " nested triples satisfy the cocycle and diagram conditions");
  rep.note("cofaces are split injective with elementary cokernels");
  return rep;
}

CheckReport check_cartesian(const CoverNerve& nerve, const ComplexOnNerve& cx, bool strong) {
  CheckReport rep(strong ? "strongly-cartesian" : "cartesian");
  std::size_t maps = 0;
  for (const auto& t : nerve.tuples()) {
    if (t.size() < 2) continue;
    const ChartPtr chart = nerve.chart(t);
    for (int i = 0; i < static_cast<int>(t.size()); ++i) {
      const auto [face, res] = nerve.face(t, i);
      const std::string where = "coface " + std::to_string(i) + " of " + nerve.tuple_name(t);
      if (strong) {
        for (int s = 0; s <= cx.top; ++s) {
          if (!is_invertible(cx.transition(nerve, t, i, s))) {
            rep.reject(where + " in degree " + std::to_string(s));
            return rep;
          }
        }
        ++maps;
        continue;
      }
      // Cone_n = E_face^{n-1} (+) E_t^n with d(x, y) = (-d x, f x + d y).
      auto cone_dim = [&](int n) { return cx.rank(face, n - 1) + cx.rank(t, n); };
      auto cone_d = [&](int n) {
        RMatrix d = zero_matrix(chart, cone_dim(n - 1), cone_dim(n));
        const std::size_t a = cx.rank(face, n - 2);
        if (n - 1 >= 1) d.set_block(0, 0, -restrict_matrix(cx.differential(nerve, face, n - 1), res));
        if (n - 1 >= 0 && n - 1 <= cx.top) d.set_block(a, 0, cx.transition(nerve, t, i, n - 1));
        if (n >= 1) d.set_block(a, cx.rank(face, n - 1), cx.differential(nerve, t, n));
        return d;
      };
      for (int n = 0; n <= cx.top + 1; ++n) {
        const std::size_t r_in = n + 1 <= cx.top + 1 ? matrix_rank(cone_d(n + 1)) : 0;
        const std::size_t r_out = n >= 1 ? matrix_rank(cone_d(n)) : 0;
        if (r_in + r_out != cone_dim(n)) {
          rep.reject(where + " is not a quasi-isomorphism (cone homology in degree " + std::to_string(n) + ")");
          return rep;
        }
      }
      ++maps;
    }
  }
  rep.note(std::to_string(maps) + (strong ? " coface transitions are isomorphisms" : " coface transitions are quasi-isomorphisms"));
  return rep;
}

std::map<Tuple, RMatrix> comparison_map(const CoverNerve& nerve, const ComplexOnNerve& cx, int s, int p, int i) {
  if (p < 1 || i < 0 || i > p) fail(ErrorCode::IndexOutOfRange, "comparison map index");
  std::map<Tuple, RMatrix> out;
  for (const auto& t : nerve.tuples_at(p)) out.emplace(t, cx.transition(nerve, t, i, s));
  return out;
}

BundleOnNerve pullback_global(const CoverNerve& nerve, std::size_t rank,
                              const std::map<std::pair<int, int>, RMatrix>& transitions) {
  BundleOnNerve b;
  b.top = 0;
  for (const auto& t : nerve.tuples()) {
    b.ranks.emplace(t, std::vector<std::size_t>{rank});
    if (t.size() < 2) continue;
    const ChartPtr chart = nerve.chart(t);
    for (int i = 0; i < static_cast<int>(t.size()); ++i) {
      RMatrix m = identity_matrix(chart, rank);
      auto it = transitions.find({t[0], t[1]});
      if (i == 0 && t[0] != t[1] && it != transitions.end()) {
        m = restrict_matrix(it->second, nerve.set_restriction(support({t[0], t[1]}), support(t)));
      }
      b.cofaces.emplace(std::make_pair(t, i), std::vector<RMatrix>{m});
    }
  }
  return b;
}

}  // namespace chernweil
