#pragma once

#include <functional>
#include <random>

#include "chernweil/forms.hpp"
#include "chernweil/linalg.hpp"

namespace testsupport {

using namespace chernweil;

inline Poly random_poly(std::mt19937& rng, std::size_t nvars, int max_deg, int terms = 3) {
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<int> deg(0, max_deg);
  Poly p(nvars);
  for (int n = 0; n < terms; ++n) {
    Exponents e(nvars, 0);
    int budget = deg(rng);
    for (std::size_t k = 0; k < nvars && budget > 0; ++k) {
      const int take = k + 1 == nvars ? budget : std::uniform_int_distribution<int>(0, budget)(rng);
      e[k] = take;
      budget -= take;
    }
    p.add_term(e, Rational(coef(rng), std::uniform_int_distribution<int>(1, 3)(rng)));
  }
  return p;
}

/// Numerator of degree <= 2; denominator a product of declared invertibles.
inline RatFunc random_ratfunc(std::mt19937& rng, const ChartPtr& chart, bool allow_den = true) {
  Poly den = Poly::constant(chart->nvars(), 1);
  if (allow_den) {
    for (const auto& u : chart->invertibles()) den = den * pow(u, static_cast<unsigned>(rng() % 2));
  }
  return ratfunc_normalize(random_poly(rng, chart->nvars(), 2), den, chart);
}

inline std::uint32_t random_mask(std::mt19937& rng, int width, int count) {
  std::vector<int> idx(static_cast<std::size_t>(width));
  for (int k = 0; k < width; ++k) idx[static_cast<std::size_t>(k)] = k;
  std::shuffle(idx.begin(), idx.end(), rng);
  std::uint32_t m = 0;
  for (int k = 0; k < count; ++k) m |= 1U << static_cast<unsigned>(idx[static_cast<std::size_t>(k)]);
  return m;
}

/// Homogeneous form of total degree `degree` on chart x Delta^p, t-degree <= max_t.
inline Form random_form(std::mt19937& rng, const ChartPtr& chart, int p, int degree, int max_t = 3, int terms = 3) {
  const int nv = static_cast<int>(chart->nvars());
  Form w(chart, p);
  for (int n = 0; n < terms; ++n) {
    const int lo = std::max(0, degree - p);
    const int hi = std::min(nv, degree);
    if (lo > hi) return w;
    const int b = std::uniform_int_distribution<int>(lo, hi)(rng);
    FormKey key{std::vector<int>(static_cast<std::size_t>(p), 0), random_mask(rng, nv, b), random_mask(rng, p, degree - b)};
    int budget = p ? std::uniform_int_distribution<int>(0, max_t)(rng) : 0;
    while (budget-- > 0) key.t[static_cast<std::size_t>(rng() % static_cast<unsigned>(p))] += 1;
    w.add_term(key, random_ratfunc(rng, chart));
  }
  return w;
}

inline Form random_base_form(std::mt19937& rng, const ChartPtr& chart, int degree) {
  return random_form(rng, chart, 0, degree, 0, 2);
}

inline std::uint32_t tuple_seed(const Tuple& t, int tag, std::uint32_t seed) {
  std::uint32_t h = seed * 2654435761U + static_cast<std::uint32_t>(tag) * 40503U;
  for (int k : t) h = (h ^ static_cast<std::uint32_t>(k + 1)) * 16777619U;
  return h;
}

/// Polynomial in barycentric coordinates at the given positions of Delta^p that
/// vanishes on every face missing one of them, with `j` dt-factors from the
/// same positions. Coefficients depend only on (tag, seed) so that the same
/// piece appears wherever the underlying sub-tuple does.
inline Form face_supported_piece(const ChartPtr& chart, int p, const std::vector<int>& positions, int j,
                                 std::uint32_t seed) {
  std::mt19937 rng(seed);
  const int k = static_cast<int>(positions.size()) - 1;
  Form out(chart, p);
  if (j > k) return out;
  auto t = [&](int a) { return Form::t(chart, p, positions[static_cast<std::size_t>(a)]); };
  auto dt = [&](int a) { return Form::dt(chart, p, positions[static_cast<std::size_t>(a)]); };
  auto q = [&](int max_deg) {
    Form r = Form::constant(chart, p, Rational(static_cast<int>(rng() % 5) + 1, static_cast<int>(rng() % 3) + 1));
    const int deg = max_deg > 0 ? static_cast<int>(rng() % static_cast<unsigned>(max_deg + 1)) : 0;
    for (int n = 0; n < deg; ++n) {
      Form f = t(static_cast<int>(rng() % static_cast<unsigned>(k + 1)));
      if (rng() % 2) f = f + Form::constant(chart, p, Rational(static_cast<int>(rng() % 7) - 3));
      r = r * f;
    }
    return r;
  };
  const bool whitney = j == k && (k + 1 > 3 || rng() % 2);
  if (whitney) {
    Form w(chart, p);
    for (int a = 0; a <= k; ++a) {
      Form term = t(a);
      for (int b = 0; b <= k; ++b) {
        if (b != a) term = term * dt(b);
      }
      w += a % 2 ? -term : term;
    }
    return w * q(2);
  }
  if (k + 1 > 3) return out;
  Form prod = Form::constant(chart, p, 1);
  for (int a = 0; a <= k; ++a) prod = prod * t(a);
  std::vector<int> idx(static_cast<std::size_t>(k + 1));
  for (int a = 0; a <= k; ++a) idx[static_cast<std::size_t>(a)] = a;
  std::shuffle(idx.begin(), idx.end(), rng);
  std::sort(idx.begin(), idx.begin() + j);
  for (int a = 0; a < j; ++a) prod = prod * dt(idx[static_cast<std::size_t>(a)]);
  return prod * q(3 - (k + 1));
}

/// A simplicial r-form family on the nerve that satisfies the gluing
/// condition by construction: a sum over sub-tuples of face-supported simplex
/// pieces times random base forms pulled back from the sub-tuple's chart.
inline FormFamily random_glued_family(const CoverNerve& nerve, int r, std::uint32_t seed, int max_p = 3) {
  FormFamily fam;
  for (const auto& alpha : nerve.tuples()) {
    const int p = static_cast<int>(alpha.size()) - 1;
    if (p > max_p) continue;
    const ChartPtr chart = nerve.chart(alpha);
    Form w(chart, p);
    const int n = p + 1;
    for (unsigned mask = 1; mask < (1U << static_cast<unsigned>(n)); ++mask) {
      std::vector<int> positions;
      Tuple sub;
      for (int s = 0; s < n; ++s) {
        if (mask & (1U << static_cast<unsigned>(s))) {
          positions.push_back(s);
          sub.push_back(alpha[static_cast<std::size_t>(s)]);
        }
      }
      if (!nerve.contains(sub)) continue;
      const ChartPtr sub_chart = nerve.chart(sub);
      const Substitution res = nerve.restriction(sub, alpha);
      for (int j = 0; j <= r; ++j) {
        const int base_deg = r - j;
        if (base_deg > static_cast<int>(sub_chart->nvars())) continue;
        std::mt19937 brng(tuple_seed(sub, 100 + j, seed));
        if (brng() % 3 == 0) continue;
        const Form eta = random_base_form(brng, sub_chart, base_deg);
        const Form piece = face_supported_piece(chart, p, positions, j, tuple_seed(sub, j, seed));
        if (piece.is_zero() || eta.is_zero()) continue;
        w += piece * pullback_nerve(eta, res).in_simplex_degree(p);
      }
    }
    fam.emplace(alpha, w);
  }
  return fam;
}

}  // namespace testsupport
