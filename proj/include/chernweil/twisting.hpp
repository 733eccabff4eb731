#pragma once

#include <map>
#include <vector>

#include "chernweil/linalg.hpp"
#include "chernweil/nerve.hpp"
#include "chernweil/report.hpp"

namespace chernweil {

/// Bounded complexes (V_a, d_a) of free modules, one per open, in cohomological
/// degrees lo..hi with d raising degree. Opens left out carry the zero complex.
struct LocalComplexFamily {
  int lo = 0;
  int hi = 0;
  /// Entry i-lo is the rank in degree i.
  std::map<int, std::vector<std::size_t>> ranks;
  /// Entry i-lo is d^i : V^i -> V^{i+1}, for i in lo..hi-1, on the open's chart.
  std::map<int, std::vector<RMatrix>> differentials;

  std::size_t rank(int open, int deg) const;
  RMatrix differential(const CoverNerve& nerve, int open, int deg) const;
};

/// Shapes, charts and d o d = 0. Throws ValidationError.
void validate_local_complexes(const CoverNerve& nerve, const LocalComplexFamily& v);

/// A degree-q map V_{last} -> V_{first} over a tuple's chart: entry i-lo is the
/// block V_last^i -> V_first^{i+q}, empty when either side is out of range.
using GradedMap = std::vector<RMatrix>;

/// An element of total degree n in the deleted Cech complex of graded
/// endomorphisms: the component on a (k+1)-tuple has internal degree n-k.
struct EndoCochain {
  int total_degree = 1;
  std::map<Tuple, GradedMap> components;
  friend bool operator==(const EndoCochain&, const EndoCochain&) = default;
};

using TwistingCochain = EndoCochain;

GradedMap zero_graded(const CoverNerve& nerve, const LocalComplexFamily& v, const Tuple& t, int q);
GradedMap identity_graded(const CoverNerve& nerve, const LocalComplexFamily& v, const Tuple& t);
/// d of the tuple's single open, on its chart.
GradedMap local_differential(const CoverNerve& nerve, const LocalComplexFamily& v, const Tuple& t);
bool is_zero(const GradedMap& m);

/// Blocks have the shapes dictated by the tuple's end opens and degree q.
/// Throws ShapeMismatch naming the tuple.
void check_graded_shape(const CoverNerve& nerve, const LocalComplexFamily& v, const Tuple& t, int q, const GradedMap& m);

/// Components of level p only: sum over i = 1..p of (-1)^i times the
/// component on the tuple with position i removed, restricted. Produces
/// every tuple of level p+1. Throws MissingComponent.
EndoCochain deleted_cech_differential(const CoverNerve& nerve, const LocalComplexFamily& v, const EndoCochain& c, int p);

/// (a.b) on (a_0..a_p) = sum_j (-1)^{q_a (p-j)} a_{a_0..a_j} o b_{a_j..a_p}, with
/// q_a the internal degree of the a factor: the Koszul sign of moving b's Cech
/// degree past it. The level-one part of the Maurer-Cartan defect is then
/// a d - d a.
EndoCochain cochain_product(const CoverNerve& nerve, const LocalComplexFamily& v, const EndoCochain& a,
                            const EndoCochain& b);

/// delta-hat a + a.a on every tuple of the nerve.
EndoCochain mc_defect(const CoverNerve& nerve, const LocalComplexFamily& v, const TwistingCochain& a);

/// Identity on repeated pairs, local differentials in level zero, vanishing on
/// tuples with two equal neighbours from level two, chain maps in level one,
/// then the Maurer-Cartan equation. The first offending tuple is located.
CheckReport mc_check(const CoverNerve& nerve, const LocalComplexFamily& v, const TwistingCochain& a);

}  // namespace chernweil
