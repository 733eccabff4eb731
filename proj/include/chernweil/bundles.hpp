#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "chernweil/linalg.hpp"
#include "chernweil/nerve.hpp"
#include "chernweil/report.hpp"

namespace chernweil {

/// Sub-tuple of `t` at the positions set in `mask`.
Tuple sub_tuple(const Tuple& t, unsigned mask);
/// Positions of `inner` counted inside `outer`; inner must be a subset of outer.
unsigned compress_mask(unsigned inner, unsigned outer);
unsigned full_mask(const Tuple& t);

/// Complex of vector bundles on the nerve, internal degrees 0..top, with the
/// differential lowering degree: d_s maps E^s to E^{s-1}. Every tuple carries
/// its ranks and differentials in a chosen frame; (tuple, i) carries the
/// coface transition E(f^i) from the face's bundle, restricted, into the
/// tuple's bundle. A single bundle is the case top = 0.
struct ComplexOnNerve {
  int top = 0;
  std::map<Tuple, std::vector<std::size_t>> ranks;
  /// Entry s-1 holds d_s, of shape rank(s-1) x rank(s). Absent means zero.
  std::map<Tuple, std::vector<RMatrix>> differentials;
  /// One matrix per internal degree, of shape rank(t) x rank(face).
  std::map<std::pair<Tuple, int>, std::vector<RMatrix>> cofaces;

  std::size_t rank(const Tuple& t, int s) const;
  RMatrix differential(const CoverNerve& nerve, const Tuple& t, int s) const;
  RMatrix transition(const CoverNerve& nerve, const Tuple& t, int i, int s) const;
  /// Composite of coface transitions from the sub-tuple at `mask` into t.
  RMatrix transition_from(const CoverNerve& nerve, const Tuple& t, unsigned mask, int s) const;
};

using BundleOnNerve = ComplexOnNerve;

/// Shapes, charts, d o d = 0, transitions commuting with d, and functoriality
/// of composite cofaces. Throws ValidationError naming the first offender.
void validate_complex(const CoverNerve& nerve, const ComplexOnNerve& cx);

/// One summand (0 -> N -> N -> 0) with N free of rank `rank`, occupying
/// internal degrees `shift` (upper leg) and shift-1 (lower leg). `source` names
/// the open whose local module N is a copy of.
struct ElementarySummand {
  int shift = 1;
  std::size_t rank = 0;
  std::string source;
  friend bool operator==(const ElementarySummand&, const ElementarySummand&) = default;
};

std::vector<std::size_t> elementary_ranks(const std::vector<ElementarySummand>& summands, int top);
/// Identity on each summand from its upper to its lower leg, zero elsewhere.
RMatrix elementary_differential(const ChartPtr& chart, const std::vector<ElementarySummand>& summands, int s);

/// E_t = E_sub|t (+) L with L elementary: `iso[s]` maps E_t^s onto
/// E_sub^s (+) L^s, sub-bundle coordinates first.
struct Splitting {
  std::vector<ElementarySummand> summands;
  std::vector<RMatrix> iso;
  friend bool operator==(const Splitting&, const Splitting&) = default;
};

/// Splittings keyed by (tuple, mask of kept positions); cocycle isomorphisms
/// L_{a,c} -> L_{b,c}|a (+) L_{a,b} keyed by (tuple, mask of b, mask of c).
/// Unlisted splittings default to L = 0 with iso the inverse transition,
/// which exists exactly when the transition is invertible on the chart.
struct GreenStructure {
  std::map<std::pair<Tuple, unsigned>, Splitting> splittings;
  std::map<std::tuple<Tuple, unsigned, unsigned>, std::vector<RMatrix>> cocycles;
};

/// The splitting of t against its sub-tuple at `mask`, defaulted when
/// unlisted. Throws MissingGreenStructure when no splitting can be formed.
Splitting splitting(const CoverNerve& nerve, const ComplexOnNerve& cx, const GreenStructure& gs, const Tuple& t,
                    unsigned mask);

/// Splitting isomorphisms of complexes compatible with the transitions,
/// elementary complements, the cocycle condition on complements, the
/// commuting diagram relating three nested tuples, and injective cofaces with
/// elementary cokernels.
CheckReport check_green(const CoverNerve& nerve, const ComplexOnNerve& cx, const GreenStructure& gs);

/// Every coface transition is a quasi-isomorphism, decided by acyclicity of
/// its mapping cone over the fraction field; `strong` asks for isomorphisms
/// on the chart in every internal degree instead.
CheckReport check_cartesian(const CoverNerve& nerve, const ComplexOnNerve& cx, bool strong);

/// The i-th comparison map at simplicial degree p in internal degree s, one
/// matrix per tuple of length p+1. Its t-independence is what lets it act on
/// forms over the product with the (p-1)-simplex.
std::map<Tuple, RMatrix> comparison_map(const CoverNerve& nerve, const ComplexOnNerve& cx, int s, int p, int i);

/// Pullback of a global bundle of the given rank. Tuples are framed by their
/// first open; `transitions[{a, b}]` expresses the frame of b in that of a on
/// the chart of {a, b}. Missing pairs use the identity.
BundleOnNerve pullback_global(const CoverNerve& nerve, std::size_t rank,
                              const std::map<std::pair<int, int>, RMatrix>& transitions = {});

}  // namespace chernweil
