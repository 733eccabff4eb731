#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "chernweil/bundles.hpp"
#include "chernweil/forms.hpp"
#include "chernweil/report.hpp"

namespace chernweil {

/// Connection matrices A of d + A, one per tuple, with entries of total
/// degree 1 on chart x Delta^p.
using SimplicialConnection = std::map<Tuple, FMatrix>;
/// Endomorphism-valued forms, one square matrix per tuple.
using EndoFamily = std::map<Tuple, FMatrix>;
/// Connection matrices on E^0 over single opens, keyed by open index, as
/// base 1-forms on the open's chart. Opens left out carry d.
using LocalConnections = std::map<int, FMatrix>;

/// f^{-1} A f + f^{-1} df: the connection d + A on the target pulled back
/// along the isomorphism f. Throws NotInvertibleOnChart.
FMatrix pullback_connection(const RMatrix& f, const FMatrix& a);

/// dA + A ^ A.
FMatrix curvature(const FMatrix& a);
EndoFamily curvature(const SimplicialConnection& c);

/// df + A_tgt f - f A_src; zero exactly when f intertwines d + A_src and d + A_tgt.
FMatrix true_morphism_defect(const FMatrix& f, const FMatrix& a_src, const FMatrix& a_tgt);
CheckReport check_true_morphism(const FMatrix& f, const FMatrix& a_src, const FMatrix& a_tgt);

/// Local connections checked against the ranks of E^s on single opens.
void validate_locals(const CoverNerve& nerve, const ComplexOnNerve& cx, int s, const LocalConnections& locals);

/// Generated in degree zero: on a tuple (a_0..a_p), sum_i t_i times the local
/// connection of a_i transported through the splitting against (a_i), with
/// the trivial connection on the elementary complement.
SimplicialConnection barycentric(const CoverNerve& nerve, const ComplexOnNerve& cx, const GreenStructure& gs, int s,
                                 const LocalConnections& locals);

/// Each comparison map is a true morphism from the restricted face connection
/// to the coface pullback of the tuple's connection.
CheckReport check_simplicial(const CoverNerve& nerve, const ComplexOnNerve& cx, int s, const SimplicialConnection& c);

/// Endomorphism-valued gluing: f w_face|t = (coface pullback of w_t) f.
CheckReport check_endomorphism_gluing(const CoverNerve& nerve, const ComplexOnNerve& cx, int s, const EndoFamily& w);

/// Sub-bundle inclusions for the comparison map of coface i of a tuple:
/// `source` into the face's bundle (face chart), `target` into the tuple's.
struct AdmissibilityWitness {
  RMatrix source;
  RMatrix target;
  friend bool operator==(const AdmissibilityWitness&, const AdmissibilityWitness&) = default;
};
using WitnessFamily = std::map<std::pair<Tuple, int>, AdmissibilityWitness>;

/// Green-complement witnesses for coface i of t against position j != i:
/// source is the complement of the face against the open at j, target the
/// complement of t against the same open.
AdmissibilityWitness green_witness(const CoverNerve& nerve, const ComplexOnNerve& cx, const GreenStructure& gs, int s,
                                   const Tuple& t, int i, int j);

/// Green witnesses with j the least position other than i.
WitnessFamily canonical_witnesses(const CoverNerve& nerve, const ComplexOnNerve& cx, const GreenStructure& gs, int s);

/// Green witnesses with, per coface, the least j that satisfies the criterion
/// for c; the least j is kept where none does, so the failure stays visible.
/// From simplicial degree 2 on the choice of j matters.
WitnessFamily green_witnesses(const CoverNerve& nerve, const ComplexOnNerve& cx, const GreenStructure& gs, int s,
                              const SimplicialConnection& c);

/// Nullopt when the column span of w is preserved by d + a with flat induced
/// connection; otherwise what fails.
std::optional<std::string> flat_subbundle_defect(const FMatrix& a, const RMatrix& w);

/// The criterion below for one coface; nullopt when it holds.
std::optional<std::string> coface_admissibility_defect(const CoverNerve& nerve, const ComplexOnNerve& cx, int s,
                                                       const SimplicialConnection& c, const Tuple& t, int i,
                                                       const AdmissibilityWitness& w);

/// Witness criterion: both witnesses flat for the pulled-back connections,
/// the comparison map carries source into target, and induces an isomorphism
/// of quotients on the chart. Throws WitnessShapeMismatch on malformed witnesses.
CheckReport check_admissible(const CoverNerve& nerve, const ComplexOnNerve& cx, int s, const SimplicialConnection& c,
                             const WitnessFamily& witnesses);

/// c2 - c1 glues as an endomorphism-valued 1-form and is admissible for the
/// witnesses: it kills both witnesses and the quotient maps are isomorphisms.
CheckReport check_compatible_difference(const CoverNerve& nerve, const ComplexOnNerve& cx, int s,
                                        const SimplicialConnection& c1, const SimplicialConnection& c2,
                                        const WitnessFamily& witnesses);

}  // namespace chernweil
