#pragma once

#include <vector>

#include "chernweil/cech.hpp"
#include "chernweil/connections.hpp"
#include "chernweil/report.hpp"

namespace chernweil {

/// tr(kappa^k) on every tuple. Curvature entries are even, so the trace does
/// not depend on the order of the factors.
FormFamily invariant_trace_power(const EndoFamily& kappa, int k);

/// The k-th elementary symmetric function of the eigenvalues, from the trace
/// powers by Newton's identities.
FormFamily elementary_symmetric(const EndoFamily& kappa, int k);

enum class Invariant { TracePower, Elementary };

/// Sum over internal degrees s of (-1)^s times the invariant of the curvature
/// of the s-th connection, fibre-integrated into total degree 2k.
CechCochain chern_representative(const CoverNerve& nerve, const std::vector<SimplicialConnection>& by_degree, int k,
                                 Invariant inv = Invariant::TracePower);

/// D c = 0, locating the first nonzero component of D c.
CheckReport check_cocycle(const CoverNerve& nerve, const CechCochain& c);

}  // namespace chernweil
