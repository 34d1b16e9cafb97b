#pragma once

#include "netnorm/algorithms.hpp"

namespace netnorm {

/// max over densities of ||Lambda(rho)||_alpha for an entanglement-breaking
/// channel Lambda(rho) = sum_i tr(X_i rho) Y_i, through s1_to_banach with
/// B = S_alpha on the output space. Needs alpha > 1.
EstimateReport eb_channel_max_output_norm(const EBChannel& ch, double alpha, double delta,
                                          const EstimateOptions& opts = {}, const S1Options& extra = {});

/// Estimate x of ||A||_{2->q}^2 with ||A||^2_{2->q} >= x >= ||A||^2_{2->q} - delta ||A||^2_{2->2}
/// (up to the reported slack). Uses X_i = A^dag|i><i|A / ||A||^2 and
/// ||p||_{q/2} as the objective; q = 2 is answered in closed form.
/// `delta_attained` is reported in the units of x.
EstimateReport two_to_q_norm(const CMatrix& a, double q, double delta, const EstimateOptions& opts = {});

/// Estimate x of ||A||_{2->q}^q for even q >= 4 through the (q/2)-party
/// chain sum_i X_i (x) Z_i^{(x) q/2 - 1}, Z_i = A^dag|i><i|A / ||A||^2_{2->inf},
/// scaled by ||A||^2_{2->2} ||A||^{q-2}_{2->inf}. Odd or non-integer q is
/// routed to two_to_q_norm (whose value is then ||A||^2_{2->q}).
EstimateReport two_to_q_even(const CMatrix& a, double q, double delta, const EstimateOptions& opts = {});

}  // namespace netnorm
