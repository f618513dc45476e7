#pragma once

#include "relaylab/analytic.hpp"
#include "relaylab/types.hpp"

namespace relaylab::analytic {

// Cancellation-safe oracle path: averages the *exact* conditional PER against
// the relevant fading density by adaptive Gauss-Kronrod integration. Works for
// any packet length (no expansion bound); absolute tolerance 1e-8 on the
// result. Throws NumericalError with diagnostics if the integrator cannot
// reach that tolerance.

// Marginal density of the i-th smallest of n i.i.d. exponential SNRs.
double ordered_snr_pdf(double x, int i, int n, double gamma_bar);

// E[PER_exact] against a plain exponential SNR.
double per_quadrature_rayleigh(int packet_len, double gamma_bar);

// Same, averaging the two-exponential approximation instead (the stable
// route for packet lengths beyond the expansion bound).
double per_quadrature_rayleigh_approx(int packet_len, double gamma_bar);

// E[PER_exact(gamma_(i))] for the i-th weakest direct packet.
double per_quadrature_ordered(int i, const FrameConfig& cfg, double gamma_sd);

// E[PER_exact(gamma_(i) + gamma_R)] for the AF-relayed i-th weakest packet
// (nested integration over the relay links).
double per_quadrature_af(int i, const FrameConfig& cfg, const LinkBudget& budget);

// DF decomposition with exact per-link PERs.
double per_quadrature_df(int i, const FrameConfig& cfg, const LinkBudget& budget);

// Frame-average assembled from the branches above.
double per_total_quadrature(RelayMode mode, const FrameConfig& cfg, const LinkBudget& budget,
                            SumBound bound = SumBound::full);

}  // namespace relaylab::analytic
