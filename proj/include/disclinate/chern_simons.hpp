#pragma once

#include "disclinate/disclination_field.hpp"
#include "disclinate/grid.hpp"

namespace disclinate {

// Box-field layouts used below:
//   connection: 9 components, index 3*mu + i holds w_mu^i (spatial leg mu, dual internal index i)
//   gauge parameter: 3 components theta^i
//   source: 9 components, index 3*mu + i holds Jt^mu_i = 1/2 eps^{mu nu rho} J_{nu rho i}

/// Discretized integrals of the three Chern-Simons densities (midpoint rule, central
/// differences, zero outside the box).
struct CsTerms {
    double kinetic = 0.0;  ///< sum eps^{mu nu rho} w_mu^i d_nu w_rho^i h^3
    double cubic = 0.0;    ///< sum eps^{mu nu rho} eps_{ijk} w_mu^i w_nu^j w_rho^k h^3
    double source = 0.0;   ///< sum w_mu^i Jt^mu_i h^3
};

/// Weight on the cubic integral that makes the functional gauge invariant and
/// stationary exactly at R = 2 (dw + 1/2 [w, w]).
inline constexpr double kCubicWeight = 1.0 / 6.0;

/// Throws std::invalid_argument if the connection is nonzero on the boundary shell;
/// GridMismatch if source and connection grids differ.
CsTerms cs_terms(const BoxField& omega, const BoxField& source);

/// E = 1/2 kinetic + cubic_weight * cubic - source.
double cs_energy(const BoxField& omega, const BoxField& source, double cubic_weight = kCubicWeight);
double cs_energy(const BoxField& omega);

/// Linearized gauge transformation w -> w + D theta with
/// (D theta)_mu^i = d_mu theta^i + eps_{ijk} w_mu^j theta^k.
BoxField gauge_transform(const BoxField& omega, const BoxField& param);

/// Straight lines along x^3 rasterized as Jt^3_3 = 4 pi n / h^2 on the node column
/// nearest each core.
BoxField rasterize_line_sources(const DisclinationConfig& config, const BoxSpec& spec);

/// (D J)_i = d_mu Jt^mu_i + eps_{ijk} w_mu^j Jt^mu_k on interior nodes (boundary
/// shell left at zero). Pass a zero connection for the plain divergence.
BoxField covariant_divergence(const BoxField& source, const BoxField& omega);

}  // namespace disclinate
