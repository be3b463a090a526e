#include "disclinate/chern_simons.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "disclinate/errors.hpp"
#include "disclinate/so3.hpp"

namespace disclinate {

namespace {

void require_layout(const BoxField& f, std::size_t components, const char* what) {
    if (f.components() != components) throw GridMismatch(std::string(what) + ": unexpected component count");
}

void require_aligned(const BoxField& a, const BoxField& b, const char* what) {
    if (!(a.spec() == b.spec())) throw GridMismatch(std::string(what) + ": grids are not aligned");
}

// Zero-padded central difference of component c along axis `axis`.
double central(const BoxField& f, long i, long j, long k, int axis, std::size_t c) {
    const long di = axis == 0;
    const long dj = axis == 1;
    const long dk = axis == 2;
    return (f.padded(i + di, j + dj, k + dk, c) - f.padded(i - di, j - dj, k - dk, c)) / (2.0 * f.spec().spacing);
}

}  // namespace

CsTerms cs_terms(const BoxField& omega, const BoxField& source) {
    require_layout(omega, 9, "cs_terms connection");
    require_layout(source, 9, "cs_terms source");
    require_aligned(omega, source, "cs_terms");
    if (!omega.zero_on_boundary_shell()) {
        throw std::invalid_argument("cs_terms: connection must vanish on the boundary shell");
    }

    const auto& d = omega.spec().dims;
    const double h = omega.spec().spacing;
    const double cell = h * h * h;
    CsTerms terms;
    for (std::size_t k = 0; k < d[2]; ++k)
        for (std::size_t j = 0; j < d[1]; ++j)
            for (std::size_t i = 0; i < d[0]; ++i) {
                Eigen::Matrix3d w;  // w(mu, a) = w_mu^a
                for (int mu = 0; mu < 3; ++mu)
                    for (int a = 0; a < 3; ++a) w(mu, a) = omega(i, j, k, static_cast<std::size_t>(3 * mu + a));

                double kinetic = 0.0;
                for (int mu = 0; mu < 3; ++mu)
                    for (int nu = 0; nu < 3; ++nu)
                        for (int rho = 0; rho < 3; ++rho) {
                            const double e = levi_civita(mu, nu, rho);
                            if (e == 0.0) continue;
                            for (int a = 0; a < 3; ++a) {
                                kinetic += e * w(mu, a) *
                                           central(omega, static_cast<long>(i), static_cast<long>(j),
                                                   static_cast<long>(k), nu, static_cast<std::size_t>(3 * rho + a));
                            }
                        }

                double coupling = 0.0;
                for (std::size_t c = 0; c < 9; ++c) coupling += omega(i, j, k, c) * source(i, j, k, c);

                terms.kinetic += kinetic * cell;
                // eps^{mu nu rho} eps_{ijk} w_mu^i w_nu^j w_rho^k = 6 det(w)
                terms.cubic += 6.0 * w.determinant() * cell;
                terms.source += coupling * cell;
            }
    return terms;
}

double cs_energy(const BoxField& omega, const BoxField& source, double cubic_weight) {
    const CsTerms t = cs_terms(omega, source);
    return 0.5 * t.kinetic + cubic_weight * t.cubic - t.source;
}

double cs_energy(const BoxField& omega) {
    return cs_energy(omega, BoxField(omega.spec(), 9));
}

BoxField gauge_transform(const BoxField& omega, const BoxField& param) {
    require_layout(omega, 9, "gauge_transform connection");
    require_layout(param, 3, "gauge_transform parameter");
    require_aligned(omega, param, "gauge_transform");

    BoxField out = omega;
    const auto& d = omega.spec().dims;
    for (std::size_t k = 0; k < d[2]; ++k)
        for (std::size_t j = 0; j < d[1]; ++j)
            for (std::size_t i = 0; i < d[0]; ++i)
                for (int mu = 0; mu < 3; ++mu)
                    for (int a = 0; a < 3; ++a) {
                        double delta = central(param, static_cast<long>(i), static_cast<long>(j),
                                               static_cast<long>(k), mu, static_cast<std::size_t>(a));
                        for (int b = 0; b < 3; ++b)
                            for (int c = 0; c < 3; ++c) {
                                const double e = levi_civita(a, b, c);
                                if (e == 0.0) continue;
                                delta += e * omega(i, j, k, static_cast<std::size_t>(3 * mu + b)) *
                                         param(i, j, k, static_cast<std::size_t>(c));
                            }
                        out(i, j, k, static_cast<std::size_t>(3 * mu + a)) += delta;
                    }
    return out;
}

BoxField rasterize_line_sources(const DisclinationConfig& config, const BoxSpec& spec) {
    BoxField source(spec, 9);
    const double h = spec.spacing;
    for (const auto& line : config.lines()) {
        const double fi = std::round((line.position().x - spec.origin[0]) / h);
        const double fj = std::round((line.position().y - spec.origin[1]) / h);
        if (fi < 0.0 || fj < 0.0 || fi >= static_cast<double>(spec.dims[0]) ||
            fj >= static_cast<double>(spec.dims[1]))
            continue;
        const auto i = static_cast<std::size_t>(fi);
        const auto j = static_cast<std::size_t>(fj);
        for (std::size_t k = 0; k < spec.dims[2]; ++k)
            source(i, j, k, 3 * 2 + 2) += 4.0 * std::numbers::pi * line.winding() / (h * h);
    }
    return source;
}

BoxField covariant_divergence(const BoxField& source, const BoxField& omega) {
    require_layout(source, 9, "covariant_divergence source");
    require_layout(omega, 9, "covariant_divergence connection");
    require_aligned(source, omega, "covariant_divergence");

    BoxField out(source.spec(), 3);
    const auto& d = source.spec().dims;
    for (std::size_t k = 1; k + 1 < d[2]; ++k)
        for (std::size_t j = 1; j + 1 < d[1]; ++j)
            for (std::size_t i = 1; i + 1 < d[0]; ++i)
                for (int a = 0; a < 3; ++a) {
                    double div = 0.0;
                    for (int mu = 0; mu < 3; ++mu) {
                        div += central(source, static_cast<long>(i), static_cast<long>(j), static_cast<long>(k), mu,
                                       static_cast<std::size_t>(3 * mu + a));
                        for (int b = 0; b < 3; ++b)
                            for (int c = 0; c < 3; ++c) {
                                const double e = levi_civita(a, b, c);
                                if (e == 0.0) continue;
                                div += e * omega(i, j, k, static_cast<std::size_t>(3 * mu + b)) *
                                       source(i, j, k, static_cast<std::size_t>(3 * mu + c));
                            }
                    }
                    out(i, j, k, static_cast<std::size_t>(a)) = div;
                }
    return out;
}

}  // namespace disclinate
