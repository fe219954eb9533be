#include "adwave/potential.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "adwave/errors.hpp"

namespace adwave {

void PotentialParams::validate() const {
    if (!(u_star > 0.0) || !std::isfinite(u_star))
        throw ParameterError("u_star must be positive, got " + std::to_string(u_star));
    if (!std::isfinite(sigma) || !(sigma * u_star > 1.0))
        throw ParameterError("sigma*u_star must exceed 1, got sigma=" + std::to_string(sigma) +
                             " u_star=" + std::to_string(u_star));
}

double phi(const PotentialParams& p, double u) {
    p.validate();
    const double a = std::abs(u);
    if (a <= p.band_edge()) return u * u;
    if (a >= p.u_star) return p.plateau();
    const double d = p.u_star - a;
    return p.plateau() - p.stiffness() * d * d;
}

double dphi(const PotentialParams& p, double u) {
    p.validate();
    const double a = std::abs(u);
    if (a <= p.band_edge()) return 2.0 * u;
    if (a >= p.u_star) return 0.0;
    const double g = 2.0 * p.stiffness() * (p.u_star - a);
    return u > 0.0 ? g : -g;
}

PropertyReport check_properties(const PotentialParams& p, std::size_t points) {
    p.validate();
    if (points < 2) throw PreconditionError("property sweep needs at least 2 points");
    const double lo = -2.0 * p.u_star;
    const double hi = 2.0 * p.u_star;
    const double h = (hi - lo) / static_cast<double>(points - 1);
    const double max_spacing = 1.0 / (10.0 * p.u_star * p.sigma);
    if (h > max_spacing)
        throw PreconditionError("grid spacing " + std::to_string(h) +
                                " does not resolve the middle branch (need <= " +
                                std::to_string(max_spacing) + ")");

    const double eps = std::numeric_limits<double>::epsilon();
    PropertyReport rep;
    rep.min_sign_product = std::numeric_limits<double>::infinity();

    double prev_phi = 0.0, prev_dphi = 0.0, prev_slope_g = 0.0;
    bool have_prev = false, have_prev_slope = false;
    for (std::size_t i = 0; i < points; ++i) {
        const double u = lo + h * static_cast<double>(i);
        const double f = phi(p, u);
        const double g = dphi(p, u);
        rep.max_abs_phi = std::max(rep.max_abs_phi, std::abs(f));
        rep.max_abs_dphi = std::max(rep.max_abs_dphi, std::abs(g));
        rep.min_sign_product = std::min(rep.min_sign_product, u * g);
        if (have_prev) {
            const double slope_dphi = (g - prev_dphi) / h;
            rep.max_dphi_slope = std::max(rep.max_dphi_slope, std::abs(slope_dphi));
            const double u_prev = u - h;
            const double slope_g = ((f - u * u) - (prev_phi - u_prev * u_prev)) / h;
            if (have_prev_slope)
                rep.max_concavity_jump = std::max(rep.max_concavity_jump, slope_g - prev_slope_g);
            prev_slope_g = slope_g;
            have_prev_slope = true;
        }
        prev_phi = f;
        prev_dphi = g;
        have_prev = true;
    }

    const double u2 = p.u_star * p.u_star;
    const double grad_claim = 2.0;
    const double grad_bound = 2.0 * std::max(1.0, p.u_star);
    const double lip_claim = 2.0 * p.stiffness();
    const double lip_bound = 2.0 * std::max(1.0, p.stiffness());
    const double lip_tol = 1e-6 * (1.0 + lip_bound);
    // Slope noise of phi - u^2 is rounding-limited; the signal at branch
    // joins is a large negative jump, so a small positive allowance suffices.
    const double conc_tol = 64.0 * eps * (u2 + p.plateau() + 1.0) / h;

    rep.bounded_ok = rep.max_abs_phi <= u2 * (1.0 + 4.0 * eps);
    rep.gradient_ok = rep.max_abs_dphi <= grad_bound * (1.0 + 4.0 * eps);
    rep.lipschitz_ok = rep.max_dphi_slope <= lip_bound + lip_tol;
    rep.concave_ok = rep.max_concavity_jump <= conc_tol;
    rep.sign_ok = rep.min_sign_product >= 0.0;
    rep.gradient_exceeds_2 = rep.max_abs_dphi > grad_claim * (1.0 + 4.0 * eps);
    rep.lipschitz_exceeds_claim = rep.max_dphi_slope > lip_claim + lip_tol;
    return rep;
}

std::vector<TableRow> sample_table(const PotentialParams& p, double from, double to, double step) {
    p.validate();
    if (!(step > 0.0)) throw PreconditionError("table step must be positive");
    if (!(to >= from)) throw PreconditionError("table range must satisfy to >= from");
    std::vector<TableRow> rows;
    const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 0.5)) + 1;
    rows.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double u = from + step * static_cast<double>(i);
        if (u > to + 0.5 * step) break;
        rows.push_back({u, phi(p, u), dphi(p, u)});
    }
    return rows;
}

}  // namespace adwave
