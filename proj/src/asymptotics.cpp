#include "adwave/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "adwave/errors.hpp"

namespace adwave {

std::string to_string(EquilibriumClass c) {
    switch (c) {
        case EquilibriumClass::zero: return "zero";
        case EquilibriumClass::detached_plus: return "detached_plus";
        case EquilibriumClass::detached_minus: return "detached_minus";
        case EquilibriumClass::critical_band: return "critical_band";
        case EquilibriumClass::undecided: return "undecided";
    }
    return "undecided";
}

EquilibriumReport detect_equilibrium(const Trajectory& traj, const PotentialParams& p,
                                     double tol, std::size_t trailing) {
    p.validate();
    if (trailing == 0) trailing = std::max<std::size_t>(3, traj.samples.size() / 20);
    if (traj.samples.size() < 3 || trailing < 3)
        throw PreconditionError("equilibrium detection needs at least 3 trailing samples");
    trailing = std::min(trailing, traj.samples.size());
    if (!(tol > 0.0)) throw PreconditionError("tolerance must be positive");

    const double dx = traj.grid.dx();
    EquilibriumReport rep;
    double mean_sum = 0.0;
    for (std::size_t i = traj.samples.size() - trailing; i < traj.samples.size(); ++i) {
        const auto& s = traj.samples[i];
        double umin = s.u.front(), umax = s.u.front();
        for (double x : s.u) {
            umin = std::min(umin, x);
            umax = std::max(umax, x);
        }
        rep.velocity_norm = std::max(rep.velocity_norm, std::sqrt(trap_norm_sq(s.v, dx)));
        rep.oscillation = std::max(rep.oscillation, umax - umin);
        mean_sum += mean_value(s.u, dx, traj.grid.length);
    }
    rep.u_inf = mean_sum / static_cast<double>(trailing);

    if (rep.velocity_norm > tol || rep.oscillation > tol) {
        rep.classification = EquilibriumClass::undecided;
        return rep;
    }
    const double m = rep.u_inf;
    if (std::abs(m) < tol)
        rep.classification = EquilibriumClass::zero;
    else if (m > p.u_star + tol)
        rep.classification = EquilibriumClass::detached_plus;
    else if (m < -p.u_star - tol)
        rep.classification = EquilibriumClass::detached_minus;
    else if (std::abs(m) >= p.u_star - tol && std::abs(m) <= p.u_star + tol)
        rep.classification = EquilibriumClass::critical_band;
    else
        rep.classification = EquilibriumClass::undecided;
    return rep;
}

double predict_u_inf_modulus(double ell, double domain_length) {
    if (!(domain_length > 0.0)) throw ParameterError("domain length must be positive");
    if (ell < 0.0 || !std::isfinite(ell))
        throw ParameterError("ell must be nonnegative, got " + std::to_string(ell));
    return std::sqrt(2.0 * ell / domain_length);
}

EllEstimate ell_limit(const std::vector<LedgerRow>& ledger) {
    if (ledger.empty()) throw PreconditionError("ell estimation needs a nonempty ledger");
    const std::size_t count = std::max<std::size_t>(1, ledger.size() / 10);
    const std::size_t begin = ledger.size() - count;
    double sum = 0.0;
    for (std::size_t i = begin; i < ledger.size(); ++i) sum += ledger[i].J;
    const double mean = sum / static_cast<double>(count);
    double var = 0.0;
    for (std::size_t i = begin; i < ledger.size(); ++i) {
        const double d = ledger[i].J - mean;
        var += d * d;
    }
    return {mean, std::sqrt(var / static_cast<double>(count))};
}

DecayFit fit_decay(const std::vector<SeriesPoint>& series, double t_begin, double t_end,
                   std::string name) {
    if (!(t_begin < t_end)) throw PreconditionError("fit window must satisfy t_begin < t_end");
    std::vector<std::size_t> bad;
    std::vector<double> ts, ys;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& pt = series[i];
        if (pt.t < t_begin || pt.t > t_end) continue;
        if (!(pt.y > 0.0)) {
            bad.push_back(i);
            continue;
        }
        ts.push_back(pt.t);
        ys.push_back(std::log(pt.y));
    }
    if (!bad.empty()) {
        std::ostringstream msg;
        msg << "nonpositive samples in fit window at indices";
        for (std::size_t i = 0; i < bad.size() && i < 8; ++i) msg << ' ' << bad[i];
        if (bad.size() > 8) msg << " ...";
        throw PreconditionError(msg.str());
    }
    if (ts.size() < 10) throw PreconditionError("decay fit needs >= 10 samples in the window");

    const auto n = static_cast<double>(ts.size());
    double st = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        st += ts[i];
        sy += ys[i];
    }
    const double mt = st / n, my = sy / n;
    double stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        stt += (ts[i] - mt) * (ts[i] - mt);
        sty += (ts[i] - mt) * (ys[i] - my);
    }
    const double slope = sty / stt;
    const double intercept = my - slope * mt;
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double fit = intercept + slope * ts[i];
        ss_res += (ys[i] - fit) * (ys[i] - fit);
        ss_tot += (ys[i] - my) * (ys[i] - my);
    }
    DecayFit out;
    out.kappa = -slope;
    out.M = std::exp(intercept);
    out.t_begin = t_begin;
    out.t_end = t_end;
    out.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    out.series = std::move(name);
    return out;
}

MeanFit average_ode_check(const Trajectory& traj, const PotentialParams& p, double t_begin,
                          double t_end) {
    p.validate();
    if (!(t_begin < t_end)) throw PreconditionError("window must satisfy t_begin < t_end");
    std::vector<double> ts, ms;
    for (const auto& s : traj.samples) {
        if (s.t < t_begin || s.t > t_end) continue;
        for (double x : s.u)
            if (!(std::abs(x) > p.u_star))
                throw PreconditionError("window is not fully detached at t = " +
                                        std::to_string(s.t));
        ts.push_back(s.t);
        ms.push_back(mean_value(s.u, traj.grid.dx(), traj.grid.length));
    }
    if (ts.size() < 3) throw PreconditionError("mean fit needs >= 3 samples in the window");

    // Least squares in the basis {1, e^{-t}}.
    double s11 = 0.0, s1e = 0.0, see = 0.0, s1y = 0.0, sey = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double e = std::exp(-ts[i]);
        s11 += 1.0;
        s1e += e;
        see += e * e;
        s1y += ms[i];
        sey += e * ms[i];
    }
    const double det = s11 * see - s1e * s1e;
    if (!(std::abs(det) > 0.0)) throw PreconditionError("degenerate mean-fit window");
    MeanFit fit;
    fit.a = (see * s1y - s1e * sey) / det;
    fit.b = (s11 * sey - s1e * s1y) / det;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double r = std::abs(ms[i] - (fit.a + fit.b * std::exp(-ts[i])));
        fit.max_residual = std::max(fit.max_residual, r);
    }
    return fit;
}

double regime_entry_time(const Trajectory& traj, const PotentialParams& p,
                         EquilibriumClass target) {
    p.validate();
    if (traj.samples.empty()) throw PreconditionError("trajectory has no samples");
    auto inside = [&](const Sample& s) {
        double umin = s.u.front(), umax = s.u.front();
        for (double x : s.u) {
            umin = std::min(umin, x);
            umax = std::max(umax, x);
        }
        switch (target) {
            case EquilibriumClass::zero:
                return std::max(std::abs(umin), std::abs(umax)) < p.band_edge();
            case EquilibriumClass::detached_plus: return umin > p.u_star;
            case EquilibriumClass::detached_minus: return umax < -p.u_star;
            default: throw PreconditionError("entry time defined for zero/detached targets only");
        }
    };
    std::size_t idx = traj.samples.size();
    for (std::size_t i = traj.samples.size(); i-- > 0;) {
        if (!inside(traj.samples[i])) break;
        idx = i;
    }
    if (idx == traj.samples.size())
        throw PreconditionError("trajectory never settles into the target regime");
    return traj.samples[idx].t;
}

std::vector<SeriesPoint> deviation_series(const Trajectory& traj, double u_inf) {
    std::vector<SeriesPoint> out;
    out.reserve(traj.samples.size());
    const double dx = traj.grid.dx();
    for (const auto& s : traj.samples) {
        const double dev = h1_deviation(s.u, u_inf, dx) + std::sqrt(trap_norm_sq(s.v, dx));
        out.push_back({s.t, dev});
    }
    return out;
}

}  // namespace adwave
