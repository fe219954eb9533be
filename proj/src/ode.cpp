#include "adwave/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "adwave/errors.hpp"
#include "adwave/potential.hpp"

namespace adwave {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBisectTol = 1e-13;
constexpr double kBoundaryTol = 1e-9;

double scan_step(const OdeParams&) {
    return std::min(0.01, M_PI / (4.0 * OdeParams::omega()));
}
}  // namespace

void OdeParams::validate() const {
    if (!std::isfinite(sigma) || !(sigma >= 1.0))
        throw ParameterError("sigma must be >= 1, got " + std::to_string(sigma));
}

std::string to_string(Regime r) {
    switch (r) {
        case Regime::outer_plus: return "outer_plus";
        case Regime::outer_minus: return "outer_minus";
        case Regime::middle_plus: return "middle_plus";
        case Regime::middle_minus: return "middle_minus";
        case Regime::inner: return "inner";
    }
    return "inner";
}

std::string to_string(const Classification& c) {
    static const char* names[] = {"I", "II", "III", "IV", "V", "VI", "VII"};
    std::string s = names[static_cast<int>(c.label)];
    if (c.mirrored) s += "m";
    return s;
}

Classification classify_case(double z, double w, const OdeParams& p) {
    p.validate();
    if (!std::isfinite(z) || !std::isfinite(w)) throw PreconditionError("state must be finite");
    const double edge = p.band_edge();
    const double az = std::abs(z);

    if (az >= 1.0) {
        const bool mirrored = z < 0.0;
        const double vy = mirrored ? -w : w;  // outward-positive velocity
        if (vy > 0.0) return {CaseLabel::I, mirrored, mirrored ? Regime::outer_minus : Regime::outer_plus};
        if (vy == 0.0) return {CaseLabel::II, mirrored, mirrored ? Regime::outer_minus : Regime::outer_plus};
        if (az == 1.0)
            return {CaseLabel::V, mirrored, mirrored ? Regime::middle_minus : Regime::middle_plus};
        const double y = az;
        if (1.0 - y <= vy) return {CaseLabel::III, mirrored, mirrored ? Regime::outer_minus : Regime::outer_plus};
        return {CaseLabel::IV, mirrored, mirrored ? Regime::outer_minus : Regime::outer_plus};
    }

    if (az <= edge) {
        // Band edge with outward velocity belongs to the middle band (Case
        // VII); everything else, ties included, enters the inner band.
        if (az == edge && az > 0.0 && z * w > 0.0) {
            const bool mirrored = z < 0.0;
            return {CaseLabel::VII, mirrored, mirrored ? Regime::middle_minus : Regime::middle_plus};
        }
        if (edge == 0.0 && w != 0.0) {
            // sigma = 1: the inner band collapses to the origin and the
            // force vanishes, so a moving state continues as free damped
            // motion -- the middle form with mu = 0.
            const bool mirrored = w < 0.0;
            return {CaseLabel::VII, mirrored, mirrored ? Regime::middle_minus : Regime::middle_plus};
        }
        return {CaseLabel::VI, false, Regime::inner};
    }

    // Interior of a middle band: not an enumerated entry configuration, but
    // the closed forms are the Case V / Case VII ones by velocity sign.
    const bool mirrored = z < 0.0;
    const double vy = mirrored ? -w : w;
    return {vy > 0.0 ? CaseLabel::VII : CaseLabel::V, mirrored,
            mirrored ? Regime::middle_minus : Regime::middle_plus};
}

double RegimeSolution::z(double s) const {
    switch (regime) {
        case Regime::outer_plus:
        case Regime::outer_minus:
            return sign * (c1 + c2 * (1.0 - std::exp(-s)));
        case Regime::middle_plus:
        case Regime::middle_minus:
            return sign * (1.0 - c1 * std::exp(mu * s) - c2 * std::exp(-lambda * s));
        case Regime::inner: {
            const double om = OdeParams::omega();
            return std::exp(-0.5 * s) * (c1 * std::cos(om * s) + c2 * std::sin(om * s));
        }
    }
    return 0.0;
}

double RegimeSolution::w(double s) const {
    switch (regime) {
        case Regime::outer_plus:
        case Regime::outer_minus:
            return sign * c2 * std::exp(-s);
        case Regime::middle_plus:
        case Regime::middle_minus:
            return sign * (-c1 * mu * std::exp(mu * s) + c2 * lambda * std::exp(-lambda * s));
        case Regime::inner: {
            const double om = OdeParams::omega();
            const double alpha = -0.5 * c1 + om * c2;
            const double beta = -0.5 * c2 - om * c1;
            return std::exp(-0.5 * s) * (alpha * std::cos(om * s) + beta * std::sin(om * s));
        }
    }
    return 0.0;
}

RegimeSolution regime_solution(Regime regime, double z0, double w0, const OdeParams& p) {
    p.validate();
    if (!std::isfinite(z0) || !std::isfinite(w0))
        throw PreconditionError("initial state must be finite");
    RegimeSolution sol;
    sol.regime = regime;
    const double edge = p.band_edge();
    switch (regime) {
        case Regime::outer_plus:
        case Regime::outer_minus: {
            sol.sign = regime == Regime::outer_plus ? 1.0 : -1.0;
            const double y0 = sol.sign * z0;
            if (y0 < 1.0 - kBoundaryTol)
                throw PreconditionError("state outside the outer regime closure");
            sol.c1 = y0;
            sol.c2 = sol.sign * w0;
            break;
        }
        case Regime::middle_plus:
        case Regime::middle_minus: {
            sol.sign = regime == Regime::middle_plus ? 1.0 : -1.0;
            const double y0 = sol.sign * z0;
            const double v0 = sol.sign * w0;
            if (y0 < edge - kBoundaryTol || y0 > 1.0 + kBoundaryTol)
                throw PreconditionError("state outside the middle-band closure");
            sol.lambda = p.lambda();
            sol.mu = p.mu();
            sol.c1 = (sol.lambda * (1.0 - y0) - v0) / (sol.lambda + sol.mu);
            sol.c2 = (sol.mu * (1.0 - y0) + v0) / (sol.lambda + sol.mu);
            break;
        }
        case Regime::inner: {
            if (std::abs(z0) > edge + kBoundaryTol)
                throw PreconditionError("state outside the inner band closure");
            sol.sign = 1.0;
            const double om = OdeParams::omega();
            sol.c1 = z0;
            sol.c2 = (2.0 * w0 + z0) / (2.0 * om);
            break;
        }
    }
    return sol;
}

namespace {

// Bisection for f(s) = 0 on [a, b] with f(a), f(b) of opposite sign
// (f(a) may be 0 only if the caller accepts s = a).
template <class F>
double bisect(F&& f, double a, double b) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) throw ConsistencyError("bisection bracket lost");
    while (b - a > kBisectTol) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm > 0.0) == (fa > 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

// Forward scan from s_start until f changes sign, then bisect.  Returns the
// crossing time; f(s_start) must be nonzero.
template <class F>
double scan_and_bisect(F&& f, double s_start, double step) {
    double a = s_start;
    double fa = f(a);
    if (fa == 0.0) throw ConsistencyError("event scan started on a root");
    const bool pos = fa > 0.0;
    for (long i = 1; i < 200000000L; ++i) {
        const double b = s_start + step * static_cast<double>(i);
        const double fb = f(b);
        if (fb == 0.0) return b;
        if ((fb > 0.0) != pos) return bisect(f, a, b);
        a = b;
    }
    throw ConsistencyError("event scan failed to locate a crossing");
}

std::optional<Event> outer_event(const RegimeSolution& sol, const OdeParams&) {
    const double limit = sol.c1 + sol.c2;
    // The regime is left only when the monotone limit lies below the
    // threshold; equality approaches it asymptotically.
    if (sol.c2 >= 0.0 || limit >= 1.0) return std::nullopt;
    auto f = [&](double s) { return sol.c1 + sol.c2 * (1.0 - std::exp(-s)) - 1.0; };
    const double s = scan_and_bisect(f, 0.0, 0.01);
    return Event{s, sol.sign * 1.0, sol.w(s)};
}

std::optional<Event> middle_event(const RegimeSolution& sol, const OdeParams& p) {
    const double edge = p.band_edge();
    const double A = sol.c1;
    const double B = sol.c2;
    const double step = scan_step(p);

    auto y = [&](double s) { return 1.0 - A * std::exp(sol.mu * s) - B * std::exp(-sol.lambda * s); };

    if (sol.mu == 0.0) {
        // sigma = 1: the band flow degenerates to free damped motion with
        // limit 1 - A.
        const double limit = 1.0 - A;
        if (limit > edge && limit < 1.0) return std::nullopt;
        const double target = limit <= edge ? edge : 1.0;
        if (limit == target) return std::nullopt;  // asymptotic approach
        auto f = [&](double s) { return y(s) - target; };
        const double s = scan_and_bisect(f, 0.0, step);
        return Event{s, sol.sign * target, sol.w(s)};
    }

    if (A == 0.0) return std::nullopt;  // approaches the threshold forever

    if (A > 0.0) {
        // Eventually exits through the lower band edge.  If the flow rises
        // first (possible when it starts on the lower edge, Case VII with a
        // shallow launch), start the scan at the interior critical point so
        // the bracket excludes the trivial root at s = 0.
        double s_start = 0.0;
        const double slope0 = -A * sol.mu + B * sol.lambda;
        if (B > 0.0 && slope0 > 0.0)
            s_start = std::log((B * sol.lambda) / (A * sol.mu)) / (sol.lambda + sol.mu);
        auto f = [&](double s) { return y(s) - edge; };
        const double s = scan_and_bisect(f, s_start, step);
        return Event{s, sol.sign * edge, sol.w(s)};
    }

    // A < 0: monotone growth through the threshold.
    auto f = [&](double s) { return y(s) - 1.0; };
    const double s = scan_and_bisect(f, 0.0, step);
    return Event{s, sol.sign * 1.0, sol.w(s)};
}

std::optional<Event> inner_event(const RegimeSolution& sol, const OdeParams& p) {
    const double edge = p.band_edge();
    const double om = OdeParams::omega();
    const double P = sol.c1;
    const double Q = sol.c2;
    if (P == 0.0 && Q == 0.0) return std::nullopt;

    // First critical point of z: zeros of alpha cos + beta sin are spaced
    // pi/omega apart, and every extremum after the first is damped by
    // e^{-pi/(2 omega)} < 1, so only the first extremum can leave the band.
    const double alpha = -0.5 * P + om * Q;  // = w(0)
    const double beta = -0.5 * Q - om * P;
    double theta = -std::atan2(alpha, beta);
    theta = std::fmod(theta, M_PI);
    if (theta <= 0.0) theta += M_PI;
    const double t_bar = theta / om;

    const double z_ext = sol.z(t_bar);
    if (!(std::abs(z_ext) > edge)) return std::nullopt;  // tangential contact stays inside

    const double target = z_ext > 0.0 ? edge : -edge;
    auto f = [&](double s) { return sol.z(s) - target; };
    // z is monotone on (0, t_bar]; scan from 0 with the standard step.
    const double step = std::min(scan_step(p), 0.5 * t_bar);
    double s = 0.0;
    if (f(0.0) == 0.0) {
        // Started exactly on the target edge heading inward; the first
        // crossing of the *opposite* edge is the event (the extremum
        // exceeded it), so bracket past s = 0.
        s = scan_and_bisect(f, std::min(step, 0.5 * t_bar), step);
    } else {
        s = scan_and_bisect(f, 0.0, step);
    }
    return Event{s, target, sol.w(s)};
}

}  // namespace

std::optional<Event> next_event(const RegimeSolution& sol, const OdeParams& p) {
    p.validate();
    switch (sol.regime) {
        case Regime::outer_plus:
        case Regime::outer_minus: return outer_event(sol, p);
        case Regime::middle_plus:
        case Regime::middle_minus: return middle_event(sol, p);
        case Regime::inner: return inner_event(sol, p);
    }
    return std::nullopt;
}

namespace {

// Closed-form limit of an eventless segment.
double segment_limit(const RegimeSolution& sol) {
    switch (sol.regime) {
        case Regime::outer_plus:
        case Regime::outer_minus: return sol.sign * (sol.c1 + sol.c2);
        case Regime::middle_plus:
        case Regime::middle_minus:
            return sol.mu == 0.0 ? sol.sign * (1.0 - sol.c1) : sol.sign * 1.0;
        case Regime::inner: return 0.0;
    }
    return 0.0;
}

bool is_middle(Regime r) { return r == Regime::middle_plus || r == Regime::middle_minus; }

}  // namespace

const Segment& PiecewiseTrajectory::segment_at(double t) const {
    if (segments.empty()) throw PreconditionError("empty trajectory");
    std::size_t lo = 0, hi = segments.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi + 1) / 2;
        if (segments[mid].t_begin <= t)
            lo = mid;
        else
            hi = mid - 1;
    }
    return segments[lo];
}

std::pair<double, double> PiecewiseTrajectory::eval(double t) const {
    const Segment& seg = segment_at(t);
    const double s = std::max(0.0, t - seg.t_begin);
    return {seg.sol.z(s), seg.sol.w(s)};
}

PiecewiseTrajectory solve_exact(double z0, double w0, const OdeParams& p, double t_max) {
    p.validate();
    if (!std::isfinite(z0) || !std::isfinite(w0))
        throw PreconditionError("initial state must be finite");
    if (!(t_max > 0.0)) throw PreconditionError("t_max must be positive");

    PiecewiseTrajectory traj;
    double t = 0.0, z = z0, w = w0;
    while (true) {
        if (traj.segments.size() >= 8)
            throw ConsistencyError("more than 8 segments; event detection is inconsistent");
        const Classification cls = classify_case(z, w, p);
        const RegimeSolution sol = regime_solution(cls.regime, z, w, p);
        const auto ev = next_event(sol, p);
        traj.case_trace.push_back(cls);

        Segment seg;
        seg.t_begin = t;
        seg.z_begin = z;
        seg.w_begin = w;
        seg.entry = cls;
        seg.sol = sol;

        if (is_middle(sol.regime)) ++traj.middle_transits;

        if (!ev) {
            seg.t_end = kInf;
            traj.segments.push_back(seg);
            traj.z_inf = segment_limit(sol);
            break;
        }
        seg.t_end = t + ev->s;
        traj.segments.push_back(seg);
        if (sol.regime == Regime::inner && seg.z_begin * ev->z_exit < 0.0 &&
            std::abs(std::abs(seg.z_begin) - p.band_edge()) <= kBoundaryTol)
            ++traj.inner_band_crossings;
        if (seg.t_end >= t_max) {
            // An event still lies ahead of the horizon, so the tail regime
            // was never reached and no limit can be reported.
            traj.z_inf.reset();
            break;
        }
        t = seg.t_end;
        z = ev->z_exit;
        w = ev->w_exit;
    }
    return traj;
}

// --- reference integrator ---------------------------------------------------

namespace {

struct Deriv {
    double dz, dw;
};

Deriv rhs(double z, double w, const PotentialParams* pot) {
    const double f = pot ? dphi(*pot, z) : 0.0;
    return {w, -w - f};
}

}  // namespace

std::pair<double, double> OracleTrajectory::eval(double t) const {
    if (nodes.size() < 2) throw PreconditionError("oracle trajectory has fewer than 2 nodes");
    std::size_t lo = 0, hi = nodes.size() - 1;
    if (t <= nodes.front().t) t = nodes.front().t;
    if (t >= nodes.back().t) t = nodes.back().t;
    while (lo + 1 < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (nodes[mid].t <= t)
            lo = mid;
        else
            hi = mid;
    }
    const auto& a = nodes[lo];
    const auto& b = nodes[lo + 1];
    const double h = b.t - a.t;
    if (h <= 0.0) return {a.z, a.w};
    const double x = (t - a.t) / h;
    auto hermite = [&](double ya, double da, double yb, double db) {
        const double x2 = x * x, x3 = x2 * x;
        return ya * (2 * x3 - 3 * x2 + 1) + da * h * (x3 - 2 * x2 + x) + yb * (-2 * x3 + 3 * x2) +
               db * h * (x3 - x2);
    };
    return {hermite(a.z, a.dz, b.z, b.dz), hermite(a.w, a.dw, b.w, b.dw)};
}

OracleTrajectory rk_oracle(double z0, double w0, const OdeParams& p, double t_max, double tol) {
    p.validate();
    if (!(tol >= 1e-12 && tol <= 1e-6))
        throw PreconditionError("oracle tolerance must lie in [1e-12, 1e-6]");
    if (!(t_max > 0.0)) throw PreconditionError("t_max must be positive");
    if (!std::isfinite(z0) || !std::isfinite(w0))
        throw PreconditionError("initial state must be finite");

    // sigma = 1 degenerates to zero force (the potential vanishes
    // identically); otherwise use the adhesion force with threshold 1.
    PotentialParams pot{1.0, p.sigma};
    const PotentialParams* pptr = p.sigma > 1.0 ? &pot : nullptr;

    // Dormand-Prince 5(4) coefficients.
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double h_max = 0.05;
    double t = 0.0, z = z0, w = w0;
    Deriv k1 = rhs(z, w, pptr);
    double h = std::min({1e-3, h_max, t_max});

    OracleTrajectory out;
    out.nodes.push_back({t, z, w, k1.dz, k1.dw});

    while (t < t_max) {
        if (t_max - t <= 1e-14 * t_max) break;  // done up to roundoff
        if (h < 1e-13)
            throw StiffnessError("step size underflow at t = " + std::to_string(t));
        h = std::min(h, t_max - t);

        const Deriv k2 = rhs(z + h * a21 * k1.dz, w + h * a21 * k1.dw, pptr);
        const Deriv k3 = rhs(z + h * (a31 * k1.dz + a32 * k2.dz),
                             w + h * (a31 * k1.dw + a32 * k2.dw), pptr);
        const Deriv k4 = rhs(z + h * (a41 * k1.dz + a42 * k2.dz + a43 * k3.dz),
                             w + h * (a41 * k1.dw + a42 * k2.dw + a43 * k3.dw), pptr);
        const Deriv k5 =
            rhs(z + h * (a51 * k1.dz + a52 * k2.dz + a53 * k3.dz + a54 * k4.dz),
                w + h * (a51 * k1.dw + a52 * k2.dw + a53 * k3.dw + a54 * k4.dw), pptr);
        const Deriv k6 =
            rhs(z + h * (a61 * k1.dz + a62 * k2.dz + a63 * k3.dz + a64 * k4.dz + a65 * k5.dz),
                w + h * (a61 * k1.dw + a62 * k2.dw + a63 * k3.dw + a64 * k4.dw + a65 * k5.dw),
                pptr);
        const double z5 = z + h * (b1 * k1.dz + b3 * k3.dz + b4 * k4.dz + b5 * k5.dz + b6 * k6.dz);
        const double w5 = w + h * (b1 * k1.dw + b3 * k3.dw + b4 * k4.dw + b5 * k5.dw + b6 * k6.dw);
        const Deriv k7 = rhs(z5, w5, pptr);

        const double err_z =
            h * (e1 * k1.dz + e3 * k3.dz + e4 * k4.dz + e5 * k5.dz + e6 * k6.dz + e7 * k7.dz);
        const double err_w =
            h * (e1 * k1.dw + e3 * k3.dw + e4 * k4.dw + e5 * k5.dw + e6 * k6.dw + e7 * k7.dw);
        const double sc_z = tol * (1.0 + std::max(std::abs(z), std::abs(z5)));
        const double sc_w = tol * (1.0 + std::max(std::abs(w), std::abs(w5)));
        const double err = std::sqrt(0.5 * ((err_z / sc_z) * (err_z / sc_z) +
                                            (err_w / sc_w) * (err_w / sc_w)));

        if (err <= 1.0) {
            t += h;
            z = z5;
            w = w5;
            k1 = k7;  // first-same-as-last
            out.nodes.push_back({t, z, w, k1.dz, k1.dw});
        }
        const double factor =
            err > 0.0 ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;
        h = std::min(h * factor, h_max);
    }
    return out;
}

// --- uniform decay verification ----------------------------------------------

DecayCheck verify_uniform_decay(const std::vector<std::pair<double, double>>& battery,
                                const std::vector<double>& sigmas, double t_max) {
    if (battery.empty() || sigmas.empty())
        throw PreconditionError("battery and sigma list must be nonempty");
    if (!(t_max > 0.0)) throw PreconditionError("t_max must be positive");
    for (double s : sigmas) {
        OdeParams p{s};
        p.validate();
        for (const auto& [z0, w0] : battery) {
            const double az = std::abs(z0);
            if (az > p.band_edge() + 1e-12 && az < 1.0 - 1e-12)
                throw PreconditionError("battery point lies strictly inside a middle band for sigma = " +
                                        std::to_string(s));
        }
    }

    DecayCheck check;
    check.sigmas = sigmas;
    check.battery = battery;
    check.M.assign(battery.size(), std::vector<double>(sigmas.size(), 0.0));
    check.envelope_ok = true;
    check.structure_ok = true;

    for (std::size_t d = 0; d < battery.size(); ++d) {
        for (std::size_t k = 0; k < sigmas.size(); ++k) {
            const OdeParams p{sigmas[k]};
            const auto traj = solve_exact(battery[d].first, battery[d].second, p, t_max);
            if (!traj.z_inf)
                throw ConsistencyError("battery run did not converge within the horizon");
            const double z_inf = *traj.z_inf;
            check.max_abs_z_inf = std::max(check.max_abs_z_inf, std::abs(z_inf));
            check.max_middle_transits = std::max(check.max_middle_transits, traj.middle_transits);
            check.max_inner_band_crossings =
                std::max(check.max_inner_band_crossings, traj.inner_band_crossings);
            if (traj.middle_transits > 2 || traj.inner_band_crossings > 1 ||
                traj.case_trace.size() > 8)
                check.structure_ok = false;

            double M = 0.0;
            const long steps = std::lround(t_max / 0.01);
            for (long i = 0; i <= steps; ++i) {
                const double t = 0.01 * static_cast<double>(i);
                const double dev = std::abs(traj.eval(t).first - z_inf);
                if (dev < 1e-13) continue;  // noise floor; e^{t/2} would amplify it
                M = std::max(M, dev * std::exp(0.5 * t));
            }
            if (!std::isfinite(M)) check.envelope_ok = false;
            check.M[d][k] = M;
        }
        double lo = kInf, hi = 0.0;
        for (double m : check.M[d]) {
            lo = std::min(lo, m);
            hi = std::max(hi, m);
        }
        const double ratio = hi == 0.0 ? 1.0 : (lo == 0.0 ? kInf : hi / lo);
        check.ratio.push_back(ratio);
        check.max_ratio = std::max(check.max_ratio, ratio);
    }
    return check;
}

std::vector<std::pair<double, double>> default_battery() {
    return {
        {1.5, 1.0},    // outward launch from the plateau
        {1.0, 0.5},    // threshold, outward
        {2.5, 2.0},    // fast outward
        {-1.5, -1.0},  // mirrored outward
        {2.0, 0.0},    // plateau equilibrium
        {-2.0, 0.0},   // mirrored equilibrium
        {1.0, 0.0},    // threshold equilibrium
        {2.0, -0.5},   // inward but settles on the plateau
        {3.0, -1.99},  // settles just above the threshold
        {2.0, -1.0},   // limit exactly on the threshold
        {-2.0, 0.5},   // mirrored inward-settling
        {2.0, -3.0},   // reaches the threshold with speed
        {1.5, -2.0},   // same, smaller start
        {-2.0, 3.0},   // mirrored
        {1.0, -0.8},   // enters the band from the threshold
        {1.0, -2.5},   // faster band entry
        {1.0, -4.0},   // crosses the inner band to the far side
        {-1.0, 0.8},   // mirrored band entry
        {0.5, 0.0},    // released inside the elastic core
        {0.0, 0.7},    // core, kicked
        {0.3, -0.4},   // core, inward kick
        {-0.5, 0.3},   // mirrored core point
        {0.0, 3.0},    // core launch that escapes through the band
        {0.0, -2.2},   // mirrored escape
        {0.85, 0.1},   // near the band edge (inner for sigma >= 10)
    };
}

std::vector<std::pair<double, double>> case_battery(const OdeParams& p) {
    p.validate();
    const double e = p.band_edge();
    std::vector<std::pair<double, double>> pts = default_battery();
    // Replace the sigma-sensitive tail with exact band-edge data so the
    // seven entry configurations all appear for this sigma.
    pts[18] = {0.0, 0.0};    // rest equilibrium
    pts[21] = {-0.45, 0.3};  // mirrored core point, valid down to sigma = 2
    pts[23] = {-e, -1.5};    // mirrored band-edge launch (Case VII)
    pts[24] = {e, 2.0};      // band edge, strong outward launch (Case VII)
    return pts;
}

}  // namespace adwave
