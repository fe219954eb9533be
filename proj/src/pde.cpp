#include "adwave/pde.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "adwave/errors.hpp"

namespace adwave {

void Grid1D::validate() const {
    if (!(length > 0.0) || !std::isfinite(length))
        throw ParameterError("grid length must be positive, got " + std::to_string(length));
    if (cells < 4) throw ParameterError("grid needs at least 4 cells, got " + std::to_string(cells));
}

void PdeState::validate() const {
    grid.validate();
    if (u.size() != grid.nodes() || v.size() != grid.nodes())
        throw ParameterError("field lengths must equal the node count " +
                             std::to_string(grid.nodes()));
    for (double x : u)
        if (!std::isfinite(x)) throw ParameterError("non-finite displacement entry");
    for (double x : v)
        if (!std::isfinite(x)) throw ParameterError("non-finite velocity entry");
    if (!(t >= 0.0)) throw ParameterError("state time must be nonnegative");
}

std::string to_string(ForceMode m) {
    return m == ForceMode::linear ? "linear" : "phi";
}

void InitialField::validate() const {
    switch (kind) {
        case Kind::constant:
            if (!std::isfinite(value)) throw ParameterError("constant initial value must be finite");
            break;
        case Kind::cosine_mode:
            if (mode < 0) throw ParameterError("cosine mode must be >= 0");
            if (!std::isfinite(amplitude) || !std::isfinite(offset))
                throw ParameterError("cosine amplitude/offset must be finite");
            break;
        case Kind::gaussian:
            if (!(width > 0.0)) throw ParameterError("gaussian width must be positive");
            if (!std::isfinite(amplitude) || !std::isfinite(center) || !std::isfinite(offset))
                throw ParameterError("gaussian parameters must be finite");
            break;
        case Kind::from_file:
            if (path.empty()) throw ParameterError("from-file initial data needs a path");
            break;
    }
}

namespace {

std::vector<double> read_field_csv(const std::string& path, const Grid1D& g) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open initial-data file: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("x,value", 0) != 0)
        throw ConfigError("initial-data file must start with header 'x,value': " + path);
    std::vector<double> f;
    f.reserve(g.nodes());
    std::size_t j = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string xs, vs;
        if (!std::getline(ls, xs, ',') || !std::getline(ls, vs))
            throw ConfigError("malformed row in " + path + ": " + line);
        const double x = std::stod(xs);
        const double val = std::stod(vs);
        if (j >= g.nodes()) throw ConfigError("too many rows in " + path);
        if (std::abs(x - g.node(j)) > 1e-9 * std::max(1.0, g.length))
            throw ConfigError("node mismatch in " + path + " at row " + std::to_string(j));
        f.push_back(val);
        ++j;
    }
    if (f.size() != g.nodes())
        throw ConfigError("expected " + std::to_string(g.nodes()) + " rows in " + path + ", got " +
                          std::to_string(f.size()));
    return f;
}

}  // namespace

std::vector<double> InitialField::evaluate(const Grid1D& g) const {
    validate();
    g.validate();
    std::vector<double> f(g.nodes());
    switch (kind) {
        case Kind::constant:
            for (auto& x : f) x = value;
            break;
        case Kind::cosine_mode: {
            const double k = mode * M_PI / g.length;
            for (std::size_t j = 0; j < f.size(); ++j)
                f[j] = amplitude * std::cos(k * g.node(j)) + offset;
            break;
        }
        case Kind::gaussian:
            for (std::size_t j = 0; j < f.size(); ++j) {
                const double d = (g.node(j) - center) / width;
                f[j] = amplitude * std::exp(-0.5 * d * d) + offset;
            }
            break;
        case Kind::from_file:
            f = read_field_csv(path, g);
            break;
    }
    return f;
}

void RunConfig::validate() const {
    try {
        potential.validate();
        grid.validate();
        initial.u.validate();
        initial.v.validate();
    } catch (const ParameterError& e) {
        throw ConfigError(e.what());
    }
    if (!(t_final > 0.0)) throw ConfigError("t_final must be positive");
    if (sample_every < 1) throw ConfigError("sample_every must be >= 1");
    if (!(lambda > 0.0 && lambda < 1.0)) throw ConfigError("lambda must lie in (0,1)");
    if (!std::isfinite(reference_u)) throw ConfigError("reference must be finite");
    const double bound = cfl_limit(grid, potential);
    if (!(dt > 0.0) || dt > bound)
        throw ConfigError("dt = " + std::to_string(dt) + " violates the CFL bound " +
                          std::to_string(bound));
}

std::vector<double> neumann_laplacian(const PdeState& s) {
    s.validate();
    std::vector<double> out(s.u.size());
    const double inv = 1.0 / (s.grid.dx() * s.grid.dx());
    const std::size_t n = s.u.size();
    out[0] = 2.0 * (s.u[1] - s.u[0]) * inv;
    for (std::size_t j = 1; j + 1 < n; ++j)
        out[j] = (s.u[j - 1] - 2.0 * s.u[j] + s.u[j + 1]) * inv;
    out[n - 1] = 2.0 * (s.u[n - 2] - s.u[n - 1]) * inv;
    return out;
}

double cfl_limit(const Grid1D& g, const PotentialParams& p) {
    g.validate();
    p.validate();
    return 0.5 * std::min(g.dx(), 1.0 / std::sqrt(1.0 + 2.0 * p.stiffness()));
}

namespace {

inline void apply_laplacian(const std::vector<double>& u, double inv_dx2, std::vector<double>& out) {
    const std::size_t n = u.size();
    out[0] = 2.0 * (u[1] - u[0]) * inv_dx2;
    for (std::size_t j = 1; j + 1 < n; ++j)
        out[j] = (u[j - 1] - 2.0 * u[j] + u[j + 1]) * inv_dx2;
    out[n - 1] = 2.0 * (u[n - 2] - u[n - 1]) * inv_dx2;
}

inline double force_term(const PotentialParams& p, double u, ForceMode mode) {
    return mode == ForceMode::linear ? u : dphi(p, u);
}

// Advances (u, v) in place by dt, storing the midpoint velocity in v_half.
// `lap` is scratch.  Returns false when a non-finite value appears.
bool step_in_place(std::vector<double>& u, std::vector<double>& v, std::vector<double>& v_half,
                   std::vector<double>& lap, double inv_dx2, double dt, const PotentialParams& p,
                   ForceMode mode) {
    const double decay = std::exp(-0.5 * dt);
    const double gain = 1.0 - decay;
    const std::size_t n = u.size();
    apply_laplacian(u, inv_dx2, lap);
    for (std::size_t j = 0; j < n; ++j) {
        const double a = lap[j] - force_term(p, u[j], mode);
        v_half[j] = decay * v[j] + gain * a;
        u[j] += dt * v_half[j];
    }
    apply_laplacian(u, inv_dx2, lap);
    bool finite = true;
    for (std::size_t j = 0; j < n; ++j) {
        const double a = lap[j] - force_term(p, u[j], mode);
        v[j] = decay * v_half[j] + gain * a;
        finite = finite && std::isfinite(u[j]) && std::isfinite(v[j]);
    }
    return finite;
}

}  // namespace

StepResult step(const PdeState& s, double dt, const PotentialParams& p, ForceMode force) {
    s.validate();
    p.validate();
    if (!(dt > 0.0)) throw PreconditionError("dt must be positive");
    StepResult r{s, std::vector<double>(s.u.size())};
    std::vector<double> lap(s.u.size());
    const double inv_dx2 = 1.0 / (s.grid.dx() * s.grid.dx());
    if (!step_in_place(r.state.u, r.state.v, r.v_half, lap, inv_dx2, dt, p, force))
        throw BlowupError(0);
    r.state.t = s.t + dt;
    return r;
}

Trajectory simulate(const RunConfig& cfg) {
    cfg.validate();
    const Grid1D g = cfg.grid;
    const double dx = g.dx();
    const double inv_dx2 = 1.0 / (dx * dx);
    const std::size_t n = g.nodes();

    std::vector<double> u = cfg.initial.u.evaluate(g);
    std::vector<double> v = cfg.initial.v.evaluate(g);
    std::vector<double> v_half(n), lap(n), mid(n), diff(n);

    const auto n_steps = static_cast<std::size_t>(std::ceil(cfg.t_final / cfg.dt - 1e-9));
    const double phi_ref =
        cfg.force == ForceMode::linear ? 0.5 * cfg.reference_u * cfg.reference_u
                                       : phi(cfg.potential, cfg.reference_u);

    Trajectory traj;
    traj.grid = g;

    double D = 0.0, S = 0.0;

    auto potential_density = [&](double x) {
        return cfg.force == ForceMode::linear ? 0.5 * x * x : phi(cfg.potential, x);
    };

    auto record = [&](double t) {
        traj.samples.push_back({t, u, v});
        LedgerRow row;
        row.t = t;
        const double kin = 0.5 * trap_norm_sq(v, dx);
        const double grad = 0.5 * grad_norm_sq(u, dx);
        double pot = 0.0, pot_rel = 0.0, cross_ref = 0.0, usq = 0.0, uv = 0.0;
        {
            double sp = 0.0, spr = 0.0, scr = 0.0, su = 0.0, suv = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double wgt = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
                const double pd = potential_density(u[j]);
                sp += wgt * pd;
                spr += wgt * (pd - phi_ref);
                scr += wgt * (u[j] - cfg.reference_u) * v[j];
                su += wgt * u[j] * u[j];
                suv += wgt * u[j] * v[j];
            }
            pot = dx * sp;
            pot_rel = dx * spr;
            cross_ref = dx * scr;
            usq = dx * su;
            uv = dx * suv;
        }
        row.E = kin + grad + pot;
        row.J = 0.5 * usq + uv;
        row.G = kin + grad + 0.5 * usq + 0.5 * uv;
        row.G_lambda = kin + grad + pot_rel + cfg.lambda * cross_ref;
        row.D = D;
        row.S = S;
        row.mean_u = mean_value(u, dx, g.length);
        row.h1_dev = h1_deviation(u, cfg.reference_u, dx);
        traj.ledger.push_back(row);
    };

    record(0.0);
    for (std::size_t k = 0; k < n_steps; ++k) {
        if (!step_in_place(u, v, v_half, lap, inv_dx2, cfg.dt, cfg.potential, cfg.force))
            throw BlowupError(k + 1);
        // Midpoint-rule accumulation of the dissipation and J-source
        // integrals; u at the drift midpoint is u_new - (dt/2) v_half.
        for (std::size_t j = 0; j < n; ++j) mid[j] = u[j] - 0.5 * cfg.dt * v_half[j];
        const double vh2 = trap_norm_sq(v_half, dx);
        double source = grad_norm_sq(mid, dx) - vh2;
        {
            double s_uf = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double wgt = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
                s_uf += wgt * mid[j] * force_term(cfg.potential, mid[j], cfg.force);
            }
            source += dx * s_uf;
        }
        D += cfg.dt * vh2;
        S += cfg.dt * source;
        const double t = cfg.dt * static_cast<double>(k + 1);
        if ((k + 1) % static_cast<std::size_t>(cfg.sample_every) == 0 || k + 1 == n_steps)
            record(t);
    }
    return traj;
}

}  // namespace adwave
