#include "hjdg/runner.hpp"

#include <cmath>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>

namespace hjdg {

namespace {

const char* provenance_name(ExactSolution::Provenance p) {
    switch (p) {
        case ExactSolution::Provenance::Analytic: return "analytic";
        case ExactSolution::Provenance::Characteristic: return "characteristic";
        case ExactSolution::Provenance::HopfLax: return "hopf-lax";
        case ExactSolution::Provenance::ReferenceSolver: return "reference-solver";
    }
    return "none";
}

std::mutex g_lf_cache_mutex;
std::map<std::string, std::shared_ptr<LfReference1D>> g_lf_cache;

std::shared_ptr<LfReference1D> cached_lf_reference(const std::string& case_name,
                                                   const std::string& variant, double t_final,
                                                   int n_points) {
    std::ostringstream key;
    key << case_name << "|" << variant << "|" << t_final << "|" << n_points;
    std::lock_guard<std::mutex> lock(g_lf_cache_mutex);
    auto it = g_lf_cache.find(key.str());
    if (it != g_lf_cache.end()) return it->second;
    auto ref = std::make_shared<LfReference1D>(
        reference_lf_solver(case_name, variant, n_points, t_final));
    g_lf_cache.emplace(key.str(), ref);
    return ref;
}

}  // namespace

std::function<double(const double*, double)> make_error_oracle(const std::string& case_name,
                                                               const std::string& variant,
                                                               double t_final, int lf_points,
                                                               std::string* kind) {
    try {
        ExactSolution exact = exact_solution(case_name, variant);
        if (exact.valid_at(t_final)) {
            if (kind) *kind = provenance_name(exact.provenance);
            auto eval = exact.eval;
            return [eval](const double* x, double t) { return eval(x, t); };
        }
    } catch (const std::invalid_argument&) {
        // fall through to the reference solver
    }
    const CaseSpec& spec = find_case(case_name);
    if (spec.dim == 1) {
        auto ref = cached_lf_reference(case_name, variant, t_final, lf_points);
        if (kind) *kind = "reference-solver";
        return [ref](const double* x, double) { return ref->value(x[0]); };
    }
    if (kind) *kind = "none";
    return {};
}

RunConfig resolve_config(const RunConfig& config) {
    RunConfig cfg = config;
    const CaseSpec& spec = find_case(cfg.case_name);  // throws for unknown case
    if (cfg.variant.empty()) cfg.variant = spec.variants.front();
    else initial_condition(spec, cfg.variant);        // validate the variant name
    if (!cfg.mesh) cfg.mesh = spec.default_mesh;
    if (cfg.cfl < 0.0) cfg.cfl = spec.cfl_default;
    if (cfg.t_final < 0.0) cfg.t_final = spec.t_default;
    if (!cfg.limiter) cfg.limiter = spec.limiter_default;

    if (cfg.degree < 1) throw ConfigError("polynomial degree must be >= 1");
    if (cfg.penalty_c < 0.0) throw ConfigError("penalty constant C must be nonnegative");
    if (cfg.cfl <= 0.0) throw ConfigError("CFL must be positive");
    if (cfg.n < 2 && cfg.h <= 0.0 && cfg.mesh_file.empty())
        throw ConfigError("need at least 2 cells");
    if (spec.dim == 1 && *cfg.mesh != MeshFamily::Line)
        throw ConfigError("case '" + cfg.case_name + "' is one-dimensional");
    if (spec.dim == 2 && *cfg.mesh == MeshFamily::Line)
        throw ConfigError("case '" + cfg.case_name + "' requires a 2D mesh");
    if (*cfg.limiter == LimiterKind::Moment && *cfg.mesh != MeshFamily::Cartesian)
        throw ConfigError("the moment limiter runs on Cartesian meshes only");
    if (*cfg.limiter == LimiterKind::Minmod && *cfg.mesh != MeshFamily::Line)
        throw ConfigError("the minmod limiter runs on 1D meshes only");
    if (cfg.perturb != 0.0 && *cfg.mesh != MeshFamily::Line)
        throw ConfigError("mesh perturbation applies to 1D meshes only");
    if (cfg.case_name == "quartic1d" && *cfg.limiter == LimiterKind::None)
        std::cerr << "warning: quartic1d without a limiter does not converge to the "
                     "viscosity solution for even N\n";
    return cfg;
}

namespace {

SchemeParams scheme_params(const RunConfig& cfg) {
    SchemeParams p;
    p.degree = cfg.degree;
    p.penalty_c = cfg.penalty_c;
    p.cfl = cfg.cfl;
    p.limiter = *cfg.limiter;
    p.dt_law = cfg.dt_law;
    p.volume_quad_boost = cfg.volume_quad_boost;
    return p;
}

TimeControls time_controls(const RunConfig& cfg) {
    TimeControls tc;
    tc.cfl = cfg.cfl;
    tc.t_final = cfg.t_final;
    tc.law = cfg.dt_law;
    return tc;
}

RunResult solve_line(const RunConfig& cfg, const CaseSpec& spec) {
    auto mesh = std::make_shared<Mesh1D>(
        build_uniform_1d(spec.domain[0], spec.domain[1], cfg.n, spec.bc));
    if (cfg.perturb > 0.0) *mesh = perturb_1d(*mesh, cfg.perturb, cfg.seed);
    auto basis = std::make_shared<ReferenceBasis>(
        ReferenceBasis::make(ElementKind::Interval, cfg.degree));
    auto ic = initial_condition(spec, cfg.variant);
    auto field = std::make_shared<DGField<Mesh1D>>(project(*mesh, *basis, ic));

    const HamiltonianModel& model = hamiltonian_catalog(spec.hamiltonian);
    Solver1D solver(*mesh, *basis, model, scheme_params(cfg));
    const TimeControls tc = time_controls(cfg);

    auto stable_dt = [&](const DGField<Mesh1D>& u) {
        return dt_from_speeds(tc, {solver.max_speed(u)}, {mesh->min_width()});
    };
    auto limit = [&](DGField<Mesh1D>& u) {
        if (*cfg.limiter == LimiterKind::Minmod) minmod_limit(u);
    };

    RunResult result;
    result.steps = run_to_time(solver, *field, tc, stable_dt, limit);
    result.t_final = field->time;
    result.out = SolveOutput<Mesh1D>{mesh, basis, field};
    return result;
}

RunResult solve_cartesian(const RunConfig& cfg, const CaseSpec& spec) {
    const int ny = cfg.ny > 0 ? cfg.ny : cfg.n;
    auto mesh = std::make_shared<CartMesh2D>(build_cartesian(
        spec.domain[0], spec.domain[1], spec.domain[2], spec.domain[3], cfg.n, ny, spec.bc));
    auto basis = std::make_shared<ReferenceBasis>(
        ReferenceBasis::make(ElementKind::Rectangle, cfg.degree));
    auto ic = initial_condition(spec, cfg.variant);
    auto field = std::make_shared<DGField<CartMesh2D>>(project(*mesh, *basis, ic));

    const HamiltonianModel& model = hamiltonian_catalog(spec.hamiltonian);
    CartSolver2D solver(*mesh, *basis, model, scheme_params(cfg));
    const TimeControls tc = time_controls(cfg);

    auto stable_dt = [&](const DGField<CartMesh2D>& u) {
        const auto s = solver.max_speeds(u);
        return dt_from_speeds(tc, {s[0], s[1]}, {mesh->min_dx(), mesh->min_dy()});
    };
    auto limit = [&](DGField<CartMesh2D>& u) {
        if (*cfg.limiter == LimiterKind::Moment) moment_limit(u);
    };

    RunResult result;
    result.steps = run_to_time(solver, *field, tc, stable_dt, limit);
    result.t_final = field->time;
    result.out = SolveOutput<CartMesh2D>{mesh, basis, field};
    return result;
}

TriMesh2D build_case_trimesh(const RunConfig& cfg, const CaseSpec& spec) {
    if (!cfg.mesh_file.empty()) return load_tri_mesh(cfg.mesh_file);

    const double a = spec.domain[0], b = spec.domain[1];
    const double c = spec.domain[2], d = spec.domain[3];
    if (cfg.case_name == "surface" && cfg.variant == "disk") return disk_mesh(24, 72, 1.5);

    int nx = cfg.n;
    if (cfg.h > 0.0) nx = std::max(1, static_cast<int>(std::lround((b - a) / cfg.h)));
    int ny = cfg.ny > 0 ? cfg.ny : nx;

    TriMesh2D mesh;
    if (cfg.case_name == "surface") {
        // graded toward the domain center where the solution forms its kink
        auto graded = [](double lo, double hi, int n, double strength) {
            std::vector<double> xs(static_cast<std::size_t>(n) + 1);
            for (int i = 0; i <= n; ++i) {
                const double u = 2.0 * i / n - 1.0;
                xs[static_cast<std::size_t>(i)] =
                    lo + (hi - lo) * 0.5 * (1.0 + (u >= 0 ? 1 : -1) * std::pow(std::abs(u), strength));
            }
            xs.front() = lo;
            xs.back() = hi;
            return xs;
        };
        mesh = triangulate_rectangle_graded(graded(a, b, nx, 1.6), graded(c, d, ny, 1.6));
    } else {
        mesh = triangulate_rectangle(a, b, c, d, nx, ny);
    }
    if (spec.bc == BoundaryKind::Periodic)
        mesh = build_periodic_pairs(mesh, {{b - a, 0.0}, {0.0, d - c}});
    return mesh;
}

RunResult solve_triangular(const RunConfig& cfg, const CaseSpec& spec) {
    auto mesh = std::make_shared<TriMesh2D>(build_case_trimesh(cfg, spec));
    auto basis = std::make_shared<ReferenceBasis>(
        ReferenceBasis::make(ElementKind::Triangle, cfg.degree));
    auto ic = initial_condition(spec, cfg.variant);
    auto field = std::make_shared<DGField<TriMesh2D>>(project(*mesh, *basis, ic));

    const HamiltonianModel& model = hamiltonian_catalog(spec.hamiltonian);
    TriSolver2D solver(*mesh, *basis, model, scheme_params(cfg));
    const TimeControls tc = time_controls(cfg);
    const double altitude = mesh->min_altitude();

    auto stable_dt = [&, altitude](const DGField<TriMesh2D>& u) {
        const auto s = solver.max_speeds(u);
        return dt_from_speeds(tc, {s[0] + s[1]}, {altitude});
    };
    auto limit = [](DGField<TriMesh2D>&) {};

    RunResult result;
    result.steps = run_to_time(solver, *field, tc, stable_dt, limit);
    result.t_final = field->time;
    result.out = SolveOutput<TriMesh2D>{mesh, basis, field};
    return result;
}

}  // namespace

RunResult run_case(const RunConfig& raw) {
    const RunConfig cfg = resolve_config(raw);
    const CaseSpec& spec = find_case(cfg.case_name);

    RunResult result;
    switch (*cfg.mesh) {
        case MeshFamily::Line: result = solve_line(cfg, spec); break;
        case MeshFamily::Cartesian: result = solve_cartesian(cfg, spec); break;
        case MeshFamily::Triangular: result = solve_triangular(cfg, spec); break;
    }

    std::string kind;
    auto oracle = make_error_oracle(cfg.case_name, cfg.variant, cfg.t_final,
                                    cfg.lf_reference_points, &kind);
    result.oracle_kind = kind.empty() ? "none" : kind;
    if (oracle) {
        const int quad_degree = 2 * cfg.degree + 2;
        std::visit([&](auto& out) { result.norms = error_norms(*out.field, oracle, quad_degree); },
                   result.out);
        result.has_norms = true;
    }
    return result;
}

ConvergenceReport convergence_study(const RunConfig& base, const std::vector<int>& resolutions) {
    const RunConfig cfg0 = resolve_config(base);
    ConvergenceReport report;
    report.case_name = cfg0.case_name;
    report.variant = cfg0.variant;
    report.degree = cfg0.degree;
    report.penalty_c = cfg0.penalty_c;
    report.cfl = cfg0.cfl;
    report.t_final = cfg0.t_final;
    switch (*cfg0.mesh) {
        case MeshFamily::Line: report.mesh_kind = cfg0.perturb > 0 ? "line(perturbed)" : "line"; break;
        case MeshFamily::Cartesian: report.mesh_kind = "cartesian"; break;
        case MeshFamily::Triangular: report.mesh_kind = "triangular"; break;
    }
    switch (*cfg0.limiter) {
        case LimiterKind::None: report.limiter = "none"; break;
        case LimiterKind::Minmod: report.limiter = "minmod"; break;
        case LimiterKind::Moment: report.limiter = "moment"; break;
    }

    for (int n : resolutions) {
        RunConfig cfg = cfg0;
        cfg.n = n;
        cfg.h = 0.0;
        RunResult run = run_case(cfg);
        if (!run.has_norms)
            throw ConfigError("case '" + cfg0.case_name + "' has no oracle at t = " +
                              std::to_string(cfg0.t_final));
        ConvergenceRow row;
        row.resolution = n;
        std::visit([&](auto& out) { row.h = out.mesh->h(); }, run.out);
        row.error = run.norms;
        report.rows.push_back(row);
    }
    compute_orders(report);
    return report;
}

}  // namespace hjdg
