// Run orchestration shared by the CLI and the acceptance suite: build the
// mesh, project the initial data, integrate to the final time, and evaluate
// errors against the case's oracle when one exists.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hjdg/analysis.hpp"
#include "hjdg/cases.hpp"
#include "hjdg/solver2d.hpp"
#include "hjdg/timeloop.hpp"

namespace hjdg {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct RunConfig {
    std::string case_name;
    std::string variant;       // initial-condition variant ("" = default)
    int degree = 2;
    std::optional<MeshFamily> mesh;  // defaults to the case's mesh family
    int n = 40;                // cells (1D) or cells per direction (2D)
    int ny = 0;                // optional distinct y-count (Cartesian)
    double h = 0.0;            // triangle resolution (overrides n)
    std::string mesh_file;     // explicit triangle mesh path
    double penalty_c = 0.25;
    double cfl = -1.0;         // < 0: case default
    double t_final = -1.0;     // < 0: case default
    std::optional<LimiterKind> limiter;  // defaults to the case's limiter
    DtLaw dt_law = DtLaw::Standard;
    std::uint64_t seed = 0;
    double perturb = 0.0;      // 1D interface perturbation fraction
    int volume_quad_boost = 0;
    int lf_reference_points = 16384;
};

template <class Mesh>
struct SolveOutput {
    std::shared_ptr<Mesh> mesh;
    std::shared_ptr<ReferenceBasis> basis;
    std::shared_ptr<DGField<Mesh>> field;
};

struct RunResult {
    std::variant<SolveOutput<Mesh1D>, SolveOutput<CartMesh2D>, SolveOutput<TriMesh2D>> out;
    int steps = 0;
    double t_final = 0.0;
    bool has_norms = false;
    Norms norms;
    std::string oracle_kind;  // "analytic", "characteristic", ... or "none"
};

// Error evaluator for a case at final time T: the closed-form oracle when it
// is valid there, else a cached fine-grid Lax-Friedrichs reference (1D only).
// Returns an empty function when no oracle applies.
std::function<double(const double*, double)> make_error_oracle(const std::string& case_name,
                                                               const std::string& variant,
                                                               double t_final, int lf_points,
                                                               std::string* kind = nullptr);

RunResult run_case(const RunConfig& config);

// Convergence study over a resolution list (cells per direction). One row per
// resolution; orders from consecutive h ratios.
ConvergenceReport convergence_study(const RunConfig& base, const std::vector<int>& resolutions);

// Fills in case defaults (cfl, t_final, limiter, mesh family) and validates.
RunConfig resolve_config(const RunConfig& config);

}  // namespace hjdg
