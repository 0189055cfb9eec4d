// Benchmark case catalog. Each case bundles a Hamiltonian with its domain,
// initial data, boundary kind, canonical final time and solver defaults, so a
// single name reproduces a benchmark setup.
#pragma once

#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "hjdg/hamiltonian.hpp"
#include "hjdg/mesh.hpp"
#include "hjdg/solver1d.hpp"

namespace hjdg {

enum class MeshFamily { Line, Cartesian, Triangular };

struct CaseSpec {
    const char* name;
    int dim;
    const char* hamiltonian;
    std::array<double, 4> domain;  // {a, b, c, d}; 1D cases use a, b
    BoundaryKind bc;
    double t_default;      // canonical final time
    double cfl_default;
    LimiterKind limiter_default;
    MeshFamily default_mesh;
    std::vector<const char*> variants;  // initial-condition variants; [0] = default
};

const CaseSpec& find_case(std::string_view name);
std::vector<std::string> case_names();

// Initial condition phi^0 for (case, variant). Empty variant = default.
// Throws std::invalid_argument for unknown variants.
std::function<double(const double*)> initial_condition(const CaseSpec& spec,
                                                       std::string_view variant);

}  // namespace hjdg
