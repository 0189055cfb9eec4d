#include "hjdg/cases.hpp"

#include <cmath>
#include <stdexcept>

namespace hjdg {

namespace {

const double kPi = M_PI;

const std::vector<CaseSpec> kCases = {
    {"linsmth", 1, "linsmth", {0.0, 2.0 * kPi, 0, 0}, BoundaryKind::Periodic,
     1.0, 0.1, LimiterKind::None, MeshFamily::Line, {"sin"}},
    {"linnonsmth", 1, "linnonsmth", {0.0, 2.0 * kPi, 0, 0}, BoundaryKind::Periodic,
     1.0, 0.1, LimiterKind::None, MeshFamily::Line, {"sin"}},
    {"burgers1d", 1, "burgers1d", {0.0, 2.0 * kPi, 0, 0}, BoundaryKind::Periodic,
     0.5, 0.1, LimiterKind::None, MeshFamily::Line, {"sin", "corner"}},
    {"eikonal1d", 1, "eikonal1d", {0.0, 2.0 * kPi, 0, 0}, BoundaryKind::Periodic,
     1.0, 0.1, LimiterKind::None, MeshFamily::Line, {"sin"}},
    {"cos1d", 1, "cos1d", {-1.0, 1.0, 0, 0}, BoundaryKind::Periodic,
     0.5 / (kPi * kPi), 0.1, LimiterKind::None, MeshFamily::Line, {"coscos"}},
    {"quartic1d", 1, "quartic1d", {-1.0, 1.0, 0, 0}, BoundaryKind::Outflow,
     1.0, 0.05, LimiterKind::Minmod, MeshFamily::Line, {"vee"}},
    {"rotation", 2, "rotation", {-1.0, 1.0, -1.0, 1.0}, BoundaryKind::Periodic,
     1.0, 0.1, LimiterKind::None, MeshFamily::Cartesian, {"cone", "gauss"}},
    {"burgers2d", 2, "burgers2d", {-2.0, 2.0, -2.0, 2.0}, BoundaryKind::Periodic,
     0.5 / (kPi * kPi), 0.1, LimiterKind::None, MeshFamily::Triangular, {"coswave"}},
    {"crossderiv", 2, "crossderiv", {-kPi, kPi, -kPi, kPi}, BoundaryKind::Periodic,
     0.8, 0.1, LimiterKind::None, MeshFamily::Cartesian, {"sincos"}},
    {"control", 2, "control", {-kPi, kPi, -kPi, kPi}, BoundaryKind::Periodic,
     1.0, 0.1, LimiterKind::None, MeshFamily::Cartesian, {"zero"}},
    {"cos2d", 2, "cos2d", {-2.0, 2.0, -2.0, 2.0}, BoundaryKind::Periodic,
     0.5 / (kPi * kPi), 0.1, LimiterKind::None, MeshFamily::Triangular, {"coswave"}},
    {"sinsum", 2, "sinsum", {-1.0, 1.0, -1.0, 1.0}, BoundaryKind::Outflow,
     1.0, 0.1, LimiterKind::Moment, MeshFamily::Cartesian, {"cross"}},
    {"surface", 2, "surface", {0.0, 1.0, 0.0, 1.0}, BoundaryKind::Periodic,
     0.6, 0.1, LimiterKind::None, MeshFamily::Triangular, {"bumps", "disk"}},
};

double cone_profile(double r) {
    if (r >= 0.3) return 0.0;
    if (r > 0.1) return 0.3 - r;
    return 0.2;
}

}  // namespace

const CaseSpec& find_case(std::string_view name) {
    for (const auto& c : kCases)
        if (name == c.name) return c;
    throw std::invalid_argument("unknown case '" + std::string(name) + "'");
}

std::vector<std::string> case_names() {
    std::vector<std::string> out;
    for (const auto& c : kCases) out.emplace_back(c.name);
    return out;
}

std::function<double(const double*)> initial_condition(const CaseSpec& spec,
                                                       std::string_view variant) {
    std::string v = variant.empty() ? spec.variants.front() : std::string(variant);
    bool known = false;
    for (const char* name : spec.variants)
        if (v == name) known = true;
    if (!known)
        throw std::invalid_argument("case '" + std::string(spec.name) + "' has no variant '" + v + "'");

    const std::string name = spec.name;
    if (name == "linsmth" || name == "linnonsmth" || name == "eikonal1d")
        return [](const double* x) { return std::sin(x[0]); };
    if (name == "burgers1d") {
        if (v == "corner") return [](const double* x) { return std::abs(x[0] - kPi); };
        return [](const double* x) { return std::sin(x[0]); };
    }
    if (name == "cos1d")
        return [](const double* x) { return -std::cos(kPi * x[0]); };
    if (name == "quartic1d")
        return [](const double* x) { return -2.0 * std::abs(x[0]); };
    if (name == "rotation") {
        if (v == "gauss")
            return [](const double* x) {
                const double sigma = 0.05;
                const double r2 = (x[0] - 0.4) * (x[0] - 0.4) + (x[1] - 0.4) * (x[1] - 0.4);
                return std::exp(-r2 / (2.0 * sigma * sigma));
            };
        return [](const double* x) {
            return cone_profile(std::hypot(x[0] - 0.4, x[1] - 0.4));
        };
    }
    if (name == "burgers2d" || name == "cos2d")
        return [](const double* x) { return -std::cos(0.5 * kPi * (x[0] + x[1])); };
    if (name == "crossderiv")
        return [](const double* x) { return std::sin(x[0]) + std::cos(x[1]); };
    if (name == "control")
        return [](const double*) { return 0.0; };
    if (name == "sinsum")
        return [](const double* x) { return kPi * (std::abs(x[1]) - std::abs(x[0])); };
    if (name == "surface") {
        if (v == "disk")
            return [](const double* x) {
                return -std::sin(0.5 * kPi * (x[0] * x[0] + x[1] * x[1]));
            };
        return [](const double* x) {
            return 1.0 - 0.25 * (std::cos(2.0 * kPi * x[0]) - 1.0) * (std::cos(2.0 * kPi * x[1]) - 1.0);
        };
    }
    throw std::logic_error("initial_condition: unhandled case");
}

}  // namespace hjdg
