// Mesh construction and ingestion: 1D interval meshes, 2D Cartesian meshes,
// and unstructured triangle meshes with connectivity, measures, outward
// normals/tangents and periodic boundary pairing.
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace hjdg {

enum class BoundaryKind { Periodic, Outflow };

struct MeshError : std::runtime_error {
    explicit MeshError(const std::string& what) : std::runtime_error(what) {}
};

struct Mesh1D {
    static constexpr int dim = 1;

    std::vector<double> interfaces;  // strictly increasing, size N+1
    BoundaryKind boundary = BoundaryKind::Periodic;

    int n_elements() const { return static_cast<int>(interfaces.size()) - 1; }
    double left(int j) const { return interfaces[static_cast<std::size_t>(j)]; }
    double right(int j) const { return interfaces[static_cast<std::size_t>(j) + 1]; }
    double width(int j) const { return right(j) - left(j); }
    double center(int j) const { return 0.5 * (left(j) + right(j)); }
    double a() const { return interfaces.front(); }
    double b() const { return interfaces.back(); }
    double h() const;
    double min_width() const;
    double domain_measure() const { return b() - a(); }

    void to_reference(int e, const double* x, double* xi) const {
        xi[0] = 2.0 * (x[0] - left(e)) / width(e) - 1.0;
    }
    void to_physical(int e, const double* xi, double* x) const {
        x[0] = left(e) + 0.5 * (xi[0] + 1.0) * width(e);
    }
    void ref_grad_to_phys(int e, const double* gref, double* gphys) const {
        gphys[0] = gref[0] * 2.0 / width(e);
    }
    double jacobian_det(int e) const { return 0.5 * width(e); }
    double measure(int e) const { return width(e); }
};

Mesh1D build_uniform_1d(double a, double b, int n, BoundaryKind bc = BoundaryKind::Periodic);

// Moves each interior interface by an independent uniform sample in
// [-fraction*dx, +fraction*dx], dx being the uniform width. Same seed gives a
// bit-identical mesh. fraction must be < 0.5 so cells cannot collapse.
Mesh1D perturb_1d(const Mesh1D& mesh, double fraction, std::uint64_t seed);

struct CartMesh2D {
    static constexpr int dim = 2;

    std::vector<double> xs, ys;  // interface coordinates per direction
    BoundaryKind bc_x = BoundaryKind::Periodic;
    BoundaryKind bc_y = BoundaryKind::Periodic;

    int nx() const { return static_cast<int>(xs.size()) - 1; }
    int ny() const { return static_cast<int>(ys.size()) - 1; }
    int n_elements() const { return nx() * ny(); }
    int elem(int i, int j) const { return j * nx() + i; }
    double dx(int i) const { return xs[static_cast<std::size_t>(i) + 1] - xs[static_cast<std::size_t>(i)]; }
    double dy(int j) const { return ys[static_cast<std::size_t>(j) + 1] - ys[static_cast<std::size_t>(j)]; }
    double h() const;
    double min_dx() const;
    double min_dy() const;
    double domain_measure() const { return (xs.back() - xs.front()) * (ys.back() - ys.front()); }

    void to_reference(int e, const double* x, double* ref) const {
        const int i = e % nx(), j = e / nx();
        ref[0] = 2.0 * (x[0] - xs[static_cast<std::size_t>(i)]) / dx(i) - 1.0;
        ref[1] = 2.0 * (x[1] - ys[static_cast<std::size_t>(j)]) / dy(j) - 1.0;
    }
    void to_physical(int e, const double* ref, double* x) const {
        const int i = e % nx(), j = e / nx();
        x[0] = xs[static_cast<std::size_t>(i)] + 0.5 * (ref[0] + 1.0) * dx(i);
        x[1] = ys[static_cast<std::size_t>(j)] + 0.5 * (ref[1] + 1.0) * dy(j);
    }
    void ref_grad_to_phys(int e, const double* gref, double* gphys) const {
        const int i = e % nx(), j = e / nx();
        gphys[0] = gref[0] * 2.0 / dx(i);
        gphys[1] = gref[1] * 2.0 / dy(j);
    }
    double jacobian_det(int e) const {
        const int i = e % nx(), j = e / nx();
        return 0.25 * dx(i) * dy(j);
    }
    double measure(int e) const {
        const int i = e % nx(), j = e / nx();
        return dx(i) * dy(j);
    }
};

CartMesh2D build_cartesian(double a, double b, double c, double d, int nx, int ny,
                           BoundaryKind bc = BoundaryKind::Periodic);

struct TriMesh2D {
    static constexpr int dim = 2;

    struct Edge {
        std::array<int, 2> nodes{-1, -1};          // endpoints in elem[0]'s ccw order
        std::array<int, 2> elem{-1, -1};           // adjacent elements, elem[1] = -1 on boundary
        std::array<int, 2> local{-1, -1};          // local edge index within each element
        double length = 0.0;                       // edge measure
        std::array<double, 2> normal{0.0, 0.0};    // unit, outward from elem[0]
        std::array<double, 2> tangent{0.0, 0.0};   // unit, normal rotated +90 degrees
        std::array<double, 2> midpoint{0.0, 0.0};
        int periodic_partner = -1;                 // edge index, -1 if none
        std::array<double, 2> periodic_shift{0.0, 0.0};  // maps points here onto the partner

        bool is_boundary() const { return elem[1] < 0; }
        bool is_coupled() const { return elem[1] >= 0 || periodic_partner >= 0; }
    };

    std::vector<std::array<double, 2>> nodes;
    std::vector<std::array<int, 3>> tris;        // ccw node triples
    std::vector<Edge> edges;
    std::vector<std::array<int, 3>> elem_edges;  // per element, edge id of local edge 0..2
    std::vector<double> areas;
    double char_length = 0.0;  // set by generators; max edge length otherwise

    int n_elements() const { return static_cast<int>(tris.size()); }
    double h() const { return char_length; }
    double domain_measure() const;
    double min_altitude() const;

    // Affine map data: x = v0 + J * (xi, eta)
    std::vector<std::array<double, 4>> jac;      // [j00 j01 j10 j11]
    std::vector<std::array<double, 4>> inv_jac;

    void to_reference(int e, const double* x, double* ref) const {
        const auto& v0 = nodes[static_cast<std::size_t>(tris[static_cast<std::size_t>(e)][0])];
        const auto& m = inv_jac[static_cast<std::size_t>(e)];
        const double rx = x[0] - v0[0], ry = x[1] - v0[1];
        ref[0] = m[0] * rx + m[1] * ry;
        ref[1] = m[2] * rx + m[3] * ry;
    }
    void to_physical(int e, const double* ref, double* x) const {
        const auto& v0 = nodes[static_cast<std::size_t>(tris[static_cast<std::size_t>(e)][0])];
        const auto& m = jac[static_cast<std::size_t>(e)];
        x[0] = v0[0] + m[0] * ref[0] + m[1] * ref[1];
        x[1] = v0[1] + m[2] * ref[0] + m[3] * ref[1];
    }
    void ref_grad_to_phys(int e, const double* gref, double* gphys) const {
        // grad_x = J^{-T} grad_ref
        const auto& m = inv_jac[static_cast<std::size_t>(e)];
        gphys[0] = m[0] * gref[0] + m[2] * gref[1];
        gphys[1] = m[1] * gref[0] + m[3] * gref[1];
    }
    double jacobian_det(int e) const { return 2.0 * areas[static_cast<std::size_t>(e)]; }
    double measure(int e) const { return areas[static_cast<std::size_t>(e)]; }
};

// Builds connectivity and geometry from raw nodes/triangles. Fixes triangle
// orientation to ccw; throws MeshError for zero-area triangles and
// non-manifold edges (more than two adjacent triangles).
TriMesh2D make_tri_mesh(std::vector<std::array<double, 2>> nodes,
                        std::vector<std::array<int, 3>> triangles);

// Reads either the native ASCII format or Gmsh MSH 2.2 ASCII (detected from
// the first token).
TriMesh2D load_tri_mesh(const std::string& path);

void write_native_mesh(const TriMesh2D& mesh, std::ostream& os);

// Pairs boundary edges that match under translation by one of the direction
// vectors (+/-). Paired edges couple like interior edges. Throws if a
// boundary edge stays unmatched while directions were given.
TriMesh2D build_periodic_pairs(const TriMesh2D& mesh,
                               const std::vector<std::array<double, 2>>& directions);

// Diagonal-split triangulation of [a,b] x [c,d]; 2*nx*ny triangles with
// characteristic length max(dx, dy).
TriMesh2D triangulate_rectangle(double a, double b, double c, double d, int nx, int ny);

// Same splitting on explicit interface coordinates (graded meshes).
TriMesh2D triangulate_rectangle_graded(const std::vector<double>& xs, const std::vector<double>& ys);

// Structured polar mesh of the unit disk with radial grading exponent > 1
// clustering elements near the origin.
TriMesh2D disk_mesh(int n_rings, int n_angular, double grading);

// Element containing the point (barycentric tolerance 1e-12), or -1.
int locate_point(const TriMesh2D& mesh, const double* xy);

}  // namespace hjdg
