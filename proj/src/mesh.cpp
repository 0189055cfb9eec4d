#include "hjdg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "hjdg/util.hpp"

namespace hjdg {

namespace {

void check_increasing(const std::vector<double>& v, const char* what) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) throw MeshError(std::string(what) + ": coordinates not strictly increasing");
}

}  // namespace

double Mesh1D::h() const {
    double m = 0.0;
    for (int j = 0; j < n_elements(); ++j) m = std::max(m, width(j));
    return m;
}

double Mesh1D::min_width() const {
    double m = width(0);
    for (int j = 1; j < n_elements(); ++j) m = std::min(m, width(j));
    return m;
}

Mesh1D build_uniform_1d(double a, double b, int n, BoundaryKind bc) {
    if (!(a < b)) throw MeshError("build_uniform_1d: need a < b");
    if (n < 2) throw MeshError("build_uniform_1d: need at least 2 cells");
    Mesh1D mesh;
    mesh.boundary = bc;
    mesh.interfaces.resize(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j)
        mesh.interfaces[static_cast<std::size_t>(j)] = a + (b - a) * static_cast<double>(j) / n;
    mesh.interfaces.front() = a;
    mesh.interfaces.back() = b;
    return mesh;
}

Mesh1D perturb_1d(const Mesh1D& mesh, double fraction, std::uint64_t seed) {
    if (fraction < 0.0 || fraction >= 0.5)
        throw MeshError("perturb_1d: fraction must lie in [0, 0.5)");
    Mesh1D out = mesh;
    if (fraction == 0.0) return out;
    const int n = mesh.n_elements();
    const double dx = (mesh.b() - mesh.a()) / n;
    std::mt19937_64 rng(seed);
    for (int j = 1; j < n; ++j) {
        const double u = uniform01_from_bits(rng());
        out.interfaces[static_cast<std::size_t>(j)] =
            mesh.interfaces[static_cast<std::size_t>(j)] + (2.0 * u - 1.0) * fraction * dx;
    }
    check_increasing(out.interfaces, "perturb_1d");
    return out;
}

double CartMesh2D::h() const {
    double m = 0.0;
    for (int i = 0; i < nx(); ++i) m = std::max(m, dx(i));
    for (int j = 0; j < ny(); ++j) m = std::max(m, dy(j));
    return m;
}

double CartMesh2D::min_dx() const {
    double m = dx(0);
    for (int i = 1; i < nx(); ++i) m = std::min(m, dx(i));
    return m;
}

double CartMesh2D::min_dy() const {
    double m = dy(0);
    for (int j = 1; j < ny(); ++j) m = std::min(m, dy(j));
    return m;
}

CartMesh2D build_cartesian(double a, double b, double c, double d, int nx, int ny, BoundaryKind bc) {
    if (!(a < b) || !(c < d)) throw MeshError("build_cartesian: need a < b and c < d");
    if (nx < 1 || ny < 1) throw MeshError("build_cartesian: need at least one cell per direction");
    CartMesh2D mesh;
    mesh.bc_x = mesh.bc_y = bc;
    mesh.xs.resize(static_cast<std::size_t>(nx) + 1);
    mesh.ys.resize(static_cast<std::size_t>(ny) + 1);
    for (int i = 0; i <= nx; ++i) mesh.xs[static_cast<std::size_t>(i)] = a + (b - a) * static_cast<double>(i) / nx;
    for (int j = 0; j <= ny; ++j) mesh.ys[static_cast<std::size_t>(j)] = c + (d - c) * static_cast<double>(j) / ny;
    mesh.xs.front() = a;
    mesh.xs.back() = b;
    mesh.ys.front() = c;
    mesh.ys.back() = d;
    return mesh;
}

double TriMesh2D::domain_measure() const {
    double s = 0.0;
    for (double a : areas) s += a;
    return s;
}

double TriMesh2D::min_altitude() const {
    double m = std::numeric_limits<double>::max();
    for (int e = 0; e < n_elements(); ++e) {
        double longest = 0.0;
        for (int le = 0; le < 3; ++le)
            longest = std::max(longest, edges[static_cast<std::size_t>(elem_edges[static_cast<std::size_t>(e)][static_cast<std::size_t>(le)])].length);
        m = std::min(m, 2.0 * areas[static_cast<std::size_t>(e)] / longest);
    }
    return m;
}

TriMesh2D make_tri_mesh(std::vector<std::array<double, 2>> nodes,
                        std::vector<std::array<int, 3>> triangles) {
    TriMesh2D mesh;
    mesh.nodes = std::move(nodes);
    mesh.tris = std::move(triangles);

    const int n_nodes = static_cast<int>(mesh.nodes.size());
    double coord_scale = 1e-300;
    for (const auto& p : mesh.nodes) coord_scale = std::max({coord_scale, std::abs(p[0]), std::abs(p[1])});

    mesh.areas.resize(mesh.tris.size());
    mesh.jac.resize(mesh.tris.size());
    mesh.inv_jac.resize(mesh.tris.size());
    for (std::size_t e = 0; e < mesh.tris.size(); ++e) {
        auto& t = mesh.tris[e];
        for (int v : t)
            if (v < 0 || v >= n_nodes) throw MeshError("mesh: triangle references missing node");
        const auto& p0 = mesh.nodes[static_cast<std::size_t>(t[0])];
        const auto& p1 = mesh.nodes[static_cast<std::size_t>(t[1])];
        const auto& p2 = mesh.nodes[static_cast<std::size_t>(t[2])];
        double twice_area = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
        if (twice_area < 0.0) {
            std::swap(t[1], t[2]);
            twice_area = -twice_area;
        }
        if (twice_area <= 1e-14 * coord_scale * coord_scale)
            throw MeshError("mesh: zero-area triangle " + std::to_string(e));
        mesh.areas[e] = 0.5 * twice_area;

        const auto& q1 = mesh.nodes[static_cast<std::size_t>(t[1])];
        const auto& q2 = mesh.nodes[static_cast<std::size_t>(t[2])];
        mesh.jac[e] = {q1[0] - p0[0], q2[0] - p0[0], q1[1] - p0[1], q2[1] - p0[1]};
        const double det = twice_area;
        mesh.inv_jac[e] = {mesh.jac[e][3] / det, -mesh.jac[e][1] / det,
                           -mesh.jac[e][2] / det, mesh.jac[e][0] / det};
    }

    // Edge discovery in element order; first adjacency fixes the normal side.
    std::map<std::pair<int, int>, int> edge_of;
    mesh.elem_edges.assign(mesh.tris.size(), {-1, -1, -1});
    for (std::size_t e = 0; e < mesh.tris.size(); ++e) {
        const auto& t = mesh.tris[e];
        for (int le = 0; le < 3; ++le) {
            const int a = t[static_cast<std::size_t>(le)];
            const int b = t[static_cast<std::size_t>((le + 1) % 3)];
            const auto key = std::minmax(a, b);
            auto it = edge_of.find(key);
            if (it == edge_of.end()) {
                TriMesh2D::Edge edge;
                edge.nodes = {a, b};
                edge.elem[0] = static_cast<int>(e);
                edge.local[0] = le;
                edge_of.emplace(key, static_cast<int>(mesh.edges.size()));
                mesh.elem_edges[e][static_cast<std::size_t>(le)] = static_cast<int>(mesh.edges.size());
                mesh.edges.push_back(edge);
            } else {
                auto& edge = mesh.edges[static_cast<std::size_t>(it->second)];
                if (edge.elem[1] >= 0)
                    throw MeshError("mesh: non-manifold edge (more than two adjacent triangles)");
                edge.elem[1] = static_cast<int>(e);
                edge.local[1] = le;
                mesh.elem_edges[e][static_cast<std::size_t>(le)] = it->second;
            }
        }
    }

    double max_edge = 0.0;
    for (auto& edge : mesh.edges) {
        const auto& pa = mesh.nodes[static_cast<std::size_t>(edge.nodes[0])];
        const auto& pb = mesh.nodes[static_cast<std::size_t>(edge.nodes[1])];
        const double ex = pb[0] - pa[0], ey = pb[1] - pa[1];
        edge.length = std::hypot(ex, ey);
        // ccw element boundary: outward normal is the edge direction rotated -90.
        edge.normal = {ey / edge.length, -ex / edge.length};
        edge.tangent = {-edge.normal[1], edge.normal[0]};
        edge.midpoint = {0.5 * (pa[0] + pb[0]), 0.5 * (pa[1] + pb[1])};
        max_edge = std::max(max_edge, edge.length);

        // Outward-orientation check against elem[0]'s centroid.
        const auto& t = mesh.tris[static_cast<std::size_t>(edge.elem[0])];
        const double cx = (mesh.nodes[static_cast<std::size_t>(t[0])][0] + mesh.nodes[static_cast<std::size_t>(t[1])][0] +
                           mesh.nodes[static_cast<std::size_t>(t[2])][0]) / 3.0;
        const double cy = (mesh.nodes[static_cast<std::size_t>(t[0])][1] + mesh.nodes[static_cast<std::size_t>(t[1])][1] +
                           mesh.nodes[static_cast<std::size_t>(t[2])][1]) / 3.0;
        if (edge.normal[0] * (edge.midpoint[0] - cx) + edge.normal[1] * (edge.midpoint[1] - cy) <= 0.0)
            throw MeshError("mesh: inward-pointing edge normal (degenerate triangle?)");
    }
    if (mesh.char_length == 0.0) mesh.char_length = max_edge;
    return mesh;
}

namespace {

TriMesh2D parse_native_mesh(std::istream& in) {
    std::string word;
    if (!(in >> word) || word != "nodes") throw MeshError("native mesh: expected 'nodes <N>'");
    int n_nodes = 0;
    if (!(in >> n_nodes) || n_nodes < 3) throw MeshError("native mesh: bad node count");
    std::vector<std::array<double, 2>> nodes(static_cast<std::size_t>(n_nodes));
    for (auto& p : nodes)
        if (!(in >> p[0] >> p[1])) throw MeshError("native mesh: truncated node list");

    if (!(in >> word) || word != "triangles") throw MeshError("native mesh: expected 'triangles <M>'");
    int n_tris = 0;
    if (!(in >> n_tris) || n_tris < 1) throw MeshError("native mesh: bad triangle count");
    std::vector<std::array<int, 3>> tris(static_cast<std::size_t>(n_tris));
    for (auto& t : tris)
        if (!(in >> t[0] >> t[1] >> t[2])) throw MeshError("native mesh: truncated triangle list");

    TriMesh2D mesh = make_tri_mesh(std::move(nodes), std::move(tris));

    if (in >> word) {
        if (word != "periodic") throw MeshError("native mesh: unexpected trailing section '" + word + "'");
        int n_pairs = 0;
        if (!(in >> n_pairs) || n_pairs < 0) throw MeshError("native mesh: bad periodic pair count");
        for (int p = 0; p < n_pairs; ++p) {
            int ea = -1, eb = -1;
            if (!(in >> ea >> eb)) throw MeshError("native mesh: truncated periodic list");
            if (ea < 0 || eb < 0 || ea >= static_cast<int>(mesh.edges.size()) ||
                eb >= static_cast<int>(mesh.edges.size()) || ea == eb)
                throw MeshError("native mesh: periodic pair references missing edge");
            auto& a = mesh.edges[static_cast<std::size_t>(ea)];
            auto& b = mesh.edges[static_cast<std::size_t>(eb)];
            if (!a.is_boundary() || !b.is_boundary())
                throw MeshError("native mesh: periodic pair on interior edge");
            a.periodic_partner = eb;
            b.periodic_partner = ea;
            a.periodic_shift = {b.midpoint[0] - a.midpoint[0], b.midpoint[1] - a.midpoint[1]};
            b.periodic_shift = {-a.periodic_shift[0], -a.periodic_shift[1]};
        }
    }
    return mesh;
}

TriMesh2D parse_gmsh22(std::istream& in) {
    std::string line;
    std::vector<std::array<double, 2>> nodes;
    std::map<long, int> node_index;
    std::vector<std::array<int, 3>> tris;
    bool saw_nodes = false, saw_elements = false;

    while (std::getline(in, line)) {
        if (line.rfind("$MeshFormat", 0) == 0) {
            std::string fmt;
            std::getline(in, fmt);
            std::istringstream fs(fmt);
            double version = 0.0;
            int file_type = 1;
            fs >> version >> file_type;
            if (std::abs(version - 2.2) > 1e-9 || file_type != 0)
                throw MeshError("gmsh mesh: only MSH 2.2 ASCII is supported");
        } else if (line.rfind("$Nodes", 0) == 0) {
            std::getline(in, line);
            const long n = std::stol(line);
            nodes.reserve(static_cast<std::size_t>(n));
            for (long i = 0; i < n; ++i) {
                if (!std::getline(in, line)) throw MeshError("gmsh mesh: truncated $Nodes");
                std::istringstream ls(line);
                long id;
                double x, y, z;
                if (!(ls >> id >> x >> y >> z)) throw MeshError("gmsh mesh: malformed node line");
                node_index[id] = static_cast<int>(nodes.size());
                nodes.push_back({x, y});
            }
            saw_nodes = true;
        } else if (line.rfind("$Elements", 0) == 0) {
            std::getline(in, line);
            const long n = std::stol(line);
            for (long i = 0; i < n; ++i) {
                if (!std::getline(in, line)) throw MeshError("gmsh mesh: truncated $Elements");
                std::istringstream ls(line);
                long id;
                int type, ntags;
                if (!(ls >> id >> type >> ntags)) throw MeshError("gmsh mesh: malformed element line");
                long tag;
                for (int t = 0; t < ntags; ++t) ls >> tag;
                if (type == 1 || type == 15) continue;  // boundary lines / points
                if (type != 2)
                    throw MeshError("gmsh mesh: unsupported element type " + std::to_string(type) +
                                    " (3-node triangles only)");
                long a, b, c;
                if (!(ls >> a >> b >> c)) throw MeshError("gmsh mesh: malformed triangle");
                auto look = [&](long nid) {
                    auto it = node_index.find(nid);
                    if (it == node_index.end()) throw MeshError("gmsh mesh: triangle references missing node");
                    return it->second;
                };
                tris.push_back({look(a), look(b), look(c)});
            }
            saw_elements = true;
        }
        // Other sections ($PhysicalNames, $End...) are skipped.
    }
    if (!saw_nodes || !saw_elements) throw MeshError("gmsh mesh: missing $Nodes or $Elements section");
    if (tris.empty()) throw MeshError("gmsh mesh: no triangles found");
    return make_tri_mesh(std::move(nodes), std::move(tris));
}

}  // namespace

TriMesh2D load_tri_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MeshError("cannot open mesh file: " + path);
    std::string first;
    in >> first;
    in.seekg(0);
    if (first == "$MeshFormat") return parse_gmsh22(in);
    if (first == "nodes") return parse_native_mesh(in);
    throw MeshError("unrecognized mesh format in " + path);
}

void write_native_mesh(const TriMesh2D& mesh, std::ostream& os) {
    os << "nodes " << mesh.nodes.size() << "\n";
    for (const auto& p : mesh.nodes) os << format_double(p[0]) << " " << format_double(p[1]) << "\n";
    os << "triangles " << mesh.tris.size() << "\n";
    for (const auto& t : mesh.tris) os << t[0] << " " << t[1] << " " << t[2] << "\n";
    std::vector<std::array<int, 2>> pairs;
    for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
        const int p = mesh.edges[e].periodic_partner;
        if (p >= 0 && static_cast<int>(e) < p) pairs.push_back({static_cast<int>(e), p});
    }
    if (!pairs.empty()) {
        os << "periodic " << pairs.size() << "\n";
        for (const auto& p : pairs) os << p[0] << " " << p[1] << "\n";
    }
}

TriMesh2D build_periodic_pairs(const TriMesh2D& mesh,
                               const std::vector<std::array<double, 2>>& directions) {
    TriMesh2D out = mesh;
    if (directions.empty()) return out;
    constexpr double tol = 1e-9;

    std::vector<int> boundary;
    for (std::size_t e = 0; e < out.edges.size(); ++e)
        if (out.edges[e].is_boundary()) boundary.push_back(static_cast<int>(e));

    auto endpoints = [&](int e) {
        const auto& edge = out.edges[static_cast<std::size_t>(e)];
        return std::array<std::array<double, 2>, 2>{out.nodes[static_cast<std::size_t>(edge.nodes[0])],
                                                    out.nodes[static_cast<std::size_t>(edge.nodes[1])]};
    };
    auto matches = [&](int ea, int eb, const std::array<double, 2>& shift) {
        const auto pa = endpoints(ea);
        const auto pb = endpoints(eb);
        auto close = [&](const std::array<double, 2>& u, const std::array<double, 2>& v) {
            return std::abs(u[0] + shift[0] - v[0]) < tol && std::abs(u[1] + shift[1] - v[1]) < tol;
        };
        return (close(pa[0], pb[0]) && close(pa[1], pb[1])) || (close(pa[0], pb[1]) && close(pa[1], pb[0]));
    };

    for (int ea : boundary) {
        if (out.edges[static_cast<std::size_t>(ea)].periodic_partner >= 0) continue;
        bool paired = false;
        for (const auto& dir : directions) {
            for (double sign : {1.0, -1.0}) {
                const std::array<double, 2> shift{sign * dir[0], sign * dir[1]};
                for (int eb : boundary) {
                    if (eb == ea || out.edges[static_cast<std::size_t>(eb)].periodic_partner >= 0) continue;
                    if (matches(ea, eb, shift)) {
                        out.edges[static_cast<std::size_t>(ea)].periodic_partner = eb;
                        out.edges[static_cast<std::size_t>(eb)].periodic_partner = ea;
                        out.edges[static_cast<std::size_t>(ea)].periodic_shift = shift;
                        out.edges[static_cast<std::size_t>(eb)].periodic_shift = {-shift[0], -shift[1]};
                        paired = true;
                        break;
                    }
                }
                if (paired) break;
            }
            if (paired) break;
        }
        if (!paired)
            throw MeshError("build_periodic_pairs: boundary edge has no translated partner");
    }
    return out;
}

TriMesh2D triangulate_rectangle(double a, double b, double c, double d, int nx, int ny) {
    if (nx < 1 || ny < 1) throw MeshError("triangulate_rectangle: need nx, ny >= 1");
    std::vector<double> xs(static_cast<std::size_t>(nx) + 1), ys(static_cast<std::size_t>(ny) + 1);
    for (int i = 0; i <= nx; ++i) xs[static_cast<std::size_t>(i)] = a + (b - a) * static_cast<double>(i) / nx;
    for (int j = 0; j <= ny; ++j) ys[static_cast<std::size_t>(j)] = c + (d - c) * static_cast<double>(j) / ny;
    xs.front() = a;
    xs.back() = b;
    ys.front() = c;
    ys.back() = d;
    return triangulate_rectangle_graded(xs, ys);
}

TriMesh2D triangulate_rectangle_graded(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() < 2 || ys.size() < 2) throw MeshError("triangulate_rectangle: need at least one cell");
    check_increasing(xs, "triangulate_rectangle");
    check_increasing(ys, "triangulate_rectangle");
    const int nx = static_cast<int>(xs.size()) - 1;
    const int ny = static_cast<int>(ys.size()) - 1;

    std::vector<std::array<double, 2>> nodes;
    nodes.reserve(static_cast<std::size_t>(nx + 1) * (ny + 1));
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) nodes.push_back({xs[static_cast<std::size_t>(i)], ys[static_cast<std::size_t>(j)]});

    auto node = [nx](int i, int j) { return j * (nx + 1) + i; };
    std::vector<std::array<int, 3>> tris;
    tris.reserve(static_cast<std::size_t>(2 * nx) * ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            tris.push_back({node(i, j), node(i + 1, j), node(i + 1, j + 1)});
            tris.push_back({node(i, j), node(i + 1, j + 1), node(i, j + 1)});
        }

    TriMesh2D mesh = make_tri_mesh(std::move(nodes), std::move(tris));
    double h = 0.0;
    for (int i = 0; i < nx; ++i) h = std::max(h, xs[static_cast<std::size_t>(i) + 1] - xs[static_cast<std::size_t>(i)]);
    for (int j = 0; j < ny; ++j) h = std::max(h, ys[static_cast<std::size_t>(j) + 1] - ys[static_cast<std::size_t>(j)]);
    mesh.char_length = h;
    return mesh;
}

int locate_point(const TriMesh2D& mesh, const double* xy) {
    constexpr double tol = 1e-12;
    for (int e = 0; e < mesh.n_elements(); ++e) {
        double ref[2];
        mesh.to_reference(e, xy, ref);
        if (ref[0] >= -tol && ref[1] >= -tol && ref[0] + ref[1] <= 1.0 + tol) return e;
    }
    return -1;
}

TriMesh2D disk_mesh(int n_rings, int n_angular, double grading) {
    if (n_rings < 2 || n_angular < 3) throw MeshError("disk_mesh: need n_rings >= 2, n_angular >= 3");
    if (grading < 1.0) throw MeshError("disk_mesh: grading must be >= 1");

    std::vector<std::array<double, 2>> nodes;
    nodes.push_back({0.0, 0.0});
    for (int m = 1; m <= n_rings; ++m) {
        const double r = std::pow(static_cast<double>(m) / n_rings, grading);
        for (int i = 0; i < n_angular; ++i) {
            const double th = 2.0 * M_PI * i / n_angular;
            nodes.push_back({r * std::cos(th), r * std::sin(th)});
        }
    }
    auto ring_node = [n_angular](int ring, int i) {
        return 1 + (ring - 1) * n_angular + (i % n_angular);
    };

    std::vector<std::array<int, 3>> tris;
    for (int i = 0; i < n_angular; ++i)
        tris.push_back({0, ring_node(1, i), ring_node(1, i + 1)});
    for (int m = 1; m < n_rings; ++m)
        for (int i = 0; i < n_angular; ++i) {
            tris.push_back({ring_node(m, i), ring_node(m + 1, i), ring_node(m + 1, i + 1)});
            tris.push_back({ring_node(m, i), ring_node(m + 1, i + 1), ring_node(m, i + 1)});
        }
    return make_tri_mesh(std::move(nodes), std::move(tris));
}

}  // namespace hjdg
