// Command-line runner: single runs, convergence studies, penalty sweeps, mesh
// utilities and plot emission for the Hamilton-Jacobi DG solver.
#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hjdg/analysis.hpp"
#include "hjdg/runner.hpp"
#include "hjdg/util.hpp"

using namespace hjdg;

namespace {

std::vector<double> split_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    return out;
}

std::vector<int> split_ints(const std::string& s) {
    std::vector<int> out;
    for (double v : split_doubles(s)) out.push_back(static_cast<int>(std::lround(v)));
    return out;
}

LimiterKind parse_limiter(const std::string& name) {
    if (name == "none") return LimiterKind::None;
    if (name == "minmod") return LimiterKind::Minmod;
    if (name == "moment") return LimiterKind::Moment;
    throw ConfigError("unknown limiter '" + name + "' (none|minmod|moment)");
}

MeshFamily parse_mesh_family(const std::string& name) {
    if (name == "line") return MeshFamily::Line;
    if (name == "cart") return MeshFamily::Cartesian;
    if (name == "tri") return MeshFamily::Triangular;
    throw ConfigError("unknown mesh family '" + name + "' (line|cart|tri)");
}

struct CommonOpts {
    RunConfig cfg;
    std::string limiter_name, mesh_name, dt_law_name = "standard";
    int threads = 0;

    void finish() {
        if (!limiter_name.empty()) cfg.limiter = parse_limiter(limiter_name);
        if (!mesh_name.empty()) cfg.mesh = parse_mesh_family(mesh_name);
        if (dt_law_name == "p43") cfg.dt_law = DtLaw::P43;
        else if (dt_law_name != "standard") throw ConfigError("unknown dt law (standard|p43)");
        if (threads > 0) set_num_threads(threads);
    }
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--case", o.cfg.case_name, "benchmark case name")->required();
    cmd->add_option("--ic", o.cfg.variant, "initial-condition variant");
    cmd->add_option("--k", o.cfg.degree, "polynomial degree (>= 1)");
    cmd->add_option("--n", o.cfg.n, "cells (1D) or cells per direction (2D)");
    cmd->add_option("--ny", o.cfg.ny, "cells in y (Cartesian, optional)");
    cmd->add_option("--h", o.cfg.h, "triangle characteristic length (overrides --n)");
    cmd->add_option("--mesh-file", o.cfg.mesh_file, "triangle mesh file (native or Gmsh 2.2)");
    cmd->add_option("--mesh", o.mesh_name, "mesh family: line|cart|tri");
    cmd->add_option("--c", o.cfg.penalty_c, "entropy-fix penalty constant C");
    cmd->add_option("--cfl", o.cfg.cfl, "CFL number (case default if omitted)");
    cmd->add_option("--tfinal", o.cfg.t_final, "final time (case default if omitted)");
    cmd->add_option("--limiter", o.limiter_name, "limiter: none|minmod|moment");
    cmd->add_option("--dt-law", o.dt_law_name, "time-step law: standard|p43");
    cmd->add_option("--seed", o.cfg.seed, "RNG seed for mesh perturbation");
    cmd->add_option("--perturb", o.cfg.perturb, "1D mesh perturbation fraction in [0, 0.5)");
    cmd->add_option("--quad-boost", o.cfg.volume_quad_boost, "extra volume quadrature degrees");
    cmd->add_option("--threads", o.threads, "worker threads (or HJDG_THREADS)");
    cmd->set_config("--config", "", "flat key=value config file (flags override)");
}

std::string summary_line(const RunConfig& cfg, const RunResult& r) {
    std::ostringstream os;
    os << "case=" << cfg.case_name << " k=" << cfg.degree << " T=" << r.t_final
       << " steps=" << r.steps;
    if (r.has_norms) {
        os.setf(std::ios::scientific);
        os.precision(3);
        os << " L1=" << r.norms.l1 << " L2=" << r.norms.l2 << " Linf=" << r.norms.linf;
        os << " oracle=" << r.oracle_kind;
        if (r.norms.linf > 0.1) os << " flag=large-error";
    } else {
        os << " oracle=none";
    }
    return os.str();
}

void write_dumps(const RunResult& result, const std::string& prefix, int sample_n) {
    if (prefix.empty()) return;
    std::ofstream coeffs(prefix + "_coefficients.csv");
    std::ofstream sampled(prefix + "_solution.csv");
    if (!coeffs || !sampled) throw ConfigError("cannot open output files with prefix " + prefix);
    std::visit(
        [&](const auto& out) {
            dump_coefficients(*out.field, coeffs);
            dump_sampled(*out.field, sample_n, sampled);
        },
        result.out);
}

// --- plot helpers -------------------------------------------------------------

struct Samples1D {
    std::vector<double> x, phi;
};

Samples1D read_xy_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    Samples1D s;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string a, b;
        std::getline(ss, a, ',');
        std::getline(ss, b, ',');
        s.x.push_back(std::stod(a));
        s.phi.push_back(std::stod(b));
    }
    if (s.x.empty()) throw ConfigError("no samples in " + path);
    return s;
}

void write_svg_plot(const Samples1D& num, const std::function<double(double)>& exact,
                    const std::string& out_path) {
    const int width = 800, height = 560, margin = 60;
    double xmin = num.x.front(), xmax = num.x.front();
    double ymin = num.phi.front(), ymax = num.phi.front();
    for (std::size_t i = 0; i < num.x.size(); ++i) {
        xmin = std::min(xmin, num.x[i]);
        xmax = std::max(xmax, num.x[i]);
        ymin = std::min(ymin, num.phi[i]);
        ymax = std::max(ymax, num.phi[i]);
    }
    if (exact) {
        for (int i = 0; i <= 512; ++i) {
            const double v = exact(xmin + (xmax - xmin) * i / 512.0);
            ymin = std::min(ymin, v);
            ymax = std::max(ymax, v);
        }
    }
    const double pad = 0.05 * (ymax - ymin + 1e-12);
    ymin -= pad;
    ymax += pad;
    auto px = [&](double x) { return margin + (x - xmin) / (xmax - xmin) * (width - 2 * margin); };
    auto py = [&](double y) { return height - margin - (y - ymin) / (ymax - ymin) * (height - 2 * margin); };

    std::ofstream os(out_path);
    if (!os) throw ConfigError("cannot open " + out_path);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << width - 2 * margin
       << "\" height=\"" << height - 2 * margin << "\" fill=\"none\" stroke=\"black\"/>\n";
    // solid line: exact; circles: numerical (the figure convention of the tables)
    if (exact) {
        os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
        for (int i = 0; i <= 512; ++i) {
            const double x = xmin + (xmax - xmin) * i / 512.0;
            os << px(x) << "," << py(exact(x)) << " ";
        }
        os << "\"/>\n";
    }
    for (std::size_t i = 0; i < num.x.size(); ++i)
        os << "<circle cx=\"" << px(num.x[i]) << "\" cy=\"" << py(num.phi[i])
           << "\" r=\"2.5\" fill=\"none\" stroke=\"blue\"/>\n";
    os << "<text x=\"" << margin << "\" y=\"" << height - margin / 3 << "\">x in [" << xmin << ", "
       << xmax << "], phi in [" << ymin << ", " << ymax << "]</text>\n";
    os << "</svg>\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hjdg: discontinuous Galerkin solver for Hamilton-Jacobi equations"};
    app.require_subcommand(1);
    std::function<int()> action;

    // ---- run
    auto* run_cmd = app.add_subcommand("run", "single run with solution dumps");
    auto run_opts = std::make_shared<CommonOpts>();
    auto run_prefix = std::make_shared<std::string>();
    auto run_samples = std::make_shared<int>(4);
    add_common(run_cmd, *run_opts);
    run_cmd->add_option("-o,--out", *run_prefix, "output prefix for CSV dumps");
    run_cmd->add_option("--sample-n", *run_samples, "sample points per cell per direction");
    run_cmd->callback([=, &action] {
        action = [=]() {
            run_opts->finish();
            RunResult result = run_case(run_opts->cfg);
            write_dumps(result, *run_prefix, *run_samples);
            std::cout << summary_line(run_opts->cfg, result) << "\n";
            return 0;
        };
    });

    // ---- converge
    auto* conv_cmd = app.add_subcommand("converge", "convergence study, one CSV per (case, k)");
    auto conv_opts = std::make_shared<CommonOpts>();
    auto conv_prefix = std::make_shared<std::string>();
    auto n_list = std::make_shared<std::string>("40,80,160");
    auto k_list = std::make_shared<std::string>();
    auto conv_format = std::make_shared<std::string>("csv");
    add_common(conv_cmd, *conv_opts);
    conv_cmd->add_option("--n-list", *n_list, "comma-separated resolutions");
    conv_cmd->add_option("--k-list", *k_list, "comma-separated degrees (default: --k)");
    conv_cmd->add_option("-o,--out", *conv_prefix, "output prefix");
    conv_cmd->add_option("--format", *conv_format, "csv|markdown (stdout format)");
    conv_cmd->callback([=, &action] {
        action = [=]() {
            conv_opts->finish();
            std::vector<int> degrees =
                k_list->empty() ? std::vector<int>{conv_opts->cfg.degree} : split_ints(*k_list);
            const std::vector<int> ns = split_ints(*n_list);
            for (int k : degrees) {
                RunConfig cfg = conv_opts->cfg;
                cfg.degree = k;
                ConvergenceReport report = convergence_study(cfg, ns);
                if (*conv_format == "markdown") report.write_markdown(std::cout);
                else report.write_csv(std::cout);
                if (!conv_prefix->empty()) {
                    std::ofstream os(*conv_prefix + cfg.case_name + "_p" + std::to_string(k) + ".csv");
                    if (!os) throw ConfigError("cannot open output prefix " + *conv_prefix);
                    report.write_csv(os);
                }
            }
            return 0;
        };
    });

    // ---- sweep-c
    auto* sweep_cmd = app.add_subcommand("sweep-c", "rerun one setup across penalty constants");
    auto sweep_opts = std::make_shared<CommonOpts>();
    auto c_list = std::make_shared<std::string>("0,0.125,0.25,0.5,1.0");
    auto sweep_prefix = std::make_shared<std::string>();
    auto sweep_samples = std::make_shared<int>(4);
    add_common(sweep_cmd, *sweep_opts);
    sweep_cmd->add_option("--c-list", *c_list, "comma-separated penalty constants");
    sweep_cmd->add_option("-o,--out", *sweep_prefix, "per-C profile output prefix");
    sweep_cmd->add_option("--sample-n", *sweep_samples, "sample points per cell");
    sweep_cmd->callback([=, &action] {
        action = [=]() {
            sweep_opts->finish();
            const std::vector<double> cs = split_doubles(*c_list);
            for (double c : cs)
                if (c < 0.0) throw ConfigError("penalty constant C must be nonnegative");
            for (double c : cs) {
                RunConfig cfg = sweep_opts->cfg;
                cfg.penalty_c = c;
                RunResult result = run_case(cfg);
                std::cout << "C=" << c << " " << summary_line(cfg, result) << "\n";
                if (!sweep_prefix->empty()) {
                    std::ostringstream name;
                    name << *sweep_prefix << "_c" << c;
                    write_dumps(result, name.str(), *sweep_samples);
                }
            }
            return 0;
        };
    });

    // ---- plot
    auto* plot_cmd = app.add_subcommand("plot", "SVG line plot / diagonal cut from solution dumps");
    auto plot_input = std::make_shared<std::string>();
    auto plot_out = std::make_shared<std::string>("plot.svg");
    auto plot_case = std::make_shared<std::string>();
    auto plot_variant = std::make_shared<std::string>();
    auto plot_t = std::make_shared<double>(-1.0);
    auto plot_cut = std::make_shared<bool>(false);
    plot_cmd->add_option("--input", *plot_input, "sampled-solution CSV")->required();
    plot_cmd->add_option("-o,--out", *plot_out, "output file (SVG or CSV for cuts)");
    plot_cmd->add_option("--case", *plot_case, "case name for the oracle overlay");
    plot_cmd->add_option("--ic", *plot_variant, "initial-condition variant");
    plot_cmd->add_option("--tfinal", *plot_t, "time of the dump (for the oracle)");
    plot_cmd->add_flag("--cut45", *plot_cut, "extract the 45-degree diagonal cut of a 2D dump");
    plot_cmd->callback([=, &action] {
        action = [=]() {
            std::ifstream in(*plot_input);
            if (!in) throw ConfigError("cannot open " + *plot_input);
            std::string header;
            std::getline(in, header);
            const bool is2d = header.rfind("x,y,", 0) == 0;
            if (*plot_cut) {
                if (!is2d) throw ConfigError("--cut45 needs a 2D dump (x,y,phi)");
                std::ofstream os(*plot_out);
                os << "s,phi\n";
                std::string line;
                while (std::getline(in, line)) {
                    std::stringstream ss(line);
                    std::string a, b, c;
                    std::getline(ss, a, ',');
                    std::getline(ss, b, ',');
                    std::getline(ss, c, ',');
                    const double x = std::stod(a), y = std::stod(b);
                    if (std::abs(x - y) < 1e-9)
                        os << format_double(x * std::sqrt(2.0)) << "," << c << "\n";
                }
                return 0;
            }
            if (is2d) {
                // gnuplot-style grid data
                std::ofstream os(*plot_out);
                std::string line;
                double last_x = std::nan("");
                while (std::getline(in, line)) {
                    std::stringstream ss(line);
                    std::string a, b, c;
                    std::getline(ss, a, ',');
                    std::getline(ss, b, ',');
                    std::getline(ss, c, ',');
                    const double x = std::stod(a);
                    if (!std::isnan(last_x) && x != last_x) os << "\n";
                    last_x = x;
                    os << a << " " << b << " " << c << "\n";
                }
                return 0;
            }
            Samples1D samples = read_xy_csv(*plot_input);
            std::function<double(double)> exact;
            if (!plot_case->empty() && *plot_t >= 0.0) {
                auto oracle = make_error_oracle(*plot_case, *plot_variant, *plot_t, 16384);
                if (oracle) {
                    const double t = *plot_t;
                    exact = [oracle, t](double x) { return oracle(&x, t); };
                }
            }
            write_svg_plot(samples, exact, *plot_out);
            return 0;
        };
    });

    // ---- mesh-info
    auto* info_cmd = app.add_subcommand("mesh-info", "load a triangle mesh and report invariants");
    auto info_path = std::make_shared<std::string>();
    info_cmd->add_option("--mesh-file", *info_path, "mesh path")->required();
    info_cmd->callback([=, &action] {
        action = [=]() {
            const TriMesh2D mesh = load_tri_mesh(*info_path);
            int boundary = 0, periodic = 0;
            double max_nt = 0.0, max_unit = 0.0;
            for (const auto& e : mesh.edges) {
                if (e.is_boundary()) ++boundary;
                if (e.periodic_partner >= 0) ++periodic;
                max_nt = std::max(max_nt, std::abs(e.normal[0] * e.tangent[0] + e.normal[1] * e.tangent[1]));
                max_unit = std::max(max_unit, std::abs(std::hypot(e.normal[0], e.normal[1]) - 1.0));
            }
            std::cout << "nodes=" << mesh.nodes.size() << " triangles=" << mesh.tris.size()
                      << " edges=" << mesh.edges.size() << " boundary_edges=" << boundary
                      << " periodic_edges=" << periodic << "\n";
            std::cout << "area=" << format_double(mesh.domain_measure()) << " h="
                      << format_double(mesh.h()) << " min_altitude=" << format_double(mesh.min_altitude())
                      << "\n";
            std::cout << "max|n.t|=" << max_nt << " max||n|-1|=" << max_unit << "\n";
            return 0;
        };
    });

    // ---- gen-mesh
    auto* gen_cmd = app.add_subcommand("gen-mesh", "generate triangle meshes in the native format");
    auto gen_kind = std::make_shared<std::string>("rect");
    auto gen_domain = std::make_shared<std::string>("-2,2,-2,2");
    auto gen_nx = std::make_shared<int>(16);
    auto gen_ny = std::make_shared<int>(0);
    auto gen_periodic = std::make_shared<bool>(false);
    auto gen_out = std::make_shared<std::string>("mesh.txt");
    auto gen_rings = std::make_shared<int>(24);
    auto gen_nang = std::make_shared<int>(72);
    auto gen_grading = std::make_shared<double>(1.5);
    gen_cmd->add_option("--kind", *gen_kind, "rect|graded-rect|disk");
    gen_cmd->add_option("--domain", *gen_domain, "a,b,c,d");
    gen_cmd->add_option("--nx", *gen_nx, "cells in x");
    gen_cmd->add_option("--ny", *gen_ny, "cells in y (default --nx)");
    gen_cmd->add_flag("--periodic", *gen_periodic, "add periodic boundary pairs");
    gen_cmd->add_option("--rings", *gen_rings, "disk: radial rings");
    gen_cmd->add_option("--nang", *gen_nang, "disk: angular subdivisions");
    gen_cmd->add_option("--grading", *gen_grading, "grading exponent");
    gen_cmd->add_option("-o,--out", *gen_out, "output path");
    gen_cmd->callback([=, &action] {
        action = [=]() {
            const std::vector<double> dom = split_doubles(*gen_domain);
            if (dom.size() != 4) throw ConfigError("--domain needs a,b,c,d");
            const int ny = *gen_ny > 0 ? *gen_ny : *gen_nx;
            TriMesh2D mesh;
            if (*gen_kind == "rect") {
                mesh = triangulate_rectangle(dom[0], dom[1], dom[2], dom[3], *gen_nx, ny);
            } else if (*gen_kind == "graded-rect") {
                auto graded = [&](double lo, double hi, int n) {
                    std::vector<double> xs(static_cast<std::size_t>(n) + 1);
                    for (int i = 0; i <= n; ++i) {
                        const double u = 2.0 * i / n - 1.0;
                        xs[static_cast<std::size_t>(i)] =
                            lo + (hi - lo) * 0.5 * (1.0 + (u >= 0 ? 1 : -1) * std::pow(std::abs(u), *gen_grading));
                    }
                    xs.front() = lo;
                    xs.back() = hi;
                    return xs;
                };
                mesh = triangulate_rectangle_graded(graded(dom[0], dom[1], *gen_nx),
                                                    graded(dom[2], dom[3], ny));
            } else if (*gen_kind == "disk") {
                mesh = disk_mesh(*gen_rings, *gen_nang, *gen_grading);
            } else {
                throw ConfigError("unknown mesh kind '" + *gen_kind + "'");
            }
            if (*gen_periodic)
                mesh = build_periodic_pairs(mesh, {{dom[1] - dom[0], 0.0}, {0.0, dom[3] - dom[2]}});
            std::ofstream os(*gen_out);
            if (!os) throw ConfigError("cannot open " + *gen_out);
            write_native_mesh(mesh, os);
            std::cout << "wrote " << *gen_out << " (" << mesh.tris.size() << " triangles)\n";
            return 0;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        return action ? action() : 2;
    } catch (const BlowupError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const MeshError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
