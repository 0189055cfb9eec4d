#include "hjdg/field.hpp"

namespace hjdg {

void dump_sampled(const DGField<Mesh1D>& field, int per_cell, std::ostream& os) {
    os << "x,phi\n";
    const int ns = per_cell < 2 ? 2 : per_cell;
    for (int e = 0; e < field.n_elements(); ++e)
        for (int s = 0; s < ns; ++s) {
            const double xi = -1.0 + 2.0 * s / (ns - 1);
            double x;
            field.mesh().to_physical(e, &xi, &x);
            os << format_double(x) << "," << format_double(field.value_ref(e, &xi)) << "\n";
        }
}

void dump_sampled(const DGField<CartMesh2D>& field, int per_cell, std::ostream& os) {
    os << "x,y,phi\n";
    const int ns = per_cell < 2 ? 2 : per_cell;
    for (int e = 0; e < field.n_elements(); ++e)
        for (int sj = 0; sj < ns; ++sj)
            for (int si = 0; si < ns; ++si) {
                const double ref[2] = {-1.0 + 2.0 * si / (ns - 1), -1.0 + 2.0 * sj / (ns - 1)};
                double xy[2];
                field.mesh().to_physical(e, ref, xy);
                os << format_double(xy[0]) << "," << format_double(xy[1]) << ","
                   << format_double(field.value_ref(e, ref)) << "\n";
            }
}

void dump_sampled(const DGField<TriMesh2D>& field, int per_cell, std::ostream& os) {
    os << "x,y,phi\n";
    const int ns = per_cell < 2 ? 2 : per_cell;
    for (int e = 0; e < field.n_elements(); ++e)
        for (int sj = 0; sj < ns; ++sj)
            for (int si = 0; si + sj < ns; ++si) {
                const double ref[2] = {static_cast<double>(si) / (ns - 1),
                                       static_cast<double>(sj) / (ns - 1)};
                double xy[2];
                field.mesh().to_physical(e, ref, xy);
                os << format_double(xy[0]) << "," << format_double(xy[1]) << ","
                   << format_double(field.value_ref(e, ref)) << "\n";
            }
}

}  // namespace hjdg
