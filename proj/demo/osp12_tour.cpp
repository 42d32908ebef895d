// A short walk through the center of U(osp(1|2)) in characteristic p.
//   osp12_tour [p]

#include <cstdlib>
#include <iostream>

#include "superkern/harish.hpp"
#include "superkern/zassenhaus.hpp"

using namespace superkern;

int main(int argc, char** argv) {
    const std::uint32_t p = argc > 1 ? static_cast<std::uint32_t>(std::atoi(argv[1])) : 3;
    auto g = osp12(p);
    auto U = std::make_shared<const Envelope>(g);

    std::cout << "osp(1|2) over F_" << p << ", PBW order:";
    for (std::size_t i = 0; i < g->dim(); ++i) std::cout << ' ' << g->basis_name(i);
    std::cout << "\n\n";

    auto s = special_elements(*U);
    std::cout << "S       = " << U->format(s.S) << "\n";
    std::cout << "S^2     = " << U->format(U->multiply(s.S, s.S)) << "\n";
    std::cout << "gamma1  : S^2 -> " << gamma1(*U, U->multiply(s.S, s.S)).format(toral_names(*g)) << "\n";
    std::cout << "identities hold: " << std::boolalpha << check_special_identities(*U, s).ok() << "\n\n";

    for (unsigned d = 0; d <= 2 * p; d += 2) {
        auto z = centralizer_slice(*U, d, false);
        std::cout << "dim Z_" << d << " = " << z.dim() << ", generated by xi_e, xi_h, xi_f, S^2: "
                  << center_generation_check(*U, d).equal() << "\n";
    }

    auto H = hypersurface(*U);
    std::cout << "\nrelation: " << H.F.format(g->field()) << " = 0\n\n";

    auto L = locus_report(U, H);
    std::cout << "points of Maxspec Z from simple modules (field " << L.field->describe() << "):\n";
    for (auto& r : L.rows) {
        std::cout << "  " << r.module << "  dim " << r.dim << "  type " << to_string(r.type) << "  (";
        for (std::size_t i = 0; i < r.point.size(); ++i) std::cout << (i ? ", " : "") << L.field->format(r.point[i]);
        std::cout << ")  " << (r.smooth ? "smooth" : "singular") << "\n";
    }
    std::cout << "smooth set as predicted: " << L.identity_holds << "; distinct singular points: " << L.singular_points.size()
              << "\n";
}
