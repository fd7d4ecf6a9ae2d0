// Witness existence can depend on the realization, not just the
// combinatorial type. The standard triangular prism admits no 5-vertex
// subset hulling to its dual (the triangular bipyramid) because every
// 5-subset keeps a full planar quadrilateral facet; a perturbed point set
// that breaks the quads does admit one.

#include <polydual/polydual.hpp>

#include <iostream>

using namespace polydual;

int main() {
    VPolytope prism = cartesian_product(ngon(3), cube(1));

    SearchCertificate base = find_dual_subset(prism);
    std::cout << "standard triangular prism: " << base.total_subsets
              << " subsets of size 5, witnesses found: "
              << (base.mode == SearchCertificate::Mode::witness ? 1 : 0) << "\n";

    auto hunt = realization_search(prism, 50, 100, 2024);
    if (!hunt) {
        std::cout << "no perturbed realization admitted a witness\n";
        return 1;
    }
    std::cout << "perturbed trial " << hunt->trial << ": witness subset {";
    for (std::size_t i = 0; i < hunt->certificate.subset->size(); ++i)
        std::cout << (i ? ", " : "") << (*hunt->certificate.subset)[i];
    std::cout << "}, type preserved: " << (hunt->type_preserved ? "yes" : "no") << "\n";

    std::vector<QVector> pts;
    for (auto i : *hunt->certificate.subset)
        pts.push_back(hunt->realization.vertex(i));
    VPolytope hull = VPolytope::from_points(pts);
    VPolytope bip = bipyramid(ngon(3));
    std::cout << "witness hull f-vector " << format_fvector(f_vector_of(hull))
              << ", equivalent to the triangular bipyramid: "
              << (are_equivalent(incidence_of(hull), incidence_of(bip)) ? "yes" : "no") << "\n";
    std::cout << "realization fingerprint: " << hunt->certificate.realization_hash << "\n";
    return 0;
}
