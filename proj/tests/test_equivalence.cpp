#include <polydual/constructions.hpp>
#include <polydual/equivalence.hpp>

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

using namespace polydual;

namespace {

VPolytope shuffled(const VPolytope& p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto verts = p.vertices();
    std::shuffle(verts.begin(), verts.end(), rng);
    return VPolytope::from_vertices(std::move(verts));
}

}  // namespace

TEST_CASE("signature is invariant under relabeling") {
    auto a = signature(incidence_of(cube(3)));
    auto b = signature(incidence_of(shuffled(cube(3), 5)));
    REQUIRE(a == b);
}

TEST_CASE("signature separates the cube from the cross-polytope") {
    auto a = signature(incidence_of(cube(3)));
    auto b = signature(incidence_of(cross_polytope(3)));
    REQUIRE_FALSE(a == b);
    REQUIRE(a.f_vector == std::vector<std::size_t>{8, 12, 6});
    REQUIRE(b.f_vector == std::vector<std::size_t>{6, 12, 8});
}

TEST_CASE("signature separates the two 5-vertex solids") {
    // triangular bipyramid: vertex degrees {4,4,4,3,3};
    // square pyramid: {4,3,3,3,3}
    auto bp = incidence_of(bipyramid(ngon(3)));
    auto py = incidence_of(oracle::square_pyramid());
    std::multiset<std::size_t> deg_bp, deg_py;
    for (std::size_t v = 0; v < 5; ++v) {
        deg_bp.insert(bp.row_count(v));
        deg_py.insert(py.row_count(v));
    }
    REQUIRE(deg_bp == std::multiset<std::size_t>{3, 3, 4, 4, 4});
    REQUIRE(deg_py == std::multiset<std::size_t>{3, 3, 3, 3, 4});
    REQUIRE_FALSE(signature(bp) == signature(py));
}

TEST_CASE("are_equivalent finds a witness for a shuffled cube") {
    auto a = incidence_of(cube(3));
    auto b = incidence_of(shuffled(cube(3), 99));
    auto w = are_equivalent(a, b);
    REQUIRE(w.has_value());
    REQUIRE(verify_iso(a, b, *w));
}

TEST_CASE("pentagon and hexagon are not equivalent") {
    REQUIRE_FALSE(are_equivalent(incidence_of(ngon(5)), incidence_of(ngon(6))).has_value());
}

TEST_CASE("cube minus an antipodal pair is an octahedron") {
    auto c = cube(3);
    std::vector<QVector> pts;
    for (std::size_t i : {0, 1, 2, 5, 6, 7})
        pts.push_back(c.vertex(i));
    auto hull = VPolytope::from_points(pts);
    auto w = are_equivalent(incidence_of(hull), incidence_of(cross_polytope(3)));
    REQUIRE(w.has_value());
    REQUIRE(verify_iso(incidence_of(hull), incidence_of(cross_polytope(3)), *w));
}

TEST_CASE("self-equivalence always holds") {
    for (const auto& item : oracle::catalog()) {
        INFO(item.name);
        auto w = are_equivalent(incidence_of(item.poly), incidence_of(item.poly));
        REQUIRE(w.has_value());
        REQUIRE(verify_iso(incidence_of(item.poly), incidence_of(item.poly), *w));
    }
}

TEST_CASE("equivalence is symmetric") {
    auto a = incidence_of(cartesian_product(ngon(3), cube(1)));
    auto b = incidence_of(shuffled(cartesian_product(ngon(3), cube(1)), 17));
    REQUIRE(are_equivalent(a, b).has_value() == are_equivalent(b, a).has_value());
    auto c = incidence_of(bipyramid(ngon(3)));
    REQUIRE_FALSE(are_equivalent(a, c).has_value());
    REQUIRE_FALSE(are_equivalent(c, a).has_value());
}

TEST_CASE("backtracking agrees with the brute-force oracle on small pairs") {
    auto small = oracle::catalog(10, 4);
    for (std::size_t i = 0; i < small.size(); ++i)
        for (std::size_t j = i; j < small.size(); ++j) {
            const auto& a = incidence_of(small[i].poly);
            const auto& b = incidence_of(small[j].poly);
            INFO(small[i].name << " vs " << small[j].name);
            REQUIRE(are_equivalent(a, b).has_value() == oracle::brute_force_equivalent(a, b));
        }
}

TEST_CASE("equivalent polytopes have equal f-vectors") {
    auto small = oracle::catalog();
    for (std::size_t i = 0; i < small.size(); ++i)
        for (std::size_t j = i + 1; j < small.size(); ++j) {
            if (!are_equivalent(incidence_of(small[i].poly), incidence_of(small[j].poly)))
                continue;
            INFO(small[i].name << " vs " << small[j].name);
            REQUIRE(f_vector_of(small[i].poly) == f_vector_of(small[j].poly));
        }
}

TEST_CASE("witnesses returned are sound under relabeling") {
    std::mt19937_64 rng(123);
    for (const auto& item : oracle::catalog(10, 3)) {
        INFO(item.name);
        auto a = incidence_of(item.poly);
        auto b = incidence_of(shuffled(item.poly, rng()));
        auto w = are_equivalent(a, b);
        REQUIRE(w.has_value());
        REQUIRE(verify_iso(a, b, *w));
    }
}
