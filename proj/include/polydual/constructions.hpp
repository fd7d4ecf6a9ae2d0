#pragma once

// Constructors for every polytope family the tool works with: rational
// polygons, cubes, simplices, cross-polytopes, Cartesian products (with
// the cube-copy partition used by the product analysis), pyramids over
// both apexes (bipyramids, iterated), polar duals, combinatorial duals,
// vertex truncation, and combinatorially-safe rational perturbation.

#include <polydual/equivalence.hpp>
#include <polydual/face_lattice.hpp>
#include <polydual/polytope.hpp>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace polydual {

inline QVector centroid(const std::vector<QVector>& pts) {
    QVector c(pts[0].size(), Rational(0));
    for (const auto& p : pts)
        c = vec_add(c, p);
    Rational n(static_cast<long long>(pts.size()));
    for (auto& x : c)
        x /= n;
    return c;
}

// Convex n-gon with rational vertices on the unit circle, via the
// tan-half-angle parametrization ((1-t^2)/(1+t^2), 2t/(1+t^2)) at the
// integer parameters t = -floor(n/2), ..., in increasing order. Regular
// n-gons have irrational coordinates; any rational convex-position points
// realize the same combinatorial type.
inline VPolytope ngon(std::size_t n) {
    if (n < 3)
        throw std::invalid_argument("ngon: need n >= 3");
    std::vector<QVector> verts;
    verts.reserve(n);
    const long long lo = -static_cast<long long>(n / 2);
    for (std::size_t k = 0; k < n; ++k) {
        Rational t(lo + static_cast<long long>(k));
        Rational den = 1 + t * t;
        verts.push_back({(1 - t * t) / den, (2 * t) / den});
    }
    return VPolytope::from_vertices(std::move(verts));
}

// Standard 0/1 cube; vertex i has coordinate j equal to bit j of i.
inline VPolytope cube(int d) {
    if (d < 1 || d > 20)
        throw std::invalid_argument("cube: need 1 <= d <= 20");
    std::vector<QVector> verts;
    verts.reserve(std::size_t(1) << d);
    for (std::size_t i = 0; i < (std::size_t(1) << d); ++i) {
        QVector v(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j)
            v[static_cast<std::size_t>(j)] = Rational((i >> j) & 1u);
        verts.push_back(std::move(v));
    }
    return VPolytope::from_vertices(std::move(verts));
}

// Origin plus the unit basis points.
inline VPolytope simplex(int d) {
    if (d < 1)
        throw std::invalid_argument("simplex: need d >= 1");
    std::vector<QVector> verts(static_cast<std::size_t>(d) + 1,
                               QVector(static_cast<std::size_t>(d), Rational(0)));
    for (int i = 0; i < d; ++i)
        verts[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(i)] = 1;
    return VPolytope::from_vertices(std::move(verts));
}

// The points +-e_i (all plus signs first).
inline VPolytope cross_polytope(int d) {
    if (d < 1)
        throw std::invalid_argument("cross_polytope: need d >= 1");
    std::vector<QVector> verts;
    verts.reserve(2 * static_cast<std::size_t>(d));
    for (int s = 0; s < 2; ++s)
        for (int i = 0; i < d; ++i) {
            QVector v(static_cast<std::size_t>(d), Rational(0));
            v[static_cast<std::size_t>(i)] = s == 0 ? 1 : -1;
            verts.push_back(std::move(v));
        }
    return VPolytope::from_vertices(std::move(verts));
}

// Vertex (i, j) of the product gets index i * b.num_vertices() + j.
inline VPolytope cartesian_product(const VPolytope& a, const VPolytope& b) {
    std::vector<QVector> verts;
    verts.reserve(a.num_vertices() * b.num_vertices());
    for (const auto& x : a.vertices())
        for (const auto& y : b.vertices()) {
            QVector v = x;
            v.insert(v.end(), y.begin(), y.end());
            verts.push_back(std::move(v));
        }
    return VPolytope::from_vertices(std::move(verts));
}

// A product Q = P x [0,1]^d together with the partition of V(Q) into the
// 2^d copies of V(P), one per cube vertex.
struct ProductStructure {
    VPolytope base;
    int cube_dim = 0;
    VPolytope product;
    std::vector<std::vector<std::size_t>> copy_partition;
};

inline ProductStructure product_with_cube(const VPolytope& base, int d) {
    ProductStructure ps;
    ps.base = base;
    ps.cube_dim = d;
    VPolytope c = cube(d);
    ps.product = cartesian_product(base, c);
    const std::size_t parts = c.num_vertices();
    ps.copy_partition.assign(parts, {});
    for (std::size_t i = 0; i < base.num_vertices(); ++i)
        for (std::size_t j = 0; j < parts; ++j)
            ps.copy_partition[j].push_back(i * parts + j);
    return ps;
}

// Embeds p in a hyperplane of one-higher dimension and adds two apexes at
// height +-1 over the vertex centroid.
inline VPolytope bipyramid(const VPolytope& p) {
    if (p.dim() != static_cast<int>(p.ambient()))
        throw std::invalid_argument("bipyramid: polytope must be full-dimensional");
    std::vector<QVector> verts;
    verts.reserve(p.num_vertices() + 2);
    for (const auto& x : p.vertices()) {
        QVector v = x;
        v.push_back(0);
        verts.push_back(std::move(v));
    }
    QVector c = centroid(p.vertices());
    QVector up = c, down = c;
    up.push_back(1);
    down.push_back(-1);
    verts.push_back(std::move(up));
    verts.push_back(std::move(down));
    return VPolytope::from_vertices(std::move(verts));
}

// d-fold iterated bipyramid; each level appends its two apexes at the end,
// so earlier indices are stable and apex_indices lists 2d entries.
struct BipyramidTower {
    VPolytope core;
    int levels = 0;
    std::vector<std::size_t> apex_indices;
    VPolytope result;
};

inline BipyramidTower iterated_bipyramid(const VPolytope& p, int d) {
    if (d < 1)
        throw std::invalid_argument("iterated_bipyramid: need d >= 1");
    BipyramidTower t;
    t.core = p;
    t.levels = d;
    t.result = p;
    for (int i = 0; i < d; ++i) {
        std::size_t n = t.result.num_vertices();
        t.apex_indices.push_back(n);
        t.apex_indices.push_back(n + 1);
        t.result = bipyramid(t.result);
    }
    return t;
}

// Polar dual, realized about the vertex centroid: after translating the
// centroid to the origin every facet satisfies <n, x> = b with b != 0, and
// n/b is the corresponding dual vertex.
inline VPolytope polar_dual(const VPolytope& p) {
    if (p.dim() != static_cast<int>(p.ambient()))
        throw std::invalid_argument("polar_dual: polytope must be full-dimensional");
    QVector c = centroid(p.vertices());
    std::vector<QVector> duals;
    duals.reserve(p.facets().size());
    for (const auto& f : p.facets()) {
        Rational b = f.plane.offset - dot(f.plane.normal, c);
        if (b == 0)
            throw std::logic_error("polar_dual: centroid not interior");
        QVector u(p.ambient());
        for (std::size_t i = 0; i < u.size(); ++i)
            u[i] = f.plane.normal[i] / b;
        duals.push_back(std::move(u));
    }
    return VPolytope::from_vertices(std::move(duals));
}

// Transpose of the incidence matrix; an involution.
inline IncidenceStructure combinatorial_dual(const IncidenceStructure& inc) {
    std::vector<BitSet> rows(inc.num_facets());
    for (std::size_t f = 0; f < inc.num_facets(); ++f)
        rows[f] = inc.col(f);
    return IncidenceStructure(inc.num_vertices(), std::move(rows));
}

// Cuts every vertex at parameter t along each of its edges. For t in
// (0, 1/2) on a polytope with well-defined vertex figures this yields one
// new facet per original vertex plus a shrunken copy of each original
// facet.
inline VPolytope truncate_vertices(const VPolytope& p, const Rational& t) {
    if (!(t > 0 && t < Rational(1, 2)))
        throw std::invalid_argument("truncate_vertices: need 0 < t < 1/2");
    FaceLattice lat = face_lattice_of(p);
    std::vector<QVector> pts;
    for (const auto& edge : lat.faces_of_dim(1)) {
        std::size_t u = edge.find_first();
        std::size_t v = edge.find_next(u);
        const QVector& pu = p.vertex(u);
        const QVector& pv = p.vertex(v);
        pts.push_back(vec_add(pu, vec_scale(vec_sub(pv, pu), t)));
        pts.push_back(vec_add(pv, vec_scale(vec_sub(pu, pv), t)));
    }
    return VPolytope::from_points(pts);
}

namespace detail {

// Deterministic small rational offset with |offset| <= 1/bound.
inline Rational rational_offset(std::mt19937_64& rng, std::uint64_t bound) {
    constexpr std::int64_t kres = 720;
    std::int64_t k = static_cast<std::int64_t>(rng() % (2 * kres + 1)) - kres;
    return make_rational(Int(k), Int(kres) * Int(bound));
}

}  // namespace detail

// Type-preserving perturbation: nudges every facet-plane coefficient by an
// independent rational offset bounded by 1/denominator_bound, re-derives
// each vertex from its (perturbed) incident facet planes, and accepts only
// if the result is combinatorially equivalent to the input. Perturbing the
// planes rather than the vertex coordinates keeps non-simplicial facets
// planar, which is what makes type preservation reachable for cubes,
// prisms and friends. Deterministic for fixed (input, bound, seed).
inline VPolytope perturb(const VPolytope& p, std::uint64_t denominator_bound, std::uint64_t seed) {
    if (denominator_bound < 2)
        throw std::invalid_argument("perturb: need denominator_bound >= 2");
    const std::size_t m = p.ambient();
    if (p.dim() != static_cast<int>(m))
        throw std::invalid_argument("perturb: polytope must be full-dimensional");
    const auto& facets = p.facets();
    const auto& inc = incidence_of(p);

    // per-vertex: a full-rank selection of incident facets, greedy by index
    std::vector<std::vector<std::size_t>> support(p.num_vertices());
    for (std::size_t v = 0; v < p.num_vertices(); ++v) {
        QMatrix chosen;
        for (std::size_t f = 0; f < facets.size() && chosen.size() < m; ++f) {
            if (!inc.test(v, f))
                continue;
            QMatrix trial = chosen;
            trial.push_back(facets[f].plane.normal);
            if (rank(trial) == trial.size()) {
                chosen = std::move(trial);
                support[v].push_back(f);
            }
        }
        if (support[v].size() != m)
            throw std::logic_error("perturb: vertex without full-rank facet support");
    }

    std::mt19937_64 rng(seed);
    constexpr int max_attempts = 64;
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<QVector> normals(facets.size());
        std::vector<Rational> offsets(facets.size());
        for (std::size_t f = 0; f < facets.size(); ++f) {
            normals[f] = facets[f].plane.normal;
            for (auto& x : normals[f])
                x += detail::rational_offset(rng, denominator_bound);
            offsets[f] = facets[f].plane.offset + detail::rational_offset(rng, denominator_bound);
        }
        try {
            std::vector<QVector> pts;
            pts.reserve(p.num_vertices());
            for (std::size_t v = 0; v < p.num_vertices(); ++v) {
                QMatrix A;
                QVector b;
                for (auto f : support[v]) {
                    A.push_back(normals[f]);
                    b.push_back(offsets[f]);
                }
                pts.push_back(solve_full_rank(A, b));
            }
            VPolytope cand = VPolytope::from_vertices(std::move(pts));
            if (are_equivalent(incidence_of(cand), inc))
                return cand;
        } catch (const std::invalid_argument&) {
            // singular perturbed system or a point fell off the hull; retry
        }
    }
    throw std::runtime_error("perturbation failed");
}

}  // namespace polydual
