#pragma once

// Arithmetic and structural checks behind the product-of-polytopes
// obstruction: the per-vertex incidence bound, the polygon threshold, the
// pigeonhole count, and the exact product-partition and bipyramid-tower
// validations.

#include <polydual/constructions.hpp>
#include <polydual/equivalence.hpp>
#include <polydual/polytope.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace polydual {

// Exact integer ceiling division for positive operands.
inline long long ceil_div(long long a, long long b) {
    return (a + b - 1) / b;
}

inline long long pow2_checked(long long d) {
    if (d < 0 || d > 62)
        throw std::invalid_argument("2^d out of range");
    return 1ll << d;
}

// ceil((n + 2d) / 2^d) - d'. May be <= 0, in which case the hypothesis is
// unsatisfiable: every vertex lies on at least d' facets.
inline long long incidence_bound(long long n, long long d, long long d_prime) {
    if (d < 1)
        throw std::invalid_argument("incidence_bound: need d >= 1");
    if (d_prime < 2)
        throw std::invalid_argument("incidence_bound: need d' >= 2");
    if (n < d_prime + 1)
        throw std::invalid_argument("incidence_bound: need n >= d' + 1");
    return ceil_div(n + 2 * d, pow2_checked(d)) - d_prime;
}

// Smallest polygon size covered by the bound at d' = 2: 3*2^d - 2d + 1.
inline long long corollary_threshold(long long d) {
    if (d < 1)
        throw std::invalid_argument("corollary_threshold: need d >= 1");
    return 3 * pow2_checked(d) - 2 * d + 1;
}

// Guaranteed maximum load when `total` items fall into `parts` boxes.
inline long long pigeonhole_min(long long total, long long parts) {
    if (total < 0)
        throw std::invalid_argument("pigeonhole_min: need total >= 0");
    if (parts < 1)
        throw std::invalid_argument("pigeonhole_min: need parts >= 1");
    if (total == 0)
        return 0;
    return ceil_div(total, parts);
}

// The bound evaluated on a concrete polytope, with the hypothesis verdict.
struct BoundReport {
    long long n = 0;        // facets of P
    long long d = 0;        // cube dimension
    long long d_prime = 0;  // dim(P)
    long long ceiling_term = 0;
    long long bound = 0;
    std::size_t max_incidence = 0;  // most facets through any vertex of P
    bool hypothesis_ok = false;
    std::string note;
};

inline BoundReport make_bound_report(const VPolytope& p, int d) {
    if (p.dim() < 2)
        throw std::invalid_argument("bound report: need dim(P) >= 2");
    BoundReport r;
    r.n = static_cast<long long>(p.num_facets());
    r.d = d;
    r.d_prime = p.dim();
    r.ceiling_term = ceil_div(r.n + 2 * r.d, pow2_checked(r.d));
    r.bound = r.ceiling_term - r.d_prime;
    const auto& inc = incidence_of(p);
    for (std::size_t v = 0; v < inc.num_vertices(); ++v)
        r.max_incidence = std::max(r.max_incidence, inc.row_count(v));
    r.hypothesis_ok = static_cast<long long>(r.max_incidence) <= r.bound;
    if (r.bound < r.d_prime)
        r.note = "hypothesis unsatisfiable: any vertex of P is in at least d' facets";
    return r;
}

namespace detail {

// Orients a canonical facet plane so the polytope satisfies <n, x> <= b.
inline void orient_inward(QVector& normal, Rational& offset, const std::vector<QVector>& verts) {
    for (const auto& v : verts) {
        int s = sign_of(dot(normal, v) - offset);
        if (s > 0) {
            for (auto& x : normal)
                x = -x;
            offset = -offset;
            return;
        }
        if (s < 0)
            return;
    }
}

// True when `part` is the vertex set of a face of q, verified exactly by
// exhibiting a supporting hyperplane: the sum of the (oriented) facet
// inequalities tight on all of `part` must be tight on `part` and slack
// everywhere else.
inline bool is_face_vertex_set(const VPolytope& q, const std::vector<std::size_t>& part) {
    if (part.empty() || part.size() >= q.num_vertices())
        return false;
    const auto& facets = q.facets();
    BitSet members(q.num_vertices());
    for (auto i : part) {
        if (i >= q.num_vertices())
            return false;
        members.set(i);
    }
    QVector sum_n(q.ambient(), Rational(0));
    Rational sum_b = 0;
    bool any = false;
    for (const auto& f : facets) {
        if ((members & f.incident) != members)
            continue;
        QVector n = f.plane.normal;
        Rational b = f.plane.offset;
        orient_inward(n, b, q.vertices());
        sum_n = vec_add(sum_n, n);
        sum_b += b;
        any = true;
    }
    if (!any)
        return false;
    for (std::size_t v = 0; v < q.num_vertices(); ++v) {
        int s = sign_of(dot(sum_n, q.vertex(v)) - sum_b);
        if (s > 0)
            return false;
        if ((s == 0) != members.test(v))
            return false;
    }
    return true;
}

}  // namespace detail

// Validates the cube-copy partition of a product: the parts are disjoint,
// cover V(Q), each part's hull is combinatorially a copy of the base, and
// each part is exactly cut out by a supporting hyperplane of Q.
inline bool product_partition_check(const ProductStructure& ps, std::string* detail_out = nullptr) {
    auto fail = [&](std::string why) {
        if (detail_out)
            *detail_out = std::move(why);
        return false;
    };
    const std::size_t nv = ps.product.num_vertices();
    if (ps.copy_partition.size() != static_cast<std::size_t>(pow2_checked(ps.cube_dim)))
        return fail("partition has wrong number of parts");
    std::vector<char> covered(nv, 0);
    for (const auto& part : ps.copy_partition)
        for (auto i : part) {
            if (i >= nv || covered[i])
                return fail("parts are not a partition of the vertex set");
            covered[i] = 1;
        }
    for (std::size_t i = 0; i < nv; ++i)
        if (!covered[i])
            return fail("parts do not cover the vertex set");

    const auto& base_inc = incidence_of(ps.base);
    for (std::size_t k = 0; k < ps.copy_partition.size(); ++k) {
        const auto& part = ps.copy_partition[k];
        std::vector<QVector> pts;
        pts.reserve(part.size());
        for (auto i : part)
            pts.push_back(ps.product.vertex(i));
        AffineChart chart = restrict_to_span(pts);
        VPolytope hull = VPolytope::from_points(chart.local);
        if (hull.num_vertices() != ps.base.num_vertices() ||
            !are_equivalent(incidence_of(hull), base_inc))
            return fail("part " + std::to_string(k) + " is not a copy of the base");
        if (!detail::is_face_vertex_set(ps.product, part))
            return fail("part " + std::to_string(k) + " admits no exact supporting hyperplane");
    }
    return true;
}

namespace detail {

// Shared core: dual of Q against the d-times iterated bipyramid over the
// dual of the base, plus the vertex count n + 2d.
inline bool bipyramid_structure_check_impl(const VPolytope& base, const VPolytope& q, int d) {
    VPolytope dual_q = polar_dual(q);
    const std::size_t expected = base.num_facets() + 2 * static_cast<std::size_t>(d);
    if (dual_q.num_vertices() != expected)
        return false;
    BipyramidTower tower = iterated_bipyramid(polar_dual(base), d);
    return are_equivalent(incidence_of(dual_q), incidence_of(tower.result)).has_value();
}

}  // namespace detail

// Checks that the dual of P x cube(d) is the d-times iterated bipyramid
// over P*, and in particular has n + 2d vertices.
inline bool bipyramid_structure_check(const VPolytope& p, int d) {
    if (p.dim() < 2)
        throw std::invalid_argument("bipyramid_structure_check: need dim(P) >= 2");
    if (d < 1)
        throw std::invalid_argument("bipyramid_structure_check: need d >= 1");
    ProductStructure ps = product_with_cube(p, d);
    return detail::bipyramid_structure_check_impl(p, ps.product, d);
}

}  // namespace polydual
