#pragma once

// V-representation polytopes with exact facet enumeration and the
// vertex-facet incidence structure, the combinatorial identity every
// equivalence judgment in this library is made on.

#include <polydual/linalg.hpp>

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polydual {

using BitSet = boost::dynamic_bitset<>;

// A facet: its supporting hyperplane (canonical scaling) and the indices
// of the vertices lying on it.
struct Facet {
    Hyperplane plane;
    BitSet incident;
};

// The 0/1 vertex-facet matrix. Rows are vertices, columns facets.
// For an actual polytope no two rows and no two columns coincide; the
// constructor enforces that.
class IncidenceStructure {
public:
    IncidenceStructure(std::size_t num_facets, std::vector<BitSet> rows)
        : nf_(num_facets), rows_(std::move(rows)) {
        for (const auto& r : rows_)
            if (r.size() != nf_)
                throw std::invalid_argument("incidence: ragged rows");
        std::set<std::vector<bool>> seen;
        for (const auto& r : rows_) {
            std::vector<bool> key(nf_);
            for (std::size_t f = 0; f < nf_; ++f)
                key[f] = r.test(f);
            if (!seen.insert(key).second)
                throw std::invalid_argument("incidence: duplicate rows");
        }
        seen.clear();
        for (std::size_t f = 0; f < nf_; ++f) {
            std::vector<bool> key(rows_.size());
            for (std::size_t v = 0; v < rows_.size(); ++v)
                key[v] = rows_[v].test(f);
            if (!seen.insert(key).second)
                throw std::invalid_argument("incidence: duplicate columns");
        }
    }

    std::size_t num_vertices() const { return rows_.size(); }
    std::size_t num_facets() const { return nf_; }

    bool test(std::size_t v, std::size_t f) const { return rows_[v].test(f); }
    const BitSet& row(std::size_t v) const { return rows_[v]; }

    // vertex set of facet f, as a bitset over vertex indices
    BitSet col(std::size_t f) const {
        BitSet c(rows_.size());
        for (std::size_t v = 0; v < rows_.size(); ++v)
            if (rows_[v].test(f))
                c.set(v);
        return c;
    }

    std::size_t row_count(std::size_t v) const { return rows_[v].count(); }
    std::size_t col_count(std::size_t f) const { return col(f).count(); }

    friend bool operator==(const IncidenceStructure& a, const IncidenceStructure& b) {
        return a.nf_ == b.nf_ && a.rows_ == b.rows_;
    }

private:
    std::size_t nf_;
    std::vector<BitSet> rows_;
};

namespace detail {

inline void append_plane_key(QVector& key, const Hyperplane& h) {
    key = h.normal;
    key.push_back(h.offset);
}

// All hyperplanes spanned by affinely independent m-subsets of the points
// that have the whole set weakly on one side, with exact incidence sets.
// Requires the points to affinely span their ambient space. Because a
// supporting hyperplane through m affinely independent points of a convex
// set meets it in a facet, the result is exactly the facet list of the
// hull, sorted by canonical plane.
inline std::vector<Facet> supporting_planes(const std::vector<QVector>& pts) {
    const std::size_t n = pts.size();
    const std::size_t m = pts[0].size();
    std::map<QVector, Facet> kept;
    std::set<QVector> rejected;
    if (n < m)
        return {};

    std::vector<std::size_t> idx(m);
    for (std::size_t i = 0; i < m; ++i)
        idx[i] = i;
    std::vector<QVector> subset(m);
    QVector key;
    for (;;) {
        for (std::size_t i = 0; i < m; ++i)
            subset[i] = pts[idx[i]];
        if (auto h = spanning_hyperplane_opt(subset)) {
            append_plane_key(key, *h);
            if (!kept.count(key) && !rejected.count(key)) {
                bool has_pos = false, has_neg = false;
                BitSet incident(n);
                for (std::size_t v = 0; v < n && !(has_pos && has_neg); ++v) {
                    int s = side_of(*h, pts[v]);
                    if (s > 0)
                        has_pos = true;
                    else if (s < 0)
                        has_neg = true;
                    else
                        incident.set(v);
                }
                if (has_pos && has_neg)
                    rejected.insert(key);
                else
                    kept.emplace(key, Facet{*h, std::move(incident)});
            }
        }
        // next lexicographic combination
        std::size_t i = m;
        while (i > 0 && idx[i - 1] == n - m + (i - 1))
            --i;
        if (i == 0)
            break;
        ++idx[i - 1];
        for (std::size_t j = i; j < m; ++j)
            idx[j] = idx[j - 1] + 1;
    }

    std::vector<Facet> out;
    out.reserve(kept.size());
    for (auto& [k, f] : kept)
        out.push_back(std::move(f));
    return out;
}

// A point of the set is a vertex of the hull exactly when the normals of
// the supporting planes through it span the full ambient space.
inline bool is_extreme(const std::vector<Facet>& facets, std::size_t point, std::size_t m) {
    QMatrix normals;
    for (const auto& f : facets)
        if (f.incident.test(point))
            normals.push_back(f.plane.normal);
    if (normals.size() < m)
        return false;
    return rank(std::move(normals)) == m;
}

}  // namespace detail

// Indices of the points that are vertices (0-faces) of the convex hull of
// the set. Works for lower-dimensional hulls by restricting to the affine
// span. When a point occurs several times only its first occurrence can be
// reported, so repeated points never count as being in convex position.
inline std::vector<std::size_t> hull_vertex_set(const std::vector<QVector>& points) {
    if (points.empty())
        throw std::invalid_argument("hull_vertex_set: no points");
    AffineChart chart = restrict_to_span(points);
    if (chart.dim == 0)
        return {0};
    const std::size_t k = static_cast<std::size_t>(chart.dim);
    auto facets = detail::supporting_planes(chart.local);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool duplicate = false;
        for (std::size_t j = 0; j < i && !duplicate; ++j)
            duplicate = (points[j] == points[i]);
        if (!duplicate && detail::is_extreme(facets, i, k))
            out.push_back(i);
    }
    return out;
}

inline bool is_convex_position(const std::vector<QVector>& points) {
    return hull_vertex_set(points).size() == points.size();
}

// A polytope given by its vertices. Immutable after construction; the
// facet and incidence data are computed once on demand and shared by
// copies, so read access is safe across threads once populated.
class VPolytope {
public:
    VPolytope() = default;

    // Trusts that the points are pairwise distinct vertices of their hull
    // (checked lazily when the facets are first computed).
    static VPolytope from_vertices(std::vector<QVector> verts) {
        if (verts.empty())
            throw std::invalid_argument("polytope: no vertices");
        const std::size_t m = verts[0].size();
        for (const auto& v : verts)
            if (v.size() != m)
                throw std::invalid_argument("polytope: ragged coordinates");
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (verts[i] == verts[j])
                    throw std::invalid_argument("polytope: duplicate vertex");
        VPolytope p;
        p.ambient_ = m;
        p.dim_ = affine_dim(verts);
        p.verts_ = std::move(verts);
        return p;
    }

    // Keeps only the points that are vertices of the hull.
    static VPolytope from_points(const std::vector<QVector>& points) {
        auto keep = hull_vertex_set(points);
        std::vector<QVector> verts;
        verts.reserve(keep.size());
        for (auto i : keep)
            verts.push_back(points[i]);
        return from_vertices(std::move(verts));
    }

    const std::vector<QVector>& vertices() const { return verts_; }
    const QVector& vertex(std::size_t i) const { return verts_[i]; }
    std::size_t num_vertices() const { return verts_.size(); }
    std::size_t ambient() const { return ambient_; }
    int dim() const { return dim_; }

    // Complete facet list, sorted by canonical hyperplane. Requires the
    // polytope to be full-dimensional in its ambient space.
    const std::vector<Facet>& facets() const {
        std::call_once(cache_->facets_once, [this] {
            if (dim_ != static_cast<int>(ambient_))
                throw std::invalid_argument("facets: not full-dimensional");
            cache_->facets = detail::supporting_planes(verts_);
            for (std::size_t i = 0; i < verts_.size(); ++i)
                if (!detail::is_extreme(cache_->facets, i, ambient_))
                    throw std::invalid_argument("facets: listed points are not all vertices");
        });
        return cache_->facets;
    }

    std::size_t num_facets() const { return facets().size(); }

    const IncidenceStructure& incidence() const {
        std::call_once(cache_->inc_once, [this] {
            const auto& fs = facets();
            std::vector<BitSet> rows(verts_.size(), BitSet(fs.size()));
            for (std::size_t f = 0; f < fs.size(); ++f)
                for (std::size_t v = 0; v < verts_.size(); ++v)
                    if (fs[f].incident.test(v))
                        rows[v].set(f);
            cache_->inc = std::make_unique<IncidenceStructure>(fs.size(), std::move(rows));
        });
        return *cache_->inc;
    }

private:
    struct Cache {
        std::once_flag facets_once;
        std::once_flag inc_once;
        std::vector<Facet> facets;
        std::unique_ptr<IncidenceStructure> inc;
    };

    std::vector<QVector> verts_;
    std::size_t ambient_ = 0;
    int dim_ = 0;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Value-returning forms of the cached accessors. Copying keeps them safe
// on temporaries; the structures are small. Hold the polytope and use
// .facets() / .incidence() where a reference matters.
inline std::vector<Facet> facets_of(const VPolytope& p) {
    return p.facets();
}

inline IncidenceStructure incidence_of(const VPolytope& p) {
    return p.incidence();
}

}  // namespace polydual
