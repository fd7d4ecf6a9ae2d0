#pragma once

// The face lattice of a polytope, recovered from vertex-facet incidences
// alone. Faces are exactly the intersections of facet vertex sets (plus
// the full set); grading is by longest chain, which for polytopal
// incidences coincides with geometric dimension.

#include <polydual/polytope.hpp>

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <vector>

namespace polydual {

struct FaceLattice {
    int dim = 0;
    // every face as a vertex set, including the empty face and the full
    // set, sorted by (dimension, vertex set)
    std::vector<BitSet> faces;
    std::vector<int> face_dims;  // aligned with faces; empty face has -1
    // proper face counts by dimension 0..dim-1 (empty and full excluded)
    std::vector<std::size_t> f_vector;

    std::vector<BitSet> faces_of_dim(int d) const {
        std::vector<BitSet> out;
        for (std::size_t i = 0; i < faces.size(); ++i)
            if (face_dims[i] == d)
                out.push_back(faces[i]);
        return out;
    }
};

// Builds the lattice and derives the dimension from the longest chain.
inline FaceLattice face_lattice(const IncidenceStructure& inc) {
    const std::size_t nv = inc.num_vertices();
    const std::size_t nf = inc.num_facets();

    std::vector<BitSet> cols(nf);
    for (std::size_t f = 0; f < nf; ++f)
        cols[f] = inc.col(f);

    // atomic closure check: the facets through a vertex must meet in
    // exactly that vertex
    for (std::size_t v = 0; v < nv; ++v) {
        BitSet meet(nv);
        meet.set();
        bool any = false;
        for (std::size_t f = 0; f < nf; ++f)
            if (inc.test(v, f)) {
                meet &= cols[f];
                any = true;
            }
        BitSet single(nv);
        single.set(v);
        if (!any || meet != single)
            throw std::invalid_argument("face_lattice: not polytopal incidence");
    }

    // breadth-first closure: intersect with facet sets until stable
    BitSet full(nv);
    full.set();
    std::vector<BitSet> closed{full};
    std::set<std::vector<bool>> seen;
    auto key_of = [nv](const BitSet& b) {
        std::vector<bool> k(nv);
        for (std::size_t i = 0; i < nv; ++i)
            k[i] = b.test(i);
        return k;
    };
    seen.insert(key_of(full));
    for (std::size_t head = 0; head < closed.size(); ++head) {
        BitSet cur = closed[head];
        for (std::size_t f = 0; f < nf; ++f) {
            BitSet next = cur & cols[f];
            if (seen.insert(key_of(next)).second)
                closed.push_back(std::move(next));
        }
    }
    BitSet empty(nv);
    if (seen.insert(key_of(empty)).second)
        closed.push_back(empty);

    // grade by longest chain below each face
    std::sort(closed.begin(), closed.end(), [](const BitSet& a, const BitSet& b) {
        if (a.count() != b.count())
            return a.count() < b.count();
        return a < b;
    });
    std::vector<int> rank_of(closed.size(), 0);
    for (std::size_t i = 0; i < closed.size(); ++i) {
        int r = 0;
        for (std::size_t j = 0; j < i; ++j) {
            if (closed[j].count() < closed[i].count() && (closed[j] & closed[i]) == closed[j])
                r = std::max(r, rank_of[j] + 1);
        }
        rank_of[i] = r;
    }
    const int dim = rank_of.back() - 1;

    FaceLattice lat;
    lat.dim = dim;
    lat.faces = std::move(closed);
    lat.face_dims.resize(lat.faces.size());
    for (std::size_t i = 0; i < lat.faces.size(); ++i)
        lat.face_dims[i] = rank_of[i] - 1;
    lat.f_vector.assign(static_cast<std::size_t>(dim), 0);
    for (std::size_t i = 0; i < lat.faces.size(); ++i) {
        int d = lat.face_dims[i];
        if (d >= 0 && d < dim)
            ++lat.f_vector[static_cast<std::size_t>(d)];
    }
    return lat;
}

// Same, but checks the grading against a dimension known from geometry.
inline FaceLattice face_lattice(const IncidenceStructure& inc, int dim) {
    FaceLattice lat = face_lattice(inc);
    if (lat.dim != dim)
        throw std::invalid_argument("face_lattice: incidence does not grade to the given dimension");
    return lat;
}

inline FaceLattice face_lattice_of(const VPolytope& p) {
    return face_lattice(incidence_of(p), p.dim());
}

inline std::vector<std::size_t> f_vector_of(const VPolytope& p) {
    return face_lattice_of(p).f_vector;
}

}  // namespace polydual
