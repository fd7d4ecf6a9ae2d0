#pragma once

// Combinatorial equivalence of polytopes, decided on vertex-facet
// incidence structures (which determine the whole face lattice). The
// backtracking search returns an explicit bijection witness that is
// re-verified entrywise before being handed out.

#include <polydual/face_lattice.hpp>
#include <polydual/polytope.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace polydual {

namespace detail {

inline std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t h = 0xcbf29ce484222325ull) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t hash_u64(std::uint64_t x, std::uint64_t h) {
    return fnv1a64(&x, sizeof(x), h);
}

inline std::uint64_t hash_u64_list(const std::vector<std::uint64_t>& xs, std::uint64_t seed) {
    std::uint64_t h = hash_u64(seed, 0xcbf29ce484222325ull);
    for (auto x : xs)
        h = hash_u64(x, h);
    return h;
}

// Iterated neighborhood refinement on the bipartite vertex-facet graph
// (color refinement). Stable labels are a permutation-invariant
// fingerprint once sorted; equal labels are necessary, not sufficient,
// for isomorphism.
struct RefinementLabels {
    std::vector<std::uint64_t> vertex;
    std::vector<std::uint64_t> facet;
};

inline RefinementLabels refine_labels(const IncidenceStructure& inc) {
    const std::size_t nv = inc.num_vertices();
    const std::size_t nf = inc.num_facets();
    RefinementLabels lab;
    lab.vertex.resize(nv);
    lab.facet.resize(nf);
    for (std::size_t v = 0; v < nv; ++v)
        lab.vertex[v] = hash_u64(inc.row_count(v), 0x9e3779b97f4a7c15ull);
    for (std::size_t f = 0; f < nf; ++f)
        lab.facet[f] = hash_u64(inc.col_count(f), 0x2545f4914f6cdd1dull);

    auto distinct = [](std::vector<std::uint64_t> xs) {
        std::sort(xs.begin(), xs.end());
        return static_cast<std::size_t>(std::unique(xs.begin(), xs.end()) - xs.begin());
    };
    std::size_t classes = distinct(lab.vertex) + distinct(lab.facet);
    for (;;) {
        RefinementLabels next;
        next.vertex.resize(nv);
        next.facet.resize(nf);
        for (std::size_t v = 0; v < nv; ++v) {
            std::vector<std::uint64_t> neigh;
            for (std::size_t f = 0; f < nf; ++f)
                if (inc.test(v, f))
                    neigh.push_back(lab.facet[f]);
            std::sort(neigh.begin(), neigh.end());
            next.vertex[v] = hash_u64_list(neigh, lab.vertex[v]);
        }
        for (std::size_t f = 0; f < nf; ++f) {
            std::vector<std::uint64_t> neigh;
            for (std::size_t v = 0; v < nv; ++v)
                if (inc.test(v, f))
                    neigh.push_back(lab.vertex[v]);
            std::sort(neigh.begin(), neigh.end());
            next.facet[f] = hash_u64_list(neigh, lab.facet[f]);
        }
        std::size_t next_classes = distinct(next.vertex) + distinct(next.facet);
        lab = std::move(next);
        if (next_classes == classes)
            break;
        classes = next_classes;
    }
    return lab;
}

}  // namespace detail

// Canonical fingerprint of an incidence structure: sizes, sorted
// per-vertex and per-facet incidence profiles under iterated refinement,
// and the f-vector. Invariant under row/column permutation.
struct Signature {
    std::size_t num_vertices = 0;
    std::size_t num_facets = 0;
    std::vector<std::size_t> f_vector;
    std::vector<std::uint64_t> vertex_labels;  // sorted
    std::vector<std::uint64_t> facet_labels;   // sorted

    friend bool operator==(const Signature&, const Signature&) = default;
};

inline Signature signature(const IncidenceStructure& inc) {
    Signature sig;
    sig.num_vertices = inc.num_vertices();
    sig.num_facets = inc.num_facets();
    sig.f_vector = face_lattice(inc).f_vector;
    auto lab = detail::refine_labels(inc);
    sig.vertex_labels = std::move(lab.vertex);
    sig.facet_labels = std::move(lab.facet);
    std::sort(sig.vertex_labels.begin(), sig.vertex_labels.end());
    std::sort(sig.facet_labels.begin(), sig.facet_labels.end());
    return sig;
}

// An incidence isomorphism: vertex_map[v] and facet_map[f] give the image
// indices in the second structure.
struct IsoWitness {
    std::vector<std::size_t> vertex_map;
    std::vector<std::size_t> facet_map;
};

// Entrywise check of a claimed isomorphism, independent of the search.
inline bool verify_iso(const IncidenceStructure& a, const IncidenceStructure& b, const IsoWitness& w) {
    const std::size_t nv = a.num_vertices();
    const std::size_t nf = a.num_facets();
    if (b.num_vertices() != nv || b.num_facets() != nf)
        return false;
    if (w.vertex_map.size() != nv || w.facet_map.size() != nf)
        return false;
    std::vector<char> vseen(nv, 0), fseen(nf, 0);
    for (auto t : w.vertex_map) {
        if (t >= nv || vseen[t])
            return false;
        vseen[t] = 1;
    }
    for (auto t : w.facet_map) {
        if (t >= nf || fseen[t])
            return false;
        fseen[t] = 1;
    }
    for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t f = 0; f < nf; ++f)
            if (a.test(v, f) != b.test(w.vertex_map[v], w.facet_map[f]))
                return false;
    return true;
}

// Decides whether two incidence structures are isomorphic respecting the
// vertex/facet sides. Facets are matched rarest refinement class first;
// vertex candidates are narrowed by the partial facet assignment. Ties
// break by index, so the returned witness is deterministic.
inline std::optional<IsoWitness> are_equivalent(const IncidenceStructure& a, const IncidenceStructure& b) {
    const std::size_t nv = a.num_vertices();
    const std::size_t nf = a.num_facets();
    if (b.num_vertices() != nv || b.num_facets() != nf)
        return std::nullopt;

    auto la = detail::refine_labels(a);
    auto lb = detail::refine_labels(b);
    {
        auto sa = la.vertex, sb = lb.vertex;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb)
            return std::nullopt;
        sa = la.facet;
        sb = lb.facet;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb)
            return std::nullopt;
    }

    std::vector<BitSet> cols_b(nf);
    for (std::size_t f = 0; f < nf; ++f)
        cols_b[f] = b.col(f);

    // facet order: rarest label class first, then index
    std::map<std::uint64_t, std::size_t> class_size;
    for (auto l : la.facet)
        ++class_size[l];
    std::vector<std::size_t> order(nf);
    for (std::size_t f = 0; f < nf; ++f)
        order[f] = f;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        auto cx = class_size[la.facet[x]], cy = class_size[la.facet[y]];
        if (cx != cy)
            return cx < cy;
        return x < y;
    });

    std::vector<BitSet> cand(nv, BitSet(nv));
    for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t u = 0; u < nv; ++u)
            if (la.vertex[v] == lb.vertex[u])
                cand[v].set(u);

    std::vector<std::size_t> facet_map(nf, nf);
    std::vector<char> used(nf, 0);

    std::optional<IsoWitness> found;
    auto rec = [&](auto&& self, std::size_t depth, std::vector<BitSet> cur) -> bool {
        if (depth == nf) {
            IsoWitness w;
            w.facet_map = facet_map;
            w.vertex_map.assign(nv, nv);
            std::vector<char> taken(nv, 0);
            for (std::size_t v = 0; v < nv; ++v) {
                if (cur[v].count() != 1)
                    return false;
                std::size_t u = cur[v].find_first();
                if (taken[u])
                    return false;
                taken[u] = 1;
                w.vertex_map[v] = u;
            }
            if (!verify_iso(a, b, w))
                return false;
            found = std::move(w);
            return true;
        }
        const std::size_t f = order[depth];
        const std::size_t fa_size = a.col_count(f);
        for (std::size_t g = 0; g < nf; ++g) {
            if (used[g] || la.facet[f] != lb.facet[g] || cols_b[g].count() != fa_size)
                continue;
            std::vector<BitSet> next = cur;
            bool ok = true;
            for (std::size_t v = 0; v < nv && ok; ++v) {
                if (a.test(v, f))
                    next[v] &= cols_b[g];
                else
                    next[v] &= ~cols_b[g];
                ok = next[v].any();
            }
            if (!ok)
                continue;
            used[g] = 1;
            facet_map[f] = g;
            if (self(self, depth + 1, std::move(next)))
                return true;
            used[g] = 0;
            facet_map[f] = nf;
        }
        return false;
    };
    rec(rec, 0, cand);
    return found;
}

}  // namespace polydual
