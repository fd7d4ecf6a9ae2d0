#pragma once

// The core verifier. Exhaustively enumerates vertex subsets of a polytope
// looking for one whose hull realizes a target combinatorial type (by
// default: the type of the polytope's own polar dual), and packages the
// outcome as a machine-checkable certificate: either an explicit witness
// subset with an incidence isomorphism, or an exhaustion record whose
// prune accounting sums exactly to C(v, f).
//
// Only subsets of size f = number of target vertices are enumerated: a
// hull equivalent to the target has exactly f vertices, and that vertex
// set is itself a qualifying subset.

#include <polydual/constructions.hpp>
#include <polydual/equivalence.hpp>
#include <polydual/poly_io.hpp>
#include <polydual/polytope.hpp>
#include <polydual/theorem.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace polydual {

inline Int binomial(std::size_t n, std::size_t k) {
    if (k > n)
        return 0;
    if (n - k < k)
        k = n - k;
    Int r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        r *= Int(n - k + i);
        r /= Int(i);
    }
    return r;
}

// Raised when C(v, f) exceeds the configured budget. A search never
// silently truncates: it either runs to completion or refuses.
struct BudgetExceeded : std::runtime_error {
    Int required;
    std::uint64_t budget;
    BudgetExceeded(Int req, std::uint64_t b)
        : std::runtime_error("search budget exceeded: C(v,f) = " + req.str() +
                             " exceeds budget " + std::to_string(b)),
          required(std::move(req)),
          budget(b) {}
};

struct SearchOptions {
    std::uint64_t budget = 10'000'000;
    unsigned jobs = 1;
    bool pruning = true;
};

struct SearchCertificate {
    enum class Mode { witness, exhausted };

    Mode mode = Mode::exhausted;
    std::size_t subset_size = 0;     // f = target vertex count
    std::uint64_t total_subsets = 0;  // C(v, f)
    std::vector<std::size_t> target_fvector;
    std::optional<std::vector<std::size_t>> subset;  // q-vertex indices, ascending
    std::optional<IsoWitness> iso;  // maps positions in `subset` to target vertices
    std::uint64_t subsets_examined = 0;
    std::map<std::string, std::uint64_t> pruned_by;
    std::string realization_hash;
    std::vector<std::string> notes;
};

// The combinatorial type a search is aiming for.
struct SearchTarget {
    IncidenceStructure incidence;
    Signature sig;
    std::vector<std::size_t> fvector;
};

inline SearchTarget make_search_target(const IncidenceStructure& inc) {
    Signature sig = signature(inc);
    std::vector<std::size_t> fv = sig.f_vector;
    return SearchTarget{inc, std::move(sig), std::move(fv)};
}

namespace detail {

inline IncidenceStructure incidence_from_planes(const std::vector<Facet>& planes, std::size_t npts) {
    std::vector<BitSet> rows(npts, BitSet(planes.size()));
    for (std::size_t f = 0; f < planes.size(); ++f)
        for (std::size_t v = 0; v < npts; ++v)
            if (planes[f].incident.test(v))
                rows[v].set(f);
    return IncidenceStructure(planes.size(), std::move(rows));
}

inline bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1))
        --i;
    if (i == 0)
        return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j)
        idx[j] = idx[j - 1] + 1;
    return true;
}

// Subset with the given lexicographic rank, 0 <= r < C(n, k).
inline std::vector<std::size_t> unrank_combination(std::uint64_t r, std::size_t n, std::size_t k) {
    std::vector<std::size_t> out;
    out.reserve(k);
    std::size_t c = 0;
    for (std::size_t slot = 0; slot < k; ++slot) {
        for (;; ++c) {
            Int count = binomial(n - c - 1, k - slot - 1);
            std::uint64_t cnt = count.template convert_to<std::uint64_t>();
            if (r < cnt) {
                out.push_back(c);
                ++c;
                break;
            }
            r -= cnt;
        }
    }
    return out;
}

enum class SubsetOutcome {
    pruned_convex,
    pruned_affine,
    pruned_facets,
    pruned_signature,
    examined,
    witness,
};

struct SubsetEval {
    SubsetOutcome outcome = SubsetOutcome::examined;
    std::optional<IsoWitness> iso;
};

// The prune ladder, applied in certificate-accounting order: convex
// position, affine dimension, facet count, signature, then the full
// equivalence test. Every prune is a necessary condition for a witness,
// so pruned and prune-free runs agree on the outcome.
inline SubsetEval evaluate_subset(const std::vector<QVector>& coords,
                                  const std::vector<std::size_t>& subset,
                                  int target_dim,
                                  const SearchTarget& target,
                                  bool pruning) {
    std::vector<QVector> pts;
    pts.reserve(subset.size());
    for (auto i : subset)
        pts.push_back(coords[i]);
    AffineChart chart = restrict_to_span(pts);
    if (chart.dim == 0)
        return {pruning ? SubsetOutcome::pruned_convex : SubsetOutcome::examined, std::nullopt};
    const std::size_t k = static_cast<std::size_t>(chart.dim);
    auto planes = supporting_planes(chart.local);
    std::size_t extreme = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (is_extreme(planes, i, k))
            ++extreme;
    const bool convex = extreme == pts.size();

    if (pruning) {
        if (!convex)
            return {SubsetOutcome::pruned_convex, std::nullopt};
        if (chart.dim != target_dim)
            return {SubsetOutcome::pruned_affine, std::nullopt};
        if (planes.size() != target.incidence.num_facets())
            return {SubsetOutcome::pruned_facets, std::nullopt};
        IncidenceStructure inc = incidence_from_planes(planes, pts.size());
        if (!(signature(inc) == target.sig))
            return {SubsetOutcome::pruned_signature, std::nullopt};
        if (auto iso = are_equivalent(inc, target.incidence))
            return {SubsetOutcome::witness, std::move(iso)};
        return {SubsetOutcome::examined, std::nullopt};
    }

    // prune-free: a hull with fewer vertices than the target can never
    // match, so only convex-position subsets reach the full test
    if (convex) {
        IncidenceStructure inc = incidence_from_planes(planes, pts.size());
        if (auto iso = are_equivalent(inc, target.incidence))
            return {SubsetOutcome::witness, std::move(iso)};
    }
    return {SubsetOutcome::examined, std::nullopt};
}

inline const char* prune_key(SubsetOutcome o) {
    switch (o) {
        case SubsetOutcome::pruned_convex: return "convex_position";
        case SubsetOutcome::pruned_affine: return "affine_dim";
        case SubsetOutcome::pruned_facets: return "facet_count";
        case SubsetOutcome::pruned_signature: return "signature";
        default: return nullptr;
    }
}

}  // namespace detail

// Full from-scratch soundness check of a witness: subset well-formed and
// in convex position, hull facets recomputed, isomorphism rechecked
// entrywise. Independent of the search path.
inline bool verify_witness(const VPolytope& q, const IncidenceStructure& target,
                           const std::vector<std::size_t>& subset, const IsoWitness& iso) {
    if (subset.empty() || subset.size() != target.num_vertices())
        return false;
    for (std::size_t i = 0; i < subset.size(); ++i) {
        if (subset[i] >= q.num_vertices())
            return false;
        if (i > 0 && subset[i] <= subset[i - 1])
            return false;
    }
    std::vector<QVector> pts;
    pts.reserve(subset.size());
    for (auto i : subset)
        pts.push_back(q.vertex(i));
    if (!is_convex_position(pts))
        return false;
    AffineChart chart = restrict_to_span(pts);
    auto planes = detail::supporting_planes(chart.local);
    IncidenceStructure inc = detail::incidence_from_planes(planes, pts.size());
    return verify_iso(inc, target, iso);
}

// Searches all size-f vertex subsets of q for one hulling to the target
// type. Deterministic: lexicographic enumeration, first witness returned,
// and parallel runs produce certificates identical to serial ones.
inline SearchCertificate search_for_type(const VPolytope& q, const SearchTarget& target,
                                         const SearchOptions& opts = {}) {
    const std::size_t v = q.num_vertices();
    const std::size_t f = target.incidence.num_vertices();
    Int total = binomial(v, f);
    if (total > Int(opts.budget))
        throw BudgetExceeded(total, opts.budget);
    const std::uint64_t n_total = total.template convert_to<std::uint64_t>();

    SearchCertificate cert;
    cert.subset_size = f;
    cert.total_subsets = n_total;
    cert.target_fvector = target.fvector;
    cert.realization_hash = realization_fingerprint(q);
    for (const char* key : {"convex_position", "affine_dim", "facet_count", "signature"})
        cert.pruned_by[key] = 0;

    const int dim_q = q.dim();
    const auto& coords = q.vertices();
    if (n_total == 0) {
        cert.mode = SearchCertificate::Mode::exhausted;
        return cert;
    }

    auto account = [](SearchCertificate& c, detail::SubsetOutcome o) {
        if (const char* key = detail::prune_key(o))
            ++c.pruned_by[key];
        else
            ++c.subsets_examined;
    };

    const unsigned jobs = std::max(1u, opts.jobs);
    if (jobs == 1) {
        std::vector<std::size_t> idx(f);
        for (std::size_t i = 0; i < f; ++i)
            idx[i] = i;
        for (;;) {
            auto eval = detail::evaluate_subset(coords, idx, dim_q, target, opts.pruning);
            if (eval.outcome == detail::SubsetOutcome::witness) {
                ++cert.subsets_examined;
                cert.mode = SearchCertificate::Mode::witness;
                cert.subset = idx;
                cert.iso = std::move(eval.iso);
                break;
            }
            account(cert, eval.outcome);
            if (!detail::next_combination(idx, v))
                break;
        }
    } else {
        // Phase 1: hunt for the lexicographically first witness in
        // parallel blocks. A block is abandoned once its current rank
        // exceeds the best witness so far, which can only discard ranks
        // past the final minimum, so the minimum is exact.
        const std::uint64_t block =
            std::max<std::uint64_t>(512, n_total / (static_cast<std::uint64_t>(jobs) * 8) + 1);
        const std::uint64_t num_blocks = (n_total + block - 1) / block;
        std::atomic<std::uint64_t> next_block{0};
        std::atomic<std::uint64_t> best_rank{UINT64_MAX};
        std::mutex best_mu;
        std::optional<std::vector<std::size_t>> best_subset;
        std::optional<IsoWitness> best_iso;
        std::vector<SearchCertificate> partial(jobs);

        auto hunt = [&](unsigned w) {
            for (;;) {
                std::uint64_t b = next_block.fetch_add(1);
                if (b >= num_blocks)
                    return;
                std::uint64_t start = b * block;
                std::uint64_t end = std::min(start + block, n_total);
                if (start > best_rank.load())
                    continue;
                auto idx = detail::unrank_combination(start, v, f);
                for (std::uint64_t r = start; r < end; ++r) {
                    if (r > best_rank.load())
                        break;
                    auto eval = detail::evaluate_subset(coords, idx, dim_q, target, opts.pruning);
                    if (eval.outcome == detail::SubsetOutcome::witness) {
                        std::lock_guard<std::mutex> lk(best_mu);
                        if (r < best_rank.load()) {
                            best_rank.store(r);
                            best_subset = idx;
                            best_iso = std::move(eval.iso);
                        }
                        break;
                    }
                    account(partial[w], eval.outcome);
                    detail::next_combination(idx, v);
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < jobs; ++w)
            pool.emplace_back(hunt, w);
        for (auto& t : pool)
            t.join();
        pool.clear();

        if (best_rank.load() == UINT64_MAX) {
            // exhausted: every rank was evaluated exactly once
            for (const auto& part : partial) {
                cert.subsets_examined += part.subsets_examined;
                for (const auto& [k2, c2] : part.pruned_by)
                    cert.pruned_by[k2] += c2;
            }
            cert.mode = SearchCertificate::Mode::exhausted;
        } else {
            // witness at rank w: recount the witness-free prefix [0, w)
            // cleanly so the accounting matches a serial run
            const std::uint64_t w_rank = best_rank.load();
            for (auto& part : partial)
                part = SearchCertificate{};
            std::atomic<std::uint64_t> next_chunk{0};
            const std::uint64_t chunk =
                std::max<std::uint64_t>(512, w_rank / (static_cast<std::uint64_t>(jobs) * 8) + 1);
            const std::uint64_t num_chunks = w_rank == 0 ? 0 : (w_rank + chunk - 1) / chunk;
            auto recount = [&](unsigned wk) {
                for (;;) {
                    std::uint64_t b = next_chunk.fetch_add(1);
                    if (b >= num_chunks)
                        return;
                    std::uint64_t start = b * chunk;
                    std::uint64_t end = std::min(start + chunk, w_rank);
                    auto idx = detail::unrank_combination(start, v, f);
                    for (std::uint64_t r = start; r < end; ++r) {
                        auto eval = detail::evaluate_subset(coords, idx, dim_q, target, opts.pruning);
                        account(partial[wk], eval.outcome);
                        detail::next_combination(idx, v);
                    }
                }
            };
            for (unsigned wk = 0; wk < jobs; ++wk)
                pool.emplace_back(recount, wk);
            for (auto& t : pool)
                t.join();
            for (const auto& part : partial) {
                cert.subsets_examined += part.subsets_examined;
                for (const auto& [k2, c2] : part.pruned_by)
                    cert.pruned_by[k2] += c2;
            }
            ++cert.subsets_examined;  // the witness itself
            cert.mode = SearchCertificate::Mode::witness;
            cert.subset = std::move(best_subset);
            cert.iso = std::move(best_iso);
        }
    }

    if (cert.mode == SearchCertificate::Mode::witness &&
        !verify_witness(q, target.incidence, *cert.subset, *cert.iso))
        throw std::logic_error("internal error: witness failed independent re-verification");
    return cert;
}

// Searches for a subset whose hull has the combinatorial type of q's own
// polar dual.
inline SearchCertificate find_dual_subset(const VPolytope& q, const SearchOptions& opts = {}) {
    if (q.dim() != static_cast<int>(q.ambient()))
        throw std::invalid_argument("find_dual_subset: polytope must be full-dimensional");
    VPolytope dual = polar_dual(q);
    SearchTarget target = make_search_target(incidence_of(dual));
    return search_for_type(q, target, opts);
}

// One theorem instance, end to end: the incidence bound and hypothesis
// verdict, the structural checks on Q = P x cube(d) (partition
// separability and the bipyramid identification of the dual), and the
// subset search, which the theorem predicts to exhaust.
struct StructureReport {
    bool partition_ok = false;
    bool bipyramid_ok = false;
    std::size_t dual_vertices = 0;
    std::size_t expected_dual_vertices = 0;
    std::string partition_detail;

    bool all_ok() const { return partition_ok && bipyramid_ok; }
};

struct TheoremVerification {
    BoundReport report;
    std::optional<StructureReport> structure;
    std::optional<SearchCertificate> certificate;
    std::string skip_reason;  // nonempty when the search did not run
};

inline TheoremVerification verify_theorem_instance(const VPolytope& p, int d,
                                                   const SearchOptions& opts = {}) {
    if (d < 1)
        throw std::invalid_argument("verify_theorem_instance: need d >= 1");
    TheoremVerification out;
    out.report = make_bound_report(p, d);
    if (!out.report.hypothesis_ok) {
        out.skip_reason = "hypothesis not satisfied; the theorem makes no claim";
        return out;
    }
    ProductStructure ps = product_with_cube(p, d);
    StructureReport st;
    st.partition_ok = product_partition_check(ps, &st.partition_detail);
    VPolytope dual_q = polar_dual(ps.product);
    st.dual_vertices = dual_q.num_vertices();
    st.expected_dual_vertices = static_cast<std::size_t>(out.report.n + 2 * out.report.d);
    BipyramidTower tower = iterated_bipyramid(polar_dual(p), d);
    st.bipyramid_ok = st.dual_vertices == st.expected_dual_vertices &&
                      are_equivalent(incidence_of(dual_q), incidence_of(tower.result)).has_value();
    out.structure = std::move(st);

    Int total = binomial(ps.product.num_vertices(), dual_q.num_vertices());
    if (total > Int(opts.budget)) {
        out.skip_reason = "search skipped: C(" + std::to_string(ps.product.num_vertices()) + "," +
                          std::to_string(dual_q.num_vertices()) + ") = " + total.str() +
                          " exceeds budget " + std::to_string(opts.budget);
        return out;
    }
    SearchTarget target = make_search_target(incidence_of(dual_q));
    out.certificate = search_for_type(ps.product, target, opts);
    return out;
}

// Hunts for a realization of p (the given one, then deterministic
// coordinate perturbations) admitting a subset whose hull realizes the
// dual type of the ORIGINAL realization. The raw offsets are allowed to
// change the combinatorial type of the point set; whether the type was
// preserved is recorded in the certificate notes, since results for
// type-breaking realizations fall outside the product theorem's scope
// (they are reported, not judged).
struct RealizationSearchResult {
    std::size_t trial = 0;  // 0 = the input realization
    bool perturbed = false;
    bool type_preserved = true;
    VPolytope realization;
    SearchCertificate certificate;
};

inline std::optional<RealizationSearchResult> realization_search(const VPolytope& p,
                                                                 std::size_t trials,
                                                                 std::uint64_t denominator_bound,
                                                                 std::uint64_t seed,
                                                                 const SearchOptions& opts = {}) {
    if (trials < 1)
        throw std::invalid_argument("realization_search: need trials >= 1");
    if (denominator_bound < 2)
        throw std::invalid_argument("realization_search: need denominator_bound >= 2");
    VPolytope dual = polar_dual(p);
    SearchTarget target = make_search_target(incidence_of(dual));
    const auto& original_inc = incidence_of(p);

    SearchCertificate base_cert = search_for_type(p, target, opts);
    if (base_cert.mode == SearchCertificate::Mode::witness)
        return RealizationSearchResult{0, false, true, p, std::move(base_cert)};

    for (std::size_t t = 1; t <= trials; ++t) {
        std::uint64_t trial_seed = detail::hash_u64(t, detail::hash_u64(seed, 0x9e3779b97f4a7c15ull));
        std::mt19937_64 rng(trial_seed);
        std::vector<QVector> pts = p.vertices();
        for (auto& pt : pts)
            for (auto& x : pt)
                x += detail::rational_offset(rng, denominator_bound);
        VPolytope cand = VPolytope::from_points(pts);
        bool type_ok = cand.num_vertices() == p.num_vertices() &&
                       are_equivalent(incidence_of(cand), original_inc).has_value();
        SearchCertificate cert = search_for_type(cand, target, opts);
        cert.notes.push_back("perturbed realization, trial " + std::to_string(t) + " of " +
                             std::to_string(trials));
        cert.notes.push_back(type_ok
                                 ? "combinatorial type of the input preserved"
                                 : "combinatorial type of the input not preserved; outside the "
                                   "product theorem's scope");
        if (cert.mode == SearchCertificate::Mode::witness)
            return RealizationSearchResult{t, true, type_ok, std::move(cand), std::move(cert)};
    }
    return std::nullopt;
}

}  // namespace polydual
