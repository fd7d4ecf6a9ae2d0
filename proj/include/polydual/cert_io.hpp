#pragma once

// Certificate files: JSON renderings of search results, theorem
// verifications and equivalence witnesses, self-contained enough that an
// independent checker can re-verify every soundness claim from the file
// alone (witness checks are recomputed from scratch; exhaustion
// certificates are checked for exact accounting). Rationals are stored in
// their exact text form, never as decimals.

#include <polydual/search.hpp>

#include <json.hpp>

#include <optional>
#include <string>

namespace polydual {

using json = nlohmann::json;

inline constexpr const char* kToolName = "polydual";
inline constexpr const char* kToolVersion = "0.1.0";

inline json polytope_to_json(const VPolytope& p) {
    json verts = json::array();
    for (const auto& v : p.vertices()) {
        json row = json::array();
        for (const auto& x : v)
            row.push_back(to_string(x));
        verts.push_back(std::move(row));
    }
    return json{{"ambient", p.ambient()}, {"vertices", std::move(verts)}};
}

inline VPolytope polytope_from_json(const json& j) {
    const std::size_t m = j.at("ambient").get<std::size_t>();
    std::vector<QVector> verts;
    for (const auto& row : j.at("vertices")) {
        QVector v;
        v.reserve(m);
        for (const auto& x : row)
            v.push_back(parse_rational(x.get<std::string>()));
        if (v.size() != m)
            throw ParseError("certificate: ragged vertex row");
        verts.push_back(std::move(v));
    }
    return VPolytope::from_vertices(std::move(verts));
}

inline json certificate_to_json(const SearchCertificate& c, const VPolytope& q) {
    json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["kind"] = "search";
    j["realization_hash"] = c.realization_hash;
    j["polytope"] = polytope_to_json(q);
    j["subset_size"] = c.subset_size;
    j["total_subsets"] = c.total_subsets;
    j["target_fvector"] = c.target_fvector;
    j["mode"] = c.mode == SearchCertificate::Mode::witness ? "witness" : "exhausted";
    if (c.subset && c.iso) {
        j["witness"] = json{{"subset", *c.subset},
                            {"vertex_map", c.iso->vertex_map},
                            {"facet_map", c.iso->facet_map}};
    }
    j["subsets_examined"] = c.subsets_examined;
    j["pruned"] = c.pruned_by;
    if (!c.notes.empty())
        j["notes"] = c.notes;
    return j;
}

inline json theorem_to_json(const TheoremVerification& tv, const VPolytope& base, int d,
                            std::optional<VPolytope> product = std::nullopt) {
    json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["kind"] = "theorem";
    j["base"] = polytope_to_json(base);
    j["base_hash"] = realization_fingerprint(base);
    j["cube_dim"] = d;
    j["instance"] = json{{"n", tv.report.n},
                         {"d", tv.report.d},
                         {"d_prime", tv.report.d_prime},
                         {"ceiling_term", tv.report.ceiling_term},
                         {"bound", tv.report.bound},
                         {"max_incidence", tv.report.max_incidence},
                         {"hypothesis_ok", tv.report.hypothesis_ok}};
    if (!tv.report.note.empty())
        j["instance"]["note"] = tv.report.note;
    if (tv.structure) {
        j["structure"] = json{{"partition_ok", tv.structure->partition_ok},
                              {"bipyramid_ok", tv.structure->bipyramid_ok},
                              {"dual_vertices", tv.structure->dual_vertices},
                              {"expected_dual_vertices", tv.structure->expected_dual_vertices}};
        if (!tv.structure->partition_detail.empty())
            j["structure"]["partition_detail"] = tv.structure->partition_detail;
    }
    if (tv.certificate && product)
        j["search"] = certificate_to_json(*tv.certificate, *product);
    if (!tv.skip_reason.empty())
        j["skip_reason"] = tv.skip_reason;
    return j;
}

inline json equivalence_to_json(const VPolytope& a, const VPolytope& b,
                                const std::optional<IsoWitness>& w) {
    json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["kind"] = "equiv";
    j["a"] = polytope_to_json(a);
    j["b"] = polytope_to_json(b);
    j["equivalent"] = w.has_value();
    if (w)
        j["witness"] = json{{"vertex_map", w->vertex_map}, {"facet_map", w->facet_map}};
    return j;
}

struct CheckResult {
    bool ok = false;
    std::string detail;
};

// Re-verifies a search certificate from the file alone. Witnesses are
// rebuilt and checked from scratch against a freshly computed dual target;
// exhaustion certificates are checked for exact accounting. The search
// itself is never repeated.
inline CheckResult check_search_certificate(const json& j) {
    VPolytope q = polytope_from_json(j.at("polytope"));
    if (realization_fingerprint(q) != j.at("realization_hash").get<std::string>())
        return {false, "realization hash does not match the embedded coordinates"};
    const auto f = j.at("subset_size").get<std::size_t>();
    Int total = binomial(q.num_vertices(), f);
    if (total != Int(j.at("total_subsets").get<std::uint64_t>()))
        return {false, "total_subsets does not equal C(v, f)"};

    VPolytope dual = polar_dual(q);
    SearchTarget target = make_search_target(incidence_of(dual));
    if (target.incidence.num_vertices() != f)
        return {false, "subset size does not match the dual vertex count"};
    if (j.at("target_fvector").get<std::vector<std::size_t>>() != target.fvector)
        return {false, "target f-vector does not match the recomputed dual"};

    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "witness") {
        if (!j.contains("witness"))
            return {false, "witness certificate without witness data"};
        IsoWitness iso;
        iso.vertex_map = j.at("witness").at("vertex_map").get<std::vector<std::size_t>>();
        iso.facet_map = j.at("witness").at("facet_map").get<std::vector<std::size_t>>();
        auto subset = j.at("witness").at("subset").get<std::vector<std::size_t>>();
        if (!verify_witness(q, target.incidence, subset, iso))
            return {false, "witness failed independent re-verification"};
        return {true, "witness re-verified from scratch"};
    }
    if (mode == "exhausted") {
        std::uint64_t sum = j.at("subsets_examined").get<std::uint64_t>();
        for (const auto& [key, cnt] : j.at("pruned").items())
            sum += cnt.get<std::uint64_t>();
        if (Int(sum) != total)
            return {false, "exhaustion accounting does not sum to C(v, f)"};
        return {true, "exhaustion accounting exact"};
    }
    return {false, "unknown certificate mode"};
}

inline CheckResult check_theorem_certificate(const json& j) {
    VPolytope base = polytope_from_json(j.at("base"));
    if (realization_fingerprint(base) != j.at("base_hash").get<std::string>())
        return {false, "base hash does not match the embedded coordinates"};
    const auto& inst = j.at("instance");
    const long long n = inst.at("n").get<long long>();
    const long long d = inst.at("d").get<long long>();
    const long long dp = inst.at("d_prime").get<long long>();
    if (inst.at("ceiling_term").get<long long>() != ceil_div(n + 2 * d, pow2_checked(d)))
        return {false, "ceiling term is not ceil((n+2d)/2^d)"};
    if (inst.at("bound").get<long long>() != incidence_bound(n, d, dp))
        return {false, "bound is not ceil((n+2d)/2^d) - d'"};
    if (inst.at("bound").get<long long>() !=
        pigeonhole_min(n + 2 * d, pow2_checked(d)) - dp)
        return {false, "bound disagrees with the pigeonhole count"};
    BoundReport fresh = make_bound_report(base, static_cast<int>(d));
    if (fresh.n != n || fresh.d_prime != dp ||
        fresh.max_incidence != inst.at("max_incidence").get<std::size_t>() ||
        fresh.hypothesis_ok != inst.at("hypothesis_ok").get<bool>())
        return {false, "instance data does not match the embedded base polytope"};
    if (j.contains("search")) {
        CheckResult inner = check_search_certificate(j.at("search"));
        if (!inner.ok)
            return inner;
        return {true, "instance arithmetic exact; " + inner.detail};
    }
    return {true, "instance arithmetic exact (no search embedded)"};
}

inline CheckResult check_equivalence_certificate(const json& j) {
    VPolytope a = polytope_from_json(j.at("a"));
    VPolytope b = polytope_from_json(j.at("b"));
    if (!j.at("equivalent").get<bool>())
        return {true, "negative result recorded; nothing to re-verify without a search"};
    IsoWitness w;
    w.vertex_map = j.at("witness").at("vertex_map").get<std::vector<std::size_t>>();
    w.facet_map = j.at("witness").at("facet_map").get<std::vector<std::size_t>>();
    if (!verify_iso(incidence_of(a), incidence_of(b), w))
        return {false, "equivalence witness failed entrywise check"};
    return {true, "equivalence witness re-verified entrywise"};
}

inline CheckResult check_certificate(const json& j) {
    const std::string kind = j.value("kind", "");
    if (kind == "search")
        return check_search_certificate(j);
    if (kind == "theorem")
        return check_theorem_certificate(j);
    if (kind == "equiv")
        return check_equivalence_certificate(j);
    return {false, "unknown certificate kind \"" + kind + "\""};
}

}  // namespace polydual
