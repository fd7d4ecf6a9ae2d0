// Acceptance suite. Runs every acceptance criterion end to end, one
// PASS/FAIL line per criterion, and exits with the number of failures.
// Criteria that specify command-line behaviour run the real CLI binary
// (path given as argv[1]) in a scratch directory; the rest use the library
// directly.

#include <polydual/polydual.hpp>

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;
using namespace polydual;
using Clock = std::chrono::steady_clock;

namespace {

std::string g_cli;
fs::path g_dir;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

RunResult run_cli(const std::string& args) {
    fs::path out = g_dir / "stdout.txt";
    std::string cmd = "'" + g_cli + "' " + args + " > '" + out.string() + "' 2> '" +
                      (g_dir / "stderr.txt").string() + "'";
    int rc = std::system(cmd.c_str());
    RunResult r;
    if (rc == -1)
        return r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out);
    return r;
}

json load_json(const fs::path& p) {
    std::ifstream in(p);
    return json::parse(in);
}

std::uint64_t accounted(const json& search) {
    std::uint64_t sum = search.at("subsets_examined").get<std::uint64_t>();
    for (const auto& [k, v] : search.at("pruned").items())
        sum += v.get<std::uint64_t>();
    return sum;
}

struct Criterion {
    int id;
    std::string label;
    std::function<void(std::string&)> body;  // append failure reasons
};

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-polydual-cli>\n";
        return 99;
    }
    g_cli = argv[1];
    unsetenv("POLYDUAL_BUDGET");
    g_dir = fs::temp_directory_path() /
            ("polydual-acceptance-" + std::to_string(static_cast<unsigned>(getpid())));
    fs::create_directories(g_dir);

    auto expect = [](std::string& why, bool cond, const std::string& msg) {
        if (!cond) {
            if (!why.empty())
                why += "; ";
            why += msg;
        }
    };

    std::vector<Criterion> criteria;

    criteria.push_back({1, "pentagon x segment: bound 2, structure passes, exhausts C(10,7)=120",
                        [&](std::string& why) {
        auto t0 = Clock::now();
        fs::path cert = g_dir / "c1.json";
        auto r = run_cli("verify-theorem --ngon 5 --cube-dim 1 --out '" + cert.string() + "'");
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        expect(why, r.exit_code == 0, "exit code " + std::to_string(r.exit_code) + " != 0");
        json j = load_json(cert);
        expect(why, j.at("instance").at("hypothesis_ok").get<bool>(), "hypothesis not ok");
        expect(why, j.at("instance").at("bound").get<long long>() == 2, "bound != 2");
        expect(why, j.at("structure").at("partition_ok").get<bool>(), "partition check failed");
        expect(why, j.at("structure").at("bipyramid_ok").get<bool>(), "bipyramid check failed");
        const auto& s = j.at("search");
        expect(why, s.at("mode") == "exhausted", "search not exhausted");
        expect(why, s.at("total_subsets").get<std::uint64_t>() == 120, "C(10,7) != 120");
        expect(why, accounted(s) == 120, "examined + pruned != 120");
        expect(why, !s.contains("witness"), "unexpected witness");
        expect(why, secs < 10.0, "took " + std::to_string(secs) + "s >= 10s");
    }});

    criteria.push_back({2, "hexagon x segment exhausts C(12,8)=495", [&](std::string& why) {
        auto t0 = Clock::now();
        fs::path cert = g_dir / "c2.json";
        auto r = run_cli("verify-theorem --ngon 6 --cube-dim 1 --out '" + cert.string() + "'");
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        expect(why, r.exit_code == 0, "exit code " + std::to_string(r.exit_code) + " != 0");
        json j = load_json(cert);
        const auto& s = j.at("search");
        expect(why, s.at("mode") == "exhausted", "search not exhausted");
        expect(why, s.at("total_subsets").get<std::uint64_t>() == 495, "C(12,8) != 495");
        expect(why, accounted(s) == 495, "examined + pruned != 495");
        expect(why, secs < 30.0, "took " + std::to_string(secs) + "s >= 30s");
    }});

    criteria.push_back({3, "positive controls: simplex(3) full-vertex witness; cube(3) size-6 witness",
                        [&](std::string& why) {
        auto t0 = Clock::now();
        fs::path sp = g_dir / "s3.poly", scert = g_dir / "c3a.json";
        run_cli("construct simplex 3 --out '" + sp.string() + "'");
        auto rs = run_cli("find-dual-subset '" + sp.string() + "' --out '" + scert.string() + "'");
        double s_secs = std::chrono::duration<double>(Clock::now() - t0).count();
        expect(why, rs.exit_code == 0, "simplex exit code != 0");
        json js = load_json(scert);
        expect(why, js.at("mode") == "witness", "simplex: no witness");
        expect(why,
               js.at("witness").at("subset").get<std::vector<std::size_t>>() ==
                   std::vector<std::size_t>{0, 1, 2, 3},
               "simplex witness is not the full vertex set");
        expect(why, s_secs < 5.0, "simplex took >= 5s");

        t0 = Clock::now();
        fs::path cp = g_dir / "c3.poly", ccert = g_dir / "c3b.json";
        run_cli("construct cube 3 --out '" + cp.string() + "'");
        auto rc = run_cli("find-dual-subset '" + cp.string() + "' --out '" + ccert.string() + "'");
        double c_secs = std::chrono::duration<double>(Clock::now() - t0).count();
        expect(why, rc.exit_code == 0, "cube exit code != 0");
        json jc = load_json(ccert);
        expect(why, jc.at("mode") == "witness", "cube: no witness");
        auto subset = jc.at("witness").at("subset").get<std::vector<std::size_t>>();
        expect(why, subset.size() == 6, "cube witness size != 6");
        std::vector<QVector> pts;
        auto c3 = cube(3);
        for (auto i : subset)
            pts.push_back(c3.vertex(i));
        expect(why,
               are_equivalent(incidence_of(VPolytope::from_points(pts)),
                              incidence_of(cross_polytope(3)))
                   .has_value(),
               "cube witness hull is not a cross-polytope");
        expect(why, c_secs < 5.0, "cube took >= 5s");
    }});

    criteria.push_back({4, "dual of pentagon x cube(d) is the d-fold bipyramid with n+2d vertices (d=1,2)",
                        [&](std::string& why) {
        for (int d : {1, 2}) {
            expect(why, bipyramid_structure_check(ngon(5), d),
                   "bipyramid identification failed at d = " + std::to_string(d));
            std::size_t nv = polar_dual(cartesian_product(ngon(5), cube(d))).num_vertices();
            std::size_t want = 5 + 2 * static_cast<std::size_t>(d);
            expect(why, nv == want,
                   "dual vertex count " + std::to_string(nv) + " != " + std::to_string(want));
        }
    }});

    criteria.push_back({5, "cube-copy partitions verified exactly; corrupted partition rejected",
                        [&](std::string& why) {
        expect(why, product_partition_check(product_with_cube(ngon(5), 1)),
               "pentagon x segment partition failed");
        expect(why, product_partition_check(product_with_cube(ngon(5), 2)),
               "pentagon x square partition failed");
        auto bad = product_with_cube(ngon(5), 1);
        std::swap(bad.copy_partition[0][0], bad.copy_partition[1][0]);
        expect(why, !product_partition_check(bad), "corrupted partition accepted");
    }});

    criteria.push_back({6, "bound table and minimal thresholds", [&](std::string& why) {
        expect(why, incidence_bound(5, 1, 2) == 2, "bound(5,1,2) != 2");
        expect(why, corollary_threshold(1) == 5, "threshold(1) != 5");
        expect(why, corollary_threshold(2) == 9, "threshold(2) != 9");
        expect(why, corollary_threshold(3) == 19, "threshold(3) != 19");
        for (long long d = 1; d <= 4 && why.empty(); ++d) {
            long long thr = corollary_threshold(d);
            for (long long n = 3; n <= thr + 4; ++n)
                if ((incidence_bound(n, d, 2) >= 2) != (n >= thr)) {
                    expect(why, false,
                           "threshold not minimal at d=" + std::to_string(d) +
                               ", n=" + std::to_string(n));
                    break;
                }
        }
    }});

    criteria.push_back({7, "realization sensitivity of the triangular prism", [&](std::string& why) {
        auto t0 = Clock::now();
        auto prism3 = cartesian_product(ngon(3), cube(1));
        auto base = find_dual_subset(prism3);
        expect(why, base.mode == SearchCertificate::Mode::exhausted,
               "standard realization did not exhaust");
        expect(why, base.total_subsets == 6, "C(6,5) != 6");
        auto rs = realization_search(prism3, 50, 100, 2024);
        expect(why, rs.has_value(), "no witness realization within 50 trials");
        if (rs) {
            expect(why, rs->certificate.subset && rs->certificate.subset->size() == 5,
                   "witness is not 5 vertices");
            std::vector<QVector> pts;
            for (auto i : *rs->certificate.subset)
                pts.push_back(rs->realization.vertex(i));
            expect(why,
                   are_equivalent(incidence_of(VPolytope::from_points(pts)),
                                  incidence_of(bipyramid(ngon(3))))
                       .has_value(),
                   "witness hull is not a triangular bipyramid");
        }
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        expect(why, secs < 60.0, "took " + std::to_string(secs) + "s >= 60s");
    }});

    criteria.push_back({8, "oracle equivalence: facets and prune-free search agree on every small built-in",
                        [&](std::string& why) {
        // independent brute-force facet enumeration, test-local
        auto brute_sets = [](const std::vector<QVector>& pts) {
            std::set<std::vector<std::size_t>> out;
            const std::size_t n = pts.size(), m = pts[0].size();
            std::vector<std::size_t> idx(m);
            for (std::size_t i = 0; i < m; ++i)
                idx[i] = i;
            if (n < m)
                return out;
            for (;;) {
                std::vector<QVector> sub;
                for (auto i : idx)
                    sub.push_back(pts[i]);
                try {
                    Hyperplane h = hyperplane_through(sub);
                    bool lo = false, hi = false;
                    std::vector<std::size_t> inc;
                    for (std::size_t v = 0; v < n; ++v) {
                        int s = side_of(h, pts[v]);
                        if (s > 0)
                            hi = true;
                        else if (s < 0)
                            lo = true;
                        else
                            inc.push_back(v);
                    }
                    if (!(lo && hi))
                        out.insert(inc);
                } catch (const std::invalid_argument&) {
                }
                std::size_t i = m;
                while (i > 0 && idx[i - 1] == n - m + (i - 1))
                    --i;
                if (i == 0)
                    break;
                ++idx[i - 1];
                for (std::size_t j = i; j < m; ++j)
                    idx[j] = idx[j - 1] + 1;
            }
            return out;
        };

        std::vector<std::pair<std::string, VPolytope>> builtins;
        for (std::size_t n = 3; n <= 6; ++n) {
            builtins.push_back({"ngon", ngon(n)});
            builtins.push_back({"prism", cartesian_product(ngon(n), cube(1))});
        }
        for (int d = 2; d <= 4; ++d) {
            builtins.push_back({"simplex", simplex(d)});
            builtins.push_back({"cross", cross_polytope(d)});
            if (d <= 3)
                builtins.push_back({"cube", cube(d)});
        }
        builtins.push_back({"bipyramid", bipyramid(ngon(5))});
        builtins.push_back({"trunc-simplex", truncate_vertices(simplex(3), Rational(1, 3))});

        SearchOptions plain, bare;
        bare.pruning = false;
        for (const auto& [name, p] : builtins) {
            if (p.num_vertices() > 12 || p.dim() > 4)
                continue;
            std::set<std::vector<std::size_t>> prod;
            for (const auto& f : facets_of(p)) {
                std::vector<std::size_t> inc;
                for (std::size_t v = 0; v < p.num_vertices(); ++v)
                    if (f.incident.test(v))
                        inc.push_back(v);
                prod.insert(inc);
            }
            if (prod != brute_sets(p.vertices())) {
                expect(why, false, name + ": facet enumeration disagrees with brute force");
                continue;
            }
            auto a = find_dual_subset(p, plain);
            auto b = find_dual_subset(p, bare);
            bool same = a.mode == b.mode && a.subset.has_value() == b.subset.has_value() &&
                        (!a.subset || *a.subset == *b.subset);
            expect(why, same, name + ": pruned and prune-free searches disagree");
        }
    }});

    criteria.push_back({9, "invariants: Euler, double dual, transpose; --jobs 4 byte-identical",
                        [&](std::string& why) {
        for (const auto& p : {cube(3), cross_polytope(3), simplex(4),
                              cartesian_product(ngon(5), cube(1)), bipyramid(ngon(5)),
                              truncate_vertices(simplex(3), Rational(1, 3))}) {
            auto fv = f_vector_of(p);
            long long alt = 0, sign = 1;
            for (auto c : fv) {
                alt += sign * static_cast<long long>(c);
                sign = -sign;
            }
            expect(why, alt == 1 - (p.dim() % 2 == 0 ? 1 : -1), "Euler relation failed");
            expect(why,
                   are_equivalent(incidence_of(p), incidence_of(polar_dual(polar_dual(p))))
                       .has_value(),
                   "double polar dual is not the identity type");
            expect(why,
                   are_equivalent(incidence_of(polar_dual(p)),
                                  combinatorial_dual(incidence_of(p)))
                       .has_value(),
                   "polar dual disagrees with the incidence transpose");
        }
        fs::path pp = g_dir / "prism5.poly", serial = g_dir / "serial.json",
                 par = g_dir / "parallel.json";
        run_cli("construct prism 5 --out '" + pp.string() + "'");
        auto r1 = run_cli("find-dual-subset '" + pp.string() + "' --out '" + serial.string() + "'");
        auto r4 = run_cli("find-dual-subset '" + pp.string() + "' --jobs 4 --out '" +
                          par.string() + "'");
        expect(why, r1.exit_code == 3 && r4.exit_code == 3,
               "prism search exit codes are not 3/3");
        expect(why, slurp(serial) == slurp(par), "--jobs 4 output differs from serial");
    }});

    criteria.push_back({10, "9-gon x square refuses the search under the default budget",
                        [&](std::string& why) {
        fs::path cert = g_dir / "c10.json";
        auto r = run_cli("verify-theorem --ngon 9 --cube-dim 2 --out '" + cert.string() + "'");
        expect(why, r.exit_code == 4, "exit code " + std::to_string(r.exit_code) + " != 4");
        json j = load_json(cert);
        expect(why, j.at("instance").at("hypothesis_ok").get<bool>(), "hypothesis not ok");
        expect(why, j.at("structure").at("partition_ok").get<bool>(), "partition check failed");
        expect(why, j.at("structure").at("bipyramid_ok").get<bool>(), "bipyramid check failed");
        expect(why, !j.contains("search"), "search ran despite the budget");
        expect(why,
               j.contains("skip_reason") &&
                   j.at("skip_reason").get<std::string>().find("budget") != std::string::npos,
               "no budget skip reason recorded");
    }});

    int failures = 0;
    for (auto& c : criteria) {
        std::string why;
        auto t0 = Clock::now();
        try {
            c.body(why);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        char line[512];
        std::snprintf(line, sizeof(line), "%s  criterion %2d: %s  [%.2fs]",
                      why.empty() ? "PASS" : "FAIL", c.id, c.label.c_str(), secs);
        std::cout << line << "\n";
        if (!why.empty()) {
            std::cout << "      reason: " << why << "\n";
            ++failures;
        }
    }
    std::error_code ec;
    fs::remove_all(g_dir, ec);
    std::cout << (failures == 0 ? "all acceptance criteria passed"
                                : std::to_string(failures) + " criteria FAILED")
              << "\n";
    return failures;
}
