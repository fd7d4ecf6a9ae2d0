// polydual: exact-arithmetic polytope combinatorics CLI.
//
// Exit codes, relied on by scripts and the acceptance suite:
//   0  positive result (witness found / equivalent / instance verified / cert valid)
//   2  input or parameter error
//   3  negative result (exhausted / not equivalent / hypothesis fails / cert invalid)
//   4  subset budget exceeded
//
// The default subset budget is 10^7; the POLYDUAL_BUDGET environment
// variable overrides it and --budget overrides both. Certificates carry no
// timing data, so reruns and parallel runs are byte-identical.

#include <polydual/polydual.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNegative = 3;
constexpr int kExitBudget = 4;

using polydual::SearchCertificate;

std::uint64_t env_budget() {
    if (const char* s = std::getenv("POLYDUAL_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end && *end == '\0' && v > 0)
            return v;
        throw std::invalid_argument("POLYDUAL_BUDGET is not a positive integer");
    }
    return polydual::SearchOptions{}.budget;
}

void write_json(const polydual::json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

void print_search_summary(const SearchCertificate& c, std::ostream& os) {
    os << "mode: " << (c.mode == SearchCertificate::Mode::witness ? "witness" : "exhausted")
       << "\n";
    os << "subset size: " << c.subset_size << "  total subsets C(v,f): " << c.total_subsets
       << "\n";
    os << "target f-vector: " << polydual::format_fvector(c.target_fvector) << "\n";
    if (c.subset) {
        os << "witness subset:";
        for (auto i : *c.subset)
            os << ' ' << i;
        os << "\n";
    }
    os << "subsets examined: " << c.subsets_examined;
    std::uint64_t sum = c.subsets_examined;
    for (const auto& [k, v] : c.pruned_by) {
        os << "  pruned[" << k << "]: " << v;
        sum += v;
    }
    os << "\n";
    if (c.mode == SearchCertificate::Mode::exhausted)
        os << "accounting: examined + pruned = " << sum << " = C(v,f)\n";
    for (const auto& n : c.notes)
        os << "note: " << n << "\n";
    os << "realization: " << c.realization_hash << "\n";
}

struct ConstructArgs {
    std::string family;
    std::vector<std::string> params;
    std::string out;
};

int run_construct(const ConstructArgs& a) {
    using namespace polydual;
    auto need = [&](std::size_t n) {
        if (a.params.size() != n)
            throw std::invalid_argument("family " + a.family + " expects " + std::to_string(n) +
                                        " parameter(s)");
    };
    auto as_int = [](const std::string& s) {
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument("not an integer: " + s);
        return v;
    };

    VPolytope p;
    if (a.family == "ngon") {
        need(1);
        p = ngon(static_cast<std::size_t>(as_int(a.params[0])));
    } else if (a.family == "cube") {
        need(1);
        p = cube(static_cast<int>(as_int(a.params[0])));
    } else if (a.family == "simplex") {
        need(1);
        p = simplex(static_cast<int>(as_int(a.params[0])));
    } else if (a.family == "crosspolytope") {
        need(1);
        p = cross_polytope(static_cast<int>(as_int(a.params[0])));
    } else if (a.family == "prism") {
        need(1);
        p = cartesian_product(ngon(static_cast<std::size_t>(as_int(a.params[0]))), cube(1));
    } else if (a.family == "product") {
        need(2);
        p = cartesian_product(load_polytope(a.params[0]), load_polytope(a.params[1]));
    } else if (a.family == "bipyramid") {
        if (a.params.size() != 1 && a.params.size() != 2)
            throw std::invalid_argument("bipyramid expects FILE [LEVELS]");
        int levels = a.params.size() == 2 ? static_cast<int>(as_int(a.params[1])) : 1;
        p = iterated_bipyramid(load_polytope(a.params[0]), levels).result;
    } else if (a.family == "dual") {
        need(1);
        p = polar_dual(load_polytope(a.params[0]));
    } else if (a.family == "truncate") {
        if (a.params.size() != 1 && a.params.size() != 2)
            throw std::invalid_argument("truncate expects FILE [T]");
        Rational t = a.params.size() == 2 ? parse_rational(a.params[1]) : Rational(1, 3);
        p = truncate_vertices(load_polytope(a.params[0]), t);
    } else if (a.family == "perturb") {
        need(3);
        p = perturb(load_polytope(a.params[0]), static_cast<std::uint64_t>(as_int(a.params[1])),
                    static_cast<std::uint64_t>(as_int(a.params[2])));
    } else {
        throw std::invalid_argument("unknown family: " + a.family);
    }

    std::string summary = std::to_string(p.num_vertices()) + " vertices, f = " +
                          format_fvector(f_vector_of(p));
    if (a.out.empty()) {
        std::cout << serialize_polytope(p);
        std::cerr << summary << "\n";
    } else {
        save_polytope(p, a.out);
        std::cout << summary << "\n";
        std::cout << "wrote " << a.out << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic polytope combinatorics: duals, subset searches, certificates"};
    app.require_subcommand(1);

    ConstructArgs cons;
    auto* sc_construct = app.add_subcommand(
        "construct",
        "build a polytope (ngon N | cube D | simplex D | crosspolytope D | prism N | "
        "product A B | bipyramid FILE [LEVELS] | dual FILE | truncate FILE [T] | "
        "perturb FILE BOUND SEED)");
    sc_construct->add_option("family", cons.family, "polytope family")->required();
    sc_construct->add_option("params", cons.params, "family parameters");
    sc_construct->add_option("--out", cons.out, "write the polytope file here");

    std::string fds_file, fds_out;
    std::uint64_t budget_flag = 0;
    unsigned jobs = 1;
    auto* sc_find = app.add_subcommand("find-dual-subset",
                                       "search all size-f vertex subsets for a hull with the "
                                       "combinatorial type of the polar dual");
    sc_find->add_option("polytope", fds_file, ".poly file")->required();
    sc_find->add_option("--budget", budget_flag, "maximum number of subsets (default 10^7)");
    sc_find->add_option("--jobs", jobs, "parallel workers (output is byte-identical to serial)");
    sc_find->add_option("--out", fds_out, "write the certificate JSON here");

    long long vt_ngon = 0;
    int vt_cubedim = 0;
    std::string vt_out;
    auto* sc_verify = app.add_subcommand(
        "verify-theorem", "bound report, structural checks and subset search for ngon(N) x cube(D)");
    sc_verify->add_option("--ngon", vt_ngon, "polygon size N")->required();
    sc_verify->add_option("--cube-dim", vt_cubedim, "cube dimension D")->required();
    sc_verify->add_option("--budget", budget_flag, "maximum number of subsets (default 10^7)");
    sc_verify->add_option("--jobs", jobs, "parallel workers");
    sc_verify->add_option("--out", vt_out, "write the certificate JSON here");

    std::string eq_a, eq_b, eq_out;
    auto* sc_equiv = app.add_subcommand("check-equiv", "decide combinatorial equivalence of two polytopes");
    sc_equiv->add_option("a", eq_a, "first .poly file")->required();
    sc_equiv->add_option("b", eq_b, "second .poly file")->required();
    sc_equiv->add_option("--out", eq_out, "write the certificate JSON here");

    std::string cert_file;
    auto* sc_cert = app.add_subcommand("check-cert", "re-verify a certificate file (soundness only)");
    sc_cert->add_option("certificate", cert_file, "certificate JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        polydual::SearchOptions opts;
        opts.budget = budget_flag > 0 ? budget_flag : env_budget();
        opts.jobs = jobs;

        if (sc_construct->parsed())
            return run_construct(cons);

        if (sc_find->parsed()) {
            auto t0 = std::chrono::steady_clock::now();
            polydual::VPolytope q = polydual::load_polytope(fds_file);
            SearchCertificate cert = polydual::find_dual_subset(q, opts);
            std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
            print_search_summary(cert, std::cout);
            std::cerr << "elapsed: " << dt.count() << "s\n";
            if (!fds_out.empty())
                write_json(polydual::certificate_to_json(cert, q), fds_out);
            return cert.mode == SearchCertificate::Mode::witness ? kExitOk : kExitNegative;
        }

        if (sc_verify->parsed()) {
            auto t0 = std::chrono::steady_clock::now();
            polydual::VPolytope base = polydual::ngon(static_cast<std::size_t>(vt_ngon));
            auto tv = polydual::verify_theorem_instance(base, vt_cubedim, opts);
            std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;

            const auto& r = tv.report;
            std::cout << "n = " << r.n << ", d = " << r.d << ", d' = " << r.d_prime << "\n";
            std::cout << "ceiling term = " << r.ceiling_term << ", bound = " << r.bound
                      << ", max vertex incidence = " << r.max_incidence << "\n";
            std::cout << "hypothesis_ok: " << (r.hypothesis_ok ? "true" : "false") << "\n";
            if (!r.note.empty())
                std::cout << "note: " << r.note << "\n";
            if (tv.structure) {
                std::cout << "partition check: " << (tv.structure->partition_ok ? "pass" : "FAIL");
                if (!tv.structure->partition_detail.empty())
                    std::cout << " (" << tv.structure->partition_detail << ")";
                std::cout << "\n";
                std::cout << "bipyramid check: " << (tv.structure->bipyramid_ok ? "pass" : "FAIL")
                          << " (dual has " << tv.structure->dual_vertices << " vertices, expected n+2d = "
                          << tv.structure->expected_dual_vertices << ")\n";
            }
            if (tv.certificate)
                print_search_summary(*tv.certificate, std::cout);
            if (!tv.skip_reason.empty())
                std::cout << (r.hypothesis_ok ? "" : "the theorem makes no claim\n")
                          << "skip: " << tv.skip_reason << "\n";
            std::cerr << "elapsed: " << dt.count() << "s\n";

            if (!vt_out.empty()) {
                std::optional<polydual::VPolytope> product;
                if (tv.certificate)
                    product = polydual::product_with_cube(base, vt_cubedim).product;
                write_json(polydual::theorem_to_json(tv, base, vt_cubedim, product), vt_out);
            }
            if (!r.hypothesis_ok)
                return kExitNegative;
            if (tv.structure && !tv.structure->all_ok())
                return kExitNegative;
            if (!tv.certificate)
                return kExitBudget;  // structural checks reported, search refused
            return tv.certificate->mode == SearchCertificate::Mode::exhausted ? kExitOk
                                                                              : kExitNegative;
        }

        if (sc_equiv->parsed()) {
            polydual::VPolytope a = polydual::load_polytope(eq_a);
            polydual::VPolytope b = polydual::load_polytope(eq_b);
            auto w = polydual::are_equivalent(polydual::incidence_of(a), polydual::incidence_of(b));
            if (w) {
                std::cout << "equivalent\nvertex map:";
                for (auto t : w->vertex_map)
                    std::cout << ' ' << t;
                std::cout << "\nfacet map:";
                for (auto t : w->facet_map)
                    std::cout << ' ' << t;
                std::cout << "\n";
            } else {
                std::cout << "not equivalent\n";
            }
            if (!eq_out.empty())
                write_json(polydual::equivalence_to_json(a, b, w), eq_out);
            return w ? kExitOk : kExitNegative;
        }

        if (sc_cert->parsed()) {
            std::ifstream in(cert_file);
            if (!in)
                throw polydual::ParseError("cannot open " + cert_file);
            polydual::json j = polydual::json::parse(in);
            auto res = polydual::check_certificate(j);
            std::cout << (res.ok ? "valid" : "INVALID") << ": " << res.detail << "\n";
            return res.ok ? kExitOk : kExitNegative;
        }
    } catch (const polydual::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const polydual::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const polydual::json::exception& e) {
        std::cerr << "error: certificate parse: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
