#pragma once

// The .poly text format: line 1 is "POLY m v" (ambient dimension, vertex
// count), followed by v lines of m rationals in p/q form. Serialization is
// exact and round-trips bit-for-bit, so a file fingerprint identifies a
// realization.

#include <polydual/equivalence.hpp>
#include <polydual/polytope.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace polydual {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::string serialize_polytope(const VPolytope& p) {
    std::ostringstream os;
    os << "POLY " << p.ambient() << ' ' << p.num_vertices() << '\n';
    for (const auto& v : p.vertices()) {
        for (std::size_t i = 0; i < v.size(); ++i)
            os << (i ? " " : "") << to_string(v[i]);
        os << '\n';
    }
    return os.str();
}

inline VPolytope parse_polytope(std::istream& in) {
    std::string tag;
    std::size_t m = 0, v = 0;
    if (!(in >> tag) || tag != "POLY")
        throw ParseError("polytope file: missing POLY header");
    if (!(in >> m >> v) || m < 1 || v < 1)
        throw ParseError("polytope file: bad header counts");
    std::vector<QVector> verts(v, QVector(m));
    std::string tok;
    for (std::size_t i = 0; i < v; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (!(in >> tok))
                throw ParseError("polytope file: truncated coordinate data");
            try {
                verts[i][j] = parse_rational(tok);
            } catch (const std::invalid_argument& e) {
                throw ParseError(std::string("polytope file: ") + e.what());
            }
        }
    if (in >> tok)
        throw ParseError("polytope file: trailing data");
    try {
        return VPolytope::from_vertices(std::move(verts));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("polytope file: ") + e.what());
    }
}

inline VPolytope parse_polytope(const std::string& text) {
    std::istringstream is(text);
    return parse_polytope(is);
}

inline VPolytope load_polytope(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path);
    return parse_polytope(in);
}

inline void save_polytope(const VPolytope& p, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << serialize_polytope(p);
}

// 64-bit FNV-1a over the exact serialization, as a hex string. A
// fingerprint of the realization, not a cryptographic digest.
inline std::string realization_fingerprint(const VPolytope& p) {
    std::string s = serialize_polytope(p);
    std::uint64_t h = detail::fnv1a64(s.data(), s.size());
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

inline std::string format_fvector(const std::vector<std::size_t>& f) {
    std::string s = "(";
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i)
            s += ", ";
        s += std::to_string(f[i]);
    }
    return s + ")";
}

}  // namespace polydual
