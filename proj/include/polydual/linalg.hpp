#pragma once

// Exact linear algebra over the rationals: rank, affine dimension,
// full-rank solves, affine charts for degenerate point sets, and
// hyperplanes in canonical scaling.

#include <polydual/rational.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace polydual {

using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;

inline Rational dot(const QVector& a, const QVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dot: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

inline QVector vec_sub(const QVector& a, const QVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("vec_sub: dimension mismatch");
    QVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

inline QVector vec_add(const QVector& a, const QVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("vec_add: dimension mismatch");
    QVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

inline QVector vec_scale(const QVector& a, const Rational& c) {
    QVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] * c;
    return r;
}

inline bool is_zero_vector(const QVector& a) {
    for (const auto& x : a)
        if (x != 0)
            return false;
    return true;
}

// Exact Gaussian elimination. Pivot choice: within each column, the first
// row (lowest index) with a nonzero entry, so the result is deterministic
// for a given row order.
inline std::size_t rank(QMatrix a) {
    const std::size_t rows = a.size();
    if (rows == 0)
        return 0;
    const std::size_t cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[r], a[p]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (a[i][c] != 0) {
                Rational f = a[i][c] / a[r][c];
                for (std::size_t j = c; j < cols; ++j)
                    a[i][j] -= f * a[r][j];
            }
        }
        ++r;
    }
    return r;
}

// Dimension of the affine span of a point set; 0 for a single point.
inline int affine_dim(const std::vector<QVector>& points) {
    if (points.empty())
        throw std::invalid_argument("affine_dim: no points");
    QMatrix diffs;
    diffs.reserve(points.size() - 1);
    for (std::size_t i = 1; i < points.size(); ++i)
        diffs.push_back(vec_sub(points[i], points[0]));
    return static_cast<int>(rank(std::move(diffs)));
}

// Solves A * x = b for an m-by-k matrix A of full column rank k.
// Throws if A is rank deficient or the system is inconsistent.
inline QVector solve_full_rank(const QMatrix& a, const QVector& b) {
    const std::size_t m = a.size();
    if (m == 0 || a[0].empty())
        throw std::invalid_argument("solve_full_rank: empty system");
    const std::size_t k = a[0].size();
    if (b.size() != m)
        throw std::invalid_argument("solve_full_rank: dimension mismatch");
    QMatrix aug(m, QVector(k + 1));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            aug[i][j] = a[i][j];
        aug[i][k] = b[i];
    }
    std::vector<std::size_t> pivot_rows;
    std::size_t r = 0;
    for (std::size_t c = 0; c < k && r < m; ++c) {
        std::size_t p = r;
        while (p < m && aug[p][c] == 0)
            ++p;
        if (p == m)
            throw std::invalid_argument("solve_full_rank: rank deficient");
        std::swap(aug[r], aug[p]);
        for (std::size_t i = 0; i < m; ++i) {
            if (i != r && aug[i][c] != 0) {
                Rational f = aug[i][c] / aug[r][c];
                for (std::size_t j = c; j <= k; ++j)
                    aug[i][j] -= f * aug[r][j];
            }
        }
        pivot_rows.push_back(r);
        ++r;
    }
    if (r < k)
        throw std::invalid_argument("solve_full_rank: rank deficient");
    // rows past the pivots must have reduced to zero for consistency
    for (std::size_t i = k; i < m; ++i)
        if (aug[i][k] != 0)
            throw std::invalid_argument("solve_full_rank: inconsistent system");
    QVector x(k);
    for (std::size_t c = 0; c < k; ++c)
        x[c] = aug[c][k] / aug[c][c];
    return x;
}

// An exact coordinate system on the affine span of a point set: an origin,
// a basis of the span, and every input point rewritten in basis
// coordinates. Lets hull computations on degenerate sets run
// full-dimensionally. Basis vectors are chosen greedily by input index, so
// the chart is deterministic.
struct AffineChart {
    std::size_t ambient = 0;
    int dim = 0;
    QVector origin;
    QMatrix basis;               // dim rows, each of length ambient
    std::vector<QVector> local;  // one entry per input point, each of length dim
};

inline AffineChart restrict_to_span(const std::vector<QVector>& points) {
    if (points.empty())
        throw std::invalid_argument("restrict_to_span: no points");
    AffineChart chart;
    chart.ambient = points[0].size();
    chart.origin = points[0];

    QMatrix echelon;  // row-reduced copies of the accepted basis vectors
    auto reduce = [&](QVector v) {
        for (const auto& row : echelon) {
            std::size_t lead = 0;
            while (lead < row.size() && row[lead] == 0)
                ++lead;
            if (lead < row.size() && v[lead] != 0) {
                Rational f = v[lead] / row[lead];
                for (std::size_t j = lead; j < v.size(); ++j)
                    v[j] -= f * row[j];
            }
        }
        return v;
    };
    for (std::size_t i = 1; i < points.size(); ++i) {
        QVector d = vec_sub(points[i], chart.origin);
        QVector red = reduce(d);
        if (!is_zero_vector(red)) {
            chart.basis.push_back(std::move(d));
            echelon.push_back(std::move(red));
        }
    }
    chart.dim = static_cast<int>(chart.basis.size());

    // Express every point in basis coordinates: solve B^T x = p - origin.
    const std::size_t k = chart.basis.size();
    chart.local.reserve(points.size());
    if (k == 0) {
        chart.local.assign(points.size(), QVector{});
        return chart;
    }
    QMatrix bt(chart.ambient, QVector(k));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < chart.ambient; ++i)
            bt[i][j] = chart.basis[j][i];
    for (const auto& p : points)
        chart.local.push_back(solve_full_rank(bt, vec_sub(p, chart.origin)));
    return chart;
}

// A hyperplane { x : <normal, x> = offset }, stored in canonical scaling:
// the first nonzero normal coordinate is +1. Canonical scaling makes
// deduplication a plain equality test.
struct Hyperplane {
    QVector normal;
    Rational offset;

    friend bool operator==(const Hyperplane& a, const Hyperplane& b) {
        return a.normal == b.normal && a.offset == b.offset;
    }
};

inline Hyperplane make_hyperplane(QVector normal, Rational offset) {
    std::size_t lead = 0;
    while (lead < normal.size() && normal[lead] == 0)
        ++lead;
    if (lead == normal.size())
        throw std::invalid_argument("hyperplane: zero normal");
    if (normal[lead] != 1) {
        Rational s = normal[lead];
        for (auto& x : normal)
            x /= s;
        offset /= s;
    }
    return Hyperplane{std::move(normal), std::move(offset)};
}

// Sign of <normal, p> - offset.
inline int side_of(const Hyperplane& h, const QVector& p) {
    if (p.size() != h.normal.size())
        throw std::invalid_argument("side_of: dimension mismatch");
    return sign_of(dot(h.normal, p) - h.offset);
}

namespace detail {

// Hyperplane spanned by a point set whose affine span has dimension m-1,
// or nullopt when the span is smaller. Used by the facet enumerator, which
// must tolerate degenerate subsets quietly.
inline std::optional<Hyperplane> spanning_hyperplane_opt(const std::vector<QVector>& points) {
    const std::size_t m = points[0].size();
    QMatrix diffs;
    diffs.reserve(points.size() - 1);
    for (std::size_t i = 1; i < points.size(); ++i)
        diffs.push_back(vec_sub(points[i], points[0]));

    // forward elimination, tracking pivot columns
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m && r < diffs.size(); ++c) {
        std::size_t p = r;
        while (p < diffs.size() && diffs[p][c] == 0)
            ++p;
        if (p == diffs.size())
            continue;
        std::swap(diffs[r], diffs[p]);
        for (std::size_t i = r + 1; i < diffs.size(); ++i) {
            if (diffs[i][c] != 0) {
                Rational f = diffs[i][c] / diffs[r][c];
                for (std::size_t j = c; j < m; ++j)
                    diffs[i][j] -= f * diffs[r][j];
            }
        }
        pivot_col.push_back(c);
        ++r;
    }
    if (r != m - 1)
        return std::nullopt;

    // one free column; normal = kernel vector with free coordinate 1
    std::vector<char> is_pivot(m, 0);
    for (auto c : pivot_col)
        is_pivot[c] = 1;
    std::size_t free_col = 0;
    while (free_col < m && is_pivot[free_col])
        ++free_col;
    QVector normal(m, Rational(0));
    normal[free_col] = 1;
    for (std::size_t i = pivot_col.size(); i-- > 0;) {
        const std::size_t c = pivot_col[i];
        Rational s = 0;
        for (std::size_t j = c + 1; j < m; ++j)
            if (normal[j] != 0)
                s += diffs[i][j] * normal[j];
        normal[c] = -s / diffs[i][c];
    }
    Rational offset = dot(normal, points[0]);
    return make_hyperplane(std::move(normal), std::move(offset));
}

}  // namespace detail

// Unique hyperplane through a point set spanning an (m-1)-flat in ambient
// dimension m. Canonical output, independent of the input order.
inline Hyperplane hyperplane_through(const std::vector<QVector>& points) {
    if (points.empty())
        throw std::invalid_argument("hyperplane_through: no points");
    auto h = detail::spanning_hyperplane_opt(points);
    if (!h)
        throw std::invalid_argument("hyperplane_through: degenerate flat");
    return *h;
}

}  // namespace polydual
