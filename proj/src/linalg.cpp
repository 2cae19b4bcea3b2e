#include "graphforms/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace graphforms {

Mat mat_identity(size_t n) {
    Mat m(n, Vec(n, Rational(0)));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    if (a.empty() || b.empty()) return {};
    size_t n = a.size(), k = b.size(), m = b[0].size();
    Mat r(n, Vec(m, Rational(0)));
    for (size_t i = 0; i < n; ++i) {
        if (a[i].size() != k) throw std::invalid_argument("mat_mul: shape mismatch");
        for (size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (size_t j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
        }
    }
    return r;
}

Vec mat_apply(const Mat& a, const Vec& x) {
    Vec r(a.size(), Rational(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != x.size()) throw std::invalid_argument("mat_apply: shape mismatch");
        for (size_t j = 0; j < x.size(); ++j) r[i] += a[i][j] * x[j];
    }
    return r;
}

Mat mat_add(const Mat& a, const Mat& b) {
    Mat r = a;
    for (size_t i = 0; i < r.size(); ++i)
        for (size_t j = 0; j < r[i].size(); ++j) r[i][j] += b[i][j];
    return r;
}

Mat mat_scale(const Mat& a, const Rational& s) {
    Mat r = a;
    for (auto& row : r)
        for (auto& x : row) x *= s;
    return r;
}

Mat mat_transpose(const Mat& a) {
    if (a.empty()) return {};
    Mat r(a[0].size(), Vec(a.size(), Rational(0)));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j) r[j][i] = a[i][j];
    return r;
}

std::vector<size_t> rref(Mat& a) {
    std::vector<size_t> pivots;
    if (a.empty()) return pivots;
    size_t rows = a.size(), cols = a[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && a[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(a[sel], a[r]);
        Rational inv = 1 / a[r][c];
        for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

size_t rank(Mat a) { return rref(a).size(); }

Rational det(Mat a) {
    size_t n = a.size();
    if (n == 0) return Rational(1);
    if (a[0].size() != n) throw std::invalid_argument("det: not square");
    Rational d(1);
    for (size_t c = 0; c < n; ++c) {
        size_t sel = c;
        while (sel < n && a[sel][c] == 0) ++sel;
        if (sel == n) return Rational(0);
        if (sel != c) {
            std::swap(a[sel], a[c]);
            d = -d;
        }
        d *= a[c][c];
        Rational inv = 1 / a[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (a[i][c] == 0) continue;
            Rational f = a[i][c] * inv;
            for (size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return d;
}

std::vector<Vec> kernel_basis(const Mat& a) {
    if (a.empty()) return {};
    Mat m = a;
    std::vector<size_t> pivots = rref(m);
    size_t cols = a[0].size();
    std::vector<bool> is_pivot(cols, false);
    for (size_t p : pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        Vec v(cols, Rational(0));
        v[free] = 1;
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("solve: shape mismatch");
    if (a.empty()) return Vec{};
    size_t cols = a[0].size();
    Mat aug = a;
    for (size_t i = 0; i < a.size(); ++i) aug[i].push_back(b[i]);
    std::vector<size_t> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;  // inconsistent
    Vec x(cols, Rational(0));
    for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug[i][cols];
    return x;
}

}  // namespace graphforms
