#include "orba/linalg.hpp"

#include "orba/errors.hpp"

#include <algorithm>
#include <cmath>

namespace orba {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

Mat Mat::from_rows(const std::vector<Vec>& rows) {
    if (rows.empty()) return Mat();
    Mat m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (int i = 0; i < m.rows; ++i) {
        if (static_cast<int>(rows[i].size()) != m.cols)
            throw ArgumentError("matrix rows have inconsistent lengths");
        for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Vec Mat::row(int r) const {
    Vec out(cols);
    for (int j = 0; j < cols; ++j) out[j] = at(r, j);
    return out;
}

Vec Mat::col(int c) const {
    Vec out(rows);
    for (int i = 0; i < rows; ++i) out[i] = at(i, c);
    return out;
}

Vec matvec(const Mat& m, const Vec& x) {
    if (static_cast<int>(x.size()) != m.cols)
        throw ArgumentError("matvec dimension mismatch");
    Vec out(m.rows, 0.0);
    for (int i = 0; i < m.rows; ++i) {
        double s = 0.0;
        for (int j = 0; j < m.cols; ++j) s += m.at(i, j) * x[j];
        out[i] = s;
    }
    return out;
}

Mat matmul(const Mat& a, const Mat& b) {
    if (a.cols != b.rows) throw ArgumentError("matmul dimension mismatch");
    Mat out(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const double aik = a.at(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols; ++j) out.at(i, j) += aik * b.at(k, j);
        }
    return out;
}

Mat transpose(const Mat& m) {
    Mat out(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out.at(j, i) = m.at(i, j);
    return out;
}

Mat hcat(const Mat& a, const Mat& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (a.rows != b.rows) throw ArgumentError("hcat row mismatch");
    Mat out(a.rows, a.cols + b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (int j = 0; j < a.cols; ++j) out.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols; ++j) out.at(i, a.cols + j) = b.at(i, j);
    }
    return out;
}

double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw ArgumentError("dot dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Vec add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw ArgumentError("add dimension mismatch");
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Vec sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw ArgumentError("sub dimension mismatch");
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Vec scale(double s, const Vec& a) {
    Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
    return out;
}

double linf_norm(const Vec& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::fabs(v));
    return m;
}

double l1_weighted(const Vec& w, const Vec& a) {
    if (w.size() != a.size()) throw ArgumentError("weight dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += w[i] * std::fabs(a[i]);
    return s;
}

namespace {

// Returns reduced row-echelon factor for inverse/rank/solve helpers.
struct Elimination {
    Mat work;
    std::vector<int> pivot_cols;
};

} // namespace

std::optional<Mat> inverse(const Mat& m, double tol) {
    if (m.rows != m.cols) return std::nullopt;
    const int n = m.rows;
    Mat a = m;
    Mat inv = Mat::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(a.at(r, col)) > std::fabs(a.at(piv, col))) piv = r;
        if (std::fabs(a.at(piv, col)) < tol) return std::nullopt;
        if (piv != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(a.at(piv, j), a.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        }
        const double d = a.at(col, col);
        for (int j = 0; j < n; ++j) {
            a.at(col, j) /= d;
            inv.at(col, j) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a.at(r, col);
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                a.at(r, j) -= f * a.at(col, j);
                inv.at(r, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

double determinant(const Mat& m) {
    if (m.rows != m.cols) throw ArgumentError("determinant of non-square matrix");
    const int n = m.rows;
    Mat a = m;
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(a.at(r, col)) > std::fabs(a.at(piv, col))) piv = r;
        if (a.at(piv, col) == 0.0) return 0.0;
        if (piv != col) {
            det = -det;
            for (int j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(col, j));
        }
        det *= a.at(col, col);
        for (int r = col + 1; r < n; ++r) {
            const double f = a.at(r, col) / a.at(col, col);
            for (int j = col; j < n; ++j) a.at(r, j) -= f * a.at(col, j);
        }
    }
    return det;
}

int rank(const Mat& m, double tol) {
    Mat a = m;
    int rk = 0;
    for (int col = 0; col < a.cols && rk < a.rows; ++col) {
        int piv = rk;
        for (int r = rk + 1; r < a.rows; ++r)
            if (std::fabs(a.at(r, col)) > std::fabs(a.at(piv, col))) piv = r;
        if (std::fabs(a.at(piv, col)) < tol) continue;
        if (piv != rk)
            for (int j = 0; j < a.cols; ++j) std::swap(a.at(piv, j), a.at(rk, j));
        for (int r = 0; r < a.rows; ++r) {
            if (r == rk) continue;
            const double f = a.at(r, col) / a.at(rk, col);
            if (f == 0.0) continue;
            for (int j = 0; j < a.cols; ++j) a.at(r, j) -= f * a.at(rk, j);
        }
        ++rk;
    }
    return rk;
}

std::optional<Vec> solve_square(const Mat& m, const Vec& b, double tol) {
    auto inv = inverse(m, tol);
    if (!inv) return std::nullopt;
    return matvec(*inv, b);
}

} // namespace orba
