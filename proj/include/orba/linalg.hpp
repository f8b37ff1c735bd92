#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace orba {

using Vec = std::vector<double>;

/// Dense row-major matrix, sized for desk-scale problems.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

    static Mat identity(int n);
    static Mat from_rows(const std::vector<Vec>& rows);

    double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

    Vec row(int r) const;
    Vec col(int c) const;
    bool empty() const { return rows == 0 || cols == 0; }
};

Vec matvec(const Mat& m, const Vec& x);
Mat matmul(const Mat& a, const Mat& b);
Mat transpose(const Mat& m);
Mat hcat(const Mat& a, const Mat& b);

double dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(double s, const Vec& a);
double linf_norm(const Vec& a);
double l1_weighted(const Vec& w, const Vec& a);

/// Gauss-Jordan inverse with partial pivoting; nullopt when a pivot falls
/// below `tol`.
std::optional<Mat> inverse(const Mat& m, double tol = 1e-12);

double determinant(const Mat& m);

/// Rank via Gaussian elimination with partial pivoting.
int rank(const Mat& m, double tol = 1e-10);

/// Solves a square system m*x = b; nullopt when singular at `tol`.
std::optional<Vec> solve_square(const Mat& m, const Vec& b, double tol = 1e-12);

} // namespace orba
