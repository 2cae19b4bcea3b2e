#pragma once

#include "graphforms/rational.hpp"

#include <optional>
#include <vector>

namespace graphforms {

using Mat = std::vector<std::vector<Rational>>;
using Vec = std::vector<Rational>;

Mat mat_identity(size_t n);
Mat mat_mul(const Mat& a, const Mat& b);
Vec mat_apply(const Mat& a, const Vec& x);
Mat mat_add(const Mat& a, const Mat& b);
Mat mat_scale(const Mat& a, const Rational& s);
Mat mat_transpose(const Mat& a);

/// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<size_t> rref(Mat& a);

size_t rank(Mat a);
Rational det(Mat a);

/// Deterministic kernel basis: one vector per free column in ascending
/// order, with unit value in the free coordinate.
std::vector<Vec> kernel_basis(const Mat& a);

/// A particular solution of A x = b, if one exists.
std::optional<Vec> solve(const Mat& a, const Vec& b);

}  // namespace graphforms
