#pragma once

#include <optional>

#include "chernweil/matrix.hpp"
#include "chernweil/ratfunc.hpp"

namespace chernweil {

using RMatrix = Matrix<RatFunc>;

RMatrix zero_matrix(const ChartPtr& chart, std::size_t rows, std::size_t cols);
RMatrix identity_matrix(const ChartPtr& chart, std::size_t n);

/// Chart shared by every entry; throws ChartMismatch otherwise.
ChartPtr matrix_chart(const RMatrix& m);

/// Entries re-read on another chart with the same variables.
RMatrix on_chart(const RMatrix& m, const ChartPtr& chart);

RMatrix restrict_matrix(const RMatrix& m, const Substitution& s);

/// Rank over the fraction field of the chart, by exact elimination.
std::size_t matrix_rank(const RMatrix& m);

RatFunc determinant(const RMatrix& m);

/// Inverse over the chart's ring. Throws ShapeMismatch for non-square input and
/// NotInvertibleOnChart when the inverse needs a denominator the chart lacks.
RMatrix inverse(const RMatrix& m);

bool is_invertible(const RMatrix& m);

/// L with L*m = I over the chart's ring, built from a square row subset whose
/// minor is invertible on the chart. nullopt when no such subset exists.
std::optional<RMatrix> left_inverse(const RMatrix& m);

/// Left inverse over the fraction field; entries live on the fraction-field chart.
/// nullopt when m lacks full column rank.
std::optional<RMatrix> left_inverse_fraction(const RMatrix& m);

}  // namespace chernweil
