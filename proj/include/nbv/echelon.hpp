#pragma once

#include "nbv/linalg.hpp"

#include <optional>

namespace nbv {

// Incrementally maintained, fully reduced row echelon basis of a subspace.
// Each row has a 1 at its pivot and 0 at every other row's pivot, so
// coordinates of a vector in the span are read off at the pivot columns.
class Echelon {
public:
    explicit Echelon(std::size_t width) : width_(width) {}

    // Returns true when v was independent of the current rows.
    bool insert(Vec v);
    Vec reduce(Vec v) const;
    bool contains(const Vec& v) const { return is_zero(reduce(v)); }
    // Coordinates w.r.t. rows(); throws if v is outside the span.
    Vec coordinates(const Vec& v) const;

    // Rows sorted by pivot column.
    void sort_by_pivot();

    std::size_t size() const { return rows_.size(); }
    std::size_t width() const { return width_; }
    const std::vector<Vec>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return piv_; }

private:
    std::size_t width_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> piv_;
};

// Basis of {c : sum_j c_j cols_j = 0} given the columns of a matrix.
std::vector<Vec> nullspace(const std::vector<Vec>& columns);

} // namespace nbv
