#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kpalg/ring.hpp"

namespace kpalg {

enum class Shape { general, symmetric, antisymmetric };

/// Dense matrix of ring elements. A shape tag other than `general` is
/// verified entry-wise on construction.
class RingMatrix {
public:
    RingMatrix(RingPtr ctx, std::size_t rows, std::size_t cols);
    RingMatrix(RingPtr ctx, std::vector<std::vector<Elem>> rows, Shape shape = Shape::general);

    static RingMatrix identity(RingPtr ctx, std::size_t n);
    static RingMatrix from_strings(const RingPtr& ctx, const std::vector<std::vector<std::string>>& rows,
                                   Shape shape = Shape::general);

    const RingPtr& ctx() const noexcept { return ctx_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }
    Shape shape() const noexcept { return shape_; }

    const Elem& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    RingMatrix transpose() const;
    RingMatrix operator*(const RingMatrix& other) const;
    RingMatrix operator+(const RingMatrix& other) const;
    RingMatrix operator-(const RingMatrix& other) const;
    RingMatrix scale(const Elem& factor) const;

    bool is_zero() const;
    /// First nonzero entry, if any.
    std::optional<std::pair<std::size_t, std::size_t>> first_nonzero() const;
    bool is_symmetric() const;
    bool is_antisymmetric() const;

    /// Re-tag after verifying the shape; throws SemanticError on mismatch.
    RingMatrix with_shape(Shape shape) const;
    RingMatrix lift(const RingPtr& target) const;

    std::vector<std::vector<std::string>> to_strings() const;

private:
    RingPtr ctx_;
    std::size_t rows_, cols_;
    std::vector<Elem> data_;
    Shape shape_ = Shape::general;
};

}  // namespace kpalg
