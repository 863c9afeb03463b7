#include "kpalg/matrix.hpp"

#include "kpalg/error.hpp"

namespace kpalg {

RingMatrix::RingMatrix(RingPtr ctx, std::size_t rows, std::size_t cols)
    : ctx_(std::move(ctx)), rows_(rows), cols_(cols), data_(rows * cols, Elem(ctx_)) {}

RingMatrix::RingMatrix(RingPtr ctx, std::vector<std::vector<Elem>> rows, Shape shape)
    : ctx_(std::move(ctx)), rows_(rows.size()), cols_(rows.empty() ? 0 : rows.front().size()) {
    data_.reserve(rows_ * cols_);
    for (auto& r : rows) {
        if (r.size() != cols_) throw SemanticError("ragged matrix rows");
        for (auto& e : r) {
            if (e.ctx() != ctx_) throw SemanticError("matrix entry from a different ring");
            data_.push_back(std::move(e));
        }
    }
    if (shape != Shape::general) *this = with_shape(shape);
}

RingMatrix RingMatrix::identity(RingPtr ctx, std::size_t n) {
    RingMatrix m(ctx, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Elem(ctx, Rat(1));
    m.shape_ = Shape::symmetric;
    return m;
}

RingMatrix RingMatrix::from_strings(const RingPtr& ctx, const std::vector<std::vector<std::string>>& rows,
                                    Shape shape) {
    std::vector<std::vector<Elem>> es;
    for (const auto& r : rows) {
        es.emplace_back();
        for (const auto& s : r) es.back().push_back(parse_elem(s, ctx));
    }
    return RingMatrix(ctx, std::move(es), shape);
}

RingMatrix RingMatrix::transpose() const {
    RingMatrix t(ctx_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    t.shape_ = shape_;
    return t;
}

RingMatrix RingMatrix::operator*(const RingMatrix& other) const {
    if (cols_ != other.rows_) throw SemanticError("matrix dimension mismatch in product");
    if (ctx_ != other.ctx_) throw SemanticError("ring context mismatch");
    RingMatrix r(ctx_, rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < other.cols_; ++j) {
            Elem acc(ctx_);
            for (std::size_t k = 0; k < cols_; ++k) {
                const Elem& a = (*this)(i, k);
                const Elem& b = other(k, j);
                if (a.is_zero() || b.is_zero()) continue;
                acc += a * b;
            }
            r(i, j) = std::move(acc);
        }
    return r;
}

RingMatrix RingMatrix::operator+(const RingMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw SemanticError("matrix dimension mismatch in sum");
    RingMatrix r(ctx_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] + other.data_[k];
    return r;
}

RingMatrix RingMatrix::operator-(const RingMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw SemanticError("matrix dimension mismatch in difference");
    RingMatrix r(ctx_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] - other.data_[k];
    return r;
}

RingMatrix RingMatrix::scale(const Elem& factor) const {
    RingMatrix r(ctx_, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] * factor;
    r.shape_ = shape_;
    return r;
}

bool RingMatrix::is_zero() const { return !first_nonzero(); }

std::optional<std::pair<std::size_t, std::size_t>> RingMatrix::first_nonzero() const {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (!(*this)(i, j).is_zero()) return std::pair{i, j};
    return std::nullopt;
}

bool RingMatrix::is_symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
}

bool RingMatrix::is_antisymmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if (!((*this)(i, j) + (*this)(j, i)).is_zero()) return false;
    return true;
}

RingMatrix RingMatrix::with_shape(Shape shape) const {
    if (shape == Shape::symmetric && !is_symmetric()) throw SemanticError("matrix is not symmetric");
    if (shape == Shape::antisymmetric && !is_antisymmetric())
        throw SemanticError("matrix is not antisymmetric");
    RingMatrix r = *this;
    r.shape_ = shape;
    return r;
}

RingMatrix RingMatrix::lift(const RingPtr& target) const {
    RingMatrix r(target, rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k].lift(target);
    r.shape_ = shape_;
    return r;
}

std::vector<std::vector<std::string>> RingMatrix::to_strings() const {
    std::vector<std::vector<std::string>> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j).str());
    return out;
}

}  // namespace kpalg
