#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "quasiwave/quadfield.hpp"

namespace quasiwave {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<T> row(std::size_t r) const {
        return std::vector<T>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using QMatrix = Matrix<QuadRat>;

std::vector<QuadRat> multiply(const QMatrix& a, const std::vector<QuadRat>& x);

/// Outcome of fraction-free elimination of A x = b.
struct EchelonReport {
    std::size_t rank = 0;
    /// Pivot column for each of the first `rank` echelon rows.
    std::vector<std::size_t> pivot_cols;
    /// Original indices of rows that reduced to 0 = 0 (implied by others).
    std::vector<std::size_t> redundant_rows;
    /// Original indices of rows that reduced to 0 = nonzero.
    std::vector<std::size_t> inconsistent_rows;
    /// Present when the system is consistent and has full column rank.
    std::optional<std::vector<QuadRat>> solution;

    bool consistent() const { return inconsistent_rows.empty(); }
    bool unique() const { return solution.has_value(); }
};

/// Bareiss elimination over Z[beta] after clearing row denominators.
/// Works for rectangular systems; the report lists the rows that were
/// redundant or inconsistent (by original index) so that callers can name the
/// offending constraints.
EchelonReport bareiss_solve(const QMatrix& a, const std::vector<QuadRat>& b);

/// Rank of A by the same elimination.
std::size_t exact_rank(const QMatrix& a);

/// LU factorisation over Q(beta) for square nonsingular systems that are
/// solved repeatedly (Gram matrices, change-of-basis matrices).  Zero entries
/// are skipped, which keeps banded inputs cheap.
class ExactLU {
public:
    explicit ExactLU(QMatrix a);

    std::size_t size() const { return n_; }
    std::vector<QuadRat> solve(const std::vector<QuadRat>& b) const;

private:
    std::size_t n_ = 0;
    QMatrix lu_;
    std::vector<std::size_t> perm_;
};

}  // namespace quasiwave
