#pragma once

#include <cstddef>
#include <vector>

#include "nullkit/common.hpp"
#include "nullkit/field.hpp"

namespace nullkit {

/// Dense row-major matrix of field elements.
class Matrix {
public:
    Matrix() = default;
    Matrix(FieldCtxPtr ctx, std::size_t rows, std::size_t cols);

    FieldElement& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const FieldElement& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const FieldCtxPtr& ctx() const { return ctx_; }

    static Matrix identity(FieldCtxPtr ctx, std::size_t n);

private:
    FieldCtxPtr ctx_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<FieldElement> data_;
};

/// In-place reduced row echelon form. Returns the pivot column of each
/// pivot row in order. The row elimination inner loop is the data-parallel
/// kernel; Exec::serial runs the reference loop, and both produce the same
/// matrix bit for bit (arithmetic is exact, every row is independent).
std::vector<std::size_t> row_reduce(Matrix& m, Exec exec = Exec::parallel);

std::size_t matrix_rank(Matrix m, Exec exec = Exec::parallel);

struct LinSolveResult {
    bool consistent = false;
    std::vector<FieldElement> solution;               // one solution when consistent
    std::vector<std::vector<FieldElement>> kernel;    // basis of the nullspace
    std::size_t rank = 0;
};

/// Exact Gaussian elimination for A x = rhs. Inconsistency is reported in
/// the result, not thrown.
LinSolveResult linsolve(Matrix a, const std::vector<FieldElement>& rhs,
                        Exec exec = Exec::parallel);

/// Nullspace basis of A (the kernel part of linsolve against rhs = 0).
std::vector<std::vector<FieldElement>> kernel_basis(Matrix a, Exec exec = Exec::parallel);

}  // namespace nullkit
