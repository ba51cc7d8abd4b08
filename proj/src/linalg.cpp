#include "nullkit/linalg.hpp"

#include <algorithm>

namespace nullkit {

Matrix::Matrix(FieldCtxPtr ctx, std::size_t rows, std::size_t cols)
    : ctx_(std::move(ctx)), rows_(rows), cols_(cols) {
    if (!ctx_) throw Error("Matrix needs a field");
    data_.assign(rows_ * cols_, ctx_->zero());
}

Matrix Matrix::identity(FieldCtxPtr ctx, std::size_t n) {
    Matrix m(std::move(ctx), n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = m.ctx()->one();
    return m;
}

namespace {

// Subtract factor * row `src` from row `dst`, columns [from, cols).
inline void row_axpy(Matrix& m, std::size_t dst, std::size_t src, const FieldElement& factor,
                     std::size_t from) {
    for (std::size_t c = from; c < m.cols(); ++c)
        m.at(dst, c) -= factor * m.at(src, c);
}

}  // namespace

std::vector<std::size_t> row_reduce(Matrix& m, Exec exec) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t pr = 0;  // next pivot row
    for (std::size_t pc = 0; pc < cols && pr < rows; ++pc) {
        std::size_t hit = rows;
        for (std::size_t r = pr; r < rows; ++r) {
            if (!m.at(r, pc).is_zero()) {
                hit = r;
                break;
            }
        }
        if (hit == rows) continue;
        if (hit != pr) {
            for (std::size_t c = pc; c < cols; ++c) std::swap(m.at(pr, c), m.at(hit, c));
        }
        FieldElement inv = m.at(pr, pc).inverse();
        for (std::size_t c = pc; c < cols; ++c) m.at(pr, c) = m.at(pr, c) * inv;
        if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
            for (long long r = 0; r < static_cast<long long>(rows); ++r) {
                auto rr = static_cast<std::size_t>(r);
                if (rr == pr || m.at(rr, pc).is_zero()) continue;
                FieldElement f = m.at(rr, pc);
                row_axpy(m, rr, pr, f, pc);
            }
        } else {
            for (std::size_t r = 0; r < rows; ++r) {
                if (r == pr || m.at(r, pc).is_zero()) continue;
                FieldElement f = m.at(r, pc);
                row_axpy(m, r, pr, f, pc);
            }
        }
        pivots.push_back(pc);
        ++pr;
    }
    return pivots;
}

std::size_t matrix_rank(Matrix m, Exec exec) { return row_reduce(m, exec).size(); }

LinSolveResult linsolve(Matrix a, const std::vector<FieldElement>& rhs, Exec exec) {
    const std::size_t rows = a.rows(), cols = a.cols();
    if (rhs.size() != rows) throw Error("linsolve: rhs length mismatch");
    const auto& ctx = a.ctx();

    Matrix aug(ctx, rows, cols + 1);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, cols) = rhs[r];
    }
    std::vector<std::size_t> pivots = row_reduce(aug, exec);

    LinSolveResult out;
    out.consistent = true;
    std::vector<long long> pivot_of_col(cols, -1);
    std::size_t rank_a = 0;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == cols) {
            out.consistent = false;  // pivot landed in the rhs column
        } else {
            pivot_of_col[pivots[i]] = static_cast<long long>(i);
            ++rank_a;
        }
    }
    out.rank = rank_a;

    if (out.consistent) {
        out.solution.assign(cols, ctx->zero());
        for (std::size_t c = 0; c < cols; ++c)
            if (pivot_of_col[c] >= 0)
                out.solution[c] = aug.at(static_cast<std::size_t>(pivot_of_col[c]), cols);
    }

    // kernel basis: one vector per free column
    for (std::size_t fc = 0; fc < cols; ++fc) {
        if (pivot_of_col[fc] >= 0) continue;
        std::vector<FieldElement> v(cols, ctx->zero());
        v[fc] = ctx->one();
        for (std::size_t c = 0; c < cols; ++c)
            if (pivot_of_col[c] >= 0)
                v[c] = -aug.at(static_cast<std::size_t>(pivot_of_col[c]), fc);
        out.kernel.push_back(std::move(v));
    }
    return out;
}

std::vector<std::vector<FieldElement>> kernel_basis(Matrix a, Exec exec) {
    std::vector<FieldElement> zero(a.rows(), a.ctx()->zero());
    return linsolve(std::move(a), zero, exec).kernel;
}

}  // namespace nullkit
