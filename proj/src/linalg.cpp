#include "lipsat/linalg.hpp"

namespace lipsat {

int cyc_rank(CycMatrix A) {
    if (A.empty()) return 0;
    size_t rows = A.size(), colcount = A[0].size();
    size_t r = 0;
    for (size_t c = 0; c < colcount && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && A[sel][c].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(A[r], A[sel]);
        CycRat inv = A[r][c].inv();
        for (size_t j = c; j < colcount; ++j) A[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c].is_zero()) continue;
            CycRat f = A[i][c];
            for (size_t j = c; j < colcount; ++j) A[i][j] -= f * A[r][j];
        }
        ++r;
    }
    return (int)r;
}

std::optional<std::vector<CycRat>> cyc_solve(CycMatrix A, std::vector<CycRat> b) {
    size_t rows = A.size();
    size_t cols = rows ? A[0].size() : 0;
    std::vector<long> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && A[sel][c].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(A[r], A[sel]);
        std::swap(b[r], b[sel]);
        CycRat inv = A[r][c].inv();
        for (size_t j = c; j < cols; ++j) A[r][j] *= inv;
        b[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c].is_zero()) continue;
            CycRat f = A[i][c];
            for (size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
            b[i] -= f * b[r];
        }
        pivot_col.push_back((long)c);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (!b[i].is_zero()) return std::nullopt;
    std::vector<CycRat> x(cols, CycRat::zero());
    for (size_t k = 0; k < pivot_col.size(); ++k) x[pivot_col[k]] = b[k];
    return x;
}

} // namespace lipsat
