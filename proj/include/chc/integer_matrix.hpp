#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace chc {

// Dense matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    mpz_class& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const mpz_class& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntMatrix multiplied(const IntMatrix& rhs) const;

    bool operator==(const IntMatrix& rhs) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<mpz_class> data_;
};

// Smith normal form U*A*V = D: U, V unimodular, D diagonal with each
// diagonal entry non-negative and dividing the next.
struct SmithForm {
    IntMatrix d;
    IntMatrix u;                       // rows() x rows() unimodular
    IntMatrix v;                       // cols() x cols() unimodular
    std::vector<mpz_class> diagonal;   // nonzero invariant factors d1 | d2 | ...
};

// Pivot choice: smallest nonzero absolute value in the working submatrix,
// ties broken by lowest (row, col).  Fully deterministic.
SmithForm smith_normal_form(const IntMatrix& a);

// Determinant via fraction-free elimination; used to verify unimodularity.
mpz_class determinant(const IntMatrix& a);

}  // namespace chc
