#pragma once

#include <cstdint>
#include <vector>

namespace chc {

// Dense matrix over GF(2) with rows packed into 64-bit words.
// Row/column indices are 0-based.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, bool v);
    void flip(std::size_t r, std::size_t c);

    // row r ^= row s
    void xor_rows(std::size_t r, std::size_t s);
    void swap_rows(std::size_t r, std::size_t s);

    BitMatrix transposed() const;

    bool row_empty(std::size_t r) const;

private:
    std::size_t rows_ = 0, cols_ = 0, words_ = 0;
    std::vector<std::uint64_t> data_;
    friend std::size_t gf2_rank(BitMatrix m);
    friend std::vector<std::vector<std::size_t>> gf2_kernel_basis(BitMatrix m);
};

// Rank by plain Gaussian elimination (deterministic: first usable pivot row).
std::size_t gf2_rank(BitMatrix m);

// Basis of the right kernel {x : m x = 0}; each kernel vector is returned as
// the sorted list of coordinate indices that are 1.
std::vector<std::vector<std::size_t>> gf2_kernel_basis(BitMatrix m);

}  // namespace chc
