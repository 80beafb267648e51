#include "chc/gf2.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace chc {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

bool BitMatrix::get(std::size_t r, std::size_t c) const {
    return (data_[r * words_ + c / 64] >> (c % 64)) & 1u;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool v) {
    std::uint64_t& w = data_[r * words_ + c / 64];
    std::uint64_t bit = std::uint64_t{1} << (c % 64);
    if (v) w |= bit; else w &= ~bit;
}

void BitMatrix::flip(std::size_t r, std::size_t c) {
    data_[r * words_ + c / 64] ^= std::uint64_t{1} << (c % 64);
}

void BitMatrix::xor_rows(std::size_t r, std::size_t s) {
    for (std::size_t w = 0; w < words_; ++w) data_[r * words_ + w] ^= data_[s * words_ + w];
}

void BitMatrix::swap_rows(std::size_t r, std::size_t s) {
    if (r == s) return;
    for (std::size_t w = 0; w < words_; ++w)
        std::swap(data_[r * words_ + w], data_[s * words_ + w]);
}

bool BitMatrix::row_empty(std::size_t r) const {
    for (std::size_t w = 0; w < words_; ++w)
        if (data_[r * words_ + w]) return false;
    return true;
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t w = 0; w < words_; ++w) {
            std::uint64_t word = data_[r * words_ + w];
            while (word) {
                unsigned bit = static_cast<unsigned>(__builtin_ctzll(word));
                word &= word - 1;
                t.set(w * 64 + bit, r, true);
            }
        }
    return t;
}

std::size_t gf2_rank(BitMatrix m) {
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols_ && rank < m.rows_; ++c) {
        std::size_t pivot = rank;
        while (pivot < m.rows_ && !m.get(pivot, c)) ++pivot;
        if (pivot == m.rows_) continue;
        m.swap_rows(rank, pivot);
        for (std::size_t r = 0; r < m.rows_; ++r)
            if (r != rank && m.get(r, c)) m.xor_rows(r, rank);
        ++rank;
    }
    return rank;
}

std::vector<std::vector<std::size_t>> gf2_kernel_basis(BitMatrix m) {
    const std::size_t n = m.cols_;
    std::vector<std::size_t> pivot_col;     // pivot column of each echelon row
    std::vector<char> is_pivot(n, 0);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < n && rank < m.rows_; ++c) {
        std::size_t pivot = rank;
        while (pivot < m.rows_ && !m.get(pivot, c)) ++pivot;
        if (pivot == m.rows_) continue;
        m.swap_rows(rank, pivot);
        for (std::size_t r = 0; r < m.rows_; ++r)
            if (r != rank && m.get(r, c)) m.xor_rows(r, rank);
        pivot_col.push_back(c);
        is_pivot[c] = 1;
        ++rank;
    }
    std::vector<std::vector<std::size_t>> basis;
    for (std::size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        std::vector<std::size_t> vec{c};
        // free column c: pivot rows with a 1 in column c contribute their pivot column
        for (std::size_t r = 0; r < rank; ++r)
            if (m.get(r, c)) vec.push_back(pivot_col[r]);
        std::sort(vec.begin(), vec.end());
        basis.push_back(std::move(vec));
    }
    return basis;
}

}  // namespace chc
