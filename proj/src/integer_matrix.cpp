#include "chc/integer_matrix.hpp"

#include "chc/errors.hpp"

#include <cstdlib>
#include <utility>

namespace chc {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::multiplied(const IntMatrix& rhs) const {
    internal_check(cols_ == rhs.rows_, "IntMatrix multiply: shape mismatch");
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const mpz_class& a = at(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                const mpz_class& b = rhs.at(k, j);
                if (b != 0) out.at(i, j) += a * b;
            }
        }
    return out;
}

namespace {

struct SmithWork {
    IntMatrix a, u, v;

    void row_axpy(std::size_t dst, std::size_t src, const mpz_class& q) {
        // row dst -= q * row src, in both a and u
        for (std::size_t c = 0; c < a.cols(); ++c) a.at(dst, c) -= q * a.at(src, c);
        for (std::size_t c = 0; c < u.cols(); ++c) u.at(dst, c) -= q * u.at(src, c);
    }
    void col_axpy(std::size_t dst, std::size_t src, const mpz_class& q) {
        for (std::size_t r = 0; r < a.rows(); ++r) a.at(r, dst) -= q * a.at(r, src);
        for (std::size_t r = 0; r < v.rows(); ++r) v.at(r, dst) -= q * v.at(r, src);
    }
    void swap_rows(std::size_t r, std::size_t s) {
        if (r == s) return;
        for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a.at(r, c), a.at(s, c));
        for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u.at(r, c), u.at(s, c));
    }
    void swap_cols(std::size_t c, std::size_t d) {
        if (c == d) return;
        for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a.at(r, c), a.at(r, d));
        for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v.at(r, c), v.at(r, d));
    }
    void negate_row(std::size_t r) {
        for (std::size_t c = 0; c < a.cols(); ++c) a.at(r, c) = -a.at(r, c);
        for (std::size_t c = 0; c < u.cols(); ++c) u.at(r, c) = -u.at(r, c);
    }
};

// Smallest |entry| in a[t.., t..], ties by lowest (row, col); false if all zero.
bool select_pivot(const IntMatrix& a, std::size_t t, std::size_t& pr, std::size_t& pc) {
    bool found = false;
    mpz_class best;
    for (std::size_t r = t; r < a.rows(); ++r)
        for (std::size_t c = t; c < a.cols(); ++c) {
            const mpz_class& x = a.at(r, c);
            if (x == 0) continue;
            mpz_class ax = abs(x);
            if (!found || ax < best) {
                found = true;
                best = ax;
                pr = r;
                pc = c;
            }
        }
    return found;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& input) {
    const std::size_t m = input.rows(), n = input.cols();
    SmithWork w{input, IntMatrix::identity(m), IntMatrix::identity(n)};

    std::size_t t = 0;
    while (t < m && t < n) {
        std::size_t pr = 0, pc = 0;
        if (!select_pivot(w.a, t, pr, pc)) break;
        w.swap_rows(t, pr);
        w.swap_cols(t, pc);

        bool settled = false;
        while (!settled) {
            const mpz_class p = w.a.at(t, t);
            internal_check(p != 0, "smith: pivot vanished");
            bool clean = true;
            for (std::size_t r = t + 1; r < m; ++r) {
                if (w.a.at(r, t) == 0) continue;
                mpz_class q = w.a.at(r, t) / p;  // truncated division
                if (q != 0) w.row_axpy(r, t, q);
                if (w.a.at(r, t) != 0) clean = false;
            }
            for (std::size_t c = t + 1; c < n; ++c) {
                if (w.a.at(t, c) == 0) continue;
                mpz_class q = w.a.at(t, c) / p;
                if (q != 0) w.col_axpy(c, t, q);
                if (w.a.at(t, c) != 0) clean = false;
            }
            if (!clean) {
                // leftover remainders are strictly smaller: reselect pivot
                std::size_t rr = 0, cc = 0;
                internal_check(select_pivot(w.a, t, rr, cc), "smith: lost pivot");
                w.swap_rows(t, rr);
                w.swap_cols(t, cc);
                continue;
            }
            // row/col t clean; enforce pivot | submatrix
            bool divides_all = true;
            for (std::size_t r = t + 1; r < m && divides_all; ++r)
                for (std::size_t c = t + 1; c < n; ++c)
                    if (w.a.at(r, c) % p != 0) {
                        // pull the offending row up so the next round shrinks the pivot
                        for (std::size_t cc2 = 0; cc2 < n; ++cc2) w.a.at(t, cc2) += w.a.at(r, cc2);
                        for (std::size_t cc2 = 0; cc2 < m; ++cc2) w.u.at(t, cc2) += w.u.at(r, cc2);
                        divides_all = false;
                        break;
                    }
            if (divides_all) settled = true;
        }
        if (w.a.at(t, t) < 0) w.negate_row(t);
        ++t;
    }

    SmithForm out;
    out.diagonal.reserve(t);
    for (std::size_t i = 0; i < t; ++i) {
        internal_check(w.a.at(i, i) > 0, "smith: non-positive invariant factor");
        if (i + 1 < t)
            internal_check(w.a.at(i + 1, i + 1) % w.a.at(i, i) == 0,
                           "smith: divisibility chain broken");
        out.diagonal.push_back(w.a.at(i, i));
    }
    out.d = std::move(w.a);
    out.u = std::move(w.u);
    out.v = std::move(w.v);
    return out;
}

mpz_class determinant(const IntMatrix& a) {
    internal_check(a.rows() == a.cols(), "determinant: not square");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    // Bareiss fraction-free elimination
    mpz_class prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            std::size_t s = k + 1;
            while (s < n && m.at(s, k) == 0) ++s;
            if (s == n) return 0;
            for (std::size_t c = 0; c < n; ++c) std::swap(m.at(k, c), m.at(s, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                m.at(i, j) = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                mpz_class q;
                mpz_divexact(q.get_mpz_t(), m.at(i, j).get_mpz_t(), prev.get_mpz_t());
                m.at(i, j) = q;
            }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : mpz_class(-m.at(n - 1, n - 1));
}

}  // namespace chc
