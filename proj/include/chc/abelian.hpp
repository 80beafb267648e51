#pragma once

#include "chc/integer_matrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace chc {

// Normal-form coordinates of an element of a finitely generated abelian group.
struct GroupElement {
    std::vector<mpz_class> torsion;    // one coordinate per torsion factor, in [0, d)
    std::vector<mpz_class> free_part;  // one coordinate per free summand

    bool is_zero() const;
    bool operator==(const GroupElement&) const = default;
    std::string to_string() const;
};

// Z^n modulo the row span of an integer relation matrix, in invariant-factor
// normal form, together with the projection homomorphism Z^n -> group.
class AbelianGroup {
public:
    static AbelianGroup quotient(std::size_t n, const IntMatrix& relations);

    std::size_t ambient_rank() const { return n_; }
    std::size_t free_rank() const { return n_ - rank_; }
    const std::vector<mpz_class>& torsion() const { return torsion_; }
    bool trivial() const { return free_rank() == 0 && torsion_.empty(); }

    GroupElement project(const std::vector<mpz_class>& v) const;
    GroupElement project64(const std::vector<std::int64_t>& v) const;

    std::string to_string() const;  // e.g. "Z^2 + Z/2 + Z/6", "0"

private:
    std::size_t n_ = 0;
    std::size_t rank_ = 0;                  // number of nonzero invariant factors
    std::vector<mpz_class> factors_;        // all nonzero d_1..d_r including 1s
    std::vector<mpz_class> torsion_;        // the d_i > 1
    IntMatrix v_;                           // column transform from the SNF
};

}  // namespace chc
