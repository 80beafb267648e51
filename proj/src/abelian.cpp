#include "chc/abelian.hpp"

#include "chc/errors.hpp"

#include <sstream>

namespace chc {

bool GroupElement::is_zero() const {
    for (const auto& t : torsion)
        if (t != 0) return false;
    for (const auto& f : free_part)
        if (f != 0) return false;
    return true;
}

std::string GroupElement::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    os << "(torsion";
    for (const auto& t : torsion) os << " " << t;
    os << "; free";
    for (const auto& f : free_part) os << " " << f;
    os << ")";
    return os.str();
}

AbelianGroup AbelianGroup::quotient(std::size_t n, const IntMatrix& relations) {
    if (relations.rows() > 0 && relations.cols() != n)
        throw ValidationError("quotient: relation width " + std::to_string(relations.cols()) +
                              " does not match generator count " + std::to_string(n));
    AbelianGroup g;
    g.n_ = n;
    if (relations.rows() == 0) {
        g.v_ = IntMatrix::identity(n);
        return g;
    }
    SmithForm snf = smith_normal_form(relations);
    g.rank_ = snf.diagonal.size();
    g.factors_ = snf.diagonal;
    for (const auto& d : snf.diagonal)
        if (d > 1) g.torsion_.push_back(d);
    g.v_ = std::move(snf.v);
    return g;
}

GroupElement AbelianGroup::project(const std::vector<mpz_class>& v) const {
    internal_check(v.size() == n_, "project: vector length mismatch");
    // y = v * V  (row vector times the SNF column transform)
    std::vector<mpz_class> y(n_, 0);
    for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t i = 0; i < n_; ++i)
            if (v[i] != 0 && v_.at(i, j) != 0) y[j] += v[i] * v_.at(i, j);
    GroupElement e;
    for (std::size_t i = 0; i < rank_; ++i) {
        const mpz_class& d = factors_[i];
        if (d == 1) continue;  // coordinate dies
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), y[i].get_mpz_t(), d.get_mpz_t());
        e.torsion.push_back(r);
    }
    for (std::size_t i = rank_; i < n_; ++i) e.free_part.push_back(y[i]);
    return e;
}

GroupElement AbelianGroup::project64(const std::vector<std::int64_t>& v) const {
    std::vector<mpz_class> w;
    w.reserve(v.size());
    for (auto x : v) w.emplace_back(static_cast<long>(x));
    return project(w);
}

std::string AbelianGroup::to_string() const {
    std::ostringstream os;
    bool wrote = false;
    if (free_rank() == 1) {
        os << "Z";
        wrote = true;
    } else if (free_rank() > 1) {
        os << "Z^" << free_rank();
        wrote = true;
    }
    for (const auto& d : torsion_) {
        if (wrote) os << " + ";
        os << "Z/" << d;
        wrote = true;
    }
    if (!wrote) os << "0";
    return os.str();
}

}  // namespace chc
