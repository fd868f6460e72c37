#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>

#include "ising/monomial.hpp"

namespace ising {

using cplx = std::complex<double>;

inline constexpr double kDefaultPrune = 1e-12;   // drop terms below this magnitude
inline constexpr double kDefaultTol = 1e-9;      // default comparison tolerance

// Finite complex combination of canonical monomials.  The term map is kept
// ordered so iteration (printing, serialization) is deterministic.  Terms
// with |coefficient| <= prune_threshold are dropped after every operation.
class AlgebraElement {
  public:
    using TermMap = std::map<Monomial, cplx>;

    AlgebraElement() = default;
    explicit AlgebraElement(double prune_threshold) : prune_(prune_threshold) {}

    static AlgebraElement zero() { return AlgebraElement{}; }
    static AlgebraElement identity(cplx coeff = 1.0);
    static AlgebraElement from_monomial(const Monomial& m, cplx coeff = 1.0);
    static AlgebraElement generator(SiteIndex s);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    double prune_threshold() const { return prune_; }

    cplx coefficient(const Monomial& m) const;
    cplx trace() const;  // normalized trace: coefficient of the unit

    AlgebraElement& add_term(const Monomial& m, cplx coeff);

    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement operator*(const AlgebraElement& o) const;
    AlgebraElement operator*(cplx scalar) const;
    AlgebraElement operator-() const;
    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);

    AlgebraElement adjoint() const;

    // sup norm of the coefficient vector
    double max_abs_coeff() const;
    // Hilbert-Schmidt norm sqrt(Tr(x* x)); canonical monomials are
    // orthonormal for the normalized trace, so this is the coefficient
    // 2-norm.
    double hs_norm() const;

    bool is_hermitian(double tol = kDefaultTol) const;
    // x = x* and x^2 = x, both up to coefficient sup norm tol.
    bool is_projection(double tol = kDefaultTol) const;

    // Smallest/largest site appearing in any term; nullopt when every term
    // is scalar (or the element is zero).
    std::optional<SiteIndex> support_min() const;
    std::optional<SiteIndex> support_max() const;

    std::string to_string() const;

  private:
    void prune();
    TermMap terms_;
    double prune_ = kDefaultPrune;
};

inline AlgebraElement operator*(cplx scalar, const AlgebraElement& x) { return x * scalar; }

AlgebraElement commutator(const AlgebraElement& x, const AlgebraElement& y);

inline bool approx_equal(const AlgebraElement& x, const AlgebraElement& y,
                         double tol = kDefaultTol) {
    return (x - y).max_abs_coeff() <= tol;
}

}  // namespace ising
