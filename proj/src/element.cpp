#include "ising/element.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ising {

AlgebraElement AlgebraElement::identity(cplx coeff) {
    AlgebraElement x;
    x.add_term(Monomial::identity(), coeff);
    return x;
}

AlgebraElement AlgebraElement::from_monomial(const Monomial& m, cplx coeff) {
    AlgebraElement x;
    x.add_term(m, coeff);
    return x;
}

AlgebraElement AlgebraElement::generator(SiteIndex s) {
    return from_monomial(Monomial::generator(s));
}

cplx AlgebraElement::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? cplx{0.0} : it->second;
}

cplx AlgebraElement::trace() const { return coefficient(Monomial::identity()); }

AlgebraElement& AlgebraElement::add_term(const Monomial& m, cplx coeff) {
    auto [it, inserted] = terms_.try_emplace(m, coeff);
    if (!inserted) it->second += coeff;
    if (std::abs(it->second) <= prune_) terms_.erase(it);
    return *this;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    AlgebraElement out = *this;
    out += o;
    return out;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const {
    AlgebraElement out = *this;
    out -= o;
    return out;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& o) const {
    AlgebraElement out(std::max(prune_, o.prune_));
    for (const auto& [ml, cl] : terms_) {
        for (const auto& [mr, cr] : o.terms_) {
            auto [sign, prod] = mul_monomials(ml, mr);
            out.add_term(prod, static_cast<double>(sign) * cl * cr);
        }
    }
    return out;
}

AlgebraElement AlgebraElement::operator*(cplx scalar) const {
    AlgebraElement out(prune_);
    for (const auto& [m, c] : terms_) out.add_term(m, c * scalar);
    return out;
}

AlgebraElement AlgebraElement::operator-() const { return *this * cplx{-1.0}; }

AlgebraElement AlgebraElement::adjoint() const {
    AlgebraElement out(prune_);
    for (const auto& [m, c] : terms_)
        out.add_term(m, std::conj(c) * static_cast<double>(m.adjoint_sign()));
    return out;
}

double AlgebraElement::max_abs_coeff() const {
    double mx = 0.0;
    for (const auto& [m, c] : terms_) mx = std::max(mx, std::abs(c));
    return mx;
}

double AlgebraElement::hs_norm() const {
    double s = 0.0;
    for (const auto& [m, c] : terms_) s += std::norm(c);
    return std::sqrt(s);
}

bool AlgebraElement::is_hermitian(double tol) const {
    return (*this - adjoint()).max_abs_coeff() <= tol;
}

bool AlgebraElement::is_projection(double tol) const {
    return is_hermitian(tol) && (*this * *this - *this).max_abs_coeff() <= tol;
}

std::optional<SiteIndex> AlgebraElement::support_min() const {
    std::optional<SiteIndex> best;
    for (const auto& [m, c] : terms_) {
        if (m.is_identity()) continue;
        SiteIndex lo = m.sites().front();
        if (!best || lo < *best) best = lo;
    }
    return best;
}

std::optional<SiteIndex> AlgebraElement::support_max() const {
    std::optional<SiteIndex> best;
    for (const auto& [m, c] : terms_) {
        if (m.is_identity()) continue;
        SiteIndex hi = m.sites().back();
        if (!best || *best < hi) best = hi;
    }
    return best;
}

void AlgebraElement::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) <= prune_)
            it = terms_.erase(it);
        else
            ++it;
    }
}

std::string AlgebraElement::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
        if (!m.is_identity()) out << "*" << m.to_string();
    }
    return out.str();
}

AlgebraElement commutator(const AlgebraElement& x, const AlgebraElement& y) {
    return x * y - y * x;
}

}  // namespace ising
