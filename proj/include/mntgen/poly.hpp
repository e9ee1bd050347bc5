// Copyright 2026 The mntgen Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

#ifndef MNTGEN_POLY_HPP
#define MNTGEN_POLY_HPP

#include "mntgen/arith.hpp"

#include <gmpxx.h>

#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mntgen {

/// Dense polynomial over Z, constant term first. The coefficient vector is
/// kept trimmed, so equality is plain vector equality and the zero
/// polynomial has no coefficients.
class IntPolynomial {
public:
    IntPolynomial() = default;

    explicit IntPolynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    IntPolynomial(std::initializer_list<long> coeffs) {
        coeffs_.reserve(coeffs.size());
        for (long c : coeffs) {
            coeffs_.emplace_back(c);
        }
        trim();
    }

    static IntPolynomial constant(const mpz_class &c) { return IntPolynomial(std::vector<mpz_class>{c}); }

    /// a*x + b
    static IntPolynomial linear(const mpz_class &a, const mpz_class &b) {
        return IntPolynomial(std::vector<mpz_class>{b, a});
    }

    bool is_zero() const { return coeffs_.empty(); }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const std::vector<mpz_class> &coeffs() const { return coeffs_; }

    /// Coefficient of x^i, zero beyond the degree.
    mpz_class coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : mpz_class(0); }

    mpz_class leading() const { return is_zero() ? mpz_class(0) : coeffs_.back(); }

    /// gcd of the coefficients (0 for the zero polynomial).
    mpz_class content() const {
        mpz_class g = 0;
        for (const auto &c : coeffs_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        }
        return g;
    }

    mpz_class operator()(const mpz_class &x) const {
        mpz_class acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * x + *it;
        }
        return acc;
    }

    IntPolynomial &operator+=(const IntPolynomial &o) {
        if (o.coeffs_.size() > coeffs_.size()) {
            coeffs_.resize(o.coeffs_.size(), 0);
        }
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
            coeffs_[i] += o.coeffs_[i];
        }
        trim();
        return *this;
    }

    IntPolynomial &operator-=(const IntPolynomial &o) {
        if (o.coeffs_.size() > coeffs_.size()) {
            coeffs_.resize(o.coeffs_.size(), 0);
        }
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) {
            coeffs_[i] -= o.coeffs_[i];
        }
        trim();
        return *this;
    }

    IntPolynomial &operator*=(const mpz_class &c) {
        for (auto &a : coeffs_) {
            a *= c;
        }
        trim();
        return *this;
    }

    friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial &b) { return a += b; }
    friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial &b) { return a -= b; }
    friend IntPolynomial operator-(IntPolynomial a) { return a *= mpz_class(-1); }
    friend IntPolynomial operator*(IntPolynomial a, const mpz_class &c) { return a *= c; }
    friend IntPolynomial operator*(const mpz_class &c, IntPolynomial a) { return a *= c; }

    friend IntPolynomial operator*(const IntPolynomial &a, const IntPolynomial &b) {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::vector<mpz_class> r(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                r[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return IntPolynomial(std::move(r));
    }

    friend bool operator==(const IntPolynomial &a, const IntPolynomial &b) { return a.coeffs_ == b.coeffs_; }

    /// Human-readable form, highest power first, e.g. "25x^2+15x+3".
    std::string to_string() const {
        if (is_zero()) {
            return "0";
        }
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            const mpz_class &c = coeffs_[static_cast<std::size_t>(i)];
            if (c == 0) {
                continue;
            }
            mpz_class mag = abs(c);
            if (c < 0) {
                out += "-";
            } else if (!out.empty()) {
                out += "+";
            }
            if (mag != 1 || i == 0) {
                out += mag.get_str();
            }
            if (i >= 1) {
                out += "x";
            }
            if (i >= 2) {
                out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) {
            coeffs_.pop_back();
        }
    }

    std::vector<mpz_class> coeffs_;
};

inline mpz_class evaluate(const IntPolynomial &f, const mpz_class &x) { return f(x); }

/// f(g(x)), by Horner's rule over polynomials.
inline IntPolynomial compose(const IntPolynomial &f, const IntPolynomial &g) {
    IntPolynomial acc;
    const auto &c = f.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * g + IntPolynomial::constant(*it);
    }
    return acc;
}

/// h with f = g*h and h in Z[x], if one exists. Long division over Q fails
/// to stay integral exactly when the rational quotient has a non-integer
/// coefficient, so the integer division below decides the question.
inline std::optional<IntPolynomial> exact_divide(const IntPolynomial &f, const IntPolynomial &g) {
    if (g.is_zero()) {
        throw std::invalid_argument("exact_divide: division by the zero polynomial");
    }
    if (f.is_zero()) {
        return IntPolynomial{};
    }
    if (f.degree() < g.degree()) {
        return std::nullopt;
    }
    std::vector<mpz_class> rem = f.coeffs();
    const auto &gc = g.coeffs();
    const int dg = g.degree();
    const mpz_class &lead = gc.back();
    std::vector<mpz_class> quot(static_cast<std::size_t>(f.degree() - dg + 1), 0);
    for (int i = f.degree(); i >= dg; --i) {
        mpz_class &top = rem[static_cast<std::size_t>(i)];
        if (top == 0) {
            continue;
        }
        if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t())) {
            return std::nullopt;
        }
        mpz_class c;
        mpz_divexact(c.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
        quot[static_cast<std::size_t>(i - dg)] = c;
        for (int j = 0; j <= dg; ++j) {
            rem[static_cast<std::size_t>(i - dg + j)] -= c * gc[static_cast<std::size_t>(j)];
        }
    }
    for (const auto &r : rem) {
        if (r != 0) {
            return std::nullopt;
        }
    }
    return IntPolynomial(std::move(quot));
}

inline mpz_class discriminant(const IntPolynomial &f) {
    if (f.degree() != 2) {
        throw std::invalid_argument("discriminant: polynomial must be quadratic");
    }
    return f.coeff(1) * f.coeff(1) - 4 * f.coeff(2) * f.coeff(0);
}

/// A primitive quadratic is irreducible over Z iff its discriminant is not a
/// perfect square. Non-primitive input is rejected.
inline bool is_irreducible_quadratic(const IntPolynomial &f) {
    if (f.degree() != 2) {
        throw std::invalid_argument("is_irreducible_quadratic: polynomial must be quadratic");
    }
    if (f.content() != 1) {
        throw std::invalid_argument("is_irreducible_quadratic: polynomial must be primitive");
    }
    return !is_square(discriminant(f));
}

/// Phi_3, Phi_4, Phi_6.
inline IntPolynomial cyclotomic(int k) {
    switch (k) {
    case 3:
        return {1, 1, 1};
    case 4:
        return {1, 0, 1};
    case 6:
        return {1, -1, 1};
    default:
        throw std::invalid_argument("cyclotomic: k must be 3, 4 or 6");
    }
}

/// g0 = 3x^2-1, g1 = 3x^2-3x+1, g2 = 3x^2+3x+1; Phi_3(g0) = g1*g2.
inline IntPolynomial aux_g(int j) {
    switch (j) {
    case 0:
        return {-1, 0, 3};
    case 1:
        return {1, -3, 3};
    case 2:
        return {1, 3, 3};
    default:
        throw std::invalid_argument("aux_g: j must be 0, 1 or 2");
    }
}

}  // namespace mntgen

#endif  // MNTGEN_POLY_HPP
