// Copyright 2026 The mntgen Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

// Generalized MNT families with prime cofactor q.
//
// For embedding degree k and a root s of the branch polynomial modulo q,
// with L(x) = qx + s:
//
//   k | p(x)       | q*n(x), branch A | q*n(x), branch B
//   6 | Phi_4(L)   | Phi_3(L)         | Phi_6(L)
//   4 | Phi_6(L)   | Phi_4(L)         | Phi_4(L - 1)
//   3 | g0(L)      | g1(L)            | g2(L)
//
// The compositions Phi_6(Phi_4) = Phi_3*Phi_6, Phi_4(Phi_6) = Phi_4(x)*Phi_4(x-1)
// and Phi_3(g0) = g1*g2 give q*n | Phi_k(p). The trace is t = p + 1 - q*n and
// the CM quadratic t^2 - 4p, scaled by -3, completes to (alpha*x + beta)^2 - m,
// which turns the CM equation t^2 - 4p = Delta*Y^2 into X^2 - 3|Delta|Y^2 = m.

#ifndef MNTGEN_FAMILIES_HPP
#define MNTGEN_FAMILIES_HPP

#include "mntgen/arith.hpp"
#include "mntgen/poly.hpp"
#include "mntgen/report.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mntgen {

enum class Branch { A, B };

inline std::string_view to_string(Branch b) { return b == Branch::A ? "A" : "B"; }

inline std::optional<Branch> parse_branch(std::string_view s) {
    if (s == "A" || s == "a") return Branch::A;
    if (s == "B" || s == "b") return Branch::B;
    return std::nullopt;
}

struct FamilySpec {
    int k = 6;
    mpz_class q = 1;
    mpz_class s = 0;
    Branch branch = Branch::A;

    friend bool operator==(const FamilySpec &, const FamilySpec &) = default;
};

class FamilyError : public std::runtime_error {
public:
    enum class Kind { InconsistentSpec, ConstructionFailed, NotPellReducible };

    FamilyError(Kind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Pell form X = alpha*x + beta with X^2 - 3|Delta|*Y^2 = m.
struct PellForm {
    mpz_class alpha;
    mpz_class beta;
    mpz_class m;

    IntPolynomial x_polynomial() const { return IntPolynomial::linear(alpha, beta); }

    friend bool operator==(const PellForm &, const PellForm &) = default;
};

struct QuadraticFamily {
    FamilySpec spec;
    IntPolynomial n;
    IntPolynomial p;
    IntPolynomial t;
    PellForm pell;

    /// t(x)^2 - 4p(x)
    IntPolynomial cm_quadratic() const { return t * t - mpz_class(4) * p; }
};

inline bool is_supported_degree(int k) { return k == 3 || k == 4 || k == 6; }

/// q = 1, or a prime with q = 1 (mod 6) for k = 6 and k = 3 (q = 3 also for
/// k = 6), q = 1 (mod 4) or q = 2 for k = 4.
inline bool admissible_cofactor(int k, const mpz_class &q) {
    if (!is_supported_degree(k)) {
        throw std::invalid_argument("embedding degree must be 3, 4 or 6");
    }
    if (q == 1) {
        return true;
    }
    if (!is_prime(q)) {
        return false;
    }
    switch (k) {
    case 6:
        return q == 3 || mpz_fdiv_ui(q.get_mpz_t(), 6) == 1;
    case 4:
        return q == 2 || mpz_fdiv_ui(q.get_mpz_t(), 4) == 1;
    default:
        return mpz_fdiv_ui(q.get_mpz_t(), 6) == 1;
    }
}

/// p(x) = outer(qx + s).
inline IntPolynomial outer_polynomial(int k) {
    switch (k) {
    case 6:
        return cyclotomic(4);
    case 4:
        return cyclotomic(6);
    case 3:
        return aux_g(0);
    default:
        throw std::invalid_argument("embedding degree must be 3, 4 or 6");
    }
}

/// q*n(x) = branch(qx + s); s is a root of this polynomial modulo q.
inline IntPolynomial branch_polynomial(int k, Branch b) {
    switch (k) {
    case 6:
        return cyclotomic(b == Branch::A ? 3 : 6);
    case 4:
        return b == Branch::A ? cyclotomic(4) : compose(cyclotomic(4), IntPolynomial{-1, 1});
    case 3:
        return aux_g(b == Branch::A ? 1 : 2);
    default:
        throw std::invalid_argument("embedding degree must be 3, 4 or 6");
    }
}

/// Every s in [0, q-1] with branch_polynomial(k, b)(s) = 0 (mod q), ascending.
inline std::vector<mpz_class> find_roots(int k, const mpz_class &q, Branch b) {
    if (!admissible_cofactor(k, q)) {
        throw std::invalid_argument("find_roots: cofactor " + q.get_str() + " is not admissible for k=" +
                                    std::to_string(k));
    }
    if (q == 1) {
        return {mpz_class(0)};
    }
    const IntPolynomial f = branch_polynomial(k, b);
    std::vector<mpz_class> roots;
    if (q < 5) {
        for (mpz_class s = 0; s < q; ++s) {
            if (mpz_divisible_p(mpz_class(f(s)).get_mpz_t(), q.get_mpz_t())) {
                roots.push_back(s);
            }
        }
        return roots;
    }
    // quadratic formula mod q; 2a is a unit since q > 3
    const mpz_class a = f.coeff(2), bb = f.coeff(1), c = f.coeff(0);
    auto r = sqrt_mod(bb * bb - 4 * a * c, q);
    if (!r) {
        return roots;
    }
    mpz_class inv;
    mpz_class two_a = 2 * a;
    mpz_invert(inv.get_mpz_t(), two_a.get_mpz_t(), q.get_mpz_t());
    for (const mpz_class &root : {r->value(), mpz_class(-r->value())}) {
        mpz_class s = (-bb + root) * inv;
        mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), q.get_mpz_t());
        roots.push_back(s);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

/// Completes the square of -3*(t^2 - 4p) = (alpha*x + beta)^2 - m, alpha > 0.
inline PellForm derive_pell_form(const IntPolynomial &p, const IntPolynomial &t) {
    const IntPolynomial c = mpz_class(-3) * (t * t - mpz_class(4) * p);
    if (c.degree() != 2 || c.leading() <= 0) {
        throw FamilyError(FamilyError::Kind::NotPellReducible,
                          "-3(t^2-4p) = " + c.to_string() + " is not a positive-leading quadratic");
    }
    if (!is_square(c.coeff(2))) {
        throw FamilyError(FamilyError::Kind::NotPellReducible,
                          "leading coefficient of " + c.to_string() + " is not a perfect square");
    }
    PellForm form;
    form.alpha = isqrt(c.coeff(2));
    const mpz_class two_alpha = 2 * form.alpha;
    if (!mpz_divisible_p(c.coeff(1).get_mpz_t(), two_alpha.get_mpz_t())) {
        throw FamilyError(FamilyError::Kind::NotPellReducible,
                          "completing the square of " + c.to_string() + " leaves a fractional shift");
    }
    form.beta = c.coeff(1) / two_alpha;
    form.m = form.beta * form.beta - c.coeff(0);
    return form;
}

namespace detail {

inline std::string describe(const FamilySpec &spec) {
    return "k=" + std::to_string(spec.k) + " q=" + spec.q.get_str() + " s=" + spec.s.get_str() + " branch " +
           std::string(to_string(spec.branch));
}

inline mpz_class expected_n_discriminant(int k) { return k == 4 ? -4 : -3; }

inline mpz_class expected_pell_constant(int k) { return k == 3 ? 24 : -8; }

}  // namespace detail

/// Independent re-check of every family invariant; failures are entries, not
/// exceptions.
inline VerificationReport verify_family(const QuadraticFamily &fam) {
    VerificationReport report;
    const FamilySpec &spec = fam.spec;

    if (!is_supported_degree(spec.k)) {
        report.add("spec", false, "unsupported embedding degree");
        return report;
    }
    {
        bool ok = spec.q >= 1 && spec.s >= 0 && (spec.q == 1 ? spec.s == 0 : spec.s < spec.q);
        if (ok) {
            mpz_class v = branch_polynomial(spec.k, spec.branch)(spec.s);
            ok = mpz_divisible_p(v.get_mpz_t(), spec.q.get_mpz_t()) != 0;
        }
        report.add("spec", ok, ok ? "" : "s is not a root of the branch polynomial mod q");
    }

    const bool shapes = fam.n.degree() == 2 && fam.p.degree() == 2 && fam.t.degree() <= 1;
    report.add("degrees", shapes,
               shapes ? "" : "expected deg n = deg p = 2 and deg t <= 1");

    const IntPolynomial qn = spec.q * fam.n;
    {
        const bool ok = qn == fam.p + IntPolynomial{1} - fam.t;
        report.add("trace_identity", ok, ok ? "" : "q*n != p + 1 - t");
    }
    {
        bool ok = false;
        if (!qn.is_zero()) {
            ok = exact_divide(compose(cyclotomic(spec.k), fam.p), qn).has_value();
        }
        report.add("embedding_divisibility", ok, ok ? "" : "q*n does not divide Phi_k(p) in Z[x]");
    }
    const IntPolynomial cm = fam.cm_quadratic();
    if (spec.k == 3) {
        // m = 24 > 0: t^2 - 4p is positive only where (alpha x + beta)^2 <= 24
        bool ok = cm.degree() == 2 && cm.leading() < 0;
        report.add("cm_negative_leading", ok, ok ? "" : "t^2 - 4p = " + cm.to_string() + " has no negative leading term");
    } else {
        bool ok = cm.degree() == 2 && cm.leading() < 0 && discriminant(cm) < 0;
        report.add("cm_negative_definite", ok, ok ? "" : "t^2 - 4p = " + cm.to_string() + " is not negative definite");
    }
    auto irreducible = [&](const char *name, const IntPolynomial &f) {
        std::string detail;
        bool ok = false;
        try {
            ok = is_irreducible_quadratic(f);
            if (!ok) detail = f.to_string() + " has a square discriminant";
        } catch (const std::invalid_argument &e) {
            detail = e.what();
        }
        report.add(name, ok, detail);
    };
    irreducible("n_irreducible", fam.n);
    irreducible("p_irreducible", fam.p);
    {
        bool ok = fam.n.degree() == 2 && discriminant(fam.n) == detail::expected_n_discriminant(spec.k);
        report.add("n_discriminant", ok,
                   ok ? "" : "expected discriminant " + detail::expected_n_discriminant(spec.k).get_str());
    }
    {
        const IntPolynomial x = fam.pell.x_polynomial();
        const bool ok = fam.pell.alpha > 0 &&
                        (x * x - IntPolynomial::constant(fam.pell.m) + mpz_class(3) * cm).is_zero();
        report.add("pell_identity", ok, ok ? "" : "(alpha x + beta)^2 - m != -3(t^2 - 4p)");
    }
    {
        const bool ok = fam.pell.m == detail::expected_pell_constant(spec.k);
        report.add("pell_constant", ok, ok ? "" : "unexpected Pell constant " + fam.pell.m.get_str());
    }
    return report;
}

/// Builds (n, p, t) from the spec, derives the Pell form and verifies the
/// result. t is p + 1 - q*n by construction.
inline QuadraticFamily build_family(const FamilySpec &spec) {
    if (!is_supported_degree(spec.k)) {
        throw std::invalid_argument("embedding degree must be 3, 4 or 6");
    }
    if (!admissible_cofactor(spec.k, spec.q)) {
        throw FamilyError(FamilyError::Kind::InconsistentSpec,
                          detail::describe(spec) + ": cofactor is not admissible");
    }
    if (spec.s < 0 || (spec.q == 1 ? spec.s != 0 : spec.s >= spec.q)) {
        throw FamilyError(FamilyError::Kind::InconsistentSpec, detail::describe(spec) + ": s out of range");
    }
    const IntPolynomial lin = IntPolynomial::linear(spec.q, spec.s);
    QuadraticFamily fam;
    fam.spec = spec;
    fam.p = compose(outer_polynomial(spec.k), lin);
    const IntPolynomial qn = compose(branch_polynomial(spec.k, spec.branch), lin);

    std::vector<mpz_class> nc;
    for (const auto &c : qn.coeffs()) {
        if (!mpz_divisible_p(c.get_mpz_t(), spec.q.get_mpz_t())) {
            throw FamilyError(FamilyError::Kind::InconsistentSpec,
                              detail::describe(spec) + ": q does not divide " + qn.to_string());
        }
        nc.push_back(c / spec.q);
    }
    fam.n = IntPolynomial(std::move(nc));
    fam.t = fam.p + IntPolynomial{1} - qn;
    fam.pell = derive_pell_form(fam.p, fam.t);

    const VerificationReport report = verify_family(fam);
    if (!report.all_passed()) {
        std::string failed;
        for (const auto &name : report.failures()) {
            failed += " " + name;
        }
        throw FamilyError(FamilyError::Kind::ConstructionFailed,
                          detail::describe(spec) + ": invariant check failed:" + failed);
    }
    return fam;
}

/// All families for (k, q), branch A first, s ascending within a branch.
inline std::vector<QuadraticFamily> families_for(int k, const mpz_class &q, bool branch_a = true,
                                                 bool branch_b = true) {
    std::vector<QuadraticFamily> out;
    for (Branch b : {Branch::A, Branch::B}) {
        if ((b == Branch::A && !branch_a) || (b == Branch::B && !branch_b)) {
            continue;
        }
        for (const auto &s : find_roots(k, q, b)) {
            out.push_back(build_family(FamilySpec{k, q, s, b}));
        }
    }
    return out;
}

// Forms as printed in the original statement of the constructions, in terms
// of L = qx + s. Only used to flag disagreements with the derived forms.
namespace published {

inline IntPolynomial trace(int k, Branch b, const IntPolynomial &lin) {
    const IntPolynomial one{1};
    switch (k) {
    case 6:
        return b == Branch::A ? one - lin : one + lin;
    case 4:
        return b == Branch::A ? one - lin : lin;
    default:
        return b == Branch::A ? mpz_class(3) * lin - one : one - mpz_class(3) * lin;
    }
}

inline IntPolynomial pell_x(int k, Branch b, const IntPolynomial &lin) {
    const IntPolynomial three_l = mpz_class(3) * lin;
    switch (k) {
    case 6:
        return three_l + IntPolynomial{b == Branch::A ? 1 : -1};
    case 4:
        return three_l + IntPolynomial{b == Branch::A ? 1 : 2};
    default:
        return three_l + IntPolynomial{3};
    }
}

struct Listing {
    int k;
    long q;
    long s;
    IntPolynomial n;
    IntPolynomial p;
    IntPolynomial t;
};

/// Reference table of k = 4 families with small cofactor.
inline const std::vector<Listing> &listings() {
    static const std::vector<Listing> table = {
        {4, 2, 1, {1, 2, 2}, {1, 2, 4}, {0, -2}},
        {4, 5, 2, {1, 4, 5}, {3, 15, 25}, {-1, -5}},
        {4, 5, 3, {2, 6, 5}, {7, 25, 25}, {-1, -5}},
    };
    return table;
}

}  // namespace published

/// Disagreements between the derived family and the printed forms: the
/// closed-form trace, the Pell substitution X(x) (compared up to sign) and
/// any matching row of the reference table. Empty when everything agrees.
inline std::vector<std::string> erratum_warnings(const QuadraticFamily &fam) {
    std::vector<std::string> out;
    const FamilySpec &spec = fam.spec;
    const IntPolynomial lin = IntPolynomial::linear(spec.q, spec.s);
    const std::string who = detail::describe(spec);

    const IntPolynomial printed_t = published::trace(spec.k, spec.branch, lin);
    if (printed_t != fam.t) {
        out.push_back(who + ": closed-form trace " + printed_t.to_string() +
                      " violates q*n = p+1-t; using derived trace " + fam.t.to_string());
    }
    const IntPolynomial printed_x = published::pell_x(spec.k, spec.branch, lin);
    const IntPolynomial derived_x = fam.pell.x_polynomial();
    if (printed_x != derived_x && printed_x != -derived_x) {
        out.push_back(who + ": closed-form Pell substitution X = " + printed_x.to_string() +
                      " does not complete the square; using derived X = " + derived_x.to_string());
    }
    for (const auto &row : published::listings()) {
        if (row.k != spec.k || spec.q != row.q || spec.s != row.s || row.n != fam.n) {
            continue;
        }
        if (row.p != fam.p) {
            out.push_back(who + ": reference table prints p = " + row.p.to_string() + ", derived p = " +
                          fam.p.to_string());
        }
        if (row.t != fam.t) {
            out.push_back(who + ": reference table prints t = " + row.t.to_string() +
                          ", for which q*n = p+1-t fails; derived t = " + fam.t.to_string());
        }
    }
    return out;
}

}  // namespace mntgen

#endif  // MNTGEN_FAMILIES_HPP
