// Copyright 2026 The mntgen Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

// JSON records. Arbitrary-precision values are written as decimal strings;
// readers also accept JSON integers and 0x-prefixed hex strings.

#ifndef MNTGEN_IO_HPP
#define MNTGEN_IO_HPP

#include "mntgen/families.hpp"
#include "mntgen/pell.hpp"
#include "mntgen/poly.hpp"
#include "mntgen/report.hpp"
#include "mntgen/search.hpp"

#include <gmpxx.h>
#include <json.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mntgen {

using json = nlohmann::json;

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Decimal or 0x-prefixed hexadecimal, optional leading sign.
inline mpz_class parse_integer(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    int base = 10;
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
        base = 16;
        s.remove_prefix(2);
    }
    if (s.empty()) {
        throw FormatError("not an integer: '" + std::string(text) + "'");
    }
    for (char c : s) {
        const bool ok = base == 16 ? std::isxdigit(static_cast<unsigned char>(c)) != 0
                                   : std::isdigit(static_cast<unsigned char>(c)) != 0;
        if (!ok) {
            throw FormatError("not an integer: '" + std::string(text) + "'");
        }
    }
    mpz_class v(std::string(s), base);
    return negative ? mpz_class(-v) : v;
}

inline json to_json(const mpz_class &v) { return v.get_str(); }

inline mpz_class integer_from_json(const json &j) {
    if (j.is_string()) {
        return parse_integer(j.get_ref<const std::string &>());
    }
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) {
            return parse_integer(std::to_string(j.get<unsigned long long>()));
        }
        return parse_integer(std::to_string(j.get<long long>()));
    }
    throw FormatError("expected an integer, got " + j.dump());
}

inline const json &require_field(const json &j, const char *name) {
    if (!j.is_object()) {
        throw FormatError("expected a JSON object");
    }
    auto it = j.find(name);
    if (it == j.end()) {
        throw FormatError(std::string("missing field '") + name + "'");
    }
    return *it;
}

inline json to_json(const IntPolynomial &f) {
    json arr = json::array();
    for (const auto &c : f.coeffs()) {
        arr.push_back(c.get_str());
    }
    return arr;
}

inline IntPolynomial polynomial_from_json(const json &j) {
    if (!j.is_array()) {
        throw FormatError("polynomial must be a coefficient array");
    }
    std::vector<mpz_class> coeffs;
    for (const auto &c : j) {
        coeffs.push_back(integer_from_json(c));
    }
    return IntPolynomial(std::move(coeffs));
}

inline json to_json(const QuadraticFamily &fam) {
    return json{{"k", fam.spec.k},
                {"q", to_json(fam.spec.q)},
                {"s", to_json(fam.spec.s)},
                {"branch", std::string(to_string(fam.spec.branch))},
                {"n", to_json(fam.n)},
                {"p", to_json(fam.p)},
                {"t", to_json(fam.t)},
                {"pell", {{"alpha", to_json(fam.pell.alpha)}, {"beta", to_json(fam.pell.beta)}, {"m", to_json(fam.pell.m)}}}};
}

inline QuadraticFamily family_from_json(const json &j) {
    QuadraticFamily fam;
    const json &k = require_field(j, "k");
    if (!k.is_number_integer()) throw FormatError("k must be an integer");
    fam.spec.k = k.get<int>();
    fam.spec.q = integer_from_json(require_field(j, "q"));
    fam.spec.s = integer_from_json(require_field(j, "s"));
    const json &b = require_field(j, "branch");
    auto branch = b.is_string() ? parse_branch(b.get<std::string>()) : std::nullopt;
    if (!branch) throw FormatError("branch must be \"A\" or \"B\"");
    fam.spec.branch = *branch;
    fam.n = polynomial_from_json(require_field(j, "n"));
    fam.p = polynomial_from_json(require_field(j, "p"));
    fam.t = polynomial_from_json(require_field(j, "t"));
    const json &pell = require_field(j, "pell");
    fam.pell.alpha = integer_from_json(require_field(pell, "alpha"));
    fam.pell.beta = integer_from_json(require_field(pell, "beta"));
    fam.pell.m = integer_from_json(require_field(pell, "m"));
    return fam;
}

inline json to_json(const PellSolution &s) { return json{{"X", to_json(s.X)}, {"Y", to_json(s.Y)}}; }

inline json to_json(const CurveCandidate &c) {
    return json{{"k", c.family.k},
                {"q", to_json(c.family.q)},
                {"s", to_json(c.family.s)},
                {"branch", std::string(to_string(c.family.branch))},
                {"x", to_json(c.x)},
                {"p", to_json(c.p)},
                {"n", to_json(c.n)},
                {"t", to_json(c.t)},
                {"delta", to_json(c.delta)},
                {"Y", to_json(c.Y)},
                {"p_bits", bit_length(c.p)},
                {"n_bits", bit_length(c.n)}};
}

/// The fields verification needs: k, q, p, n, t, delta, Y.
inline CurveParameters parameters_from_json(const json &j) {
    CurveParameters c;
    const json &k = require_field(j, "k");
    if (k.is_number_integer()) {
        c.k = k.get<int>();
    } else {
        const mpz_class kv = integer_from_json(k);
        if (!kv.fits_sint_p()) throw FormatError("k out of range");
        c.k = static_cast<int>(kv.get_si());
    }
    c.q = integer_from_json(require_field(j, "q"));
    c.p = integer_from_json(require_field(j, "p"));
    c.n = integer_from_json(require_field(j, "n"));
    c.t = integer_from_json(require_field(j, "t"));
    c.delta = integer_from_json(require_field(j, "delta"));
    c.Y = integer_from_json(require_field(j, "Y"));
    return c;
}

inline json to_json(const VerificationReport &r) {
    json checks = json::object();
    for (const auto &c : r.checks()) {
        checks[c.name] = c.passed;
    }
    return json{{"pass", r.all_passed()}, {"failed", r.failures()}, {"checks", checks}};
}

}  // namespace mntgen

#endif  // MNTGEN_IO_HPP
