// Copyright 2026 The mntgen Authors
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).
// This file may not be copied, modified, or distributed
// except according to those terms.

// Command-line front end: families, pell, search, scan, verify.
//
// stdout carries data only (JSON lines by default, --text for a readable
// form); diagnostics go to stderr. Exit codes: 0 success, 1 no results,
// 2 inadmissible parameters, 64 usage error, 65 data error.

#ifndef MNTGEN_CLI_HPP
#define MNTGEN_CLI_HPP

#include "mntgen/families.hpp"
#include "mntgen/io.hpp"
#include "mntgen/pell.hpp"
#include "mntgen/search.hpp"

#include <CLI11.hpp>
#include <gmpxx.h>

#include <fstream>
#include <iostream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <thread>

namespace mntgen::cli {

enum ExitCode : int {
    kSuccess = 0,
    kNoResults = 1,
    kInadmissible = 2,
    kUsage = 64,
    kDataError = 65,
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOptions {
    bool text = false;
    bool quiet = false;
    std::string jobs;
};

namespace detail {

inline mpz_class integer_flag(const std::string &flag, const std::string &value) {
    try {
        return parse_integer(value);
    } catch (const FormatError &) {
        throw UsageError("--" + flag + ": expected a decimal or 0x-prefixed integer, got '" + value + "'");
    }
}

inline unsigned long long bounded_flag(const std::string &flag, const std::string &value, unsigned long long lo,
                                       unsigned long long hi) {
    const mpz_class v = integer_flag(flag, value);
    if (v < 0 || !v.fits_ulong_p()) {
        throw UsageError("--" + flag + " out of range");
    }
    const unsigned long long u = v.get_ui();
    if (u < lo || u > hi) {
        throw UsageError("--" + flag + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return u;
}

inline int degree_flag(const std::string &value) {
    const auto k = bounded_flag("k", value, 0, 1000);
    if (!is_supported_degree(static_cast<int>(k))) {
        throw UsageError("--k must be 3, 4 or 6");
    }
    return static_cast<int>(k);
}

inline void select_branches(const std::string &value, bool &a, bool &b) {
    if (value == "A" || value == "a") {
        a = true;
        b = false;
    } else if (value == "B" || value == "b") {
        a = false;
        b = true;
    } else if (value == "both") {
        a = b = true;
    } else {
        throw UsageError("--branch must be A, B or both");
    }
}

inline unsigned jobs_flag(const CommonOptions &common) {
    if (common.jobs.empty()) {
        return std::max(1u, std::thread::hardware_concurrency());
    }
    return static_cast<unsigned>(bounded_flag("jobs", common.jobs, 1, 1024));
}

inline std::string family_text(const QuadraticFamily &fam) {
    return "k=" + std::to_string(fam.spec.k) + " q=" + fam.spec.q.get_str() + " s=" + fam.spec.s.get_str() +
           " branch=" + std::string(to_string(fam.spec.branch)) + " n=" + fam.n.to_string() +
           " p=" + fam.p.to_string() + " t=" + fam.t.to_string() + " X=" + fam.pell.x_polynomial().to_string() +
           " pell: X^2-3|D|Y^2=" + fam.pell.m.get_str();
}

inline std::string candidate_text(const CurveCandidate &c) {
    return "k=" + std::to_string(c.family.k) + " q=" + c.family.q.get_str() + " s=" + c.family.s.get_str() +
           " branch=" + std::string(to_string(c.family.branch)) + " x=" + c.x.get_str() + " p=" + c.p.get_str() +
           " n=" + c.n.get_str() + " t=" + c.t.get_str() + " delta=" + c.delta.get_str() + " Y=" + c.Y.get_str() +
           " p_bits=" + std::to_string(bit_length(c.p)) + " n_bits=" + std::to_string(bit_length(c.n));
}

}  // namespace detail

inline int cmd_families(int k, const mpz_class &q, const CommonOptions &common, std::ostream &out,
                        std::ostream &err) {
    if (q < 1) {
        throw UsageError("--q must be positive");
    }
    if (!admissible_cofactor(k, q)) {
        err << "families: q=" << q.get_str() << " is not an admissible cofactor for k=" << k << "\n";
        return kInadmissible;
    }
    const auto fams = families_for(k, q);
    for (const auto &fam : fams) {
        if (common.text) {
            out << detail::family_text(fam) << "\n";
        } else {
            out << to_json(fam).dump() << "\n";
        }
        if (!common.quiet) {
            for (const auto &w : erratum_warnings(fam)) {
                err << "warning: " << w << "\n";
            }
        }
    }
    return fams.empty() ? kNoResults : kSuccess;
}

inline int cmd_pell(const mpz_class &D, const mpz_class &m, unsigned bits, const CommonOptions &common,
                    std::ostream &out) {
    if (D <= 0) throw UsageError("--d must be positive");
    if (m == 0) throw UsageError("--m must be nonzero");
    for (const auto &s : iterate_solutions(PellInstance{D, m}, bits)) {
        if (common.text) {
            out << "X=" << s.X.get_str() << " Y=" << s.Y.get_str() << "\n";
        } else {
            out << to_json(s).dump() << "\n";
        }
    }
    return kSuccess;
}

inline int cmd_search(SearchConfig cfg, const CommonOptions &common, std::ostream &out, std::ostream &err) {
    if (!admissible_cofactor(cfg.k, cfg.q)) {
        err << "search: q=" << cfg.q.get_str() << " is not an admissible cofactor for k=" << cfg.k << "\n";
        return kInadmissible;
    }
    if (!common.quiet) {
        cfg.diagnostics = [&err](const std::string &msg) { err << msg << "\n"; };
    }
    std::vector<CurveCandidate> hits;
    try {
        hits = run_search(cfg);
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    for (const auto &c : hits) {
        if (common.text) {
            out << detail::candidate_text(c) << "\n";
        } else {
            out << to_json(c).dump() << "\n";
        }
    }
    out.flush();
    return hits.empty() ? kNoResults : kSuccess;
}

/// Re-verifies JSON-line candidate records. Exit 0 iff at least one record
/// was read and every record passes.
inline int cmd_verify(std::istream &in, const CommonOptions &common, std::ostream &out, std::ostream &err) {
    std::string line;
    std::size_t lineno = 0, records = 0;
    bool all_pass = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        VerificationReport report;
        try {
            const json j = json::parse(line);
            const CurveParameters params = parameters_from_json(j);
            report = verify_candidate(params);
            for (const char *field : {"p_bits", "n_bits"}) {
                auto it = j.find(field);
                if (it == j.end()) continue;
                const mpz_class &v = field[0] == 'p' ? params.p : params.n;
                const bool ok = it->is_number_unsigned() && it->get<unsigned long long>() == bit_length(v);
                report.add(field, ok, "recorded bit length disagrees");
            }
        } catch (const json::parse_error &e) {
            err << "verify: line " << lineno << ": malformed JSON: " << e.what() << "\n";
            return kDataError;
        } catch (const FormatError &e) {
            err << "verify: line " << lineno << ": " << e.what() << "\n";
            return kDataError;
        } catch (const json::exception &e) {
            err << "verify: line " << lineno << ": " << e.what() << "\n";
            return kDataError;
        }
        ++records;
        all_pass = all_pass && report.all_passed();
        if (common.text) {
            out << "line " << lineno << ": " << (report.all_passed() ? "pass" : "FAIL");
            for (const auto &f : report.failures()) out << " " << f;
            out << "\n";
        } else {
            json j = to_json(report);
            j["line"] = lineno;
            out << j.dump() << "\n";
        }
    }
    if (records == 0) {
        if (!common.quiet) err << "verify: no records\n";
        return kNoResults;
    }
    return all_pass ? kSuccess : kNoResults;
}

inline int run(int argc, const char *const *argv, std::istream &in, std::ostream &out, std::ostream &err) {
    CLI::App app{"Generalized MNT curve parameter toolkit", "mntgen"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonOptions common;
    app.add_flag("--text", common.text, "Readable text output instead of JSON lines");
    app.add_flag_callback("--json", [&common] { common.text = false; }, "JSON-lines output (default)");
    app.add_flag("--quiet", common.quiet, "Suppress diagnostics on stderr");
    app.add_option("--jobs", common.jobs, "Worker threads (default: number of processors)");

    // families
    std::string fam_k, fam_q = "1";
    auto *families = app.add_subcommand("families", "List the families for (k, q)");
    families->add_option("--k", fam_k, "Embedding degree 3, 4 or 6")->required();
    families->add_option("--q", fam_q, "Cofactor: 1 or an admissible prime");

    // pell
    std::string pell_d, pell_m, pell_bits = "64";
    auto *pell = app.add_subcommand("pell", "Solve X^2 - D*Y^2 = m");
    pell->add_option("--d", pell_d, "D > 0")->required();
    pell->add_option("--m", pell_m, "m != 0")->required();
    pell->add_option("--bits", pell_bits, "List solutions with |X| < 2^bits");

    // search / scan share the family selection and output filters
    struct SearchFlags {
        std::string k, q = "1", branch = "both", dmin = "1", dmax, pbits_min = "0", pbits_max, xbits, max_hits = "0";
        std::string xmin = "-10000", xmax = "10000", trial_bound = "1000000";
    } sf;
    auto add_common_search = [&sf](CLI::App *sub) {
        sub->add_option("--k", sf.k, "Embedding degree 3, 4 or 6")->required();
        sub->add_option("--q", sf.q, "Cofactor: 1 or an admissible prime");
        sub->add_option("--branch", sf.branch, "A, B or both");
        sub->add_option("--dmin", sf.dmin, "Smallest |Delta|");
        sub->add_option("--dmax", sf.dmax, "Largest |Delta|");
        sub->add_option("--pbits-min", sf.pbits_min, "Smallest accepted bit length of p");
        sub->add_option("--pbits-max", sf.pbits_max, "Largest accepted bit length of p");
        sub->add_option("--max-hits", sf.max_hits, "Stop after this many candidates (0: no limit)");
    };
    auto *search = app.add_subcommand("search", "Pell-driven search over square-free |Delta|");
    add_common_search(search);
    search->add_option("--xbits", sf.xbits, "Bound on |X| during Pell iteration, in bits");
    auto *scan = app.add_subcommand("scan", "Direct scan over x");
    add_common_search(scan);
    scan->add_option("--xmin", sf.xmin, "First x");
    scan->add_option("--xmax", sf.xmax, "Last x");
    scan->add_option("--trial-bound", sf.trial_bound, "Trial-division bound for splitting 4p - t^2");

    // verify
    std::string verify_path;
    auto *verify = app.add_subcommand("verify", "Re-verify candidate JSON lines");
    verify->add_option("path", verify_path, "Input file (default: stdin)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kSuccess;
        }
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsage;
    }

    try {
        if (families->parsed()) {
            return cmd_families(detail::degree_flag(fam_k), detail::integer_flag("q", fam_q), common, out, err);
        }
        if (pell->parsed()) {
            const auto bits = static_cast<unsigned>(detail::bounded_flag("bits", pell_bits, 1, 1u << 16));
            return cmd_pell(detail::integer_flag("d", pell_d), detail::integer_flag("m", pell_m), bits, common,
                            out);
        }
        if (search->parsed() || scan->parsed()) {
            const bool scanning = scan->parsed();
            SearchConfig cfg;
            cfg.mode = scanning ? SearchMode::DirectScan : SearchMode::PellDriven;
            cfg.k = detail::degree_flag(sf.k);
            cfg.q = detail::integer_flag("q", sf.q);
            if (cfg.q < 1) throw UsageError("--q must be positive");
            detail::select_branches(sf.branch, cfg.branch_a, cfg.branch_b);
            const unsigned long long dmax_cap = 1ULL << 60;
            cfg.delta_min = detail::bounded_flag("dmin", sf.dmin, 1, dmax_cap);
            const std::string dmax_default = scanning ? "10000000000" : "10000";
            cfg.delta_max = detail::bounded_flag("dmax", sf.dmax.empty() ? dmax_default : sf.dmax, 1, dmax_cap);
            if (cfg.delta_max < cfg.delta_min) throw UsageError("--dmax must not be below --dmin");
            cfg.p_bits.min_bits = static_cast<unsigned>(detail::bounded_flag("pbits-min", sf.pbits_min, 0, 1u << 20));
            if (!sf.pbits_max.empty()) {
                cfg.p_bits.max_bits =
                    static_cast<unsigned>(detail::bounded_flag("pbits-max", sf.pbits_max, 1, 1u << 20));
                if (cfg.p_bits.max_bits < cfg.p_bits.min_bits) throw UsageError("--pbits-max below --pbits-min");
            }
            if (!sf.xbits.empty()) {
                cfg.x_bits_max = static_cast<unsigned>(detail::bounded_flag("xbits", sf.xbits, 1, 1u << 20));
            } else if (!sf.pbits_max.empty()) {
                // |X| is at most about sqrt(9p)
                cfg.x_bits_max = cfg.p_bits.max_bits / 2 + 4;
            }
            cfg.max_hits = detail::bounded_flag("max-hits", sf.max_hits, 0, std::numeric_limits<std::uint32_t>::max());
            cfg.x_min = detail::integer_flag("xmin", sf.xmin);
            cfg.x_max = detail::integer_flag("xmax", sf.xmax);
            if (cfg.x_max < cfg.x_min) throw UsageError("--xmax must not be below --xmin");
            cfg.trial_bound = detail::integer_flag("trial-bound", sf.trial_bound);
            if (cfg.trial_bound < 1) throw UsageError("--trial-bound must be positive");
            cfg.jobs = detail::jobs_flag(common);
            return cmd_search(std::move(cfg), common, out, err);
        }
        if (verify->parsed()) {
            if (verify_path.empty() || verify_path == "-") {
                return cmd_verify(in, common, out, err);
            }
            std::ifstream file(verify_path);
            if (!file) {
                err << "verify: cannot open " << verify_path << "\n";
                return kDataError;
            }
            return cmd_verify(file, common, out, err);
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    err << app.help();
    return kUsage;
}

}  // namespace mntgen::cli

#endif  // MNTGEN_CLI_HPP
