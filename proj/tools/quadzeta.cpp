#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "quadzeta/classnumber.hpp"
#include "quadzeta/dedekind.hpp"
#include "quadzeta/scan.hpp"
#include "quadzeta/zeta.hpp"

namespace {

using namespace qz;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

RdField field_for(long long n, long long r) { return classify_rd(n, r); }

int run(int argc, char** argv) {
    CLI::App app{"Exact special values of Dedekind zeta functions for real quadratic fields\n"
                 "of Richaud-Degert type (d = n^2 + r, r | 4n), class numbers via reduced\n"
                 "form cycles, and range scans for the class-number-2/3 criteria.\n"
                 "All output is exact: integers or num/den pairs, never floating point."};
    app.require_subcommand(1);

    // zeta --d <d>
    long long zeta_d = 0;
    auto* sub_zeta = app.add_subcommand("zeta", "zeta_k(-1) for Q(sqrt(d)) by the divisor-sum formula");
    sub_zeta->add_option("--d", zeta_d, "squarefree radicand d >= 2")->required();

    // partial-zeta --n --r [--p] --class {principal|over2|overp}
    long long pz_n = 0, pz_r = 0, pz_p = 0;
    std::string pz_class;
    auto* sub_pz = app.add_subcommand("partial-zeta",
                                      "closed-form zeta_k(-1, A) for an ideal class of an R-D field");
    sub_pz->add_option("--n", pz_n, "n with d = n^2 + r")->required();
    sub_pz->add_option("--r", pz_r, "r with r | 4n, -n < r <= n")->required();
    sub_pz->add_option("--p", pz_p, "odd prime p | n (class overp only)");
    sub_pz->add_option("--class", pz_class, "principal | over2 | overp")->required();

    // rhs --family <tag> --n --r [--p]
    std::string rhs_family;
    long long rhs_n = 0, rhs_r = 0, rhs_p = 0;
    auto* sub_rhs = app.add_subcommand("rhs", "criterion right-hand side for a family");
    sub_rhs->add_option("--family", rhs_family, "T33 | T34 | T35 | T42 | T43")->required();
    sub_rhs->add_option("--n", rhs_n, "n")->required();
    sub_rhs->add_option("--r", rhs_r, "r (defaults to the family's fixed r)");
    sub_rhs->add_option("--p", rhs_p, "odd prime p | n (families T34/T42/T43)");

    // class-number --d <d> [--narrow]
    long long cn_d = 0;
    bool cn_narrow = false;
    auto* sub_cn = app.add_subcommand("class-number", "h(d) by reduced-form cycles");
    sub_cn->add_option("--d", cn_d, "squarefree radicand d >= 2")->required();
    sub_cn->add_flag("--narrow", cn_narrow, "report the narrow class number h+ instead");

    // dedekind --index {2|3} --h <h> --k <k> [--raw]
    int dk_index = 0;
    long long dk_h = 0, dk_k = 0;
    bool dk_raw = false;
    auto* sub_dk = app.add_subcommand("dedekind", "generalized Dedekind sum S^i(h, k)");
    sub_dk->set_help_flag("--help", "print help"); // frees -h/--h for the sum's argument
    sub_dk->add_option("--index", dk_index, "2 or 3")->required()->check(CLI::IsMember({2, 3}));
    sub_dk->add_option("--h", dk_h, "h (reduced mod k)")->required();
    sub_dk->add_option("--k", dk_k, "k >= 1")->required();
    sub_dk->add_flag("--raw", dk_raw, "evaluate the defining sum directly (index 3 only)");

    // scan --family <tag> [--max-d N] [--max-n N] [--max-abs-r N] [--jobs J] [--format F]
    ScanConfig cfg;
    std::string scan_family, scan_format = "csv";
    long long scan_max_d = 0, scan_max_d_prime = 0, scan_max_n = 0, scan_max_abs_r = 0;
    int scan_jobs = 1;
    std::uint64_t scan_budget = kDefaultSieveBudget;
    auto* sub_scan = app.add_subcommand("scan", "evaluate a criterion family over a range");
    sub_scan->add_option("--family", scan_family, "T33 | T34 | T35 | T42 | T43")->required();
    sub_scan->add_option("--max-d", scan_max_d, "radicand bound (default 10^4)");
    sub_scan->add_option("--max-d-prime", scan_max_d_prime,
                         "T33: separate radicand bound for prime d (default --max-d)");
    sub_scan->add_option("--max-n", scan_max_n, "T35: bound on n (default 30)");
    sub_scan->add_option("--max-abs-r", scan_max_abs_r, "T35: bound on |r| (default 40)");
    sub_scan->add_option("--jobs", scan_jobs, "worker threads (0 = hardware)");
    sub_scan->add_option("--format", scan_format, "csv | jsonl | table");
    sub_scan->add_option("--sieve-budget", scan_budget, "max sigma-sieve entries");

    // verify-tables
    auto* sub_vt = app.add_subcommand("verify-tables", "rerun the built-in fixture suite");

    // check-remark41 --max-d N
    long long rk_max_d = 0;
    auto* sub_rk = app.add_subcommand("check-remark41",
                                      "for h(d)=1 fields d = n^2+{1,4} = 5 mod 8: n is prime or twice a prime");
    sub_rk->add_option("--max-d", rk_max_d, "radicand bound")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help / --version
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*sub_zeta) {
            if (zeta_d < 2) {
                std::cerr << "error: d must be >= 2\n";
                return kExitUsage;
            }
            if (!is_squarefree(make_int(zeta_d))) {
                std::cerr << "error: d = " << zeta_d << " is not squarefree\n";
                return kExitUsage;
            }
            Int D = make_int(zeta_d % 4 == 1 ? zeta_d : 4 * zeta_d);
            std::cout << zagier_zeta(D).str() << "\n";
            return kExitOk;
        }
        if (*sub_pz) {
            RdField f = field_for(pz_n, pz_r);
            Rational v;
            if (pz_class == "principal") {
                v = principal_zeta_closed(f);
            } else if (pz_class == "over2") {
                v = nonprincipal_zeta_over2(f);
            } else if (pz_class == "overp") {
                if (pz_p == 0) {
                    std::cerr << "error: --class overp requires --p\n";
                    return kExitUsage;
                }
                v = split_prime_zeta(f, pz_p);
            } else {
                std::cerr << "error: unknown class '" << pz_class << "'\n";
                return kExitUsage;
            }
            std::cout << v.str() << "\n";
            return kExitOk;
        }
        if (*sub_rhs) {
            auto fam = family_from_name(rhs_family);
            if (!fam) {
                std::cerr << "error: unknown family '" << rhs_family << "'\n";
                return kExitUsage;
            }
            if (rhs_r == 0 && (*fam == Family::T33 || *fam == Family::T34)) rhs_r = 1;
            CriterionFamily c{*fam, rhs_n, rhs_r,
                              rhs_p ? std::optional<long long>(rhs_p) : std::nullopt};
            std::cout << criterion_rhs(c).str() << "\n";
            return kExitOk;
        }
        if (*sub_cn) {
            if (cn_narrow) {
                long long D = cn_d % 4 == 1 ? cn_d : 4 * cn_d;
                std::cout << narrow_class_number(D) << "\n";
            } else {
                std::cout << class_number(cn_d) << "\n";
            }
            return kExitOk;
        }
        if (*sub_dk) {
            if (dk_raw) {
                if (dk_index != 3) {
                    std::cerr << "error: --raw is only defined for index 3; the index-2 sum is\n"
                                 "normalized by the closed forms and has no raw counterpart here\n";
                    return kExitUsage;
                }
                std::cout << apostol_s3_raw(make_int(dk_h), make_int(dk_k)).str() << "\n";
            } else {
                std::cout << dedekind_sum_closed({dk_index, make_int(dk_h), make_int(dk_k)}).str() << "\n";
            }
            return kExitOk;
        }
        if (*sub_scan) {
            auto fam = family_from_name(scan_family);
            if (!fam) {
                std::cerr << "error: unknown family '" << scan_family << "'\n";
                return kExitUsage;
            }
            auto fmt = format_from_name(scan_format);
            if (!fmt) {
                std::cerr << "error: unknown format '" << scan_format << "'\n";
                return kExitUsage;
            }
            cfg.family = *fam;
            cfg.max_d = scan_max_d;
            cfg.max_d_prime = scan_max_d_prime;
            cfg.max_n = scan_max_n;
            cfg.max_abs_r = scan_max_abs_r;
            cfg.jobs = scan_jobs;
            cfg.format = *fmt;
            cfg.sieve_budget = scan_budget;
            auto records = scan(cfg);
            emit(records, cfg.format, std::cout);
            for (const auto& r : records)
                if (r.error)
                    std::cerr << "warning: record (n=" << r.n << ", r=" << r.r << ", d=" << r.d
                              << "): " << *r.error << "\n";
            if (!std::cout) {
                std::cerr << "error: output sink failure\n";
                return kExitMismatch;
            }
            return kExitOk;
        }
        if (*sub_vt) {
            Report rep = verify_tables();
            for (const auto& line : rep.lines) std::cout << line << "\n";
            std::cout << (rep.ok ? "all fixtures pass" : "FIXTURE MISMATCH") << "\n";
            return rep.ok ? kExitOk : kExitMismatch;
        }
        if (*sub_rk) {
            Report rep = check_remark_4_1(rk_max_d);
            for (const auto& line : rep.lines) std::cout << line << "\n";
            return rep.ok ? kExitOk : kExitMismatch;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) { return run(argc, argv); }
