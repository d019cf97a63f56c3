#include "quadzeta/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "quadzeta/classnumber.hpp"

namespace qz {

namespace {

struct Tuple {
    long long n, r, d;
    std::optional<long long> p;
};

long long default_max_d(Family f) {
    switch (f) {
        case Family::T33: return 10'000;
        case Family::T34: return 10'000;
        case Family::T35: return 0; // derived from max_n / max_abs_r
        case Family::T42: return 10'000;
        case Family::T43: return 10'000;
    }
    return 10'000;
}

bool squarefree_ll(long long d) { return is_squarefree(make_int(d)); }

std::vector<long long> odd_prime_divisors_ll(long long n) {
    std::vector<long long> out;
    for (const auto& p : odd_prime_divisors(make_int(n))) out.push_back(p.get_si());
    return out;
}

std::vector<Tuple> enumerate_tuples(const ScanConfig& cfg) {
    std::vector<Tuple> tuples;
    long long max_d = cfg.max_d > 0 ? cfg.max_d : default_max_d(cfg.family);

    switch (cfg.family) {
        case Family::T33: {
            long long cap = std::max(max_d, cfg.max_d_prime > 0 ? cfg.max_d_prime : max_d);
            for (long long n = 4; n * n + 1 <= cap; n += 4) {
                long long d = n * n + 1;
                bool in_range = d <= max_d;
                if (!in_range && cfg.max_d_prime > 0 && d <= cfg.max_d_prime)
                    in_range = is_prime(make_int(d));
                if (!in_range) continue;
                if (!squarefree_ll(d)) continue;
                tuples.push_back({n, 1, d, std::nullopt});
            }
            break;
        }
        case Family::T34: {
            for (long long n = 1; n * n + 1 <= max_d; n += 2) {
                long long d = n * n + 1;
                if (!squarefree_ll(d)) continue;
                for (long long p : odd_prime_divisors_ll(n))
                    tuples.push_back({n, 1, d, p});
            }
            break;
        }
        case Family::T35: {
            long long max_n = cfg.max_n > 0 ? cfg.max_n : 30;
            long long max_abs_r = cfg.max_abs_r > 0 ? cfg.max_abs_r : 40;
            long long cap = cfg.max_d > 0 ? cfg.max_d : max_n * max_n + max_abs_r;
            for (long long n = 2; n <= max_n; ++n) {
                for (long long r = -std::min(max_abs_r, n - 1); r <= std::min(max_abs_r, n); ++r) {
                    if (r == 0 || std::llabs(r) == 1 || std::llabs(r) == 4) continue;
                    if ((4 * n) % r != 0) continue;
                    long long d = n * n + r;
                    if (d < 2 || d > cap || d % 8 != 1) continue;
                    if (!squarefree_ll(d)) continue;
                    tuples.push_back({n, r, d, std::nullopt});
                }
            }
            break;
        }
        case Family::T42:
        case Family::T43: {
            for (long long r : {1ll, 4ll}) {
                for (long long n = 1; n * n + r <= max_d; ++n) {
                    long long d = n * n + r;
                    if (d % 8 != 5) continue;
                    if (!squarefree_ll(d)) continue;
                    for (long long p : odd_prime_divisors_ll(n)) {
                        if (r == 4 && n == p) continue;
                        if (r == 1 && n == 2 * p) continue;
                        tuples.push_back({n, r, d, p});
                    }
                }
            }
            break;
        }
    }

    std::sort(tuples.begin(), tuples.end(), [](const Tuple& a, const Tuple& b) {
        return std::tuple(a.d, a.p.value_or(0), a.n, a.r) <
               std::tuple(b.d, b.p.value_or(0), b.n, b.r);
    });
    return tuples;
}

// The named exceptional radicand of a family's converse, if any.
bool is_family_exception(Family f, long long d) {
    return (f == Family::T33 && d == 17) || (f == Family::T35 && d == 33);
}

ScanRecord evaluate_tuple(Family family, const Tuple& t,
                          std::span<const std::uint64_t> sigma_table) {
    ScanRecord rec;
    rec.n = t.n;
    rec.r = t.r;
    rec.d = t.d;
    rec.discriminant = t.d % 4 == 1 ? t.d : 4 * t.d;
    rec.family = family;
    rec.p = t.p;
    try {
        CriterionFamily c{family, t.n, t.r, t.p};
        CriterionResult res = criterion_holds(c, sigma_table);
        rec.lhs = res.lhs;
        rec.rhs = res.rhs;
        rec.equal = res.equal;
        rec.h = class_number(t.d);
        rec.h_odd = rec.h % 2 != 0;
        bool target = rec.h == family_target_h(family);
        if (is_family_exception(family, t.d))
            rec.verdict = Verdict::exception;
        else if (rec.equal && target)
            rec.verdict = Verdict::criterion_and_h3;
        else if (rec.equal)
            rec.verdict = Verdict::criterion_only;
        else if (target)
            rec.verdict = Verdict::h3_only;
        else
            rec.verdict = Verdict::neither;
    } catch (const std::exception& e) {
        rec.error = e.what();
        rec.verdict = Verdict::neither;
    }
    return rec;
}

} // namespace

std::optional<OutputFormat> format_from_name(const std::string& name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "jsonl") return OutputFormat::jsonl;
    if (name == "table") return OutputFormat::table;
    return std::nullopt;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::criterion_and_h3: return "criterion-and-h3";
        case Verdict::criterion_only: return "criterion-only";
        case Verdict::h3_only: return "h3-only";
        case Verdict::neither: return "neither";
        case Verdict::exception: return "exception";
    }
    return "?";
}

std::vector<ScanRecord> scan(const ScanConfig& cfg) {
    if (cfg.max_d < 0 || cfg.max_n < 0 || cfg.max_abs_r < 0 || cfg.jobs < 0)
        fail(Errc::invalid_argument, "scan: bounds must be positive");
    if (cfg.max_d > 0 && cfg.max_d < 5)
        fail(Errc::invalid_argument, "scan: d bound must be >= 5");

    std::vector<Tuple> tuples = enumerate_tuples(cfg);
    std::vector<ScanRecord> records(tuples.size());
    if (tuples.empty()) return records;

    // One shared read-only sigma table covering every needed argument
    // (<= D/4), capped by the budget; larger arguments fall back to
    // pointwise sigma inside zagier_sum.
    std::uint64_t need = 0;
    for (const Tuple& t : tuples) {
        std::uint64_t D = static_cast<std::uint64_t>(t.d % 4 == 1 ? t.d : 4 * t.d);
        need = std::max(need, D / 4);
    }
    std::vector<std::uint64_t> sigma_table;
    if (need + 1 <= cfg.sieve_budget)
        sigma_table = sigma_sieve(std::max<std::uint64_t>(need, 1), cfg.sieve_budget);

    unsigned jobs = cfg.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                  : static_cast<unsigned>(cfg.jobs);
    jobs = std::min<unsigned>(jobs, tuples.size());

    if (jobs <= 1) {
        for (std::size_t i = 0; i < tuples.size(); ++i)
            records[i] = evaluate_tuple(cfg.family, tuples[i], sigma_table);
        return records;
    }

    // Contiguous chunks off an atomic cursor; slot i of the output is owned
    // by tuple i, so the merge order never depends on scheduling.
    std::atomic<std::size_t> next{0};
    constexpr std::size_t chunk = 8;
    auto worker = [&] {
        for (;;) {
            std::size_t lo = next.fetch_add(chunk);
            if (lo >= tuples.size()) return;
            std::size_t hi = std::min(lo + chunk, tuples.size());
            for (std::size_t i = lo; i < hi; ++i)
                records[i] = evaluate_tuple(cfg.family, tuples[i], sigma_table);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return records;
}

namespace {

void emit_csv(const std::vector<ScanRecord>& records, std::ostream& os) {
    os << "n,r,d,D,family,p,lhs,rhs_num,rhs_den,equal,h,verdict\n";
    for (const ScanRecord& r : records) {
        os << r.n << ',' << r.r << ',' << r.d << ',' << r.discriminant << ','
           << family_name(r.family) << ',';
        if (r.p) os << *r.p;
        os << ',' << r.lhs.get_str() << ',' << r.rhs.num().get_str() << ','
           << r.rhs.den().get_str() << ',' << (r.equal ? "true" : "false") << ',' << r.h << ','
           << verdict_name(r.verdict) << '\n';
    }
}

void emit_jsonl(const std::vector<ScanRecord>& records, std::ostream& os) {
    for (const ScanRecord& r : records) {
        nlohmann::json j;
        j["n"] = r.n;
        j["r"] = r.r;
        j["d"] = r.d;
        j["D"] = r.discriminant;
        j["family"] = family_name(r.family);
        if (r.p)
            j["p"] = *r.p;
        else
            j["p"] = nullptr;
        j["lhs"] = r.lhs.get_str();
        j["rhs_num"] = r.rhs.num().get_str();
        j["rhs_den"] = r.rhs.den().get_str();
        j["equal"] = r.equal;
        j["h"] = r.h;
        j["verdict"] = verdict_name(r.verdict);
        if (r.error) j["error"] = *r.error;
        os << j.dump() << '\n';
    }
}

void emit_table(const std::vector<ScanRecord>& records, std::ostream& os) {
    os << std::left << std::setw(6) << "n" << std::setw(6) << "r" << std::setw(10) << "d"
       << std::setw(5) << "p" << std::setw(6) << "h(d)" << std::setw(14) << "lhs"
       << std::setw(18) << "rhs" << "verdict\n";
    for (const ScanRecord& r : records) {
        os << std::left << std::setw(6) << r.n << std::setw(6) << r.r << std::setw(10) << r.d
           << std::setw(5) << (r.p ? std::to_string(*r.p) : "") << std::setw(6) << r.h
           << std::setw(14) << r.lhs.get_str() << std::setw(18) << r.rhs.str()
           << verdict_name(r.verdict) << '\n';
    }
}

} // namespace

void emit(const std::vector<ScanRecord>& records, OutputFormat format, std::ostream& os) {
    switch (format) {
        case OutputFormat::csv: emit_csv(records, os); break;
        case OutputFormat::jsonl: emit_jsonl(records, os); break;
        case OutputFormat::table: emit_table(records, os); break;
    }
}

namespace {

struct Checker {
    Report report;

    void check(bool ok, const std::string& name, const std::string& detail) {
        report.ok = report.ok && ok;
        report.lines.push_back(std::string(ok ? "PASS" : "FAIL") + " " + name +
                               (detail.empty() ? "" : ": " + detail));
    }
};

std::vector<const ScanRecord*> hits(const std::vector<ScanRecord>& recs) {
    std::vector<const ScanRecord*> out;
    for (const auto& r : recs)
        if (r.verdict == Verdict::criterion_and_h3) out.push_back(&r);
    return out;
}

} // namespace

Report verify_tables() {
    Checker ck;

    { // wide-type table: criterion-and-h3 exactly at d = 321 and 473
        ScanConfig cfg;
        cfg.family = Family::T35;
        cfg.max_n = 30;
        cfg.max_abs_r = 40;
        auto recs = scan(cfg);
        auto h = hits(recs);
        bool ok = h.size() == 2 && h[0]->d == 321 && h[0]->n == 18 && h[0]->r == -3 &&
                  h[1]->d == 473 && h[1]->n == 22 && h[1]->r == -11 &&
                  h[0]->lhs == 1980 && h[0]->rhs == Rational(1980) && h[0]->h == 3 &&
                  h[1]->equal && h[1]->h == 3;
        std::ostringstream det;
        det << h.size() << " hits";
        for (auto* r : h) det << " (" << r->n << "," << r->r << "," << r->d << ")";
        ck.check(ok, "table-wide-h3", det.str());
    }

    { // split-prime h=3 table, d <= 3000
        ScanConfig cfg;
        cfg.family = Family::T42;
        cfg.max_d = 3000;
        auto recs = scan(cfg);
        auto h = hits(recs);
        using Row = std::tuple<long long, long long, long long, long long>;
        std::vector<Row> got, want = {{15, 4, 229, 3}, {15, 4, 229, 5}, {27, 4, 733, 3},
                                      {35, 4, 1229, 5}, {35, 4, 1229, 7}, {54, 1, 2917, 3}};
        for (auto* r : h) got.emplace_back(r->n, r->r, r->d, r->p.value_or(0));
        bool ok = got == want;
        const ScanRecord* r2917 = nullptr;
        for (auto* r : h)
            if (r->d == 2917) r2917 = r;
        ok = ok && r2917 && r2917->lhs == 33030 && r2917->rhs == Rational(33030);
        for (auto* r : h) ok = ok && r->h == 3 && r->equal;
        ck.check(ok, "table-split-prime-h3", std::to_string(h.size()) + " hits");
    }

    { // split-prime h=2 table, d <= 10^4, plus the full biconditional
        ScanConfig cfg;
        cfg.family = Family::T43;
        cfg.max_d = 10'000;
        auto recs = scan(cfg);
        auto h = hits(recs);
        bool ok = h.size() == 2 && h[0]->n == 9 && h[0]->r == 4 && h[0]->d == 85 &&
                  h[0]->p == 3 && h[0]->h == 2 && h[0]->lhs == 180 &&
                  h[0]->rhs == Rational(180) && h[1]->n == 25 && h[1]->r == 4 &&
                  h[1]->d == 629 && h[1]->p == 5 && h[1]->h == 2;
        bool bicond = true;
        for (const auto& r : recs) bicond = bicond && (r.equal == (r.h == 2));
        ck.check(ok, "table-split-prime-h2", std::to_string(h.size()) + " hits");
        ck.check(bicond, "split-prime-h2-biconditional", "over all admissible tuples, d <= 10^4");
    }

    { // the d = 257 hit
        CriterionFamily c{Family::T33, 16, 1, std::nullopt};
        auto res = criterion_holds(c);
        long long h = class_number(257);
        ck.check(res.lhs == 1200 && res.rhs == Rational(1200) && res.equal && h == 3,
                 "d=257", "lhs=" + res.lhs.get_str() + " rhs=" + res.rhs.str() +
                              " h=" + std::to_string(h));
    }

    { // exceptional coincidences of the principal and over-2 values
        RdField f17 = classify_rd(4, 1);
        RdField f33 = classify_rd(6, -3);
        bool ok17 = principal_zeta_closed(f17) == Rational(1, 3) &&
                    nonprincipal_zeta_over2(f17) == Rational(1, 3) && class_number(17) == 1;
        bool ok33 = principal_zeta_closed(f33) == Rational(1) &&
                    nonprincipal_zeta_over2(f33) == Rational(1) && class_number(33) == 1;
        ck.check(ok17, "exception-d=17", "principal = over-2 = 1/3, h = 1");
        ck.check(ok33, "exception-d=33", "principal = over-2 = 1, h = 1");
    }

    { // d = 2 is gated out: n = 1 has no admissible odd prime
        ScanConfig cfg;
        cfg.family = Family::T34;
        cfg.max_d = 5;
        auto recs = scan(cfg);
        ck.check(recs.empty(), "d=2-no-admissible-p",
                 std::to_string(recs.size()) + " records for d <= 5");
    }

    { // even d = n^2 + 1 <= 10^5 with h = 2: exactly {10, 26, 122, 362}
        std::vector<long long> got;
        for (long long n = 1; n * n + 1 <= 100'000; n += 2) {
            long long d = n * n + 1;
            if (!squarefree_ll(d)) continue;
            if (class_number(d) == 2) got.push_back(d);
        }
        std::vector<long long> want = {10, 26, 122, 362};
        std::ostringstream det;
        for (long long d : got) det << d << " ";
        ck.check(got == want, "even-n2+1-h2-list", det.str());
    }

    return ck.report;
}

Report check_remark_4_1(long long d_max) {
    if (d_max < 5) fail(Errc::invalid_argument, "check_remark_4_1: d_max must be >= 5");
    Checker ck;
    long long h1 = 0, out_of_scope = 0, not_triggered = 0;
    bool all_ok = true;
    for (long long r : {1ll, 4ll}) {
        for (long long n = 1; n * n + r <= d_max; ++n) {
            long long d = n * n + r;
            if (d % 8 != 5 || !squarefree_ll(d)) continue;
            if (odd_prime_divisors_ll(n).empty()) {
                ++out_of_scope; // no odd prime divides n: the statement never applies
                continue;
            }
            if (class_number(d) != 1) {
                ++not_triggered;
                continue;
            }
            ++h1;
            bool ok = r == 4 ? is_prime(make_int(n)) : (n % 2 == 0 && is_prime(make_int(n / 2)));
            if (!ok) {
                all_ok = false;
                ck.check(false, "remark-4.1",
                         "violation at d=" + std::to_string(d) + " (n=" + std::to_string(n) +
                             ", r=" + std::to_string(r) + ")");
            }
        }
    }
    ck.check(all_ok, "remark-4.1",
             "d <= " + std::to_string(d_max) + ": " + std::to_string(h1) + " fields with h=1 (n prime or 2*prime), " +
                 std::to_string(not_triggered) + " with h>1, " + std::to_string(out_of_scope) +
                 " out of scope");
    return ck.report;
}

} // namespace qz
