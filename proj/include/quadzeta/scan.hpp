#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "quadzeta/zeta.hpp"

namespace qz {

enum class OutputFormat { csv, jsonl, table };
std::optional<OutputFormat> format_from_name(const std::string& name);

enum class Verdict { criterion_and_h3, criterion_only, h3_only, neither, exception };
const char* verdict_name(Verdict v);

// One criterion evaluation: LHS divisor sum, RHS closed form, class-number
// oracle, and the verdict. "h3" in verdicts reads "h equals the family's
// target class number" (3 for T33/T34/T35/T42, 2 for T43).
struct ScanRecord {
    long long n = 0;
    long long r = 0;
    long long d = 0;
    long long discriminant = 0;
    Family family = Family::T33;
    std::optional<long long> p;
    Int lhs;
    Rational rhs;
    bool equal = false;
    long long h = 0;
    bool h_odd = false;
    Verdict verdict = Verdict::neither;
    std::optional<std::string> error; // captured per-record failure, if any
};

struct ScanConfig {
    Family family = Family::T33;
    long long max_d = 0;       // 0: family default
    long long max_d_prime = 0; // T33 only: separate cap for prime d (0: = max_d)
    long long max_n = 0;       // T35 only (0: default 30)
    long long max_abs_r = 0;   // T35 only (0: default 40)
    int jobs = 1;              // 0: hardware concurrency
    OutputFormat format = OutputFormat::csv;
    std::uint64_t sieve_budget = kDefaultSieveBudget;
};

// Enumerates every admissible (n, r[, p]) for the family within bounds,
// evaluates one record per tuple, and returns them sorted by (d, p, n, r).
// Deterministic for any worker count; per-record errors are captured in
// the record, never aborting the scan.
std::vector<ScanRecord> scan(const ScanConfig& cfg);

void emit(const std::vector<ScanRecord>& records, OutputFormat format, std::ostream& os);

struct Report {
    bool ok = true;
    std::vector<std::string> lines;
};

// Reruns the bounded table scans plus the point fixtures (d=257 hit,
// d=17/d=33 exceptions, the no-admissible-p gate at d=2, the h=2 list for
// even d = n^2+1). ok = false on any mismatch.
Report verify_tables();

// For squarefree d = n^2 + r = 5 mod 8 (r in {1,4}), d <= d_max with
// h(d) = 1: n must be prime (r=4) or twice a prime (r=1). Tuples whose n
// has no odd prime divisor are out of the statement's scope.
Report check_remark_4_1(long long d_max);

} // namespace qz
