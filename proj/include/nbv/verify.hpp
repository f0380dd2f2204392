#pragma once

#include "nbv/combin.hpp"

#include <json.hpp>

#include <cstdint>
#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace nbv {

enum class Verdict { pass, fail, skipped };
std::string to_string(Verdict v);

struct ReportEntry {
    std::string check;
    nlohmann::json point;  // grid point, including the job seed
    Verdict verdict = Verdict::pass;
    // on fail: both exact values and their difference
    nlohmann::json lhs, rhs, diff;
    std::string reason;  // skip reason or failure note
};

nlohmann::json to_json(const ReportEntry& e);
nlohmann::json to_json(const Vec& v);
nlohmann::json to_json(const Operator& op);

enum class Scale { small, full };
Scale scale_from_string(const std::string& s);

struct SuiteOptions {
    std::uint64_t seed = 1;
    Scale scale = Scale::small;
    unsigned workers = 0;  // 0: NBV_MAX_WORKERS or the hardware count
};

// Worker count from NBV_MAX_WORKERS, falling back to the hardware count.
unsigned default_workers();

// Runs jobs on up to `workers` threads; results come back in job order.
template <class T>
std::vector<T> run_parallel(const std::vector<std::function<T()>>& jobs, unsigned workers);

// Deterministic per-job generator from the suite seed and a job key.
std::mt19937_64 job_rng(std::uint64_t seed, const std::string& key);
std::uint64_t job_seed(std::uint64_t seed, const std::string& key);

// Small-height rational in [-13, 13] / [1, 13].
Scalar small_rational(std::mt19937_64& g, long h = 13);
Scalar small_nonzero(std::mt19937_64& g, long h = 13);

// Random t accepted by preflight; nullopt after `attempts` rejections.
std::optional<VarCollection> sample_point(std::mt19937_64& g, const Flavor& f, const Rep* rep,
                                          const Composition& xi, int attempts = 200);

struct Job {
    std::string check;
    nlohmann::json point;
    std::function<ReportEntry(std::mt19937_64&)> run;
};

// Seeds each job from (suite seed, check, point) and evaluates in parallel.
std::vector<ReportEntry> run_jobs(const std::vector<Job>& jobs, const SuiteOptions& opt);

// Compares two exact values, filling lhs/rhs/diff on mismatch.
ReportEntry compare(const std::string& check, const nlohmann::json& point, const Vec& lhs, const Vec& rhs);
ReportEntry compare(const std::string& check, const nlohmann::json& point, const Operator& lhs, const Operator& rhs);
ReportEntry compare(const std::string& check, const nlohmann::json& point, const Scalar& lhs, const Scalar& rhs);

// Check families. Each returns job lists; run_jobs evaluates them.
std::vector<Job> r_matrix_jobs(const Flavor& f, int n, int trials);
std::vector<Job> rtt_jobs(const Flavor& f, int n, bool two_factor, int trials);

enum class Relation { AA, BBR, AB, DB, DD, RSym, ABB, DBB, DlBk };
std::string to_string(Relation r);
// Printed variants of DB and DBB: `plain` is the form without the extra
// scalar factor in the first term, `scaled` the form with it.
enum class Variant { plain, scaled };
std::vector<Job> section5_jobs(Relation r, int n, int k, int trials, Variant variant = Variant::plain);

enum class Identity { k_factorial, k_factorial_q, gyz, gyz1, gyzq, gyzq1, fly };
std::string to_string(Identity i);
// gyz1 and gyzq1 as printed, or as obtained from gyz and gyzq by the change
// of variables: gyz1 with numerators y - z - 1, gyzq1 with j < i in place of j <= i.
enum class Reading { printed, derived };
std::vector<Job> identity_jobs(Identity which, Scale scale, Reading reading = Reading::derived);

struct CrossCell {
    Flavor flavor;
    int n;
    Realization::Kind kind;
    int power;
    std::vector<int> xi;
};
std::vector<CrossCell> cross_grid(Scale scale, bool trig);
// Every route against the oracle, S_xi invariance, weight check.
std::vector<Job> cross_jobs(const std::vector<CrossCell>& cells, int points);

struct TensorCell {
    Flavor flavor;
    int n;
    int factors;
    std::vector<int> xi;
};
std::vector<TensorCell> tensor_grid(Scale scale);
std::vector<Job> tensor_jobs(const std::vector<TensorCell>& cells, int points);
// coset sums against (1/|H|) Sym-bar on sampled summand families
std::vector<Job> coset_jobs(int families);
std::vector<Job> dead_variable_jobs(int trials);

const std::vector<std::string>& suite_names();
// Throws ValidationError("/suite", ...) for unknown suites.
std::vector<Job> suite_jobs(const std::string& suite, Scale scale);
std::vector<ReportEntry> run_suite(const std::string& suite, const SuiteOptions& opt);
nlohmann::json report_json(const std::string& suite, const SuiteOptions& opt, const std::vector<ReportEntry>& entries);
bool any_fail(const std::vector<ReportEntry>& entries);

} // namespace nbv

#include "nbv/parallel.ipp"
