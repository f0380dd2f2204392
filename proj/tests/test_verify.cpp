#include "doctest.h"

#include "nbv/verify.hpp"

#include <chrono>
#include <iostream>

using namespace nbv;

namespace {

std::string failures(const std::vector<ReportEntry>& entries)
{
    std::string out;
    for (const auto& e : entries)
        if (e.verdict == Verdict::fail)
            out += e.check + " " + e.point.dump() + " " + e.reason + "\n";
    return out;
}

std::size_t count(const std::vector<ReportEntry>& entries, Verdict v)
{
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [v](const ReportEntry& e) { return e.verdict == v; }));
}

SuiteOptions opts(std::uint64_t seed = 7)
{
    SuiteOptions o;
    o.seed = seed;
    return o;
}

} // namespace

TEST_CASE("block relations hold on two-factor vector assemblies")
{
    std::vector<Job> jobs;
    for (int n = 2; n <= 3; ++n) {
        for (Relation r : {Relation::AA, Relation::BBR, Relation::AB, Relation::DB, Relation::DD})
            for (auto j : section5_jobs(r, n, 2, 2))
                jobs.push_back(j);
        for (int k = 1; k <= 2; ++k)
            for (Relation r : {Relation::RSym, Relation::ABB, Relation::DBB, Relation::DlBk})
                for (auto j : section5_jobs(r, n, k, 1))
                    jobs.push_back(j);
    }
    auto res = run_jobs(jobs, opts());
    INFO(failures(res));
    CHECK_FALSE(any_fail(res));
    CHECK(count(res, Verdict::skipped) == 0);
}

TEST_CASE("the scaled forms of DB and DBB are not identities")
{
    std::vector<Job> jobs = section5_jobs(Relation::DB, 3, 2, 1, Variant::scaled);
    auto more = section5_jobs(Relation::DBB, 3, 2, 1, Variant::scaled);
    jobs.insert(jobs.end(), more.begin(), more.end());
    auto res = run_jobs(jobs, opts());
    for (const auto& e : res)
        CHECK(e.verdict == Verdict::fail);
}

TEST_CASE("identity lab at small scale")
{
    for (Identity i : {Identity::k_factorial, Identity::k_factorial_q, Identity::gyz, Identity::gyz1, Identity::gyzq,
                       Identity::gyzq1, Identity::fly}) {
        auto res = run_jobs(identity_jobs(i, Scale::small), opts());
        INFO(to_string(i));
        INFO(failures(res));
        CHECK_FALSE(any_fail(res));
        CHECK(count(res, Verdict::skipped) == 0);
    }
}

TEST_CASE("printed readings of gyz1 and gyzq1 fail")
{
    for (Identity i : {Identity::gyz1, Identity::gyzq1}) {
        auto res = run_jobs(identity_jobs(i, Scale::small, Reading::printed), opts());
        INFO(to_string(i));
        for (const auto& e : res)
            if (e.point["r"].get<int>() >= 2)  // p = r = 1 has no cross factors
                CHECK(e.verdict == Verdict::fail);
    }
}
