/* Copyright 2026 The hoca Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */

// Acceptance run: one PASS/FAIL line per criterion, each with its own time limit.
#include "hoca/audit.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <string>

using namespace hoca;

namespace {

constexpr std::uint64_t seed = 42;

struct Criterion {
    int id;
    std::string title;
    double limit_seconds; // 0: no limit
    std::size_t min_samples;
    std::function<CheckResult()> run;
};

std::string capture(const std::string& cmd, int& status)
{
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) {
        status = -1;
        return out;
    }
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
        out.append(buf.data(), n);
    status = pclose(p);
    return out;
}

CheckResult determinism(const std::string& exe)
{
    CheckResult r{"byte-identical audit reports"};
    const std::string cmd = "\"" + exe + "\" audit --seed 42";
    int s1 = 0, s2 = 0;
    const auto a = capture(cmd, s1);
    const auto b = capture(cmd, s2);
    r.record(s1 == 0 && s2 == 0, "audit exit status");
    r.record(!a.empty() && a == b, "reports differ");
    return r;
}

} // namespace

int main(int argc, char** argv)
{
    const std::string exe = argc > 1 ? argv[1] : HOCA_EXE;
    const std::vector<Criterion> criteria{
        {1, "Gerstenhaber axioms for schouten/wedge", 10, 200, [] { return check_gerstenhaber(seed, 200); }},
        {2, "brace relation on words", 30, 100, [] { return check_brace_relation(seed + 1, 100); }},
        {3, "inner structure: m11(mu,mu), d^2, Q^n for n=3,4", 0, 200, [] { return check_inner_structure(seed + 2, 200); }},
        {4, "HKR blocks, d=2, words<=3, order<=3", 60, 1, [] { return check_hkr_blocks(2, 3, 3); }},
        {5, "homotopy transfer at arities 2, 3 and q1 = schouten", 300, 50,
         [] { return check_transfer_identities(seed + 3, 50); }},
        {6, "planar tree counts and weight", 0, 5, [] { return check_tree_combinatorics(); }},
        {7, "Moyal MC, twisted differential, group-like", 60, 1, [] { return check_twisting(seed + 4, 30); }},
        {8, "brace vanishing on 1-slot words", 0, 100, [] { return check_brace_vanishing(seed + 5, 100); }},
        {9, "graph span versus invariant span", 120, 3, [] { return check_graph_span(); }},
        {10, "descent: closure and L = d i + i d", 5, 1, [] { return check_descent(); }},
        {11, "determinism of the audit report", 0, 2, [&exe] { return determinism(exe); }},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        CheckResult r{c.title};
        std::string note;
        try {
            r = c.run();
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = note.empty() && r.passed();
        if (ok && r.samples < c.min_samples) {
            ok = false;
            note = "only " + std::to_string(r.samples) + " samples";
        }
        if (ok && c.limit_seconds > 0 && dt >= c.limit_seconds) {
            ok = false;
            note = "over time limit";
        }
        if (note.empty() && !r.passed())
            note = r.failures ? std::to_string(r.failures) + " failures, first: " + r.first_failure : "no samples";
        char timing[96];
        if (c.limit_seconds > 0)
            std::snprintf(timing, sizeof timing, "%.2f s / %.0f s", dt, c.limit_seconds);
        else
            std::snprintf(timing, sizeof timing, "%.2f s", dt);
        std::cout << (ok ? "PASS " : "FAIL ") << (c.id < 10 ? " " : "") << c.id << "  " << c.title << "  [" << r.samples
                  << " samples, " << timing << "]";
        if (!ok)
            std::cout << "  " << note;
        std::cout << std::endl;
        failed += ok ? 0 : 1;
    }
    std::cout << (failed ? "FAILED " + std::to_string(failed) + " of " : std::string("all passed: "))
              << criteria.size() << " criteria" << std::endl;
    return failed ? 1 : 0;
}
