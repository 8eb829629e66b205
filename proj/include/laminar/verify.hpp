#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace laminar {

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::size_t instances = 0;
    double worst = 0.0;  // largest observed error, or count of failed instances for boolean checks
};

// Interwoven identities on random constructor sets (r <= 3, N <= 6).
std::vector<SuiteResult> interwoven_suites(std::uint64_t seed, std::size_t instances = 200);
// eig(Pbar (I2 (x) M)) = eig(M) u eig(Lambda2 M) for random M and quotient pairs.
SuiteResult quotient_spectrum_suite(std::uint64_t seed, std::size_t instances = 100);
// Generic product condition against the SISO and DIDO closed forms.
SuiteResult condition_consistency_suite(std::uint64_t seed, std::size_t instances = 500);
// Equitable reduction, closed-form quotient and lifting on random ring graphs.
SuiteResult equitable_lifting_suite(std::uint64_t seed, std::size_t instances = 50);
// Bipartite bilayers: lambda2 never minimal, no eigenvalue strictly inside (lambda2, -lambda2).
SuiteResult bipartite_gap_suite(std::uint64_t seed, std::size_t instances = 40);

std::vector<SuiteResult> run_all_suites(std::uint64_t seed);

}  // namespace laminar
