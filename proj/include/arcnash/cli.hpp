#pragma once

#include <string>
#include <vector>

namespace arcnash {

// Exit-code contract: 0 success, 2 precondition violation, 3 parse error,
// 4 internal verification failure (a residual that must vanish did not).
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, char** argv);

struct RunConfig {
    int order = 16;            // truncation order N, >= 4
    std::string mode = "exact";  // exact | approx
    double eps = 1e-9;         // approx tolerance, in (0, 1e-3]
    std::string format = "json";  // json | text | dot | csv
    int seed_index = 0;        // shifts the deterministic choice sequences
    std::string monomial_order = "grlex";
    std::string out;           // output path; empty = stdout

    void validate() const;
};

}  // namespace arcnash
