#pragma once

#include <stdexcept>
#include <string>

namespace arcnash {

// Error taxonomy mirrors the CLI exit-code contract:
//   precondition_error -> exit 2, parse_error -> exit 3,
//   verification_error -> exit 4 (a residual that should vanish did not).
struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

struct parse_error : std::runtime_error {
    int line = 0;
    int column = 0;
    parse_error(const std::string& what, int line_, int col_)
        : std::runtime_error(what + " (line " + std::to_string(line_) + ", col " +
                             std::to_string(col_) + ")"),
          line(line_), column(col_) {}
};

// An internal identity check failed: either a bug or the truncation order
// is too small for the requested computation. Never downgraded to a warning.
struct verification_error : std::runtime_error {
    explicit verification_error(const std::string& what) : std::runtime_error(what) {}
};

// Exact and approximate coefficients may never meet in one expression.
struct mode_mix_error : std::runtime_error {
    explicit mode_mix_error(const std::string& what) : std::runtime_error(what) {}
};

// Internal signal: the exact tower (rationals + one extension layer) cannot
// represent a required value. Callers catch this and re-run in approx mode.
struct needs_approx : std::runtime_error {
    explicit needs_approx(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace arcnash
