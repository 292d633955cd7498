#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arcnash/coefficient.hpp"

namespace arcnash {

// Sparse multivariate polynomial over Coefficient. Exponent tuples always
// match the declared variable list; zero coefficients are never stored.
class MultiPoly {
public:
    using Exponents = std::vector<int>;
    using TermMap = std::map<Exponents, Coefficient>;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static MultiPoly constant(std::vector<std::string> vars, const Coefficient& c);
    static MultiPoly variable(std::vector<std::string> vars, const std::string& name);
    // Single term c * prod vars[i]^exps[i].
    static MultiPoly monomial(std::vector<std::string> vars, Exponents exps, const Coefficient& c);

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int var_index(const std::string& name) const;

    void set_term(const Exponents& e, const Coefficient& c);
    Coefficient coefficient(const Exponents& e) const;

    MultiPoly operator-() const;
    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    MultiPoly operator*(const Coefficient& c) const;
    MultiPoly& operator+=(const MultiPoly& b) { return *this = *this + b; }
    MultiPoly& operator-=(const MultiPoly& b) { return *this = *this - b; }
    MultiPoly& operator*=(const MultiPoly& b) { return *this = *this * b; }
    bool operator==(const MultiPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }

    MultiPoly pow(int e) const;

    int total_degree() const;  // -1 for the zero polynomial

    // Least total degree of a nonzero term; nullopt encodes the infinity flag
    // of the zero polynomial.
    std::optional<int> multiplicity() const;

    MultiPoly homogeneous_part(int d) const;
    MultiPoly derivative(const std::string& var) const;

    // Substitute each variable by a polynomial in the target variable list.
    MultiPoly substitute_poly(const std::vector<MultiPoly>& images,
                              std::vector<std::string> out_vars) const;

    Coefficient evaluate(const std::vector<Coefficient>& point) const;

    MultiPoly rename_vars(std::vector<std::string> new_vars) const;

    // Variables that actually occur with a positive exponent.
    std::vector<std::string> effective_vars() const;

    MultiPoly to_approx() const;

    // Graded-lex printing with the declared variable order (project-wide
    // monomial order).
    std::string str() const;

private:
    std::vector<std::string> vars_;
    TermMap terms_;
};

}  // namespace arcnash
