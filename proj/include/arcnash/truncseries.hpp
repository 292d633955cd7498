#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arcnash/multipoly.hpp"

namespace arcnash {

// Power series in one or two variables, truncated at a total order N.
// Terms of total degree <= N are stored and trusted; everything beyond is
// unknown. Arithmetic results carry order = min of the operand orders.
class TruncSeries {
public:
    using Key = std::array<int, 2>;  // exponents; second entry 0 when univariate

    TruncSeries() : vars_{"t"}, order_(0) {}
    TruncSeries(std::vector<std::string> vars, int order);

    static TruncSeries zero(std::vector<std::string> vars, int order) {
        return TruncSeries(std::move(vars), order);
    }
    static TruncSeries constant(std::vector<std::string> vars, int order, const Coefficient& c);
    static TruncSeries monomial(std::vector<std::string> vars, int order, Key exps,
                                const Coefficient& c);
    // Lowers a polynomial in <= 2 variables; terms above the order are dropped.
    static TruncSeries from_poly(const MultiPoly& p, int order);

    const std::vector<std::string>& vars() const { return vars_; }
    int nvars() const { return static_cast<int>(vars_.size()); }
    int order() const { return order_; }
    const std::map<Key, Coefficient>& terms() const { return terms_; }

    void set(Key e, const Coefficient& c);
    Coefficient coefficient(Key e) const;
    Coefficient coefficient(int e) const { return coefficient(Key{e, 0}); }

    // Least total degree of a stored nonzero term; nullopt is the
    // "vanishes to order >= N" flag.
    std::optional<int> valuation() const;
    bool is_zero_to_order() const { return terms_.empty(); }
    // Coefficient of the unique lowest-degree term (univariate use).
    Coefficient leading_coefficient() const;

    TruncSeries operator-() const;
    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
    TruncSeries operator*(const Coefficient& c) const;
    TruncSeries& operator+=(const TruncSeries& b) { return *this = *this + b; }
    TruncSeries& operator-=(const TruncSeries& b) { return *this = *this - b; }
    TruncSeries& operator*=(const TruncSeries& b) { return *this = *this * b; }

    // True division of power series: requires valuation(a) >= valuation(b) and
    // an exactly vanishing remainder; the result carries order
    // min(Na, Nb) - valuation(b). Throws precondition_error otherwise.
    friend TruncSeries divide_exact(const TruncSeries& a, const TruncSeries& b);

    TruncSeries pow(int e) const;
    TruncSeries truncated(int new_order) const;

    // Redeclare a higher trusted order without new information. Only sound
    // when every later use multiplies this series by positive-valuation
    // factors, so the unknown top coefficients land beyond the claimed order.
    TruncSeries padded(int new_order) const;

    // Equality of stored coefficients through min(order, o.order).
    bool equal_to_order(const TruncSeries& o) const;

    // s -> s^r on the named variable.
    TruncSeries substitute_power(const std::string& var, int r) const;

    // Substitute a fixed rational for one variable of a bivariate series;
    // the result is the specialization of the truncated representative.
    TruncSeries restrict_var(const std::string& var, const Rational& value) const;

    // Substitute each variable by a series of valuation >= 1.
    TruncSeries substitute_series(const std::vector<TruncSeries>& images) const;

    // Univariate compositional inverse: g with f(g(t)) = t mod t^{N+1};
    // requires valuation exactly 1.
    TruncSeries reversion() const;

    // View a univariate series in the first slot of a bivariate frame.
    TruncSeries promoted(const std::vector<std::string>& vars) const;

    TruncSeries to_approx() const;

    std::string str() const;

private:
    std::vector<std::string> vars_;
    int order_;
    std::map<Key, Coefficient> terms_;

    int var_index(const std::string& name) const;
    static void check_compatible(const TruncSeries& a, const TruncSeries& b);
};

// Composite series f(args...) for a polynomial f; every argument must have
// valuation >= 1 (arcs pass through the origin). The result is bivariate as
// soon as any argument is.
TruncSeries substitute(const MultiPoly& p, const std::vector<TruncSeries>& args);

}  // namespace arcnash
