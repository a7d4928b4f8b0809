#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace motzkin {

/// One monomial coeff * x^xe * y^ye. Stored coefficients are always in
/// [1, p); a zero coefficient means the term does not exist.
struct Term {
    std::uint32_t xe = 0;
    std::uint32_t ye = 0;
    std::uint32_t coeff = 0;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse bivariate polynomial over Z/pZ.
///
/// Terms are kept sorted by (xe, ye) and never carry a zero coefficient,
/// so two polynomials are equal exactly when their term vectors are equal,
/// independent of how they were assembled. Values are immutable once
/// constructed; all arithmetic returns fresh polynomials.
class PolyFp {
public:
    /// The zero polynomial mod `modulus`. Requires 2 <= modulus < 2^31.
    explicit PolyFp(std::uint32_t modulus);

    static PolyFp constant(std::uint32_t modulus, long long value);
    static PolyFp monomial(std::uint32_t modulus, std::uint32_t xe, std::uint32_t ye,
                           long long coeff);

    std::uint32_t modulus() const { return p_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    /// Degree in x resp. y; -1 for the zero polynomial.
    int degree_x() const;
    int degree_y() const;

    /// Coefficient of x^xe y^ye, 0 if absent.
    std::uint32_t coeff(std::uint32_t xe, std::uint32_t ye) const;

    /// Value at x = 0, y = 0, i.e. the constant coefficient.
    std::uint32_t eval_origin() const { return coeff(0, 0); }

    /// Section operator for digits (r, s): keeps terms with exponents
    /// congruent to (r, s) mod p and divides their exponents by p.
    /// Linear; contracts degrees by a factor p.
    PolyFp cartier(std::uint32_t r, std::uint32_t s) const;

    /// Repeated squaring; pow(0) is the constant 1.
    PolyFp pow(std::uint64_t e) const;

    std::size_t hash() const;

    /// Renders like "(5*y^4 + 5*y^3)*x^2 + 6*y^2*x + y": powers of x
    /// descending, y-coefficients descending, unit coefficients and unit
    /// exponents omitted. The zero polynomial renders as "0".
    std::string to_string() const;

    friend PolyFp operator+(const PolyFp& a, const PolyFp& b);
    friend PolyFp operator*(const PolyFp& a, const PolyFp& b);
    friend bool operator==(const PolyFp&, const PolyFp&) = default;

private:
    std::uint32_t p_;
    std::vector<Term> terms_;   // sorted by (xe, ye), coeffs in [1, p)

    void canonicalize();        // sort, merge duplicates, drop zeros
    friend PolyFp make_poly(std::uint32_t, const std::vector<std::array<long long, 3>>&);
};

/// Builds a polynomial from (xe, ye, coeff) triples; coefficients may be
/// negative or exceed p and are reduced, duplicates are merged.
PolyFp make_poly(std::uint32_t modulus, const std::vector<std::array<long long, 3>>& triples);
PolyFp make_poly(std::uint32_t modulus, std::initializer_list<std::array<long long, 3>> triples);

} // namespace motzkin
