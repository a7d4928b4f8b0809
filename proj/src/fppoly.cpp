#include "motzkin/fppoly.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace motzkin {

namespace {

constexpr std::uint32_t kMaxModulus = 1u << 31;

// Boxes up to this many cells multiply through a dense accumulator;
// anything larger (not hit by the machines here) falls back to a map.
constexpr std::size_t kDenseCells = 1u << 22;

void check_modulus(std::uint32_t p) {
    if (p < 2 || p >= kMaxModulus)
        throw std::invalid_argument("PolyFp: modulus must be in [2, 2^31)");
}

std::uint32_t reduce(long long v, std::uint32_t p) {
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r);
}

bool term_order(const Term& a, const Term& b) {
    return a.xe != b.xe ? a.xe < b.xe : a.ye < b.ye;
}

} // namespace

PolyFp::PolyFp(std::uint32_t modulus) : p_(modulus) {
    check_modulus(modulus);
}

PolyFp PolyFp::constant(std::uint32_t modulus, long long value) {
    return monomial(modulus, 0, 0, value);
}

PolyFp PolyFp::monomial(std::uint32_t modulus, std::uint32_t xe, std::uint32_t ye,
                        long long coeff) {
    PolyFp r(modulus);
    std::uint32_t c = reduce(coeff, modulus);
    if (c != 0) r.terms_.push_back({xe, ye, c});
    return r;
}

void PolyFp::canonicalize() {
    std::sort(terms_.begin(), terms_.end(), term_order);
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (const Term& t : terms_) {
        if (!merged.empty() && merged.back().xe == t.xe && merged.back().ye == t.ye) {
            std::uint64_t c = static_cast<std::uint64_t>(merged.back().coeff) + t.coeff;
            merged.back().coeff = static_cast<std::uint32_t>(c % p_);
        } else {
            merged.push_back(t);
        }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const Term& t) { return t.coeff == 0; }),
                 merged.end());
    terms_ = std::move(merged);
}

int PolyFp::degree_x() const {
    int d = -1;
    for (const Term& t : terms_) d = std::max(d, static_cast<int>(t.xe));
    return d;
}

int PolyFp::degree_y() const {
    int d = -1;
    for (const Term& t : terms_) d = std::max(d, static_cast<int>(t.ye));
    return d;
}

std::uint32_t PolyFp::coeff(std::uint32_t xe, std::uint32_t ye) const {
    Term probe{xe, ye, 1};
    auto it = std::lower_bound(terms_.begin(), terms_.end(), probe, term_order);
    if (it != terms_.end() && it->xe == xe && it->ye == ye) return it->coeff;
    return 0;
}

PolyFp PolyFp::cartier(std::uint32_t r, std::uint32_t s) const {
    if (r >= p_ || s >= p_)
        throw std::invalid_argument("PolyFp::cartier: digits must be below the modulus");
    PolyFp out(p_);
    for (const Term& t : terms_) {
        if (t.xe % p_ == r && t.ye % p_ == s)
            out.terms_.push_back({(t.xe - r) / p_, (t.ye - s) / p_, t.coeff});
    }
    // Exponent division by p preserves the (xe, ye) order, so the terms
    // are already canonical.
    return out;
}

PolyFp PolyFp::pow(std::uint64_t e) const {
    PolyFp result = constant(p_, 1);
    PolyFp base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

std::size_t PolyFp::hash() const {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(p_);
    for (const Term& t : terms_) {
        mix(t.xe);
        mix(t.ye);
        mix(t.coeff);
    }
    return h;
}

PolyFp operator+(const PolyFp& a, const PolyFp& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("PolyFp: modulus mismatch");
    PolyFp out(a.p_);
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    out.terms_ = a.terms_;
    out.terms_.insert(out.terms_.end(), b.terms_.begin(), b.terms_.end());
    out.canonicalize();
    return out;
}

PolyFp operator*(const PolyFp& a, const PolyFp& b) {
    if (a.p_ != b.p_) throw std::invalid_argument("PolyFp: modulus mismatch");
    const std::uint64_t p = a.p_;
    PolyFp out(a.p_);
    if (a.is_zero() || b.is_zero()) return out;

    const std::size_t bx = static_cast<std::size_t>(a.degree_x()) + b.degree_x() + 1;
    const std::size_t by = static_cast<std::size_t>(a.degree_y()) + b.degree_y() + 1;

    if (bx * by <= kDenseCells) {
        // Dense accumulation with lazy reduction: products fit in 62 bits,
        // so sums are reduced only when the accumulator nears overflow.
        std::vector<std::uint64_t> acc(bx * by, 0);
        for (const Term& s : a.terms_) {
            for (const Term& t : b.terms_) {
                std::size_t idx = (static_cast<std::size_t>(s.xe) + t.xe) * by + s.ye + t.ye;
                acc[idx] += static_cast<std::uint64_t>(s.coeff) * t.coeff;
                if (acc[idx] & (1ull << 63)) acc[idx] %= p;
            }
        }
        for (std::size_t ix = 0; ix < bx; ++ix) {
            for (std::size_t iy = 0; iy < by; ++iy) {
                std::uint32_t c = static_cast<std::uint32_t>(acc[ix * by + iy] % p);
                if (c != 0)
                    out.terms_.push_back({static_cast<std::uint32_t>(ix),
                                          static_cast<std::uint32_t>(iy), c});
            }
        }
        return out;   // built in (xe, ye) order already
    }

    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> acc;
    for (const Term& s : a.terms_) {
        for (const Term& t : b.terms_) {
            std::uint64_t& cell = acc[{s.xe + t.xe, s.ye + t.ye}];
            cell += static_cast<std::uint64_t>(s.coeff) * t.coeff;
            if (cell & (1ull << 63)) cell %= p;
        }
    }
    for (const auto& [key, v] : acc) {
        std::uint32_t c = static_cast<std::uint32_t>(v % p);
        if (c != 0) out.terms_.push_back({key.first, key.second, c});
    }
    return out;
}

namespace {

// y-part of one term: "1", "5", "y", "y^3", "5*y^3".
std::string y_atom(std::uint32_t coeff, std::uint32_t ye) {
    std::ostringstream os;
    if (ye == 0) {
        os << coeff;
    } else {
        if (coeff != 1) os << coeff << "*";
        os << "y";
        if (ye > 1) os << "^" << ye;
    }
    return os.str();
}

} // namespace

std::string PolyFp::to_string() const {
    if (terms_.empty()) return "0";

    // Group terms by x-exponent, descending; y descending inside a group.
    std::ostringstream os;
    bool first_group = true;
    std::size_t i = terms_.size();
    while (i > 0) {
        // Terms share ascending (xe, ye) order, so each x-group is a
        // contiguous run; walk it from the top.
        std::size_t hi = i;
        std::uint32_t xe = terms_[hi - 1].xe;
        std::size_t lo = hi;
        while (lo > 0 && terms_[lo - 1].xe == xe) --lo;
        i = lo;

        std::ostringstream group;
        for (std::size_t j = hi; j > lo; --j) {
            const Term& t = terms_[j - 1];
            if (j != hi) group << " + ";
            group << y_atom(t.coeff, t.ye);
        }
        std::string ystr = group.str();
        bool multi = hi - lo > 1;

        if (!first_group) os << " + ";
        first_group = false;

        if (xe == 0) {
            os << ystr;   // no x factor, so no parentheses either
        } else {
            std::string xstr = xe == 1 ? "x" : "x^" + std::to_string(xe);
            if (multi)
                os << "(" << ystr << ")*" << xstr;
            else if (ystr == "1")
                os << xstr;
            else
                os << ystr << "*" << xstr;
        }
    }
    return os.str();
}

PolyFp make_poly(std::uint32_t modulus, const std::vector<std::array<long long, 3>>& triples) {
    PolyFp r(modulus);
    for (const auto& t : triples) {
        if (t[0] < 0 || t[1] < 0)
            throw std::invalid_argument("make_poly: negative exponent");
        std::uint32_t c = reduce(t[2], modulus);
        if (c != 0)
            r.terms_.push_back({static_cast<std::uint32_t>(t[0]),
                                static_cast<std::uint32_t>(t[1]), c});
    }
    r.canonicalize();
    return r;
}

PolyFp make_poly(std::uint32_t modulus, std::initializer_list<std::array<long long, 3>> triples) {
    return make_poly(modulus, std::vector<std::array<long long, 3>>(triples));
}

} // namespace motzkin
