#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "xc/errors.hpp"

namespace xc {

// GMP-backed exact arithmetic. Every quantity outside the quantum module is
// one of these; no floating point sneaks into identities or certificates.
using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using RatVec = std::vector<Rational>;

inline Int rat_num(const Rational& q) { return numerator(q); }
inline Int rat_den(const Rational& q) { return denominator(q); }

inline bool is_integral(const Rational& q) { return denominator(q) == 1; }

// Canonical string form: "p" for integers, "p/q" otherwise (q > 0).
inline std::string rat_str(const Rational& q) {
    if (is_integral(q)) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

// Parses "p" or "p/q"; whitespace is not tolerated.
inline Rational rat_parse(const std::string& s) {
    if (s.empty()) throw input_error("rat_parse: empty string");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int p(s.substr(0, slash));
        Int q(s.substr(slash + 1));
        if (q == 0) throw input_error("rat_parse: zero denominator in '" + s + "'");
        return Rational(p, q);
    } catch (const std::runtime_error&) {
        throw input_error("rat_parse: malformed rational '" + s + "'");
    }
}

// Best rational approximation with bounded denominator, via continued
// fraction convergents. Used to lift converged floating-point iterates back
// into exact arithmetic before verification.
inline Rational rationalize(double x, std::int64_t max_den) {
    if (x < 0) return -rationalize(-x, max_den);
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(v);
        if (fl > 9e17) break;
        std::int64_t a = static_cast<std::int64_t>(fl);
        if (q1 > 0 && q0 + a * q1 > max_den) break;
        std::int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double rem = v - fl;
        if (rem < 1e-15) break;
        v = 1.0 / rem;
    }
    if (q1 == 0) return 0;
    return Rational(Int(p1), Int(q1));
}

inline Rational dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw input_error("dot: length mismatch");
    Rational s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

inline bool is_zero_vec(const RatVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

// Scales a rational vector to integer entries with gcd 1. Positive scaling
// only unless allow_sign_flip, in which case the leading nonzero is made
// positive (used for equality rows, where sign carries no meaning).
inline RatVec scale_primitive(const RatVec& v, bool allow_sign_flip = false) {
    Int lcm_den = 1;
    for (const auto& x : v) lcm_den = lcm(lcm_den, rat_den(x));
    Int g = 0;
    RatVec w(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        w[k] = v[k] * lcm_den;
        g = gcd(g, rat_num(w[k]));
    }
    if (g == 0) return w;  // all-zero vector
    if (g < 0) g = -g;
    for (auto& x : w) x /= g;
    if (allow_sign_flip) {
        for (const auto& x : w) {
            if (x == 0) continue;
            if (x < 0)
                for (auto& y : w) y = -y;
            break;
        }
    }
    return w;
}

}  // namespace xc
