#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "cpa2relu/error.hpp"

namespace cpa2relu {

/// Exact rational scalar. GMP keeps every result in lowest terms with a
/// positive denominator.
using Rat = mpq_class;

namespace detail {

inline bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

} // namespace detail

/// Parses "n" or "n/d". Floats and zero denominators are rejected.
inline Rat parse_rat(std::string_view text) {
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
    if (!detail::is_integer_literal(num) || !detail::is_integer_literal(den))
        throw Error(ErrorCode::SchemaError, "bad rational literal '" + std::string(text) + "'");
    auto strip_plus = [](std::string_view s) { return std::string(s.front() == '+' ? s.substr(1) : s); };
    mpz_class n(strip_plus(num), 10);
    mpz_class d(strip_plus(den), 10);
    if (d == 0) throw Error(ErrorCode::SchemaError, "zero denominator in '" + std::string(text) + "'");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

/// num/den in lowest terms.
inline Rat make_rat(const mpz_class& num, const mpz_class& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(long num, long den = 1) { return make_rat(mpz_class(num), mpz_class(den)); }

inline std::string to_string(const Rat& r) { return r.get_str(10); }

inline int sign(const Rat& r) { return sgn(r); }

inline Rat rat_abs(const Rat& r) { return sign(r) < 0 ? Rat(-r) : r; }

} // namespace cpa2relu
