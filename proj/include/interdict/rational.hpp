#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace interdict {

// Exact rational arithmetic end-to-end: cut values, LP solutions and
// heuristic tie sets are compared with == rather than tolerances.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string rat_to_string(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

// Accepts "123", "-7/3" and plain decimals like "0.25".
inline std::optional<Rat> parse_rational(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            BigInt num(s.substr(0, slash));
            BigInt den(s.substr(slash + 1));
            if (den == 0) return std::nullopt;
            return Rat(num, den);
        }
        std::size_t dot = s.find('.');
        if (dot != std::string::npos) {
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            std::size_t frac_len = s.size() - dot - 1;
            if (frac_len == 0 || digits.empty()) return std::nullopt;
            BigInt num(digits);
            BigInt den = 1;
            for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
            return Rat(num, den);
        }
        return Rat(BigInt(s));
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

}  // namespace interdict
