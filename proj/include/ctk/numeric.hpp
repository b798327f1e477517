#pragma once

// Exact integer / rational helpers shared by every module.
// All arithmetic is arbitrary precision; nothing here ever rounds.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ctk {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a value that must be a rational integer is not one.
class NotAnInteger : public Error {
public:
    explicit NotAnInteger(const std::string& msg) : Error(msg) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, long line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

inline BigInt big_gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }
inline BigInt big_lcm(const BigInt& a, const BigInt& b) { return boost::multiprecision::lcm(a, b); }

inline bool divides(const BigInt& a, const BigInt& b) {
    if (a == 0) return b == 0;
    return b % a == 0;
}

inline BigInt exact_div(const BigInt& num, const BigInt& den, const char* what = "exact_div") {
    if (den == 0) throw Error(std::string(what) + ": division by zero");
    BigInt q = num / den;
    if (q * den != num) throw Error(std::string(what) + ": " + num.str() + " not divisible by " + den.str());
    return q;
}

// floor(sqrt(n)) for n >= 0
inline BigInt isqrt_floor(const BigInt& n) {
    if (n < 0) throw Error("isqrt_floor: negative argument");
    return boost::multiprecision::sqrt(n);
}

inline long valuation(BigInt n, const BigInt& p) {
    if (n == 0) throw Error("valuation of 0");
    long v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

inline long lgcd(long a, long b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) { long t = a % b; a = b; b = t; }
    return a;
}

inline long llcm(long a, long b) { return a / lgcd(a, b) * b; }

inline std::vector<long> prime_factors(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

inline long euler_phi(long n) {
    long r = n;
    for (long p : prime_factors(n)) r = r / p * (p - 1);
    return r;
}

inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

inline bool is_squarefree(long n) {
    if (n < 0) n = -n;
    if (n == 0) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % (p * p) == 0) return false;
    return true;
}

// Trial-division factorization. Intended for smooth or modest inputs
// (conductors, divisor-constrained normalizer bounds), not cryptographic sizes.
inline std::vector<std::pair<BigInt, long>> factorize(BigInt n) {
    if (n <= 0) throw Error("factorize: argument must be positive");
    std::vector<std::pair<BigInt, long>> fs;
    BigInt p = 2;
    while (p * p <= n) {
        if (n % p == 0) {
            long e = 0;
            while (n % p == 0) { n /= p; ++e; }
            fs.emplace_back(p, e);
        }
        p += (p == 2) ? 1 : 2;
    }
    if (n > 1) fs.emplace_back(n, 1);
    return fs;
}

// All positive divisors, ascending.
inline std::vector<BigInt> divisors(const BigInt& n) {
    auto fs = factorize(n);
    std::vector<BigInt> ds{1};
    for (const auto& [p, e] : fs) {
        std::vector<BigInt> next;
        next.reserve(ds.size() * (e + 1));
        BigInt pk = 1;
        for (long k = 0; k <= e; ++k) {
            for (const auto& d : ds) next.push_back(d * pk);
            pk *= p;
        }
        ds = std::move(next);
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

// Kronecker symbol (a/n) for n >= 1.
inline int kronecker(long long a, long long n) {
    if (n <= 0) throw Error("kronecker: n must be positive");
    int result = 1;
    while (n % 2 == 0) {
        n /= 2;
        long long am = ((a % 8) + 8) % 8;
        if (am % 2 == 0) return 0;
        if (am == 3 || am == 5) result = -result;
    }
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long long nm = n % 8;
            if (nm == 3 || nm == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

inline BigInt big_pow(BigInt b, long e) {
    BigInt r = 1;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline BigInt parse_bigint(const std::string& s) {
    if (s.empty()) throw Error("parse_bigint: empty string");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw Error("parse_bigint: no digits in '" + s + "'");
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') throw Error("parse_bigint: bad digit in '" + s + "'");
    return BigInt(s);
}

}  // namespace ctk
