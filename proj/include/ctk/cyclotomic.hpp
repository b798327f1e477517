#pragma once

// Exact elements of cyclotomic fields Q(zeta_n), kept in a canonical form:
//
//   * coefficients over the power basis 1, z, ..., z^(phi(n)-1) after
//     reduction modulo the n-th cyclotomic polynomial,
//   * conductor minimal (detected via invariance under the Galois subgroup
//     fixing Q(zeta_(n/p)) for each prime p | n, then rewritten in the
//     subfield by exact linear solving).
//
// Structural equality therefore coincides with mathematical equality, and a
// value is rational iff its conductor is 1. No floating point anywhere.

#include "numeric.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace ctk {

namespace detail {

// Phi_n as a monic integer polynomial, low-degree coefficients first.
inline const std::vector<BigInt>& cyclotomic_poly(long n) {
    static std::map<long, std::vector<BigInt>> cache;
    static std::recursive_mutex mtx;
    std::lock_guard<std::recursive_mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // (x^n - 1) divided by prod of Phi_d over proper divisors d | n
    std::vector<BigInt> num(static_cast<std::size_t>(n) + 1, 0);
    num[0] = -1;
    num[static_cast<std::size_t>(n)] = 1;
    for (long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        const auto& phi_d = cyclotomic_poly(d);
        // exact division num /= phi_d (phi_d monic)
        std::vector<BigInt> quot(num.size() - phi_d.size() + 1, 0);
        for (long i = static_cast<long>(quot.size()) - 1; i >= 0; --i) {
            BigInt c = num[i + phi_d.size() - 1];
            quot[i] = c;
            if (c == 0) continue;
            for (std::size_t j = 0; j < phi_d.size(); ++j) num[i + j] -= c * phi_d[j];
        }
        num = std::move(quot);
    }
    auto [pos, inserted] = cache.emplace(n, std::move(num));
    (void)inserted;
    return pos->second;
}

// In-place remainder of v (dense, length >= phi(n)) modulo Phi_n.
inline void reduce_mod_phi(std::vector<BigRat>& v, long n) {
    const auto& phi = cyclotomic_poly(n);
    const long deg = static_cast<long>(phi.size()) - 1;
    for (long i = static_cast<long>(v.size()) - 1; i >= deg; --i) {
        if (v[i] == 0) continue;
        BigRat c = v[i];
        v[i] = 0;
        for (long j = 0; j < deg; ++j) {
            if (phi[j] == 0) continue;
            v[i - deg + j] -= c * BigRat(phi[j]);
        }
    }
    v.resize(deg > 0 ? static_cast<std::size_t>(deg) : 1);
}

}  // namespace detail

class Cyclotomic {
public:
    Cyclotomic() = default;
    Cyclotomic(long v) { if (v != 0) coeffs_[0] = BigRat(v); }             // NOLINT(google-explicit-constructor)
    Cyclotomic(const BigInt& v) { if (v != 0) coeffs_[0] = BigRat(v); }    // NOLINT(google-explicit-constructor)
    Cyclotomic(const BigRat& v) { if (v != 0) coeffs_[0] = v; }            // NOLINT(google-explicit-constructor)

    // zeta_n^k
    static Cyclotomic root_of_unity(long n, long k = 1) {
        if (n < 1) throw Error("root_of_unity: order must be positive");
        k %= n;
        if (k < 0) k += n;
        Cyclotomic a;
        a.conductor_ = n;
        a.coeffs_[k] = BigRat(1);
        a.canonicalize();
        return a;
    }

    long conductor() const { return conductor_; }
    const std::map<long, BigRat>& coefficients() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_rational() const { return conductor_ == 1; }

    // true iff the value lies in Z[zeta_n], i.e. is an algebraic integer
    bool is_integral() const {
        for (const auto& [e, c] : coeffs_)
            if (boost::multiprecision::denominator(c) != 1) return false;
        return true;
    }

    BigRat rational_value() const {
        if (!is_rational()) throw Error("rational_value: not rational (conductor " + std::to_string(conductor_) + ")");
        return coeffs_.empty() ? BigRat(0) : coeffs_.begin()->second;
    }

    BigInt integer_value() const {
        if (!is_rational()) throw NotAnInteger("integer_value: not rational");
        BigRat r = rational_value();
        if (boost::multiprecision::denominator(r) != 1)
            throw NotAnInteger("integer_value: " + r.str() + " is not an integer");
        return boost::multiprecision::numerator(r);
    }

    bool is_integer() const { return is_rational() && (coeffs_.empty() || boost::multiprecision::denominator(coeffs_.begin()->second) == 1); }

    // Galois automorphism zeta_n -> zeta_n^k; requires gcd(k, n) = 1.
    Cyclotomic galois(long k) const {
        long n = conductor_;
        long km = k % n;
        if (km < 0) km += n;
        if (lgcd(km, n) != 1) throw Error("galois: exponent " + std::to_string(k) + " not coprime to conductor " + std::to_string(n));
        if (n == 1) return *this;
        Cyclotomic a;
        a.conductor_ = n;
        for (const auto& [e, c] : coeffs_) a.coeffs_[(e * km) % n] += c;
        a.prune();
        a.canonicalize();
        return a;
    }

    Cyclotomic conj() const { return conductor_ == 1 ? *this : galois(conductor_ - 1); }

    // Sum over all Galois conjugates; always rational.
    BigRat trace() const {
        if (conductor_ == 1) return rational_value();
        Cyclotomic t;
        for (long k = 1; k <= conductor_; ++k)
            if (lgcd(k, conductor_) == 1) t += galois(k);
        return t.rational_value();
    }

    // Coefficients over the power basis of Q(zeta_big_n); conductor must divide big_n.
    std::vector<BigRat> power_basis_coords(long big_n) const {
        if (big_n % conductor_ != 0) throw Error("power_basis_coords: conductor does not divide target");
        std::vector<BigRat> v(static_cast<std::size_t>(big_n), BigRat(0));
        long scale = big_n / conductor_;
        for (const auto& [e, c] : coeffs_) v[e * scale] += c;
        if (big_n > 1) detail::reduce_mod_phi(v, big_n);
        v.resize(big_n > 1 ? static_cast<std::size_t>(euler_phi(big_n)) : 1);
        return v;
    }

    Cyclotomic& operator+=(const Cyclotomic& o) {
        if (conductor_ == o.conductor_) {
            for (const auto& [e, c] : o.coeffs_) coeffs_[e] += c;
            prune();
            if (conductor_ > 1) canonicalize();
            return *this;
        }
        long n = llcm(conductor_, o.conductor_);
        Cyclotomic r;
        r.conductor_ = n;
        for (const auto& [e, c] : coeffs_) r.coeffs_[e * (n / conductor_)] += c;
        for (const auto& [e, c] : o.coeffs_) r.coeffs_[e * (n / o.conductor_)] += c;
        r.prune();
        r.canonicalize();
        *this = std::move(r);
        return *this;
    }

    Cyclotomic& operator-=(const Cyclotomic& o) { return *this += -o; }

    Cyclotomic operator-() const {
        Cyclotomic r = *this;
        for (auto& [e, c] : r.coeffs_) c = -c;
        return r;
    }

    Cyclotomic& operator*=(const Cyclotomic& o) {
        if (is_zero() || o.is_zero()) { *this = Cyclotomic(); return *this; }
        if (o.conductor_ == 1) {  // scalar
            BigRat s = o.coeffs_.begin()->second;
            for (auto& [e, c] : coeffs_) c *= s;
            return *this;
        }
        if (conductor_ == 1) {
            BigRat s = coeffs_.begin()->second;
            Cyclotomic r = o;
            for (auto& [e, c] : r.coeffs_) c *= s;
            *this = std::move(r);
            return *this;
        }
        long n = llcm(conductor_, o.conductor_);
        Cyclotomic r;
        r.conductor_ = n;
        long s1 = n / conductor_, s2 = n / o.conductor_;
        for (const auto& [e1, c1] : coeffs_)
            for (const auto& [e2, c2] : o.coeffs_)
                r.coeffs_[(e1 * s1 + e2 * s2) % n] += c1 * c2;
        r.prune();
        r.canonicalize();
        *this = std::move(r);
        return *this;
    }

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { a += b; return a; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { a -= b; return a; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { a *= b; return a; }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        return a.conductor_ == b.conductor_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    // Arbitrary strict total order, for deterministic sets and sorting.
    friend bool operator<(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.conductor_ != b.conductor_) return a.conductor_ < b.conductor_;
        auto ia = a.coeffs_.begin(), ib = b.coeffs_.begin();
        for (; ia != a.coeffs_.end() && ib != b.coeffs_.end(); ++ia, ++ib) {
            if (ia->first != ib->first) return ia->first < ib->first;
            if (ia->second != ib->second) return ia->second < ib->second;
        }
        return ia == a.coeffs_.end() && ib != b.coeffs_.end();
    }

    // Canonical literal: minimal conductor, exponents ascending, no spaces.
    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : coeffs_) {
            BigRat ac = c < 0 ? BigRat(-c) : c;
            if (!first) os << (c < 0 ? "-" : "+");
            else if (c < 0) os << "-";
            first = false;
            if (e == 0) {
                os << rat_str(ac);
            } else {
                if (ac != 1) os << rat_str(ac) << "*";
                os << "E(" << conductor_ << ")";
                if (e != 1) os << "^" << e;
            }
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Cyclotomic& a) { return os << a.str(); }

private:
    long conductor_ = 1;
    std::map<long, BigRat> coeffs_;

    static std::string rat_str(const BigRat& r) {
        const BigInt& den = boost::multiprecision::denominator(r);
        if (den == 1) return boost::multiprecision::numerator(r).str();
        return boost::multiprecision::numerator(r).str() + "/" + den.str();
    }

    void prune() {
        for (auto it = coeffs_.begin(); it != coeffs_.end();)
            it = (it->second == 0) ? coeffs_.erase(it) : std::next(it);
    }

    std::vector<BigRat> dense() const {
        std::vector<BigRat> v(static_cast<std::size_t>(conductor_), BigRat(0));
        for (const auto& [e, c] : coeffs_) v[e % conductor_] += c;
        return v;
    }

    void load(std::vector<BigRat> v, long n) {
        conductor_ = n;
        coeffs_.clear();
        for (std::size_t e = 0; e < v.size(); ++e)
            if (v[e] != 0) coeffs_[static_cast<long>(e)] = std::move(v[e]);
    }

    // sigma_k applied to a Phi-reduced dense vector, re-reduced.
    static std::vector<BigRat> galois_dense(const std::vector<BigRat>& v, long n, long k) {
        std::vector<BigRat> u(static_cast<std::size_t>(n), BigRat(0));
        for (std::size_t e = 0; e < v.size(); ++e)
            if (v[e] != 0) u[(e * k) % n] += v[e];
        detail::reduce_mod_phi(u, n);
        return u;
    }

    // Solve for coordinates of v over the power basis of Q(zeta_m) inside
    // Q(zeta_n), m | n. Returns nullopt when v is not in the subfield.
    static std::optional<std::vector<BigRat>> rewrite_in_subfield(const std::vector<BigRat>& v, long n, long m) {
        long phin = euler_phi(n), phim = euler_phi(m);
        // columns: reduced vectors of zeta_n^((n/m)*j)
        std::vector<std::vector<BigRat>> mat(static_cast<std::size_t>(phin),
                                             std::vector<BigRat>(static_cast<std::size_t>(phim) + 1, BigRat(0)));
        for (long j = 0; j < phim; ++j) {
            std::vector<BigRat> col(static_cast<std::size_t>(n), BigRat(0));
            col[(static_cast<std::size_t>(n) / m * j) % n] = 1;
            detail::reduce_mod_phi(col, n);
            for (long i = 0; i < phin; ++i) mat[i][j] = col[i];
        }
        for (long i = 0; i < phin; ++i) mat[i][phim] = i < static_cast<long>(v.size()) ? v[i] : BigRat(0);

        // Gaussian elimination on the augmented system
        std::vector<long> pivot_col_of_row;
        long row = 0;
        for (long col = 0; col < phim && row < phin; ++col) {
            long pr = -1;
            for (long r = row; r < phin; ++r)
                if (mat[r][col] != 0) { pr = r; break; }
            if (pr < 0) return std::nullopt;  // basis columns are independent, so this cannot happen
            std::swap(mat[row], mat[pr]);
            BigRat inv = mat[row][col];
            for (long j2 = col; j2 <= phim; ++j2) mat[row][j2] /= inv;
            for (long r = 0; r < phin; ++r) {
                if (r == row || mat[r][col] == 0) continue;
                BigRat f = mat[r][col];
                for (long j2 = col; j2 <= phim; ++j2) mat[r][j2] -= f * mat[row][j2];
            }
            pivot_col_of_row.push_back(col);
            ++row;
        }
        for (long r = row; r < phin; ++r)
            if (mat[r][phim] != 0) return std::nullopt;  // inconsistent: not in subfield
        std::vector<BigRat> d(static_cast<std::size_t>(phim), BigRat(0));
        for (long r = 0; r < row; ++r) d[pivot_col_of_row[r]] = mat[r][phim];
        return d;
    }

    void canonicalize() {
        if (conductor_ == 1) { prune(); return; }
        std::vector<BigRat> v = dense();
        detail::reduce_mod_phi(v, conductor_);
        long n = conductor_;
        bool changed = true;
        while (changed && n > 1) {
            changed = false;
            for (long p : prime_factors(n)) {
                long m = n / p;
                bool invariant = true;
                for (long k = 1 + m; k < n && invariant; k += m)
                    if (lgcd(k, n) == 1 && galois_dense(v, n, k) != v) invariant = false;
                if (!invariant) continue;
                auto w = rewrite_in_subfield(v, n, m);
                if (!w) throw Error("canonicalize: subfield rewrite failed");  // unreachable
                v = std::move(*w);
                n = m;
                if (n > 1) detail::reduce_mod_phi(v, n);
                changed = true;
                break;
            }
        }
        load(std::move(v), n);
    }
};

inline Cyclotomic conj(const Cyclotomic& a) { return a.conj(); }

// ---------------------------------------------------------------------------
// Literal grammar (whitespace-insensitive):
//   value := term (('+'|'-') term)*
//   term  := [coeff '*'] atom | coeff
//   coeff := integer | integer '/' integer
//   atom  := 'E(' n ')' ['^' k]
// ---------------------------------------------------------------------------

namespace detail {

class LiteralParser {
public:
    explicit LiteralParser(const std::string& s) : s_(s) {}

    Cyclotomic parse() {
        Cyclotomic result;
        skip_ws();
        bool negative = eat_sign();
        result += parse_term(negative);
        skip_ws();
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (c != '+' && c != '-') throw Error("cyclotomic literal: unexpected '" + std::string(1, c) + "' in '" + s_ + "'");
            ++pos_;
            result += parse_term(c == '-');
            skip_ws();
        }
        return result;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }

    bool eat_sign() {
        skip_ws();
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) return s_[pos_++] == '-';
        return false;
    }

    BigInt parse_integer() {
        skip_ws();
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) neg = s_[pos_++] == '-';
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
        if (pos_ == start) throw Error("cyclotomic literal: expected integer in '" + s_ + "'");
        BigInt v(s_.substr(start, pos_ - start));
        return neg ? BigInt(-v) : v;
    }

    Cyclotomic parse_atom() {
        // at 'E'
        pos_++;  // E
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != '(') throw Error("cyclotomic literal: expected '(' after E in '" + s_ + "'");
        ++pos_;
        BigInt nb = parse_integer();
        if (nb < 1) throw Error("cyclotomic literal: E(n) needs n >= 1");
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != ')') throw Error("cyclotomic literal: expected ')' in '" + s_ + "'");
        ++pos_;
        long n = nb.convert_to<long>();
        long k = 1;
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            k = parse_integer().convert_to<long>();
        }
        return Cyclotomic::root_of_unity(n, k);
    }

    Cyclotomic parse_term(bool negative) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == 'E') {
            Cyclotomic a = parse_atom();
            return negative ? -a : a;
        }
        BigInt num = parse_integer();
        BigRat coeff(num);
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            BigInt den = parse_integer();
            if (den == 0) throw Error("cyclotomic literal: zero denominator");
            coeff = BigRat(num, den);
        }
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '*') {
            ++pos_;
            skip_ws();
            if (pos_ >= s_.size() || s_[pos_] != 'E') throw Error("cyclotomic literal: expected E(...) after '*'");
            Cyclotomic a = parse_atom();
            a *= Cyclotomic(coeff);
            return negative ? -a : a;
        }
        Cyclotomic a{coeff};
        return negative ? -a : a;
    }
};

}  // namespace detail

inline Cyclotomic parse_cyclotomic(const std::string& s) {
    detail::LiteralParser p(s);
    return p.parse();
}

// Membership in the quadratic field Q(sqrt(d)), d squarefree, d != 0, 1.
// Tests invariance under the Galois stabilizer of Q(sqrt(d)) in Q(zeta_N),
// identified through the Kronecker character of discriminant d or 4d.
inline bool in_quadratic_field(const Cyclotomic& a, long d) {
    if (d == 0 || d == 1) throw Error("in_quadratic_field: d must differ from 0 and 1");
    if (!is_squarefree(d)) throw Error("in_quadratic_field: d must be squarefree");
    if (a.is_rational()) return true;
    long dm = ((d % 4) + 4) % 4;
    long D = (dm == 1) ? d : 4 * d;
    long absD = D < 0 ? -D : D;
    long N = llcm(a.conductor(), absD);
    for (long k = 2; k < N; ++k) {
        if (lgcd(k, N) != 1) continue;
        if (kronecker(D, k) != 1) continue;
        if (a.galois(k) != a) return false;
    }
    return true;
}

}  // namespace ctk
