#pragma once

// Exact scalars over the rationals or a prime field GF(p).

#include <gmpxx.h>

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace invarank {

/// Designates the ground field: Q, or GF(p) for a prime p < 2^32.
struct FieldSpec {
    enum class Kind { Rationals, PrimeField };

    Kind kind = Kind::Rationals;
    std::uint64_t p = 0;

    static FieldSpec rationals() { return {}; }

    static FieldSpec prime(std::uint64_t p) {
        if (p < 2 || p >= (std::uint64_t{1} << 32) || !is_prime(p))
            throw std::invalid_argument("field modulus must be a prime below 2^32, got " +
                                        std::to_string(p));
        return {Kind::PrimeField, p};
    }

    /// Parses "q" or "p:<prime>".
    static FieldSpec parse(std::string_view s) {
        if (s == "q" || s == "Q") return rationals();
        if (s.size() > 2 && (s[0] == 'p' || s[0] == 'P') && s[1] == ':') {
            std::uint64_t p = 0;
            auto body = s.substr(2);
            auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), p);
            if (ec == std::errc() && ptr == body.data() + body.size()) return prime(p);
        }
        throw std::invalid_argument("malformed field spec '" + std::string(s) +
                                    "' (expected q or p:<prime>)");
    }

    bool is_rational() const { return kind == Kind::Rationals; }
    std::uint64_t characteristic() const { return is_rational() ? 0 : p; }

    std::string to_string() const { return is_rational() ? "q" : "p:" + std::to_string(p); }

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

    static bool is_prime(std::uint64_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }
};

/// A field element. Rationals are kept canonical (coprime, positive
/// denominator); residues are kept in [0, p).
class Scalar {
public:
    struct Residue {
        std::uint64_t value;
        std::uint64_t p;
    };

    Scalar() : v_(mpq_class(0)) {}

    static Scalar zero(const FieldSpec& f) { return from_int(f, 0); }
    static Scalar one(const FieldSpec& f) { return from_int(f, 1); }

    static Scalar from_int(const FieldSpec& f, long n) {
        if (f.is_rational()) return Scalar(mpq_class(n));
        long r = n % static_cast<long>(f.p);
        if (r < 0) r += static_cast<long>(f.p);
        return Scalar(Residue{static_cast<std::uint64_t>(r), f.p});
    }

    static Scalar from_mpz(const FieldSpec& f, const mpz_class& n) {
        if (f.is_rational()) return Scalar(mpq_class(n));
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), f.p);
        return Scalar(Residue{r.get_ui(), f.p});
    }

    /// Maps a rational into the field; the denominator must be a unit.
    static Scalar from_rational(const FieldSpec& f, mpq_class q) {
        q.canonicalize();
        if (f.is_rational()) return Scalar(std::move(q));
        Scalar den = from_mpz(f, q.get_den());
        if (den.is_zero())
            throw std::invalid_argument("denominator " + q.get_den().get_str() +
                                        " is not invertible mod " + std::to_string(f.p));
        return from_mpz(f, q.get_num()) / den;
    }

    /// Parses "a" or "a/b" (optional sign, decimal integers).
    static Scalar parse(const FieldSpec& f, std::string_view text) {
        std::string s(text);
        auto valid_int = [](std::string_view t) {
            if (!t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
            if (t.empty()) return false;
            for (char c : t)
                if (c < '0' || c > '9') return false;
            return true;
        };
        auto slash = s.find('/');
        std::string num = s.substr(0, slash);
        std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
        if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
            throw std::invalid_argument("malformed scalar '" + s + "'");
        if (num[0] == '+') num.erase(0, 1);
        mpz_class d(den);
        if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
        return from_rational(f, mpq_class(mpz_class(num), d));
    }

    FieldSpec field() const {
        if (auto r = std::get_if<Residue>(&v_)) return {FieldSpec::Kind::PrimeField, r->p};
        return FieldSpec::rationals();
    }

    bool is_rational() const { return std::holds_alternative<mpq_class>(v_); }
    const mpq_class& rational() const { return std::get<mpq_class>(v_); }
    std::uint64_t residue() const { return std::get<Residue>(v_).value; }

    bool is_zero() const {
        if (auto r = std::get_if<Residue>(&v_)) return r->value == 0;
        return sgn(std::get<mpq_class>(v_)) == 0;
    }
    bool is_one() const {
        if (auto r = std::get_if<Residue>(&v_)) return r->value == 1;
        return std::get<mpq_class>(v_) == 1;
    }

    Scalar operator-() const {
        if (auto r = std::get_if<Residue>(&v_))
            return Scalar(Residue{r->value == 0 ? 0 : r->p - r->value, r->p});
        return Scalar(mpq_class(-std::get<mpq_class>(v_)));
    }

    Scalar& operator+=(const Scalar& o) {
        if (auto r = std::get_if<Residue>(&v_)) {
            auto& s = o.residue_checked(r->p);
            r->value += s.value;
            if (r->value >= r->p) r->value -= r->p;
        } else {
            std::get<mpq_class>(v_) += o.rational_checked();
        }
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        if (auto r = std::get_if<Residue>(&v_)) {
            auto& s = o.residue_checked(r->p);
            r->value = r->value >= s.value ? r->value - s.value : r->value + r->p - s.value;
        } else {
            std::get<mpq_class>(v_) -= o.rational_checked();
        }
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        if (auto r = std::get_if<Residue>(&v_)) {
            auto& s = o.residue_checked(r->p);
            r->value = r->value * s.value % r->p;
        } else {
            std::get<mpq_class>(v_) *= o.rational_checked();
        }
        return *this;
    }
    Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    Scalar inverse() const {
        if (is_zero()) throw std::domain_error("division by zero");
        if (auto r = std::get_if<Residue>(&v_)) return Scalar(Residue{pow_mod(r->value, r->p - 2, r->p), r->p});
        return Scalar(mpq_class(1 / std::get<mpq_class>(v_)));
    }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.v_.index() != b.v_.index()) return false;
        if (auto r = std::get_if<Residue>(&a.v_)) {
            auto& s = std::get<Residue>(b.v_);
            return r->p == s.p && r->value == s.value;
        }
        return std::get<mpq_class>(a.v_) == std::get<mpq_class>(b.v_);
    }

    std::string to_string() const {
        if (auto r = std::get_if<Residue>(&v_)) return std::to_string(r->value);
        return std::get<mpq_class>(v_).get_str();
    }

private:
    explicit Scalar(mpq_class q) : v_(std::move(q)) {}
    explicit Scalar(Residue r) : v_(r) {}

    const Residue& residue_checked(std::uint64_t p) const {
        auto r = std::get_if<Residue>(&v_);
        if (!r || r->p != p) throw std::invalid_argument("field mismatch");
        return *r;
    }
    const mpq_class& rational_checked() const {
        auto q = std::get_if<mpq_class>(&v_);
        if (!q) throw std::invalid_argument("field mismatch");
        return *q;
    }

    static std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
        std::uint64_t acc = 1 % m;
        b %= m;
        while (e) {
            if (e & 1) acc = acc * b % m;
            b = b * b % m;
            e >>= 1;
        }
        return acc;
    }

    std::variant<mpq_class, Residue> v_;
};

}  // namespace invarank
