#pragma once

// Sparse multivariate polynomials over an exact field, with terms kept in
// descending graded-lexicographic order.

#include "invarank/field.hpp"

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace invarank {

using Exponent = std::vector<std::uint32_t>;

/// Graded lexicographic "greater than", so map iteration starts at the leading term.
struct GrlexGreater {
    bool operator()(const Exponent& a, const Exponent& b) const {
        auto da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
        auto db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
        if (da != db) return da > db;
        return a > b;
    }
};

class MultiPoly {
public:
    using Terms = std::map<Exponent, Scalar, GrlexGreater>;

    MultiPoly(const FieldSpec& field, std::size_t nvars) : field_(field), nvars_(nvars) {
        if (nvars == 0) throw std::invalid_argument("polynomial needs at least one variable");
    }

    static MultiPoly constant(const FieldSpec& field, std::size_t nvars, const Scalar& c) {
        MultiPoly p(field, nvars);
        p.add_term(Exponent(nvars, 0), c);
        return p;
    }

    static MultiPoly variable(const FieldSpec& field, std::size_t nvars, std::size_t var) {
        if (var >= nvars) throw std::out_of_range("variable index out of range");
        Exponent e(nvars, 0);
        e[var] = 1;
        MultiPoly p(field, nvars);
        p.add_term(e, Scalar::one(field));
        return p;
    }

    /// Sum of coeffs[i] * x_i.
    static MultiPoly linear_form(const FieldSpec& field, const std::vector<Scalar>& coeffs) {
        MultiPoly p(field, coeffs.size());
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            Exponent e(coeffs.size(), 0);
            e[i] = 1;
            p.add_term(e, coeffs[i]);
        }
        return p;
    }

    /// Adds c * x^e, dropping the term if it cancels.
    void add_term(const Exponent& e, const Scalar& c) {
        if (e.size() != nvars_) throw std::invalid_argument("exponent length does not match nvars");
        if (c.field() != field_) throw std::invalid_argument("field mismatch");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    const FieldSpec& field() const { return field_; }
    std::size_t nvars() const { return nvars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    std::uint64_t total_degree() const {
        if (terms_.empty()) return 0;
        const auto& e = terms_.begin()->first;
        return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        require_compatible(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        require_compatible(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    MultiPoly& operator*=(const Scalar& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(MultiPoly a, const Scalar& s) { return a *= s; }
    friend MultiPoly operator*(const Scalar& s, MultiPoly a) { return a *= s; }
    friend MultiPoly operator-(MultiPoly a) { return a *= -Scalar::one(a.field_); }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.require_compatible(b);
        MultiPoly out(a.field_, a.nvars_);
        Exponent e(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        return out;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.field_ == b.field_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    /// Formal partial derivative; the exponent is reduced into the field, so
    /// in characteristic p the multiples of p vanish.
    MultiPoly diff(std::size_t var) const {
        if (var >= nvars_) throw std::out_of_range("variable index out of range");
        MultiPoly out(field_, nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponent d = e;
            --d[var];
            out.add_term(d, c * Scalar::from_int(field_, static_cast<long>(e[var])));
        }
        return out;
    }

    Scalar eval(const std::vector<Scalar>& point) const {
        if (point.size() != nvars_) throw std::invalid_argument("evaluation point has wrong length");
        Scalar total = Scalar::zero(field_);
        // Powers are cached per variable up to the largest exponent seen.
        std::vector<std::vector<Scalar>> powers(nvars_);
        for (const auto& [e, c] : terms_) {
            Scalar term = c;
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (e[i] == 0) continue;
                auto& pw = powers[i];
                if (pw.empty()) pw.push_back(Scalar::one(field_));
                while (pw.size() <= e[i]) pw.push_back(pw.back() * point[i]);
                term *= pw[e[i]];
            }
            total += term;
        }
        return total;
    }

    /// Exact quotient a / b; throws if b does not divide a.
    friend MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b) {
        a.require_compatible(b);
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        MultiPoly q(a.field_, a.nvars_);
        MultiPoly r = a;
        const auto& [lb_exp, lb_coef] = *b.terms_.begin();
        Scalar lb_inv = lb_coef.inverse();
        while (!r.is_zero()) {
            const auto& [lr_exp, lr_coef] = *r.terms_.begin();
            Exponent t(a.nvars_);
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (lr_exp[i] < lb_exp[i]) throw std::domain_error("inexact polynomial division");
                t[i] = lr_exp[i] - lb_exp[i];
            }
            Scalar c = lr_coef * lb_inv;
            q.add_term(t, c);
            MultiPoly step(a.field_, a.nvars_);
            Exponent e(a.nvars_);
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = eb[i] + t[i];
                step.add_term(e, cb * c);
            }
            r -= step;
        }
        return q;
    }

    /// Human-readable form, e.g. "2*x1^2*x2 - x3"; names default to x1..xn.
    std::string to_string(const std::vector<std::string>& names = {}) const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            std::string coef = c.to_string();
            bool negative = field_.is_rational() && coef[0] == '-';
            if (negative) coef.erase(0, 1);
            out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
            first = false;
            std::string mono;
            for (std::size_t i = 0; i < nvars_; ++i) {
                if (e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += i < names.size() ? names[i] : "x" + std::to_string(i + 1);
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
            if (mono.empty())
                out += coef;
            else if (coef == "1")
                out += mono;
            else
                out += coef + "*" + mono;
        }
        return out;
    }

private:
    void require_compatible(const MultiPoly& o) const {
        if (field_ != o.field_) throw std::invalid_argument("field mismatch");
        if (nvars_ != o.nvars_) throw std::invalid_argument("variable count mismatch");
    }

    FieldSpec field_;
    std::size_t nvars_;
    Terms terms_;
};

inline MultiPoly poly_diff(const MultiPoly& p, std::size_t var) { return p.diff(var); }
inline Scalar poly_eval(const MultiPoly& p, const std::vector<Scalar>& point) { return p.eval(point); }

}  // namespace invarank
