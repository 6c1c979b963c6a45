#pragma once

// Representation expressions (V, duals, sums, tensors, Sym^k, Ext^k) and the
// induced action of Lie algebra and group elements on them.
//
// Grammar:
//   expr   := term ('+' term)*
//   term   := factor ('*' factor)*
//   factor := ('V' | 'S'k'(' expr ')' | 'E'k'(' expr ')' | '(' expr ')') '*'*
// A '*' followed by the start of another factor is a tensor product; any
// other '*' after a factor takes the dual.
//
// Bases: Sym^k uses orbit sums of v_{i1} (x) ... (x) v_{ik} over distinct
// permutations, i1 <= ... <= ik; Ext^k uses wedges i1 < ... < ik. Both are
// ordered lexicographically. Sums concatenate coordinates left to right and
// tensor products are ordered with the left factor major.

#include "invarank/matrix.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace invarank {

class RepNode;
using RepExpr = std::shared_ptr<const RepNode>;

class RepNode {
public:
    enum class Kind { Standard, Dual, Sum, Tensor, Sym, Ext };

    Kind kind;
    unsigned power = 0;  // Sym / Ext only
    RepExpr lhs;
    RepExpr rhs;

    static RepExpr standard() { return std::make_shared<RepNode>(RepNode{Kind::Standard, 0, nullptr, nullptr}); }
    static RepExpr dual(RepExpr e) { return std::make_shared<RepNode>(RepNode{Kind::Dual, 0, std::move(e), nullptr}); }
    static RepExpr sum(RepExpr a, RepExpr b) {
        return std::make_shared<RepNode>(RepNode{Kind::Sum, 0, std::move(a), std::move(b)});
    }
    static RepExpr tensor(RepExpr a, RepExpr b) {
        return std::make_shared<RepNode>(RepNode{Kind::Tensor, 0, std::move(a), std::move(b)});
    }
    static RepExpr sym(unsigned k, RepExpr e) {
        if (k == 0) throw std::invalid_argument("symmetric power must be positive");
        return std::make_shared<RepNode>(RepNode{Kind::Sym, k, std::move(e), nullptr});
    }
    static RepExpr ext(unsigned k, RepExpr e) {
        if (k == 0) throw std::invalid_argument("exterior power must be positive");
        return std::make_shared<RepNode>(RepNode{Kind::Ext, k, std::move(e), nullptr});
    }
};

class RepParseError : public std::invalid_argument {
public:
    RepParseError(const std::string& msg, std::size_t pos)
        : std::invalid_argument("rep expression: " + msg + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

namespace detail {

class RepParser {
public:
    explicit RepParser(std::string_view src) : src_(src) {}

    RepExpr parse() {
        RepExpr e = expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'");
        return e;
    }

private:
    RepExpr expr() {
        RepExpr e = term();
        while (peek() == '+') {
            ++pos_;
            e = RepNode::sum(e, term());
        }
        return e;
    }

    RepExpr term() {
        RepExpr e = factor();
        while (peek() == '*' && starts_factor_after_star()) {
            ++pos_;
            e = RepNode::tensor(e, factor());
        }
        return e;
    }

    RepExpr factor() {
        RepExpr e;
        char c = peek();
        std::size_t at = pos_;
        if (c == 'V') {
            ++pos_;
            e = RepNode::standard();
        } else if (c == 'S' || c == 'E') {
            ++pos_;
            unsigned k = power(at);
            expect('(');
            RepExpr inner = expr();
            expect(')');
            e = c == 'S' ? RepNode::sym(k, inner) : RepNode::ext(k, inner);
        } else if (c == '(') {
            ++pos_;
            e = expr();
            expect(')');
        } else {
            fail(c == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, c) + "'");
        }
        while (peek() == '*' && !starts_factor_after_star()) {
            ++pos_;
            e = RepNode::dual(e);
        }
        return e;
    }

    unsigned power(std::size_t at) {
        std::size_t start = pos_;
        unsigned long k = 0;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            k = k * 10 + static_cast<unsigned long>(src_[pos_] - '0');
            if (k > 1000) fail("power too large");
            ++pos_;
        }
        if (pos_ == start) fail("expected a power after '" + std::string(1, src_[at]) + "'");
        if (k == 0) {
            pos_ = start;
            fail("power must be positive");
        }
        return static_cast<unsigned>(k);
    }

    bool starts_factor_after_star() {
        std::size_t save = pos_;
        ++pos_;
        char c = peek();
        pos_ = save;
        return c == 'V' || c == 'S' || c == 'E' || c == '(';
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) { throw RepParseError(msg, pos_); }

    std::string_view src_;
    std::size_t pos_ = 0;
};

inline std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Sorted k-tuples over {0..d-1}: non-decreasing for Sym, increasing for Ext.
inline std::vector<std::vector<std::size_t>> index_tuples(std::size_t d, std::size_t k, bool strict) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < d; ++i) {
            cur.push_back(i);
            self(self, strict ? i + 1 : i);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline std::map<std::vector<std::size_t>, std::size_t> index_of(const std::vector<std::vector<std::size_t>>& tuples) {
    std::map<std::vector<std::size_t>, std::size_t> idx;
    for (std::size_t i = 0; i < tuples.size(); ++i) idx[tuples[i]] = i;
    return idx;
}

inline std::string wrap_label(const std::string& s) {
    return s.find_first_of(".^@*") == std::string::npos ? s : "(" + s + ")";
}

/// Sym^k of a linear map, in the orbit-sum basis. With `derivation` the
/// Leibniz extension is taken, otherwise the tensor power.
inline Matrix sym_action(const Matrix& x, unsigned k, bool derivation) {
    const std::size_t d = x.rows();
    auto tuples = index_tuples(d, k, false);
    const auto& f = x.field();
    Matrix out(f, tuples.size(), tuples.size());
    // Coefficient of orbit(m) in x.orbit(w) equals the coefficient of the
    // pure tensor m, summed over the distinct arrangements a of w.
    for (std::size_t col = 0; col < tuples.size(); ++col) {
        for (std::size_t row = 0; row < tuples.size(); ++row) {
            const auto& m = tuples[row];
            auto a = tuples[col];
            Scalar acc = Scalar::zero(f);
            do {
                if (derivation) {
                    std::size_t mismatches = 0, at = 0;
                    for (std::size_t p = 0; p < k; ++p)
                        if (m[p] != a[p]) {
                            ++mismatches;
                            at = p;
                        }
                    if (mismatches == 0) {
                        for (std::size_t p = 0; p < k; ++p) acc += x(m[p], m[p]);
                    } else if (mismatches == 1) {
                        acc += x(m[at], a[at]);
                    }
                } else {
                    Scalar prod = Scalar::one(f);
                    for (std::size_t p = 0; p < k && !prod.is_zero(); ++p) prod *= x(m[p], a[p]);
                    acc += prod;
                }
            } while (std::next_permutation(a.begin(), a.end()));
            out(row, col) = acc;
        }
    }
    return out;
}

/// Ext^k of a linear map in the wedge basis.
inline Matrix ext_action(const Matrix& x, unsigned k, bool derivation) {
    const std::size_t d = x.rows();
    auto tuples = index_tuples(d, k, true);
    const auto& f = x.field();
    if (tuples.empty()) throw std::invalid_argument("exterior power exceeds dimension");
    Matrix out(f, tuples.size(), tuples.size());
    for (std::size_t col = 0; col < tuples.size(); ++col) {
        const auto& w = tuples[col];
        for (std::size_t row = 0; row < tuples.size(); ++row) {
            const auto& m = tuples[row];
            if (derivation) {
                // Nonzero only when m and w differ in at most one index.
                std::vector<std::size_t> only_m, only_w;
                std::set_difference(m.begin(), m.end(), w.begin(), w.end(), std::back_inserter(only_m));
                std::set_difference(w.begin(), w.end(), m.begin(), m.end(), std::back_inserter(only_w));
                if (only_m.empty()) {
                    Scalar acc = Scalar::zero(f);
                    for (auto i : m) acc += x(i, i);
                    out(row, col) = acc;
                } else if (only_m.size() == 1) {
                    auto pm = std::find(m.begin(), m.end(), only_m[0]) - m.begin();
                    auto pw = std::find(w.begin(), w.end(), only_w[0]) - w.begin();
                    Scalar v = x(only_m[0], only_w[0]);
                    out(row, col) = (pm + pw) % 2 == 0 ? v : -v;
                }
            } else {
                Matrix minor(f, k, k);
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) minor(i, j) = x(m[i], w[j]);
                out(row, col) = determinant(minor);
            }
        }
    }
    return out;
}

inline Matrix induced(const RepExpr& e, const Matrix& x, bool derivation) {
    using K = RepNode::Kind;
    switch (e->kind) {
        case K::Standard: return x;
        case K::Dual: {
            Matrix inner = induced(e->lhs, x, derivation);
            if (derivation) return -inner.transpose();
            auto inv = inverse(inner);
            if (!inv) throw std::invalid_argument("singular group element");
            return inv->transpose();
        }
        case K::Sum: return block_diagonal(induced(e->lhs, x, derivation), induced(e->rhs, x, derivation));
        case K::Tensor: {
            Matrix a = induced(e->lhs, x, derivation);
            Matrix b = induced(e->rhs, x, derivation);
            if (!derivation) return kronecker(a, b);
            return kronecker(a, Matrix::identity(x.field(), b.rows())) +
                   kronecker(Matrix::identity(x.field(), a.rows()), b);
        }
        case K::Sym: return sym_action(induced(e->lhs, x, derivation), e->power, derivation);
        case K::Ext: return ext_action(induced(e->lhs, x, derivation), e->power, derivation);
    }
    throw std::logic_error("unknown rep node");
}

}  // namespace detail

inline RepExpr parse_rep(std::string_view src) { return detail::RepParser(src).parse(); }

/// Canonical text form; parse_rep(rep_to_string(e)) reproduces e.
inline std::string rep_to_string(const RepExpr& e) {
    using K = RepNode::Kind;
    switch (e->kind) {
        case K::Standard: return "V";
        case K::Dual: {
            auto inner = rep_to_string(e->lhs);
            bool atom = e->lhs->kind != K::Sum && e->lhs->kind != K::Tensor;
            return (atom ? inner : "(" + inner + ")") + "*";
        }
        case K::Sum: return rep_to_string(e->lhs) + " + " + rep_to_string(e->rhs);
        case K::Tensor: {
            auto side = [](const RepExpr& s) {
                auto t = rep_to_string(s);
                return s->kind == K::Sum ? "(" + t + ")" : t;
            };
            return side(e->lhs) + " * " + side(e->rhs);
        }
        case K::Sym: return "S" + std::to_string(e->power) + "(" + rep_to_string(e->lhs) + ")";
        case K::Ext: return "E" + std::to_string(e->power) + "(" + rep_to_string(e->lhs) + ")";
    }
    return "?";
}

inline std::size_t rep_dim(const RepExpr& e, std::size_t n) {
    if (n < 1) throw std::invalid_argument("rep_dim needs n >= 1");
    using K = RepNode::Kind;
    switch (e->kind) {
        case K::Standard: return n;
        case K::Dual: return rep_dim(e->lhs, n);
        case K::Sum: return rep_dim(e->lhs, n) + rep_dim(e->rhs, n);
        case K::Tensor: return rep_dim(e->lhs, n) * rep_dim(e->rhs, n);
        case K::Sym: return detail::binomial(rep_dim(e->lhs, n) + e->power - 1, e->power);
        case K::Ext: return detail::binomial(rep_dim(e->lhs, n), e->power);
    }
    return 0;
}

struct RepBasis {
    RepExpr expr;
    std::size_t n;
    std::size_t dim;
    std::vector<std::string> labels;
};

/// Basis labels: "v1", "v1*", "v1.v2" (Sym), "v1^v2" (Ext), "v1@v2" (tensor).
inline std::vector<std::string> rep_labels(const RepExpr& e, std::size_t n) {
    using K = RepNode::Kind;
    std::vector<std::string> out;
    switch (e->kind) {
        case K::Standard:
            for (std::size_t i = 1; i <= n; ++i) out.push_back("v" + std::to_string(i));
            break;
        case K::Dual:
            for (auto& l : rep_labels(e->lhs, n)) out.push_back(detail::wrap_label(l) + "*");
            break;
        case K::Sum: {
            out = rep_labels(e->lhs, n);
            auto r = rep_labels(e->rhs, n);
            out.insert(out.end(), r.begin(), r.end());
            break;
        }
        case K::Tensor: {
            auto a = rep_labels(e->lhs, n), b = rep_labels(e->rhs, n);
            for (auto& x : a)
                for (auto& y : b) out.push_back(detail::wrap_label(x) + "@" + detail::wrap_label(y));
            break;
        }
        case K::Sym:
        case K::Ext: {
            auto inner = rep_labels(e->lhs, n);
            bool ext = e->kind == K::Ext;
            for (auto& t : detail::index_tuples(inner.size(), e->power, ext)) {
                std::string s;
                for (auto i : t) s += (s.empty() ? "" : (ext ? "^" : ".")) + detail::wrap_label(inner[i]);
                out.push_back(s);
            }
            break;
        }
    }
    return out;
}

inline RepBasis rep_basis(const RepExpr& e, std::size_t n) {
    auto labels = rep_labels(e, n);
    return {e, n, labels.size(), std::move(labels)};
}

/// The Lie algebra action rho_*(a) on the representation space.
inline Matrix induced_derivative_action(const RepExpr& e, const Matrix& a) {
    a.require_square("induced_derivative_action");
    return detail::induced(e, a, true);
}

/// The group action rho(g); g must be invertible.
inline Matrix induced_group_action(const RepExpr& e, const Matrix& g) {
    g.require_square("induced_group_action");
    if (determinant(g).is_zero()) throw std::invalid_argument("singular group element");
    return detail::induced(e, g, false);
}

}  // namespace invarank
