#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wb/error.hpp"
#include "wb/exact/number_theory.hpp"
#include "wb/exact/qpolynomial.hpp"

namespace wb {

/// Inverse of a diagonal entry, if it is a unit of the entry ring.
inline std::optional<Rational> unit_inverse(const Rational& x) {
    if (x == 0) return std::nullopt;
    return Rational(1) / x;
}

inline std::optional<QPolynomial> unit_inverse(const QPolynomial& x) {
    if (x.is_zero() || !x.is_constant()) return std::nullopt;
    return QPolynomial(Rational(1) / x.coeff(0));
}

/// Square upper-triangular matrix with labelled rows/columns.
template <class T>
class UniTriMatrix {
public:
    UniTriMatrix() = default;
    explicit UniTriMatrix(std::vector<std::string> labels)
        : labels_(std::move(labels)), e_(labels_.size(), std::vector<T>(labels_.size(), T(0))) {}

    static UniTriMatrix identity(std::vector<std::string> labels) {
        UniTriMatrix m(std::move(labels));
        for (std::size_t i = 0; i < m.size(); ++i) m.e_[i][i] = T(1);
        return m;
    }

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const T& operator()(std::size_t i, std::size_t j) const { return e_[i][j]; }

    void set(std::size_t i, std::size_t j, T v) {
        if (i > j && !(v == T(0))) fail(ErrorKind::InvalidArgument, "entry below the diagonal");
        e_[i][j] = std::move(v);
    }

    /// Back-substitution, column by column: N = M^{-1}.
    UniTriMatrix inverse() const {
        const std::size_t n = size();
        std::vector<T> dinv;
        dinv.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            auto inv = unit_inverse(e_[i][i]);
            if (!inv) fail(ErrorKind::NonInvertibleDiagonal, "diagonal entry at '" + labels_[i] + "' is not a unit");
            dinv.push_back(*inv);
        }
        UniTriMatrix r(labels_);
        for (std::size_t j = 0; j < n; ++j) {
            r.e_[j][j] = dinv[j];
            for (std::size_t i = j; i-- > 0;) {
                T acc(0);
                for (std::size_t k = i + 1; k <= j; ++k) {
                    if (e_[i][k] == T(0) || r.e_[k][j] == T(0)) continue;
                    acc += e_[i][k] * r.e_[k][j];
                }
                r.e_[i][j] = -(acc * dinv[i]);
            }
        }
        return r;
    }

    friend UniTriMatrix operator*(const UniTriMatrix& a, const UniTriMatrix& b) {
        UniTriMatrix r(a.labels_);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = i; j < a.size(); ++j) {
                T acc(0);
                for (std::size_t k = i; k <= j; ++k) acc += a.e_[i][k] * b.e_[k][j];
                r.e_[i][j] = acc;
            }
        return r;
    }

    friend bool operator==(const UniTriMatrix& a, const UniTriMatrix& b) { return a.e_ == b.e_; }

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<T>> e_;
};

/// Convenience wrapper matching the operation name used elsewhere.
template <class T>
UniTriMatrix<T> invert_unitriangular(const UniTriMatrix<T>& m) {
    return m.inverse();
}

} // namespace wb
