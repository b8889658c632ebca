#include "subdyn/matrix.hpp"

#include "subdyn/gcd.hpp"

namespace subdyn {

Scalar det_field(std::vector<std::vector<Scalar>> m, const FieldPtr& field) {
    const std::size_t n = m.size();
    if (n == 0) return Scalar::one(field);
    Scalar det = Scalar::one(field);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col].is_zero()) ++piv;
        if (piv == n) return Scalar::zero(field);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det = det * m[col][col];
        Scalar inv = m[col][col].inverse();
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero()) continue;
            Scalar factor = m[r][col] * inv;
            for (std::size_t c = col; c < n; ++c)
                m[r][c] = m[r][c] - factor * m[col][c];
        }
    }
    return det;
}

Polynomial det_bareiss(std::vector<std::vector<Polynomial>> m, const RingPtr& ring) {
    const std::size_t n = m.size();
    if (n == 0) return Polynomial::constant(ring, 1);
    Polynomial prev = Polynomial::constant(ring, 1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k].is_zero()) ++piv;
        if (piv == n) return Polynomial::zero(ring);
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Polynomial t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = prev.is_constant() && prev.constant_value().is_one()
                              ? std::move(t)
                              : exact_divide(t, prev);
            }
            m[i][k] = Polynomial::zero(ring);
        }
        prev = m[k][k];
    }
    Polynomial det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

} // namespace subdyn
