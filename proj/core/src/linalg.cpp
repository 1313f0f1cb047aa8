#include "kll/linalg.hpp"

#include "kll/error.hpp"

#include <algorithm>

namespace kll {

QMatrix identity_matrix(std::size_t n) {
    QMatrix m(n, QVector(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

QMatrix multiply(const QMatrix& a, const QMatrix& b) {
    if (a.empty()) return {};
    const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    if (a[0].size() != k) throw InvalidArgument("matrix shapes do not match");
    QMatrix c(n, QVector(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
        }
    return c;
}

QVector multiply(const QMatrix& a, const QVector& v) {
    QVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != v.size()) throw InvalidArgument("matrix-vector shapes do not match");
        for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
    }
    return r;
}

QMatrix transpose(const QMatrix& a) {
    if (a.empty()) return {};
    QMatrix t(a[0].size(), QVector(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[r]);
        const Rational inv = 1 / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c] == 0) continue;
            const Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

Rational determinant(QMatrix m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw InvalidArgument("determinant of a non-square matrix");
    Rational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return Rational(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            const Rational f = m[r][col] / m[col][col];
            for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

std::size_t rank(QMatrix m) {
    if (m.empty()) return 0;
    return rref(m, m[0].size()).size();
}

std::optional<QVector> solve(QMatrix a, QVector b) {
    if (a.size() != b.size()) throw InvalidArgument("solve: right-hand side has the wrong length");
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
    auto pivots = rref(a, cols + 1);
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    QVector x(cols);
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = a[i][cols];
    return x;
}

std::vector<QVector> nullspace(QMatrix a, std::size_t columns) {
    auto pivots = rref(a, columns);
    std::vector<bool> is_pivot(columns, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<QVector> basis;
    for (std::size_t free = 0; free < columns; ++free) {
        if (is_pivot[free]) continue;
        QVector v(columns);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Integer> primitive_integer_vector(const QVector& v) {
    Integer l(1), g(0);
    for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Integer> z;
    z.reserve(v.size());
    for (const auto& q : v) {
        Integer e = q.get_num() * (l / q.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
        z.push_back(e);
    }
    if (g == 0) return z;
    auto first = std::find_if(z.begin(), z.end(), [](const Integer& e) { return e != 0; });
    if (*first < 0) g = -g;
    for (auto& e : z) e /= g;
    return z;
}

QVector characteristic_polynomial(const QMatrix& m) {
    const std::size_t n = m.size();
    QVector c(n + 1);
    c[n] = 1;
    QMatrix mk(n, QVector(n));  // M_0 = 0
    for (std::size_t k = 1; k <= n; ++k) {
        // M_k = A M_{k-1} + c_{n-k+1} I;  c_{n-k} = -tr(A M_k) / k
        QMatrix next = multiply(m, mk);
        for (std::size_t i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
        mk = std::move(next);
        QMatrix am = multiply(m, mk);
        Rational tr(0);
        for (std::size_t i = 0; i < n; ++i) tr += am[i][i];
        c[n - k] = -tr / static_cast<long>(k);
    }
    return c;
}

std::size_t rank_mod_p(FpMatrix m, std::int64_t p) {
    if (m.empty()) return 0;
    const std::size_t cols = m[0].size();
    for (auto& row : m)
        for (auto& v : row) v = ((v % p) + p) % p;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t piv = r;
        while (piv < m.size() && m[piv][c] == 0) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[piv], m[r]);
        // inverse via Fermat; p is prime
        std::int64_t inv = 1, base = m[r][c];
        for (std::int64_t e = p - 2; e > 0; e >>= 1) {
            if (e & 1) inv = inv * base % p;
            base = base * base % p;
        }
        for (std::size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv % p;
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            if (m[i][c] == 0) continue;
            const std::int64_t f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] = ((m[i][j] - f * m[r][j]) % p + p) % p;
        }
        ++r;
    }
    return r;
}

std::size_t rank_mod_p(const ZMatrix& m, std::int64_t p) {
    FpMatrix f(m.size());
    const Integer P(static_cast<long>(p));
    for (std::size_t i = 0; i < m.size(); ++i) {
        f[i].reserve(m[i].size());
        for (const auto& z : m[i]) {
            Integer r;
            mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), P.get_mpz_t());
            f[i].push_back(r.get_si());
        }
    }
    return rank_mod_p(std::move(f), p);
}

std::vector<Integer> smith_invariants(ZMatrix m) {
    const std::size_t rows = m.size(), cols = rows == 0 ? 0 : m[0].size();
    std::vector<Integer> diag;
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // Pick the entry of least nonzero absolute value in the remaining block.
        std::size_t pr = rows, pc = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (m[i][j] != 0 && (pr == rows || abs(m[i][j]) < abs(m[pr][pc]))) {
                    pr = i;
                    pc = j;
                }
        if (pr == rows) break;
        std::swap(m[t], m[pr]);
        for (auto& row : m) std::swap(row[t], row[pc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), m[i][t].get_mpz_t(), m[t][t].get_mpz_t());
                for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) {
                    std::swap(m[t], m[i]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), m[t][j].get_mpz_t(), m[t][t].get_mpz_t());
                for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) {
                    for (auto& row : m) std::swap(row[t], row[j]);
                    clean = false;
                }
            }
            if (!clean) continue;
            // Divisibility: the pivot must divide every remaining entry.
            for (std::size_t i = t + 1; i < rows && clean; ++i)
                for (std::size_t j = t + 1; j < cols; ++j) {
                    Integer r;
                    mpz_fdiv_r(r.get_mpz_t(), m[i][j].get_mpz_t(), m[t][t].get_mpz_t());
                    if (r != 0) {
                        for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
                        clean = false;
                        break;
                    }
                }
        }
        diag.push_back(abs(m[t][t]));
        ++t;
    }
    return diag;
}

}  // namespace kll
