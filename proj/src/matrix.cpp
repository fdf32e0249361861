#include "filn/matrix.hpp"

#include <algorithm>
#include <cassert>

#include "filn/error.hpp"

namespace filn {

Mat Mat::identity(size_t k) {
    Mat m(k, k);
    for (size_t i = 0; i < k; ++i) m.at(i, i) = Scalar(Rational(1));
    return m;
}

Mat Mat::transpose() const {
    Mat r(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) raise(ErrorKind::DimensionMismatch, "matrix product shape");
    Mat r(a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) {
            Scalar s;
            for (size_t k = 0; k < a.cols(); ++k) s += a.at(i, k) * b.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

Mat operator+(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        raise(ErrorKind::DimensionMismatch, "matrix sum shape");
    Mat r(a.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
    return r;
}

Mat operator-(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        raise(ErrorKind::DimensionMismatch, "matrix difference shape");
    Mat r(a.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) - b.at(i, j);
    return r;
}

Mat Mat::scaled(const Scalar& c) const {
    Mat r(rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.at(i, j) = at(i, j) * c;
    return r;
}

bool operator==(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            if (a.at(i, j) != b.at(i, j)) return false;
    return true;
}

Scalar Mat::trace() const {
    Scalar s;
    for (size_t i = 0; i < std::min(rows_, cols_); ++i) s += at(i, i);
    return s;
}

size_t rref(Mat& m) {
    size_t rank = 0;
    for (size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        size_t pivot = rank;
        while (pivot < m.rows() && m.at(pivot, col).is_zero()) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != rank)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(rank, j));
        Scalar inv = m.at(rank, col).inverse();
        for (size_t j = col; j < m.cols(); ++j) m.at(rank, j) = m.at(rank, j) * inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == rank || m.at(i, col).is_zero()) continue;
            Scalar f = m.at(i, col);
            for (size_t j = col; j < m.cols(); ++j)
                m.at(i, j) = m.at(i, j) - f * m.at(rank, j);
        }
        ++rank;
    }
    return rank;
}

size_t rank(Mat m) { return rref(m); }

std::vector<std::vector<Scalar>> nullspace(const Mat& m) {
    Mat r = m;
    rref(r);
    std::vector<long> pivot_of_col(m.cols(), -1);
    size_t row = 0;
    for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        if (!r.at(row, col).is_zero()) {
            pivot_of_col[col] = static_cast<long>(row);
            ++row;
        }
    }
    std::vector<std::vector<Scalar>> basis;
    for (size_t col = 0; col < m.cols(); ++col) {
        if (pivot_of_col[col] != -1) continue;
        std::vector<Scalar> v(m.cols());
        v[col] = Scalar(Rational(1));
        for (size_t c = 0; c < m.cols(); ++c)
            if (pivot_of_col[c] != -1)
                v[c] = -r.at(static_cast<size_t>(pivot_of_col[c]), col);
        basis.push_back(std::move(v));
    }
    return echelonize(std::move(basis));
}

std::vector<std::vector<Scalar>> echelonize(std::vector<std::vector<Scalar>> rows) {
    if (rows.empty()) return rows;
    Mat m(rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
    size_t rk = rref(m);
    std::vector<std::vector<Scalar>> out;
    out.reserve(rk);
    for (size_t i = 0; i < rk; ++i) {
        std::vector<Scalar> row(m.cols());
        for (size_t j = 0; j < m.cols(); ++j) row[j] = m.at(i, j);
        out.push_back(std::move(row));
    }
    return out;
}

namespace {

struct ClearedMat {
    std::vector<std::vector<Poly>> p;
    Poly scaling; // product of all row multipliers
};

// Clears denominators row by row so Bareiss runs over the polynomial ring.
ClearedMat clear_denominators(const Mat& m, const std::vector<Scalar>* rhs) {
    size_t n = m.rows();
    size_t cols = m.cols() + (rhs ? 1 : 0);
    ClearedMat out;
    out.p.assign(n, std::vector<Poly>(cols));
    out.scaling = Poly::constant(Rational(1));
    for (size_t i = 0; i < n; ++i) {
        Poly d = Poly::constant(Rational(1));
        for (size_t j = 0; j < m.cols(); ++j) d = d * m.at(i, j).den();
        if (rhs) d = d * (*rhs)[i].den();
        for (size_t j = 0; j < m.cols(); ++j)
            out.p[i][j] = m.at(i, j).num() * Poly::divexact(d, m.at(i, j).den());
        if (rhs) out.p[i][m.cols()] = (*rhs)[i].num() * Poly::divexact(d, (*rhs)[i].den());
        out.scaling = out.scaling * d;
    }
    return out;
}

// Fraction-free Bareiss forward elimination (in place); returns the sign of
// the row permutation, or 0 when the leading square block is singular.
int bareiss_eliminate(std::vector<std::vector<Poly>>& p, size_t n) {
    int sign = 1;
    Poly prev = Poly::constant(Rational(1));
    for (size_t step = 0; step < n; ++step) {
        size_t pivot = step;
        while (pivot < n && p[pivot][step].is_zero()) ++pivot;
        if (pivot == n) return 0;
        if (pivot != step) {
            std::swap(p[pivot], p[step]);
            sign = -sign;
        }
        size_t cols = p[step].size();
        for (size_t i = step + 1; i < n; ++i) {
            for (size_t j = step + 1; j < cols; ++j)
                p[i][j] = Poly::divexact(p[step][step] * p[i][j] - p[i][step] * p[step][j], prev);
            p[i][step] = Poly();
        }
        prev = p[step][step];
    }
    return sign;
}

} // namespace

Scalar det(const Mat& m) {
    if (m.rows() != m.cols()) raise(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
    size_t n = m.rows();
    if (n == 0) return Scalar(Rational(1));
    ClearedMat cm = clear_denominators(m, nullptr);
    int sign = bareiss_eliminate(cm.p, n);
    if (sign == 0) return Scalar();
    Poly d = cm.p[n - 1][n - 1];
    if (sign < 0) d = -d;
    return Scalar::of(d, cm.scaling);
}

std::vector<Scalar> solve(const Mat& A, const std::vector<Scalar>& b) {
    if (A.rows() != A.cols() || b.size() != A.rows())
        raise(ErrorKind::DimensionMismatch, "solve shape");
    size_t n = A.rows();
    ClearedMat cm = clear_denominators(A, &b);
    int sign = bareiss_eliminate(cm.p, n);
    if (sign == 0) raise(ErrorKind::SingularMatrix, "singular system");
    std::vector<Scalar> x(n);
    for (size_t ii = n; ii-- > 0;) {
        Scalar acc = Scalar(Poly(cm.p[ii][n]));
        for (size_t j = ii + 1; j < n; ++j) acc -= Scalar(cm.p[ii][j]) * x[j];
        x[ii] = acc / Scalar(cm.p[ii][ii]);
    }
    return x;
}

Mat inverse(const Mat& A) {
    if (A.rows() != A.cols()) raise(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
    size_t n = A.rows();
    Mat inv(n, n);
    for (size_t c = 0; c < n; ++c) {
        std::vector<Scalar> e(n);
        e[c] = Scalar(Rational(1));
        std::vector<Scalar> x = solve(A, e);
        for (size_t i = 0; i < n; ++i) inv.at(i, c) = x[i];
    }
    return inv;
}

std::vector<Scalar> charpoly(const Mat& A) {
    if (A.rows() != A.cols()) raise(ErrorKind::DimensionMismatch, "charpoly of non-square matrix");
    size_t k = A.rows();
    std::vector<Scalar> c(k + 1);
    c[k] = Scalar(Rational(1));
    if (k == 0) return c;
    // Faddeev-LeVerrier: only divisions by integers occur.
    Mat M = A;
    Scalar ci = -M.trace();
    c[k - 1] = ci;
    for (size_t i = 2; i <= k; ++i) {
        Mat Mi = M + Mat::identity(k).scaled(ci);
        M = A * Mi;
        ci = -(M.trace() / Scalar(Rational(static_cast<long>(i))));
        c[k - i] = ci;
    }
    return c;
}

Subspace Subspace::full(size_t ambient) {
    Subspace s;
    s.ambient = ambient;
    for (size_t i = 0; i < ambient; ++i) {
        std::vector<Scalar> row(ambient);
        row[i] = Scalar(Rational(1));
        s.basis.push_back(std::move(row));
    }
    return s;
}

Subspace Subspace::of(size_t ambient, std::vector<std::vector<Scalar>> spanning) {
    Subspace s;
    s.ambient = ambient;
    s.basis = echelonize(std::move(spanning));
    return s;
}

bool Subspace::contains(const std::vector<Scalar>& v) const {
    std::vector<Scalar> r = v;
    for (const auto& row : basis) {
        size_t lead = 0;
        while (lead < row.size() && row[lead].is_zero()) ++lead;
        if (lead == row.size()) continue;
        if (r[lead].is_zero()) continue;
        Scalar f = r[lead]; // pivot of an RREF row is 1
        for (size_t j = 0; j < r.size(); ++j) r[j] = r[j] - f * row[j];
    }
    for (const auto& x : r)
        if (!x.is_zero()) return false;
    return true;
}

bool Subspace::contains(const Subspace& other) const {
    for (const auto& row : other.basis)
        if (!contains(row)) return false;
    return true;
}

Subspace Subspace::intersect_kernel(const Mat& M) const {
    if (M.cols() != ambient) raise(ErrorKind::DimensionMismatch, "intersect_kernel shape");
    size_t r = basis.size();
    if (r == 0) return *this;
    // Columns of C express M applied to the basis rows; kernel vectors give
    // the coefficient combinations that stay inside ker M.
    Mat C(M.rows(), r);
    for (size_t i = 0; i < M.rows(); ++i)
        for (size_t j = 0; j < r; ++j) {
            Scalar s;
            for (size_t l = 0; l < ambient; ++l) s += M.at(i, l) * basis[j][l];
            C.at(i, j) = s;
        }
    auto combos = nullspace(C);
    std::vector<std::vector<Scalar>> rows;
    for (const auto& y : combos) {
        std::vector<Scalar> v(ambient);
        for (size_t j = 0; j < r; ++j)
            for (size_t l = 0; l < ambient; ++l) v[l] += y[j] * basis[j][l];
        rows.push_back(std::move(v));
    }
    return Subspace::of(ambient, std::move(rows));
}

namespace {

Scalar horner(const std::vector<Scalar>& coeffs, const Scalar& x) {
    Scalar acc;
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

// Divides by (lambda - root); remainder must vanish.
std::vector<Scalar> deflate(const std::vector<Scalar>& coeffs, const Scalar& root) {
    size_t d = coeffs.size() - 1;
    std::vector<Scalar> q(d);
    Scalar carry = coeffs[d];
    for (size_t i = d; i-- > 0;) {
        q[i] = carry;
        carry = coeffs[i] + carry * root;
    }
    if (!carry.is_zero()) raise(ErrorKind::Internal, "deflate: not a root");
    return q;
}

long sdeg(const std::vector<Scalar>& c) {
    for (size_t i = c.size(); i-- > 0;)
        if (!c[i].is_zero()) return static_cast<long>(i);
    return -1;
}

// Monic Euclid over the scalar field (used for the squarefree test).
std::vector<Scalar> univar_gcd(std::vector<Scalar> a, std::vector<Scalar> b) {
    auto trim = [](std::vector<Scalar>& v) { v.resize(static_cast<size_t>(sdeg(v) + 1)); };
    trim(a);
    trim(b);
    if (a.empty()) return b;
    if (b.empty()) return a;
    while (!b.empty()) {
        long da = sdeg(a), db = sdeg(b);
        if (da < db) { std::swap(a, b); continue; }
        // a -= lc(a)/lc(b) * x^(da-db) * b
        Scalar f = a[static_cast<size_t>(da)] / b[static_cast<size_t>(db)];
        for (long i = 0; i <= db; ++i)
            a[static_cast<size_t>(da - db + i)] -= f * b[static_cast<size_t>(i)];
        a[static_cast<size_t>(da)] = Scalar();
        trim(a);
        if (sdeg(a) < sdeg(b)) std::swap(a, b);
    }
    return a;
}

bool factorize(mpz_class n, std::vector<std::pair<mpz_class, unsigned>>& out) {
    n = abs(n);
    if (n == 0) return false;
    for (mpz_class p = 2; p * p <= n && p < 1000000; p == 2 ? p = 3 : p += 2) {
        unsigned e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e) out.push_back({p, e});
    }
    if (n > 1) {
        if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0) return false;
        out.push_back({n, 1});
    }
    return true;
}

bool divisors_of(const mpz_class& n, std::vector<mpz_class>& out) {
    std::vector<std::pair<mpz_class, unsigned>> f;
    if (!factorize(n, f)) return false;
    out = {mpz_class(1)};
    for (const auto& [p, e] : f) {
        size_t base = out.size();
        mpz_class pw = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pw *= p;
            for (size_t j = 0; j < base; ++j) out.push_back(out[j] * pw);
            if (out.size() > 10000) return false;
        }
    }
    return true;
}

// Rational roots of a polynomial with rational coefficients.
bool rational_case_roots(const std::vector<Rational>& coeffs, std::vector<Rational>& roots_out) {
    // Clear denominators.
    mpz_class scale = 1;
    for (const auto& c : coeffs) scale = scale / gcd(scale, c.den()) * c.den();
    std::vector<mpz_class> z(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i)
        z[i] = coeffs[i].num() * (scale / coeffs[i].den());
    size_t lo = 0;
    while (lo < z.size() && z[lo] == 0) ++lo;
    assert(lo < z.size());
    std::vector<mpz_class> ps, qs;
    if (!divisors_of(z[lo], ps) || !divisors_of(z.back(), qs)) return false;
    auto is_root = [&](const Rational& r) {
        Rational acc(0);
        for (size_t i = z.size(); i-- > lo;) acc = acc * r + Rational(z[i]);
        return acc.is_zero();
    };
    for (const auto& p : ps)
        for (const auto& q : qs) {
            Rational cand(p, q);
            if (is_root(cand)) roots_out.push_back(cand);
            cand = -cand;
            if (is_root(cand)) roots_out.push_back(cand);
        }
    std::sort(roots_out.begin(), roots_out.end());
    roots_out.erase(std::unique(roots_out.begin(), roots_out.end()), roots_out.end());
    return true;
}

} // namespace

RootExtraction rational_roots(const std::vector<Scalar>& coeffs_in) {
    RootExtraction out;
    std::vector<Scalar> c = coeffs_in;
    long d = sdeg(c);
    if (d <= 0) {
        out.split = true;
        return out;
    }
    c.resize(static_cast<size_t>(d) + 1);

    // Root candidates. For rational coefficients the classic p/q enumeration
    // applies; with parameters present, a constant root must be a common
    // rational root of every parameter-monomial slice.
    bool all_rational = true;
    for (const auto& s : c)
        if (!s.is_rational()) { all_rational = false; break; }

    std::vector<Rational> candidates;
    if (all_rational) {
        std::vector<Rational> rc(c.size());
        for (size_t i = 0; i < c.size(); ++i) rc[i] = c[i].rational_value();
        if (!rational_case_roots(rc, candidates)) {
            out.ok = false;
            return out;
        }
    } else {
        // Clear denominators, then slice by parameter monomials.
        Poly dens = Poly::constant(Rational(1));
        for (const auto& s : c) dens = dens * s.den();
        std::vector<Poly> pc(c.size());
        std::vector<std::string> merged;
        for (size_t i = 0; i < c.size(); ++i) {
            pc[i] = c[i].num() * Poly::divexact(dens, c[i].den());
            for (const auto& v : pc[i].vars())
                if (std::find(merged.begin(), merged.end(), v) == merged.end())
                    merged.push_back(v);
        }
        std::sort(merged.begin(), merged.end(), Poly::var_before);
        std::map<std::vector<int32_t>, std::vector<Rational>> slices;
        for (size_t i = 0; i < pc.size(); ++i) {
            Poly p = pc[i];
            for (const auto& t : p.terms()) {
                std::vector<int32_t> key(merged.size(), 0);
                for (size_t vi = 0; vi < p.vars().size(); ++vi) {
                    size_t pos = static_cast<size_t>(
                        std::find(merged.begin(), merged.end(), p.vars()[vi]) - merged.begin());
                    key[pos] = t.exp[vi];
                }
                auto& slice = slices[key];
                if (slice.empty()) slice.assign(c.size(), Rational(0));
                slice[i] += t.coef;
            }
        }
        // gcd of the slices, as rational univariate polynomials
        std::vector<Scalar> g;
        for (const auto& [key, slice] : slices) {
            std::vector<Scalar> s(slice.size());
            for (size_t i = 0; i < slice.size(); ++i) s[i] = Scalar(slice[i]);
            g = g.empty() ? s : univar_gcd(g, s);
        }
        long gd = sdeg(g);
        if (gd > 0) {
            std::vector<Rational> rg(static_cast<size_t>(gd) + 1);
            bool grat = true;
            for (long i = 0; i <= gd; ++i) {
                if (!g[static_cast<size_t>(i)].is_rational()) { grat = false; break; }
                rg[static_cast<size_t>(i)] = g[static_cast<size_t>(i)].rational_value();
            }
            if (!grat || !rational_case_roots(rg, candidates)) {
                out.ok = false;
                return out;
            }
        }
    }

    candidates.push_back(Rational(0)); // lambda^v factors are not covered by p/q candidates

    // Verify candidates against the full polynomial and deflate.
    std::vector<Scalar> rem = c;
    for (const auto& cand : candidates) {
        Scalar root(cand);
        int mult = 0;
        while (sdeg(rem) > 0 && horner(rem, root).is_zero()) {
            rem = deflate(rem, root);
            ++mult;
        }
        if (mult > 0) out.roots.push_back({root, mult});
    }
    long rd = sdeg(rem);
    out.split = (rd <= 0);
    if (!out.split) {
        // A root of the remaining factor has multiplicity at most deg, and
        // exactly 1 when the factor is squarefree.
        std::vector<Scalar> der(static_cast<size_t>(rd));
        for (long i = 1; i <= rd; ++i)
            der[static_cast<size_t>(i - 1)] =
                rem[static_cast<size_t>(i)] * Scalar(Rational(i));
        auto g = univar_gcd(rem, der);
        out.max_nonsplit_mult = sdeg(g) <= 0 ? 1 : static_cast<int>(rd);
    }
    return out;
}

} // namespace filn
