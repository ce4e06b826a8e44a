#include "tordiv/linalg.hpp"

#include <sstream>

namespace tordiv {

using Index = Eigen::Index;

IntVector int_vector(std::initializer_list<long> xs)
{
    IntVector v(static_cast<Index>(xs.size()));
    Index i = 0;
    for (long x : xs) {
        v(i++) = x;
    }
    return v;
}

IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows)
{
    const Index r = static_cast<Index>(rows.size());
    const Index c = r == 0 ? 0 : static_cast<Index>(rows.begin()->size());
    IntMatrix m(r, c);
    Index i = 0;
    for (const auto& row : rows) {
        if (static_cast<Index>(row.size()) != c) {
            throw std::invalid_argument("int_matrix: ragged rows");
        }
        Index j = 0;
        for (long x : row) {
            m(i, j++) = x;
        }
        ++i;
    }
    return m;
}

Integer content(const IntVector& v)
{
    Integer g = 0;
    for (Index i = 0; i < v.size(); ++i) {
        g = gcd(g, v(i));
    }
    return mp::abs(g);
}

bool is_primitive(const IntVector& v) { return content(v) == 1; }

IntVector make_primitive(const IntVector& v)
{
    Integer g = content(v);
    if (g == 0) {
        return v;
    }
    IntVector out = v;
    for (Index i = 0; i < v.size(); ++i) {
        out(i) /= g;
    }
    return out;
}

IntVector primitive_on_ray(const RatVector& v)
{
    Integer d = 1;
    for (Index i = 0; i < v.size(); ++i) {
        d = lcm(d, den(v(i)));
    }
    IntVector out(v.size());
    for (Index i = 0; i < v.size(); ++i) {
        out(i) = num(v(i) * Rational(d));
    }
    return make_primitive(out);
}

namespace {
template <typename Vec>
std::string format_any(const Vec& v)
{
    std::ostringstream os;
    os << "(";
    for (Index i = 0; i < v.size(); ++i) {
        os << (i ? ", " : "") << v(i).str();
    }
    os << ")";
    return os.str();
}
} // namespace

std::string format_vector(const IntVector& v) { return format_any(v); }
std::string format_vector(const RatVector& v) { return format_any(v); }

std::vector<Index> rref(RatMatrix& M)
{
    std::vector<Index> pivots;
    Index r = 0;
    for (Index c = 0; c < M.cols() && r < M.rows(); ++c) {
        Index p = -1;
        for (Index i = r; i < M.rows(); ++i) {
            if (M(i, c) != 0) {
                p = i;
                break;
            }
        }
        if (p < 0) {
            continue;
        }
        if (p != r) {
            M.row(p).swap(M.row(r));
        }
        const Rational inv = Rational(1) / M(r, c);
        M.row(r) *= inv;
        for (Index i = 0; i < M.rows(); ++i) {
            if (i != r && M(i, c) != 0) {
                const Rational f = M(i, c);
                M.row(i) -= f * M.row(r);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

Eigen::Index rank(const RatMatrix& M)
{
    RatMatrix copy = M;
    return static_cast<Index>(rref(copy).size());
}

Rational determinant(const RatMatrix& M)
{
    if (M.rows() != M.cols()) {
        throw std::invalid_argument("determinant of a non-square matrix");
    }
    RatMatrix A = M;
    Rational det = 1;
    const Index n = A.rows();
    for (Index c = 0; c < n; ++c) {
        Index p = -1;
        for (Index i = c; i < n; ++i) {
            if (A(i, c) != 0) {
                p = i;
                break;
            }
        }
        if (p < 0) {
            return 0;
        }
        if (p != c) {
            A.row(p).swap(A.row(c));
            det = -det;
        }
        det *= A(c, c);
        for (Index i = c + 1; i < n; ++i) {
            if (A(i, c) != 0) {
                const Rational f = A(i, c) / A(c, c);
                A.row(i) -= f * A.row(c);
            }
        }
    }
    return det;
}

std::optional<RatVector> solve(const RatMatrix& A, const RatVector& b)
{
    RatMatrix aug(A.rows(), A.cols() + 1);
    aug.leftCols(A.cols()) = A;
    aug.col(A.cols()) = b;
    std::vector<Index> piv = rref(aug);
    for (Index p : piv) {
        if (p == A.cols()) {
            return std::nullopt;
        }
    }
    RatVector x = RatVector::Zero(A.cols());
    for (std::size_t r = 0; r < piv.size(); ++r) {
        x(piv[r]) = aug(static_cast<Index>(r), A.cols());
    }
    return x;
}

RatMatrix rational_kernel(const RatMatrix& A)
{
    RatMatrix R = A;
    std::vector<Index> piv = rref(R);
    std::vector<bool> is_pivot(static_cast<std::size_t>(A.cols()), false);
    for (Index p : piv) {
        is_pivot[static_cast<std::size_t>(p)] = true;
    }
    std::vector<Index> free_cols;
    for (Index c = 0; c < A.cols(); ++c) {
        if (!is_pivot[static_cast<std::size_t>(c)]) {
            free_cols.push_back(c);
        }
    }
    RatMatrix K = RatMatrix::Zero(A.cols(), static_cast<Index>(free_cols.size()));
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        const Index f = free_cols[j];
        K(f, static_cast<Index>(j)) = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) {
            K(piv[r], static_cast<Index>(j)) = -R(static_cast<Index>(r), f);
        }
    }
    return K;
}

RatMatrix inverse(const RatMatrix& A)
{
    const Index n = A.rows();
    if (n != A.cols()) {
        throw std::invalid_argument("inverse of a non-square matrix");
    }
    RatMatrix aug(n, 2 * n);
    aug.leftCols(n) = A;
    aug.rightCols(n) = RatMatrix::Identity(n, n);
    std::vector<Index> piv = rref(aug);
    if (static_cast<Index>(piv.size()) < n || (n > 0 && piv[static_cast<std::size_t>(n - 1)] >= n)) {
        throw std::invalid_argument("inverse of a singular matrix");
    }
    return aug.rightCols(n);
}

} // namespace tordiv
