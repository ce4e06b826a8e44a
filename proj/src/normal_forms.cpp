#include "tordiv/linalg.hpp"

#include <algorithm>
#include <utility>

namespace tordiv {

namespace {

using Index = Eigen::Index;

/// Extended gcd: g = a*s + b*t, g >= 0.
void xgcd(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t)
{
    Integer old_r = a, r = b, old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
    while (r != 0) {
        Integer q = floor_div(old_r, r);
        Integer tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * cur_s;
        old_s = cur_s;
        cur_s = tmp;
        tmp = old_t - q * cur_t;
        old_t = cur_t;
        cur_t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    g = old_r;
    s = old_s;
    t = old_t;
}

void swap_rows(IntMatrix& m, Index i, Index j)
{
    if (i != j) {
        m.row(i).swap(m.row(j));
    }
}

void swap_cols(IntMatrix& m, Index i, Index j)
{
    if (i != j) {
        m.col(i).swap(m.col(j));
    }
}

/// rows (i, j) <- [[s, t], [-b/g, a/g]] * rows (i, j); unimodular since det = (s a + t b)/g = 1.
void combine_rows(IntMatrix& m, Index i, Index j, const Integer& s, const Integer& t, const Integer& u, const Integer& v)
{
    for (Index c = 0; c < m.cols(); ++c) {
        Integer x = m(i, c), y = m(j, c);
        m(i, c) = s * x + t * y;
        m(j, c) = u * x + v * y;
    }
}

void combine_cols(IntMatrix& m, Index i, Index j, const Integer& s, const Integer& t, const Integer& u, const Integer& v)
{
    for (Index r = 0; r < m.rows(); ++r) {
        Integer x = m(r, i), y = m(r, j);
        m(r, i) = s * x + t * y;
        m(r, j) = u * x + v * y;
    }
}

} // namespace

std::vector<Integer> SmithForm::invariant_factors() const
{
    std::vector<Integer> out;
    for (Index i = 0; i < std::min(D.rows(), D.cols()); ++i) {
        out.push_back(D(i, i));
    }
    return out;
}

SmithForm smith_normal_form(const IntMatrix& M)
{
    const Index rows = M.rows(), cols = M.cols();
    IntMatrix A = M;
    IntMatrix U = IntMatrix::Identity(rows, rows);
    IntMatrix V = IntMatrix::Identity(cols, cols);

    for (Index k = 0; k < std::min(rows, cols); ++k) {
        // Pivot: smallest non-zero |entry| in the trailing block.
        bool found = false;
        Index pr = k, pc = k;
        for (Index i = k; i < rows; ++i) {
            for (Index j = k; j < cols; ++j) {
                if (A(i, j) != 0 && (!found || mp::abs(A(i, j)) < mp::abs(A(pr, pc)))) {
                    found = true;
                    pr = i;
                    pc = j;
                }
            }
        }
        if (!found) {
            break;
        }
        swap_rows(A, k, pr);
        swap_rows(U, k, pr);
        swap_cols(A, k, pc);
        swap_cols(V, k, pc);

        for (;;) {
            bool dirty = false;
            for (Index i = k + 1; i < rows; ++i) {
                if (A(i, k) == 0) {
                    continue;
                }
                if (A(i, k) % A(k, k) == 0) {
                    const Integer f = A(i, k) / A(k, k);
                    A.row(i) -= f * A.row(k);
                    U.row(i) -= f * U.row(k);
                    continue;
                }
                Integer g, s, t;
                xgcd(A(k, k), A(i, k), g, s, t);
                Integer a = A(k, k) / g, b = A(i, k) / g;
                combine_rows(A, k, i, s, t, -b, a);
                combine_rows(U, k, i, s, t, -b, a);
            }
            for (Index j = k + 1; j < cols; ++j) {
                if (A(k, j) == 0) {
                    continue;
                }
                if (A(k, j) % A(k, k) == 0) {
                    const Integer f = A(k, j) / A(k, k);
                    A.col(j) -= f * A.col(k);
                    V.col(j) -= f * V.col(k);
                    continue;
                }
                Integer g, s, t;
                xgcd(A(k, k), A(k, j), g, s, t);
                Integer a = A(k, k) / g, b = A(k, j) / g;
                combine_cols(A, k, j, s, t, -b, a);
                combine_cols(V, k, j, s, t, -b, a);
                dirty = true;
            }
            if (!dirty) {
                // Column ops may have refilled column k only if they ran; check again.
                bool col_clear = true;
                for (Index i = k + 1; i < rows; ++i) {
                    col_clear = col_clear && A(i, k) == 0;
                }
                if (!col_clear) {
                    continue;
                }
                // Divisibility: every remaining entry must be a multiple of the pivot.
                Index bad_r = -1;
                for (Index i = k + 1; i < rows && bad_r < 0; ++i) {
                    for (Index j = k + 1; j < cols; ++j) {
                        if (A(i, j) % A(k, k) != 0) {
                            bad_r = i;
                            break;
                        }
                    }
                }
                if (bad_r < 0) {
                    break;
                }
                // Add the offending row to row k and repeat.
                A.row(k) += A.row(bad_r);
                U.row(k) += U.row(bad_r);
            }
        }
        if (A(k, k) < 0) {
            A.row(k) *= Integer(-1);
            U.row(k) *= Integer(-1);
        }
    }
    return SmithForm{U, A, V};
}

HermiteForm hermite_normal_form(const IntMatrix& M)
{
    const Index rows = M.rows(), cols = M.cols();
    IntMatrix H = M;
    IntMatrix U = IntMatrix::Identity(rows, rows);
    std::vector<Index> pivots;
    Index r = 0;
    for (Index c = 0; c < cols && r < rows; ++c) {
        for (Index i = r + 1; i < rows; ++i) {
            if (H(i, c) == 0) {
                continue;
            }
            if (H(r, c) != 0 && H(i, c) % H(r, c) == 0) {
                const Integer f = H(i, c) / H(r, c);
                H.row(i) -= f * H.row(r);
                U.row(i) -= f * U.row(r);
                continue;
            }
            Integer g, s, t;
            xgcd(H(r, c), H(i, c), g, s, t);
            Integer a = H(r, c) / g, b = H(i, c) / g;
            combine_rows(H, r, i, s, t, -b, a);
            combine_rows(U, r, i, s, t, -b, a);
        }
        if (H(r, c) == 0) {
            continue;
        }
        if (H(r, c) < 0) {
            H.row(r) *= Integer(-1);
            U.row(r) *= Integer(-1);
        }
        for (Index i = 0; i < r; ++i) {
            Integer q = floor_div(H(i, c), H(r, c));
            if (q != 0) {
                H.row(i) -= q * H.row(r);
                U.row(i) -= q * U.row(r);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return HermiteForm{H, U, pivots};
}

IntMatrix integer_kernel(const IntMatrix& M)
{
    // Row HNF of M^T: rows of U whose image row is zero span the kernel.
    HermiteForm hf = hermite_normal_form(M.transpose());
    const Index n = M.cols();
    const Index k = n - hf.rank();
    IntMatrix K(n, k);
    for (Index j = 0; j < k; ++j) {
        K.col(j) = hf.U.row(hf.rank() + j).transpose();
    }
    return K;
}

bool is_saturated(const IntMatrix& B)
{
    if (B.cols() == 0) {
        return true;
    }
    SmithForm sf = smith_normal_form(B);
    for (const Integer& d : sf.invariant_factors()) {
        if (d != 1) {
            return false;
        }
    }
    return static_cast<Index>(sf.invariant_factors().size()) == B.cols();
}

IntMatrix complete_to_basis(const IntMatrix& B)
{
    const Index n = B.rows(), k = B.cols();
    if (!is_saturated(B)) {
        throw std::invalid_argument("complete_to_basis: columns do not span a saturated sublattice");
    }
    // U B V = [I; 0], so B V equals the first k columns of U^{-1}.
    SmithForm sf = smith_normal_form(B);
    RatMatrix uinv = inverse(to_rational(sf.U));
    IntMatrix out(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            out(i, j) = j < k ? B(i, j) : num(uinv(i, j));
        }
    }
    return out;
}

Integer determinant(const IntMatrix& M)
{
    // Bareiss fraction-free elimination.
    const Index n = M.rows();
    if (n != M.cols()) {
        throw std::invalid_argument("determinant of a non-square matrix");
    }
    if (n == 0) {
        return 1;
    }
    IntMatrix A = M;
    Integer sign = 1, prev = 1;
    for (Index k = 0; k < n - 1; ++k) {
        if (A(k, k) == 0) {
            Index swap = -1;
            for (Index i = k + 1; i < n; ++i) {
                if (A(i, k) != 0) {
                    swap = i;
                    break;
                }
            }
            if (swap < 0) {
                return 0;
            }
            A.row(k).swap(A.row(swap));
            sign = -sign;
        }
        for (Index i = k + 1; i < n; ++i) {
            for (Index j = k + 1; j < n; ++j) {
                A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev;
            }
        }
        prev = A(k, k);
    }
    return sign * A(n - 1, n - 1);
}

bool in_integer_span(const IntMatrix& B, const RatVector& v)
{
    // v in span_Z(B)  <=>  d*v in span_Z(d*B) for a common denominator d.
    Integer d = 1;
    for (Index i = 0; i < v.size(); ++i) {
        d = lcm(d, den(v(i)));
    }
    IntVector scaled(v.size());
    for (Index i = 0; i < v.size(); ++i) {
        scaled(i) = num(v(i) * Rational(d));
    }
    IntMatrix dB = B * d;
    return solve_integer(dB, scaled).has_value();
}

std::optional<IntVector> solve_integer(const IntMatrix& A, const IntVector& b)
{
    // Solve via Smith form: U A V = D, y = V^{-1} x, D y = U b.
    SmithForm sf = smith_normal_form(A);
    IntVector c = sf.U * b;
    const Index m = A.rows(), n = A.cols();
    IntVector y = IntVector::Zero(n);
    for (Index i = 0; i < m; ++i) {
        const Integer d = i < std::min(m, n) ? sf.D(i, i) : Integer(0);
        if (d == 0) {
            if (c(i) != 0) {
                return std::nullopt;
            }
            continue;
        }
        if (c(i) % d != 0) {
            return std::nullopt;
        }
        y(i) = c(i) / d;
    }
    return IntVector(sf.V * y);
}

} // namespace tordiv
