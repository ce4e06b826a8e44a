#pragma once

// Exact integer/rational scalars and the dense matrix aliases used everywhere.

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

namespace tordiv {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

using IntMatrix = Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic>;
using RatMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using IntVector = Eigen::Matrix<Integer, Eigen::Dynamic, 1>;
using RatVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

/// Input failed validation (bad file, violated precondition on user data).
class InvalidInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The computation would need an assumption the caller has not certified,
/// or data the tool cannot produce (e.g. G_N^+ for composite N).
class ComputationRefused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Truncated expansion does not carry enough terms for the requested result.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Integer num(const Rational& r) { return mp::numerator(r); }
inline Integer den(const Rational& r) { return mp::denominator(r); }

inline Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        q -= 1;
    }
    return q;
}

inline Integer floor(const Rational& r) { return floor_div(num(r), den(r)); }

inline Integer ceil(const Rational& r) { return -floor(-r); }

/// Representative of r mod 1 in [0, 1).
inline Rational mod1(const Rational& r) { return r - Rational(floor(r)); }

/// Non-negative residue of a mod m (m > 0).
inline Integer mod(const Integer& a, const Integer& m)
{
    Integer r = a % m;
    if (r < 0) {
        r += m;
    }
    return r;
}

inline long mod(long a, long m)
{
    long r = a % m;
    return r < 0 ? r + m : r;
}

inline Integer gcd(const Integer& a, const Integer& b) { return mp::gcd(a, b); }

inline Integer lcm(const Integer& a, const Integer& b)
{
    if (a == 0 || b == 0) {
        return 0;
    }
    return mp::abs(mp::lcm(a, b));
}

inline bool is_integral(const Rational& r) { return den(r) == 1; }

inline long to_long(const Integer& z)
{
    if (z > Integer(std::numeric_limits<long>::max()) || z < Integer(std::numeric_limits<long>::min())) {
        throw std::overflow_error("integer does not fit in a machine word: " + z.str());
    }
    return z.convert_to<long>();
}

inline std::string to_string(const Rational& r) { return r.str(); }

IntVector int_vector(std::initializer_list<long> xs);
IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows);

inline RatVector to_rational(const IntVector& v) { return v.cast<Rational>(); }
inline RatMatrix to_rational(const IntMatrix& m) { return m.cast<Rational>(); }

/// gcd of all coordinates (0 for the zero vector).
Integer content(const IntVector& v);

bool is_primitive(const IntVector& v);

/// Divides out the content; the zero vector is returned unchanged.
IntVector make_primitive(const IntVector& v);

/// Scales a rational vector to the primitive integer vector on the same ray.
IntVector primitive_on_ray(const RatVector& v);

/// Lexicographic comparison of equal-length vectors.
template <typename Vec>
bool lex_less(const Vec& a, const Vec& b)
{
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i) < b(i)) {
            return true;
        }
        if (b(i) < a(i)) {
            return false;
        }
    }
    return false;
}

/// Ordering functor so that vectors can key std::map / std::set.
struct LexLess {
    template <typename Vec>
    bool operator()(const Vec& a, const Vec& b) const
    {
        if (a.size() != b.size()) {
            return a.size() < b.size();
        }
        return lex_less(a, b);
    }
};

std::string format_vector(const IntVector& v);
std::string format_vector(const RatVector& v);

} // namespace tordiv
