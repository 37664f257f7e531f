#pragma once

// Scalar types shared by the library: IEEE double, std::complex<double> and an
// exact rational. Everything that is templated on a scalar accepts these three.

#include <complex>
#include <concepts>
#include <ostream>
#include <string>
#include <cstdint>
#include <type_traits>

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>

namespace ccroots {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

/// Exact rational. A thin wrapper over boost's cpp_rational with constrained
/// constructors only, so generic Eigen expression code never probes it for
/// conversions from matrix types.
class Rational {
 public:
  using Base = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                             boost::multiprecision::et_off>;

  Rational() = default;
  template <std::integral I>
  Rational(I x) : v_(static_cast<long long>(x)) {}
  Rational(const BigInt& x) : v_(x) {}
  Rational(const BigInt& num, const BigInt& den) : v_(num, den) {}
  template <std::integral I, std::integral J>
  Rational(I num, J den) : v_(BigInt(static_cast<long long>(num)), BigInt(static_cast<long long>(den))) {}
  /// Exact binary value of a finite double.
  explicit Rational(double x) : v_(x) {}
  explicit Rational(const Base& x) : v_(x) {}

  const Base& base() const { return v_; }
  template <class T>
  T convert_to() const {
    return v_.template convert_to<T>();
  }
  std::string str() const { return v_.str(); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { v_ /= o.v_; return *this; }
  Rational operator-() const { return Rational(Base(-v_)); }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.v_; }

  friend BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r.v_); }
  friend BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r.v_); }
  friend Rational abs(const Rational& r) { return r.v_ < 0 ? -r : r; }

 private:
  Base v_;
};

using Complex = std::complex<double>;

template <class T>
inline constexpr bool is_complex_v = false;
template <class T>
inline constexpr bool is_complex_v<std::complex<T>> = true;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

/// Magnitude as a double, for tolerance checks in any scalar type.
template <class S>
double magnitude(const S& x) {
  if constexpr (is_exact_v<S>) {
    return std::abs(x.template convert_to<double>());
  } else {
    return std::abs(x);
  }
}

template <class S>
bool is_zero(const S& x) {
  if constexpr (is_exact_v<S>) {
    return x == 0;
  } else {
    return x == S(0);
  }
}

template <class S>
Complex to_complex(const S& x) {
  if constexpr (is_exact_v<S>) {
    return Complex(x.template convert_to<double>(), 0.0);
  } else {
    return Complex(x);
  }
}

template <class S>
double real_part(const S& x) {
  if constexpr (is_exact_v<S>) {
    return x.template convert_to<double>();
  } else if constexpr (is_complex_v<S>) {
    return x.real();
  } else {
    return x;
  }
}

/// Converts between scalar types. Rational -> floating is lossy; floating ->
/// Rational is exact in the binary value.
template <class To, class From>
To scalar_cast(const From& x) {
  if constexpr (std::is_same_v<To, From>) {
    return x;
  } else if constexpr (is_exact_v<From>) {
    return To(x.template convert_to<double>());
  } else if constexpr (is_exact_v<To>) {
    static_assert(!is_complex_v<From>, "complex values have no rational image");
    return Rational(static_cast<double>(x));
  } else {
    return To(x);
  }
}

template <class To, class From>
Matrix<To> matrix_cast(const Matrix<From>& m) {
  Matrix<To> out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out(i, j) = scalar_cast<To>(m(i, j));
  return out;
}

template <class To, class From>
Vector<To> vector_cast(const Vector<From>& v) {
  Vector<To> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = scalar_cast<To>(v(i));
  return out;
}

/// n! as the scalar type.
template <class S>
S factorial(int n) {
  S f(1);
  for (int k = 2; k <= n; ++k) f *= S(k);
  return f;
}

}  // namespace ccroots

namespace Eigen {

template <>
struct NumTraits<ccroots::Rational> : GenericNumTraits<ccroots::Rational> {
  typedef ccroots::Rational Real;
  typedef ccroots::Rational NonInteger;
  typedef ccroots::Rational Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
