#ifndef TOEPLITZ_CHAINS_POLY2_HPP
#define TOEPLITZ_CHAINS_POLY2_HPP

#include <Eigen/Dense>
#include <vector>

#include "toeplitz_chains/types.hpp"

namespace toeplitz_chains {

/// Bivariate polynomial in (z, lambda); coeff(i, j) multiplies z^i lambda^j.
class Poly2 {
 public:
  Poly2() : c_(Eigen::MatrixXcd::Zero(1, 1)) {}
  explicit Poly2(Eigen::MatrixXcd c) : c_(std::move(c)) {}

  static Poly2 constant(cplx v) {
    Poly2 p;
    p.c_(0, 0) = v;
    return p;
  }
  static Poly2 z() {
    Poly2 p;
    p.c_ = Eigen::MatrixXcd::Zero(2, 1);
    p.c_(1, 0) = 1.0;
    return p;
  }
  static Poly2 lam() {
    Poly2 p;
    p.c_ = Eigen::MatrixXcd::Zero(1, 2);
    p.c_(0, 1) = 1.0;
    return p;
  }
  static Poly2 from_z_poly(const std::vector<cplx>& coeffs) {
    Poly2 p;
    p.c_ = Eigen::MatrixXcd::Zero(std::max<std::ptrdiff_t>(1, static_cast<std::ptrdiff_t>(coeffs.size())), 1);
    for (std::size_t i = 0; i < coeffs.size(); ++i) p.c_(static_cast<Eigen::Index>(i), 0) = coeffs[i];
    return p;
  }

  const Eigen::MatrixXcd& coeffs() const { return c_; }

  cplx eval(cplx zv, cplx lv) const {
    cplx acc(0.0);
    for (Eigen::Index i = c_.rows() - 1; i >= 0; --i) {
      cplx row(0.0);
      for (Eigen::Index j = c_.cols() - 1; j >= 0; --j) row = row * lv + c_(i, j);
      acc = acc * zv + row;
    }
    return acc;
  }

  Poly2 dz() const {
    if (c_.rows() <= 1) return Poly2();
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(c_.rows() - 1, c_.cols());
    for (Eigen::Index i = 1; i < c_.rows(); ++i) d.row(i - 1) = c_.row(i) * static_cast<double>(i);
    return Poly2(d);
  }

  friend Poly2 operator+(const Poly2& a, const Poly2& b) {
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(std::max(a.c_.rows(), b.c_.rows()),
                                                std::max(a.c_.cols(), b.c_.cols()));
    c.topLeftCorner(a.c_.rows(), a.c_.cols()) += a.c_;
    c.topLeftCorner(b.c_.rows(), b.c_.cols()) += b.c_;
    return Poly2(c);
  }
  friend Poly2 operator-(const Poly2& a, const Poly2& b) { return a + (b * cplx(-1.0)); }
  friend Poly2 operator*(const Poly2& a, const Poly2& b) {
    Eigen::MatrixXcd c =
        Eigen::MatrixXcd::Zero(a.c_.rows() + b.c_.rows() - 1, a.c_.cols() + b.c_.cols() - 1);
    for (Eigen::Index i = 0; i < a.c_.rows(); ++i)
      for (Eigen::Index j = 0; j < a.c_.cols(); ++j) {
        if (a.c_(i, j) == cplx(0.0)) continue;
        c.block(i, j, b.c_.rows(), b.c_.cols()) += a.c_(i, j) * b.c_;
      }
    return Poly2(c);
  }
  Poly2 operator*(cplx s) const { return Poly2(c_ * s); }
  friend Poly2 operator*(cplx s, const Poly2& p) { return p * s; }
  friend Poly2 operator+(const Poly2& a, cplx s) { return a + Poly2::constant(s); }
  friend Poly2 operator+(cplx s, const Poly2& a) { return a + Poly2::constant(s); }
  friend Poly2 operator-(const Poly2& a, cplx s) { return a - Poly2::constant(s); }
  friend Poly2 operator-(cplx s, const Poly2& a) { return Poly2::constant(s) - a; }

 private:
  Eigen::MatrixXcd c_;
};

}  // namespace toeplitz_chains

#endif
