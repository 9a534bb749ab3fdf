#include "perarfima/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace perarfima {

namespace {

void check_same_shape(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix shape mismatch");
}

double sign_with(double magnitude, double sign_of) { return sign_of >= 0.0 ? magnitude : -magnitude; }

}  // namespace

Matrix Matrix::operator+(const Matrix& o) const {
  Matrix r = *this;
  r += o;
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  Matrix r = *this;
  r -= o;
  return r;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  check_same_shape(*this, o);
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  check_same_shape(*this, o);
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
  Matrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const double aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
    }
  }
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

Matrix solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols()) throw std::invalid_argument("solve: matrix not square");
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: rhs shape mismatch");
  const int n = a.rows();
  Matrix lu = a;
  Matrix x = b;
  const double scale = std::max(lu.max_abs(), 1.0);

  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(piv, k))) piv = i;
    if (std::abs(lu(piv, k)) <= 1e-13 * scale) throw std::domain_error("solve: singular matrix");
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      for (int j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(piv, j));
    }
    for (int i = k + 1; i < n; ++i) {
      const double f = lu(i, k) / lu(k, k);
      lu(i, k) = f;
      for (int j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
      for (int j = 0; j < x.cols(); ++j) x(i, j) -= f * x(k, j);
    }
  }
  for (int j = 0; j < x.cols(); ++j) {
    for (int i = n - 1; i >= 0; --i) {
      double s = x(i, j);
      for (int k = i + 1; k < n; ++k) s -= lu(i, k) * x(k, j);
      x(i, j) = s / lu(i, i);
    }
  }
  return x;
}

Matrix inverse(const Matrix& a) { return solve(a, Matrix::identity(a.rows())); }

namespace {

// In-place Householder reduction to upper Hessenberg form.
void hessenberg(Matrix& h) {
  const int n = h.rows();
  std::vector<double> v(n);
  for (int c = 0; c < n - 2; ++c) {
    double norm2 = 0.0;
    for (int i = c + 1; i < n; ++i) norm2 += h(i, c) * h(i, c);
    const double alpha = -sign_with(std::sqrt(norm2), h(c + 1, c));
    const double vnorm2 = norm2 - 2.0 * alpha * h(c + 1, c) + alpha * alpha;
    if (vnorm2 <= 0.0 || norm2 == 0.0) continue;
    v[c + 1] = h(c + 1, c) - alpha;
    for (int i = c + 2; i < n; ++i) v[i] = h(i, c);
    const double beta = 2.0 / vnorm2;

    // H <- P H, rows c+1..n-1
    for (int j = c; j < n; ++j) {
      double s = 0.0;
      for (int i = c + 1; i < n; ++i) s += v[i] * h(i, j);
      s *= beta;
      for (int i = c + 1; i < n; ++i) h(i, j) -= s * v[i];
    }
    // H <- H P, cols c+1..n-1
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = c + 1; j < n; ++j) s += h(i, j) * v[j];
      s *= beta;
      for (int j = c + 1; j < n; ++j) h(i, j) -= s * v[j];
    }
    for (int i = c + 2; i < n; ++i) h(i, c) = 0.0;
  }
}

// Francis double-shift QR on an upper Hessenberg matrix.
void hessenberg_qr_eigenvalues(Matrix& h, std::vector<double>& wr, std::vector<double>& wi) {
  const int n = h.rows();
  const double eps = std::numeric_limits<double>::epsilon();
  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(h(i, j));
  if (anorm == 0.0) anorm = 1.0;

  int nn = n - 1;
  double t = 0.0;
  while (nn >= 0) {
    int its = 0;
    int l;
    do {
      for (l = nn; l >= 1; --l) {
        double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(h(l, l - 1)) <= eps * s) {
          h(l, l - 1) = 0.0;
          break;
        }
      }
      double x = h(nn, nn);
      if (l == nn) {
        wr[nn] = x + t;
        wi[nn] = 0.0;
        --nn;
      } else {
        double y = h(nn - 1, nn - 1);
        double w = h(nn, nn - 1) * h(nn - 1, nn);
        if (l == nn - 1) {
          double p = 0.5 * (y - x);
          double q = p * p + w;
          double z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + sign_with(z, p);
            wr[nn - 1] = wr[nn] = x + z;
            if (z != 0.0) wr[nn] = x - w / z;
            wi[nn - 1] = wi[nn] = 0.0;
          } else {
            wr[nn - 1] = wr[nn] = x + p;
            wi[nn - 1] = -(wi[nn] = z);
          }
          nn -= 2;
        } else {
          if (its == 60) throw std::runtime_error("eigenvalues: QR iteration failed to converge");
          if (its == 10 || its == 20 || its == 30 || its == 40 || its == 50) {
            t += x;
            for (int i = 0; i <= nn; ++i) h(i, i) -= x;
            double s = std::abs(h(nn, nn - 1)) + std::abs(h(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          int m;
          double p = 0.0, q = 0.0, r = 0.0;
          for (m = nn - 2; m >= l; --m) {
            double z = h(m, m);
            double rr = x - z;
            double ss = y - z;
            p = (rr * ss - w) / h(m + 1, m) + h(m, m + 1);
            q = h(m + 1, m + 1) - z - rr - ss;
            r = h(m + 2, m + 1);
            double s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const double u = std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r));
            const double v = std::abs(p) * (std::abs(h(m - 1, m - 1)) + std::abs(z) + std::abs(h(m + 1, m + 1)));
            if (u <= eps * v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            h(i, i - 2) = 0.0;
            if (i != m + 2) h(i, i - 3) = 0.0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = h(k, k - 1);
              q = h(k + 1, k - 1);
              r = (k != nn - 1) ? h(k + 2, k - 1) : 0.0;
              x = std::abs(p) + std::abs(q) + std::abs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            const double s = sign_with(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) continue;
            if (k == m) {
              if (l != m) h(k, k - 1) = -h(k, k - 1);
            } else {
              h(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            double y2 = q / s;
            double z2 = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {
              double pp = h(k, j) + q * h(k + 1, j);
              if (k != nn - 1) {
                pp += r * h(k + 2, j);
                h(k + 2, j) -= pp * z2;
              }
              h(k + 1, j) -= pp * y2;
              h(k, j) -= pp * x;
            }
            const int mmin = (nn < k + 3) ? nn : k + 3;
            for (int i = l; i <= mmin; ++i) {
              double pp = x * h(i, k) + y2 * h(i, k + 1);
              if (k != nn - 1) {
                pp += z2 * h(i, k + 2);
                h(i, k + 2) -= pp * r;
              }
              h(i, k + 1) -= pp * q;
              h(i, k) -= pp;
            }
          }
        }
      }
    } while (nn >= 0 && l < nn - 1);
  }
}

}  // namespace

std::vector<std::complex<double>> eigenvalues(Matrix a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("eigenvalues: matrix not square");
  const int n = a.rows();
  std::vector<std::complex<double>> ev(n);
  if (n == 0) return ev;
  if (n == 1) {
    ev[0] = a(0, 0);
    return ev;
  }
  hessenberg(a);
  std::vector<double> wr(n, 0.0), wi(n, 0.0);
  hessenberg_qr_eigenvalues(a, wr, wi);
  for (int i = 0; i < n; ++i) ev[i] = {wr[i], wi[i]};
  return ev;
}

}  // namespace perarfima
