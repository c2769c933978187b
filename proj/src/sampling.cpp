#include "barricade/sampling.hpp"

#include <algorithm>
#include <array>

namespace barricade {

double halton(unsigned long long index, unsigned base) {
  double f = 1.0, r = 0.0;
  unsigned long long i = index;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

double inverse_normal_cdf(double p) {
  // Acklam's rational approximation with the usual central/tail split.
  static const std::array<double, 6> a = {-3.969683028665376e+01, 2.209460984245205e+02,
                                          -2.759285104469687e+02, 1.383577518672690e+02,
                                          -3.066479806614716e+01, 2.506628277459239e+00};
  static const std::array<double, 5> b = {-5.447609879822406e+01, 1.615858368580409e+02,
                                          -1.556989798598866e+02, 6.680131188771972e+01,
                                          -1.328068155288572e+01};
  static const std::array<double, 6> c = {-7.784894002430293e-03, -3.223964580411365e-01,
                                          -2.400758277161838e+00, -2.549732539343734e+00,
                                          4.374664141464968e+00,  2.938163982698783e+00};
  static const std::array<double, 4> d = {7.784695709041462e-03, 3.224671290700398e-01,
                                          2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p <= 0.0) return -kInf;
  if (p >= 1.0) return kInf;
  if (p < plow) {
    double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - plow) {
    double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double q = p - 0.5;
  double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

std::vector<Vec> sphere_directions(int n, int count, unsigned seed) {
  static const std::array<unsigned, 10> primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  std::vector<Vec> dirs;
  dirs.reserve(count);
  if (n == 1) {
    for (int k = 0; k < count; ++k) {
      Vec v(1);
      v(0) = (k + seed) % 2 == 0 ? 1.0 : -1.0;
      dirs.push_back(v);
    }
    return dirs;
  }
  unsigned long long offset = 17 + 101ull * seed;
  unsigned long long index = offset;
  while (static_cast<int>(dirs.size()) < count) {
    Vec v(n);
    for (int j = 0; j < n; ++j) {
      unsigned base = primes[j % primes.size()];
      double u = halton(index, base);
      // Shift degenerate endpoints away from 0/1.
      u = std::min(std::max(u, 1e-12), 1.0 - 1e-12);
      v(j) = inverse_normal_cdf(u);
    }
    ++index;
    double nrm = v.norm();
    if (nrm < 1e-9) continue;
    dirs.push_back(v / nrm);
  }
  return dirs;
}

Vec project_to_simplex(const Vec& v) {
  const Eigen::Index n = v.size();
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, theta = 0.0;
  int k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    css += u[i];
    double t = (css - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) {
      k = static_cast<int>(i + 1);
      theta = t;
    }
  }
  if (k == 0) {  // all mass to the largest entry
    Vec w = Vec::Zero(n);
    Eigen::Index imax;
    v.maxCoeff(&imax);
    w(imax) = 1.0;
    return w;
  }
  Vec w(n);
  for (Eigen::Index i = 0; i < n; ++i) w(i) = std::max(v(i) - theta, 0.0);
  return w;
}

}  // namespace barricade
