#include <algorithm>
#include <cmath>

#include "hypent/kernels.hpp"

namespace hypent::kernels {

namespace {

void compose_right_scalar(MobiusView in, std::size_t n, double g_ar, double g_ai, double g_br,
                          double g_bi, MobiusOut out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = in.a_re[i], ai = in.a_im[i], br = in.b_re[i], bi = in.b_im[i];
    // a = a1 a2 + b1 conj(b2); b = a1 b2 + b1 conj(a2)
    double na_r = (ar * g_ar - ai * g_ai) + (br * g_br + bi * g_bi);
    double na_i = (ar * g_ai + ai * g_ar) + (bi * g_br - br * g_bi);
    double nb_r = (ar * g_br - ai * g_bi) + (br * g_ar + bi * g_ai);
    double nb_i = (ar * g_bi + ai * g_br) + (bi * g_ar - br * g_ai);
    const double det = (na_r * na_r + na_i * na_i) - (nb_r * nb_r + nb_i * nb_i);
    double s = 1.0 / std::sqrt(det);
    if (na_r < 0.0 || (na_r == 0.0 && na_i < 0.0)) s = -s;
    out.a_re[i] = na_r * s;
    out.a_im[i] = na_i * s;
    out.b_re[i] = nb_r * s;
    out.b_im[i] = nb_i * s;
  }
}

std::size_t first_within_scalar(const double* px, const double* py, const double* pw,
                                std::size_t n, double qx, double qy, double qw, double limit) {
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = px[i] - qx;
    const double dy = py[i] - qy;
    const double delta = (2.0 * (dx * dx + dy * dy)) / (pw[i] * qw);
    if (delta <= limit) return i;
  }
  return n;
}

double max_circle_distance_scalar(const double* x, const double* y, std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::fabs(x[i] - y[i]);
    best = std::max(best, std::min(d, 1.0 - d));
  }
  return best;
}

std::uint8_t min_mismatch_cost_scalar(const std::uint8_t* s, const std::uint8_t* t,
                                      const std::uint8_t* cost, std::size_t n) {
  std::uint8_t best = 255;
  for (std::size_t i = 0; i < n; ++i) {
    if (s[i] != t[i] && cost[i] < best) best = cost[i];
  }
  return best;
}

}  // namespace

const KernelTable& scalar() {
  static const KernelTable table{"scalar", compose_right_scalar, first_within_scalar,
                                 max_circle_distance_scalar, min_mismatch_cost_scalar};
  return table;
}

}  // namespace hypent::kernels
