#pragma once

// Batched inner loops with a scalar reference and an AVX2 variant chosen at
// runtime. Both variants produce bitwise-identical results; the AVX2 file is
// built without FMA contraction so every lane follows the scalar op order.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace hypent::kernels {

// Structure-of-arrays view over n isometries.
struct MobiusView {
  const double* a_re;
  const double* a_im;
  const double* b_re;
  const double* b_im;
};

struct MobiusOut {
  double* a_re;
  double* a_im;
  double* b_re;
  double* b_im;
};

struct KernelTable {
  std::string_view name;
  // out[i] = in[i] * g, renormalized to unit determinant and canonical sign.
  void (*compose_right)(MobiusView in, std::size_t n, double g_ar, double g_ai, double g_br,
                        double g_bi, MobiusOut out);
  // Lowest i with 2|p_i - q|^2 / (w_i * wq) <= limit, or n. w = 1 - |.|^2.
  std::size_t (*first_within)(const double* px, const double* py, const double* pw,
                              std::size_t n, double qx, double qy, double qw, double limit);
  // max_i of the circle distance between x[i] and y[i], both in [0, 1).
  double (*max_circle_distance)(const double* x, const double* y, std::size_t n);
  // min of cost[i] over positions with s[i] != t[i]; 255 when none.
  std::uint8_t (*min_mismatch_cost)(const std::uint8_t* s, const std::uint8_t* t,
                                    const std::uint8_t* cost, std::size_t n);
};

const KernelTable& scalar();
// nullptr when the CPU or the build lacks AVX2.
const KernelTable* avx2();
// AVX2 when available unless HYPENT_SIMD=scalar is set in the environment.
const KernelTable& active();

}  // namespace hypent::kernels
