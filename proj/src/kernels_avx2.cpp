#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "hypent/kernels.hpp"

namespace hypent::kernels {

namespace {

void compose_right_avx2(MobiusView in, std::size_t n, double g_ar, double g_ai, double g_br,
                        double g_bi, MobiusOut out) {
  const __m256d gar = _mm256_set1_pd(g_ar), gai = _mm256_set1_pd(g_ai);
  const __m256d gbr = _mm256_set1_pd(g_br), gbi = _mm256_set1_pd(g_bi);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ar = _mm256_loadu_pd(in.a_re + i), ai = _mm256_loadu_pd(in.a_im + i);
    const __m256d br = _mm256_loadu_pd(in.b_re + i), bi = _mm256_loadu_pd(in.b_im + i);
    const __m256d na_r = _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(ar, gar), _mm256_mul_pd(ai, gai)),
                                       _mm256_add_pd(_mm256_mul_pd(br, gbr), _mm256_mul_pd(bi, gbi)));
    const __m256d na_i = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(ar, gai), _mm256_mul_pd(ai, gar)),
                                       _mm256_sub_pd(_mm256_mul_pd(bi, gbr), _mm256_mul_pd(br, gbi)));
    const __m256d nb_r = _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(ar, gbr), _mm256_mul_pd(ai, gbi)),
                                       _mm256_add_pd(_mm256_mul_pd(br, gar), _mm256_mul_pd(bi, gai)));
    const __m256d nb_i = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(ar, gbi), _mm256_mul_pd(ai, gbr)),
                                       _mm256_sub_pd(_mm256_mul_pd(bi, gar), _mm256_mul_pd(br, gai)));
    const __m256d det =
        _mm256_sub_pd(_mm256_add_pd(_mm256_mul_pd(na_r, na_r), _mm256_mul_pd(na_i, na_i)),
                      _mm256_add_pd(_mm256_mul_pd(nb_r, nb_r), _mm256_mul_pd(nb_i, nb_i)));
    __m256d s = _mm256_div_pd(one, _mm256_sqrt_pd(det));
    const __m256d flip = _mm256_or_pd(
        _mm256_cmp_pd(na_r, zero, _CMP_LT_OQ),
        _mm256_and_pd(_mm256_cmp_pd(na_r, zero, _CMP_EQ_OQ), _mm256_cmp_pd(na_i, zero, _CMP_LT_OQ)));
    s = _mm256_xor_pd(s, _mm256_and_pd(flip, sign));
    _mm256_storeu_pd(out.a_re + i, _mm256_mul_pd(na_r, s));
    _mm256_storeu_pd(out.a_im + i, _mm256_mul_pd(na_i, s));
    _mm256_storeu_pd(out.b_re + i, _mm256_mul_pd(nb_r, s));
    _mm256_storeu_pd(out.b_im + i, _mm256_mul_pd(nb_i, s));
  }
  if (i < n) {
    const MobiusView tail_in{in.a_re + i, in.a_im + i, in.b_re + i, in.b_im + i};
    const MobiusOut tail_out{out.a_re + i, out.a_im + i, out.b_re + i, out.b_im + i};
    scalar().compose_right(tail_in, n - i, g_ar, g_ai, g_br, g_bi, tail_out);
  }
}

std::size_t first_within_avx2(const double* px, const double* py, const double* pw, std::size_t n,
                              double qx, double qy, double qw, double limit) {
  const __m256d vqx = _mm256_set1_pd(qx), vqy = _mm256_set1_pd(qy), vqw = _mm256_set1_pd(qw);
  const __m256d vlim = _mm256_set1_pd(limit), two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(px + i), vqx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(py + i), vqy);
    const __m256d num =
        _mm256_mul_pd(two, _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
    const __m256d delta = _mm256_div_pd(num, _mm256_mul_pd(_mm256_loadu_pd(pw + i), vqw));
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(delta, vlim, _CMP_LE_OQ));
    if (mask != 0) return i + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(mask)));
  }
  return i + scalar().first_within(px + i, py + i, pw + i, n - i, qx, qy, qw, limit);
}

double max_circle_distance_avx2(const double* x, const double* y, std::size_t n) {
  const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d =
        _mm256_and_pd(_mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)), absmask);
    best = _mm256_max_pd(best, _mm256_min_pd(d, _mm256_sub_pd(one, d)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double out = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  return std::max(out, scalar().max_circle_distance(x + i, y + i, n - i));
}

std::uint8_t min_mismatch_cost_avx2(const std::uint8_t* s, const std::uint8_t* t,
                                    const std::uint8_t* cost, std::size_t n) {
  __m256i best = _mm256_set1_epi8(static_cast<char>(0xff));
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i vs = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(s + i));
    const __m256i vt = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(t + i));
    const __m256i vc = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(cost + i));
    best = _mm256_min_epu8(best, _mm256_or_si256(vc, _mm256_cmpeq_epi8(vs, vt)));
  }
  alignas(32) std::uint8_t lanes[32];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), best);
  std::uint8_t out = *std::min_element(lanes, lanes + 32);
  return std::min(out, scalar().min_mismatch_cost(s + i, t + i, cost + i, n - i));
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{"avx2", compose_right_avx2, first_within_avx2,
                                 max_circle_distance_avx2, min_mismatch_cost_avx2};
  return &table;
}

}  // namespace hypent::kernels
