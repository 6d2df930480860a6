#include "svfix/kernels.hpp"

#if defined(SVFIX_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>
#include <limits>

// AVX2 variants of the scalar reference kernels. Four doubles per lane
// group; the tail of each array runs through the scalar table so results
// stay bit-identical regardless of n.
//
// Transcendentals (pow/sin/cos/exp) have no AVX2 instruction; they are
// evaluated per lane with the same libm calls the scalar path uses, which
// keeps bit parity while the surrounding algebra stays vectorized.

namespace svfix::kernels {
namespace {

constexpr std::size_t W = 4;

inline __m256d load_col(const ColumnView& c, std::size_t i) {
    if (c.stride == 1) return _mm256_loadu_pd(c.data + i);
    return _mm256_set1_pd(c.data[0]);
}

inline bool any_lane(__m256d mask) { return _mm256_movemask_pd(mask) != 0; }

std::int64_t eval_program_avx2(const Program& p, const ColumnView* vars, std::size_t n,
                               double* out) {
    const std::size_t main = n - n % W;
    std::int64_t first_err = -1;
    const __m256d zero = _mm256_setzero_pd();
    const __m256d sqrt_floor = _mm256_set1_pd(-kSqrtClamp);
    __m256d stack[kMaxStack];
    alignas(32) double lane[W];

    for (std::size_t i = 0; i < main; i += W) {
        int sp = 0;
        __m256d err = zero;
        for (const Op& op : p.ops) {
            switch (op.code) {
                case OpCode::PushConst: stack[sp++] = _mm256_set1_pd(p.consts[op.arg]); break;
                case OpCode::PushVar: stack[sp++] = load_col(vars[op.arg], i); break;
                case OpCode::Add:
                    --sp;
                    stack[sp - 1] = _mm256_add_pd(stack[sp - 1], stack[sp]);
                    break;
                case OpCode::Sub:
                    --sp;
                    stack[sp - 1] = _mm256_sub_pd(stack[sp - 1], stack[sp]);
                    break;
                case OpCode::Mul:
                    --sp;
                    stack[sp - 1] = _mm256_mul_pd(stack[sp - 1], stack[sp]);
                    break;
                case OpCode::Div:
                    --sp;
                    err = _mm256_or_pd(err, _mm256_cmp_pd(stack[sp], zero, _CMP_EQ_OQ));
                    stack[sp - 1] = _mm256_div_pd(stack[sp - 1], stack[sp]);
                    break;
                case OpCode::Pow: {
                    --sp;
                    alignas(32) double a[W], b[W];
                    _mm256_store_pd(a, stack[sp - 1]);
                    _mm256_store_pd(b, stack[sp]);
                    bool bad = false;
                    for (std::size_t l = 0; l < W; ++l) {
                        lane[l] = std::pow(a[l], b[l]);
                        if (std::isnan(lane[l])) bad = true;
                    }
                    stack[sp - 1] = _mm256_load_pd(lane);
                    if (bad)
                        err = _mm256_or_pd(
                            err, _mm256_cmp_pd(stack[sp - 1], stack[sp - 1], _CMP_UNORD_Q));
                    break;
                }
                case OpCode::Neg:
                    stack[sp - 1] = _mm256_sub_pd(zero, stack[sp - 1]);
                    break;
                case OpCode::Sqrt:
                    err = _mm256_or_pd(err,
                                       _mm256_cmp_pd(stack[sp - 1], sqrt_floor, _CMP_LT_OQ));
                    stack[sp - 1] = _mm256_sqrt_pd(_mm256_max_pd(stack[sp - 1], zero));
                    break;
                case OpCode::Sin:
                case OpCode::Cos:
                case OpCode::Exp: {
                    _mm256_store_pd(lane, stack[sp - 1]);
                    for (std::size_t l = 0; l < W; ++l)
                        lane[l] = op.code == OpCode::Sin   ? std::sin(lane[l])
                                  : op.code == OpCode::Cos ? std::cos(lane[l])
                                                           : std::exp(lane[l]);
                    stack[sp - 1] = _mm256_load_pd(lane);
                    break;
                }
                case OpCode::Abs:
                    stack[sp - 1] = _mm256_andnot_pd(_mm256_set1_pd(-0.0), stack[sp - 1]);
                    break;
                case OpCode::Min:
                    --sp;
                    stack[sp - 1] = _mm256_min_pd(stack[sp - 1], stack[sp]);
                    break;
                case OpCode::Max:
                    --sp;
                    stack[sp - 1] = _mm256_max_pd(stack[sp - 1], stack[sp]);
                    break;
            }
        }
        _mm256_storeu_pd(out + i, stack[0]);
        err = _mm256_or_pd(err, _mm256_cmp_pd(stack[0], stack[0], _CMP_UNORD_Q));
        if (first_err < 0 && any_lane(err)) {
            const int bits = _mm256_movemask_pd(err);
            for (std::size_t l = 0; l < W; ++l)
                if (bits & (1 << l)) {
                    first_err = static_cast<std::int64_t>(i + l);
                    break;
                }
        }
    }
    if (main < n) {
        ColumnView tail_vars[64];
        for (int v = 0; v < p.nvars; ++v) {
            tail_vars[v] = vars[v];
            if (tail_vars[v].stride == 1) tail_vars[v].data += main;
        }
        const std::int64_t tail_err =
            detail::scalar_table.eval_program(p, tail_vars, n - main, out + main);
        if (first_err < 0 && tail_err >= 0) first_err = tail_err + static_cast<std::int64_t>(main);
    }
    return first_err;
}

inline ColumnView shifted(ColumnView c, std::size_t off) {
    if (c.stride == 1) c.data += off;
    return c;
}

void box_distance_avx2(std::size_t n, std::size_t dim, const ColumnView* x,
                       const ColumnView* lo, const ColumnView* hi, double* out) {
    const std::size_t main = n - n % W;
    const __m256d zero = _mm256_setzero_pd();
    for (std::size_t i = 0; i < main; i += W) {
        __m256d acc = zero;
        for (std::size_t d = 0; d < dim; ++d) {
            const __m256d xv = load_col(x[d], i);
            const __m256d below = _mm256_sub_pd(load_col(lo[d], i), xv);
            const __m256d above = _mm256_sub_pd(xv, load_col(hi[d], i));
            const __m256d t = _mm256_max_pd(_mm256_max_pd(below, above), zero);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(t, t));
        }
        _mm256_storeu_pd(out + i, _mm256_sqrt_pd(acc));
    }
    if (main < n) {
        ColumnView xs[8], los[8], his[8];
        for (std::size_t d = 0; d < dim; ++d) {
            xs[d] = shifted(x[d], main);
            los[d] = shifted(lo[d], main);
            his[d] = shifted(hi[d], main);
        }
        detail::scalar_table.box_distance(n - main, dim, xs, los, his, out + main);
    }
}

void ball_distance_avx2(std::size_t n, std::size_t dim, const ColumnView* x,
                        const ColumnView* c, ColumnView r, double* out) {
    const std::size_t main = n - n % W;
    const __m256d zero = _mm256_setzero_pd();
    for (std::size_t i = 0; i < main; i += W) {
        __m256d acc = zero;
        for (std::size_t d = 0; d < dim; ++d) {
            const __m256d t = _mm256_sub_pd(load_col(x[d], i), load_col(c[d], i));
            acc = _mm256_add_pd(acc, _mm256_mul_pd(t, t));
        }
        const __m256d dist = _mm256_sub_pd(_mm256_sqrt_pd(acc), load_col(r, i));
        _mm256_storeu_pd(out + i, _mm256_max_pd(dist, zero));
    }
    if (main < n) {
        ColumnView xs[8], cs[8];
        for (std::size_t d = 0; d < dim; ++d) {
            xs[d] = shifted(x[d], main);
            cs[d] = shifted(c[d], main);
        }
        detail::scalar_table.ball_distance(n - main, dim, xs, cs, shifted(r, main), out + main);
    }
}

void min_dist_all_avx2(std::size_t na, std::size_t nb, std::size_t dim, const double* const* a,
                       const double* const* b, double* out) {
    const std::size_t bmain = nb - nb % W;
    for (std::size_t i = 0; i < na; ++i) {
        __m256d best4 = _mm256_set1_pd(std::numeric_limits<double>::infinity());
        for (std::size_t j = 0; j < bmain; j += W) {
            __m256d acc = _mm256_setzero_pd();
            for (std::size_t d = 0; d < dim; ++d) {
                const __m256d t = _mm256_sub_pd(_mm256_set1_pd(a[d][i]), _mm256_loadu_pd(b[d] + j));
                acc = _mm256_add_pd(acc, _mm256_mul_pd(t, t));
            }
            best4 = _mm256_min_pd(best4, acc);
        }
        alignas(32) double lanes[W];
        _mm256_store_pd(lanes, best4);
        double best = kmin(kmin(lanes[0], lanes[1]), kmin(lanes[2], lanes[3]));
        for (std::size_t j = bmain; j < nb; ++j) {
            double acc = 0.0;
            for (std::size_t d = 0; d < dim; ++d) {
                const double t = a[d][i] - b[d][j];
                acc += t * t;
            }
            best = kmin(best, acc);
        }
        out[i] = std::sqrt(best);
    }
}

}  // namespace

namespace detail {
const KernelTable avx2_table = {
    eval_program_avx2,
    box_distance_avx2,
    ball_distance_avx2,
    min_dist_all_avx2,
    "avx2",
};
}  // namespace detail

}  // namespace svfix::kernels

#endif  // SVFIX_HAVE_AVX2
