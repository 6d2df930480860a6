#include <cmath>
#include <limits>

#include "svfix/kernels.hpp"

// Scalar reference kernels. These define the semantics; the SIMD variants
// must reproduce them bit-for-bit (see tests/test_kernels.cpp).

namespace svfix::kernels {
namespace {

std::int64_t eval_program_scalar(const Program& p, const ColumnView* vars, std::size_t n,
                                 double* out) {
    double stack[kMaxStack];
    std::int64_t first_err = -1;
    for (std::size_t i = 0; i < n; ++i) {
        int sp = 0;
        bool err = false;
        for (const Op& op : p.ops) {
            switch (op.code) {
                case OpCode::PushConst: stack[sp++] = p.consts[op.arg]; break;
                case OpCode::PushVar: stack[sp++] = vars[op.arg].at(i); break;
                case OpCode::Add: --sp; stack[sp - 1] += stack[sp]; break;
                case OpCode::Sub: --sp; stack[sp - 1] -= stack[sp]; break;
                case OpCode::Mul: --sp; stack[sp - 1] *= stack[sp]; break;
                case OpCode::Div:
                    --sp;
                    if (stack[sp] == 0.0) err = true;
                    stack[sp - 1] /= stack[sp];
                    break;
                case OpCode::Pow: {
                    --sp;
                    const double r = std::pow(stack[sp - 1], stack[sp]);
                    if (std::isnan(r)) err = true;
                    stack[sp - 1] = r;
                    break;
                }
                case OpCode::Neg: stack[sp - 1] = -stack[sp - 1]; break;
                case OpCode::Sqrt: {
                    const double a = stack[sp - 1];
                    if (a < -kSqrtClamp) err = true;
                    stack[sp - 1] = std::sqrt(kmax(a, 0.0));
                    break;
                }
                case OpCode::Sin: stack[sp - 1] = std::sin(stack[sp - 1]); break;
                case OpCode::Cos: stack[sp - 1] = std::cos(stack[sp - 1]); break;
                case OpCode::Abs: stack[sp - 1] = std::fabs(stack[sp - 1]); break;
                case OpCode::Exp: stack[sp - 1] = std::exp(stack[sp - 1]); break;
                case OpCode::Min: --sp; stack[sp - 1] = kmin(stack[sp - 1], stack[sp]); break;
                case OpCode::Max: --sp; stack[sp - 1] = kmax(stack[sp - 1], stack[sp]); break;
            }
        }
        out[i] = stack[0];
        if ((err || std::isnan(out[i])) && first_err < 0) first_err = static_cast<std::int64_t>(i);
    }
    return first_err;
}

void box_distance_scalar(std::size_t n, std::size_t dim, const ColumnView* x,
                         const ColumnView* lo, const ColumnView* hi, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            const double xv = x[d].at(i);
            const double t = kmax(kmax(lo[d].at(i) - xv, xv - hi[d].at(i)), 0.0);
            acc += t * t;
        }
        out[i] = std::sqrt(acc);
    }
}

void ball_distance_scalar(std::size_t n, std::size_t dim, const ColumnView* x,
                          const ColumnView* c, ColumnView r, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
            const double t = x[d].at(i) - c[d].at(i);
            acc += t * t;
        }
        out[i] = kmax(std::sqrt(acc) - r.at(i), 0.0);
    }
}

void min_dist_all_scalar(std::size_t na, std::size_t nb, std::size_t dim,
                         const double* const* a, const double* const* b, double* out) {
    for (std::size_t i = 0; i < na; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < nb; ++j) {
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
const KernelTable scalar_table = {
    eval_program_scalar,
    box_distance_scalar,
    ball_distance_scalar,
    min_dist_all_scalar,
    "scalar",
};
}  // namespace detail

}  // namespace svfix::kernels
