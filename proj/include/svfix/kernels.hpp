#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace svfix::kernels {

/// sqrt(x) for x in [-kSqrtClamp, 0) evaluates to 0; below that it is a
/// domain error. Shared by the AST evaluator and the batch kernels.
inline constexpr double kSqrtClamp = 1e-9;

/// min/max with the exact operand-order semantics of the vector
/// instructions (second operand wins on ties), so the scalar reference
/// and SIMD kernels agree bit-for-bit, including signed zeros.
inline double kmin(double a, double b) { return (a < b) ? a : b; }
inline double kmax(double a, double b) { return (a > b) ? a : b; }

enum class OpCode : std::uint8_t {
    PushConst,
    PushVar,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Neg,
    Sqrt,
    Sin,
    Cos,
    Abs,
    Exp,
    Min,
    Max,
};

struct Op {
    OpCode code;
    std::int32_t arg = 0;  // const index for PushConst, variable index for PushVar
};

/// A flat postfix program over a fixed variable layout. Produced by
/// expr::compile, executed elementwise over columns of inputs.
struct Program {
    std::vector<Op> ops;
    std::vector<double> consts;
    int nvars = 0;
    int stack_need = 0;
};

/// A read-only column of n values. stride == 1 for packed data,
/// stride == 0 broadcasts a single value to every element.
struct ColumnView {
    const double* data = nullptr;
    std::ptrdiff_t stride = 1;

    double at(std::size_t i) const { return data[static_cast<std::ptrdiff_t>(i) * stride]; }
};

inline ColumnView broadcast(const double* v) { return ColumnView{v, 0}; }
inline ColumnView packed(const double* v) { return ColumnView{v, 1}; }

inline constexpr int kMaxStack = 64;

/// Function-pointer table for one backend. All entries write out[0..n) and
/// return the index of the first element with a domain error, or -1.
/// Outputs at non-error indices are valid; error indices hold garbage and
/// are expected to be re-diagnosed through the AST evaluator.
struct KernelTable {
    std::int64_t (*eval_program)(const Program& p, const ColumnView* vars, std::size_t n,
                                 double* out);
    // out[i] = Euclidean distance from point x_i to the box [lo_i, hi_i]
    void (*box_distance)(std::size_t n, std::size_t dim, const ColumnView* x,
                         const ColumnView* lo, const ColumnView* hi, double* out);
    // out[i] = max(||x_i - c_i|| - r_i, 0)
    void (*ball_distance)(std::size_t n, std::size_t dim, const ColumnView* x,
                          const ColumnView* c, ColumnView r, double* out);
    // out[i] = min over j < nb of ||a_i - b_j|| (packed SoA columns)
    void (*min_dist_all)(std::size_t na, std::size_t nb, std::size_t dim,
                         const double* const* a, const double* const* b, double* out);
    const char* name;
};

enum class Backend { Scalar, Avx2 };

bool backend_supported(Backend b);
/// Active backend: SVFIX_KERNEL=scalar|avx2|auto environment override,
/// otherwise the widest supported instruction set.
Backend active_backend();
/// Force a backend (tests). Throws ContractViolation if unsupported.
void set_backend(Backend b);
const char* backend_name(Backend b);

const KernelTable& table();
const KernelTable& table_for(Backend b);

namespace detail {
extern const KernelTable scalar_table;
#if defined(SVFIX_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
}  // namespace detail

}  // namespace svfix::kernels
