#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "svfix/rng.hpp"
#include "svfix/vec.hpp"

namespace svfix::cert {

enum class Verdict { Pass, Fail, Inconclusive, Vacuous };

const char* verdict_name(Verdict v);

/// Sequence/probe parameters. Sequences approach the anchor as
/// anchor + 2^-n * direction for n = 1..depth, directions being the
/// signed axes plus seeded random units.
struct SeqSpec {
    int depth = 12;
    int random_directions = 4;
    std::uint64_t seed = 42;
    double rho = 0.5;        // decay exponent of the pass envelope
    double pass_tol = 0.01;  // callers default this to 10*h
    double fail_plateau = 0.01;
};

/// One witness x sequence record: the distances d_n and their verdict.
struct DistanceCurve {
    int witness_id = 0;
    int seq_id = 0;
    Vec witness;
    Vec direction;
    std::vector<double> d;
    Verdict verdict = Verdict::Inconclusive;
    double plateau = 0.0;  // min over the last 4 steps
};

struct Certificate {
    std::string target;
    Vec anchor;
    std::vector<DistanceCurve> curves;
    Verdict overall = Verdict::Inconclusive;
    /// worst failing curve: largest finite plateau, ties by witness then seq id
    std::optional<DistanceCurve> headline;
    std::string note;
};

/// Signed axes of R^dim followed by `random_dirs` seeded unit vectors,
/// near-duplicates removed.
std::vector<Vec> probe_directions(std::size_t dim, int random_dirs, std::uint64_t seed);

/// anchor + 2^-n * dir for n = 1..depth, clamped componentwise into [lo, hi].
std::vector<Vec> sequence_steps(const Vec& anchor, const Vec& dir, int depth, const Vec& lo,
                                const Vec& hi);

/// Three-valued curve classification:
///   Fail          min of the last 4 values stays at or above fail_plateau
///   Pass          last 2 values within pass_tol and the decay envelope
///                 d_n <= d_1 * 2^{-(n-1) rho} + pass_tol holds throughout
///   Inconclusive  anything in between (raw curve kept for inspection)
Verdict classify_curve(const std::vector<double>& d, const SeqSpec& spec, double* plateau_out);

/// Aggregates curve verdicts and selects the headline failure.
void finalize_certificate(Certificate& c);

}  // namespace svfix::cert
