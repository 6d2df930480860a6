#include "svfix/certify_core.hpp"

#include <algorithm>

namespace svfix::cert {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Inconclusive: return "inconclusive";
        case Verdict::Vacuous: return "vacuous";
    }
    return "?";
}

std::vector<Vec> probe_directions(std::size_t dim, int random_dirs, std::uint64_t seed) {
    std::vector<Vec> dirs;
    for (std::size_t i = 0; i < dim; ++i) {
        Vec e(dim, 0.0);
        e[i] = 1.0;
        dirs.push_back(e);
        e[i] = -1.0;
        dirs.push_back(e);
    }
    Rng rng(seed);
    for (int r = 0; r < random_dirs; ++r) dirs.push_back(rng.unit_vec(dim));
    std::vector<Vec> dedup;
    for (auto& d : dirs) {
        bool seen = false;
        for (const auto& q : dedup)
            if (dist(d, q) < 1e-9) {
                seen = true;
                break;
            }
        if (!seen) dedup.push_back(std::move(d));
    }
    return dedup;
}

std::vector<Vec> sequence_steps(const Vec& anchor, const Vec& dir, int depth, const Vec& lo,
                                const Vec& hi) {
    check_same_dim(anchor, dir, "sequence_steps");
    std::vector<Vec> steps;
    steps.reserve(depth);
    double scale = 0.5;
    for (int n = 1; n <= depth; ++n, scale *= 0.5) {
        Vec p = axpy(anchor, scale, dir);
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::clamp(p[i], lo[i], hi[i]);
        steps.push_back(std::move(p));
    }
    return steps;
}

Verdict classify_curve(const std::vector<double>& d, const SeqSpec& spec, double* plateau_out) {
    const std::size_t n = d.size();
    const std::size_t tail = std::min<std::size_t>(4, n);
    double tail_min = d[n - 1];
    for (std::size_t i = n - tail; i < n; ++i) tail_min = std::min(tail_min, d[i]);
    if (plateau_out != nullptr) *plateau_out = tail_min;
    if (tail_min >= spec.fail_plateau) return Verdict::Fail;

    const std::size_t tail2 = std::min<std::size_t>(2, n);
    double last2 = 0.0;
    for (std::size_t i = n - tail2; i < n; ++i) last2 = std::max(last2, d[i]);
    bool envelope = true;
    for (std::size_t i = 0; i < n; ++i) {
        const double bound =
            d[0] * std::pow(2.0, -spec.rho * static_cast<double>(i)) + spec.pass_tol;
        if (d[i] > bound) envelope = false;
    }
    if (last2 <= spec.pass_tol && envelope) return Verdict::Pass;
    return Verdict::Inconclusive;
}

void finalize_certificate(Certificate& c) {
    bool any_fail = false, any_inconclusive = false, all_vacuous = !c.curves.empty();
    for (const auto& cv : c.curves) {
        any_fail = any_fail || cv.verdict == Verdict::Fail;
        any_inconclusive = any_inconclusive || cv.verdict == Verdict::Inconclusive;
        all_vacuous = all_vacuous && cv.verdict == Verdict::Vacuous;
    }
    if (c.curves.empty()) {
        if (c.overall != Verdict::Vacuous) c.overall = Verdict::Inconclusive;
        return;
    }
    if (any_fail) {
        c.overall = Verdict::Fail;
        const DistanceCurve* best = nullptr;
        for (const auto& cv : c.curves) {
            if (cv.verdict != Verdict::Fail) continue;
            if (best == nullptr) {
                best = &cv;
                continue;
            }
            const bool cv_finite = std::isfinite(cv.plateau);
            const bool best_finite = std::isfinite(best->plateau);
            if (cv_finite && !best_finite) {
                best = &cv;
            } else if (cv_finite == best_finite && cv.plateau > best->plateau) {
                best = &cv;
            }
        }
        if (best != nullptr) c.headline = *best;
    } else if (all_vacuous) {
        c.overall = Verdict::Vacuous;
    } else if (any_inconclusive) {
        c.overall = Verdict::Inconclusive;
    } else {
        c.overall = Verdict::Pass;
    }
}

}  // namespace svfix::cert
