#pragma once

#include "coolsim/spectra.hpp"

namespace coolsim {

/// Number of basis states a permutation moves; for permutations this equals
/// the smallest subspace dimension A with U = U_A (+) identity.
inline std::size_t effective_dimension(const PermutationUnitary& U) {
    return U.dimension() - U.fixed_point_count();
}

inline constexpr double kGapResolution = 1e-9;

namespace detail {
/// Distinct energy gaps w_i - w_j of a spectrum inside [a, b), deduplicated
/// so that surviving members are pairwise at least `resolution` apart.
inline std::vector<double> gap_set(const Spectrum& H, double a, double b, double resolution) {
    if (!(a < b)) throw std::invalid_argument("gap_set: need a < b");
    if (!(resolution > 0.0)) throw std::invalid_argument("gap_set: resolution must be > 0");
    std::vector<double> gaps;
    const std::size_t L = H.level_count();
    for (std::size_t i = 0; i < L; ++i) {
        if (H.multiplicity(i) > 1 && a <= 0.0 && 0.0 < b) gaps.push_back(0.0);
        for (std::size_t j = 0; j < L; ++j) {
            if (i == j) continue;
            const double g = H.energy(i) - H.energy(j);
            if (g >= a && g < b) gaps.push_back(g);
        }
    }
    std::sort(gaps.begin(), gaps.end());
    std::vector<double> kept;
    for (double g : gaps)
        if (kept.empty() || g - kept.back() >= resolution) kept.push_back(g);
    return kept;
}
}  // namespace detail

/// Cardinality of the distinct-gap set of H inside [a, b).
inline std::size_t energy_gap_variety(const Spectrum& H, double a, double b,
                                      double resolution = kGapResolution) {
    return detail::gap_set(H, a, b, resolution).size();
}

/// Maximum spacing between consecutive gaps in [a, b), counting the interval
/// endpoints; tends to zero exactly when the gaps densely cover the interval.
inline double gap_coverage(const Spectrum& H, double a, double b,
                           double resolution = kGapResolution) {
    const auto gaps = detail::gap_set(H, a, b, resolution);
    if (gaps.empty()) throw std::domain_error("gap_coverage: no machine gap in the interval");
    double worst = gaps.front() - a;
    for (std::size_t i = 1; i < gaps.size(); ++i) worst = std::max(worst, gaps[i] - gaps[i - 1]);
    worst = std::max(worst, b - gaps.back());
    return worst;
}

// ---------------------------------------------------------------------------
// Eigenvalue fine-tuning residuals of a thermal machine under max cooling of
// a maximally mixed qubit. sum_top/sum_bottom are the two halves of the
// nonincreasingly sorted spectrum; the ratio deviations compare each state's
// final value (lam_{floor(i/2)} + lam_{d/2 + floor(i/2)})/2 with its initial
// one. A machine can only saturate the dissipation bound if 1 - sum_top,
// sum_bottom and the mass-weighted deviation all vanish.
// ---------------------------------------------------------------------------

struct FinetuningResiduals {
    double sum_top = 0.0;
    double sum_bottom = 0.0;
    double max_ratio_dev = 0.0;
    double mass_weighted_ratio_dev = 0.0;
};

inline constexpr std::int64_t kExpansionLimit = std::int64_t{1} << 24;

inline FinetuningResiduals finetuning_residuals(const Spectrum& H_M, double beta) {
    const std::int64_t dim = H_M.dimension();
    if (dim % 2 != 0)
        throw std::invalid_argument("finetuning_residuals: even machine dimension required");
    if (dim > kExpansionLimit)
        throw std::invalid_argument("finetuning_residuals: dimension exceeds expansion limit");
    const DiagonalState tau = thermal_state(H_M, beta);
    std::vector<double> lam;
    lam.reserve(static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < H_M.level_count(); ++i)
        for (std::int64_t c = 0; c < H_M.multiplicity(i); ++c) lam.push_back(tau.prob(i));
    std::sort(lam.begin(), lam.end(), std::greater<>());
    const std::size_t d = lam.size(), half = d / 2;
    FinetuningResiduals r;
    for (std::size_t i = 0; i < half; ++i) r.sum_top += lam[i];
    for (std::size_t i = half; i < d; ++i) r.sum_bottom += lam[i];
    for (std::size_t i = 0; i < d; ++i) {
        const double fin = 0.5 * (lam[i / 2] + lam[half + i / 2]);
        const double dev = std::abs(fin / lam[i] - 1.0);
        r.max_ratio_dev = std::max(r.max_ratio_dev, dev);
        r.mass_weighted_ratio_dev += lam[i] * dev;
    }
    return r;
}

/// Same residuals for the degeneracy-doubling machine of rw_protocol, valid
/// for any N: the sorted spectrum is piecewise constant over level blocks, so
/// every position reduces to one of a handful of level-pair cases.
inline FinetuningResiduals rw_finetuning_residuals(std::size_t N, double theta) {
    const double eps = theta / static_cast<double>(N);
    if (!(eps > 0.0) || eps >= 1.0)
        throw std::invalid_argument("rw_finetuning_residuals: eps must be in (0,1)");
    const double log_q = std::log1p(-eps) - std::log(2.0);
    const double log_2q = std::log1p(-eps);
    std::vector<double> terms;
    for (std::size_t n = 0; n <= N; ++n) terms.push_back(static_cast<double>(n) * log_2q);
    terms.push_back(static_cast<double>(N) * log_q);
    const double logZ = log_sum_exp(terms);
    auto state_mass = [&](std::size_t n) {
        return std::exp(static_cast<double>(n) * log_q - logZ);
    };
    auto level_mass = [&](std::size_t n) {
        return std::exp(static_cast<double>(n) * log_2q - logZ);
    };

    FinetuningResiduals r;
    {
        std::vector<double> top;
        for (std::size_t n = 0; n < N; ++n) top.push_back(static_cast<double>(n) * log_2q);
        top.push_back(static_cast<double>(N) * log_q);
        r.sum_top = std::exp(log_sum_exp(top) - logZ);
        r.sum_bottom = 1.0 - r.sum_top;
    }
    const double inv_q = 1.0 / std::exp(log_q);
    auto add = [&](double mass, double ratio) {
        const double dev = std::abs(ratio - 1.0);
        r.max_ratio_dev = std::max(r.max_ratio_dev, dev);
        r.mass_weighted_ratio_dev += mass * dev;
    };
    // Position 0 (the unique ground state).
    add(state_mass(0), 0.5 * (1.0 + state_mass(N) / state_mass(0)));
    // Blocks 1..N-1: all but one state pair with level n-1; one pairs with n.
    for (std::size_t n = 1; n < N; ++n) {
        const double tail = std::exp(static_cast<double>(N - n) * log_q);
        add(level_mass(n) - state_mass(n), 0.5 * (inv_q + tail));
        add(state_mass(n), 0.5 * (1.0 + tail));
    }
    // Top block (2^N + 1 states): two positions are exact fixed points.
    add(level_mass(N) - state_mass(N), 0.5 * (inv_q + 1.0));
    add(2.0 * state_mass(N), 1.0);
    return r;
}

}  // namespace coolsim
