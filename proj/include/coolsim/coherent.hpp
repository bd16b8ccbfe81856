#pragma once

#include "coolsim/bounds.hpp"
#include "coolsim/spectra.hpp"

namespace coolsim {

/// Per-step record of a sequential protocol on one target system.
struct TraceStep {
    std::size_t n = 0;       // 1-based step index
    double dE_S = 0.0;
    double dE_M = 0.0;
    DiagonalState state_after;
};

struct ProtocolTrace {
    std::vector<TraceStep> steps;
    double dE_S = 0.0;
    double dE_M = 0.0;
    double dS_tilde_S = 0.0;   // entropy decrease of the target over the run
    double ledger_slack = 0.0; // beta*dE_M - dS~_S for the whole run
};

// ---------------------------------------------------------------------------
// Diverging-energy protocol: one full population exchange with a machine of
// equally spaced levels whose gap exceeds every target energy.
// ---------------------------------------------------------------------------

struct SwapResult {
    DiagonalState rho_S_final;
    double dE_S = 0.0;
    double dE_M = 0.0;
    double cost = 0.0;             // dE_S + dE_M, drawn from the work source
    double work_lower_bound = 0.0; // (p_S^(1) - p_M^(1)) * (omega_M - omega_S^(1))
};

inline SwapResult single_swap_protocol(const Spectrum& H_S, double beta, double omega_M) {
    if (H_S.compressed())
        throw std::invalid_argument("single_swap_protocol: explicit target spectrum required");
    const std::size_t d = H_S.level_count();
    if (d < 2) throw std::invalid_argument("single_swap_protocol: target must have >= 2 levels");
    if (omega_M < H_S.max_energy())
        throw std::invalid_argument(
            "single_swap_protocol: machine gap below the largest target energy");
    const Spectrum H_M = Spectrum::equally_spaced(d, omega_M);
    const DiagonalState tau_S = thermal_state(H_S, beta);
    const DiagonalState tau_M = thermal_state(H_M, beta);
    SwapResult r{tau_M, 0.0, 0.0, 0.0, 0.0};
    for (std::size_t k = 0; k < d; ++k) {
        r.dE_S += H_S.energy(k) * (tau_M.prob(k) - tau_S.prob(k));
        r.dE_M += H_M.energy(k) * (tau_S.prob(k) - tau_M.prob(k));
    }
    r.cost = r.dE_S + r.dE_M;
    r.work_lower_bound = (tau_S.prob(1) - tau_M.prob(1)) * (omega_M - H_S.energy(1));
    return r;
}

// ---------------------------------------------------------------------------
// Diverging-time protocol: N full swaps with rethermalised machines
// H_M^(n) = (1 + n*eps) H_S, eps = (beta_max - beta)/(N beta). After step N
// the target is exactly thermal at beta_max.
// ---------------------------------------------------------------------------

inline ProtocolTrace linear_sequence_protocol(const Spectrum& H_S, double beta,
                                              double beta_max, std::size_t N) {
    if (!(beta > 0.0)) throw std::invalid_argument("linear_sequence_protocol: beta must be > 0");
    if (!(beta_max > beta))
        throw std::invalid_argument("linear_sequence_protocol: beta_max must exceed beta");
    if (N < 1) throw std::invalid_argument("linear_sequence_protocol: N >= 1 required");
    const double eps = (beta_max - beta) / (static_cast<double>(N) * beta);

    auto machine = [&](std::size_t n) {
        std::vector<double> e(H_S.level_count());
        for (std::size_t k = 0; k < e.size(); ++k)
            e[k] = (1.0 + static_cast<double>(n) * eps) * H_S.energy(k);
        std::vector<std::int64_t> mult;
        if (H_S.compressed())
            for (std::size_t k = 0; k < e.size(); ++k) mult.push_back(H_S.multiplicity(k));
        return Spectrum::effective(std::move(e), std::move(mult));
    };

    ProtocolTrace trace;
    trace.steps.reserve(N);
    DiagonalState prev = thermal_state(H_S, beta);
    const double S0 = prev.entropy();
    for (std::size_t n = 1; n <= N; ++n) {
        const Spectrum H_Mn = machine(n);
        const DiagonalState cur = thermal_state(H_Mn, beta);  // populations after the swap
        double dES = 0.0, dEM = 0.0;
        for (std::size_t k = 0; k < H_S.level_count(); ++k) {
            const double mk = static_cast<double>(H_S.multiplicity(k));
            dES += mk * H_S.energy(k) * (cur.prob(k) - prev.prob(k));
            dEM += mk * H_Mn.energy(k) * (prev.prob(k) - cur.prob(k));
        }
        trace.steps.push_back({n, dES, dEM, cur});
        trace.dE_S += dES;
        trace.dE_M += dEM;
        prev = cur;
    }
    trace.dS_tilde_S = S0 - prev.entropy();
    trace.ledger_slack = beta * trace.dE_M - trace.dS_tilde_S;
    return trace;
}

// ---------------------------------------------------------------------------
// Closed-form total cost of the equally spaced special case: d-level target
// with gap omega_S, machine gaps omega_alpha = omega_S + alpha*eps,
// eps = (omega_max - omega_S)/N. Evaluated through the geometric k-series.
// ---------------------------------------------------------------------------

inline constexpr double kSeriesCutoff = 1e-16;
inline constexpr std::size_t kSeriesCap = 1000000;

namespace detail {
// sum_k>=1 [e^{-b k wa} - e^{-b k wp}] - d [e^{-b k d wa} - e^{-b k d wp}]
inline double equally_spaced_stage_series(std::size_t d, double beta, double wa, double wp) {
    double total = 0.0;
    const double dd = static_cast<double>(d);
    for (std::size_t k = 1; k <= kSeriesCap; ++k) {
        const double kk = static_cast<double>(k);
        const double t = (std::exp(-beta * kk * wa) - std::exp(-beta * kk * wp)) -
                         dd * (std::exp(-beta * kk * dd * wa) - std::exp(-beta * kk * dd * wp));
        total += t;
        if (std::abs(t) < kSeriesCutoff) return total;
    }
    throw std::runtime_error("equally_spaced_cost: series cap exceeded");
}
}  // namespace detail

inline double equally_spaced_cost(std::size_t d, double beta, double omega_S,
                                  double omega_max, std::size_t N) {
    if (d < 2) throw std::invalid_argument("equally_spaced_cost: d >= 2 required");
    if (!(beta > 0.0)) throw std::invalid_argument("equally_spaced_cost: beta must be > 0");
    if (omega_max < omega_S)
        throw std::invalid_argument("equally_spaced_cost: omega_max < omega_S");
    if (omega_max == omega_S) return 0.0;
    const double eps = (omega_max - omega_S) / static_cast<double>(N);
    double cost = 0.0;
    for (std::size_t a = 1; a <= N; ++a) {
        const double wa = omega_S + static_cast<double>(a) * eps;
        const double wp = omega_S + static_cast<double>(a - 1) * eps;
        cost += (omega_S - wa) * detail::equally_spaced_stage_series(d, beta, wa, wp);
    }
    return cost;
}

/// N -> infinity limit: the two-functional difference dS~_S/beta + dE_S.
inline double equally_spaced_cost_limit(std::size_t d, double beta, double omega_S,
                                        double omega_max) {
    const Spectrum Hs = Spectrum::equally_spaced(d, omega_S);
    const Spectrum Hm = Spectrum::equally_spaced(d, omega_max);
    const DiagonalState t0 = thermal_state(Hs, beta);
    const DiagonalState t1 = thermal_state(Hm, beta);
    const double dS = t0.entropy() - t1.entropy();
    double dE_S = 0.0;
    for (std::size_t k = 0; k < d; ++k) dE_S += Hs.energy(k) * (t1.prob(k) - t0.prob(k));
    return dS / beta + dE_S;
}

// ---------------------------------------------------------------------------
// Maximal cooling of a bipartite diagonal joint state: sort the global
// spectrum nonincreasingly into system-major, machine-minor order. The
// machine marginal of the result is energetically passive.
// ---------------------------------------------------------------------------

struct MaxCoolResult {
    PermutationUnitary permutation;
    DiagonalState rho_S;
    DiagonalState rho_M;
};

/// Tie-break within equal probabilities: machine index ascending (the machine
/// basis is labelled nondecreasing in energy), then source index. This fixes
/// one canonical member of the block-diagonal equivalence class.
inline MaxCoolResult max_cool_permutation(const DiagonalState& joint, std::size_t d_S,
                                          std::size_t d_M) {
    if (joint.compressed())
        throw std::invalid_argument("max_cool_permutation: explicit joint state required");
    if (joint.level_count() != d_S * d_M)
        throw std::invalid_argument("max_cool_permutation: dimension mismatch");
    const std::size_t D = d_S * d_M;
    std::vector<std::size_t> order(D);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (joint.log_prob(a) != joint.log_prob(b)) return joint.log_prob(a) > joint.log_prob(b);
        return a % d_M < b % d_M;
    });
    std::vector<std::size_t> mapping(D);
    for (std::size_t slot = 0; slot < D; ++slot) mapping[order[slot]] = slot;
    PermutationUnitary U(std::move(mapping));
    const DiagonalState joint1 = apply_permutation(joint, U);
    ProductSpace space({d_S, d_M});
    return {std::move(U), marginal(joint1, space, 0), marginal(joint1, space, 1)};
}

// ---------------------------------------------------------------------------
// High-dimensional degeneracy-doubling machine: equally spaced levels
// n = 0..N with gap Delta and multiplicity 2^n (the top level carries one
// extra state), total dimension 2^(N+1). The Gibbs ratio is pinned to
// e^{-beta Delta} = (1 - eps)/2 with eps = theta/N, in beta-normalised units.
// All arithmetic stays in (level, multiplicity, log-probability) form.
// ---------------------------------------------------------------------------

struct RWResult {
    double p0_final = 0.0;          // target ground population after max cooling
    double beta_dE_M = 0.0;         // dissipation of the modified protocol
    double beta_dE_M_unmodified = 0.0; // plain max-cool ordering, for comparison
    double epsilon = 0.0;
    double gap = 0.0;               // Delta in beta-normalised energy units
};

/// Explicit level spectrum of the machine; representable for N <= 62.
inline Spectrum rw_machine_spectrum(std::size_t N, double theta) {
    if (N == 0 || N > 62) throw std::invalid_argument("rw_machine_spectrum: need 1 <= N <= 62");
    const double eps = theta / static_cast<double>(N);
    if (!(eps > 0.0) || eps >= 1.0)
        throw std::invalid_argument("rw_machine_spectrum: eps = theta/N must be in (0,1)");
    const double gap = std::log(2.0 / (1.0 - eps));
    std::vector<double> e(N + 1);
    std::vector<std::int64_t> mult(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
        e[n] = static_cast<double>(n) * gap;
        mult[n] = std::int64_t{1} << n;
    }
    mult[N] += 1;
    return Spectrum::with_multiplicities(std::move(e), std::move(mult));
}

/// Run the maximally mixed qubit through the max-cooling permutation on the
/// degeneracy-doubling machine. The modified ordering treats one top-level
/// state as the pseudo-ground so that level-n states inherit level n-1 values;
/// the unmodified ordering is the plain nonincreasing sort.
inline RWResult rw_protocol(std::size_t N, double theta) {
    if (N == 0) throw std::invalid_argument("rw_protocol: N >= 1 required");
    const double eps = theta / static_cast<double>(N);
    if (!(eps > 0.0) || eps >= 1.0)
        throw std::invalid_argument("rw_protocol: eps = theta/N must be in (0,1)");

    const double log_q = std::log1p(-eps) - std::log(2.0);   // per-state Gibbs ratio
    const double log_2q = std::log1p(-eps);                  // level-mass ratio
    const double Delta = -log_q;

    // log Z over levels, counting the extra top state.
    std::vector<double> terms;
    terms.reserve(N + 2);
    for (std::size_t n = 0; n <= N; ++n) terms.push_back(static_cast<double>(n) * log_2q);
    terms.push_back(static_cast<double>(N) * log_q);
    const double logZ = log_sum_exp(terms);

    // Ground-block mass: levels 0..N-1 plus one top-level state.
    std::vector<double> top;
    for (std::size_t n = 0; n < N; ++n) top.push_back(static_cast<double>(n) * log_2q);
    top.push_back(static_cast<double>(N) * log_q);
    RWResult r;
    r.epsilon = eps;
    r.gap = Delta;
    r.p0_final = std::exp(log_sum_exp(top) - logZ);

    // (lam_{n-1}/2 + lam_N/2 - lam_n)/lam_n = 1/(2 q) - 1 + q^(N-n)/2 with
    // q = (1-eps)/2 the per-state Gibbs ratio.
    const double half_over_q_minus_1 = 0.5 / std::exp(log_q) - 1.0;

    // Modified ordering: every level-n state ends at (lam_{n-1} + lam_N)/2.
    double dEM = 0.0;
    for (std::size_t n = 1; n <= N; ++n) {
        const double level_mass = std::exp(static_cast<double>(n) * log_2q - logZ); // 2^n lam_n
        const double tail_ratio = std::exp(static_cast<double>(N - n) * log_q);     // lam_N/lam_n
        dEM += static_cast<double>(n) * Delta * level_mass *
               (half_over_q_minus_1 + 0.5 * tail_ratio);
    }
    r.beta_dE_M = dEM;

    // Plain ordering: one state per block inherits its own level value, and
    // the top block only mixes with itself at the last two positions.
    double dEM_u = 0.0;
    for (std::size_t n = 1; n < N; ++n) {
        const double level_mass = std::exp(static_cast<double>(n) * log_2q - logZ);
        const double state_mass = std::exp(static_cast<double>(n) * log_q - logZ); // lam_n
        const double tail_ratio = std::exp(static_cast<double>(N - n) * log_q);
        dEM_u += static_cast<double>(n) * Delta *
                 ((level_mass - state_mass) * (half_over_q_minus_1 + 0.5 * tail_ratio) +
                  state_mass * 0.5 * (tail_ratio - 1.0));
    }
    {
        // Top block: (2^N - 1) states move from lam_N to (lam_{N-1} + lam_N)/2.
        const double level_mass = std::exp(static_cast<double>(N) * log_2q - logZ);
        const double state_mass = std::exp(static_cast<double>(N) * log_q - logZ);
        dEM_u += static_cast<double>(N) * Delta * 0.5 * (level_mass - state_mass) *
                 (1.0 / std::exp(log_q) - 1.0);
    }
    r.beta_dE_M_unmodified = dEM_u;
    return r;
}

// ---------------------------------------------------------------------------
// Tail compression: replace all machine levels above a cutoff by a single
// effective level carrying the same thermal weight. Any unitary confined to
// the kept levels sees identical physics.
// ---------------------------------------------------------------------------

inline Spectrum truncate_machine(const Spectrum& H_M, std::size_t m, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("truncate_machine: beta must be > 0");
    if (m + 1 >= H_M.level_count())
        throw std::invalid_argument("truncate_machine: empty tail (m must be < level count - 1)");
    std::vector<double> tail;
    for (std::size_t n = m + 1; n < H_M.level_count(); ++n)
        tail.push_back(std::log(static_cast<double>(H_M.multiplicity(n))) -
                       beta * H_M.energy(n));
    const double w_tilde = -log_sum_exp(tail) / beta;
    std::vector<double> e;
    std::vector<std::int64_t> mult;
    for (std::size_t n = 0; n <= m; ++n) {
        e.push_back(H_M.energy(n));
        mult.push_back(H_M.multiplicity(n));
    }
    e.push_back(w_tilde);
    mult.push_back(1);
    return Spectrum::effective(std::move(e), std::move(mult));
}

/// Right-to-left composition of protocol steps sharing one joint space;
/// steps are given in application order (steps.front() acts first).
inline PermutationUnitary compose_steps(std::span<const PermutationUnitary> steps) {
    if (steps.empty()) throw std::invalid_argument("compose_steps: no steps");
    PermutationUnitary total = steps.front();
    for (std::size_t i = 1; i < steps.size(); ++i) total = steps[i].after(total);
    return total;
}

}  // namespace coolsim
