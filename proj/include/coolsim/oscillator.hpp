#pragma once

#include <Eigen/Dense>
#include <complex>

#include "coolsim/core.hpp"

namespace coolsim {

// ---------------------------------------------------------------------------
// Gaussian sector. Every state handled here is a zero-mean thermal mode, so a
// single covariance scale per mode (Gamma = cov_scale * I_2) carries the full
// description and mode swaps just exchange scalars.
// ---------------------------------------------------------------------------

struct GaussianMode {
    double omega = 0.0;
    double cov_scale = 1.0;  // coth(beta*omega/2) for a thermal mode; >= 1
};

inline GaussianMode thermal_mode(double beta, double omega) {
    if (!(omega > 0.0)) throw std::invalid_argument("thermal_mode: omega must be > 0");
    if (!(beta > 0.0)) throw std::invalid_argument("thermal_mode: beta must be > 0");
    return {omega, 1.0 / std::tanh(0.5 * beta * omega)};
}

/// Mean energy omega * (tr Gamma - 2)/4 of a zero-mean single mode.
inline double mode_energy(const GaussianMode& m) {
    return m.omega * (m.cov_scale - 1.0) * 0.5;
}

/// Thermal-oscillator entropy in nats: beta*w*x/(1-x) - log(1-x), x = e^{-bw}.
inline double oscillator_entropy(double beta, double omega) {
    const double x = std::exp(-beta * omega);
    return beta * omega * x / (1.0 - x) - std::log1p(-x);
}

struct GaussianStep {
    std::size_t n = 0;
    double dE_S = 0.0;
    double dE_M = 0.0;
    GaussianMode system_after;
};

struct GaussianTrace {
    std::vector<GaussianStep> steps;
    double dE_S = 0.0;
    double dE_M = 0.0;
    double dS_tilde_S = 0.0;
    double ledger_slack = 0.0;          // beta*dE_M - dS~_S
    double final_temperature_factor = 0.0;  // T'/T = omega_S/omega_max, exact
    GaussianMode system_final;
};

/// Mode-swap ladder: machine mode n has frequency omega_S + n*eps with
/// eps = (omega_max - omega_S)/N; each step swaps covariance blocks.
inline GaussianTrace gaussian_swap_sequence(double beta, double omega_S, double omega_max,
                                            std::size_t N) {
    if (!(omega_max >= omega_S) || !(omega_S > 0.0))
        throw std::invalid_argument("gaussian_swap_sequence: need omega_max >= omega_S > 0");
    if (!(beta > 0.0)) throw std::invalid_argument("gaussian_swap_sequence: beta must be > 0");
    if (N < 1) throw std::invalid_argument("gaussian_swap_sequence: N >= 1 required");
    const double eps = (omega_max - omega_S) / static_cast<double>(N);
    auto coth_half = [&](double w) { return 1.0 / std::tanh(0.5 * beta * w); };

    GaussianTrace tr;
    tr.steps.reserve(N);
    for (std::size_t n = 1; n <= N; ++n) {
        const double w_prev = omega_S + static_cast<double>(n - 1) * eps;
        const double w_n = omega_S + static_cast<double>(n) * eps;
        GaussianStep st;
        st.n = n;
        st.dE_S = 0.5 * omega_S * (coth_half(w_n) - coth_half(w_prev));
        st.dE_M = 0.5 * w_n * (coth_half(w_prev) - coth_half(w_n));
        st.system_after = {omega_S, coth_half(w_n)};
        if (st.system_after.cov_scale < 1.0)
            throw std::logic_error("gaussian_swap_sequence: covariance scale below vacuum");
        tr.dE_S += st.dE_S;
        tr.dE_M += st.dE_M;
        tr.steps.push_back(st);
    }
    tr.system_final = tr.steps.back().system_after;
    tr.final_temperature_factor = omega_S / omega_max;
    tr.dS_tilde_S = oscillator_entropy(beta, omega_S) - oscillator_entropy(beta, omega_max);
    tr.ledger_slack = beta * tr.dE_M - tr.dS_tilde_S;
    return tr;
}

// ---------------------------------------------------------------------------
// Non-Gaussian two-level ladder on equal-frequency oscillators. The joint
// spectrum p~_k = e^{-beta w k}(1-e^{-beta w})^2 has degeneracy k+1; a greedy
// sequence of two-level exchanges funnels the sorted values into the
// system-ground subspace. Occupation bookkeeping stays compressed in k.
// ---------------------------------------------------------------------------

struct LadderState {
    std::size_t K = 0;                  // truncation level of the joint index
    std::vector<std::int64_t> moved;    // per k: copies placed into the ground subspace
};

struct LadderResult {
    double ground_pop = 0.0;
    double dE_M_over_omega = 0.0;
    double beta_dE_M_minus_dS = 0.0;
    double machine_energy_over_omega = 0.0;
    double tail_mass = 0.0;
    std::size_t K_used = 0;
    LadderState state;
};

inline constexpr double kLadderTailTarget = 1e-12;
inline constexpr double kLadderEnergyTailTarget = 1e-11;

/// Mass beyond level K: sum_{k>K} (k+1) x^k (1-x)^2.
inline double ladder_tail_mass(double x, std::size_t K) {
    const double Kp = static_cast<double>(K);
    return (Kp + 2.0) * std::pow(x, Kp + 1.0) * (1.0 - x) + std::pow(x, Kp + 2.0);
}

/// Energy beyond level K: sum_{k>K} x^k (1-x)^2 k(k+1)(k+2)/2 (cubic weights,
/// so it dominates the feasibility of a truncation choice).
inline double ladder_energy_tail(double x, std::size_t K) {
    double s = 0.0;
    for (std::size_t k = K + 1; k < K + 2000000; ++k) {
        const double kk = static_cast<double>(k);
        const double t = std::pow(x, kk) * 0.5 * kk * (kk + 1.0) * (kk + 2.0);
        s += t;
        if (t < 1e-25 * std::max(s, 1.0)) break;
    }
    return s * (1.0 - x) * (1.0 - x);
}

inline std::size_t ladder_required_K(double x) {
    std::size_t K = 8;
    while (ladder_tail_mass(x, K) >= kLadderTailTarget ||
           ladder_energy_tail(x, K) >= kLadderEnergyTailTarget) {
        K *= 2;
        if (K > (1u << 26)) throw std::runtime_error("ladder: no feasible truncation");
    }
    while (K > 8 && ladder_tail_mass(x, K - 1) < kLadderTailTarget &&
           ladder_energy_tail(x, K - 1) < kLadderEnergyTailTarget)
        --K;
    return K;
}

inline LadderResult nongaussian_ladder(double beta, double omega, std::size_t K = 0) {
    if (!(beta > 0.0) || !(omega > 0.0))
        throw std::invalid_argument("nongaussian_ladder: beta, omega must be > 0");
    const double x = std::exp(-beta * omega);
    if (K == 0) {
        K = ladder_required_K(x);
    } else if (ladder_tail_mass(x, K) >= kLadderTailTarget) {
        throw std::invalid_argument("nongaussian_ladder: truncation too small, need K >= " +
                                    std::to_string(ladder_required_K(x)));
    }

    std::vector<double> ptilde(K + 1);
    const double one_minus_x = -std::expm1(-beta * omega);
    for (std::size_t k = 0; k <= K; ++k)
        ptilde[k] = std::exp(-beta * omega * static_cast<double>(k)) * one_minus_x * one_minus_x;

    LadderResult res;
    res.K_used = K;
    res.tail_mass = ladder_tail_mass(x, K);
    res.state.K = K;
    res.state.moved.assign(K + 1, 0);

    // Greedy walk over ground slots |0,n>. The largest population not yet in
    // the ground subspace is always the lowest k with an excited copy left,
    // counting copies displaced out of overwritten ground slots.
    std::vector<std::int64_t> avail(K + 1, 0);
    for (std::size_t k = 1; k <= K; ++k) avail[k] = static_cast<std::int64_t>(k);
    std::size_t level = 0, next_boundary = 1;  // slot n belongs to level k(n)
    double ground = 0.0, efin = 0.0;
    const std::size_t slot_end = (K + 1) * (K + 2) / 2;  // first slot past level K
    for (std::size_t n = 0; n < slot_end; ++n) {
        if (n == next_boundary) {
            ++level;
            next_boundary += level + 1;
        }
        if (level != n) {  // slot holds p~_n natively; replace it by p~_level
            if (avail[level] <= 0)
                throw std::logic_error("nongaussian_ladder: bookkeeping exhausted a level");
            --avail[level];
            if (n <= K) ++avail[n];  // displaced native copy rejoins the pool
        }
        ++res.state.moved[level];
        ground += ptilde[level];
        efin += static_cast<double>(n) * ptilde[level];
    }

    res.ground_pop = ground;
    res.machine_energy_over_omega = efin;
    res.dE_M_over_omega = efin - x / (1.0 - x);
    res.beta_dE_M_minus_dS =
        beta * omega * res.dE_M_over_omega - oscillator_entropy(beta, omega);
    return res;
}

// ---------------------------------------------------------------------------
// Compilation of the N-step mode-swap cascade into one generator. The cascade
// acts on mode operators as a -> i b_1, b_k -> -b_{k+1}, b_N -> i a, a cyclic
// single-particle map alpha_(N) whose eigenpairs are known in closed form.
// The Hermitian generator is the principal logarithm; the closed-form
// coupling matrix A reported alongside follows the direct summation formula
// and converges entrywise to i i^{d_j1} i^{d_k1} / (j - k).
// ---------------------------------------------------------------------------

struct CompiledHamiltonian {
    std::size_t N = 0;
    Eigen::MatrixXcd alpha;      // single-particle cyclic map, (N+1)x(N+1)
    Eigen::MatrixXcd generator;  // Hermitian; exp(-i generator) == alpha
    Eigen::MatrixXcd coupling;   // closed-form coefficient report A_jk
    double herm_defect = 0.0;    // max |G - G^dag| before symmetrisation
    double recon_error = 0.0;    // max |exp(-i generator) - alpha|
    double eig_residual = 0.0;   // max |alpha v - lambda v| of the closed-form pairs
    std::vector<std::size_t> branch_warnings;  // eigenvalues within 1e-9 of the log cut
};

namespace detail {
/// Scaling-and-squaring Taylor exponential; independent of any eigenstructure.
inline Eigen::MatrixXcd expm(const Eigen::MatrixXcd& M) {
    const double norm = M.cwiseAbs().sum();
    int s = 0;
    while (norm / std::pow(2.0, s) > 0.5) ++s;
    const Eigen::MatrixXcd A = M / std::pow(2.0, s);
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(M.rows(), M.cols());
    Eigen::MatrixXcd sum = term;
    for (int k = 1; k <= 40; ++k) {
        term = (term * A) / static_cast<double>(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-20) break;
    }
    for (int k = 0; k < s; ++k) sum = sum * sum;
    return sum;
}
}  // namespace detail

inline std::complex<double> cyclic_coupling_limit(std::size_t j, std::size_t k) {
    if (j == k) return 0.0;
    const std::complex<double> i(0.0, 1.0);
    std::complex<double> phase = i;
    if (j == 1) phase *= i;
    if (k == 1) phase *= i;
    return phase / static_cast<double>(static_cast<std::ptrdiff_t>(j) -
                                       static_cast<std::ptrdiff_t>(k));
}

inline CompiledHamiltonian compile_cyclic_hamiltonian(std::size_t N) {
    if (N < 1 || N > 64)
        throw std::invalid_argument("compile_cyclic_hamiltonian: need 1 <= N <= 64");
    const std::size_t D = N + 1;
    const std::complex<double> i(0.0, 1.0);

    CompiledHamiltonian out;
    out.N = N;
    out.alpha = Eigen::MatrixXcd::Zero(D, D);
    out.alpha(0, N) = i;
    out.alpha(1, 0) = i;
    for (std::size_t r = 2; r < D; ++r) out.alpha(r, r - 1) = -1.0;

    // Closed-form eigenpairs lambda_k = -exp(-i pi (2k-1)/(N+1)).
    Eigen::VectorXcd lam(D);
    Eigen::MatrixXcd V(D, D);
    for (std::size_t k = 1; k <= D; ++k) {
        lam(k - 1) = -std::exp(-i * M_PI * (2.0 * static_cast<double>(k) - 1.0) /
                               static_cast<double>(D));
        const std::complex<double> base = -lam(k - 1);
        for (std::size_t j = 1; j <= D; ++j) {
            std::complex<double> v = std::pow(base, -static_cast<double>(j));
            if (j == 1) v *= i;
            V(j - 1, k - 1) = -v / std::sqrt(static_cast<double>(D));
        }
    }
    out.eig_residual = (out.alpha * V - V * lam.asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff();

    // Principal log of each unimodular eigenvalue; flag proximity to the cut.
    Eigen::VectorXcd loglam(D);
    for (std::size_t k = 0; k < D; ++k) {
        const double arg = std::arg(lam(k));
        loglam(k) = std::complex<double>(0.0, arg);
        if (M_PI - std::abs(arg) < 1e-9) out.branch_warnings.push_back(k);
    }
    const Eigen::MatrixXcd G = i * V * loglam.asDiagonal() * V.adjoint();
    out.herm_defect = (G - G.adjoint()).cwiseAbs().maxCoeff();
    out.generator = 0.5 * (G + G.adjoint());
    out.recon_error = (detail::expm(-i * out.generator) - out.alpha).cwiseAbs().maxCoeff();

    // Closed-form coefficient report.
    out.coupling = Eigen::MatrixXcd::Zero(D, D);
    for (std::size_t j = 1; j <= D; ++j) {
        for (std::size_t k = 1; k <= D; ++k) {
            std::complex<double> s = 0.0;
            for (std::size_t p = 1; p <= D; ++p) {
                const double c = 2.0 * static_cast<double>(p) - 2.0 - static_cast<double>(N);
                s += c * std::exp(-i * M_PI * (2.0 * static_cast<double>(p) - 1.0) *
                                  (static_cast<double>(j) - static_cast<double>(k)) /
                                  static_cast<double>(D));
            }
            std::complex<double> phase = 1.0;
            if (j == 1) phase *= i;
            if (k == 1) phase *= i;
            out.coupling(j - 1, k - 1) =
                phase * M_PI / (static_cast<double>(D) * static_cast<double>(D)) * s;
        }
    }
    return out;
}

}  // namespace coolsim
