#pragma once

#include "coolsim/bounds.hpp"
#include "coolsim/spectra.hpp"

namespace coolsim {

/// Parameters of a staged heat-engine cooling run between the ambient/cold
/// inverse temperature beta and a hotter bath at beta_H, targeting beta_star.
struct EngineConfig {
    double beta = 1.0;
    double beta_H = 0.0;
    double beta_star = 2.0;
    std::size_t N = 100;   // stage count
    double delta = 0.0;    // per-stage convergence parameter; 0 -> 1/N^2

    void validate() const {
        if (!(beta > 0.0)) throw std::invalid_argument("EngineConfig: beta must be > 0");
        if (beta_H < 0.0 || beta_H >= beta)
            throw std::invalid_argument("EngineConfig: need 0 <= beta_H < beta");
        if (beta_star < beta)
            throw std::invalid_argument("EngineConfig: beta_star must be >= beta");
        if (N < 1) throw std::invalid_argument("EngineConfig: N >= 1 required");
        if (resolved_delta() <= 0.0 || resolved_delta() >= 1.0)
            throw std::invalid_argument("EngineConfig: delta must be in (0,1)");
    }

    double resolved_delta() const {
        return delta > 0.0 ? delta : 1.0 / (static_cast<double>(N) * static_cast<double>(N));
    }
};

struct VirtualQubit {
    double N_V = 0.0;        // population of the {01,10}_CH subspace
    double omega_eff = 0.0;  // effective gap seen by the target
    double gibbs_ratio = 0.0;
};

/// Parameters of the two-level machine subspace the target exchanges with.
/// The caller supplies the resonance omega_C = omega_S + omega_H. beta_H = beta
/// is allowed here (it exposes the no-cooling identity omega_eff = omega_S);
/// the engine protocols themselves require beta_H < beta.
inline VirtualQubit virtual_qubit_params(double beta, double beta_H, double omega_C,
                                         double omega_H) {
    if (!(beta > 0.0)) throw std::invalid_argument("virtual_qubit_params: beta must be > 0");
    if (beta_H < 0.0 || beta_H > beta)
        throw std::invalid_argument("virtual_qubit_params: need 0 <= beta_H <= beta");
    if (!(omega_C > omega_H) || omega_H < 0.0)
        throw std::invalid_argument("virtual_qubit_params: need omega_C > omega_H >= 0");
    const double pC0 = 1.0 / (1.0 + std::exp(-beta * omega_C));
    const double pC1 = 1.0 - pC0;
    const double pH0 = 1.0 / (1.0 + std::exp(-beta_H * omega_H));
    const double pH1 = 1.0 - pH0;
    VirtualQubit v;
    v.N_V = pC0 * pH1 + pC1 * pH0;
    v.gibbs_ratio = std::exp(-beta * omega_C + beta_H * omega_H);
    v.omega_eff = omega_C - (beta_H / beta) * omega_H;
    return v;
}

/// One energy-conserving exchange of two degenerate joint basis states on
/// S x C x H, with the induced local energy flows (delta_p is signed as the
/// population gain of the destination index).
struct ECStepResult {
    DiagonalState state;
    double delta_p = 0.0;
    double dE_S = 0.0;
    double dE_C = 0.0;
    double dE_H = 0.0;
};

inline ECStepResult ec_exchange_step(const DiagonalState& joint, const ProductSpace& space,
                                     const Spectrum& H_S, const Spectrum& H_C,
                                     const Spectrum& H_H, std::size_t source,
                                     std::size_t target) {
    if (space.factor_count() != 3)
        throw std::invalid_argument("ec_exchange_step: S x C x H space required");
    auto energy = [&](std::size_t j) {
        return H_S.energy(space.factor_index(j, 0)) + H_C.energy(space.factor_index(j, 1)) +
               H_H.energy(space.factor_index(j, 2));
    };
    const double ea = energy(source), eb = energy(target);
    if (std::abs(ea - eb) > kEnergyConservationRelTol * std::max({1.0, std::abs(ea), std::abs(eb)}))
        throw std::invalid_argument("ec_exchange_step: pair is not energy degenerate");
    const double dp = joint.prob(source) - joint.prob(target);
    auto U = PermutationUnitary::transposition(space.dimension(), source, target);
    ECStepResult r{apply_permutation(joint, U), dp, 0.0, 0.0, 0.0};
    const double wS = H_S.energy(space.factor_index(target, 0)) -
                      H_S.energy(space.factor_index(source, 0));
    const double wC = H_C.energy(space.factor_index(target, 1)) -
                      H_C.energy(space.factor_index(source, 1));
    const double wH = H_H.energy(space.factor_index(target, 2)) -
                      H_H.energy(space.factor_index(source, 2));
    r.dE_S = wS * dp;
    r.dE_C = wC * dp;
    r.dE_H = wH * dp;
    return r;
}

// ---------------------------------------------------------------------------
// Staged qubit engine: stage n uses a cold qubit of gap omega_S + n*theta and
// a hot qubit of gap n*theta, repeating the {010,101} exchange (with machine
// rethermalisation) m_n times. The excited population follows the closed
// power-law contraction toward the stage's virtual-temperature value.
// ---------------------------------------------------------------------------

struct StageRecord {
    std::size_t n = 0;
    double omega_C = 0.0;
    double omega_H = 0.0;
    double N_V = 0.0;
    std::int64_t m_n = 0;
    double p_n = 0.0;     // excited population after the stage
    double dE_H = 0.0;    // heat drawn from the hot bath during the stage
};

struct EngineRun {
    std::vector<StageRecord> stages;
    double theta = 0.0;    // energy increment per stage
    double p_final = 0.0;  // excited population after stage N
    double q_star = 0.0;   // virtual-temperature endpoint
    double dE_H = 0.0;     // total heat drawn from the hot bath
    std::int64_t ops = 0;  // total three-body exchanges
    double eta = 0.0;
    double dF_S = 0.0;     // free-energy change of the target at beta
};

inline EngineRun qubit_engine_protocol(const EngineConfig& cfg, double omega_S) {
    cfg.validate();
    if (!(omega_S > 0.0))
        throw std::invalid_argument("qubit_engine_protocol: omega_S must be > 0");
    const double beta = cfg.beta, beta_H = cfg.beta_H, beta_star = cfg.beta_star;
    const double delta = cfg.resolved_delta();
    EngineRun run;
    run.eta = 1.0 - beta_H / beta;

    auto excited = [&](double bw) { return std::exp(-bw) / (1.0 + std::exp(-bw)); };
    auto free_energy = [&](double p1) {
        const double S = -(p1 > 0 ? p1 * std::log(p1) : 0.0) -
                         ((1 - p1) > 0 ? (1 - p1) * std::log(1 - p1) : 0.0);
        return p1 * omega_S - S / beta;
    };

    const double p0 = excited(beta * omega_S);
    run.q_star = excited(beta_star * omega_S);
    run.dF_S = free_energy(run.q_star) - free_energy(p0);
    if (beta_star == beta) {  // theta = 0: nothing to do
        run.p_final = p0;
        return run;
    }

    run.theta = (omega_S / static_cast<double>(cfg.N)) * (beta_star - beta) / (beta - beta_H);
    double p = p0;
    for (std::size_t n = 1; n <= cfg.N; ++n) {
        StageRecord st;
        st.n = n;
        st.omega_C = omega_S + static_cast<double>(n) * run.theta;
        st.omega_H = static_cast<double>(n) * run.theta;
        const VirtualQubit v = virtual_qubit_params(beta, beta_H, st.omega_C, st.omega_H);
        st.N_V = v.N_V;
        const double q_n = v.gibbs_ratio / (1.0 + v.gibbs_ratio);
        st.m_n = static_cast<std::int64_t>(
            std::max(1.0, std::ceil(std::log(delta) / std::log1p(-v.N_V))));
        const double p_new = q_n + (p - q_n) * std::pow(1.0 - v.N_V, static_cast<double>(st.m_n));
        st.dE_H = st.omega_H * (p - p_new);
        st.p_n = p_new;
        if (!(p_new < p))
            throw std::logic_error("qubit_engine_protocol: stage failed to cool");
        run.dE_H += st.dE_H;
        run.ops += st.m_n;
        p = p_new;
        run.stages.push_back(st);
    }
    run.p_final = p;
    return run;
}

// ---------------------------------------------------------------------------
// Qudit generalisation: per stage, a cold copy of the target spectrum scaled
// by (1 + n*theta) plus one hot qubit per level pair (i < j) with gap
// n*theta*(w_j - w_i). Each step exchanges the degenerate pair
// |i>_S |j>_C |0>_H <-> |j>_S |i>_C |1>_H with the largest |population
// difference|, rethermalising the machine in between, until the target's mean
// energy is within delta_E of the stage's thermal endpoint.
// ---------------------------------------------------------------------------

struct QuditStageRecord {
    std::size_t n = 0;
    std::int64_t reps = 0;
    double dE_H = 0.0;
    double rel_entropy_to_target = 0.0;  // D(rho_S || thermal(beta_n)) after the stage
};

struct QuditEngineRun {
    std::vector<QuditStageRecord> stages;
    std::vector<double> p_final;  // target populations after stage N
    double theta = 0.0;           // dimensionless increment
    double dE_H = 0.0;
    double dE_S = 0.0;
    std::int64_t ops = 0;
    double eta = 0.0;
    double dF_S = 0.0;
};

inline constexpr std::int64_t kStageRepCap = 10000000;

inline QuditEngineRun qudit_max_exchange_protocol(const Spectrum& H_S, const EngineConfig& cfg,
                                                  double delta_E = 0.0) {
    cfg.validate();
    if (H_S.compressed())
        throw std::invalid_argument("qudit_max_exchange_protocol: explicit spectrum required");
    const std::size_t d = H_S.level_count();
    if (d < 2) throw std::invalid_argument("qudit_max_exchange_protocol: d >= 2 required");
    const double beta = cfg.beta, beta_H = cfg.beta_H, beta_star = cfg.beta_star;
    if (delta_E <= 0.0) delta_E = 1e-10 * H_S.max_energy();

    QuditEngineRun run;
    run.eta = 1.0 - beta_H / beta;
    run.theta = (beta_star - beta) / ((beta - beta_H) * static_cast<double>(cfg.N));

    std::vector<double> p = thermal_state(H_S, beta).probs();
    const auto f0 = functionals(thermal_state(H_S, beta), H_S, beta);
    auto energy_of = [&](const std::vector<double>& q) {
        double e = 0.0;
        for (std::size_t k = 0; k < d; ++k) e += H_S.energy(k) * q[k];
        return e;
    };
    auto relent_to = [&](const std::vector<double>& q, const DiagonalState& tau) {
        double r = 0.0;
        for (std::size_t k = 0; k < d; ++k)
            if (q[k] > 0.0) r += q[k] * (std::log(q[k]) - tau.log_prob(k));
        return clamp_nonneg(r, "qudit_max_exchange_protocol relent");
    };

    for (std::size_t n = 1; n <= cfg.N; ++n) {
        const double scale = 1.0 + static_cast<double>(n) * run.theta;
        const double beta_n = beta + static_cast<double>(n) * run.theta * (beta - beta_H);
        std::vector<double> pC(d);
        {
            std::vector<double> terms(d);
            for (std::size_t k = 0; k < d; ++k) terms[k] = -beta * scale * H_S.energy(k);
            const double lz = log_sum_exp(terms);
            for (std::size_t k = 0; k < d; ++k) pC[k] = std::exp(terms[k] - lz);
        }
        const DiagonalState tau_n = thermal_state(H_S, beta_n);
        const double E_target = functionals(tau_n, H_S, beta).energy;

        QuditStageRecord st;
        st.n = n;
        double relent_prev = relent_to(p, tau_n);
        while (std::abs(energy_of(p) - E_target) > delta_E) {
            if (++st.reps > kStageRepCap)
                throw std::runtime_error(
                    "qudit_max_exchange_protocol: stage " + std::to_string(n) +
                    " did not converge within the repetition cap; residual " +
                    std::to_string(std::abs(energy_of(p) - E_target)));
            std::size_t bi = 0, bj = 1;
            double best = 0.0, best_abs = -1.0;
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = i + 1; j < d; ++j) {
                    const double gH = static_cast<double>(n) * run.theta *
                                      (H_S.energy(j) - H_S.energy(i));
                    const double pH1 = std::exp(-beta_H * gH) / (1.0 + std::exp(-beta_H * gH));
                    const double dp = p[j] * pC[i] * pH1 - p[i] * pC[j] * (1.0 - pH1);
                    if (std::abs(dp) > best_abs) {  // ties: smallest (i,j) wins
                        best_abs = std::abs(dp);
                        best = dp;
                        bi = i;
                        bj = j;
                    }
                }
            }
            if (best_abs <= 0.0) break;  // stage fixed point
            const double dE_S_step = -best * (H_S.energy(bj) - H_S.energy(bi));
            p[bi] += best;
            p[bj] -= best;
            st.dE_H += -static_cast<double>(n) * run.theta * dE_S_step;
            run.dE_S += dE_S_step;
            const double relent_now = relent_to(p, tau_n);
            if (relent_now >= relent_prev + 1e-12)
                throw std::logic_error(
                    "qudit_max_exchange_protocol: relative entropy failed to decrease");
            relent_prev = relent_now;
        }
        st.rel_entropy_to_target = relent_prev;
        run.dE_H += st.dE_H;
        run.ops += st.reps;
        run.stages.push_back(st);
    }
    run.p_final = p;
    const DiagonalState fin = DiagonalState::from_probs(p);
    run.dF_S = functionals(fin, H_S, beta).free_energy - f0.free_energy;
    return run;
}

/// Ceiling on the target ground population reachable by any single
/// energy-conserving interaction with finite machines of the given sizes:
/// 1 - exp(-2 beta w_S^(i*)) / (Z_S d_C d_H).
inline double nogo_ceiling(const Spectrum& H_S, std::size_t i_star, std::size_t d_C,
                           std::size_t d_H, double beta) {
    if (i_star < 1 || i_star >= H_S.level_count())
        throw std::invalid_argument("nogo_ceiling: need 1 <= i* <= d_S - 1");
    double Z = 0.0;
    for (std::size_t k = 0; k < H_S.level_count(); ++k)
        Z += static_cast<double>(H_S.multiplicity(k)) * std::exp(-beta * H_S.energy(k));
    return 1.0 - std::exp(-2.0 * beta * H_S.energy(i_star)) /
                     (Z * static_cast<double>(d_C) * static_cast<double>(d_H));
}

}  // namespace coolsim
