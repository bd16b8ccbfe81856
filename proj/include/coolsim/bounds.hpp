#pragma once

#include "coolsim/spectra.hpp"

namespace coolsim {

/// Term-by-term ledger of the dissipation equality
///   beta*dE_M = dS~_S + I(S:M)' + D(rho'_M || tau_M)
/// for one unitary step on a target plus thermal machine.
struct LandauerLedger {
    double beta_dE_M = 0.0;
    double dS_tilde_S = 0.0;   // S(rho_S) - S(rho'_S)
    double mutual_info = 0.0;
    double rel_entropy_M = 0.0;
    double slack = 0.0;        // mutual_info + rel_entropy_M
    double residual = 0.0;     // beta_dE_M - (dS~ + I + D)
    bool rank_increasing = false;
};

/// Evaluate the ledger with every term computed independently. The machine
/// input must be thermal at beta w.r.t. H_M (the equality assumes Gibbs form).
inline LandauerLedger landauer_ledger(const DiagonalState& rho_S, const DiagonalState& tau_M,
                                      const Spectrum& H_S, const Spectrum& H_M, double beta,
                                      const PermutationUnitary& U) {
    if (beta < 0.0 || !std::isfinite(beta))
        throw std::invalid_argument("landauer_ledger: beta must be finite and >= 0");
    const DiagonalState gibbs = thermal_state(H_M, beta);
    for (std::size_t i = 0; i < tau_M.level_count(); ++i)
        if (std::abs(tau_M.prob(i) - gibbs.prob(i)) > 1e-12)
            throw std::invalid_argument("landauer_ledger: machine is not thermal at beta");

    ProductSpace space({rho_S.level_count(), tau_M.level_count()});
    const DiagonalState joint0 = tensor(rho_S, tau_M);
    const DiagonalState joint1 = apply_permutation(joint0, U);
    const DiagonalState rho_S1 = marginal(joint1, space, 0);
    const DiagonalState rho_M1 = marginal(joint1, space, 1);

    LandauerLedger led;
    led.beta_dE_M =
        beta * (functionals(rho_M1, H_M, beta).energy - functionals(tau_M, H_M, beta).energy);
    led.dS_tilde_S = rho_S.entropy() - rho_S1.entropy();
    led.mutual_info = mutual_information(joint1, space);
    led.rel_entropy_M = relative_entropy(rho_M1, tau_M);
    led.rank_increasing = led.rel_entropy_M == kPosInf;
    led.slack = led.mutual_info + led.rel_entropy_M;
    led.residual = led.rank_increasing
                       ? 0.0
                       : led.beta_dE_M - (led.dS_tilde_S + led.mutual_info + led.rel_entropy_M);
    if (!led.rank_increasing && led.beta_dE_M < led.dS_tilde_S - 1e-10)
        throw std::logic_error("landauer_ledger: dissipation below the entropy decrease");
    return led;
}

/// Ledger of the heat-engine equality
///   dF_S + eta*dE_H = -(1/beta)[dS_S + dS_C + dS_H + D_C + D_H]
/// for an energy-conserving unitary on S x C x H with C thermal at beta and
/// H thermal at beta_H < beta.
struct CarnotLandauerLedger {
    double dF_S_beta = 0.0;
    double eta = 0.0;
    double dE_S = 0.0;
    double dE_C = 0.0;
    double dE_H = 0.0;
    double dS_S = 0.0;   // S' - S, signed
    double dS_C = 0.0;
    double dS_H = 0.0;
    double D_C = 0.0;
    double D_H = 0.0;
    double bracket = 0.0;    // dS_S + dS_C + dS_H + D_C + D_H >= 0
    double residual = 0.0;   // dF_S + eta*dE_H + bracket/beta
    double cold_form = 0.0;  // -dS~_S - beta_H dE_S + (beta - beta_H) dE_C >= 0
    bool rank_increasing = false;
};

inline constexpr double kEnergyConservationRelTol = 1e-9;

inline CarnotLandauerLedger carnot_landauer_ledger(const DiagonalState& rho_S,
                                                   const Spectrum& H_S, const Spectrum& H_C,
                                                   const Spectrum& H_H, double beta,
                                                   double beta_H,
                                                   const PermutationUnitary& U) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("carnot_landauer_ledger: beta must be positive");
    if (beta_H < 0.0 || beta_H >= beta)
        throw std::invalid_argument("carnot_landauer_ledger: need 0 <= beta_H < beta");

    ProductSpace space({H_S.level_count(), H_C.level_count(), H_H.level_count()});
    if (U.dimension() != space.dimension())
        throw std::invalid_argument("carnot_landauer_ledger: permutation dimension mismatch");

    // Every moved pair of joint basis states must conserve total energy.
    auto total_energy = [&](std::size_t j) {
        return H_S.energy(space.factor_index(j, 0)) + H_C.energy(space.factor_index(j, 1)) +
               H_H.energy(space.factor_index(j, 2));
    };
    for (std::size_t j = 0; j < space.dimension(); ++j) {
        if (U.target(j) == j) continue;
        const double ea = total_energy(j), eb = total_energy(U.target(j));
        if (std::abs(ea - eb) > kEnergyConservationRelTol * std::max({1.0, std::abs(ea), std::abs(eb)}))
            throw std::invalid_argument(
                "carnot_landauer_ledger: non-energy-conserving pair (" + std::to_string(j) +
                " -> " + std::to_string(U.target(j)) + ")");
    }

    const DiagonalState tau_C = thermal_state(H_C, beta);
    const DiagonalState tau_H = thermal_state(H_H, beta_H);
    const DiagonalState fs[] = {rho_S, tau_C, tau_H};
    const DiagonalState joint0 = tensor(std::span<const DiagonalState>(fs, 3));
    const DiagonalState joint1 = apply_permutation(joint0, U);

    const DiagonalState rS1 = marginal(joint1, space, 0);
    const DiagonalState rC1 = marginal(joint1, space, 1);
    const DiagonalState rH1 = marginal(joint1, space, 2);

    CarnotLandauerLedger led;
    led.eta = 1.0 - beta_H / beta;
    led.dE_S = functionals(rS1, H_S, beta).energy - functionals(rho_S, H_S, beta).energy;
    led.dE_C = functionals(rC1, H_C, beta).energy - functionals(tau_C, H_C, beta).energy;
    led.dE_H = functionals(rH1, H_H, beta).energy - functionals(tau_H, H_H, beta).energy;
    led.dS_S = rS1.entropy() - rho_S.entropy();
    led.dS_C = rC1.entropy() - tau_C.entropy();
    led.dS_H = rH1.entropy() - tau_H.entropy();
    led.D_C = relative_entropy(rC1, tau_C);
    led.D_H = relative_entropy(rH1, tau_H);
    led.rank_increasing = led.D_C == kPosInf || led.D_H == kPosInf;
    led.dF_S_beta = functionals(rS1, H_S, beta).free_energy -
                    functionals(rho_S, H_S, beta).free_energy;
    led.bracket = led.dS_S + led.dS_C + led.dS_H + led.D_C + led.D_H;
    led.residual = led.rank_increasing ? 0.0 : led.dF_S_beta + led.eta * led.dE_H + led.bracket / beta;
    led.cold_form = led.dS_S - beta_H * led.dE_S + (beta - beta_H) * led.dE_C;
    return led;
}

/// Structural floor on the smallest final eigenvalue of the target after any
/// unitary with a thermal machine: exp(-beta * max gap of H_M) * lambda_min.
inline double purity_floor(const DiagonalState& rho_S, const Spectrum& H_M, double beta) {
    if (beta < 0.0) throw std::invalid_argument("purity_floor: beta must be >= 0");
    return std::exp(-beta * H_M.max_gap()) * rho_S.min_prob();
}

/// Relative-entropy cost floor (n_pm / 2) * theta^2 paid by any machine whose
/// final/initial eigenvalue ratios deviate by at least theta on mass n_pm.
inline double deviation_floor(double theta, double n_pm) {
    if (theta < 0.0 || theta >= 1.0)
        throw std::invalid_argument("deviation_floor: theta must be in [0,1)");
    if (n_pm < 0.0 || n_pm > 1.0)
        throw std::invalid_argument("deviation_floor: n_pm must be in [0,1]");
    return 0.5 * n_pm * theta * theta;
}

}  // namespace coolsim
