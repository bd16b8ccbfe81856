#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "coolsim/core.hpp"

namespace coolsim {

/// Diagonal Hamiltonian of one subsystem: the ordered energy eigenvalues,
/// optionally compressed by level degeneracy. The ground-state energy is
/// pinned to zero for regular spectra; spectra derived from effective
/// constructions (tail truncation) may break ordering and carry an offset,
/// and are built through `effective()`.
class Spectrum {
  public:
    static Spectrum levels(std::vector<double> energies) {
        return Spectrum(std::move(energies), {}, /*checked=*/true);
    }

    static Spectrum with_multiplicities(std::vector<double> energies,
                                        std::vector<std::int64_t> mult) {
        return Spectrum(std::move(energies), std::move(mult), /*checked=*/true);
    }

    /// d equally spaced levels 0, gap, 2*gap, ...
    static Spectrum equally_spaced(std::size_t d, double gap) {
        if (d == 0) throw std::invalid_argument("Spectrum: empty");
        if (gap < 0) throw std::invalid_argument("Spectrum: negative gap");
        std::vector<double> e(d);
        for (std::size_t k = 0; k < d; ++k) e[k] = static_cast<double>(k) * gap;
        return levels(std::move(e));
    }

    /// Effective spectrum with relaxed invariants (no ordering, no zero
    /// ground level). Used for derived machines such as tail-compressed ones.
    static Spectrum effective(std::vector<double> energies,
                              std::vector<std::int64_t> mult = {}) {
        return Spectrum(std::move(energies), std::move(mult), /*checked=*/false);
    }

    std::size_t level_count() const { return energies_.size(); }
    double energy(std::size_t i) const { return energies_.at(i); }
    std::int64_t multiplicity(std::size_t i) const { return mult_.empty() ? 1 : mult_.at(i); }
    bool compressed() const { return !mult_.empty(); }
    const std::vector<double>& energies() const { return energies_; }

    std::int64_t dimension() const {
        if (mult_.empty()) return static_cast<std::int64_t>(energies_.size());
        std::int64_t d = 0;
        for (std::int64_t m : mult_) d += m;
        return d;
    }

    double min_energy() const { return *std::min_element(energies_.begin(), energies_.end()); }
    double max_energy() const { return *std::max_element(energies_.begin(), energies_.end()); }

    /// Largest energy gap max_{i,j} |w_i - w_j|.
    double max_gap() const { return max_energy() - min_energy(); }

    /// Expand multiplicities into an explicit per-state energy list.
    std::vector<double> expanded() const {
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(dimension()));
        for (std::size_t i = 0; i < energies_.size(); ++i)
            for (std::int64_t c = 0; c < multiplicity(i); ++c) out.push_back(energies_[i]);
        return out;
    }

  private:
    Spectrum(std::vector<double> energies, std::vector<std::int64_t> mult, bool checked)
        : energies_(std::move(energies)), mult_(std::move(mult)) {
        if (energies_.empty()) throw std::invalid_argument("Spectrum: empty");
        if (!mult_.empty() && mult_.size() != energies_.size())
            throw std::invalid_argument("Spectrum: multiplicity length mismatch");
        for (std::int64_t m : mult_)
            if (m < 1) throw std::invalid_argument("Spectrum: multiplicity < 1");
        if (!mult_.empty() &&
            std::all_of(mult_.begin(), mult_.end(), [](std::int64_t m) { return m == 1; }))
            mult_.clear();  // trivially compressed; keep the explicit representation
        for (double e : energies_)
            if (!std::isfinite(e)) throw std::invalid_argument("Spectrum: non-finite energy");
        if (checked) {
            if (energies_.front() != 0.0)
                throw std::invalid_argument("Spectrum: ground-state energy must be 0");
            if (!std::is_sorted(energies_.begin(), energies_.end()))
                throw std::invalid_argument("Spectrum: energies must be nondecreasing");
        }
    }

    std::vector<double> energies_;
    std::vector<std::int64_t> mult_;
};

/// Probability vector aligned with a Spectrum. Log-probabilities are the
/// authoritative representation; linear values are materialised on demand.
/// For a compressed spectrum the entries are per-state log-probabilities
/// (total mass of level i is mult_i * exp(log_p_i)).
class DiagonalState {
  public:
    static DiagonalState from_log_probs(std::vector<double> log_probs,
                                        std::vector<std::int64_t> mult = {}) {
        return DiagonalState(std::move(log_probs), std::move(mult));
    }

    static DiagonalState from_probs(const std::vector<double>& probs,
                                    std::vector<std::int64_t> mult = {}) {
        std::vector<double> lp(probs.size());
        for (std::size_t i = 0; i < probs.size(); ++i) {
            if (probs[i] < 0.0)
                throw std::invalid_argument("DiagonalState: negative probability");
            lp[i] = probs[i] > 0.0 ? std::log(probs[i]) : kNegInf;
        }
        return DiagonalState(std::move(lp), std::move(mult));
    }

    std::size_t level_count() const { return log_probs_.size(); }
    std::int64_t multiplicity(std::size_t i) const { return mult_.empty() ? 1 : mult_.at(i); }
    bool compressed() const { return !mult_.empty(); }
    double log_prob(std::size_t i) const { return log_probs_.at(i); }
    double prob(std::size_t i) const { return std::exp(log_probs_.at(i)); }
    const std::vector<double>& log_probs() const { return log_probs_; }

    std::vector<double> probs() const {
        std::vector<double> p(log_probs_.size());
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::exp(log_probs_[i]);
        return p;
    }

    /// Total mass of level i (multiplicity times per-state probability).
    double level_mass(std::size_t i) const {
        return static_cast<double>(multiplicity(i)) * prob(i);
    }

    double total_mass() const {
        double s = 0.0;
        for (std::size_t i = 0; i < level_count(); ++i) s += level_mass(i);
        return s;
    }

    double min_prob() const {
        double m = kPosInf;
        for (double lp : log_probs_) m = std::min(m, std::exp(lp));
        return m;
    }

    /// Shannon entropy in nats, with 0 log 0 := 0.
    double entropy() const {
        double s = 0.0;
        for (std::size_t i = 0; i < level_count(); ++i) {
            const double lp = log_probs_[i];
            if (lp == kNegInf) continue;
            s -= static_cast<double>(multiplicity(i)) * std::exp(lp) * lp;
        }
        return s;
    }

    std::size_t rank() const {
        std::size_t r = 0;
        for (std::size_t i = 0; i < level_count(); ++i)
            if (log_probs_[i] != kNegInf) r += static_cast<std::size_t>(multiplicity(i));
        return r;
    }

  private:
    DiagonalState(std::vector<double> lp, std::vector<std::int64_t> mult)
        : log_probs_(std::move(lp)), mult_(std::move(mult)) {
        if (log_probs_.empty()) throw std::invalid_argument("DiagonalState: empty");
        if (!mult_.empty() && mult_.size() != log_probs_.size())
            throw std::invalid_argument("DiagonalState: multiplicity length mismatch");
        if (std::abs(total_mass() - 1.0) > 1e-12)
            throw std::invalid_argument("DiagonalState: not normalised");
    }

    std::vector<double> log_probs_;
    std::vector<std::int64_t> mult_;
};

/// Gibbs state of H at inverse temperature beta, computed in the log domain.
/// beta = 0 is the uniform state; beta = +inf is the ground-state point mass
/// (uniform over degenerate ground levels). Negative beta is rejected.
inline DiagonalState thermal_state(const Spectrum& H, double beta) {
    if (std::isnan(beta) || beta < 0.0)
        throw std::invalid_argument("thermal_state: beta must be >= 0");
    const std::size_t L = H.level_count();
    std::vector<double> lp(L);
    if (beta == kPosInf) {
        const double e0 = H.min_energy();
        std::int64_t ground = 0;
        for (std::size_t i = 0; i < L; ++i)
            if (H.energy(i) == e0) ground += H.multiplicity(i);
        for (std::size_t i = 0; i < L; ++i)
            lp[i] = H.energy(i) == e0 ? -std::log(static_cast<double>(ground)) : kNegInf;
    } else {
        std::vector<double> terms(L);
        for (std::size_t i = 0; i < L; ++i)
            terms[i] = std::log(static_cast<double>(H.multiplicity(i))) - beta * H.energy(i);
        const double logZ = log_sum_exp(terms);
        for (std::size_t i = 0; i < L; ++i) lp[i] = -beta * H.energy(i) - logZ;
    }
    std::vector<std::int64_t> mult;
    if (H.compressed()) {
        mult.resize(L);
        for (std::size_t i = 0; i < L; ++i) mult[i] = H.multiplicity(i);
    }
    return DiagonalState::from_log_probs(std::move(lp), std::move(mult));
}

struct Functionals {
    double energy;      // tr[H rho]
    double entropy;     // nats
    double Z_at_beta;   // partition function of H at the given beta
    double free_energy; // energy - entropy/beta
};

inline Functionals functionals(const DiagonalState& rho, const Spectrum& H, double beta) {
    if (rho.level_count() != H.level_count())
        throw std::invalid_argument("functionals: dimension mismatch");
    for (std::size_t i = 0; i < H.level_count(); ++i)
        if (rho.multiplicity(i) != H.multiplicity(i))
            throw std::invalid_argument("functionals: multiplicity mismatch");
    double E = 0.0;
    for (std::size_t i = 0; i < H.level_count(); ++i) E += rho.level_mass(i) * H.energy(i);
    const double S = rho.entropy();
    std::vector<double> terms(H.level_count());
    for (std::size_t i = 0; i < H.level_count(); ++i)
        terms[i] = std::log(static_cast<double>(H.multiplicity(i))) - beta * H.energy(i);
    const double Z = std::exp(log_sum_exp(terms));
    const double F = beta > 0.0 ? E - S / beta : (S > 0.0 ? kNegInf : E);
    return {E, S, Z, F};
}

/// Relative entropy D(rho || sigma) in nats. Returns +inf when the support of
/// rho is not contained in the support of sigma. Tiny negative round-off is
/// clamped to zero; anything beyond the clamp threshold throws.
inline double relative_entropy(const DiagonalState& rho, const DiagonalState& sigma) {
    if (rho.level_count() != sigma.level_count())
        throw std::invalid_argument("relative_entropy: dimension mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < rho.level_count(); ++i) {
        if (rho.multiplicity(i) != sigma.multiplicity(i))
            throw std::invalid_argument("relative_entropy: multiplicity mismatch");
        const double lp = rho.log_prob(i);
        if (lp == kNegInf) continue;
        const double lq = sigma.log_prob(i);
        if (lq == kNegInf) return kPosInf;
        d += rho.level_mass(i) * (lp - lq);
    }
    return clamp_nonneg(d, "relative_entropy");
}

/// Tensor product of explicit states on a product space (log-domain add).
inline DiagonalState tensor(std::span<const DiagonalState> factors) {
    std::vector<std::size_t> dims;
    for (const auto& f : factors) {
        if (f.compressed())
            throw std::invalid_argument("tensor: compressed factors not supported");
        dims.push_back(f.level_count());
    }
    ProductSpace space(dims);
    std::vector<double> lp(space.dimension());
    for (std::size_t j = 0; j < space.dimension(); ++j) {
        auto idx = space.decode(j);
        double s = 0.0;
        for (std::size_t f = 0; f < factors.size(); ++f) s += factors[f].log_prob(idx[f]);
        lp[j] = s;
    }
    return DiagonalState::from_log_probs(std::move(lp));
}

inline DiagonalState tensor(const DiagonalState& a, const DiagonalState& b) {
    const DiagonalState fs[] = {a, b};
    return tensor(std::span<const DiagonalState>(fs, 2));
}

/// Marginal of an explicit joint state onto one factor (log-sum-exp).
inline DiagonalState marginal(const DiagonalState& joint, const ProductSpace& space,
                              std::size_t factor) {
    if (joint.level_count() != space.dimension())
        throw std::invalid_argument("marginal: dimension mismatch");
    const std::size_t df = space.factor_dim(factor);
    std::vector<double> mx(df, kNegInf);
    for (std::size_t j = 0; j < space.dimension(); ++j)
        mx[space.factor_index(j, factor)] =
            std::max(mx[space.factor_index(j, factor)], joint.log_prob(j));
    std::vector<double> acc(df, 0.0);
    for (std::size_t j = 0; j < space.dimension(); ++j) {
        const std::size_t i = space.factor_index(j, factor);
        if (mx[i] == kNegInf) continue;
        acc[i] += std::exp(joint.log_prob(j) - mx[i]);
    }
    std::vector<double> lp(df);
    for (std::size_t i = 0; i < df; ++i)
        lp[i] = mx[i] == kNegInf ? kNegInf : mx[i] + std::log(acc[i]);
    return DiagonalState::from_log_probs(std::move(lp));
}

/// Mutual information I(A:B) = S(A) + S(B) - S(AB) >= 0 on a bipartite space.
inline double mutual_information(const DiagonalState& joint, const ProductSpace& space) {
    if (space.factor_count() != 2)
        throw std::invalid_argument("mutual_information: bipartite space required");
    const double sa = marginal(joint, space, 0).entropy();
    const double sb = marginal(joint, space, 1).entropy();
    return clamp_nonneg(sa + sb - joint.entropy(), "mutual_information");
}

/// Bijection on the index set of a ProductSpace; the universal protocol-step
/// representation. map()[src] is the destination index of basis state src.
class PermutationUnitary {
  public:
    explicit PermutationUnitary(std::vector<std::size_t> mapping) : map_(std::move(mapping)) {
        std::vector<bool> seen(map_.size(), false);
        for (std::size_t t : map_) {
            if (t >= map_.size() || seen[t])
                throw std::invalid_argument("PermutationUnitary: not a bijection");
            seen[t] = true;
        }
    }

    static PermutationUnitary identity(std::size_t d) {
        std::vector<std::size_t> m(d);
        std::iota(m.begin(), m.end(), 0);
        return PermutationUnitary(std::move(m));
    }

    /// Exchange of two basis states, identity elsewhere.
    static PermutationUnitary transposition(std::size_t d, std::size_t a, std::size_t b) {
        auto u = identity(d);
        std::swap(u.map_[a], u.map_[b]);
        return u;
    }

    /// Full swap of two equal-dimension factors of a product space.
    static PermutationUnitary swap_factors(const ProductSpace& space, std::size_t fa,
                                           std::size_t fb) {
        if (space.factor_dim(fa) != space.factor_dim(fb))
            throw std::invalid_argument("swap_factors: factor dimensions differ");
        std::vector<std::size_t> m(space.dimension());
        for (std::size_t j = 0; j < space.dimension(); ++j) {
            auto idx = space.decode(j);
            std::swap(idx[fa], idx[fb]);
            m[j] = space.encode(idx);
        }
        return PermutationUnitary(std::move(m));
    }

    std::size_t dimension() const { return map_.size(); }
    std::size_t target(std::size_t src) const { return map_[src]; }
    const std::vector<std::size_t>& map() const { return map_; }

    std::size_t fixed_point_count() const {
        std::size_t n = 0;
        for (std::size_t i = 0; i < map_.size(); ++i) n += map_[i] == i;
        return n;
    }

    bool is_involution() const {
        for (std::size_t i = 0; i < map_.size(); ++i)
            if (map_[map_[i]] != i) return false;
        return true;
    }

    /// this  after `first` (right-to-left composition).
    PermutationUnitary after(const PermutationUnitary& first) const {
        if (dimension() != first.dimension())
            throw std::invalid_argument("compose: dimension mismatch");
        std::vector<std::size_t> m(dimension());
        for (std::size_t i = 0; i < dimension(); ++i) m[i] = map_[first.map_[i]];
        return PermutationUnitary(std::move(m));
    }

  private:
    std::vector<std::size_t> map_;
};

/// rho' with populations permuted: p'[U(i)] = p[i].
inline DiagonalState apply_permutation(const DiagonalState& joint,
                                       const PermutationUnitary& U) {
    if (joint.compressed())
        throw std::invalid_argument("apply_permutation: explicit state required");
    if (joint.level_count() != U.dimension())
        throw std::invalid_argument("apply_permutation: dimension mismatch");
    std::vector<double> lp(U.dimension());
    for (std::size_t i = 0; i < U.dimension(); ++i) lp[U.target(i)] = joint.log_prob(i);
    return DiagonalState::from_log_probs(std::move(lp));
}

/// Joint spectrum of a bipartite product: E(i,j) = H_A(i) + H_B(j), explicit.
inline Spectrum joint_spectrum(const Spectrum& HA, const Spectrum& HB) {
    if (HA.compressed() || HB.compressed())
        throw std::invalid_argument("joint_spectrum: explicit spectra required");
    std::vector<double> e;
    e.reserve(HA.level_count() * HB.level_count());
    for (std::size_t i = 0; i < HA.level_count(); ++i)
        for (std::size_t j = 0; j < HB.level_count(); ++j)
            e.push_back(HA.energy(i) + HB.energy(j));
    return Spectrum::effective(std::move(e));
}

}  // namespace coolsim
