#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace coolsim {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

// Clamp threshold for provably non-negative quantities; anything more
// negative than this indicates a real bug, not round-off.
inline constexpr double kNonNegClamp = 1e-14;

/// log(exp(a) + exp(b)) without overflow; handles -inf operands.
inline double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double m = std::max(a, b);
    return m + std::log1p(std::exp(std::min(a, b) - m));
}

/// log(sum exp(x_i)); returns -inf for an empty or all-(-inf) input.
inline double log_sum_exp(std::span<const double> xs) {
    double m = kNegInf;
    for (double x : xs) m = std::max(m, x);
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (double x : xs) s += std::exp(x - m);
    return m + std::log(s);
}

/// Clamp round-off on a quantity that is non-negative by construction.
/// Values below -kNonNegClamp are escalated as logic errors.
inline double clamp_nonneg(double x, const char* what) {
    if (x >= 0.0) return x;
    if (x >= -kNonNegClamp) return 0.0;
    throw std::logic_error(std::string(what) + ": negative beyond round-off, " +
                           std::to_string(x));
}

/// Row-major index bookkeeping for a tensor product of finite factors.
class ProductSpace {
  public:
    ProductSpace() = default;
    explicit ProductSpace(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
        if (dims_.empty()) throw std::invalid_argument("ProductSpace: no factors");
        dim_ = 1;
        for (std::size_t d : dims_) {
            if (d == 0) throw std::invalid_argument("ProductSpace: zero factor dimension");
            dim_ *= d;
        }
    }

    std::size_t factor_count() const { return dims_.size(); }
    std::size_t factor_dim(std::size_t f) const { return dims_.at(f); }
    std::size_t dimension() const { return dim_; }

    std::size_t encode(std::span<const std::size_t> idx) const {
        std::size_t joint = 0;
        for (std::size_t f = 0; f < dims_.size(); ++f) joint = joint * dims_[f] + idx[f];
        return joint;
    }

    std::vector<std::size_t> decode(std::size_t joint) const {
        std::vector<std::size_t> idx(dims_.size());
        for (std::size_t f = dims_.size(); f-- > 0;) {
            idx[f] = joint % dims_[f];
            joint /= dims_[f];
        }
        return idx;
    }

    /// Index of one factor without materialising the full digit vector.
    std::size_t factor_index(std::size_t joint, std::size_t f) const {
        for (std::size_t g = dims_.size(); g-- > f + 1;) joint /= dims_[g];
        return joint % dims_[f];
    }

    bool operator==(const ProductSpace& o) const { return dims_ == o.dims_; }

  private:
    std::vector<std::size_t> dims_;
    std::size_t dim_ = 0;
};

}  // namespace coolsim
