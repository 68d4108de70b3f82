#include "hgineq/group_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "hgineq/errors.hpp"

namespace hgineq {

std::string to_string(NormKind kind) {
    switch (kind) {
        case NormKind::Euclidean: return "euclidean";
        case NormKind::AnisotropicPower: return "power";
        case NormKind::Koranyi: return "koranyi";
    }
    return "unknown";
}

HomogeneousGroup::HomogeneousGroup(std::vector<double> weights, QuasiNormSpec norm,
                                   std::optional<double> declared_Q, std::string name)
    : weights_(std::move(weights)), norm_(norm), name_(std::move(name)) {
    if (weights_.empty()) throw ConfigurationError("group needs at least one dilation weight");
    for (double w : weights_) {
        if (!(w > 0.0) || !std::isfinite(w))
            throw ConfigurationError("dilation weights must be finite and strictly positive");
    }
    Q_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
    max_weight_ = *std::max_element(weights_.begin(), weights_.end());
    if (declared_Q && std::abs(*declared_Q - Q_) > 1e-12 * Q_) {
        std::ostringstream os;
        os << "declared Q = " << *declared_Q << " does not match the weight sum " << Q_;
        throw ConfigurationError(os.str());
    }
    switch (norm_.kind) {
        case NormKind::Euclidean:
            for (double w : weights_)
                if (w != 1.0) throw ConfigurationError("euclidean norm requires all weights equal to 1");
            break;
        case NormKind::Koranyi:
            if (weights_ != std::vector<double>{1.0, 1.0, 2.0})
                throw ConfigurationError("koranyi norm requires n = 3 and weights (1, 1, 2)");
            break;
        case NormKind::AnisotropicPower:
            M_ = norm_.power_M.value_or(max_weight_);
            if (!(M_ > 0.0) || !std::isfinite(M_)) throw ConfigurationError("power_M must be positive");
            break;
    }
    if (name_.empty()) {
        std::ostringstream os;
        os << to_string(norm_.kind) << "(";
        for (std::size_t i = 0; i < weights_.size(); ++i) os << (i ? "," : "") << weights_[i];
        os << ")";
        name_ = os.str();
    }
}

HomogeneousGroup HomogeneousGroup::euclidean(int n) {
    if (n < 1) throw ConfigurationError("dimension must be positive");
    return HomogeneousGroup(std::vector<double>(static_cast<std::size_t>(n), 1.0), QuasiNormSpec::euclidean(),
                            std::nullopt, "euclidean_r" + std::to_string(n));
}

HomogeneousGroup HomogeneousGroup::heisenberg() {
    return HomogeneousGroup({1.0, 1.0, 2.0}, QuasiNormSpec::koranyi(), std::nullopt, "heisenberg_koranyi");
}

HomogeneousGroup HomogeneousGroup::anisotropic(std::vector<double> weights, std::optional<double> M) {
    return HomogeneousGroup(std::move(weights), QuasiNormSpec::power(M));
}

std::vector<double> HomogeneousGroup::dilate(double lambda, std::span<const double> x) const {
    if (!(lambda > 0.0)) throw ArgumentError("dilation factor must be positive");
    if (x.size() != weights_.size()) throw ArgumentError("point dimension does not match the group");
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::pow(lambda, weights_[i]) * x[i];
    return y;
}

double HomogeneousGroup::quasi_norm(std::span<const double> x) const {
    if (x.size() != weights_.size()) throw ArgumentError("point dimension does not match the group");
    switch (norm_.kind) {
        case NormKind::Euclidean: {
            double s = 0.0;
            for (double v : x) s += v * v;
            return std::sqrt(s);
        }
        case NormKind::Koranyi: {
            double rho2 = x[0] * x[0] + x[1] * x[1];
            return std::pow(rho2 * rho2 + x[2] * x[2], 0.25);
        }
        case NormKind::AnisotropicPower: {
            // Factor out the largest homogeneous coordinate.
            std::vector<double> scaled(x.size());
            double big = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                scaled[i] = x[i] == 0.0 ? 0.0 : std::pow(std::abs(x[i]), 1.0 / weights_[i]);
                big = std::max(big, scaled[i]);
            }
            if (big == 0.0) return 0.0;
            double s = 0.0;
            for (double v : scaled) s += std::pow(v / big, 2.0 * M_);
            return big * std::pow(s, 1.0 / (2.0 * M_));
        }
    }
    return 0.0;
}

std::vector<double> HomogeneousGroup::project_to_sphere(std::span<const double> x) const {
    double r = quasi_norm(x);
    if (r == 0.0) throw ArgumentError("cannot project the origin onto the unit sphere");
    return dilate(1.0 / r, x);
}

}  // namespace hgineq
