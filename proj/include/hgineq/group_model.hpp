#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hgineq {

enum class NormKind { Euclidean, AnisotropicPower, Koranyi };

struct QuasiNormSpec {
    NormKind kind = NormKind::Euclidean;
    /// Exponent parameter of the anisotropic power norm; unset means max weight.
    std::optional<double> power_M;

    static QuasiNormSpec euclidean() { return {NormKind::Euclidean, std::nullopt}; }
    static QuasiNormSpec power(std::optional<double> M = std::nullopt) { return {NormKind::AnisotropicPower, M}; }
    static QuasiNormSpec koranyi() { return {NormKind::Koranyi, std::nullopt}; }
};

std::string to_string(NormKind kind);

/// R^n with diagonal dilations D_lambda x = (lambda^nu_1 x_1, ..., lambda^nu_n x_n)
/// and a homogeneous quasi-norm. Immutable after construction.
class HomogeneousGroup {
public:
    /// Throws ConfigurationError when the norm variant does not fit the weights
    /// or when declared_Q disagrees with the weight sum.
    HomogeneousGroup(std::vector<double> weights, QuasiNormSpec norm,
                     std::optional<double> declared_Q = std::nullopt, std::string name = {});

    static HomogeneousGroup euclidean(int n);
    static HomogeneousGroup heisenberg();
    static HomogeneousGroup anisotropic(std::vector<double> weights, std::optional<double> M = std::nullopt);

    int dimension() const { return static_cast<int>(weights_.size()); }
    const std::vector<double>& weights() const { return weights_; }
    double Q() const { return Q_; }
    double max_weight() const { return max_weight_; }
    const QuasiNormSpec& norm() const { return norm_; }
    double power_M() const { return M_; }
    const std::string& name() const { return name_; }

    std::vector<double> dilate(double lambda, std::span<const double> x) const;
    double quasi_norm(std::span<const double> x) const;
    /// D_{1/|x|} x, the point of the unit quasi-sphere on the ray through x.
    std::vector<double> project_to_sphere(std::span<const double> x) const;

private:
    std::vector<double> weights_;
    QuasiNormSpec norm_;
    double Q_ = 0.0;
    double M_ = 0.0;
    double max_weight_ = 0.0;
    std::string name_;
};

}  // namespace hgineq
