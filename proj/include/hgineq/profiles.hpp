#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hgineq/closed_forms.hpp"
#include "hgineq/group_model.hpp"
#include "hgineq/radial_calculus.hpp"

namespace hgineq {

/// Named closed-form test profile.
struct NamedProfile {
    std::string name;
    RadialFunctionPtr f;
};

/// The five smooth positive profiles used throughout the verification suites.
std::vector<NamedProfile> standard_battery();

/// Complex-valued companions of the battery (oscillating phase e^(i kappa u)).
std::vector<NamedProfile> complex_battery();

/// Euclidean R^3, anisotropic R^2 with weights (1, 2), Heisenberg with the Koranyi gauge.
std::vector<HomogeneousGroup> standard_groups();

/// Built-in profile by name with numeric parameters; throws ConfigurationError for unknown names
/// or parameters.
RadialFunctionPtr make_profile(const std::string& name, const std::map<std::string, double>& params = {});
std::vector<std::string> builtin_profile_names();

/// Random smooth complex profile: one to three Gaussians in log radius with random
/// centres, widths, amplitudes and phases. Deterministic in (seed, index).
RadialFunctionPtr random_profile(std::uint64_t seed, std::uint64_t index, bool real_valued = false);

/// Radius beyond which |phi| stays below rel_tol * max|phi| on the grid.
double numerical_support_radius(const RadialProfile& phi, double rel_tol = 1e-14);

}  // namespace hgineq
