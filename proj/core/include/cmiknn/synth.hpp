#pragma once

#include <cstdint>
#include <string>

#include "cmiknn/types.hpp"

namespace cmiknn {

enum class ModelFamily {
    postnonlinear,
    postnonlinear_mult,
    sinusoidal,
    gaussian,
};

ModelFamily parse_model_family(const std::string& name);
std::string to_string(ModelFamily family);

/// Parameters of one synthetic realization. `dependent = false` always
/// yields X independent of Y given Z by construction; `c` is the
/// dependence strength of the alternative (for the gaussian family it is
/// the partial correlation of X and Y given Z, or their plain
/// correlation when d_z = 0).
struct ModelSpec {
    ModelFamily family = ModelFamily::postnonlinear;
    int n = 1000;
    int d_z = 1;
    double c = 0.5;
    double lambda = 30.0;  // sinusoid frequency
    bool dependent = false;
    std::uint64_t seed = 0;
};

struct SyntheticData {
    VariableBlock x;  // n x 1
    VariableBlock y;  // n x 1
    VariableBlock z;  // n x d_z (d_z may be 0 for the gaussian family)
};

/// Post-nonlinear noise model. Null: X = g_X(eps_X + mean(Z)),
/// Y = g_Y(eps_Y + mean(Z)). Dependent: the idiosyncratic noise is mixed
/// with a shared one, X = g_X((1-c) eps_X + mean(Z) + c eps_b), so c = 0
/// degenerates to the null model and c = 1 to identical link arguments.
/// g_X, g_Y are drawn uniformly from {identity, square, cube, tanh,
/// exp of squared argument}.
SyntheticData gen_postnonlinear(const ModelSpec& spec);

/// Multiplicative noise variant. Null: X = g_X(0.1 eps'_X + eps_X mean(Z)),
/// same for Y. Dependent: X = g_X(c eps_b eps_X), Z independent; rejects
/// c = 0 (X would be constant).
SyntheticData gen_multiplicative(const ModelSpec& spec);

/// X = sin(lambda Z) + eps_X, Y = sin(lambda Z) + eps_Y with univariate Z;
/// the dependent case adds a shared c eps_b to both.
SyntheticData gen_sinusoidal(const ModelSpec& spec);

/// Jointly Gaussian (X, Y, Z). With d_z >= 1, X and Y each correlate 0.7
/// with the normalized Z mean and the partial correlation of X, Y given Z
/// equals c when dependent (0 otherwise). With d_z = 0, (X, Y) is
/// bivariate normal with correlation c when dependent.
SyntheticData gen_gaussian(const ModelSpec& spec);

/// Dispatch on spec.family.
SyntheticData generate(const ModelSpec& spec);

}  // namespace cmiknn
