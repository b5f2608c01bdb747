#include "cmiknn/synth.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "cmiknn/rng.hpp"

namespace cmiknn {

namespace {

// The five post-nonlinear link functions. The squared-exponential one is
// clipped at exp(20) to keep samples finite; ranks absorb any strictly
// monotone distortion so the clip has no statistical effect.
double apply_link(int g, double v) {
    switch (g) {
        case 0: return v;
        case 1: return v * v;
        case 2: return v * v * v;
        case 3: return std::tanh(v);
        default: return std::exp(std::min(v * v, 20.0));
    }
}

struct Draw {
    std::mt19937_64 rng;
    std::normal_distribution<double> gauss{0.0, 1.0};
    std::uniform_int_distribution<int> link{0, 4};

    explicit Draw(std::uint64_t seed) : rng(seed) {}
    double normal() { return gauss(rng); }
    int pick_link() { return link(rng); }
};

VariableBlock draw_z(Draw& d, int n, int d_z) {
    VariableBlock z(n, d_z);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d_z; ++j) z.at(i, j) = d.normal();
    }
    return z;
}

double row_mean(const VariableBlock& z, int i) {
    double s = 0.0;
    for (int j = 0; j < z.cols(); ++j) s += z.at(i, j);
    return s / z.cols();
}

}  // namespace

ModelFamily parse_model_family(const std::string& name) {
    if (name == "postnonlinear") return ModelFamily::postnonlinear;
    if (name == "postnonlinear_mult") return ModelFamily::postnonlinear_mult;
    if (name == "sinusoidal") return ModelFamily::sinusoidal;
    if (name == "gaussian") return ModelFamily::gaussian;
    throw std::invalid_argument("unknown model family: " + name);
}

std::string to_string(ModelFamily family) {
    switch (family) {
        case ModelFamily::postnonlinear: return "postnonlinear";
        case ModelFamily::postnonlinear_mult: return "postnonlinear_mult";
        case ModelFamily::sinusoidal: return "sinusoidal";
        case ModelFamily::gaussian: return "gaussian";
    }
    return "?";
}

SyntheticData gen_postnonlinear(const ModelSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("gen_postnonlinear: n must be >= 1");
    if (spec.d_z < 1) throw std::invalid_argument("gen_postnonlinear: d_z must be >= 1");
    if (spec.c < 0.0 || (spec.dependent && spec.c > 1.0)) {
        throw std::invalid_argument("gen_postnonlinear: dependence strength c must lie in [0,1]");
    }

    Draw d(spec.seed);
    const int g_x = d.pick_link();
    const int g_y = d.pick_link();

    SyntheticData out;
    out.z = draw_z(d, spec.n, spec.d_z);
    out.x = VariableBlock(spec.n, 1);
    out.y = VariableBlock(spec.n, 1);
    // The dependent case keeps the common Z drive and mixes a shared
    // noise into the idiosyncratic one with weight c, so c = 0 is
    // exactly the null model and c = 1 makes X and Y identical up to
    // their links. Conditionally on Z the link arguments sit away from
    // the fold of the even links, which keeps the planted dependence
    // detectable for every link draw; a shared term without the Z drive
    // caps the rejection rate near the fraction of odd-link draws.
    const bool mix = spec.dependent && spec.c > 0.0;
    for (int i = 0; i < spec.n; ++i) {
        const double eps_x = d.normal();
        const double eps_y = d.normal();
        const double zbar = row_mean(out.z, i);
        const double shared = mix ? spec.c * d.normal() : 0.0;
        const double own = mix ? 1.0 - spec.c : 1.0;
        out.x.at(i, 0) = apply_link(g_x, own * eps_x + zbar + shared);
        out.y.at(i, 0) = apply_link(g_y, own * eps_y + zbar + shared);
    }
    return out;
}

SyntheticData gen_multiplicative(const ModelSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("gen_multiplicative: n must be >= 1");
    if (spec.d_z < 1) throw std::invalid_argument("gen_multiplicative: d_z must be >= 1");
    if (spec.dependent && spec.c == 0.0) {
        throw std::invalid_argument("gen_multiplicative: dependent case needs c > 0 "
                                    "(c = 0 makes X and Y constant)");
    }

    Draw d(spec.seed);
    const int g_x = d.pick_link();
    const int g_y = d.pick_link();

    SyntheticData out;
    out.z = draw_z(d, spec.n, spec.d_z);
    out.x = VariableBlock(spec.n, 1);
    out.y = VariableBlock(spec.n, 1);
    for (int i = 0; i < spec.n; ++i) {
        const double eps_x = d.normal();
        const double eps_y = d.normal();
        if (spec.dependent) {
            const double eps_b = d.normal();
            out.x.at(i, 0) = apply_link(g_x, spec.c * eps_b * eps_x);
            out.y.at(i, 0) = apply_link(g_y, spec.c * eps_b * eps_y);
        } else {
            const double zbar = row_mean(out.z, i);
            const double extra_x = d.normal();
            const double extra_y = d.normal();
            out.x.at(i, 0) = apply_link(g_x, 0.1 * extra_x + eps_x * zbar);
            out.y.at(i, 0) = apply_link(g_y, 0.1 * extra_y + eps_y * zbar);
        }
    }
    return out;
}

SyntheticData gen_sinusoidal(const ModelSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("gen_sinusoidal: n must be >= 1");
    if (spec.d_z != 1) throw std::invalid_argument("gen_sinusoidal: d_z must be 1");

    Draw d(spec.seed);
    SyntheticData out;
    out.z = draw_z(d, spec.n, 1);
    out.x = VariableBlock(spec.n, 1);
    out.y = VariableBlock(spec.n, 1);
    for (int i = 0; i < spec.n; ++i) {
        const double s = std::sin(spec.lambda * out.z.at(i, 0));
        const double eps_x = d.normal();
        const double eps_y = d.normal();
        const double shared = spec.dependent ? spec.c * d.normal() : 0.0;
        out.x.at(i, 0) = s + eps_x + shared;
        out.y.at(i, 0) = s + eps_y + shared;
    }
    return out;
}

SyntheticData gen_gaussian(const ModelSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("gen_gaussian: n must be >= 1");
    if (spec.d_z < 0) throw std::invalid_argument("gen_gaussian: d_z must be >= 0");
    const double rho = spec.dependent ? spec.c : 0.0;
    if (std::abs(rho) >= 1.0) {
        throw std::invalid_argument("gen_gaussian: |correlation| must be < 1 "
                                    "(covariance not positive definite)");
    }

    // X and Y each load 0.7 on the normalized Z mean; the loading keeps
    // unit marginal variances so the residual correlation rho is exactly
    // the partial correlation given Z.
    const double loading = spec.d_z >= 1 ? 0.7 : 0.0;
    const double resid = std::sqrt(1.0 - loading * loading);

    Draw d(spec.seed);
    SyntheticData out;
    out.z = draw_z(d, spec.n, spec.d_z);
    out.x = VariableBlock(spec.n, 1);
    out.y = VariableBlock(spec.n, 1);
    for (int i = 0; i < spec.n; ++i) {
        double w = 0.0;
        if (spec.d_z >= 1) {
            for (int j = 0; j < spec.d_z; ++j) w += out.z.at(i, j);
            w /= std::sqrt(static_cast<double>(spec.d_z));
        }
        const double u = d.normal();
        const double v = d.normal();
        const double e_x = u;
        const double e_y = rho * u + std::sqrt(1.0 - rho * rho) * v;
        out.x.at(i, 0) = loading * w + resid * e_x;
        out.y.at(i, 0) = loading * w + resid * e_y;
    }
    return out;
}

SyntheticData generate(const ModelSpec& spec) {
    switch (spec.family) {
        case ModelFamily::postnonlinear: return gen_postnonlinear(spec);
        case ModelFamily::postnonlinear_mult: return gen_multiplicative(spec);
        case ModelFamily::sinusoidal: return gen_sinusoidal(spec);
        case ModelFamily::gaussian: return gen_gaussian(spec);
    }
    throw std::invalid_argument("generate: unknown model family");
}

}  // namespace cmiknn
