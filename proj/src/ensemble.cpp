#include "toepqr/ensemble.hpp"

#include "toepqr/errors.hpp"
#include "toepqr/rng.hpp"

namespace toepqr::bench {

Instance gen_instance(const EnsembleConfig& config, int index) {
    const int n = config.n;
    const int m = config.m.value_or(n);
    if (n < 1) throw ShapeError("ensemble: n must be >= 1");
    if (m < n) throw ShapeError("ensemble: m must be >= n");
    if (index < 0) throw Error("ensemble: instance index must be >= 0");
    if (!(config.sigma > 0.0)) throw Error("ensemble: sigma must be > 0");

    rng::NormalSampler sampler(rng::derive(config.seed, static_cast<std::uint64_t>(index)));

    std::vector<double> col(m);
    for (int i = 0; i < m; ++i) col[i] = sampler.next(config.mu, config.sigma);
    std::vector<double> row(n);
    row[0] = col[0];
    for (int j = 1; j < n; ++j) row[j] = sampler.next(config.mu, config.sigma);

    if (config.family == Family::NearSingular) {
        if (n >= 2) row[1] = col[0];
        if (m >= 2) col[1] = col[0];
    }

    Instance inst{build_toeplitz(std::move(col), std::move(row)), {}, {}};
    inst.x_true.resize(n);
    for (int i = 0; i < n; ++i) inst.x_true[i] = sampler.next(0.0, 1.0);
    inst.b = matvec(inst.t, inst.x_true);
    return inst;
}

}  // namespace toepqr::bench
