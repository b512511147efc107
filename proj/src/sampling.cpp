#include "hktlab/sampling.hpp"

#include "hktlab/errors.hpp"

namespace hktlab {

void SampleConfig::validate() const {
    if (points < 1) throw ConfigError("point count must be >= 1");
    if (!(box_low > 0.0) || !(box_high > box_low)) throw ConfigError("bad sampling box");
    if (jet_order < 0 || jet_order > 3) throw ConfigError("jet order must be in [0, 3]");
    if (threads < 1) throw ConfigError("thread count must be >= 1");
    if (tolerance && !(*tolerance > 0.0)) throw ConfigError("tolerance must be positive");
}

std::vector<Point> sample_points(int dim, const SampleConfig& cfg) {
    cfg.validate();
    SplitMix64 rng(cfg.seed);
    std::vector<Point> pts;
    pts.reserve(static_cast<size_t>(cfg.points));
    for (int p = 0; p < cfg.points; ++p) {
        std::vector<double> coords(static_cast<size_t>(dim));
        for (int i = 0; i < dim; ++i) {
            const uint64_t bits = rng.next();
            const double mag = cfg.box_low +
                               (cfg.box_high - cfg.box_low) * (static_cast<double>(bits >> 11) * 0x1.0p-53);
            coords[static_cast<size_t>(i)] = (bits & 1ULL) ? -mag : mag;
        }
        pts.emplace_back(std::move(coords));
    }
    return pts;
}

} // namespace hktlab
