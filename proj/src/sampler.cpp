#include "higgs5/sampler.hpp"

namespace higgs5 {

ParabolicBundle Sampler::generic_bundle(const MarkedSphere& sph, unsigned bound) {
    for (;;) {
        DirectionMap dirs;
        for (Mark m : kMarks) dirs[static_cast<size_t>(m)] = direction(bound);
        bool distinct = true;
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j)
                distinct &= !(dirs[size_t(i)] == dirs[size_t(j)]);
        if (!distinct) continue;
        ParabolicBundle B(sph, 0, dirs);
        if (classify_stability(B, WeightVector::central()).verdict == Stability::Stable)
            return B;
    }
}

ParabolicBundle Sampler::generic_chart_bundle(const MarkedSphere& sph, unsigned bound) {
    for (;;) {
        ParabolicBundle B = chart_bundle(sph, rational(bound), rational(bound));
        if (classify_stability(B, WeightVector::central()).verdict != Stability::Stable) continue;
        if (!lines_through_d0(B).empty()) continue;
        return B;
    }
}

} // namespace higgs5
