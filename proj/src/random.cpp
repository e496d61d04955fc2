#include "quditlab/random.hpp"

#include <cmath>

namespace quditlab {

std::uint64_t mix_seed(std::uint64_t seed) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag_a, std::uint64_t tag_b) {
    return mix_seed(mix_seed(seed ^ (tag_a * 0xd1342543de82ef95ULL)) ^
                    (tag_b * 0xaf251af3b0f025b5ULL));
}

double Rng::uniform() {
    // 53-bit mantissa in [0, 1)
    return (engine_() >> 11) * 0x1.0p-53;
}

double Rng::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * M_PI * u2;
    spare_ = r * std::sin(phi);
    have_spare_ = true;
    return r * std::cos(phi);
}

long long Rng::poisson(double mean) {
    if (mean < 0.0) throw InvalidInput("Poisson mean must be nonnegative");
    if (mean == 0.0) return 0;
    if (mean > 1000.0) {
        const double draw = mean + std::sqrt(mean) * gaussian();
        return draw < 0.0 ? 0 : static_cast<long long>(std::llround(draw));
    }
    // inverse transform
    const double u = uniform();
    double p = std::exp(-mean);
    double cdf = p;
    long long k = 0;
    while (u > cdf && k < 100000) {
        ++k;
        p *= mean / static_cast<double>(k);
        cdf += p;
    }
    return k;
}

PureState haar_random_state(int d, Rng& rng) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v(i) = cxd(rng.gaussian(), rng.gaussian());
    return PureState(std::move(v));
}

Mat random_unitary(int d, Rng& rng) {
    Mat g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = cxd(rng.gaussian(), rng.gaussian());
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i) {
        const cxd diag = r(i, i);
        if (std::abs(diag) > 0) q.col(i) *= diag / std::abs(diag);
    }
    return q;
}

}  // namespace quditlab
