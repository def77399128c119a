#pragma once

#include <random>

#include "gwtqft/repcat.hpp"

namespace testing_support {

using namespace gwtqft;

inline Rational R(long n, long d) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline RationalMatrix mat(std::initializer_list<std::initializer_list<Rational>> rows) {
    std::vector<RationalVector> rs;
    for (auto& r : rows) rs.emplace_back(r);
    return RationalMatrix::from_rows(rs);
}

inline GWData gl11_data(Convention c = {}) { return make_data(GWInput(mat({{0, 1}, {1, 0}}), mat({{1}, {0}}), c)); }

/// r = 3, n = 2 with parallel roots Q_1 = e_1, Q_2 = 2 e_1.
inline GWData rank3_data() {
    return make_data(GWInput(mat({{0, 1, 0}, {1, 0, 0}, {0, 0, 2}}), mat({{1, 2}, {0, 0}, {0, 0}})));
}

/// r = 2, n = 2: the hypermultiplet roots Q_1 = Q_2 = e_1.
inline GWData hyper_data() { return make_data(GWInput(mat({{0, 1}, {1, 0}}), mat({{1, 1}, {0, 0}}))); }

inline RationalVector random_weight(std::mt19937_64& rng, std::size_t r) {
    static const long dens[] = {2, 3, 4, 5, 6};
    std::uniform_int_distribution<int> pick(0, 4);
    std::uniform_int_distribution<long> num(-7, 7);
    RationalVector v(r);
    for (auto& x : v) x = R(num(rng), dens[pick(rng)]);
    return v;
}

inline RationalVector random_typical(std::mt19937_64& rng, const GWInput& gw) {
    while (true) {
        auto v = random_weight(rng, gw.r());
        if (gw.typical(v)) return v;
    }
}

}  // namespace testing_support
