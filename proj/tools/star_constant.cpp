// Lower bound for the Lebesgue number of the vertex-star cover of the unit
// n-cube triangulated by starring at face centers.
//
// The local Lebesgue function is 1-Lipschitz, so the minimum over a grid of
// spacing h undershoots the true minimum by at most h*sqrt(n)/2. The cover is
// invariant under reflections, so [0, 1/2]^n suffices.
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <vector>

#include "coarse/star_cover.hpp"

int main(int argc, char** argv) {
    const int table[3] = {20000, 2000, 400};
    for (std::size_t n = 1; n <= 3; ++n) {
        const int steps = argc > 1 ? std::atoi(argv[1]) : table[n - 1];
        const double h = 0.5 / steps;
        std::vector<int> idx(n, 0);
        std::vector<double> p(n);
        double best = 1.0;
        while (true) {
            for (std::size_t i = 0; i < n; ++i) p[i] = idx[i] * h;
            double local = 0.0;
            for (const auto& v : coarse::stars_containing(p)) local = std::max(local, coarse::star_depth(p, v));
            best = std::min(best, local);
            std::size_t i = 0;
            while (i < n && ++idx[i] > steps) idx[i++] = 0;
            if (i == n) break;
        }
        const double slack = h * std::sqrt(static_cast<double>(n)) / 2.0;
        const double safe = std::floor((best - slack) * 1e4) / 1e4;
        std::printf("n=%zu grid_min=%.6f slack=%.6f constant=%.4f\n", n, best, slack, safe);
    }
}
