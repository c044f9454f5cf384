#include "twlab/lpp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "twlab/errors.hpp"

namespace twlab {

WeightLaw WeightLaw::geometric(double q) {
    if (!(q > 0.0 && q < 1.0)) throw InvalidParameter("WeightLaw: geometric q must be in (0,1)");
    return {Kind::geometric, q};
}

WeightGrid sample_weights(RandomStream& stream, int N, const WeightLaw& law) {
    if (N < 1) throw InvalidParameter("sample_weights: N must be >= 1");
    WeightGrid grid;
    grid.N = N;
    grid.law = law;
    grid.weights.resize(static_cast<std::size_t>(N + 1) * (N + 1));
    for (double& w : grid.weights) {
        double u = stream.next_uniform();
        if (law.kind == WeightLaw::Kind::exponential)
            w = -std::log(u);
        else
            w = std::floor(std::log(u) / std::log(law.q));
    }
    return grid;
}

std::pair<int, int> apply_symmetry(SymmetryKind kind, int i, int j) {
    switch (kind) {
        case SymmetryKind::identity:
            return {i, j};
        case SymmetryKind::slash:
            return (j < i) ? std::pair<int, int>{j, i} : std::pair<int, int>{i, j};
        case SymmetryKind::backslash:
            return (i + j > 0) ? std::pair<int, int>{-j, -i} : std::pair<int, int>{i, j};
    }
    return {i, j};
}

std::pair<int, int> lpp_origin(SymmetryKind kind, int N) {
    return kind == SymmetryKind::backslash ? std::pair<int, int>{-N, 0}
                                           : std::pair<int, int>{0, 0};
}

std::pair<int, int> lpp_corner(SymmetryKind kind, int N) {
    return kind == SymmetryKind::backslash ? std::pair<int, int>{0, N}
                                           : std::pair<int, int>{N, N};
}

namespace {

// storage cell for a lattice point of the symmetry's square
std::pair<int, int> to_storage(SymmetryKind kind, int N, int i, int j) {
    if (kind == SymmetryKind::backslash) return {i + N, j};
    return {i, j};
}

void check_in_square(SymmetryKind kind, int N, std::pair<int, int> p, const char* who) {
    auto [a, b] = to_storage(kind, N, p.first, p.second);
    if (a < 0 || a > N || b < 0 || b > N)
        throw InvalidParameter(std::string(who) + ": point outside the symmetry's square");
}

}  // namespace

double symmetrized_weight(const WeightGrid& grid, SymmetryKind kind, int i, int j) {
    auto [ti, tj] = apply_symmetry(kind, i, j);
    auto [a, b] = to_storage(kind, grid.N, ti, tj);
    return grid.at(a, b);
}

double passage(const WeightGrid& grid, SymmetryKind kind, std::pair<int, int> from,
               std::pair<int, int> to) {
    check_in_square(kind, grid.N, from, "passage");
    check_in_square(kind, grid.N, to, "passage");
    if (to.first < from.first || to.second < from.second)
        throw InvalidParameter("passage: target not reachable by up/right steps");

    // in-place row sweep: row[c] holds the value below, row[c-1] the value
    // to the left
    const int cols = to.second - from.second + 1;
    std::vector<double> row(static_cast<std::size_t>(cols));
    for (int i = from.first; i <= to.first; ++i) {
        for (int j = from.second; j <= to.second; ++j) {
            int c = j - from.second;
            double best;
            if (i == from.first && j == from.second)
                best = 0.0;
            else if (i == from.first)
                best = row[c - 1];
            else if (j == from.second)
                best = row[c];
            else
                best = std::max(row[c], row[c - 1]);
            row[c] = best + symmetrized_weight(grid, kind, i, j);
        }
    }
    return row[static_cast<std::size_t>(cols - 1)];
}

namespace {

// one forward sweep from the origin; table[(i-p.i)*(cols)+(j-p.j)] = G(p -> (i,j))
std::vector<double> passage_table(const WeightGrid& grid, SymmetryKind kind) {
    auto from = lpp_origin(kind, grid.N);
    auto to = lpp_corner(kind, grid.N);
    const int cols = to.second - from.second + 1;
    std::vector<double> table(static_cast<std::size_t>(to.first - from.first + 1) * cols);
    for (int i = from.first; i <= to.first; ++i) {
        for (int j = from.second; j <= to.second; ++j) {
            int r = i - from.first, c = j - from.second;
            double best;
            if (r == 0 && c == 0)
                best = 0.0;
            else if (r == 0)
                best = table[c - 1];
            else if (c == 0)
                best = table[static_cast<std::size_t>(r - 1) * cols];
            else
                best = std::max(table[static_cast<std::size_t>(r - 1) * cols + c],
                                table[static_cast<std::size_t>(r) * cols + c - 1]);
            table[static_cast<std::size_t>(r) * cols + c] =
                best + symmetrized_weight(grid, kind, i, j);
        }
    }
    return table;
}

}  // namespace

double last_passage(const WeightGrid& grid, SymmetryKind kind) {
    return passage(grid, kind, lpp_origin(kind, grid.N), lpp_corner(kind, grid.N));
}

double passage_to_point(const WeightGrid& grid, SymmetryKind kind, std::pair<int, int> target) {
    return passage(grid, kind, lpp_origin(kind, grid.N), target);
}

CouplingChecks verify_couplings(RandomStream& stream, int N, std::size_t trials,
                                const WeightLaw& law) {
    if (N < 2 || N % 2 != 0) throw InvalidParameter("verify_couplings: N must be even and >= 2");
    if (trials < 1) throw InvalidParameter("verify_couplings: trials must be >= 1");

    CouplingChecks checks;
    checks.N = N;
    checks.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        // shared square for identity vs slash
        WeightGrid square = sample_weights(stream, N, law);
        double g_id = last_passage(square, SymmetryKind::identity);
        double g_slash = last_passage(square, SymmetryKind::slash);
        double tol = 1e-9 * std::max(1.0, std::abs(g_id));
        if (g_id < g_slash - tol) ++checks.violations_identity_slash;

        // separate square for the backslash model; one DP table serves the
        // corner value and every to-diagonal passage
        WeightGrid back = sample_weights(stream, N, law);
        std::vector<double> table = passage_table(back, SymmetryKind::backslash);
        const int cols = N + 1;
        double g_back = table.back();
        double half = 0.5 * g_back;

        // A mirrored path visits its diagonal site once, so the to-diagonal
        // value carries half of that site's weight.
        double best_diag = -std::numeric_limits<double>::infinity();
        double center_value = 0.0;
        for (int d = 0; d <= N; ++d) {
            // lattice (-d, d) sits at table row N-d, column d
            double v = table[static_cast<std::size_t>(N - d) * cols + d] -
                       0.5 * symmetrized_weight(back, SymmetryKind::backslash, -d, d);
            best_diag = std::max(best_diag, v);
            if (d == N / 2) center_value = v;
        }
        double tol_b = 1e-9 * std::max(1.0, std::abs(g_back));
        if (half < center_value - tol_b) ++checks.violations_center;
        if (std::abs(half - best_diag) > tol_b) ++checks.violations_reflection;
    }
    return checks;
}

double rescale_lpp(double G, int N, double a, double b) {
    if (!(b > 0.0)) throw InvalidParameter("rescale_lpp: b must be > 0");
    return (G - a * static_cast<double>(N)) / (b * std::cbrt(static_cast<double>(N)));
}

RescaleConstants calibrate_rescaling(RandomStream& stream, const std::vector<int>& sizes,
                                     std::size_t trials_per_size, double target_mean,
                                     double target_sd, const WeightLaw& law) {
    if (sizes.empty()) throw InvalidParameter("calibrate_rescaling: no sizes");
    if (trials_per_size < 2) throw InvalidParameter("calibrate_rescaling: need >= 2 trials");
    if (!(target_sd > 0.0)) throw InvalidParameter("calibrate_rescaling: target sd must be > 0");

    std::vector<double> means(sizes.size()), sds(sizes.size());
    for (std::size_t si = 0; si < sizes.size(); ++si) {
        double sum = 0.0, sum2 = 0.0;
        for (std::size_t t = 0; t < trials_per_size; ++t) {
            WeightGrid grid = sample_weights(stream, sizes[si], law);
            double g = last_passage(grid, SymmetryKind::identity);
            sum += g;
            sum2 += g * g;
        }
        double mean = sum / static_cast<double>(trials_per_size);
        double var = (sum2 - sum * mean) / static_cast<double>(trials_per_size - 1);
        means[si] = mean;
        sds[si] = std::sqrt(std::max(var, 0.0));
    }

    // sd(G_N) = b * sd_target * N^{1/3}; then E[G_N] = a N + mean_target * b N^{1/3}
    RescaleConstants constants;
    double b_acc = 0.0;
    for (std::size_t si = 0; si < sizes.size(); ++si)
        b_acc += sds[si] / (target_sd * std::cbrt(static_cast<double>(sizes[si])));
    constants.b = b_acc / static_cast<double>(sizes.size());

    double num = 0.0, den = 0.0;
    for (std::size_t si = 0; si < sizes.size(); ++si) {
        double nn = static_cast<double>(sizes[si]);
        num += nn * (means[si] - target_mean * constants.b * std::cbrt(nn));
        den += nn * nn;
    }
    constants.a = num / den;
    return constants;
}

}  // namespace twlab
