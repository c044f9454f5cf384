#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "twlab/rng.hpp"

namespace twlab {

// Lattice symmetry applied to the weight field before the passage DP.
// identity and slash live on the square [0,N]^2; backslash lives on
// [-N,0] x [0,N] so the y = -x diagonal crosses the square.
enum class SymmetryKind { identity, slash, backslash };

struct WeightLaw {
    enum class Kind { exponential, geometric };
    Kind kind = Kind::exponential;
    double q = 0.5;  // geometric parameter, used only for Kind::geometric

    static WeightLaw exponential() { return {Kind::exponential, 0.0}; }
    static WeightLaw geometric(double q);
};

// iid site weights on an (N+1) x (N+1) square, stored in local coordinates
// (a, b) in [0,N]^2; symmetry-specific lattice coordinates are translated by
// the passage routines.
struct WeightGrid {
    int N = 0;
    std::vector<double> weights;  // row-major, (N+1)*(N+1)
    WeightLaw law;

    double at(int a, int b) const { return weights[static_cast<std::size_t>(a) * (N + 1) + b]; }
    double& at(int a, int b) { return weights[static_cast<std::size_t>(a) * (N + 1) + b]; }
};

WeightGrid sample_weights(RandomStream& stream, int N, const WeightLaw& law);

// Symmetry map on lattice coordinates.  slash reflects the lower triangle
// (j < i) of [0,N]^2 onto the upper one; backslash reflects the half above
// the y = -x diagonal (i + j > 0) onto the lower half.
std::pair<int, int> apply_symmetry(SymmetryKind kind, int i, int j);

// Lower-left and upper-right corners of the symmetry's square, in lattice
// coordinates.
std::pair<int, int> lpp_origin(SymmetryKind kind, int N);
std::pair<int, int> lpp_corner(SymmetryKind kind, int N);

// Weight seen at lattice point (i,j) after the symmetry is applied.
double symmetrized_weight(const WeightGrid& grid, SymmetryKind kind, int i, int j);

// Best up/right passage value from `from` to `to` (lattice coordinates,
// both endpoints' weights included).
double passage(const WeightGrid& grid, SymmetryKind kind, std::pair<int, int> from,
               std::pair<int, int> to);

// Corner-to-corner passage value G(N) for the symmetry's square.
double last_passage(const WeightGrid& grid, SymmetryKind kind);

// Passage from the symmetry's origin to `target`.
double passage_to_point(const WeightGrid& grid, SymmetryKind kind, std::pair<int, int> target);

// Pathwise coupling checks, one fresh weight field per square per trial:
//   (a) identity dominates slash on shared weights,
//   (b) half the backslash value dominates the passage to the centre of the
//       y = -x diagonal,
//   (c) half the backslash value equals the best passage to any diagonal
//       point.
// A mirrored backslash path visits its diagonal site once, so the to-diagonal
// passage values in (b) and (c) carry half of the diagonal site's weight (the
// site is shared between the two mirrored halves).
struct CouplingChecks {
    int N = 0;
    std::size_t trials = 0;
    std::size_t violations_identity_slash = 0;
    std::size_t violations_center = 0;
    std::size_t violations_reflection = 0;

    bool clean() const {
        return violations_identity_slash == 0 && violations_center == 0 &&
               violations_reflection == 0;
    }
};

CouplingChecks verify_couplings(RandomStream& stream, int N, std::size_t trials,
                                const WeightLaw& law = WeightLaw::exponential());

// Fluctuation rescaling (G - a*N) / (b * N^{1/3}).
double rescale_lpp(double G, int N, double a, double b);

// Centering constants fitted so the rescaled passage values match a target
// mean and standard deviation across several sizes (the weight law fixes a
// and b only implicitly).
struct RescaleConstants {
    double a = 0.0;
    double b = 0.0;
};

RescaleConstants calibrate_rescaling(RandomStream& stream, const std::vector<int>& sizes,
                                     std::size_t trials_per_size, double target_mean,
                                     double target_sd,
                                     const WeightLaw& law = WeightLaw::exponential());

}  // namespace twlab
